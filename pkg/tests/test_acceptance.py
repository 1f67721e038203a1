"""Acceptance suite.

One test per acceptance criterion, each printing a PASS/FAIL line with
the measured numbers (run with ``pytest -s`` to see every line).  All
tolerances are pinned here; nothing is deferred to later calibration.
"""

import time

import numpy as np
import pytest

from ringfield import (
    EvolutionConfig,
    boost,
    build_kernel_table,
    combined_distribution,
    drift_velocity,
    even_odd_comparison,
    gaussian_state,
    identity_suite,
    kernel_oracle_check,
    make_lattice,
    momentum_expectation,
    order_of_accuracy_run,
    paper_table_grid,
    qualitative_shape_run,
    run,
    state_from_amplitudes,
    translate,
    translate_spectral,
)

LAT = make_lattice(801)
KT = build_kernel_table(LAT)


def _report(number: int, title: str, ok: bool, details: str) -> None:
    status = "PASS" if ok else "FAIL"
    print(f"ACCEPTANCE {number} [{status}] {title}: {details}")


@pytest.fixture(scope="session")
def conservation_grid():
    start = time.perf_counter()
    grid = paper_table_grid(n_steps=1000, seed=0)
    return grid, time.perf_counter() - start


def _grid_value(grid, shape, tau):
    return max(
        grid.metrics[f"{shape} tau={tau:g} var M"],
        grid.metrics[f"{shape} tau={tau:g} var <V>"],
    )


def test_criterion_1_headline_tolerance_table(conservation_grid):
    grid, elapsed = conservation_grid
    gauss = _grid_value(grid, "gaussian", 1e-3)
    unif = _grid_value(grid, "uniform", 1e-3)
    rand = _grid_value(grid, "random", 1e-3)
    ok = gauss < 1e-5 and unif < 4e-4 and 0.004 <= rand <= 0.4
    _report(
        1,
        "conservation table at tau=1e-3",
        ok,
        f"gaussian {gauss:.2e} (<1e-5), uniform {unif:.2e} (<4e-4), "
        f"random {rand:.2e} (in [4e-3, 0.4]); grid wall time {elapsed:.1f}s",
    )
    assert gauss < 1e-5
    assert unif < 4e-4
    assert 0.004 <= rand <= 0.4


def test_criterion_2_tau_degradation(conservation_grid):
    grid, _ = conservation_grid
    gauss5 = _grid_value(grid, "gaussian", 5e-3)
    unif5 = _grid_value(grid, "uniform", 5e-3)
    rand_ratio = _grid_value(grid, "random", 5e-3) / _grid_value(grid, "random", 1e-3)
    gauss10 = _grid_value(grid, "gaussian", 1e-2)
    ok = gauss5 < 1e-2 and unif5 < 1e-2 and rand_ratio >= 10 and gauss10 < 1e-3
    _report(
        2,
        "degradation with larger tau",
        ok,
        f"tau=5e-3: gaussian {gauss5:.2e}, uniform {unif5:.2e} (<1e-2), "
        f"random x{rand_ratio:.0f} (>=10); tau=1e-2: gaussian {gauss10:.2e} (<1e-3)",
    )
    assert gauss5 < 1e-2
    assert unif5 < 1e-2
    assert rand_ratio >= 10
    assert gauss10 < 1e-3


def test_criterion_3_kernel_oracle_equivalence():
    report = kernel_oracle_check(n_sites_list=(3, 5, 7, 21, 101, 801))
    worst_f = report.metrics["max |F_closed - F_spectral| / F(0)"]
    worst_g = report.metrics["max |G_closed - G_spectral| / N"]
    ok = report.passed
    _report(
        3,
        "kernel closed forms vs spectral sums",
        ok,
        f"F residual {worst_f:.2e}, G residual {worst_g:.2e} (both < 1e-9 scaled)",
    )
    assert ok


def test_criterion_4_exact_identities_small_n():
    start = time.perf_counter()
    report = identity_suite(n_sites_list=(3, 5, 9, 15, 21), states_per_n=50, seed=0)
    elapsed = time.perf_counter() - start
    ok = report.passed and elapsed < 30.0
    _report(
        4,
        "derivation identities at N <= 21",
        ok,
        f"M drift {report.metrics['max relative M drift residual']:.2e} (<1e-10), "
        f"convolution {report.metrics['max convolution residual (scaled)']:.2e} (<1e-8), "
        f"commutator {report.metrics['max commutator residual / F(0)^2']:.2e} (<1e-8); "
        f"{elapsed:.1f}s (<30s)",
    )
    assert report.passed
    assert elapsed < 30.0


def test_criterion_5_order_of_accuracy():
    report = order_of_accuracy_run(taus=(4e-3, 2e-3, 1e-3, 5e-4))
    orders = {k: v for k, v in report.metrics.items() if k.startswith("order:")}
    ok = all(abs(v - 2.0) <= 0.1 for v in orders.values())
    _report(
        5,
        "fitted orders under tau halving",
        ok,
        ", ".join(f"{k.split(': ')[1]} = {v:.3f}" for k, v in orders.items())
        + " (all 2.0 +- 0.1)",
    )
    assert ok


def test_criterion_6_structural_invariants():
    # boost preserves the combined distribution per site
    rng = np.random.default_rng(0)
    worst_shape = 0.0
    for _ in range(200):
        amps = rng.normal(size=801) + 1j * rng.normal(size=801)
        state = state_from_amplitudes(LAT, amps / np.linalg.norm(amps))
        kicked = boost(state, rng.uniform(-3, 3))
        worst_shape = max(
            worst_shape,
            float(np.max(np.abs(combined_distribution(kicked) - combined_distribution(state)))),
        )

    # quantised boost shifts the drift velocity by exactly v
    base = gaussian_state(LAT, 0, 10.0, 0)
    v = 2 * LAT.reciprocal_constant * 50
    shift_err = abs(drift_velocity(boost(base, v), KT) - drift_velocity(base, KT) - v)

    # cyclic shift equals the spectral generator, border site included
    border = np.zeros(801, dtype=complex)
    border[-1] = 1.0  # s = +L
    border_state = state_from_amplitudes(LAT, border)
    trans_err = 0.0
    for state, steps in ((border_state, 1), (gaussian_state(LAT, 3, 7.0, 5), 11)):
        rolled = translate(state, steps)
        generated = translate_spectral(state, steps)
        trans_err = max(trans_err, float(np.max(np.abs(rolled.amplitudes() - generated.amplitudes()))))

    # exact scheme conserves M and <P> over 1000 steps
    moving = gaussian_state(LAT, 0, 10.0, 20)
    series = run(moving, EvolutionConfig(scheme="exact"), 1000, record_every=100, kernels=KT)
    m_drift = max(abs(m - series.snapshots[0].m_total) for m in series.column("m_total"))
    p_drift = max(
        abs(p - series.snapshots[0].momentum_expectation)
        for p in series.column("momentum_expectation")
    )

    ok = (
        worst_shape < 1e-12
        and shift_err < 1e-6
        and trans_err < 1e-10
        and m_drift < 1e-10
        and p_drift < 1e-10
    )
    _report(
        6,
        "structural invariants",
        ok,
        f"boost shape {worst_shape:.1e} (<1e-12), boost shift {shift_err:.1e} (<1e-6), "
        f"translation {trans_err:.1e} (<1e-10), exact-run dM {m_drift:.1e} / "
        f"d<P> {p_drift:.1e} (<1e-10)",
    )
    assert worst_shape < 1e-12
    assert shift_err < 1e-6
    assert trans_err < 1e-10
    assert m_drift < 1e-10
    assert p_drift < 1e-10


def test_criterion_7_even_odd_demonstration():
    report = even_odd_comparison(n_even=800, n_odd=801, sigma=5.0, n_steps=100, tau=1e-3)
    wrapped_ratio = report.metrics["wrapped/odd ratio"]
    confined_ratio = max(
        report.metrics["confined even deviation"], report.metrics["confined odd deviation"]
    ) / min(
        report.metrics["confined even deviation"], report.metrics["confined odd deviation"]
    )
    ok = wrapped_ratio >= 1e3 and confined_ratio <= 2.0
    _report(
        7,
        "even vs odd parity",
        ok,
        f"wrapped packet ratio {wrapped_ratio:.1e} (>=1e3), "
        f"confined ratio {confined_ratio:.2f} (<=2)",
    )
    assert wrapped_ratio >= 1e3
    assert confined_ratio <= 2.0


def test_criterion_8_qualitative_claims():
    report = qualitative_shape_run(seed=0)
    residual = report.metrics["gaussian max shape residual"]
    growth = report.metrics["gaussian width growth factor"]
    new_maxima = report.metrics["uniform maxima after"] - report.metrics["uniform maxima before"]
    monotone = bool([c for c in report.checks if c.name.startswith("gaussian width")][0].passed)
    ok = monotone and residual < 1e-2 and new_maxima >= 2 and growth > 1.0
    _report(
        8,
        "qualitative shape claims",
        ok,
        f"gaussian residual {residual:.1e} (<1e-2), width x{growth:.2f} monotone={monotone}, "
        f"uniform grew {new_maxima:.0f} maxima (>=2)",
    )
    assert monotone
    assert residual < 1e-2
    assert new_maxima >= 2
