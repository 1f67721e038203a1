"""Canned, reproducible experiment procedures.

Each procedure returns an ``ExperimentReport``: named metrics plus
pass/fail checks against tolerances fixed here.  Reports are
deterministic functions of their parameters and seed, so repeated runs
serialise byte-identically.

The headline conservation table runs the reaction process on an
801-site lattice for 1000 steps and watches the relative variation of
M and the drift velocity for three initial shapes.  The published
reference values it is held against:

    tau = 0.001   gaussian < 1e-5, uniform < 4e-4, random ~ 0.04
    tau = 0.005   gaussian and uniform < 1%, random visibly degraded
    tau = 0.010   gaussian still < 0.1%

The random row depends on how the random state is drawn, which the
reference leaves open, so it is gated on the order of magnitude
(band 0.004 .. 0.4) rather than a point value.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np

from .evolve import (
    EvolutionConfig,
    euler_step,
    euler_step_spectral,
    even_naive_step,
    exact_step,
    make_even_lattice,
    run,
)
from .ioutil import atomic_write_text
from .kernels import (
    build_kernel_table,
    f_site_matrix,
    g_site_matrix,
    kernel_f,
    kernel_g,
)
from .lattice import make_lattice
from .observables import (
    count_local_maxima,
    gaussian_shape_residual,
    high_band_fraction,
    m_step_increase_confined_estimate,
    m_step_increase_exact,
    momentum_expectation,
    position_spread,
    quartic_moment_coefficient,
)
from .state import (
    FieldState,
    combined_distribution,
    gaussian_state,
    norm_m,
    random_state,
    state_from_amplitudes,
    uniform_state,
)

# default construction parameters for the three table shapes; widths and
# drifts are choices of this artifact (the reference leaves them open)
GAUSSIAN_SIGMA = 10.0
GAUSSIAN_VELOCITY_INDEX = 20
UNIFORM_HALF_WIDTH = 50
UNIFORM_VELOCITY_INDEX = 10
DEFAULT_SEED = 0

TABLE_TAUS = (1e-3, 5e-3, 1e-2)
TABLE_SHAPES = ("gaussian", "uniform", "random")

# gated bands: shape, tau -> (low, high) on max(relvar M, relvar V)
TABLE_BANDS: dict[tuple[str, float], tuple[float, float]] = {
    ("gaussian", 1e-3): (0.0, 1e-5),
    ("uniform", 1e-3): (0.0, 4e-4),
    ("random", 1e-3): (0.004, 0.4),
    ("gaussian", 5e-3): (0.0, 1e-2),
    ("uniform", 5e-3): (0.0, 1e-2),
    ("gaussian", 1e-2): (0.0, 1e-3),
}
RANDOM_DEGRADATION_FACTOR = 10.0

IDENTITY_N_LIST = (3, 5, 9, 15, 21)
IDENTITY_STATES_PER_N = 50
IDENTITY_TAU = 2e-3
KERNEL_ORACLE_N_LIST = (3, 5, 7, 21, 101, 801)

ORDER_TAUS = (4e-3, 2e-3, 1e-3, 5e-4)


@dataclass(frozen=True)
class Check:
    """One gated (or informational) comparison inside a report."""

    name: str
    value: float
    requirement: str
    passed: bool
    gated: bool = True


@dataclass(frozen=True)
class ExperimentReport:
    name: str
    params: dict
    metrics: dict
    checks: tuple[Check, ...] = ()

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks if c.gated)

    def to_json_obj(self) -> dict:
        return {
            "name": self.name,
            "params": self.params,
            "metrics": {k: _jsonable(v) for k, v in self.metrics.items()},
            "checks": [
                {
                    "name": c.name,
                    "value": _jsonable(c.value),
                    "requirement": c.requirement,
                    "passed": c.passed,
                    "gated": c.gated,
                }
                for c in self.checks
            ],
            "passed": self.passed,
        }

    def to_text(self) -> str:
        lines = [f"== {self.name} =="]
        if self.params:
            lines.append("params: " + ", ".join(f"{k}={v}" for k, v in self.params.items()))
        for key, value in self.metrics.items():
            lines.append(f"  {key:<46s} {_fmt_value(value)}")
        for c in self.checks:
            status = "PASS" if c.passed else "FAIL"
            tag = "" if c.gated else "  [info]"
            lines.append(
                f"  [{status}] {c.name:<40s} {_fmt_value(c.value):>13s}  ({c.requirement}){tag}"
            )
        lines.append(f"result: {'PASS' if self.passed else 'FAIL'}")
        return "\n".join(lines) + "\n"

    def write_json(self, path: str) -> None:
        atomic_write_text(path, json.dumps(self.to_json_obj(), indent=1, sort_keys=True) + "\n")


def _jsonable(value):
    if isinstance(value, (bool, int, str)):
        return value
    return float(value)


def _fmt_value(value) -> str:
    if isinstance(value, bool):
        return str(value)
    if isinstance(value, int):
        return str(value)
    return f"{float(value):.6e}"


def _band_check(
    name: str, value: float, band: tuple[float, float] | None, gated: bool = True
) -> Check:
    if band is None:
        return Check(name, value, "informational", True, gated=False)
    low, high = band
    if low == 0.0:
        requirement = f"< {high:g}"
    else:
        requirement = f"in [{low:g}, {high:g}]"
    within = bool(low <= value <= high)
    if not gated:
        return Check(name, value, requirement + " (at 1000 steps)", True, gated=False)
    return Check(name, value, requirement, within)


def table_state(lattice, shape: str, seed: int = DEFAULT_SEED) -> FieldState:
    """Initial state used for one row of the conservation table."""
    if shape == "gaussian":
        return gaussian_state(lattice, 0, GAUSSIAN_SIGMA, GAUSSIAN_VELOCITY_INDEX)
    if shape == "uniform":
        return uniform_state(lattice, 0, UNIFORM_HALF_WIDTH, UNIFORM_VELOCITY_INDEX)
    if shape == "random":
        return random_state(lattice, seed)
    raise ValueError(f"unknown table shape {shape!r}")


def _relative_variation(values) -> float:
    values = np.asarray(values, dtype=float)
    first = values[0]
    if first == 0.0:
        return float(np.max(np.abs(values - first)))
    return float(np.max(np.abs(values - first)) / abs(first))


def paper_table_run(
    shape: str,
    tau: float,
    n_steps: int = 1000,
    seed: int = DEFAULT_SEED,
    n_sites: int = 801,
    lattice_constant: float = 1.0,
    record_every: int = 10,
    euler_method: str = "spectral",
) -> ExperimentReport:
    """One row of the conservation table: evolve one shape with the
    reaction process and report the observed variation of M and <V>."""
    lattice = make_lattice(n_sites, lattice_constant)
    state = table_state(lattice, shape, seed)
    kernels = build_kernel_table(lattice)
    config = EvolutionConfig(tau=tau, euler_method=euler_method)
    series = run(state, config, n_steps, record_every, kernels=kernels)
    var_m = _relative_variation(series.column("m_total"))
    var_v = _relative_variation(series.column("drift_velocity"))
    worst = max(var_m, var_v)
    band = TABLE_BANDS.get((shape, tau))
    # published bands describe the canonical 1000-step run; shorter runs
    # report the same numbers ungated
    gated = n_steps == 1000
    return ExperimentReport(
        name=f"table: {shape} tau={tau:g}",
        params={
            "shape": shape,
            "tau": tau,
            "n_steps": n_steps,
            "seed": seed,
            "n_sites": n_sites,
        },
        metrics={
            "relative variation of M": var_m,
            "relative variation of <V>": var_v,
        },
        checks=(_band_check(f"{shape} tau={tau:g} max variation", worst, band, gated),),
    )


def paper_table_grid(
    n_steps: int = 1000, seed: int = DEFAULT_SEED, taus=TABLE_TAUS
) -> ExperimentReport:
    """Full shapes-by-timesteps conservation grid in one report."""
    metrics: dict = {}
    checks: list[Check] = []
    worst: dict[tuple[str, float], float] = {}
    for shape in TABLE_SHAPES:
        for tau in taus:
            row = paper_table_run(shape, tau, n_steps=n_steps, seed=seed)
            var_m = row.metrics["relative variation of M"]
            var_v = row.metrics["relative variation of <V>"]
            metrics[f"{shape} tau={tau:g} var M"] = var_m
            metrics[f"{shape} tau={tau:g} var <V>"] = var_v
            worst[(shape, tau)] = max(var_m, var_v)
            checks.extend(row.checks)
    if 1e-3 in taus and 5e-3 in taus and n_steps > 0:
        gated = n_steps == 1000
        ratio = worst[("random", 5e-3)] / worst[("random", 1e-3)]
        checks.append(
            Check(
                "random degradation at tau=0.005",
                ratio,
                f">= {RANDOM_DEGRADATION_FACTOR:g}x the tau=0.001 value",
                bool(ratio >= RANDOM_DEGRADATION_FACTOR) if gated else True,
                gated=gated,
            )
        )
    return ExperimentReport(
        name="conservation table",
        params={"n_steps": n_steps, "seed": seed},
        metrics=metrics,
        checks=tuple(checks),
    )


def paper_table_text(grid: ExperimentReport) -> str:
    """Compact aligned table: one row per shape and time step."""
    header = f"{'shape':<10s} {'tau':>7s} {'var M':>12s} {'var <V>':>12s} {'band':>22s}  verdict"
    lines = [header, "-" * len(header)]
    verdicts = {c.name: c for c in grid.checks}
    for shape in TABLE_SHAPES:
        for tau in TABLE_TAUS:
            key_m = f"{shape} tau={tau:g} var M"
            key_v = f"{shape} tau={tau:g} var <V>"
            if key_m not in grid.metrics:
                continue
            check = verdicts.get(f"{shape} tau={tau:g} max variation")
            band = check.requirement if check else "informational"
            verdict = "PASS" if (check is None or check.passed) else "FAIL"
            if check is not None and not check.gated:
                verdict = "-"
            lines.append(
                f"{shape:<10s} {tau:>7g} {grid.metrics[key_m]:>12.3e} "
                f"{grid.metrics[key_v]:>12.3e} {band:>22s}  {verdict}"
            )
    ratio_check = verdicts.get("random degradation at tau=0.005")
    if ratio_check is not None:
        verdict = "PASS" if ratio_check.passed else "FAIL"
        if not ratio_check.gated:
            verdict = "-"
        lines.append(
            f"random degradation at tau=0.005: x{ratio_check.value:.1f} "
            f"({ratio_check.requirement})  {verdict}"
        )
    return "\n".join(lines) + "\n"


def tau_degradation_run(n_steps: int = 1000, seed: int = DEFAULT_SEED) -> ExperimentReport:
    """Gated subset of the grid showing how constancy degrades with tau."""
    grid = paper_table_grid(n_steps=n_steps, seed=seed, taus=(1e-3, 5e-3, 1e-2))
    keep = [
        c
        for c in grid.checks
        if "tau=0.005" in c.name or "tau=0.01" in c.name or "degradation" in c.name
    ]
    return ExperimentReport(
        name="tau degradation",
        params=grid.params,
        metrics=grid.metrics,
        checks=tuple(keep),
    )


# ---------------------------------------------------------------------------
# exact identities at small N

EQ_M_DRIFT_RTOL = 1e-10
EQ_CONVOLUTION_RTOL = 1e-8
EQ_COMMUTATOR_SCALE = 1e-8


def _random_amplitudes(rng, n: int) -> np.ndarray:
    return rng.uniform(-1.0, 1.0, n) + 1j * rng.uniform(-1.0, 1.0, n)


def identity_suite(
    n_sites_list=IDENTITY_N_LIST,
    states_per_n: int = IDENTITY_STATES_PER_N,
    seed: int = DEFAULT_SEED,
    tau: float = IDENTITY_TAU,
) -> ExperimentReport:
    """Brute-force verification of the derivation-level identities.

    * one-step M drift equals tau^2 g^4 sum_{r,u} c_r conj(c_u)
      sum_s F(r-s) F(s-u) (checked against the actual reaction step,
      at M = 1 and M = 7);
    * the F with F convolution collapses to the k^4 spectral sum;
    * sum_s [F(u-s) G(s-r) - G(u-s) F(s-r)] vanishes.

    Restricted to small odd N where the O(N^3) sums stay cheap.
    """
    rng = np.random.default_rng(seed)
    worst_m = 0.0
    worst_conv = 0.0
    worst_comm = 0.0
    for n in n_sites_list:
        lattice = make_lattice(n)
        kernels = build_kernel_table(lattice)
        g = lattice.reciprocal_constant
        fmat = f_site_matrix(lattice)
        gmat = g_site_matrix(lattice)
        conv = fmat @ fmat

        # convolution identity against the direct k^4 sum
        k = np.arange(-lattice.half_width, lattice.half_width + 1)
        sites = lattice.sites()
        disp = sites[:, None] - sites[None, :]
        quartic = np.tensordot(
            k.astype(float) ** 4, np.exp(2j * np.pi * np.multiply.outer(k, disp) / n), axes=1
        ) / n
        scale = float(np.sum(k.astype(float) ** 4)) / n
        worst_conv = max(worst_conv, float(np.max(np.abs(conv - quartic.real)) / scale))

        # commutator of the two kernels
        f0 = kernel_f(0, lattice)
        comm = fmat @ gmat - gmat @ fmat
        worst_comm = max(worst_comm, float(np.max(np.abs(comm)) / f0**2))

        # one-step M drift, bilinear so checked at two normalisations
        for _ in range(states_per_n):
            amps = _random_amplitudes(rng, n)
            amps /= np.linalg.norm(amps)
            for m_target in (1.0, 7.0):
                state = state_from_amplitudes(lattice, amps * np.sqrt(m_target))
                stepped = euler_step(state, tau, kernels)
                measured = norm_m(stepped) - norm_m(state)
                c = state.amplitudes()
                predicted = tau**2 * g**4 * float(np.real(np.vdot(c, conv @ c)))
                worst_m = max(worst_m, abs(measured - predicted) / abs(predicted))
    checks = (
        Check("one-step M drift identity", worst_m, f"rel <= {EQ_M_DRIFT_RTOL:g}",
              bool(worst_m <= EQ_M_DRIFT_RTOL)),
        Check("F*F convolution identity", worst_conv, f"rel <= {EQ_CONVOLUTION_RTOL:g}",
              bool(worst_conv <= EQ_CONVOLUTION_RTOL)),
        Check("F/G commutator vanishes", worst_comm,
              f"<= {EQ_COMMUTATOR_SCALE:g} * F(0)^2", bool(worst_comm <= EQ_COMMUTATOR_SCALE)),
    )
    return ExperimentReport(
        name="identity suite",
        params={
            "n_sites_list": list(n_sites_list),
            "states_per_n": states_per_n,
            "seed": seed,
            "tau": tau,
        },
        metrics={
            "max relative M drift residual": worst_m,
            "max convolution residual (scaled)": worst_conv,
            "max commutator residual / F(0)^2": worst_comm,
        },
        checks=checks,
    )


KERNEL_F_RTOL = 1e-9
KERNEL_G_RTOL = 1e-9


def kernel_oracle_check(
    n_sites_list=KERNEL_ORACLE_N_LIST, perturbation: float = 0.0
) -> ExperimentReport:
    """Closed forms of F and G against their direct spectral sums.

    Checked for every displacement in [-2L, 2L].  ``perturbation`` is a
    self-test hook: a nonzero value is added to the closed-form F so the
    check must fail.
    """
    worst_f = 0.0
    worst_g = 0.0
    for n in n_sites_list:
        lattice = make_lattice(n)
        half = lattice.half_width
        d = np.arange(-2 * half, 2 * half + 1)
        k = np.arange(-half, half + 1).astype(float)
        phases = np.exp(2j * np.pi * np.multiply.outer(k, d) / n)
        f_spectral = (k**2) @ phases / n
        g_spectral = 1j * (k @ phases) / n
        f_closed = kernel_f(d, lattice) + perturbation
        g_closed = kernel_g(d, lattice)
        f0 = kernel_f(0, lattice)
        worst_f = max(worst_f, float(np.max(np.abs(f_closed - f_spectral.real)) / f0))
        worst_g = max(worst_g, float(np.max(np.abs(g_closed - g_spectral.real)) / n))
    checks = (
        Check("kernel F closed form vs spectral sum", worst_f,
              f"<= {KERNEL_F_RTOL:g} * F(0)", bool(worst_f <= KERNEL_F_RTOL)),
        Check("kernel G closed form vs spectral sum", worst_g,
              f"<= {KERNEL_G_RTOL:g} * N", bool(worst_g <= KERNEL_G_RTOL)),
    )
    return ExperimentReport(
        name="kernel oracle equivalence",
        params={"n_sites_list": list(n_sites_list), "perturbation": perturbation},
        metrics={
            "max |F_closed - F_spectral| / F(0)": worst_f,
            "max |G_closed - G_spectral| / N": worst_g,
        },
        checks=checks,
    )


# ---------------------------------------------------------------------------
# order of accuracy

ORDER_TARGET = 2.0
ORDER_TOL = 0.1


def _fitted_order(taus, errors) -> float:
    slope = np.polyfit(np.log(np.asarray(taus)), np.log(np.asarray(errors)), 1)[0]
    return float(slope)


def order_of_accuracy_run(
    taus=ORDER_TAUS, n_sites: int = 801, sigma: float = GAUSSIAN_SIGMA,
    velocity_index: int = GAUSSIAN_VELOCITY_INDEX,
) -> ExperimentReport:
    """Fitted convergence orders of the reaction step on a gaussian.

    One linearised step differs from the exact unitary at second order
    in tau, and the per-step changes of M and <P> are exactly quadratic
    in tau, so all three fitted orders sit at 2.
    """
    lattice = make_lattice(n_sites)
    kernels = build_kernel_table(lattice)
    state = gaussian_state(lattice, 0, sigma, velocity_index)
    base_norm = np.sqrt(norm_m(state))
    p0 = momentum_expectation(state, kernels)
    err_state, err_m, err_p = [], [], []
    for tau in taus:
        stepped = euler_step(state, tau, kernels)
        reference = exact_step(state, tau)
        err_state.append(
            float(np.linalg.norm(stepped.amplitudes() - reference.amplitudes())) / base_norm
        )
        err_m.append(abs(norm_m(stepped) - norm_m(state)))
        err_p.append(abs(momentum_expectation(stepped, kernels) - p0))
    orders = {
        "one-step euler vs exact": _fitted_order(taus, err_state),
        "per-step |dM|": _fitted_order(taus, err_m),
        "per-step |d<P>|": _fitted_order(taus, err_p),
    }
    checks = tuple(
        Check(f"fitted order: {key}", value,
              f"{ORDER_TARGET:g} +- {ORDER_TOL:g}",
              bool(abs(value - ORDER_TARGET) <= ORDER_TOL))
        for key, value in orders.items()
    )
    metrics = {f"order: {k}": v for k, v in orders.items()}
    metrics.update({f"err(tau={t:g}) euler vs exact": e for t, e in zip(taus, err_state)})
    return ExperimentReport(
        name="order of accuracy",
        params={"taus": list(taus), "n_sites": n_sites, "sigma": sigma,
                "velocity_index": velocity_index},
        metrics=metrics,
        checks=checks,
    )


# ---------------------------------------------------------------------------
# qualitative shape behaviour

SHAPE_RESIDUAL_LIMIT = 1e-2
WRAP_CLEARANCE_SIGMAS = 10.0
NEW_MAXIMA_REQUIRED = 2


def qualitative_shape_run(seed: int = DEFAULT_SEED, n_sites: int = 801) -> ExperimentReport:
    """Shape phenomenology of the three canonical initial states.

    * a drifting gaussian under exact evolution keeps its gaussian
      profile and its width never shrinks while the packet stays at
      least 10 sigma clear of the wrap point;
    * a uniform window under the reaction process grows side lobes;
    * the random state's position-space roughness and outer-band
      momentum fraction are reported without gating (the smoothing of
      random fluctuations has no quantitative published statement).
    """
    lattice = make_lattice(n_sites)
    kernels = build_kernel_table(lattice)

    # gaussian dispersion under the exact unitary
    state = gaussian_state(lattice, 0, GAUSSIAN_SIGMA, GAUSSIAN_VELOCITY_INDEX)
    spreads = []
    residual_max = 0.0
    monotone = True
    horizon, pieces = 200.0, 20
    current = state
    for _ in range(pieces + 1):
        spread = position_spread(current)
        if spreads and spread < spreads[-1] - 1e-9:
            monotone = False
        spreads.append(spread)
        residual_max = max(residual_max, gaussian_shape_residual(current))
        if WRAP_CLEARANCE_SIGMAS * spread > n_sites / 2.0:
            break
        current = exact_step(current, horizon / pieces)
    growth = spreads[-1] / spreads[0]

    # uniform window develops side lobes under the reaction process
    window = uniform_state(lattice, 0, 25, UNIFORM_VELOCITY_INDEX)
    maxima_before = count_local_maxima(combined_distribution(window))
    stepped = window
    for _ in range(1000):
        stepped = euler_step_spectral(stepped, 1e-3)
    maxima_after = count_local_maxima(combined_distribution(stepped))

    # random state: descriptive smoothness metrics only
    rough = random_state(lattice, seed)
    rough_before = _roughness(rough)
    band_before = high_band_fraction(rough)
    rough_after_state = rough
    for _ in range(1000):
        rough_after_state = euler_step_spectral(rough_after_state, 1e-3)
    rough_after = _roughness(rough_after_state)
    band_after = high_band_fraction(rough_after_state)

    checks = (
        Check("gaussian width growth monotone", float(monotone), "no shrink step",
              monotone),
        Check("gaussian shape residual", residual_max,
              f"< {SHAPE_RESIDUAL_LIMIT:g}", bool(residual_max < SHAPE_RESIDUAL_LIMIT)),
        Check("uniform new local maxima", float(maxima_after - maxima_before),
              f">= {NEW_MAXIMA_REQUIRED}", bool(maxima_after - maxima_before >= NEW_MAXIMA_REQUIRED)),
    )
    return ExperimentReport(
        name="qualitative shapes",
        params={"seed": seed, "n_sites": n_sites},
        metrics={
            "gaussian width growth factor": growth,
            "gaussian max shape residual": residual_max,
            "uniform maxima before": maxima_before,
            "uniform maxima after": maxima_after,
            "random roughness before": rough_before,
            "random roughness after": rough_after,
            "random outer-band fraction before": band_before,
            "random outer-band fraction after": band_after,
        },
        checks=checks,
    )


def _roughness(state: FieldState) -> float:
    """Mean absolute nearest-neighbour jump of the combined
    distribution, normalised by its mean value."""
    density = combined_distribution(state)
    jumps = np.abs(np.diff(np.concatenate([density, density[:1]])))
    return float(np.mean(jumps) / np.mean(density))


# ---------------------------------------------------------------------------
# even vs odd demonstration

WRAPPED_RATIO_REQUIRED = 1e3
CONFINED_RATIO_LIMIT = 2.0


def even_odd_comparison(
    n_even: int = 800,
    n_odd: int = 801,
    sigma: float = 5.0,
    n_steps: int = 100,
    tau: float = 1e-3,
) -> ExperimentReport:
    """Reaction process vs its unitary reference on both parities.

    For a packet confined away from the even lattice's index seam the
    two parities deviate from their references comparably (the pure
    linearisation error).  For a packet sitting on the seam the naive
    even-mode step picks the wrong sign for far-side creation and its
    deviation blows past the odd one by orders of magnitude.
    """
    even = make_even_lattice(n_even)
    odd = make_lattice(n_odd)
    odd_kernels = build_kernel_table(odd)

    def deviation(lattice, center) -> float:
        state = gaussian_state(lattice, center, sigma)
        stepped = state
        for _ in range(n_steps):
            if lattice.parity == "even":
                stepped = even_naive_step(stepped, tau)
            else:
                stepped = euler_step(stepped, tau, odd_kernels)
        reference = exact_step(state, n_steps * tau)
        return float(np.linalg.norm(stepped.amplitudes() - reference.amplitudes()))

    dev_even_confined = deviation(even, 0)
    dev_odd_confined = deviation(odd, 0)
    dev_even_wrapped = deviation(even, even.site_min)
    dev_odd_wrapped = deviation(odd, odd.site_min)

    confined_ratio = max(dev_even_confined, dev_odd_confined) / min(
        dev_even_confined, dev_odd_confined
    )
    wrapped_ratio = dev_even_wrapped / dev_odd_wrapped
    checks = (
        Check("confined packets deviate comparably", confined_ratio,
              f"ratio <= {CONFINED_RATIO_LIMIT:g}",
              bool(confined_ratio <= CONFINED_RATIO_LIMIT)),
        Check("wrapped packet breaks even mode", wrapped_ratio,
              f">= {WRAPPED_RATIO_REQUIRED:g} x odd deviation",
              bool(wrapped_ratio >= WRAPPED_RATIO_REQUIRED)),
    )
    return ExperimentReport(
        name="even vs odd",
        params={"n_even": n_even, "n_odd": n_odd, "sigma": sigma,
                "n_steps": n_steps, "tau": tau},
        metrics={
            "confined even deviation": dev_even_confined,
            "confined odd deviation": dev_odd_confined,
            "wrapped even deviation": dev_even_wrapped,
            "wrapped odd deviation": dev_odd_wrapped,
            "wrapped/odd ratio": wrapped_ratio,
        },
        checks=checks,
    )


# ---------------------------------------------------------------------------
# confined-regime M drift diagnostic

CONFINED_DIAGONAL_RTOL = 0.05


def confined_drift_diagnostic(
    sigma: float = 10.0, n_sites: int = 801, tau: float = 1e-3
) -> ExperimentReport:
    """Exact one-step M growth next to its legacy confined-regime estimate.

    The diagonal coefficient of the exact drift kernel approaches
    pi^4 / (5 a^4) and is gated at 5%.  The full legacy estimate is
    reported without gating: it is an approximation whose off-diagonal
    weights cannot reproduce the near-cancellation that makes smooth
    confined states quasi-stationary, so its value is off by orders of
    magnitude there (see the module it lives in).
    """
    lattice = make_lattice(n_sites)
    state = gaussian_state(lattice, 0, sigma)
    exact = m_step_increase_exact(state, tau)
    estimate = m_step_increase_confined_estimate(state, tau)
    diag = quartic_moment_coefficient(lattice)
    target = np.pi**4 / (5.0 * lattice.lattice_constant**4)
    diag_dev = abs(diag - target) / target
    checks = (
        Check("diagonal drift coefficient vs pi^4/5", diag_dev,
              f"rel <= {CONFINED_DIAGONAL_RTOL:g}",
              bool(diag_dev <= CONFINED_DIAGONAL_RTOL)),
        Check("legacy estimate vs exact drift",
              float(estimate / exact) if exact else float("nan"),
              "informational", True, gated=False),
    )
    return ExperimentReport(
        name="confined drift diagnostic",
        params={"sigma": sigma, "n_sites": n_sites, "tau": tau},
        metrics={
            "exact one-step M increase": exact,
            "legacy confined estimate": estimate,
            "diagonal coefficient": diag,
            "diagonal target pi^4/(5 a^4)": float(target),
        },
        checks=checks,
    )
