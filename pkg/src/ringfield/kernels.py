"""Distance kernels of the reaction process.

Two lattice kernels drive everything here.  ``kernel_f`` is the
creation-strength profile,

    F(d) = (-1)^d cos(pi d / N) / (2 sin^2(pi d / N)),   F(0) = (N^2 - 1) / 12,

equal to the matrix element of the squared momentum between position
states (up to a factor g^2).  ``kernel_g`` is the first-power analogue

    G(d) = (-1)^d / (2 sin(pi d / N)),   G(0) = 0,

used for the drift velocity.  Both closed forms agree with their
spectral sums over the momentum index,

    F(d) = (1/N) sum_k k^2 exp(i 2 pi k d / N),
    G(d) = (i/N) sum_k k   exp(i 2 pi k d / N),

for every odd N; the spectral forms are kept as independent direct-sum
oracles (no fast transform) and never feed the production path.

For odd N both kernels are N-periodic, so evaluating them at unwrapped
displacements ``s - r`` in ``[-2L, 2L]`` equals evaluating at wrapped
ones.  For even N the closed forms are N-antiperiodic instead, which is
exactly the sign structure of the sign-corrected even-mode evolution.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .lattice import EVEN, ODD, Lattice, wrap_index


class ConsistencyError(RuntimeError):
    """An internally computed quantity violated its own error budget."""


def _sign_alternation(d: np.ndarray) -> np.ndarray:
    return np.where(np.asarray(d) % 2 == 0, 1.0, -1.0)


def kernel_f(d, lattice: Lattice):
    """Closed-form F(d) for any integer displacement (scalar or array)."""
    n = lattice.n_sites
    d_arr = np.asarray(d)
    on_zero = (d_arr % n) == 0
    x = np.where(on_zero, 1.0, np.pi * d_arr / n)  # dummy angle on the zero branch
    with np.errstate(divide="ignore", invalid="ignore"):
        off = _sign_alternation(d_arr) * np.cos(x) / (2.0 * np.sin(x) ** 2)
    out = np.where(on_zero, (n * n - 1) / 12.0, off)
    if lattice.parity == EVEN:
        # vanishes identically at the opposite point of the circle (d = +-N/2)
        at_antipode = ((2 * d_arr) % n == 0) & ~on_zero
        out = np.where(at_antipode, 0.0, out)
    if np.isscalar(d) or np.ndim(d) == 0:
        return float(out)
    return out


def kernel_g(d, lattice: Lattice):
    """Closed-form G(d) for any integer displacement (scalar or array)."""
    n = lattice.n_sites
    d_arr = np.asarray(d)
    on_zero = (d_arr % n) == 0
    x = np.where(on_zero, 1.0, np.pi * d_arr / n)
    with np.errstate(divide="ignore", invalid="ignore"):
        off = _sign_alternation(d_arr) / (2.0 * np.sin(x))
    out = np.where(on_zero, 0.0, off)
    if np.isscalar(d) or np.ndim(d) == 0:
        return float(out)
    return out


def _require_odd(lattice: Lattice, what: str) -> None:
    if lattice.parity != ODD:
        raise ValueError(f"{what} is defined for odd lattices only")


def kernel_f_spectral(d: int, lattice: Lattice) -> float:
    """F(d) by direct summation of (1/N) sum_k k^2 e^{i 2 pi k d / N}.

    Independent verification path for the closed form.  Raises
    ``ConsistencyError`` if the imaginary residue exceeds 1e-9 * N^2.
    """
    _require_odd(lattice, "kernel_f_spectral")
    n = lattice.n_sites
    k = np.arange(-lattice.half_width, lattice.half_width + 1)
    total = np.sum(k.astype(float) ** 2 * np.exp(2j * np.pi * k * d / n)) / n
    if abs(total.imag) > 1e-9 * n * n:
        raise ConsistencyError(
            f"spectral F({d}) has imaginary residue {total.imag:.3e} on N={n}"
        )
    return float(total.real)


def kernel_g_spectral(d: int, lattice: Lattice) -> float:
    """G(d) by direct summation of (i/N) sum_k k e^{i 2 pi k d / N}."""
    _require_odd(lattice, "kernel_g_spectral")
    n = lattice.n_sites
    k = np.arange(-lattice.half_width, lattice.half_width + 1)
    total = 1j * np.sum(k.astype(float) * np.exp(2j * np.pi * k * d / n)) / n
    if abs(total.imag) > 1e-9 * n:
        raise ConsistencyError(
            f"spectral G({d}) has imaginary residue {total.imag:.3e} on N={n}"
        )
    return float(total.real)


@dataclass(frozen=True)
class KernelTable:
    """Precomputed closed-form kernel values for one odd lattice.

    ``f_values`` covers displacements ``-L..L``; ``g_values`` covers the
    unwrapped range ``-2L..2L`` that double sums over site pairs reach.
    """

    lattice: Lattice
    f_values: np.ndarray
    g_values: np.ndarray

    def f_at(self, d):
        """F(d) from the table, d in [-L, L]."""
        return self.f_values[np.asarray(d) + self.lattice.half_width]

    def g_at(self, d):
        """G(d) from the table, d in [-2L, 2L]."""
        return self.g_values[np.asarray(d) + 2 * self.lattice.half_width]


def build_kernel_table(lattice: Lattice) -> KernelTable:
    """Tabulate F on [-L, L] and G on [-2L, 2L] from the closed forms."""
    _require_odd(lattice, "build_kernel_table")
    half = lattice.half_width
    f_values = kernel_f(np.arange(-half, half + 1), lattice)
    g_values = kernel_g(np.arange(-2 * half, 2 * half + 1), lattice)
    f_values.setflags(write=False)
    g_values.setflags(write=False)
    return KernelTable(lattice=lattice, f_values=f_values, g_values=g_values)


@lru_cache(maxsize=16)
def f_site_matrix(lattice: Lattice) -> np.ndarray:
    """Dense matrix F([s - r]) over all site pairs, wrapped modulo N.

    This is the circulant applied by one reaction step.  For even
    lattices the wrap is the naive periodic one, which is what the
    even demonstration mode evolves with.
    """
    sites = lattice.sites()
    disp = wrap_index(sites[:, None] - sites[None, :], lattice)
    mat = kernel_f(disp, lattice)
    mat.setflags(write=False)
    return mat


@lru_cache(maxsize=16)
def g_site_matrix(lattice: Lattice) -> np.ndarray:
    """Dense matrix G(s - r) over all site pairs, unwrapped displacements."""
    sites = lattice.sites()
    disp = sites[:, None] - sites[None, :]
    mat = kernel_g(disp, lattice)
    mat.setflags(write=False)
    return mat
