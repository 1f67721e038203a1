"""Unbiased (discrete Fourier) basis and momentum-space representation.

The momentum basis vectors are

    phi_k(s) = (1/sqrt N) exp(i 2 pi kappa s / N)

with kappa running over the lattice's ``momentum_values()``: integers
for odd N, half-integers for even N.  Every position state has overlap
of magnitude 1/sqrt(N) with every phi_k, and the phase choice makes
exp(-i a P) the one-site cyclic translation (odd N) or its
sign-corrected variant (even N).
"""

from __future__ import annotations

from dataclasses import dataclass
from math import sqrt

import numpy as np

from .lattice import EVEN, Lattice
from .state import FieldState, state_from_amplitudes


@dataclass(frozen=True)
class MomentumSpectrum:
    """Complex coefficients of a state in the unbiased basis."""

    lattice: Lattice
    coefficients: np.ndarray

    def occupation(self) -> np.ndarray:
        """|coefficient|^2 per momentum slot; sums to the state's M."""
        return np.abs(self.coefficients) ** 2


def to_momentum_basis(state: FieldState) -> MomentumSpectrum:
    """Project onto the unbiased basis.

    Returns coefficients ordered like ``lattice.momentum_values()``.
    The transform is unitary, so the summed occupation equals M.
    """
    lat = state.lattice
    n = lat.n_sites
    kappa = lat.momentum_values()
    amps = state.amplitudes()
    if lat.parity == EVEN:
        # half-integer momenta: absorb the extra half wave into a twist
        idx = np.arange(n)
        amps = amps * np.exp(-1j * np.pi * idx / n)
    slots = (kappa - 0.5 * (lat.parity == EVEN)).astype(int) % n
    spectrum = np.fft.fft(amps)[slots] / sqrt(n)
    # undo the storage offset: site s sits at array index s - site_min
    spectrum = spectrum * np.exp(-2j * np.pi * kappa * lat.site_min / n)
    spectrum.setflags(write=False)
    return MomentumSpectrum(lattice=lat, coefficients=spectrum)


def from_momentum_basis(spectrum: MomentumSpectrum) -> FieldState:
    """Inverse of ``to_momentum_basis``; round trip is the identity."""
    lat = spectrum.lattice
    n = lat.n_sites
    kappa = lat.momentum_values()
    slots = (kappa - 0.5 * (lat.parity == EVEN)).astype(int) % n
    packed = np.zeros(n, dtype=complex)
    packed[slots] = spectrum.coefficients * np.exp(2j * np.pi * kappa * lat.site_min / n)
    amps = sqrt(n) * np.fft.ifft(packed)
    if lat.parity == EVEN:
        idx = np.arange(n)
        amps = amps * np.exp(1j * np.pi * idx / n)
    return state_from_amplitudes(lat, amps)
