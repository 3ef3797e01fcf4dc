"""Hermite eigenbasis on 2D Minkowski coordinates and the isometric embedding.

The coordinate Hamiltonian is the difference of two one-dimensional
oscillator Hamiltonians of frequency alpha acting along x0 and x1:

    H f = -H0^(x0) f + H0^(x1) f,    H0 = -(1/2) d^2/dz^2 + (alpha^2/2) z^2,

whose eigenfunctions are the tensor products chi_j(x0) chi_k(x1) with
eigenvalues E_{jk} = (k - j) alpha.  The sign of the kinetic term and the
Gaussian width of chi_0 = (alpha/pi)^{1/4} exp(-alpha z^2 / 2) are fixed
by the eigenvalue anchor E_j = (2j+1) alpha / 2, which the
finite-difference oracle below verifies directly.

The embedding sends phi_0 -> psi_00, phi_{j<0} -> psi_{-j,0},
phi_{j>0} -> psi_{0,j}; it is an exact isometry and intertwines the
Koopman phases with the Heisenberg phases exp(i E t).
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .kernels import HEAT, KernelParams
from .spectral import FourierSeries, reduce_angle


@dataclass(frozen=True)
class HermiteBasis:
    """Oscillator eigenfunctions chi_0..chi_maxdeg at frequency alpha."""

    alpha: float
    maxdeg: int

    def __post_init__(self):
        if self.alpha <= 0:
            raise ValueError("oscillator frequency alpha must be positive")
        if self.maxdeg < 0:
            raise ValueError("maxdeg must be nonnegative")


def hermite_eval(basis, j, z):
    """chi_j(z) via the stable normalized three-term recurrence.

    chi_0 = (alpha/pi)^{1/4} exp(-alpha z^2 / 2),
    chi_{j+1} = sqrt(2/(j+1)) (sqrt(alpha) z) chi_j - sqrt(j/(j+1)) chi_{j-1}.
    """
    if j > basis.maxdeg:
        raise ValueError(f"degree {j} exceeds basis maxdeg {basis.maxdeg}")
    if j < 0:
        raise ValueError("degree must be nonnegative")
    zz = np.asarray(z, dtype=float)
    a = basis.alpha
    prev = (a / np.pi) ** 0.25 * np.exp(-a * zz**2 / 2.0)
    if j == 0:
        return prev if zz.ndim else float(prev)
    x = np.sqrt(a) * zz
    cur = np.sqrt(2.0) * x * prev
    for n in range(1, j):
        prev, cur = cur, np.sqrt(2.0 / (n + 1.0)) * x * cur - np.sqrt(n / (n + 1.0)) * prev
    return cur if zz.ndim else float(cur)


def hermite_series(alpha, coeffs, z):
    """Accumulate sum_j coeffs[j] chi_j(z) in one pass of the recurrence."""
    return _hermite_series_multi(alpha, np.atleast_2d(np.asarray(coeffs)), z)[0]


def _hermite_series_multi(alpha, coeff_rows, z):
    """Accumulate several coefficient rows against one recurrence sweep."""
    zz = np.asarray(z, dtype=float)
    c = np.asarray(coeff_rows, dtype=complex)
    prev = (alpha / np.pi) ** 0.25 * np.exp(-alpha * zz**2 / 2.0)
    totals = c[:, 0][:, None] * prev[None, :]
    if c.shape[1] == 1:
        return totals
    x = np.sqrt(alpha) * zz
    cur = np.sqrt(2.0) * x * prev
    totals += c[:, 1][:, None] * cur[None, :]
    for n in range(1, c.shape[1] - 1):
        prev, cur = cur, np.sqrt(2.0 / (n + 1.0)) * x * cur - np.sqrt(n / (n + 1.0)) * prev
        totals += c[:, n + 1][:, None] * cur[None, :]
    return totals


@dataclass(frozen=True)
class MinkowskiState:
    """Coefficients on the embedded eigensections psi_00, psi_{j0}, psi_{0k}."""

    c00: complex
    a: np.ndarray = field(repr=False)  # a[j-1] on psi_{j0} (energy -j alpha), j = 1..maxdeg
    b: np.ndarray = field(repr=False)  # b[k-1] on psi_{0k} (energy +k alpha), k = 1..maxdeg

    def __post_init__(self):
        a = np.asarray(self.a, dtype=complex).copy()
        b = np.asarray(self.b, dtype=complex).copy()
        if a.shape != b.shape or a.ndim != 1:
            raise ValueError("coefficient arrays a and b must be matching one-dimensional arrays")
        a.flags.writeable = False
        b.flags.writeable = False
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)

    @property
    def maxdeg(self):
        return self.a.size

    def norm(self):
        return float(
            np.sqrt(abs(self.c00) ** 2 + np.sum(np.abs(self.a) ** 2) + np.sum(np.abs(self.b) ** 2))
        )

    def energy_expectation(self, alpha):
        """<state, H state> = sum E |coef|^2 (not normalized)."""
        j = np.arange(1, self.maxdeg + 1)
        return float(alpha * (np.sum(j * np.abs(self.b) ** 2) - np.sum(j * np.abs(self.a) ** 2)))


def embed(f, maxdeg):
    """Isometry phi_0 -> psi_00, phi_{j<0} -> psi_{-j,0}, phi_{j>0} -> psi_{0j}."""
    J = f.order
    if J > maxdeg:
        raise ValueError(f"truncation order {J} exceeds maxdeg {maxdeg}")
    a = np.zeros(maxdeg, dtype=complex)
    b = np.zeros(maxdeg, dtype=complex)
    for j in range(1, J + 1):
        a[j - 1] = f.coeff(-j)
        b[j - 1] = f.coeff(j)
    return MinkowskiState(f.coeff(0), a, b)


def adjoint(state, J):
    """Left inverse of ``embed``: recover the Fourier series on the band |j| <= J."""
    c = np.zeros(2 * J + 1, dtype=complex)
    c[J] = state.c00
    top = min(J, state.maxdeg)
    for j in range(1, top + 1):
        c[J - j] = state.a[j - 1]
        c[J + j] = state.b[j - 1]
    return FourierSeries(c)


def energy(j, k, alpha):
    """Eigenvalue of the Minkowski Hamiltonian on psi_{jk}: (k - j) alpha."""
    return (k - j) * alpha


def evolve(state, t, alpha):
    """Heisenberg phases: c00 fixed, a_j -> e^{-i j alpha t} a_j, b_k -> e^{+i k alpha t} b_k."""
    j = np.arange(1, state.maxdeg + 1)
    return MinkowskiState(
        state.c00,
        np.exp(-1j * j * alpha * t) * state.a,
        np.exp(+1j * j * alpha * t) * state.b,
    )


@dataclass(frozen=True)
class Grid2D:
    """Uniform square grid on [-extent, extent]^2 with complex values."""

    extent: float
    n: int
    values: np.ndarray = field(repr=False)

    def __post_init__(self):
        v = np.asarray(self.values, dtype=complex)
        if v.shape != (self.n, self.n):
            raise ValueError("values must be an n-by-n array")
        v = v.copy()
        v.flags.writeable = False
        object.__setattr__(self, "values", v)

    @property
    def spacing(self):
        return 2.0 * self.extent / (self.n - 1)

    def axis(self):
        return np.linspace(-self.extent, self.extent, self.n)


def wavefunction_coefficients(params, maxdeg):
    """Mode weights of the embedded kernel state: exp(-j^2 tau) or exp(-|j| tau / 2)."""
    j = np.arange(maxdeg + 1)
    if params.family == HEAT:
        return np.exp(-j.astype(float) ** 2 * params.tau)
    return np.exp(-j * params.tau / 2.0)


def synthesis_tail(params, maxdeg):
    """Dropped coefficient tail sum_{j > maxdeg} of the wavefunction weights."""
    tau = params.tau
    if params.family == HEAT:
        j = np.arange(maxdeg + 1, maxdeg + 2000)
        return float(np.sum(np.exp(-j.astype(float) ** 2 * tau)))
    r = np.exp(-tau / 2.0)
    return float(r ** (maxdeg + 1) / (1.0 - r))


def required_maxdeg(params, tol=1e-10):
    """Smallest maxdeg whose dropped wavefunction tail is below tol."""
    tau = params.tau
    if params.family == HEAT:
        m = int(np.ceil(np.sqrt(np.log(10.0 / tol) / tau)))
        while synthesis_tail(params, m) >= tol:
            m += 1
        return m
    r = np.exp(-tau / 2.0)
    m = int(np.ceil(np.log(tol * (1.0 - r)) / np.log(r))) + 1
    while synthesis_tail(params, m) >= tol:
        m += 1
    return m


def synth_wavefunction(params, theta, basis, extent, n, tail_tol=1e-10):
    """Embedded wavefunction on the coordinate grid.

    psi(x0, x1) = sum_{j=0..maxdeg} w_j (phi_j(theta) chi_j(x0) chi_0(x1)
                                         + phi_j(theta)* chi_0(x0) chi_j(x1)),
    with the j = 0 term counted once and w_j the family weights of
    ``wavefunction_coefficients``.  The angle is reduced to [0, 2 pi)
    before any trig call, making the 2 pi periodicity bit-reproducible.
    Raises if the dropped coefficient tail at this maxdeg exceeds
    ``tail_tol``.
    """
    maxdeg = basis.maxdeg
    tail = synthesis_tail(params, maxdeg)
    if tail >= tail_tol:
        raise ValueError(
            f"coefficient tail {tail:.3e} at maxdeg {maxdeg} exceeds {tail_tol:.1e}; raise maxdeg"
        )
    th = float(reduce_angle(theta))
    j = np.arange(maxdeg + 1)
    weights = wavefunction_coefficients(params, maxdeg)
    cj = weights * np.exp(1j * j * th)  # phi_j(theta) weights
    z = np.linspace(-extent, extent, n)
    chi0 = hermite_eval(HermiteBasis(basis.alpha, 0), 0, z)
    # x0-line sum carries all of j = 0; the x1-line sum starts at j = 1
    h_coeffs = np.conj(cj).copy()
    h_coeffs[0] = 0.0
    g, h = _hermite_series_multi(basis.alpha, np.vstack([cj, h_coeffs]), z)
    values = np.outer(g, chi0) + np.outer(chi0, h)
    return Grid2D(extent, n, values)


def fd_hamiltonian(grid, alpha, boundary_rtol=1e-3):
    """Second-order central-difference Minkowski Hamiltonian on the interior.

        H f = (1/2) d^2f/dx0^2 - (alpha^2/2) x0^2 f
            - (1/2) d^2f/dx1^2 + (alpha^2/2) x1^2 f

    The outermost ring is consumed by the stencil, so the result lives on
    the interior (n-2)^2 grid.  Rejects inputs whose boundary-ring values
    exceed ``boundary_rtol`` times the interior maximum: the Rayleigh
    eigenvalue extraction then carries a truncated-domain error of order
    boundary_rtol^2, negligible against the quoted tolerances.
    """
    f = grid.values
    n = grid.n
    if n < 5:
        raise ValueError("grid too coarse for an interior stencil")
    inner_max = float(np.max(np.abs(f[1:-1, 1:-1])))
    ring = np.concatenate([f[0, :], f[-1, :], f[:, 0], f[:, -1]])
    if inner_max == 0.0 or np.max(np.abs(ring)) > boundary_rtol * inner_max:
        raise ValueError(
            "boundary ring is not negligible; enlarge the extent before applying the Hamiltonian"
        )
    h = grid.spacing
    z = grid.axis()
    d0 = (f[2:, 1:-1] - 2.0 * f[1:-1, 1:-1] + f[:-2, 1:-1]) / h**2
    d1 = (f[1:-1, 2:] - 2.0 * f[1:-1, 1:-1] + f[1:-1, :-2]) / h**2
    x0 = z[1:-1][:, None]
    x1 = z[1:-1][None, :]
    core = f[1:-1, 1:-1]
    values = 0.5 * d0 - 0.5 * alpha**2 * x0**2 * core - 0.5 * d1 + 0.5 * alpha**2 * x1**2 * core
    return Grid2D(grid.extent - h, n - 2, values)


def rayleigh_quotient(grid, applied):
    """<f, H f> / <f, f> over the interior points shared by both grids."""
    f = grid.values[1:-1, 1:-1]
    hf = applied.values
    num = float(np.real(np.sum(np.conj(f) * hf)))
    den = float(np.real(np.sum(np.conj(f) * f)))
    return num / den


def hermite_product_grid(basis, j, k, extent, n):
    """Samples of chi_j(x0) chi_k(x1) as a Grid2D."""
    z = np.linspace(-extent, extent, n)
    return Grid2D(extent, n, np.outer(hermite_eval(basis, j, z), hermite_eval(basis, k, z)))


def fd_oscillator_1d(basis, j, h):
    """One-dimensional check H0 chi_j = (2j+1)(alpha/2) chi_j by central differences.

    Returns the Rayleigh estimate of the eigenvalue on a line grid of
    spacing h covering six scale lengths.
    """
    a = basis.alpha
    half = max(6.0 / np.sqrt(a), np.sqrt((2 * j + 1) / a) + 6.0 / np.sqrt(a))
    n = int(np.ceil(2 * half / h)) | 1
    z = np.linspace(-half, half, n)
    f = hermite_eval(basis, j, z)
    d2 = (f[2:] - 2.0 * f[1:-1] + f[:-2]) / (z[1] - z[0]) ** 2
    hf = -0.5 * d2 + 0.5 * a**2 * z[1:-1] ** 2 * f[1:-1]
    return float(np.sum(f[1:-1] * hf) / np.sum(f[1:-1] ** 2))
