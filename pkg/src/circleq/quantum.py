"""Density-operator states and observables over the truncated Koopman eigenbasis.

States are Hermitian, positive-semidefinite, unit-trace matrices indexed
by the Fourier modes -J..J; observables are Hermitian matrices over the
same basis.  Two geometries appear:

* L^2(mu): states are plain rank-one projections of coefficient vectors,
  and expectations are tr(rho A).
* RKHS: states are represented in the orthonormal kernel basis obtained
  through the polar isometry (which keeps them Hermitian), and the
  expectation of a raw-coefficient observable A picks up the conjugation
  exp(+w_k tau/2) A exp(-w_j tau/2).  For the fractional family this
  pairing reproduces pointwise evaluation of multiplication operators
  exactly up to a computable truncation tail; for the heat family it does
  not, and the defect is measured rather than asserted.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .kernels import feature_map
from .spectral import FourierSeries, mode

_HERM_TOL = 1e-12
_PSD_TOL = 1e-10
_TRACE_TOL = 1e-12


@dataclass(frozen=True)
class DensityOperator:
    """Hermitian, positive-semidefinite, unit-trace matrix over modes -J..J."""

    rho: np.ndarray = field(repr=False)

    def __post_init__(self):
        m = np.asarray(self.rho, dtype=complex)
        if m.ndim != 2 or m.shape[0] != m.shape[1] or m.shape[0] % 2 == 0:
            raise ValueError("state matrix must be square with odd dimension 2J+1")
        scale = max(1.0, float(np.max(np.abs(m))))
        if np.max(np.abs(m - m.conj().T)) > _HERM_TOL * scale:
            raise ValueError("state matrix is not Hermitian")
        if abs(np.trace(m).real - 1.0) > _TRACE_TOL or abs(np.trace(m).imag) > _TRACE_TOL:
            raise ValueError("state matrix must have unit trace")
        if np.linalg.eigvalsh((m + m.conj().T) / 2.0)[0] < -_PSD_TOL:
            raise ValueError("state matrix is not positive semidefinite")
        m = m.copy()
        m.flags.writeable = False
        object.__setattr__(self, "rho", m)

    @property
    def order(self):
        return (self.rho.shape[0] - 1) // 2

    def eigenvalues(self):
        return np.linalg.eigvalsh((self.rho + self.rho.conj().T) / 2.0)


@dataclass(frozen=True)
class ObservableMatrix:
    """Hermitian matrix over modes -J..J (a bounded quantum observable)."""

    mat: np.ndarray = field(repr=False)

    def __post_init__(self):
        m = np.asarray(self.mat, dtype=complex)
        if m.ndim != 2 or m.shape[0] != m.shape[1] or m.shape[0] % 2 == 0:
            raise ValueError("observable matrix must be square with odd dimension 2J+1")
        scale = max(1.0, float(np.max(np.abs(m))))
        if np.max(np.abs(m - m.conj().T)) > _HERM_TOL * scale:
            raise ValueError("observable matrix is not Hermitian")
        m = m.copy()
        m.flags.writeable = False
        object.__setattr__(self, "mat", m)

    @property
    def order(self):
        return (self.mat.shape[0] - 1) // 2

    def operator_norm(self):
        """Largest |eigenvalue|; exact for Hermitian matrices at this scale."""
        ev = np.linalg.eigvalsh(self.mat)
        return float(max(abs(ev[0]), abs(ev[-1])))

    def square(self):
        return ObservableMatrix(self.mat @ self.mat)


def identity_observable(J):
    return ObservableMatrix(np.eye(2 * J + 1, dtype=complex))


def pure_state(f):
    """Rank-one projection rho = f f^dagger / ||f||^2 (rejects the zero series)."""
    v = f.coeffs
    nrm2 = float(np.sum(np.abs(v) ** 2))
    if np.sqrt(nrm2) <= 1e-12:
        raise ValueError("cannot form a pure state from the (near-)zero function")
    return DensityOperator(np.outer(v, v.conj()) / nrm2)


def _rkhs_state_vector(params, theta, J):
    """Coefficients of the feature state in the orthonormal kernel basis."""
    modes = np.arange(-J, J + 1)
    w = params.weight_exponents(modes)
    return np.exp(-w * params.tau / 2.0) * np.exp(-1j * modes * theta)


def psi_map(params, theta, J, inner="l2"):
    """Quantum state attached to the classical state theta.

    inner='l2'  : pure_state(feature_map(theta)) in plain L^2 geometry.
    inner='rkhs': the same kernel section viewed as a state on the RKHS,
        written in the orthonormal kernel basis via the polar isometry so
        the matrix stays Hermitian; expectations against it go through
        ``expectation_rkhs`` / ``omega_map``.
    """
    if inner == "l2":
        return pure_state(feature_map(params, theta, J))
    if inner == "rkhs":
        v = _rkhs_state_vector(params, theta, J)
        return DensityOperator(np.outer(v, v.conj()) / np.sum(np.abs(v) ** 2))
    raise ValueError(f"inner must be 'l2' or 'rkhs', got {inner!r}")


def mult_operator(f, J=None):
    """Toeplitz matrix of the multiplication operator T_f : g -> f g.

    Requires a real-valued symbol (c_{-j} = conj(c_j)) so the matrix is
    Hermitian.
    """
    if J is None:
        J = f.order
    sym = f.coeffs
    d = f.order
    if np.max(np.abs(sym[::-1].conj() - sym)) > 1e-12 * max(1.0, np.max(np.abs(sym))):
        raise ValueError("multiplication symbol must be real-valued (c_{-j} = conj(c_j))")
    dim = 2 * J + 1
    out = np.zeros((dim, dim), dtype=complex)
    idx = np.subtract.outer(np.arange(dim), np.arange(dim))  # k - l
    band = np.abs(idx) <= d
    out[band] = sym[idx[band] + d]
    return ObservableMatrix(out)


def observable_from_op(op, J):
    """Hermitian observable from a series operator (columns = images of modes)."""
    from .spectral import op_matrix

    return ObservableMatrix(op_matrix(op, J))


def expectation(rho, A):
    """Plain quantum expectation tr(rho A) in the L^2 pairing.

    The imaginary residual (roundoff only, since both matrices are
    Hermitian) is asserted below 1e-10 and discarded.
    """
    if rho.order != A.order:
        raise ValueError("state and observable dimensions differ")
    val = complex(np.trace(rho.rho @ A.mat))
    scale = max(1.0, abs(val))
    if abs(val.imag) > 1e-10 * scale:
        raise ArithmeticError(f"expectation has non-negligible imaginary part {val.imag:g}")
    return float(val.real)


def expectation_rkhs(params, rho, A):
    """Expectation of the raw-coefficient observable A in the RKHS pairing.

    The state is stored in the orthonormal kernel basis, so the observable
    must be conjugated through the polar isometry:

        tr(rho S A S^{-1}),   S = diag(exp(+w_j tau / 2)).

    Computed as tr((S^{-1} rho S) A); for kernel-section states the scaled
    factors cancel entrywise, keeping the sum well conditioned.  Real up to
    truncation for multiplication operators; the small imaginary residual
    is discarded.
    """
    if rho.order != A.order:
        raise ValueError("state and observable dimensions differ")
    J = rho.order
    w = params.weight_exponents(np.arange(-J, J + 1))
    s = np.exp(w * params.tau / 2.0)
    scaled = (rho.rho / s[:, None]) * s[None, :]
    return float(np.real(np.trace(scaled @ A.mat)))


def conj_evolve(sys, rho, t):
    """Transfer-operator action on states: rho -> U^{t*} rho U^t.

    Conjugation by the diagonal phase matrix diag(exp(i j alpha t));
    preserves trace, Hermiticity and eigenvalues.
    """
    J = rho.order
    phases = np.exp(1j * np.arange(-J, J + 1) * sys.alpha * t)
    return DensityOperator(np.conj(phases)[:, None] * rho.rho * phases[None, :])


def heisenberg(sys, A, t):
    """Observable evolution A -> U^t A U^{t*} (dual to ``conj_evolve``)."""
    J = A.order
    phases = np.exp(1j * np.arange(-J, J + 1) * sys.alpha * t)
    return ObservableMatrix(phases[:, None] * A.mat * np.conj(phases)[None, :])


def omega_map(params, A, thetas, inner="l2"):
    """Classical observable f_A(theta) induced by the quantum observable A.

    inner='l2'  : f_A(theta) = tr(Psi_tau(theta) A), real by Hermiticity.
    inner='rkhs': the weighted quotient

        f_A(theta) = sum_j e^{-w_j tau} conj(u_j) (A u)_j / sum_j e^{-w_j tau},

    with u_j = exp(i j theta) - the RKHS expectation against the kernel
    state, which inverts multiplication operators up to the truncation
    tail (real for those; the imaginary residual is discarded).
    """
    th = np.atleast_1d(np.asarray(thetas, dtype=float))
    J = A.order
    modes = np.arange(-J, J + 1)
    if inner == "l2":
        out = np.array([expectation(psi_map(params, t, J, "l2"), A) for t in th])
    elif inner == "rkhs":
        d = np.exp(-params.weight_exponents(modes) * params.tau)
        z = float(np.sum(d))
        u = np.exp(1j * np.outer(th, modes))  # rows: theta
        # sum_{k,j} A_{kj} u_k d_j conj(u_j) per theta row
        out = np.real(np.sum((u @ A.mat) * (d[None, :] * np.conj(u)), axis=1)) / z
    else:
        raise ValueError(f"inner must be 'l2' or 'rkhs', got {inner!r}")
    return out if np.ndim(thetas) else float(out[0])


def variance(rho, A):
    """var_rho(A) = tr(rho A^2) - tr(rho A)^2 with the plain matrix square."""
    return expectation(rho, A.square()) - expectation(rho, A) ** 2


def trace_distance(rho, sigma):
    """(1/2) ||rho - sigma||_1."""
    ev = np.linalg.eigvalsh(rho.rho - sigma.rho)
    return float(0.5 * np.sum(np.abs(ev)))


def left_inverse_tail_bound(params, J, deg, sup_norm):
    """Truncation-tail bound for the RKHS left-inverse property.

    eps = 2 ||f||_inf sum_{|j| > J - deg} e^{-w_j tau} / sum_{|j| <= J} e^{-w_j tau},

    the defect of the weighted-quotient formula when the symbol has degree
    ``deg`` and the band is |j| <= J.  The numerator tail is summed far
    past the band edge (weights decay geometrically or faster).
    """
    tau = params.tau
    j_in = np.arange(-J, J + 1)
    z = float(np.sum(np.exp(-params.weight_exponents(j_in) * tau)))
    lo = J - deg + 1
    j_tail = np.arange(lo, lo + 2000)
    tail = 2.0 * float(np.sum(np.exp(-params.weight_exponents(j_tail) * tau)))
    return 2.0 * sup_norm * tail / z


def random_real_trig_poly(rng, deg, J, scale=1.0):
    """Random real-valued trig polynomial of the given degree on the band."""
    c = np.zeros(2 * J + 1, dtype=complex)
    c[J] = scale * rng.standard_normal()
    for m in range(1, deg + 1):
        z = scale * (rng.standard_normal() + 1j * rng.standard_normal()) / np.sqrt(2.0)
        c[J + m] = z
        c[J - m] = np.conj(z)
    return FourierSeries(c)


def sup_norm_estimate(f, n_grid=4096):
    """max |f| on a dense uniform grid (enough for tail-bound purposes)."""
    from .spectral import evaluate

    th = np.linspace(0.0, 2 * np.pi, n_grid, endpoint=False)
    return float(np.max(np.abs(evaluate(f, th))))
