"""Invariant and property suites behind the ``verify`` command.

Each check returns one record (name, max error, threshold, pass/fail) so
the CLI can emit a machine-readable report.  Checks whose quantifier
domain is empty at the given truncation are skipped with a reason rather
than failed.  All randomness flows from the configured seed, so reruns
are byte-identical.

Two documented departures from naive transcription, both forced by the
arithmetic of the truncated compression (see the repository notes):

* canonical commutators equal i times the identity on the matching
  frequency sector ([X, P] = i on band inputs), and the two
  annihilator/creator cross-commutators acquire an exact rank-one defect
  at the seam modes j = -1 / j = +1; the checks assert the true values
  (including the seam defect) to 1e-12 and report the residual of the
  unadorned "identity" form instead of asserting it;
* the Koopman group law holds to 3 ulp per coefficient (two complex
  exponentials plus one product rounding), tested with dyadic times.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

import numpy as np

from . import kernels as kn
from . import minkowski as mk
from . import quantum as qm
from . import spectral as sp

TWO_PI = 2.0 * np.pi


@dataclass(frozen=True)
class RunConfig:
    """Resolved run parameters shared by the verify suites and the CLI."""

    alpha: float = 1.0
    tau: float = 0.5
    family: str = kn.HEAT
    trunc: int = 64
    maxdeg: int = 40
    extent: float = 6.0
    grid_n: int = 257
    seed: int = 0
    out: str = "."

    def __post_init__(self):
        if self.alpha == 0.0:
            raise ValueError("alpha must be nonzero")
        if self.tau <= 0.0:
            raise ValueError("tau must be positive")
        if self.family not in (kn.HEAT, kn.FRACTIONAL):
            raise ValueError(f"family must be '{kn.HEAT}' or '{kn.FRACTIONAL}'")
        if self.trunc < 1:
            raise ValueError("trunc must be a positive integer")
        if self.maxdeg < 0:
            raise ValueError("maxdeg must be nonnegative")
        if self.extent <= 0.0:
            raise ValueError("extent must be positive")
        if self.grid_n < 5:
            raise ValueError("grid-n must be at least 5")

    def system(self):
        return sp.RotationSystem(self.alpha)

    def params(self, family=None, tau=None):
        return kn.KernelParams(family or self.family, self.tau if tau is None else tau)


@dataclass
class CheckResult:
    name: str
    max_error: float
    threshold: float
    passed: bool
    skipped: bool = False
    reason: str = ""
    info: str = ""

    @property
    def status(self):
        return "SKIP" if self.skipped else ("PASS" if self.passed else "FAIL")

    def as_record(self):
        return {
            "name": self.name,
            "max_error": self.max_error,
            "threshold": self.threshold,
            "status": self.status,
            "reason": self.reason,
            "info": self.info,
        }


def _result(name, err, thr, info=""):
    return CheckResult(name, float(err), float(thr), bool(err <= thr), info=info)


def _skip(name, reason):
    return CheckResult(name, 0.0, 0.0, True, skipped=True, reason=reason)


def _random_series(rng, J, deg=None, zero_mode=True):
    deg = J if deg is None else deg
    c = np.zeros(2 * J + 1, dtype=complex)
    lo, hi = J - deg, J + deg + 1
    c[lo:hi] = rng.standard_normal(2 * deg + 1) + 1j * rng.standard_normal(2 * deg + 1)
    if not zero_mode:
        c[J] = 0.0
    return sp.FourierSeries(c)


def _random_hermitian(rng, J):
    dim = 2 * J + 1
    m = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
    return qm.ObservableMatrix((m + m.conj().T) / 2.0)


def _sector_series(rng, J, lo, hi):
    """Random series supported on modes lo..hi (inclusive)."""
    c = np.zeros(2 * J + 1, dtype=complex)
    c[lo + J : hi + J + 1] = (
        rng.standard_normal(hi - lo + 1) + 1j * rng.standard_normal(hi - lo + 1)
    )
    return sp.FourierSeries(c)


# ---------------------------------------------------------------------------
# spectral-core suite


def check_generator_eigenvalues(cfg):
    sys_, J = cfg.system(), cfg.trunc
    err = 0.0
    for j in range(-J, J + 1):
        out = sp.generator(sys_, sp.mode(j, J))
        target = 1j * cfg.alpha * j
        err = max(err, abs(out.coeff(j) - target), out.norm() - abs(target))
    # integer-order fractional derivative coincides with the generator
    rng = np.random.default_rng(cfg.seed + 101)
    f = _random_series(rng, J)
    err = max(err, (sp.generator(sys_, f) - cfg.alpha * sp.frac_derivative(f, 1.0)).norm())
    return _result("spectral.generator_eigenvalues", err, 1e-12 * max(1.0, abs(cfg.alpha) * J))


def check_koopman_unitarity(cfg):
    sys_, J = cfg.system(), cfg.trunc
    rng = np.random.default_rng(cfg.seed + 102)
    err = 0.0
    for _ in range(20):
        f = _random_series(rng, J)
        t = rng.uniform(-20.0, 20.0)
        err = max(err, abs(sp.koopman(sys_, f, t).norm() - f.norm()) / f.norm())
    return _result("spectral.koopman_unitarity", err, 1e-13)


def check_koopman_group_law(cfg):
    sys_, J = cfg.system(), cfg.trunc
    rng = np.random.default_rng(cfg.seed + 103)
    worst = 0.0
    for _ in range(20):
        f = _random_series(rng, J)
        # dyadic times make s + t exact so only the exponential roundings remain
        s = rng.integers(-64, 65) / 32.0
        t = rng.integers(-64, 65) / 32.0
        lhs = sp.koopman(sys_, sp.koopman(sys_, f, s), t).coeffs
        rhs = sp.koopman(sys_, f, s + t).coeffs
        ulps = np.abs(lhs - rhs) / np.spacing(np.maximum(np.abs(rhs), 1e-300))
        worst = max(worst, float(np.max(ulps)))
    return _result(
        "spectral.koopman_group_law", worst, 3.0, info="per-coefficient error in ulp, dyadic times"
    )


def check_shift_relations(cfg):
    sys_, J = cfg.system(), cfg.trunc
    if J < 2:
        return _skip("spectral.shift_relations", "interior band empty")
    rng = np.random.default_rng(cfg.seed + 104)
    err = 0.0
    for j in range(-J + 1, J):
        err = max(err, (sp.lower(sp.mode(j, J)) - sp.mode(j - 1, J)).norm())
        err = max(err, (sp.raise_(sp.mode(j, J)) - sp.mode(j + 1, J)).norm())
    err = max(err, sp.lower(sp.mode(-J, J)).norm())  # boundary drop
    f = _sector_series(rng, J, -J + 1, J - 1)
    err = max(err, abs(sp.lower(f).norm() - f.norm()))
    err = max(err, (sp.raise_(sp.lower(f)) - f).norm(), (sp.lower(sp.raise_(f)) - f).norm())
    # [V, L] = -i alpha L and [V, L*] = +i alpha L* on the interior band
    for _ in range(10):
        g = _sector_series(rng, J, -J + 1, J - 1)
        vl = sp.generator(sys_, sp.lower(g)) - sp.lower(sp.generator(sys_, g))
        err = max(err, (vl - (-1j * cfg.alpha) * sp.lower(g)).norm())
        vr = sp.generator(sys_, sp.raise_(g)) - sp.raise_(sp.generator(sys_, g))
        err = max(err, (vr - (1j * cfg.alpha) * sp.raise_(g)).norm())
    return _result("spectral.shift_relations", err, 1e-12 * max(1.0, abs(cfg.alpha) * J))


def check_frac_semigroup(cfg):
    J = cfg.trunc
    rng = np.random.default_rng(cfg.seed + 105)
    err = 0.0
    for _ in range(20):
        f = _random_series(rng, J)
        q, r = rng.uniform(0.0, 2.0, 2)
        for sign in ("neg", "pos"):
            g = sp.project(f, sign)
            twice = sp.frac_derivative(sp.frac_derivative(g, q), r)
            once = sp.frac_derivative(g, q + r)
            scale = np.maximum(np.abs(once.coeffs), 1e-300)
            err = max(err, float(np.max(np.abs(twice.coeffs - once.coeffs) / scale)))
    return _result("spectral.frac_semigroup", err, 1e-12, info="relative per coefficient")


def check_gl_convergence(cfg):
    J = cfg.trunc
    rng = np.random.default_rng(cfg.seed + 106)
    deg = min(8, J)
    modes = np.arange(-J, J + 1)
    steps = [2.0**-k for k in range(3, 11)]
    # study term count grows like a^{-3/2}: with the default ~1/a count the
    # amplified binomial tail leaves a constant per-mode floor and the
    # sweep bottoms out instead of decreasing (see gl_terms).  The
    # multipliers depend on f only through its modes, so compute them once
    # per step and share them across the sample.
    mults = {a: sp.gl_multipliers(modes, 0.5, a, sp.gl_study_terms(a)) for a in steps}
    target_mult = sp.frac_multipliers(modes, 0.5)
    monotone = True
    final = 0.0
    orders = []
    for _ in range(20):
        f = qm.random_real_trig_poly(rng, deg, J)
        c = f.coeffs.copy()
        c[J] = 0.0  # the zero mode carries the alternating-binomial residual
        f = sp.FourierSeries(c)
        errs = [
            float(np.linalg.norm((mults[a] - target_mult) * f.coeffs)) / f.norm() for a in steps
        ]
        monotone &= all(e2 < e1 for e1, e2 in zip(errs, errs[1:]))
        final = max(final, errs[-1])
        orders.append(np.polyfit(np.log(steps), np.log(errs), 1)[0])
    err = final if monotone else float("inf")
    return _result(
        "spectral.gl_convergence",
        err,
        1e-2,
        info=f"monotone={monotone}, empirical order ~ {np.mean(orders):.2f}",
    )


def _ladder_ops(sys_):
    return {
        "A-": lambda f: sp.ladder(sys_, f, "A_minus"),
        "A-+": lambda f: sp.ladder(sys_, f, "A_minus_plus"),
        "A+": lambda f: sp.ladder(sys_, f, "A_plus"),
        "A++": lambda f: sp.ladder(sys_, f, "A_plus_plus"),
        "N-": lambda f: sp.number_op(sys_, f, "minus"),
        "N+": lambda f: sp.number_op(sys_, f, "plus"),
    }


def _commutator_matrix(opa, opb, J):
    ma, mb = sp.op_matrix(opa, J), sp.op_matrix(opb, J)
    return ma @ mb - mb @ ma


def check_ladder_commutators(cfg):
    sys_, J = cfg.system(), cfg.trunc
    if J - 2 < 1:
        return _skip("spectral.ladder_commutators", "interior band empty")
    ops = _ladder_ops(sys_)
    mats = {k: sp.op_matrix(v, J) for k, v in ops.items()}
    band = slice(2, 2 * J - 1)  # columns |j| <= J-2

    def comm(a, b):
        return mats[a] @ mats[b] - mats[b] @ mats[a]

    err = 0.0
    # identities exact on the whole interior band
    err = max(err, np.max(np.abs((comm("N-", "A-") + mats["A-"])[:, band])))
    err = max(err, np.max(np.abs((comm("N-", "A-+") - mats["A-+"])[:, band])))
    err = max(err, np.max(np.abs((comm("N+", "A+") + mats["A+"])[:, band])))
    err = max(err, np.max(np.abs((comm("N+", "A++") - mats["A++"])[:, band])))
    err = max(err, np.max(np.abs(comm("A-", "A+")[:, band])))
    err = max(err, np.max(np.abs(comm("A-+", "A++")[:, band])))
    err = max(err, np.max(np.abs(comm("N-", "N+")[:, band])))
    # the two annihilator/creator cross-commutators vanish away from the
    # compression seam and carry an exact rank-one defect on it:
    # [A-, A++] e_{-1} = -e_{+1},  [A+, A-+] e_{+1} = -e_{-1}
    c1 = comm("A-", "A++")
    c2 = comm("A+", "A-+")
    e1 = np.zeros(2 * J + 1)
    e1[J + 1] = 1.0
    em1 = np.zeros(2 * J + 1)
    em1[J - 1] = 1.0
    err = max(err, np.max(np.abs(c1[:, J - 1] + e1)))
    err = max(err, np.max(np.abs(c2[:, J + 1] + em1)))
    mask = np.ones(2 * J + 1, dtype=bool)
    mask[: 2] = mask[2 * J - 1 :] = False
    off1 = mask.copy()
    off1[J - 1] = False  # exclude seam column of [A-, A++]
    off2 = mask.copy()
    off2[J + 1] = False
    err = max(err, np.max(np.abs(c1[:, off1])))
    err = max(err, np.max(np.abs(c2[:, off2])))
    return _result(
        "spectral.ladder_commutators",
        err,
        1e-12,
        info="cross-commutators carry the exact rank-one seam defect at j = -/+1",
    )


def check_generator_number_decomposition(cfg):
    sys_, J = cfg.system(), cfg.trunc
    rng = np.random.default_rng(cfg.seed + 107)
    err = 0.0
    for _ in range(10):
        f = _random_series(rng, J)
        lhs = 1j * cfg.alpha * (
            -1.0 * sp.number_op(sys_, f, "minus") + sp.number_op(sys_, f, "plus")
        )
        err = max(err, (lhs - sp.generator(sys_, f)).norm() / f.norm())
    return _result("spectral.generator_number_decomposition", err, 1e-12 * max(1.0, abs(cfg.alpha) * J))


def check_canonical_commutators(cfg):
    sys_, J = cfg.system(), cfg.trunc
    if J - 2 < 1:
        return _skip("spectral.canonical_commutators", "interior band empty")
    mats = {
        k: sp.op_matrix(lambda f, kk=k: sp.pos_mom(sys_, f, kk), J)
        for k in ("X_minus", "P_minus", "X_plus", "P_plus")
    }

    def comm(a, b):
        return mats[a] @ mats[b] - mats[b] @ mats[a]

    dim = 2 * J + 1
    err = 0.0
    lit = 0.0
    cmm = comm("X_minus", "P_minus")
    cpp = comm("X_plus", "P_plus")
    # [X, P] = i Id on the matching frequency sector, restricted to the band
    for j in range(-(J - 2), 1):
        e = np.zeros(dim)
        e[j + J] = 1.0
        err = max(err, np.max(np.abs(cmm[:, j + J] - 1j * e)))
        lit = max(lit, np.max(np.abs(cmm[:, j + J] - e)))
    for j in range(0, J - 1):
        e = np.zeros(dim)
        e[j + J] = 1.0
        err = max(err, np.max(np.abs(cpp[:, j + J] - 1j * e)))
        lit = max(lit, np.max(np.abs(cpp[:, j + J] - e)))
    # cross-commutators vanish on the band away from the seam modes -/+1,
    # where the compression leaves an exact residue (reported, asserted at
    # its computed value through the ladder seam check)
    band = np.zeros(dim, dtype=bool)
    band[2 : 2 * J - 1] = True
    off_seam = band.copy()
    off_seam[[J - 1, J + 1]] = False
    for a, b in (("X_minus", "P_plus"), ("X_plus", "P_minus"), ("X_minus", "X_plus"), ("P_minus", "P_plus")):
        err = max(err, np.max(np.abs(comm(a, b)[:, off_seam])))
    return _result(
        "spectral.canonical_commutators",
        err,
        1e-12,
        info=f"canonical form [X,P] = i Id; residual of the literal identity form = {lit:.3f}",
    )


def check_leibniz(cfg):
    sys_, J = cfg.system(), cfg.trunc
    rng = np.random.default_rng(cfg.seed + 108)
    err = 0.0
    for _ in range(10):
        df = rng.integers(1, max(2, J // 2))
        dg = rng.integers(1, max(2, J - df))
        f = _random_series(rng, J, int(df))
        g = _random_series(rng, J, int(dg))
        lhs = sp.generator(sys_, kn.rkha_product(f, g))
        rhs = kn.rkha_product(sp.generator(sys_, f), g) + kn.rkha_product(f, sp.generator(sys_, g))
        err = max(err, (lhs - rhs).norm() / max(1.0, lhs.norm()))
    return _result("spectral.leibniz", err, 1e-12)


# ---------------------------------------------------------------------------
# kernels-rkhs suite


def check_fractional_closed_form(cfg):
    rng = np.random.default_rng(cfg.seed + 201)
    err = 0.0
    for _ in range(100):
        tau = rng.uniform(0.1, 5.0)
        delta = rng.uniform(0.0, TWO_PI)
        p = kn.KernelParams(kn.FRACTIONAL, tau)
        err = max(
            err,
            abs(
                kn.kernel_value(p, 0.0, delta, "closed_form")
                - kn.kernel_value(p, 0.0, delta, "fourier_sum")
            ),
        )
    return _result("kernels.fractional_closed_form", err, 1e-12)


def check_heat_methods(cfg):
    rng = np.random.default_rng(cfg.seed + 202)
    err = 0.0
    for tau in (0.05, 0.1, 0.3, 0.5, 1.0, 2.0, 5.0):
        p = kn.KernelParams(kn.HEAT, tau)
        for delta in rng.uniform(0.0, TWO_PI, 15):
            a = kn.kernel_value(p, 0.0, delta, "fourier_sum")
            b = kn.kernel_value(p, 0.0, delta, "cosine_sum")
            c = kn.kernel_value(p, 0.0, delta, "poisson_images")
            err = max(err, abs(a - b), abs(a - c))
    return _result("kernels.heat_methods", err, 1e-12)


def check_reproducing_property(cfg):
    J = cfg.trunc
    rng = np.random.default_rng(cfg.seed + 203)
    p = cfg.params()
    err = 0.0
    for _ in range(10):
        th, thp = rng.uniform(0.0, TWO_PI, 2)
        lhs = kn.rkhs_inner(p, kn.feature_map(p, th, J), kn.feature_map(p, thp, J))
        # compare against the same truncation of the kernel sum
        w = p.weight_exponents(np.arange(-J, J + 1))
        ref = np.sum(np.exp(-w * p.tau) * np.exp(1j * np.arange(-J, J + 1) * (thp - th)))
        err = max(err, abs(lhs - ref))
        f = _random_series(rng, J, min(J, 12))
        err = max(err, abs(kn.rkhs_inner(p, kn.feature_map(p, th, J), f) - sp.evaluate(f, th)))
    # orthonormality of the weighted basis (interior modes: a deliberate
    # single mode at |j| = J trips the dominating-tail warning by design)
    for j in (-min(5, J - 1), 0, min(3, J - 1)):
        fj = kn.polar_isometry(p, sp.mode(j, J), "inverse")
        err = max(err, abs(kn.rkhs_inner(p, fj, fj) - 1.0))
        if j != 0:
            f0 = kn.polar_isometry(p, sp.mode(0, J), "inverse")
            err = max(err, abs(kn.rkhs_inner(p, fj, f0)))
    return _result("kernels.reproducing_property", err, 1e-10)


def check_feature_invariances(cfg):
    sys_, J, p = cfg.system(), cfg.trunc, cfg.params()
    rng = np.random.default_rng(cfg.seed + 204)
    err = 0.0
    base = kn.feature_map(p, 0.0, J).norm()
    for _ in range(10):
        th = rng.uniform(0.0, TWO_PI)
        t = rng.uniform(-10.0, 10.0)
        err = max(err, abs(kn.feature_map(p, th, J).norm() - base))
        lhs = kn.feature_map(p, sys_.flow(th, t), J)
        rhs = sp.koopman(sys_, kn.feature_map(p, th, J), -t)
        err = max(err, (lhs - rhs).norm())
    return _result("kernels.feature_invariances", err, 1e-12)


def check_rkhs_koopman_unitarity(cfg):
    sys_, J, p = cfg.system(), cfg.trunc, cfg.params()
    rng = np.random.default_rng(cfg.seed + 205)
    err = 0.0
    for _ in range(10):
        # draw with RKHS membership margin: |c_j| <= exp(-w_j 2 tau)
        w = p.weight_exponents(np.arange(-J, J + 1))
        damp = np.exp(-w * 2.0 * p.tau)
        f = sp.FourierSeries(damp * _random_series(rng, J).coeffs)
        g = sp.FourierSeries(damp * _random_series(rng, J).coeffs)
        t = rng.uniform(-10.0, 10.0)
        a = kn.rkhs_inner(p, sp.koopman(sys_, f, t), sp.koopman(sys_, g, t))
        b = kn.rkhs_inner(p, f, g)
        err = max(err, abs(a - b) / max(1e-300, abs(b)))
    return _result("kernels.rkhs_koopman_unitarity", err, 1e-12)


def check_polar_isometry(cfg):
    J, p = cfg.trunc, cfg.params()
    rng = np.random.default_rng(cfg.seed + 206)
    # keep the full RKHS weights representable: exp(w_j tau) < float max
    w_all = p.weight_exponents(np.arange(0, J + 1))
    deg = int(np.searchsorted(w_all * p.tau, 690.0) - 1)
    deg = max(1, min(J, deg))
    err = 0.0
    for _ in range(10):
        f = _random_series(rng, J, deg)
        rt = (kn.polar_isometry(p, kn.polar_isometry(p, f, "inverse"), "forward") - f).norm()
        nrm = abs(kn.rkhs_norm(p, f) - kn.polar_isometry(p, f, "forward").norm()) / max(
            1.0, kn.rkhs_norm(p, f)
        )
        err = max(err, rt if np.isfinite(rt) else float("inf"))
        err = max(err, nrm if np.isfinite(nrm) else float("inf"))
    return _result("kernels.polar_isometry", err, 1e-12, info=f"draws limited to degree {deg}")


def check_rkha_algebra(cfg):
    J = cfg.trunc
    rng = np.random.default_rng(cfg.seed + 207)
    err = 0.0
    if J >= 3:
        err = max(err, (kn.rkha_product(sp.mode(1, J), sp.mode(2, J)) - sp.mode(3, J)).norm())
    for _ in range(5):
        f = _random_series(rng, J)
        err = max(err, (kn.rkha_product(sp.mode(0, J), f) - f).norm() / f.norm())
    return _result("kernels.rkha_algebra", err, 1e-14)


def check_holder_inequality(cfg):
    J = cfg.trunc
    rng = np.random.default_rng(cfg.seed + 208)
    violations = 0
    max_ratio = 0.0
    hilbert_violations = 0
    hilbert_max = 0.0
    deg = min(10, max(1, J // 4))
    for _ in range(1000):
        tau1 = rng.uniform(0.05, 3.0)
        tau2 = rng.uniform(0.05, 3.0)
        tau = 1.0 / (1.0 / tau1 + 1.0 / tau2)  # 1/tau = 1/tau1 + 1/tau2 exactly
        p, p1, p2 = (kn.KernelParams(kn.HEAT, t) for t in (tau, tau1, tau2))

        def draw(taup):
            c = np.zeros(2 * J + 1, dtype=complex)
            m = np.arange(-deg, deg + 1)
            c[J - deg : J + deg + 1] = np.exp(-m.astype(float) ** 2 * taup) * (
                rng.standard_normal(2 * deg + 1) + 1j * rng.standard_normal(2 * deg + 1)
            )
            return sp.FourierSeries(c)

        f, g = draw(2.0 * tau1), draw(2.0 * tau2)
        fg = kn.rkha_product(f, g)
        lhs = kn.wiener_norm(p, fg)
        rhs = kn.wiener_norm(p1, f) * kn.wiener_norm(p2, g)
        if lhs > rhs * (1.0 + 1e-12):
            violations += 1
        max_ratio = max(max_ratio, lhs / rhs)
        hl = kn.rkhs_norm(p, fg)
        hr = kn.rkhs_norm(p1, f) * kn.rkhs_norm(p2, g)
        if hl > hr * (1.0 + 1e-12):
            hilbert_violations += 1
        hilbert_max = max(hilbert_max, hl / hr)
    return _result(
        "kernels.holder_inequality",
        float(violations),
        0.0,
        info=(
            f"algebra (weighted-l1) norms: 0 violations required, max ratio {max_ratio:.6f}; "
            f"Hilbert-norm form violated on {hilbert_violations}/1000 pairs "
            f"(max ratio {hilbert_max:.4f}), reported only - see notes"
        ),
    )


def check_rkha_submultiplicativity(cfg):
    J = cfg.trunc
    rng = np.random.default_rng(cfg.seed + 209)
    p = kn.KernelParams(kn.FRACTIONAL, cfg.tau)
    deg = min(12, max(1, J // 4))
    max_ratio = 0.0
    for _ in range(1000):
        def draw():
            c = np.zeros(2 * J + 1, dtype=complex)
            m = np.arange(-deg, deg + 1)
            c[J - deg : J + deg + 1] = np.exp(-np.abs(m) * 2.0 * p.tau) * (
                rng.standard_normal(2 * deg + 1) + 1j * rng.standard_normal(2 * deg + 1)
            )
            return sp.FourierSeries(c)

        f, g = draw(), draw()
        max_ratio = max(
            max_ratio, kn.rkhs_norm(p, kn.rkha_product(f, g)) / (kn.rkhs_norm(p, f) * kn.rkhs_norm(p, g))
        )
    # existence statement only: the constant is reported, never asserted
    res = CheckResult(
        "kernels.rkha_submultiplicativity",
        max_ratio,
        float("inf"),
        True,
        info=f"empirical Banach-algebra constant C_tau <= {max_ratio:.6f} (reported, not asserted)",
    )
    return res


def check_gram_positive(cfg):
    err_records = []
    for family in (kn.HEAT, kn.FRACTIONAL):
        p = kn.KernelParams(family, cfg.tau)
        thetas = TWO_PI * np.arange(8) / 8.0
        mineig = kn.kernel_matrix_mineig(p, thetas)
        err_records.append(mineig)
        single = kn.kernel_value(p, 0.3, 0.3)
        if mineig <= 0.0 or single <= 1.0:
            return CheckResult(
                "kernels.gram_positive", float(min(mineig, single - 1.0)), 0.0, False,
                info="min eigenvalue or diagonal value not positive",
            )
    return CheckResult(
        "kernels.gram_positive",
        0.0,
        0.0,
        True,
        info=f"min eigenvalues heat/fractional: {err_records[0]:.6e}, {err_records[1]:.6e}",
    )


def check_measure_embedding(cfg):
    J, p = cfg.trunc, cfg.params()
    rng = np.random.default_rng(cfg.seed + 210)
    err = 0.0
    th = rng.uniform(0.0, TWO_PI)
    err = max(
        err,
        (kn.embed_measure(p, kn.AtomicMeasure.dirac(th), J) - kn.feature_map(p, th, J)).norm(),
    )
    uni = kn.embed_measure(p, kn.AtomicMeasure.uniform(2 * J + 3), J)
    target = sp.mode(0, J)
    err = max(err, (uni - target).norm())
    two = kn.AtomicMeasure(np.array([0.4, 2.9]), np.array([0.5, 0.5]))
    emb = kn.embed_measure(p, two, J)
    sep = min(
        (emb - kn.feature_map(p, 0.4, J)).norm(), (emb - kn.feature_map(p, 2.9, J)).norm()
    )
    if sep <= 1e-6:
        return CheckResult("kernels.measure_embedding", sep, 1e-6, False,
                           info="two-atom embedding collapsed onto a feature vector")
    return _result("kernels.measure_embedding", err, 1e-12)


# ---------------------------------------------------------------------------
# quantum-states suite


def check_state_invariants(cfg):
    sys_, J = cfg.system(), cfg.trunc
    rng = np.random.default_rng(cfg.seed + 301)
    err = 0.0
    for inner in ("l2", "rkhs"):
        for family in (kn.HEAT, kn.FRACTIONAL):
            p = kn.KernelParams(family, cfg.tau)
            rho = qm.psi_map(p, rng.uniform(0.0, TWO_PI), J, inner)
            rho = qm.conj_evolve(sys_, rho, rng.uniform(-5.0, 5.0))
            m = rho.rho
            err = max(err, float(np.max(np.abs(m - m.conj().T))))
            err = max(err, abs(np.trace(m).real - 1.0))
            err = max(err, max(0.0, -float(np.min(rho.eigenvalues()))))
            err = max(err, float(np.max(np.abs(m @ m - m))))  # purity
    f = _random_series(rng, J)
    rho = qm.pure_state(f)
    err = max(err, float(np.max(np.abs(qm.pure_state(2.0 * f).rho - rho.rho))))
    err = max(err, float(np.max(np.abs(rho.rho @ rho.rho - rho.rho))))
    return _result("quantum.state_invariants", err, 1e-10)


def check_mult_operator(cfg):
    J = cfg.trunc
    err = 0.0
    ident = qm.mult_operator(sp.mode(0, J))
    err = max(err, float(np.max(np.abs(ident.mat - np.eye(2 * J + 1)))))
    cosi = sp.FourierSeries(np.array([0.5, 0.0, 0.5], dtype=complex))
    if J >= 1:
        T = qm.mult_operator(
            sp.FourierSeries(np.pad(cosi.coeffs, J - 1)), J
        )
        target = np.zeros((2 * J + 1, 2 * J + 1), dtype=complex)
        target += np.diag(np.full(2 * J, 0.5), 1) + np.diag(np.full(2 * J, 0.5), -1)
        err = max(err, float(np.max(np.abs(T.mat - target))))
    rng = np.random.default_rng(cfg.seed + 302)
    f = qm.random_real_trig_poly(rng, min(6, J), J)
    rho0 = qm.pure_state(sp.mode(0, J))
    err = max(err, abs(qm.expectation(rho0, qm.mult_operator(f)) - f.coeff(0).real))
    try:
        qm.mult_operator(sp.mode(1, J))
    except ValueError:
        pass
    else:
        return CheckResult("quantum.mult_operator", 1.0, 0.0, False,
                           info="non-real symbol was not rejected")
    return _result("quantum.mult_operator", err, 1e-12)


def check_expectation_bounds(cfg):
    J = cfg.trunc
    rng = np.random.default_rng(cfg.seed + 303)
    err = 0.0
    for _ in range(10):
        A = _random_hermitian(rng, J)
        rho = qm.pure_state(_random_series(rng, J))
        err = max(err, abs(qm.expectation(rho, qm.identity_observable(J)) - 1.0))
        excess = abs(qm.expectation(rho, A)) - A.operator_norm()
        err = max(err, max(0.0, excess))
        err = max(err, abs(qm.variance(rho, qm.identity_observable(J))))
    return _result("quantum.expectation_bounds", err, 1e-10)


def check_equivariance_diagrams(cfg):
    sys_, J = cfg.system(), cfg.trunc
    p = cfg.params()
    rng = np.random.default_rng(cfg.seed + 304)
    err = 0.0
    thetas_eval = TWO_PI * np.arange(16) / 16.0
    for _ in range(5):
        th = rng.uniform(0.0, TWO_PI)
        t = rng.uniform(-8.0, 8.0)
        A = _random_hermitian(rng, J)
        # (1) feature map equivariance
        lhs = kn.feature_map(p, sys_.flow(th, t), J)
        rhs = sp.koopman(sys_, kn.feature_map(p, th, J), -t)
        err = max(err, (lhs - rhs).norm())
        # (2) projection / transfer compatibility on random observables
        f = _random_series(rng, J)
        err = max(
            err,
            qm.trace_distance(qm.pure_state(sp.koopman(sys_, f, -t)), qm.conj_evolve(sys_, qm.pure_state(f), t)),
        )
        # (3) state map equivariance in trace norm
        err = max(
            err,
            qm.trace_distance(qm.psi_map(p, sys_.flow(th, t), J), qm.conj_evolve(sys_, qm.psi_map(p, th, J), t)),
        )
        # (4) observable map equivariance on a grid
        lhs_vals = qm.omega_map(p, qm.heisenberg(sys_, A, t), thetas_eval)
        rhs_vals = qm.omega_map(p, A, np.array([sys_.flow(x, t) for x in thetas_eval]))
        err = max(err, float(np.max(np.abs(lhs_vals - rhs_vals))))
        # (5) multiplication operators intertwine with Koopman evolution
        g = qm.random_real_trig_poly(rng, min(8, J // 2), J)
        err = max(
            err,
            float(
                np.max(
                    np.abs(
                        qm.heisenberg(sys_, qm.mult_operator(g), t).mat
                        - qm.mult_operator(sp.koopman(sys_, g, t)).mat
                    )
                )
            ),
        )
        # (6) expectation duality (state vs observable evolution)
        rho = qm.pure_state(f)
        err = max(
            err,
            abs(
                qm.expectation(qm.conj_evolve(sys_, rho, t), A)
                - qm.expectation(rho, qm.heisenberg(sys_, A, t))
            )
            / max(1.0, A.operator_norm()),
        )
    return _result("quantum.equivariance_diagrams", err, 1e-10)


def check_uncertainty_products(cfg):
    sys_, J = cfg.system(), cfg.trunc
    jmax = min(20, J - 4)
    if jmax < 0:
        return _skip("quantum.uncertainty_products", "interior band empty")
    mats = {
        k: qm.observable_from_op(lambda f, kk=k: sp.pos_mom(sys_, f, kk), J)
        for k in ("X_minus", "P_minus", "X_plus", "P_plus")
    }
    err = 0.0
    for j in range(-jmax, jmax + 1):
        rho = qm.pure_state(sp.mode(j, J))
        side = ("X_minus", "P_minus") if j <= 0 else ("X_plus", "P_plus")
        prod = qm.variance(rho, mats[side[0]]) * qm.variance(rho, mats[side[1]])
        err = max(err, abs(prod - (abs(j) + 0.5) ** 2))
    rho0 = qm.pure_state(sp.mode(0, J))
    ground = qm.variance(rho0, mats["X_minus"]) * qm.variance(rho0, mats["P_minus"])
    ground_err = abs(ground - 0.25)
    if ground_err > 1e-10:
        return CheckResult("quantum.uncertainty_products", ground_err, 1e-10, False,
                           info="ground state does not saturate 1/4")
    return _result(
        "quantum.uncertainty_products", err, 1e-8,
        info=f"products match (|j|+1/2)^2 for |j| <= {jmax}; ground state error {ground_err:.2e}",
    )


def check_left_inverse(cfg):
    sys_, J = cfg.system(), cfg.trunc
    rng = np.random.default_rng(cfg.seed + 305)
    p_frac = kn.KernelParams(kn.FRACTIONAL, 0.5)
    p_heat = kn.KernelParams(kn.HEAT, 0.5)
    thetas = TWO_PI * np.arange(64) / 64.0
    times = (0.0, 0.7, 3.1)
    deg = min(8, J // 2)
    worst = 0.0
    worst_bound = float("inf")
    heat_defect = 0.0
    for _ in range(20):
        f = qm.random_real_trig_poly(rng, deg, J)
        Tf = qm.mult_operator(f)
        bound = qm.left_inverse_tail_bound(p_frac, J, f.degree(), qm.sup_norm_estimate(f))
        worst_bound = min(worst_bound, bound)
        for t in times:
            moved = np.array([sys_.flow(x, t) for x in thetas])
            truth = np.real(sp.evaluate(f, moved))
            vals = np.array(
                [
                    qm.expectation_rkhs(p_frac, qm.conj_evolve(sys_, qm.psi_map(p_frac, th, J, "rkhs"), t), Tf)
                    for th in thetas
                ]
            )
            defect = float(np.max(np.abs(vals - truth)))
            if defect > bound:
                return CheckResult(
                    "quantum.left_inverse_fractional", defect, bound, False,
                    info="defect exceeded the analytic tail bound",
                )
            worst = max(worst, defect)
        heat_vals = qm.omega_map(p_heat, Tf, thetas, inner="l2")
        heat_defect = max(heat_defect, float(np.max(np.abs(heat_vals - np.real(sp.evaluate(f, thetas))))))
    passed = heat_defect > worst_bound
    return CheckResult(
        "quantum.left_inverse_fractional",
        worst,
        worst_bound,
        bool(worst <= worst_bound and passed),
        info=(
            f"fractional defect {worst:.3e} <= tail bound; heat-family defect {heat_defect:.3e} "
            "is strictly larger (measured, not inverted)"
        ),
    )


def check_psi_injectivity(cfg):
    J, p = cfg.trunc, cfg.params()
    rng = np.random.default_rng(cfg.seed + 306)
    min_sep = float("inf")
    for _ in range(10):
        th1, th2 = rng.uniform(0.0, TWO_PI, 2)
        if abs(th1 - th2) < 1e-3:
            continue
        min_sep = min(min_sep, qm.trace_distance(qm.psi_map(p, th1, J), qm.psi_map(p, th2, J)))
    if min_sep <= 0.0:
        return CheckResult("quantum.psi_injectivity", 0.0, 0.0, False,
                           info="distinct angles mapped to the same state")
    return CheckResult("quantum.psi_injectivity", 0.0, 0.0, True,
                       info=f"min trace distance over sample {min_sep:.3e}")


# ---------------------------------------------------------------------------
# minkowski suite


def check_hermite_orthonormality(cfg):
    basis = mk.HermiteBasis(abs(cfg.alpha), min(cfg.maxdeg, 40))
    deg = basis.maxdeg
    nodes, weights = np.polynomial.hermite.hermgauss(max(64, deg + 1))
    # chi_j(z) = alpha^{1/4} psi_j(sqrt(alpha) z); substitute u = sqrt(alpha) z
    z = nodes / np.sqrt(basis.alpha)
    table = np.vstack([mk.hermite_eval(basis, j, z) for j in range(deg + 1)])
    # undo the Gauss-Hermite weight e^{-u^2} carried by the product
    gram = np.einsum("i,ji,ki->jk", weights * np.exp(nodes**2) / np.sqrt(basis.alpha), table, table)
    err = float(np.max(np.abs(gram - np.eye(deg + 1))))
    return _result("minkowski.hermite_orthonormality", err, 1e-8,
                   info=f"Gauss-Hermite quadrature up to degree {deg}")


def check_h0_eigen_1d(cfg):
    basis = mk.HermiteBasis(abs(cfg.alpha), 10)
    a = basis.alpha
    e1 = mk.fd_oscillator_1d(basis, 3, 1e-2)
    e2 = mk.fd_oscillator_1d(basis, 3, 1e-3)
    target = 3.5 * a
    err1, err2 = abs(e1 - target), abs(e2 - target)
    ratio = err1 / err2
    ok = err2 <= 1e-5 * max(1.0, a) and 50.0 <= ratio <= 200.0
    return CheckResult(
        "minkowski.h0_eigen_1d", err2, 1e-5 * max(1.0, a), bool(ok),
        info=f"h^2 scaling ratio {ratio:.1f} between h = 1e-2 and 1e-3",
    )


def check_embedding(cfg):
    sys_, J = cfg.system(), cfg.trunc
    maxdeg = max(cfg.maxdeg, J)
    rng = np.random.default_rng(cfg.seed + 401)
    err = 0.0
    for _ in range(20):
        f = _random_series(rng, J)
        st = mk.embed(f, maxdeg)
        err = max(err, abs(st.norm() - f.norm()) / f.norm())
        err = max(err, (mk.adjoint(st, J) - f).norm() / f.norm())
        t = rng.uniform(-10.0, 10.0)
        lhs = mk.evolve(st, t, cfg.alpha)
        rhs = mk.embed(sp.koopman(sys_, f, t), maxdeg)
        diff = max(
            abs(lhs.c00 - rhs.c00),
            float(np.max(np.abs(lhs.a - rhs.a))),
            float(np.max(np.abs(lhs.b - rhs.b))),
        )
        err = max(err, diff)
    for j, k in ((0, 0), (2, 5), (7, 1)):
        if mk.energy(j, k, cfg.alpha) != (k - j) * cfg.alpha:
            return CheckResult("minkowski.embedding", 1.0, 0.0, False, info="energy mismatch")
    return _result("minkowski.embedding", err, 1e-12)


def check_sector_signs(cfg):
    J = cfg.trunc
    maxdeg = max(cfg.maxdeg, J)
    rng = np.random.default_rng(cfg.seed + 402)
    neg = mk.embed(_sector_series(rng, J, -J, -1), maxdeg).energy_expectation(cfg.alpha)
    pos = mk.embed(_sector_series(rng, J, 1, J), maxdeg).energy_expectation(cfg.alpha)
    zero = mk.embed(_sector_series(rng, J, 0, 0), maxdeg).energy_expectation(cfg.alpha)
    sign_alpha = np.sign(cfg.alpha)
    ok = neg * sign_alpha < 0 and pos * sign_alpha > 0 and zero == 0.0
    return CheckResult("minkowski.sector_signs", 0.0 if ok else 1.0, 0.0, bool(ok),
                       info=f"<H> on neg/zero/pos sectors: {neg:.3e}, {zero:.1f}, {pos:.3e}")


def check_fd_eigenvalue_block(cfg):
    alpha = abs(cfg.alpha)
    basis = mk.HermiteBasis(alpha, max(6, cfg.maxdeg))
    extent = cfg.extent / np.sqrt(alpha)
    n = cfg.grid_n
    block = range(7)
    scale = 6.0 * alpha  # spectral radius of the tested block
    errs = {}
    for nn, label in ((n, "h"), (2 * n - 1, "h/2")):
        worst = 0.0
        for j in block:
            for k in block:
                grid = mk.hermite_product_grid(basis, j, k, extent, nn)
                est = mk.rayleigh_quotient(grid, mk.fd_hamiltonian(grid, alpha))
                worst = max(worst, abs(est - mk.energy(j, k, alpha)))
        errs[label] = worst
    rel = errs["h"] / scale
    ratio = errs["h"] / errs["h/2"]
    ok = rel <= 1e-3 and 3.5 <= ratio <= 4.5
    return CheckResult(
        "minkowski.fd_eigenvalue_block", rel, 1e-3, bool(ok),
        info=f"relative to the block spectral radius {scale:g}; h->h/2 error ratio {ratio:.2f}",
    )


def check_synth_tail_stability(cfg):
    p = cfg.params()
    alpha = abs(cfg.alpha)
    m = mk.required_maxdeg(p)
    extent = cfg.extent / np.sqrt(alpha)
    n = min(cfg.grid_n, 129)
    g1 = mk.synth_wavefunction(p, 1.0, mk.HermiteBasis(alpha, m), extent, n)
    g2 = mk.synth_wavefunction(p, 1.0, mk.HermiteBasis(alpha, m + 8), extent, n)
    diff = float(np.max(np.abs(g1.values - g2.values)))
    scale = float(np.max(np.abs(g1.values)))
    # coefficient tail plus the float accumulation floor of the mode sums
    bound = mk.synthesis_tail(p, m) + 64.0 * np.finfo(float).eps * scale
    return _result("minkowski.synth_tail_stability", diff, bound,
                   info=f"maxdeg {m} vs {m + 8}")


def check_synth_symmetries(cfg):
    p = cfg.params()
    alpha = abs(cfg.alpha)
    m = mk.required_maxdeg(p)
    basis = mk.HermiteBasis(alpha, m)
    extent = cfg.extent / np.sqrt(alpha)
    n = min(cfg.grid_n, 129)
    err = 0.0
    g0 = mk.synth_wavefunction(p, 0.0, basis, extent, n)
    err = max(err, float(np.max(np.abs(g0.values.imag))))
    th = 0.75
    ga = mk.synth_wavefunction(p, th, basis, extent, n)
    gb = mk.synth_wavefunction(p, -th, basis, extent, n)
    err = max(err, float(np.max(np.abs(np.conj(ga.values) - gb.values))))
    gc = mk.synth_wavefunction(p, th + TWO_PI, basis, extent, n)
    bit_identical = bool(np.array_equal(ga.values, gc.values))
    if not bit_identical:
        return CheckResult("minkowski.synth_symmetries", 1.0, 0.0, False,
                           info="2 pi periodicity is not bit-identical")
    return _result("minkowski.synth_symmetries", err, 1e-10,
                   info="theta=0 grid real; conjugation and exact periodicity hold")


def check_figure_moments(cfg):
    alpha = abs(cfg.alpha)
    extent = cfg.extent / np.sqrt(alpha)
    n = cfg.grid_n
    tau = 1e-3
    sweep = np.array([0.0, 0.25, 0.5, 0.75, 1.0]) * np.pi
    moments = {}
    centroids = {}
    for family in (kn.HEAT, kn.FRACTIONAL):
        p = kn.KernelParams(family, tau)
        basis = mk.HermiteBasis(alpha, mk.required_maxdeg(p))
        moms = []
        cents = []
        for th in sweep:
            g = mk.synth_wavefunction(p, th, basis, extent, n)
            z = g.axis()
            w = np.abs(g.values) ** 2
            moms.append(float(np.sum((z[:, None] ** 2 + z[None, :] ** 2) * w) / np.sum(w)))
            F = np.abs(np.fft.fftshift(np.fft.fft2(g.values))) ** 2
            k = np.fft.fftshift(np.fft.fftfreq(n))
            K = np.sqrt(k[:, None] ** 2 + k[None, :] ** 2)
            cents.append(float(np.sum(K * F) / np.sum(F)))
        moments[family] = moms
        centroids[family] = cents
    focus_ok = all(int(np.argmin(moments[f])) == 2 for f in moments)
    centroid_ok = all(cf > ch for cf, ch in zip(centroids[kn.FRACTIONAL], centroids[kn.HEAT]))
    ok = focus_ok and centroid_ok
    return CheckResult(
        "minkowski.figure_moments", 0.0 if ok else 1.0, 0.0, bool(ok),
        info=(
            f"second moment min at theta=pi/2: {focus_ok}; fractional spectral centroid "
            f"exceeds heat at all sweep angles: {centroid_ok}"
        ),
    )


ALL_CHECKS = (
    check_generator_eigenvalues,
    check_koopman_unitarity,
    check_koopman_group_law,
    check_shift_relations,
    check_frac_semigroup,
    check_gl_convergence,
    check_ladder_commutators,
    check_generator_number_decomposition,
    check_canonical_commutators,
    check_leibniz,
    check_fractional_closed_form,
    check_heat_methods,
    check_reproducing_property,
    check_feature_invariances,
    check_rkhs_koopman_unitarity,
    check_polar_isometry,
    check_rkha_algebra,
    check_holder_inequality,
    check_rkha_submultiplicativity,
    check_gram_positive,
    check_measure_embedding,
    check_state_invariants,
    check_mult_operator,
    check_expectation_bounds,
    check_equivariance_diagrams,
    check_uncertainty_products,
    check_left_inverse,
    check_psi_injectivity,
    check_hermite_orthonormality,
    check_h0_eigen_1d,
    check_embedding,
    check_sector_signs,
    check_fd_eigenvalue_block,
    check_synth_tail_stability,
    check_synth_symmetries,
    check_figure_moments,
)


def run_all(cfg, inject_failure=False):
    """Run every invariant suite; returns a list of CheckResult records."""
    results = [fn(cfg) for fn in ALL_CHECKS]
    if inject_failure:
        # test hook: corrupt one threshold to exercise the failure exit path
        victim = results[0]
        results[0] = replace(
            victim,
            threshold=-1.0,
            passed=False,
            info=(victim.info + "; " if victim.info else "") + "threshold corrupted by --inject-failure",
        )
    return results
