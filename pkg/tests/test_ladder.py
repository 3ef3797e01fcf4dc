"""Fractional ladder operators against a brute-force tensor-basis oracle.

The oracle builds the two-oscillator ladder matrices on the full tensor
basis psi_{jk}, the embedding matrix column by column, and forms the
compressions U* A U by plain matrix algebra.  The spectral-core ladder
operators must agree with this composition exactly.
"""

import numpy as np
import pytest

from circleq.spectral import (
    FourierSeries,
    RotationSystem,
    generator,
    ladder,
    mode,
    number_op,
    op_matrix,
    pos_mom,
)

SYS = RotationSystem(1.0)
J = 6
DIM = 2 * J + 1


def tensor_index(j, k, width):
    return j * width + k


def tensor_ladder_matrices(width):
    """A_0, A_0^+, A_1, A_1^+ on the psi_{jk} tensor basis (j, k < width)."""
    size = width * width
    a0 = np.zeros((size, size))
    a1 = np.zeros((size, size))
    for j in range(width):
        for k in range(width):
            col = tensor_index(j, k, width)
            if j > 0:
                a0[tensor_index(j - 1, k, width), col] = np.sqrt(j)
            if k > 0:
                a1[tensor_index(j, k - 1, width), col] = np.sqrt(k)
    return a0, a0.T, a1, a1.T


def embedding_matrix(J, width):
    """U: phi_0 -> psi_00, phi_{j<0} -> psi_{-j,0}, phi_{j>0} -> psi_{0,j}."""
    u = np.zeros((width * width, 2 * J + 1))
    for col, j in enumerate(range(-J, J + 1)):
        if j == 0:
            u[tensor_index(0, 0, width), col] = 1.0
        elif j < 0:
            u[tensor_index(-j, 0, width), col] = 1.0
        else:
            u[tensor_index(0, j, width), col] = 1.0
    return u


@pytest.fixture(scope="module")
def oracle_mats():
    width = J + 2
    a0, a0p, a1, a1p = tensor_ladder_matrices(width)
    u = embedding_matrix(J, width)
    pull = lambda m: u.T @ m @ u
    return {
        "A_minus": pull(a0),
        "A_minus_plus": pull(a0p),
        "A_plus": pull(a1),
        "A_plus_plus": pull(a1p),
        "N_minus": pull(a0p @ a0),
        "N_plus": pull(a1p @ a1),
    }


@pytest.fixture(scope="module")
def ladder_mats():
    mats = {
        which: op_matrix(lambda f, w=which: ladder(SYS, f, w), J)
        for which in ("A_minus", "A_minus_plus", "A_plus", "A_plus_plus")
    }
    mats["N_minus"] = op_matrix(lambda f: number_op(SYS, f, "minus"), J)
    mats["N_plus"] = op_matrix(lambda f: number_op(SYS, f, "plus"), J)
    return mats


def test_ladder_matches_tensor_oracle(oracle_mats, ladder_mats):
    for name, target in oracle_mats.items():
        got = ladder_mats[name]
        assert np.max(np.abs(got - target)) < 1e-13, name


def test_published_examples():
    assert (ladder(SYS, mode(-1, J), "A_minus") - mode(0, J)).norm() < 1e-14
    assert ladder(SYS, mode(2, J), "A_minus").norm() == 0.0
    out = ladder(SYS, mode(3, J), "A_plus_plus")
    assert out.coeff(4) == pytest.approx(2.0, abs=1e-14)


def test_amplitudes_real_nonnegative():
    for j in range(-J, J + 1):
        for which, target_mode, amp in (
            ("A_minus", j + 1, np.sqrt(max(0, -j)) if j <= 0 else 0.0),
            ("A_plus", j - 1, np.sqrt(j) if j >= 1 else 0.0),
        ):
            if abs(target_mode) > J:
                continue
            out = ladder(SYS, mode(j, J), which)
            assert out.coeff(target_mode) == pytest.approx(amp, abs=1e-14)


def test_number_operator_values():
    assert number_op(SYS, mode(-4, J), "minus").coeff(-4) == pytest.approx(4.0)
    assert number_op(SYS, mode(-4, J), "plus").norm() == 0.0
    assert number_op(SYS, mode(3, J), "plus").coeff(3) == pytest.approx(3.0)


def test_generator_number_decomposition():
    rng = np.random.default_rng(7)
    f = FourierSeries(rng.standard_normal(DIM) + 1j * rng.standard_normal(DIM))
    lhs = 1j * SYS.alpha * (-1.0 * number_op(SYS, f, "minus") + number_op(SYS, f, "plus"))
    assert (lhs - generator(SYS, f)).norm() < 1e-13


class TestCommutators:
    """The §-list identities on their exact domains, seam included.

    [A_-, A_+^+] and [A_+, A_-^+] vanish away from the compression seam
    and carry an exact rank-one defect on it, because the intermediate
    tensor state psi_{11} falls outside the embedded subspace.
    """

    def comm(self, mats, a, b):
        return mats[a] @ mats[b] - mats[b] @ mats[a]

    def test_number_ladder_relations(self, ladder_mats):
        band = slice(2, DIM - 2)
        c = self.comm(ladder_mats, "N_minus", "A_minus")
        assert np.max(np.abs((c + ladder_mats["A_minus"])[:, band])) < 1e-13
        c = self.comm(ladder_mats, "N_minus", "A_minus_plus")
        assert np.max(np.abs((c - ladder_mats["A_minus_plus"])[:, band])) < 1e-13
        c = self.comm(ladder_mats, "N_plus", "A_plus")
        assert np.max(np.abs((c + ladder_mats["A_plus"])[:, band])) < 1e-13
        c = self.comm(ladder_mats, "N_plus", "A_plus_plus")
        assert np.max(np.abs((c - ladder_mats["A_plus_plus"])[:, band])) < 1e-13

    def test_vanishing_cross_relations(self, ladder_mats):
        assert np.max(np.abs(self.comm(ladder_mats, "A_minus", "A_plus"))) == 0.0
        assert np.max(np.abs(self.comm(ladder_mats, "A_minus_plus", "A_plus_plus"))) == 0.0
        assert np.max(np.abs(self.comm(ladder_mats, "N_minus", "N_plus"))) == 0.0

    def test_seam_defect_is_exact(self, ladder_mats):
        c1 = self.comm(ladder_mats, "A_minus", "A_plus_plus")
        expected = np.zeros((DIM, DIM), dtype=complex)
        expected[J + 1, J - 1] = -1.0  # e_{-1} -> -e_{+1}
        assert np.max(np.abs(c1 - expected)) < 1e-13
        c2 = self.comm(ladder_mats, "A_plus", "A_minus_plus")
        expected = np.zeros((DIM, DIM), dtype=complex)
        expected[J - 1, J + 1] = -1.0  # e_{+1} -> -e_{-1}
        assert np.max(np.abs(c2 - expected)) < 1e-13


class TestPositionMomentum:
    def test_x_minus_ground(self):
        out = pos_mom(SYS, mode(0, J), "X_minus")
        assert out.coeff(-1) == pytest.approx(1.0 / np.sqrt(2 * SYS.alpha), abs=1e-14)
        assert (out - (1.0 / np.sqrt(2 * SYS.alpha)) * mode(-1, J)).norm() < 1e-14

    def test_p_plus_ground(self):
        out = pos_mom(SYS, mode(0, J), "P_plus")
        assert out.coeff(1) == pytest.approx(1j * np.sqrt(SYS.alpha / 2.0), abs=1e-14)

    def test_hermitian_matrices(self):
        for which in ("X_minus", "P_minus", "X_plus", "P_plus"):
            m = op_matrix(lambda f, w=which: pos_mom(SYS, f, w), J)
            assert np.max(np.abs(m - m.conj().T)) < 1e-14

    def test_canonical_commutator_sector(self):
        """[X_-, P_-] = i Id on the nonpositive sector (interior band).

        The factor i is the canonical commutation constant for the
        operators as defined; the identity-without-i form printed in the
        source theorem fails by |i - 1| and is not asserted.
        """
        xm = op_matrix(lambda f: pos_mom(SYS, f, "X_minus"), J)
        pm = op_matrix(lambda f: pos_mom(SYS, f, "P_minus"), J)
        c = xm @ pm - pm @ xm
        for k in range(0, J - 1):
            col = c[:, J - k]  # input phi_{-k}
            target = np.zeros(DIM, dtype=complex)
            target[J - k] = 1j
            assert np.max(np.abs(col - target)) < 1e-13
        # and it is zero on the strictly positive interior sector
        for k in range(1, J - 1):
            assert np.max(np.abs(c[:, J + k])) < 1e-13

    def test_cross_commutator_off_seam(self):
        xm = op_matrix(lambda f: pos_mom(SYS, f, "X_minus"), J)
        pp = op_matrix(lambda f: pos_mom(SYS, f, "P_plus"), J)
        c = xm @ pp - pp @ xm
        cols = [j + J for j in range(-(J - 2), J - 1) if abs(j) != 1]
        assert np.max(np.abs(c[:, cols])) < 1e-13
        # the seam columns carry the exact compression residue
        assert c[J + 1, J - 1] == pytest.approx(-0.5j, abs=1e-14)
        assert c[J - 1, J + 1] == pytest.approx(-0.5j, abs=1e-14)
