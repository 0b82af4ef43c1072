import numpy as np
import pytest

from mdrkit.construct import Size2Data, construct_size2, pencil_of
from mdrkit.equivalence import (
    SIGMA_X,
    SIGMA_Y,
    SIGMA_Z,
    ClassLabel,
    EquivalenceKind,
    are_equivalent,
    class_label,
    connecting_orthogonal,
    orthogonal2_conjugator,
    recover_factor,
    so3_from_su2,
    su2_from_so3,
    su2_matrix,
)
from mdrkit.errors import (
    GramMismatch,
    NotOrthogonal,
    NotRotation,
    NotUnitNorm,
    VerificationMismatch,
)

from conftest import (
    item1_published_pencil,
    item3_published_pencil,
    item3_swapped_pencil,
    polynomial_of_size2,
    random_size2_data,
)


def _pencil_from_rows(rows: np.ndarray, b: np.ndarray) -> Size2Data:
    return Size2Data(r=b / 2 + rows[0], s=b / 2 - rows[0], t=rows[1], u=rows[2])


def _random_rotation(rng) -> np.ndarray:
    q = rng.normal(size=4)
    q /= np.linalg.norm(q)
    return so3_from_su2(*q)


class TestRecoverFactor:
    def test_dense_rank2_published(self):
        fd = recover_factor(item1_published_pencil())
        np.testing.assert_allclose(fd.b, np.zeros(3), atol=1e-15)
        np.testing.assert_allclose(fd.rows[0], [11 / 5, 0.0, 4 / 5])
        np.testing.assert_allclose(fd.rows[1], [2 / 5, 10.0, 3 / 5])
        np.testing.assert_array_equal(fd.rows[2], np.zeros(3))
        assert fd.effective_rank == 2

    def test_shifted_hyperbolic_published(self):
        fd = recover_factor(item3_published_pencil())
        np.testing.assert_allclose(fd.b, [2.0, 0, 0, 0], atol=1e-15)
        np.testing.assert_array_equal(fd.rows, [[0, 0, 0, 1.0],
                                                [0, 0, 1.0, 0],
                                                [0, 1.0, 0, 0]])
        assert fd.effective_rank == 3

    def test_zero_pencil(self):
        d = Size2Data(r=np.zeros(2), s=np.zeros(2), t=np.zeros(2), u=np.zeros(2))
        fd = recover_factor(d)
        np.testing.assert_array_equal(fd.b, np.zeros(2))
        np.testing.assert_array_equal(fd.rows, np.zeros((3, 2)))
        assert fd.effective_rank == 0


class TestConnectingOrthogonal:
    def test_identical_factors(self):
        rng = np.random.default_rng(101)
        r1 = rng.normal(size=(3, 5))
        o = connecting_orthogonal(r1, r1)
        np.testing.assert_allclose(o, np.eye(3), atol=1e-10)

    def test_row_swap_is_reflection(self):
        r1 = np.array([[0, 0, 0, 1.0], [0, 0, 1.0, 0], [0, 1.0, 0, 0]])
        r2 = r1[[0, 2, 1]]
        o = connecting_orthogonal(r1, r2)
        np.testing.assert_allclose(o, [[1, 0, 0], [0, 0, 1], [0, 1, 0]],
                                   atol=1e-10)
        assert np.linalg.det(o) == pytest.approx(-1.0)

    def test_recovers_known_rotation(self):
        rng = np.random.default_rng(103)
        r1 = rng.normal(size=(3, 6))
        half = np.pi / 4
        rot = np.array([[np.cos(2 * half), -np.sin(2 * half), 0],
                        [np.sin(2 * half), np.cos(2 * half), 0],
                        [0, 0, 1.0]])
        o = connecting_orthogonal(r1, rot @ r1)
        np.testing.assert_allclose(o, rot, atol=1e-10)
        assert np.linalg.det(o) == pytest.approx(1.0)

    def test_gram_mismatch_raises(self):
        rng = np.random.default_rng(107)
        r1 = rng.normal(size=(3, 4))
        with pytest.raises(GramMismatch):
            connecting_orthogonal(r1, 2.0 * r1)

    def test_rank_deficient_prefers_rotation(self):
        rng = np.random.default_rng(109)
        r1 = np.vstack([rng.normal(size=(2, 5)), np.zeros(5)])
        reflect = np.diag([1.0, -1.0, 1.0])
        # target differs by a reflection acting inside the row space only
        # when the third row is free the completion must restore det +1
        o = connecting_orthogonal(r1, r1)
        assert np.linalg.det(o) == pytest.approx(1.0)
        o2 = connecting_orthogonal(r1, (reflect @ r1))
        assert o2 is not None and np.linalg.det(o2) == pytest.approx(1.0)


class TestSu2So3:
    def test_identity(self):
        np.testing.assert_array_equal(so3_from_su2(1.0, 0.0, 0.0, 0.0), np.eye(3))
        assert su2_from_so3(np.eye(3)) == (1.0, 0.0, 0.0, 0.0)

    def test_half_angle_rotation(self):
        theta = 0.77
        o = so3_from_su2(np.cos(theta / 2), -np.sin(theta / 2), 0.0, 0.0)
        expected = np.array([[1, 0, 0],
                             [0, np.cos(theta), np.sin(theta)],
                             [0, -np.sin(theta), np.cos(theta)]])
        np.testing.assert_allclose(o, expected, atol=1e-12)

    def test_rotation_suite(self):
        rng = np.random.default_rng(113)
        for _ in range(500):
            q = rng.normal(size=4)
            q /= np.linalg.norm(q)
            o = so3_from_su2(*q)
            assert np.max(np.abs(o.T @ o - np.eye(3))) <= 1e-12
            assert abs(np.linalg.det(o) - 1.0) <= 1e-12
            back = np.array(su2_from_so3(o))
            direct = np.max(np.abs(back - q))
            flipped = np.max(np.abs(back + q))
            assert min(direct, flipped) <= 1e-7

    def test_conjugation_identity(self):
        rng = np.random.default_rng(127)
        for _ in range(100):
            q = rng.normal(size=4)
            q /= np.linalg.norm(q)
            u = su2_matrix(*q)
            o = so3_from_su2(*q)
            k, l, m = rng.normal(size=3)
            h = k * SIGMA_Z + l * SIGMA_X + m * SIGMA_Y
            k1, l1, m1 = o @ np.array([k, l, m])
            h1 = k1 * SIGMA_Z + l1 * SIGMA_X + m1 * SIGMA_Y
            np.testing.assert_allclose(u.conj().T @ h @ u, h1, atol=1e-10)

    def test_reflection_rejected(self):
        swap = np.array([[1.0, 0, 0], [0, 0, 1.0], [0, 1.0, 0]])
        with pytest.raises(NotRotation):
            su2_from_so3(swap)

    def test_norm_violation_rejected(self):
        with pytest.raises(NotUnitNorm):
            so3_from_su2(1.0, 1.0, 0.0, 0.0)

    def test_non_orthogonal_rejected(self):
        with pytest.raises(NotRotation):
            su2_from_so3(np.full((3, 3), 0.5))


class TestAreEquivalent:
    def test_self_equivalence(self):
        d = item1_published_pencil()
        verdict = are_equivalent(d, d)
        assert verdict.kind is EquivalenceKind.EQUIVALENT
        np.testing.assert_allclose(verdict.witness_u, np.eye(2), atol=1e-8)

    def test_published_imaginary_twist(self):
        # the i-twisted variant of the dense rank-2 pencil is reached by
        # U = diag((1-i)/sqrt(2), (1+i)/sqrt(2))
        base = item1_published_pencil()
        twisted = Size2Data(r=base.r, s=base.s, t=np.zeros(3), u=-base.t)
        verdict = are_equivalent(base, twisted)
        assert verdict.kind is EquivalenceKind.EQUIVALENT
        expected_u = np.array([[(1 - 1j) / np.sqrt(2), 0],
                               [0, (1 + 1j) / np.sqrt(2)]])
        got = verdict.witness_u
        ratio = got[0, 0] / expected_u[0, 0]
        np.testing.assert_allclose(got, ratio * expected_u, atol=1e-10)
        assert abs(abs(ratio) - 1.0) <= 1e-10

    def test_two_classes_of_shifted_hyperbolic(self):
        verdict = are_equivalent(item3_published_pencil(), item3_swapped_pencil())
        assert verdict.kind is EquivalenceKind.NOT_EQUIVALENT
        assert verdict.connecting_det == pytest.approx(-1.0)

    def test_different_polynomial(self):
        rng = np.random.default_rng(131)
        d1 = random_size2_data(rng, 3)
        d2 = random_size2_data(rng, 3)
        assert are_equivalent(d1, d2).kind is EquivalenceKind.DIFFERENT_POLYNOMIAL

    def test_rank_le2_always_equivalent(self):
        rng = np.random.default_rng(137)
        for _ in range(25):
            n = int(rng.integers(1, 6))
            rows = np.vstack([rng.normal(size=(2, n)), np.zeros(n)])
            b = rng.normal(size=n)
            o = _random_rotation(rng)
            if rng.integers(2):
                o = o @ np.diag([1.0, -1.0, 1.0]) @ o.T  # arbitrary reflection
                o = _random_rotation(rng) @ o
            verdict = are_equivalent(_pencil_from_rows(rows, b),
                                     _pencil_from_rows(o @ rows, b))
            assert verdict.kind is EquivalenceKind.EQUIVALENT

    def test_rank3_split_by_determinant(self):
        rng = np.random.default_rng(139)
        for _ in range(25):
            n = int(rng.integers(3, 7))
            rows = rng.normal(size=(3, n))
            b = rng.normal(size=n)
            o = _random_rotation(rng)
            flip = bool(rng.integers(2))
            if flip:
                o = o @ np.diag([1.0, 1.0, -1.0])
            verdict = are_equivalent(_pencil_from_rows(rows, b),
                                     _pencil_from_rows(o @ rows, b))
            expected = (EquivalenceKind.NOT_EQUIVALENT if flip
                        else EquivalenceKind.EQUIVALENT)
            assert verdict.kind is expected


class TestClassLabel:
    def test_rank3_labels_split(self, item3):
        ours = construct_size2(item3)
        labels = {class_label(p, item3).value
                  for p in (ours, item3_published_pencil(), item3_swapped_pencil())}
        assert labels == {"Plus", "Minus"}
        assert class_label(item3_published_pencil(), item3) \
            is not class_label(item3_swapped_pencil(), item3)

    def test_rank2_unique(self, item1):
        assert class_label(construct_size2(item1), item1) is ClassLabel.UNIQUE
        assert class_label(item1_published_pencil(), item1) is ClassLabel.UNIQUE

    def test_diagonal_unique(self):
        from mdrkit.quadform import parse_polynomial
        f = parse_polynomial("1 - x1^2")
        d = Size2Data(r=np.array([1.0]), s=np.array([-1.0]),
                      t=np.zeros(1), u=np.zeros(1))
        assert class_label(d, f) is ClassLabel.UNIQUE

    def test_labels_match_iff_equivalent(self, item3):
        pencils = [construct_size2(item3), item3_published_pencil(),
                   item3_swapped_pencil()]
        for p1 in pencils:
            for p2 in pencils:
                same = class_label(p1, item3) is class_label(p2, item3)
                verdict = are_equivalent(p1, p2)
                assert same == (verdict.kind is EquivalenceKind.EQUIVALENT)

    def test_wrong_polynomial_rejected(self, item1, item3):
        with pytest.raises(VerificationMismatch):
            class_label(construct_size2(item1),
                        polynomial_of_size2(random_size2_data(
                            np.random.default_rng(3), 3)))


class TestOrthogonal2Conjugator:
    def test_identity(self):
        np.testing.assert_allclose(orthogonal2_conjugator(np.eye(2)), np.eye(2),
                                   atol=1e-15)

    def test_half_turn(self):
        o = np.array([[-1.0, 0.0], [0.0, -1.0]])
        v = orthogonal2_conjugator(o)
        np.testing.assert_allclose(v, [[0.0, -1.0], [1.0, 0.0]], atol=1e-12)
        sz = np.array([[1.0, 0], [0, -1.0]])
        sx = np.array([[0, 1.0], [1.0, 0]])
        np.testing.assert_allclose(v.T @ sz @ v, -sz, atol=1e-12)
        np.testing.assert_allclose(v.T @ sx @ v, -sx, atol=1e-12)

    def test_reflection_at_zero_angle(self):
        o = np.array([[-1.0, 0.0], [0.0, 1.0]])
        v = orthogonal2_conjugator(o)
        np.testing.assert_allclose(v, [[0.0, 1.0], [1.0, 0.0]], atol=1e-12)

    def test_realizes_action_on_coordinates(self):
        rng = np.random.default_rng(149)
        sz = np.array([[1.0, 0], [0, -1.0]])
        sx = np.array([[0, 1.0], [1.0, 0]])
        for _ in range(50):
            theta = rng.uniform(-np.pi, np.pi)
            if rng.integers(2):
                o = np.array([[np.cos(theta), np.sin(theta)],
                              [-np.sin(theta), np.cos(theta)]])
            else:
                o = np.array([[-np.cos(theta), -np.sin(theta)],
                              [-np.sin(theta), np.cos(theta)]])
            v = orthogonal2_conjugator(o)
            np.testing.assert_allclose(v.T @ v, np.eye(2), atol=1e-12)
            k, l = rng.normal(size=2)
            k1, l1 = o @ np.array([k, l])
            np.testing.assert_allclose(v.T @ (k * sz + l * sx) @ v,
                                       k1 * sz + l1 * sx, atol=1e-10)

    def test_non_orthogonal_rejected(self):
        with pytest.raises(NotOrthogonal):
            orthogonal2_conjugator(np.array([[1.0, 1.0], [0.0, 1.0]]))
