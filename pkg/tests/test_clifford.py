"""Clifford generators and the SOS-to-representation bridge."""

import random
from fractions import Fraction

import pytest

from hypercert.clifford import (
    CliffordGenerators,
    build_Q,
    clifford_generators,
    sos_to_detrep,
)
from hypercert.detrep import PolyMatrix, poly_det, scalar_polymatrix
from hypercert.polyring import MultiPoly, Ring, parse
from hypercert.scalars import GaussianRational


def _dense_mul(a, b):
    n = len(a)
    return [
        [sum(a[i][k] * b[k][j] for k in range(n)) for j in range(n)]
        for i in range(n)
    ]


class TestGenerators:
    def test_n1_matrix(self):
        g = clifford_generators(1)
        assert g.matrices[0] == ((0, -1), (1, 0))

    def test_entries_in_unit_set(self):
        for n in range(1, 5):
            g = clifford_generators(n)
            for m in g.matrices:
                assert all(v in (-1, 0, 1) for row in m for v in row)
                # exactly one nonzero per column
                for col in range(g.dimension):
                    assert sum(1 for row in m if row[col]) == 1

    def test_invariants_dense_small(self):
        # Redundant dense recheck of the sparse assertions, n <= 4.
        for n in range(1, 5):
            g = clifford_generators(n)
            dim = g.dimension
            ident = [[1 if i == j else 0 for j in range(dim)] for i in range(dim)]
            for a in g.matrices:
                rows = [list(r) for r in a]
                assert [list(r) for r in zip(*rows)] == [[-v for v in r] for r in rows]
                sq = _dense_mul(rows, rows)
                assert sq == [[-v for v in r] for r in ident]
            for i in range(n):
                for j in range(i + 1, n):
                    ab = _dense_mul([list(r) for r in g.matrices[i]], [list(r) for r in g.matrices[j]])
                    ba = _dense_mul([list(r) for r in g.matrices[j]], [list(r) for r in g.matrices[i]])
                    assert all(
                        ab[r][c] + ba[r][c] == 0 for r in range(dim) for c in range(dim)
                    )

    def test_invariants_exhaustive_to_six(self):
        # Construction asserts skewness, A_i^2 = -I and anticommutation
        # exhaustively (sparse form); just drive it for every n <= 6.
        for n in range(1, 7):
            g = clifford_generators(n)
            assert g.dimension == 1 << n

    def test_range_check(self):
        with pytest.raises(ValueError):
            clifford_generators(0)
        with pytest.raises(ValueError):
            clifford_generators(9)


R2 = Ring.standard(("x1", "x2"))
R3 = Ring.standard(("x1", "x2", "x3"))


def random_forms(rng, ring, k, degree):
    out = []
    for _ in range(k):
        items = []
        for _ in range(rng.randrange(1, 4)):
            expo = [0] * ring.arity
            for _ in range(degree):
                expo[rng.randrange(ring.arity)] += 1
            items.append((tuple(expo), Fraction(rng.randrange(-4, 5))))
        p = MultiPoly.from_terms(ring, items)
        if p.is_zero():
            p = MultiPoly.from_terms(
                ring, [(tuple([degree] + [0] * (ring.arity - 1)), Fraction(1))]
            )
        out.append(p)
    return out


class TestBuildQ:
    def test_single_form(self):
        q = build_Q([parse("x1", R2)])
        assert q.size == 4
        sq = q.matmul(q)
        target = parse("x1^2", R2)
        for i in range(4):
            assert sq.rows[i][i] == target

    def test_two_forms(self):
        q = build_Q([parse("2*x1", R2), parse("2*x2", R2)])
        assert q.size == 8
        assert q.kind_violation() is None
        assert q.trace().is_zero()

    def test_quartic_sos_terms(self):
        ring = Ring.standard(("x0", "x1", "x2"))
        forms = [
            parse("x0*x1 + x1^2 - x2^2", ring),
            parse("x0^2 - x1*x2", ring),
            parse("x0*x1 + x0*x2", ring),
        ]
        q = build_Q(forms)
        assert q.size == 16
        # Q^2 = p*I and symmetry are asserted inside build_Q; recheck p here.
        p = MultiPoly.zero(ring)
        for g in forms:
            p = p + g * g
        assert q.matmul(q).rows[0][0] == p

    def test_mixed_degrees_rejected(self):
        with pytest.raises(ValueError):
            build_Q([parse("x1", R2), parse("x1*x2", R2)])

    def test_complex_coefficients_rejected(self):
        gring = Ring.standard(("x1",), gaussian=True)
        with pytest.raises(ValueError):
            build_Q([parse("i*x1", gring)])

    def test_random_lists_invariants(self):
        rng = random.Random(103)
        for _ in range(100):
            k = rng.randrange(1, 5)
            degree = rng.choice((2, 3))
            forms = random_forms(rng, R3, k, degree)
            q = build_Q(forms)  # internal exact assertions do the work
            assert q.size == 1 << (k + 1)
            assert q.kind_violation() is None
            assert q.trace().is_zero()


class TestSosToDetrep:
    def test_single_square(self):
        rep = sos_to_detrep([parse("x1", R2)])
        assert rep.power == 2
        assert rep.matrix.size == 4
        assert rep.report.ok
        # det(yI - Q) = (y^2 - x1^2)^2 via the direct Bareiss oracle
        ring_h = rep.h.ring
        lifted = PolyMatrix(
            ring_h,
            [[p.lift(ring_h) for p in row] for row in rep.matrix.rows],
            rep.matrix.kind,
        )
        y = MultiPoly.variable(ring_h, "y")
        det = poly_det(scalar_polymatrix(y, 4, "none").sub(lifted))
        assert det == rep.h ** 2

    def test_two_squares_det(self):
        rep = sos_to_detrep([parse("2*x1", R2), parse("2*x2", R2)])
        assert rep.power == 4
        ring_h = rep.h.ring
        lifted = PolyMatrix(
            ring_h,
            [[p.lift(ring_h) for p in row] for row in rep.matrix.rows],
            rep.matrix.kind,
        )
        y = MultiPoly.variable(ring_h, "y")
        det = poly_det(scalar_polymatrix(y, 8, "none").sub(lifted))
        assert det == rep.h ** 4
        assert rep.h == parse("y^2 - 4*x1^2 - 4*x2^2", ring_h)

    def test_quartic_terms_shortcut_with_specialized_oracle(self):
        # 16x16: certify via the minimal-polynomial shortcut, then
        # cross-check the Bareiss determinant at random rational x-points
        # (exact univariate determinants in y).
        ring = Ring.standard(("x0", "x1", "x2"))
        forms = [
            parse("x0*x1 + x1^2 - x2^2", ring),
            parse("x0^2 - x1*x2", ring),
            parse("x0*x1 + x0*x2", ring),
        ]
        rep = sos_to_detrep(forms, method="shortcut")
        assert rep.power == 8
        assert rep.report.notes.get("method") == "minimal-polynomial-shortcut"
        p = MultiPoly.zero(ring)
        for g in forms:
            p = p + g * g
        rng = random.Random(107)
        ring_y = Ring(("y",), (1,))
        for _ in range(5):
            point = [Fraction(rng.randrange(-4, 5)) for _ in range(3)]
            rows = []
            for row in rep.matrix.rows:
                rows.append(
                    [
                        MultiPoly.constant(ring_y, entry.eval_rational(point))
                        for entry in row
                    ]
                )
            y = MultiPoly.variable(ring_y, "y")
            char = scalar_polymatrix(y, 16, "none").sub(PolyMatrix(ring_y, rows, "none"))
            det = poly_det(char)
            target = (y * y - MultiPoly.constant(ring_y, p.eval_rational(point))) ** 8
            assert det == target

    def test_roundtrip_sum_identity(self):
        from hypercert.detrep import detrep_to_sos

        rng = random.Random(109)
        for _ in range(20):
            k = rng.randrange(1, 4)
            forms = random_forms(rng, R2, k, 2)
            q = build_Q(forms)
            p = MultiPoly.zero(R2)
            for g in forms:
                p = p + g * g
            sos = detrep_to_sos(q, p, column=rng.randrange(q.size))
            total = MultiPoly.zero(R2)
            for g in sos.squares:
                total = total + g * g
            assert total == p
