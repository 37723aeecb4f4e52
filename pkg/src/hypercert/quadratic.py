"""End-to-end constructive pipeline for quadratic hyperbolic polynomials.

Given a quadratic form h with h(e) > 0, a rational change of coordinates T
with T(e) = u_0 puts h into the normal form alpha*u_0^2 + u_0*q1 + q2.
Completing the square exposes the branch form p = q1^2 - 4*alpha*q2 with

    4*alpha*(h o T^-1) = (2*alpha*u_0 + q1)^2 - p.

If h is hyperbolic the branch p is positive semidefinite; a rational
congruence diagonalization plus four-square decompositions writes it as a
sum of squares of linear forms, and the Clifford bridge turns that into a
symmetric pencil M = (2*alpha*u_0 + q1)*I - Q with

    det M = (4*alpha)^(2^k) * h^(2^k),

positive definite at e.  If p is indefinite the pipeline stops with an
exact witness vector (and the line on which hyperbolicity fails).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .clifford import build_Q
from .detrep import (
    DetRepReport,
    PolyMatrix,
    polymatrix_to_pencil,
    scalar_polymatrix,
    verify_pencil,
)
from .polyring import MultiPoly, Ring
from .scalars import (
    KIND_SYMMETRIC,
    ConstMatrix,
    GaussianRational,
    RationalLike,
    as_fraction,
    four_square_decompose,
)


class IndefiniteFormError(ValueError):
    """The quadratic form is not PSD; ``witness`` evaluates to a negative value."""

    def __init__(self, witness: tuple[Fraction, ...], value: Fraction):
        super().__init__(f"form is negative at {tuple(map(str, witness))}: value {value}")
        self.witness = witness
        self.value = value


class PipelineError(ValueError):
    """A pipeline stage failed; carries the stage name and any witnesses."""

    def __init__(
        self,
        stage: str,
        message: str,
        witness_vector: Optional[tuple[Fraction, ...]] = None,
        witness_line: Optional[tuple[Fraction, ...]] = None,
    ):
        super().__init__(f"stage {stage!r}: {message}")
        self.stage = stage
        self.witness_vector = witness_vector
        self.witness_line = witness_line


@dataclass(frozen=True)
class QuadraticNormalForm:
    """h o T^-1 = alpha*u0^2 + u0*q1 + q2 with T(e) = u0 and alpha = |h(e)|.

    ``flipped`` records that h was replaced by -h to make alpha positive.
    The defining identity 4*alpha*(h o T^-1) = (2*alpha*u0 + q1)^2 - branch
    is asserted exactly at construction time.
    """

    ring_prime: Ring
    transform: tuple[tuple[Fraction, ...], ...]  # T, maps e to the first unit vector
    inverse: tuple[tuple[Fraction, ...], ...]  # T^-1 (columns: e, then unit vectors)
    alpha: Fraction
    q1: MultiPoly
    q2: MultiPoly
    branch: MultiPoly
    flipped: bool


def _identity_rows(n: int) -> list[list[Fraction]]:
    return [[Fraction(1 if i == j else 0) for j in range(n)] for i in range(n)]


def _mat_mul(a: Sequence[Sequence[Fraction]], b: Sequence[Sequence[Fraction]]) -> list[list[Fraction]]:
    n = len(a)
    return [
        [sum((a[i][k] * b[k][j] for k in range(n)), Fraction(0)) for j in range(n)]
        for i in range(n)
    ]


def _mat_inverse(mat: Sequence[Sequence[Fraction]]) -> list[list[Fraction]]:
    n = len(mat)
    work = [list(row) + ident for row, ident in zip(mat, _identity_rows(n))]
    for col in range(n):
        pivot = next((r for r in range(col, n) if work[r][col]), None)
        if pivot is None:
            raise ValueError("matrix is singular")
        work[col], work[pivot] = work[pivot], work[col]
        inv = 1 / work[col][col]
        work[col] = [v * inv for v in work[col]]
        for r in range(n):
            if r != col and work[r][col]:
                factor = work[r][col]
                work[r] = [v - factor * w for v, w in zip(work[r], work[col])]
    return [row[n:] for row in work]


def normalize_at_direction(h: MultiPoly, e: Sequence[RationalLike]) -> QuadraticNormalForm:
    """Deterministic completion of the square at direction e.

    T^-1 has columns e followed by the unit vectors, skipping the first
    coordinate where e is nonzero (so T^-1 is invertible and T(e) = u0).
    """
    ring = h.ring
    if any(w != 1 for w in ring.weights):
        raise ValueError("quadratic pipeline needs an unweighted ring")
    if not h.is_real():
        raise ValueError("h must have real coefficients")
    if h.is_zero() or not h.is_weighted_homogeneous() or h.weighted_degree() != 2:
        raise ValueError("h must be a nonzero homogeneous quadratic")
    point = [as_fraction(c) for c in e]
    if len(point) != ring.arity:
        raise ValueError("direction arity mismatch")
    value = h.eval_rational(point)
    if not value:
        raise ValueError("h(e) = 0: the direction must be off the hypersurface")
    flipped = value < 0
    hw = -h if flipped else h
    alpha = abs(value)

    n = ring.arity
    pivot = next(k for k in range(n) if point[k])
    basis_cols = [point] + [
        [Fraction(1 if r == j else 0) for r in range(n)] for j in range(n) if j != pivot
    ]
    # inverse[r][c]: column c of T^-1 is basis_cols[c].
    inverse = [[basis_cols[c][r] for c in range(n)] for r in range(n)]
    transform = _mat_inverse(inverse)

    ring_prime = Ring.standard(tuple(f"u{k}" for k in range(n)))
    # x_r = sum_j inverse[r][j] * u_j
    images = [
        MultiPoly.from_terms(
            ring_prime,
            [
                (tuple(1 if t == j else 0 for t in range(n)), inverse[r][j])
                for j in range(n)
                if inverse[r][j]
            ],
        )
        for r in range(n)
    ]
    hp = hw.substitute(images)

    zero = MultiPoly.zero(ring_prime)
    alpha_term = zero
    q1 = zero
    q2 = zero
    for expo, coeff in hp.terms.items():
        mono = MultiPoly(ring_prime, {expo: coeff})
        if expo[0] == 2:
            alpha_term = alpha_term + mono
        elif expo[0] == 1:
            q1 = q1 + mono
        else:
            q2 = q2 + mono
    if alpha_term != MultiPoly.from_terms(
        ring_prime, [((2,) + (0,) * (n - 1), alpha)]
    ):
        raise AssertionError("internal error: u0^2 coefficient must be h(e)")
    u0 = MultiPoly.variable(ring_prime, "u0")
    q1 = q1.divide_exact(u0)

    branch = q1 * q1 - q2.scale(4 * alpha)
    ell = u0.scale(2 * alpha) + q1
    if hp.scale(4 * alpha) != ell * ell - branch:
        raise AssertionError("internal error: completion-of-the-square identity failed")
    return QuadraticNormalForm(
        ring_prime=ring_prime,
        transform=tuple(tuple(row) for row in transform),
        inverse=tuple(tuple(row) for row in inverse),
        alpha=alpha,
        q1=q1,
        q2=q2,
        branch=branch,
        flipped=flipped,
    )


# ---------------------------------------------------------------------------
# Rational SOS for quadratic forms
# ---------------------------------------------------------------------------


def _gram_matrix(p: MultiPoly) -> list[list[Fraction]]:
    n = p.ring.arity
    gram = [[Fraction(0)] * n for _ in range(n)]
    for expo, coeff in p.terms.items():
        if coeff.im:
            raise ValueError("quadratic form must be real")
        support = [k for k, v in enumerate(expo) if v]
        if sum(expo) != 2:
            raise ValueError("not a quadratic form")
        if len(support) == 1:
            k = support[0]
            gram[k][k] += coeff.re
        else:
            k, l = support
            gram[k][l] += coeff.re / 2
            gram[l][k] += coeff.re / 2
    return gram


def diagonalize_quadratic_form(p: MultiPoly) -> list[tuple[Fraction, tuple[Fraction, ...]]]:
    """p = sum c_j * l_j(x)^2 by symmetric (congruence) elimination.

    Pivoting is deterministic: the first nonzero diagonal entry; if the
    diagonal is all zero but the form is not, the first off-diagonal pair
    (i, j) is split by x_i = u + v, x_j = u - v and elimination resumes.
    """
    if p.is_zero():
        return []
    if not p.is_weighted_homogeneous() or p.weighted_degree() != 2:
        raise ValueError("input must be a homogeneous quadratic form")
    n = p.ring.arity
    gram = _gram_matrix(p)
    # x = U z for the accumulated splits; emitted rows live in z coordinates.
    basis = _identity_rows(n)
    emitted: list[tuple[Fraction, list[Fraction]]] = []
    while True:
        k = next((i for i in range(n) if gram[i][i]), None)
        if k is not None:
            a = gram[k][k]
            row = [gram[k][j] / a for j in range(n)]
            emitted.append((a, row))
            for i in range(n):
                if row[i]:
                    for j in range(n):
                        gram[i][j] -= a * row[i] * row[j]
            continue
        pair = next(
            ((i, j) for i in range(n) for j in range(i + 1, n) if gram[i][j]), None
        )
        if pair is None:
            break
        i, j = pair
        split = _identity_rows(n)
        split[i][i], split[i][j] = Fraction(1), Fraction(1)
        split[j][i], split[j][j] = Fraction(1), Fraction(-1)
        # gram <- E^T gram E; old z = E * new z.
        gram = _mat_mul([list(r) for r in zip(*split)], _mat_mul(gram, split))
        basis = _mat_mul(basis, split)
        emitted = [
            (c, [sum(row[t] * split[t][s] for t in range(n)) for s in range(n)])
            for c, row in emitted
        ]
    # Convert rows from final z coordinates back to x: z = basis^-1 x.
    basis_inv = _mat_inverse(basis)
    out = []
    for c, row in emitted:
        coeffs = [
            sum(row[t] * basis_inv[t][s] for t in range(n)) for s in range(n)
        ]
        out.append((c, tuple(coeffs)))
    return out


def _row_to_form(ring: Ring, coeffs: Sequence[Fraction]) -> MultiPoly:
    return MultiPoly.from_terms(
        ring,
        [
            (tuple(1 if t == k else 0 for t in range(ring.arity)), c)
            for k, c in enumerate(coeffs)
            if c
        ],
    )


def _solve_unit_preimage(
    rows: list[tuple[Fraction, tuple[Fraction, ...]]], target_index: int, n: int
) -> tuple[Fraction, ...]:
    """Vector v with l_target(v) = 1 and l_other(v) = 0 (free variables 0)."""
    m = len(rows)
    aug = [list(rows[r][1]) + [Fraction(1 if r == target_index else 0)] for r in range(m)]
    pivots: list[tuple[int, int]] = []
    row = 0
    for col in range(n):
        pivot = next((r for r in range(row, m) if aug[r][col]), None)
        if pivot is None:
            continue
        aug[row], aug[pivot] = aug[pivot], aug[row]
        inv = 1 / aug[row][col]
        aug[row] = [v * inv for v in aug[row]]
        for r in range(m):
            if r != row and aug[r][col]:
                factor = aug[r][col]
                aug[r] = [v - factor * w for v, w in zip(aug[r], aug[row])]
        pivots.append((row, col))
        row += 1
        if row == m:
            break
    v = [Fraction(0)] * n
    for r, col in pivots:
        v[col] = aug[r][n]
    for r in range(m):
        lhs = sum(rows[r][1][k] * v[k] for k in range(n))
        if lhs != (1 if r == target_index else 0):  # pragma: no cover - defensive
            raise AssertionError("diagonalization rows are not independent")
    return tuple(v)


def rational_sos_quadratic(p: MultiPoly) -> list[MultiPoly]:
    """Write a PSD quadratic form exactly as a sum of squares of linear forms.

    Diagonalize by rational congruence, then expand each positive
    coefficient through a four-square decomposition, giving at most 4*rank
    unit-weight squares.  An indefinite form raises
    :class:`IndefiniteFormError` with an exact witness vector v, p(v) < 0.
    """
    diag = diagonalize_quadratic_form(p)
    for idx, (c, _) in enumerate(diag):
        if c < 0:
            v = _solve_unit_preimage(diag, idx, p.ring.arity)
            value = p.eval_rational(v)
            if value >= 0:  # pragma: no cover - defensive
                raise AssertionError("witness does not refute nonnegativity")
            raise IndefiniteFormError(v, value)
    forms: list[MultiPoly] = []
    for c, row in diag:
        ell = _row_to_form(p.ring, row)
        for q in four_square_decompose(c):
            if q:
                forms.append(ell.scale(q))
    total = MultiPoly.zero(p.ring)
    for g in forms:
        total = total + g * g
    if total != p:  # pragma: no cover - defensive
        raise AssertionError("SOS expansion does not reproduce the form")
    return forms


# ---------------------------------------------------------------------------
# The full pipeline
# ---------------------------------------------------------------------------


@dataclass
class QuadraticDetRep:
    """Definite symmetric pencil with det(sum x_i A_i) = scalar * h^power."""

    pencil: tuple[ConstMatrix, ...]
    power: int
    scalar: Fraction
    transform: tuple[tuple[Fraction, ...], ...]
    report: DetRepReport
    normal_form: QuadraticNormalForm

    def to_json_dict(self) -> dict:
        return {
            "r": self.power,
            "c": str(self.scalar),
            "coordinate_map": [[str(v) for v in row] for row in self.transform],
            "kind": KIND_SYMMETRIC,
            "pencil": [mat.to_rows() for mat in self.pencil],
            "report": self.report.to_json_dict(),
        }


def _hyperbolicity_witness_line(
    nf: QuadraticNormalForm, v: tuple[Fraction, ...]
) -> tuple[Fraction, ...]:
    """Map an indefiniteness witness of the branch form to a line w on which
    h(t*e - w) has no real roots: 4*alpha*h'(t*u0 - v) = (2*alpha*t - q1(v))^2 - p(v)."""
    n = len(v)
    return tuple(
        sum(nf.inverse[r][j] * v[j] for j in range(n)) for r in range(n)
    )


def quadratic_detrep(h: MultiPoly, e: Sequence[RationalLike]) -> QuadraticDetRep:
    """Compose normalize -> branch SOS -> Clifford Q -> pencil pullback.

    Returns a pencil of size 2^(k+1) with r = 2^k and c = (4*alpha)^r, where
    k is the number of squares in the branch decomposition; the final
    verify_pencil (up to a positive scalar, definite at e) must pass.  If the
    branch form p vanishes identically (h is a scalar multiple of a squared
    linear form) a 4x4 pencil with r = 2 is returned instead.
    """
    try:
        nf = normalize_at_direction(h, e)
    except ValueError as err:
        raise PipelineError("normalize", str(err)) from err
    try:
        forms = rational_sos_quadratic(nf.branch)
    except IndefiniteFormError as err:
        line = _hyperbolicity_witness_line(nf, err.witness)
        raise PipelineError(
            "branch-sos",
            f"branch form is negative at {tuple(map(str, err.witness))}; "
            f"h is not hyperbolic along the line through {tuple(map(str, line))}",
            witness_vector=err.witness,
            witness_line=line,
        ) from err

    ring_prime = nf.ring_prime
    ell = MultiPoly.variable(ring_prime, "u0").scale(2 * nf.alpha) + nf.q1
    if forms:
        q = build_Q(forms)
        m = q.size
        matrix_prime = scalar_polymatrix(ell, m, KIND_SYMMETRIC).sub(q)
    else:
        m = 4
        matrix_prime = scalar_polymatrix(ell, m, KIND_SYMMETRIC)
    r = m // 2
    scalar = (4 * nf.alpha) ** r

    # Pull the pencil back to the original coordinates: u = T x.
    ring = h.ring
    n = ring.arity
    t_rows = nf.transform
    images = [
        MultiPoly.from_terms(
            ring,
            [
                (tuple(1 if t == s else 0 for t in range(n)), t_rows[j][s])
                for s in range(n)
                if t_rows[j][s]
            ],
        )
        for j in range(n)
    ]
    zero = MultiPoly.zero(ring)
    rows = []
    for row in matrix_prime.rows:
        rows.append([p.substitute(images) if p else zero for p in row])
    matrix = PolyMatrix(ring, rows, KIND_SYMMETRIC)
    pencil = tuple(polymatrix_to_pencil(matrix))

    report = verify_pencil(pencil, h, r, e, up_to_scalar=True, method="auto")
    if not report.ok:
        raise PipelineError(
            "verify",
            "; ".join(f"{f.name}: {f.witness}" for f in report.failures) or "verification failed",
        )
    if report.scalar != scalar:  # pragma: no cover - defensive
        raise AssertionError(f"scalar mismatch: expected {scalar}, verified {report.scalar}")
    return QuadraticDetRep(
        pencil=pencil,
        power=r,
        scalar=scalar,
        transform=nf.transform,
        report=report,
        normal_form=nf,
    )
