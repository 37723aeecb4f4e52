"""Polynomial matrices, exact determinants, and verification of definite
symmetric/hermitian determinantal representations.

Two input shapes are supported: pencils sum_i x_i A_i with constant
matrices A_i (entries degree 1), and companion forms y*I - A(x) where A has
homogeneous entries of the weight of y.  Verification reports are exact:
every failed check carries a witness that re-verifies independently.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import permutations
from typing import Optional, Sequence, Union

from .polyring import MultiPoly, Ring, parse, real_square_factorization
from .scalars import (
    GR_ONE,
    GR_ZERO,
    KIND_HERMITIAN,
    KIND_NONE,
    KIND_SYMMETRIC,
    MATRIX_KINDS,
    ConstMatrix,
    GaussianRational,
    RationalLike,
    as_fraction,
    first_nonpositive_minor,
    pencil_value,
)


class PolyMatrix:
    """Square matrix of MultiPoly entries with a symmetry-kind tag."""

    __slots__ = ("ring", "rows", "kind")

    def __init__(self, ring: Ring, rows: Sequence[Sequence[MultiPoly]], kind: str = KIND_NONE):
        if kind not in MATRIX_KINDS:
            raise ValueError(f"unknown matrix kind {kind!r}")
        mat = tuple(tuple(row) for row in rows)
        n = len(mat)
        if any(len(row) != n for row in mat):
            raise ValueError("matrix must be square")
        for row in mat:
            for p in row:
                if p.ring != ring:
                    raise ValueError("entry ring mismatch")
        object.__setattr__(self, "ring", ring)
        object.__setattr__(self, "rows", mat)
        object.__setattr__(self, "kind", kind)

    def __setattr__(self, name, value):
        raise AttributeError("PolyMatrix is immutable")

    @classmethod
    def from_strings(cls, ring: Ring, rows: Sequence[Sequence[str]], kind: str = KIND_NONE) -> "PolyMatrix":
        return cls(ring, [[parse(s, ring) for s in row] for row in rows], kind)

    @property
    def size(self) -> int:
        return len(self.rows)

    def __getitem__(self, ij: tuple[int, int]) -> MultiPoly:
        return self.rows[ij[0]][ij[1]]

    def __eq__(self, other) -> bool:
        if not isinstance(other, PolyMatrix):
            return NotImplemented
        return self.ring == other.ring and self.rows == other.rows and self.kind == other.kind

    def kind_violation(self) -> Optional[tuple[int, int]]:
        n = self.size
        if self.kind == KIND_SYMMETRIC:
            for i in range(n):
                for j in range(i, n):
                    a, b = self.rows[i][j], self.rows[j][i]
                    if not a.is_real() or not b.is_real() or a != b:
                        return (i, j)
        elif self.kind == KIND_HERMITIAN:
            for i in range(n):
                for j in range(i, n):
                    if self.rows[i][j] != self.rows[j][i].conjugate():
                        return (i, j)
        return None

    def transpose(self) -> "PolyMatrix":
        n = self.size
        return PolyMatrix(self.ring, [[self.rows[j][i] for j in range(n)] for i in range(n)], self.kind)

    def conjugate(self) -> "PolyMatrix":
        return PolyMatrix(self.ring, [[p.conjugate() for p in row] for row in self.rows], self.kind)

    def trace(self) -> MultiPoly:
        total = MultiPoly.zero(self.ring)
        for k in range(self.size):
            total = total + self.rows[k][k]
        return total

    def add(self, other: "PolyMatrix") -> "PolyMatrix":
        if self.size != other.size or self.ring != other.ring:
            raise ValueError("matrix shape/ring mismatch")
        kind = self.kind if self.kind == other.kind else KIND_NONE
        return PolyMatrix(
            self.ring,
            [[a + b for a, b in zip(ra, rb)] for ra, rb in zip(self.rows, other.rows)],
            kind,
        )

    def sub(self, other: "PolyMatrix") -> "PolyMatrix":
        if self.size != other.size or self.ring != other.ring:
            raise ValueError("matrix shape/ring mismatch")
        return PolyMatrix(
            self.ring,
            [[a - b for a, b in zip(ra, rb)] for ra, rb in zip(self.rows, other.rows)],
            KIND_NONE,
        )

    def matmul(self, other: "PolyMatrix") -> "PolyMatrix":
        """Matrix product, skipping zero entries (matrices are often sparse)."""
        if self.size != other.size or self.ring != other.ring:
            raise ValueError("matrix shape/ring mismatch")
        n = self.size
        zero = MultiPoly.zero(self.ring)
        nz_rows = [
            [(j, p) for j, p in enumerate(row) if p] for row in self.rows
        ]
        out = []
        for i in range(n):
            acc: list[MultiPoly] = [zero] * n
            for k, p in nz_rows[i]:
                other_row = other.rows[k]
                for j in range(n):
                    q = other_row[j]
                    if q:
                        acc[j] = acc[j] + p * q
            out.append(acc)
        return PolyMatrix(self.ring, out, KIND_NONE)

    def eval_at(self, point: Sequence[RationalLike], kind: Optional[str] = None) -> ConstMatrix:
        pt = [as_fraction(c) for c in point]
        return ConstMatrix(
            [[p.eval(pt) for p in row] for row in self.rows],
            self.kind if kind is None else kind,
        )

    def entry_degrees_homogeneous(self, degree: int) -> Optional[tuple[int, int]]:
        """First entry that is not weighted-homogeneous of the given degree
        (zero entries are fine), or None."""
        for i, row in enumerate(self.rows):
            for j, p in enumerate(row):
                if p.is_zero():
                    continue
                if not p.is_weighted_homogeneous() or p.weighted_degree() != degree:
                    return (i, j)
        return None

    def to_json_dict(self) -> dict:
        return {
            "ring": {
                "vars": list(self.ring.variables),
                "weights": list(self.ring.weights),
                "gaussian": self.ring.gaussian,
            },
            "kind": self.kind,
            "entries": [[str(p) for p in row] for row in self.rows],
        }

    def __repr__(self) -> str:
        return f"PolyMatrix(size={self.size}, kind={self.kind})"


def polymatrix_from_json(data: Union[str, dict]) -> PolyMatrix:
    if isinstance(data, str):
        data = json.loads(data)
    ring = Ring(
        tuple(data["ring"]["vars"]),
        tuple(int(w) for w in data["ring"]["weights"]),
        bool(data["ring"].get("gaussian", False)),
    )
    return PolyMatrix.from_strings(ring, data["entries"], data.get("kind", KIND_NONE))


def identity_polymatrix(ring: Ring, n: int, kind: str = KIND_SYMMETRIC) -> PolyMatrix:
    one = MultiPoly.constant(ring, 1)
    zero = MultiPoly.zero(ring)
    return PolyMatrix(ring, [[one if i == j else zero for j in range(n)] for i in range(n)], kind)


def scalar_polymatrix(p: MultiPoly, n: int, kind: str = KIND_SYMMETRIC) -> PolyMatrix:
    zero = MultiPoly.zero(p.ring)
    return PolyMatrix(p.ring, [[p if i == j else zero for j in range(n)] for i in range(n)], kind)


# ---------------------------------------------------------------------------
# Exact determinants
# ---------------------------------------------------------------------------


def poly_det(matrix: PolyMatrix) -> MultiPoly:
    """Exact determinant by fraction-free Bareiss elimination.

    Divisions are exact in the polynomial ring; row swaps flip the sign.
    """
    n = matrix.size
    ring = matrix.ring
    if n == 0:
        return MultiPoly.constant(ring, 1)
    a = [list(row) for row in matrix.rows]
    zero = MultiPoly.zero(ring)
    sign = 1
    prev = MultiPoly.constant(ring, 1)
    for k in range(n - 1):
        pivot_row = k
        while pivot_row < n and a[pivot_row][k].is_zero():
            pivot_row += 1
        if pivot_row == n:
            return zero
        if pivot_row != k:
            a[pivot_row], a[k] = a[k], a[pivot_row]
            sign = -sign
        pivot = a[k][k]
        for i in range(k + 1, n):
            aik = a[i][k]
            row_i = a[i]
            row_k = a[k]
            if aik.is_zero():
                for j in range(k + 1, n):
                    if row_i[j]:
                        row_i[j] = (pivot * row_i[j]).divide_exact(prev)
            else:
                for j in range(k + 1, n):
                    row_i[j] = (pivot * row_i[j] - aik * row_k[j]).divide_exact(prev)
            row_i[k] = zero
        prev = pivot
    det = a[n - 1][n - 1]
    return det if sign > 0 else -det


def leibniz_det(matrix: PolyMatrix) -> MultiPoly:
    """Permutation-expansion determinant; the independent oracle for small sizes."""
    n = matrix.size
    if n > 6:
        raise ValueError("Leibniz expansion is only meant for small matrices")
    total = MultiPoly.zero(matrix.ring)
    for perm in permutations(range(n)):
        sign = _perm_sign(perm)
        term = MultiPoly.constant(matrix.ring, sign)
        for i in range(n):
            term = term * matrix.rows[i][perm[i]]
            if term.is_zero():
                break
        total = total + term
    return total


def _perm_sign(perm: Sequence[int]) -> int:
    seen = [False] * len(perm)
    sign = 1
    for start in range(len(perm)):
        if seen[start]:
            continue
        length = 0
        k = start
        while not seen[k]:
            seen[k] = True
            k = perm[k]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


def const_det(matrix: ConstMatrix) -> GaussianRational:
    """Exact determinant of a constant matrix (fraction-free elimination)."""
    n = matrix.size
    a = [list(row) for row in matrix.entries]
    sign = 1
    prev = GR_ONE
    for k in range(n - 1):
        pivot_row = k
        while pivot_row < n and not a[pivot_row][k]:
            pivot_row += 1
        if pivot_row == n:
            return GR_ZERO
        if pivot_row != k:
            a[pivot_row], a[k] = a[k], a[pivot_row]
            sign = -sign
        pivot = a[k][k]
        for i in range(k + 1, n):
            aik = a[i][k]
            for j in range(k + 1, n):
                a[i][j] = (pivot * a[i][j] - aik * a[k][j]) / prev
            a[i][k] = GR_ZERO
        prev = pivot
    det = a[n - 1][n - 1] if n else GR_ONE
    return det if sign > 0 else -det


# ---------------------------------------------------------------------------
# Verification reports
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class CheckFailure:
    name: str
    witness: str


@dataclass
class DetRepReport:
    """Outcome of a determinantal-representation verification.

    ``ok`` implies no failures and scalar > 0.  ``notes`` records method
    details (e.g. whether the minimal-polynomial shortcut was used, or that
    squareness of a branch polynomial could not be decided).
    """

    ok: bool
    scalar: Fraction
    power: int
    failures: list[CheckFailure] = field(default_factory=list)
    notes: dict = field(default_factory=dict)

    def to_json_dict(self) -> dict:
        return {
            "ok": self.ok,
            "scalar": str(self.scalar),
            "power": self.power,
            "failures": [{"name": f.name, "witness": f.witness} for f in self.failures],
            "notes": {k: str(v) for k, v in sorted(self.notes.items())},
        }


def _truncate(text: str, limit: int = 200) -> str:
    return text if len(text) <= limit else text[: limit - 3] + "..."


def pencil_to_polymatrix(matrices: Sequence[ConstMatrix], ring: Ring) -> PolyMatrix:
    """sum_i x_i A_i as a matrix of linear forms over ``ring``."""
    if len(matrices) != ring.arity:
        raise ValueError("need one constant matrix per ring variable")
    if not matrices:
        raise ValueError("empty pencil")
    m = matrices[0].size
    if any(mat.size != m for mat in matrices):
        raise ValueError("pencil matrices must share one size")
    kinds = {mat.kind for mat in matrices}
    kind = kinds.pop() if len(kinds) == 1 else KIND_NONE
    rows = []
    for i in range(m):
        row = []
        for j in range(m):
            items = []
            for v, mat in enumerate(matrices):
                coeff = mat.entries[i][j]
                if coeff:
                    expo = tuple(1 if k == v else 0 for k in range(ring.arity))
                    items.append((expo, coeff))
            row.append(MultiPoly.from_terms(ring, items))
        rows.append(row)
    return PolyMatrix(ring, rows, kind)


def polymatrix_to_pencil(matrix: PolyMatrix) -> list[ConstMatrix]:
    """Decompose a matrix of homogeneous linear forms into constant slices."""
    ring = matrix.ring
    m = matrix.size
    out = []
    for v in range(ring.arity):
        expo = tuple(1 if k == v else 0 for k in range(ring.arity))
        rows = []
        for i in range(m):
            row = []
            for j in range(m):
                p = matrix.rows[i][j]
                if p.weighted_degree() not in (None, 1):
                    raise ValueError(f"entry ({i},{j}) is not a linear form")
                row.append(p.terms.get(expo, GR_ZERO))
            rows.append(row)
        out.append(ConstMatrix(rows, matrix.kind))
    return out


def _match_scalar(
    det: MultiPoly, target: MultiPoly, up_to_scalar: bool
) -> tuple[Fraction, Optional[str]]:
    """Find c with det == c * target; (c, None) on success else (c, witness)."""
    if target.is_zero():
        return (Fraction(0), "target polynomial is zero")
    if det.is_zero():
        return (Fraction(0), "determinant is identically zero")
    lc_det = det.leading_coefficient()
    lc_target = target.leading_coefficient()
    if lc_det.im or lc_target.im:
        return (Fraction(0), "leading coefficient is not real")
    c = lc_det.re / lc_target.re if up_to_scalar else Fraction(1)
    diff = det - target.scale(c)
    if diff.is_zero():
        return (c, None)
    return (c, _truncate(f"det - {c}*h^r = {diff}"))


def verify_pencil(
    matrices: Sequence[ConstMatrix],
    h: MultiPoly,
    r: int,
    e: Sequence[RationalLike],
    up_to_scalar: bool = False,
    method: str = "auto",
) -> DetRepReport:
    """Check that det(sum x_i A_i) = c * h^r with definite value at e.

    Three named checks: symmetry kind, determinant identity (c = 1 unless
    ``up_to_scalar``), and positive definiteness of sum e_i A_i.  ``method``
    is "direct" (Bareiss determinant), "shortcut" (minimal-polynomial route
    for pencils of the shape ell*I - Q with Q^2 = P*I), or "auto".
    """
    ring = h.ring
    if any(w != 1 for w in ring.weights):
        raise ValueError("pencil verification needs an unweighted ring")
    if len(matrices) != ring.arity:
        raise ValueError("need one pencil matrix per variable of h")
    if len(e) != ring.arity:
        raise ValueError("direction arity mismatch")
    deg = h.weighted_degree()
    if deg is None or not h.is_weighted_homogeneous():
        raise ValueError("h must be nonzero and homogeneous")
    m = matrices[0].size
    if deg * r != m:
        raise ValueError(f"size/degree mismatch: deg(h)*r = {deg * r} but matrices are {m}x{m}")

    failures: list[CheckFailure] = []
    notes: dict = {}

    kinds = {mat.kind for mat in matrices}
    if len(kinds) != 1:
        raise ValueError("pencil matrices must share one symmetry kind")
    kind = kinds.pop()
    if kind == KIND_NONE:
        failures.append(CheckFailure("kind", "pencil has no declared symmetry kind"))
    for idx, mat in enumerate(matrices):
        bad = mat.kind_violation()
        if bad is not None:
            failures.append(
                CheckFailure("kind", f"matrix {idx} entry {bad} breaks {kind} symmetry")
            )

    pencil_matrix = pencil_to_polymatrix(matrices, ring)
    scalar, det_witness = _verify_det_identity(
        pencil_matrix, h, r, up_to_scalar, method, notes
    )
    if det_witness is not None:
        failures.append(CheckFailure("determinant", det_witness))
    elif scalar <= 0:
        failures.append(CheckFailure("scalar-positivity", f"scalar c = {scalar} is not positive"))

    if kind != KIND_NONE and not any(f.name == "kind" for f in failures):
        value = pencil_value(matrices, [as_fraction(c) for c in e])
        bad_minor = first_nonpositive_minor(value)
        if bad_minor is not None:
            failures.append(
                CheckFailure(
                    "positive-definite",
                    f"leading principal minor of order {bad_minor[0]} at e is {bad_minor[1]}",
                )
            )

    ok = not failures and scalar > 0
    return DetRepReport(ok=ok, scalar=scalar, power=r, failures=failures, notes=notes)


def _verify_det_identity(
    pencil_matrix: PolyMatrix,
    h: MultiPoly,
    r: int,
    up_to_scalar: bool,
    method: str,
    notes: dict,
) -> tuple[Fraction, Optional[str]]:
    m = pencil_matrix.size
    if method not in ("auto", "direct", "shortcut"):
        raise ValueError(f"unknown method {method!r}")
    if method == "auto":
        method = "direct" if m <= 8 else "shortcut"
    if method == "shortcut":
        result = _det_identity_shortcut(pencil_matrix, h, r, up_to_scalar)
        if result is not None:
            notes["method"] = "minimal-polynomial-shortcut"
            return result
        notes["shortcut"] = "inapplicable; fell back to the direct determinant"
        method = "direct"
    notes["method"] = "bareiss"
    det = poly_det(pencil_matrix)
    return _match_scalar(det, h ** r, up_to_scalar)


def _det_identity_shortcut(
    pencil_matrix: PolyMatrix, h: MultiPoly, r: int, up_to_scalar: bool
) -> Optional[tuple[Fraction, Optional[str]]]:
    """Minimal-polynomial route for quadratic h.

    If M = ell*I - Q with trace(Q) = 0 and Q^2 = P*I, the characteristic
    polynomial of Q is (y^2 - P)^(m/2), hence det M = (ell^2 - P)^(m/2)
    exactly.  It remains to match ell^2 - P against a positive multiple of h.
    """
    ring = pencil_matrix.ring
    m = pencil_matrix.size
    if m % 2 != 0 or h.weighted_degree() != 2 or r != m // 2:
        return None
    trace = pencil_matrix.trace()
    ell = trace.scale(Fraction(1, m))
    ell_m = scalar_polymatrix(ell, m, KIND_NONE)
    q = ell_m.sub(pencil_matrix)  # traceless by construction
    q_sq = q.matmul(q)
    p = q_sq.rows[0][0]
    for i in range(m):
        for j in range(m):
            expected = p if i == j else None
            entry = q_sq.rows[i][j]
            if expected is None:
                if not entry.is_zero():
                    return None
            elif entry != p:
                return None
    branch = ell * ell - p
    scalar, witness = _match_scalar(branch, h, up_to_scalar)
    if witness is not None:
        return (scalar, witness)
    if scalar <= 0:
        return (scalar, f"branch scalar {scalar} is not positive")
    return (scalar ** r, None)


def verify_companion(
    matrix: PolyMatrix,
    h: MultiPoly,
    r: int,
    method: str = "auto",
) -> DetRepReport:
    """Check det(y*I - A) = h^r exactly for companion-form input.

    ``h`` lives in a ring containing the distinguished variable ``y`` of
    weight equal to the common degree of A's entries; ``matrix`` lives in the
    same ring without y.  With ``method="auto"`` the minimal-polynomial
    shortcut is used when it applies (A symmetric/hermitian, A^2 = p*I,
    trace 0 for h = y^2 - p); otherwise the Bareiss determinant decides.
    """
    ring_h = h.ring
    if "y" not in ring_h.variables:
        raise ValueError("companion form needs a distinguished variable named 'y'")
    y_idx = ring_h.index("y")
    weight_e = ring_h.weights[y_idx]
    if any(w != 1 for k, w in enumerate(ring_h.weights) if k != y_idx):
        raise ValueError("all non-y variables must have weight 1")
    ring_x = ring_h.without("y")
    if matrix.ring != ring_x:
        raise ValueError("companion matrix must live in h's ring without y")
    if not h.is_weighted_homogeneous():
        raise ValueError("h must be weighted-homogeneous")
    total = h.weighted_degree()
    if total is None or total % weight_e != 0:
        raise ValueError("deg(h) must be a multiple of the weight of y")
    d = total // weight_e
    m = matrix.size
    if m != d * r:
        raise ValueError(f"size/degree mismatch: matrix is {m}x{m}, expected d*r = {d * r}")

    failures: list[CheckFailure] = []
    notes: dict = {}

    bad_entry = matrix.entry_degrees_homogeneous(weight_e)
    if bad_entry is not None:
        failures.append(
            CheckFailure(
                "grading",
                f"entry {bad_entry} is not homogeneous of degree {weight_e}",
            )
        )
        return DetRepReport(False, Fraction(0), r, failures, notes)

    if matrix.kind == KIND_NONE:
        failures.append(CheckFailure("kind", "companion matrix has no declared symmetry kind"))
    else:
        bad = matrix.kind_violation()
        if bad is not None:
            failures.append(
                CheckFailure("kind", f"entry {bad} breaks {matrix.kind} symmetry")
            )

    if method not in ("auto", "direct", "shortcut"):
        raise ValueError(f"unknown method {method!r}")
    applied = None
    if method in ("auto", "shortcut"):
        applied = _companion_shortcut(matrix, h, r, d, notes)
        if applied is None and method == "shortcut":
            failures.append(
                CheckFailure("determinant", "minimal-polynomial shortcut is not applicable")
            )
            return DetRepReport(False, Fraction(0), r, failures, notes)
    if applied is not None:
        det_witness = applied[1]
    else:
        notes["method"] = "bareiss"
        lifted = PolyMatrix(
            ring_h,
            [[p.lift(ring_h) for p in row] for row in matrix.rows],
            matrix.kind,
        )
        y_poly = MultiPoly.variable(ring_h, "y")
        char_matrix = scalar_polymatrix(y_poly, m, KIND_NONE).sub(lifted)
        det = poly_det(char_matrix)
        _, det_witness = _match_scalar(det, h ** r, up_to_scalar=False)
    if det_witness is not None:
        failures.append(CheckFailure("determinant", det_witness))

    ok = not failures
    return DetRepReport(ok=ok, scalar=Fraction(1), power=r, failures=failures, notes=notes)


def _companion_shortcut(
    matrix: PolyMatrix, h: MultiPoly, r: int, d: int, notes: dict
) -> Optional[tuple[bool, Optional[str]]]:
    """(holds, witness) when the shortcut applies, None when it does not.

    Applies to h = y^2 - p with A symmetric/hermitian, A^2 = p*I and
    trace(A) = 0: then char(A) = (y^2 - p)^(m/2) exactly.
    """
    if d != 2 or matrix.kind not in (KIND_SYMMETRIC, KIND_HERMITIAN):
        return None
    ring_h = h.ring
    y_sq = MultiPoly.variable(ring_h, "y") ** 2
    p_in_h = y_sq - h
    if any(expo[ring_h.index("y")] for expo in p_in_h.terms):
        return None  # h is not of the shape y^2 - p(x)
    # Drop y from p's exponent vectors.
    ring_x = matrix.ring
    y_idx = ring_h.index("y")
    p = MultiPoly.from_terms(
        ring_x,
        [
            (expo[:y_idx] + expo[y_idx + 1 :], coeff)
            for expo, coeff in p_in_h.terms.items()
        ],
    )
    if not matrix.trace().is_zero():
        return None
    sq = matrix.matmul(matrix)
    m = matrix.size
    for i in range(m):
        for j in range(m):
            entry = sq.rows[i][j]
            if i == j:
                if entry != p:
                    return None
            elif not entry.is_zero():
                return None
    notes["method"] = "minimal-polynomial-shortcut"
    square = real_square_factorization(p)
    notes["branch-not-a-square"] = (
        "verified" if square is None else f"p = {square[0]}*({square[1]})^2"
    )
    if r != m // 2:
        return (False, f"power mismatch: the characteristic polynomial is (y^2-p)^{m // 2}")
    return (True, None)


# ---------------------------------------------------------------------------
# SOS extraction from involutive matrices
# ---------------------------------------------------------------------------


@dataclass
class SosDecomposition:
    """p = sum of squares of the listed real polynomials (verified exactly)."""

    squares: list[MultiPoly]
    target: MultiPoly
    kind: str
    column: int
    notes: dict = field(default_factory=dict)

    def to_json_dict(self) -> dict:
        return {
            "squares": [str(g) for g in self.squares],
            "target": str(self.target),
            "kind": self.kind,
            "column": self.column,
            "notes": {k: str(v) for k, v in sorted(self.notes.items())},
        }


def _normalize_sign(p: MultiPoly) -> MultiPoly:
    lc = p.leading_coefficient()
    key = lc.re if lc.re else lc.im
    return -p if key < 0 else p


def detrep_to_sos(matrix: PolyMatrix, p: MultiPoly, column: int = 0) -> SosDecomposition:
    """Extract a sum-of-squares decomposition of p from A with A^2 = p*I.

    Symmetric A: the entries of one column already satisfy sum a_ji^2 = p.
    Hermitian A: real and imaginary parts of the column entries do.  The
    identity is re-verified exactly before returning.
    """
    if matrix.kind not in (KIND_SYMMETRIC, KIND_HERMITIAN):
        raise ValueError("SOS extraction needs a symmetric or hermitian matrix")
    bad = matrix.kind_violation()
    if bad is not None:
        raise ValueError(f"matrix entry {bad} breaks the declared {matrix.kind} symmetry")
    if p.ring != matrix.ring:
        raise ValueError("p must live in the matrix ring")
    m = matrix.size
    if not 0 <= column < m:
        raise ValueError("column index out of range")
    sq = matrix.matmul(matrix)
    for i in range(m):
        for j in range(m):
            expected_diag = i == j
            entry = sq.rows[i][j]
            if expected_diag and entry != p:
                raise ValueError(f"A^2 != p*I: diagonal entry ({i},{j}) is {_truncate(str(entry))}")
            if not expected_diag and not entry.is_zero():
                raise ValueError(f"A^2 != p*I: off-diagonal entry ({i},{j}) is {_truncate(str(entry))}")

    squares: list[MultiPoly] = []
    for j in range(m):
        entry = matrix.rows[j][column]
        if entry.is_zero():
            continue
        if matrix.kind == KIND_SYMMETRIC:
            squares.append(_normalize_sign(entry))
        else:
            re_part = MultiPoly(
                matrix.ring,
                {e: GaussianRational(c.re) for e, c in entry.terms.items() if c.re},
            )
            im_part = MultiPoly(
                matrix.ring,
                {e: GaussianRational(c.im) for e, c in entry.terms.items() if c.im},
            )
            for part in (re_part, im_part):
                if not part.is_zero():
                    squares.append(_normalize_sign(part))

    total = MultiPoly.zero(matrix.ring)
    for g in squares:
        total = total + g * g
    if total != p:
        raise AssertionError("internal error: extracted squares do not sum to p")

    notes = {
        "square-count": len(squares),
        "count-bound": f"{m} (symmetric: 2r)" if matrix.kind == KIND_SYMMETRIC else f"{2 * m - 1} (hermitian: 4r-1)",
    }
    square = real_square_factorization(p)
    if square is not None:
        notes["p-is-a-square"] = f"p = {square[0]}*({square[1]})^2"
    return SosDecomposition(squares, p, matrix.kind, column, notes)


# ---------------------------------------------------------------------------
# Pluecker coordinates of lines in P^4
# ---------------------------------------------------------------------------

PLUCKER_VARS = ("x01", "x02", "x03", "x04", "x12", "x13", "x14", "x23", "x24", "x34")
_PLUCKER_PAIRS = ((0, 1), (0, 2), (0, 3), (0, 4), (1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4))


def plucker_line(
    p: Sequence[RationalLike], q: Sequence[RationalLike]
) -> tuple[Fraction, ...]:
    """Pluecker coordinates x_ij = p_i q_j - p_j q_i of the line through two
    points of P^4, ordered as PLUCKER_VARS."""
    if len(p) != 5 or len(q) != 5:
        raise ValueError("points must have 5 homogeneous coordinates")
    pf = [as_fraction(c) for c in p]
    qf = [as_fraction(c) for c in q]
    coords = tuple(pf[i] * qf[j] - pf[j] * qf[i] for i, j in _PLUCKER_PAIRS)
    if not any(coords):
        raise ValueError("points are proportional; they do not span a line")
    return coords
