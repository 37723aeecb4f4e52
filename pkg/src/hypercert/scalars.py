"""Exact scalar arithmetic over Q and Q(i).

Rationals are ``fractions.Fraction`` throughout (always normalized, positive
denominator).  On top of that this module provides Gaussian rationals,
Lagrange four-square decompositions of positive rationals, and Sylvester
positive-definiteness tests for constant symmetric/hermitian matrices.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterable, Optional, Sequence, Union

RationalLike = Union[Fraction, int, str]

KIND_SYMMETRIC = "symmetric"
KIND_HERMITIAN = "hermitian"
KIND_NONE = "none"
MATRIX_KINDS = (KIND_SYMMETRIC, KIND_HERMITIAN, KIND_NONE)


def as_fraction(value: RationalLike) -> Fraction:
    """Coerce ints, strings ("p/q" or "p") and Fractions to Fraction."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value.strip())
    raise TypeError(f"not a rational value: {value!r}")


def format_rational(q: Fraction) -> str:
    """Wire format: "p/q", or plain "p" for integers."""
    return str(q)


class GaussianRational:
    """An exact element a + b*i of Q(i).

    Immutable; real and imaginary parts are Fractions.  ``conj`` is an
    involution and ``z * z.conj()`` is real and nonnegative.
    """

    __slots__ = ("re", "im")

    def __init__(self, re: RationalLike = 0, im: RationalLike = 0):
        object.__setattr__(self, "re", as_fraction(re))
        object.__setattr__(self, "im", as_fraction(im))

    def __setattr__(self, name, value):
        raise AttributeError("GaussianRational is immutable")

    # -- predicates ------------------------------------------------------

    def is_real(self) -> bool:
        return not self.im

    def is_zero(self) -> bool:
        return not self.re and not self.im

    def __bool__(self) -> bool:
        return bool(self.re) or bool(self.im)

    # -- arithmetic ------------------------------------------------------

    def __add__(self, other: "GaussianRational") -> "GaussianRational":
        return GaussianRational(self.re + other.re, self.im + other.im)

    def __sub__(self, other: "GaussianRational") -> "GaussianRational":
        return GaussianRational(self.re - other.re, self.im - other.im)

    def __neg__(self) -> "GaussianRational":
        return GaussianRational(-self.re, -self.im)

    def __mul__(self, other: "GaussianRational") -> "GaussianRational":
        if not self.im and not other.im:
            return GaussianRational(self.re * other.re)
        a, b, c, d = self.re, self.im, other.re, other.im
        return GaussianRational(a * c - b * d, a * d + b * c)

    def __truediv__(self, other: "GaussianRational") -> "GaussianRational":
        if other.is_zero():
            raise ZeroDivisionError("division by zero Gaussian rational")
        if not self.im and not other.im:
            return GaussianRational(self.re / other.re)
        n = other.norm()
        a, b, c, d = self.re, self.im, other.re, -other.im
        return GaussianRational((a * c - b * d) / n, (a * d + b * c) / n)

    def conj(self) -> "GaussianRational":
        return GaussianRational(self.re, -self.im)

    def norm(self) -> Fraction:
        """z * conj(z) as a rational (always >= 0)."""
        return self.re * self.re + self.im * self.im

    def scale(self, c: RationalLike) -> "GaussianRational":
        c = as_fraction(c)
        return GaussianRational(self.re * c, self.im * c)

    # -- comparisons and hashing -----------------------------------------

    def __eq__(self, other) -> bool:
        if isinstance(other, GaussianRational):
            return self.re == other.re and self.im == other.im
        if isinstance(other, (int, Fraction)):
            return not self.im and self.re == other
        return NotImplemented

    def __hash__(self):
        return hash((self.re, self.im))

    # -- wire format -----------------------------------------------------

    def __str__(self) -> str:
        if not self.im:
            return format_rational(self.re)
        if not self.re:
            return _imag_str(self.im)
        sep = "+" if self.im > 0 else "-"
        return f"{format_rational(self.re)}{sep}{_imag_str(abs(self.im))}"

    def __repr__(self) -> str:
        return f"GaussianRational({self})"

    @staticmethod
    def parse(text: str) -> "GaussianRational":
        """Parse "a+b*i" (literal token i); accepts any constant expression
        in the polynomial grammar over the empty Gaussian ring."""
        from . import polyring

        ring = polyring.Ring(variables=(), weights=(), gaussian=True)
        poly = polyring.parse(text, ring)
        return poly.constant_value()


def _imag_str(b: Fraction) -> str:
    if b == 1:
        return "i"
    if b == -1:
        return "-i"
    return f"{format_rational(b)}*i"


GR_ZERO = GaussianRational(0)
GR_ONE = GaussianRational(1)
GR_I = GaussianRational(0, 1)


# ---------------------------------------------------------------------------
# Four-square decomposition
# ---------------------------------------------------------------------------


def four_square_decompose(c: RationalLike) -> tuple[Fraction, Fraction, Fraction, Fraction]:
    """Write a positive rational u/v exactly as q1^2+q2^2+q3^2+q4^2.

    The integer u*v is decomposed into four integer squares and each is
    divided by v.  Output is sorted in descending order.
    """
    c = as_fraction(c)
    if c <= 0:
        raise ValueError(f"four_square_decompose requires a positive input, got {c}")
    u, v = c.numerator, c.denominator
    parts = _four_squares_int(u * v)
    return tuple(Fraction(w, v) for w in parts)  # type: ignore[return-value]


def _four_squares_int(n: int) -> tuple[int, int, int, int]:
    """Lagrange decomposition of n >= 0 into four integer squares,
    descending.  Factors of 4 are stripped first so small answers stay small."""
    if n == 0:
        return (0, 0, 0, 0)
    shift = 0
    while n % 4 == 0:
        n //= 4
        shift += 1
    a = 0
    while a * a <= n:
        rest = n - a * a
        if _is_sum_of_three_squares(rest):
            b, c, d = _three_squares_int(rest)
            quad = sorted((a, b, c, d), reverse=True)
            return tuple(w << shift for w in quad)  # type: ignore[return-value]
        a += 1
    raise AssertionError(f"unreachable: Lagrange decomposition failed for {n}")


def _is_sum_of_three_squares(n: int) -> bool:
    # Legendre: representable iff n is not of the form 4^a (8b + 7).
    while n % 4 == 0 and n > 0:
        n //= 4
    return n % 8 != 7


def _three_squares_int(n: int) -> tuple[int, int, int]:
    """Decompose n (known representable) into three squares."""
    if n == 0:
        return (0, 0, 0)
    b = math.isqrt(n)
    # The largest component of any representation is at least sqrt(n/3).
    while 3 * b * b >= n:
        pair = _two_squares_int(n - b * b)
        if pair is not None:
            return (b, pair[0], pair[1])
        b -= 1
    raise AssertionError(f"unreachable: three-square decomposition failed for {n}")


def _two_squares_int(n: int) -> Optional[tuple[int, int]]:
    if n == 0:
        return (0, 0)
    c = math.isqrt(n)
    while 2 * c * c >= n:
        d_sq = n - c * c
        d = math.isqrt(d_sq)
        if d * d == d_sq:
            return (c, d)
        c -= 1
    return None


# ---------------------------------------------------------------------------
# Constant matrices and definiteness
# ---------------------------------------------------------------------------


class ConstMatrix:
    """Square matrix of Gaussian rationals with a symmetry-kind tag."""

    __slots__ = ("entries", "kind")

    def __init__(self, entries: Sequence[Sequence[GaussianRational]], kind: str = KIND_NONE):
        if kind not in MATRIX_KINDS:
            raise ValueError(f"unknown matrix kind {kind!r}")
        rows = tuple(tuple(e for e in row) for row in entries)
        n = len(rows)
        if any(len(row) != n for row in rows):
            raise ValueError("matrix must be square")
        for row in rows:
            for e in row:
                if not isinstance(e, GaussianRational):
                    raise TypeError("entries must be GaussianRational")
        object.__setattr__(self, "entries", rows)
        object.__setattr__(self, "kind", kind)

    def __setattr__(self, name, value):
        raise AttributeError("ConstMatrix is immutable")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[RationalLike]], kind: str = KIND_NONE) -> "ConstMatrix":
        return cls([[GaussianRational(v) for v in row] for row in rows], kind)

    @property
    def size(self) -> int:
        return len(self.entries)

    def __getitem__(self, ij: tuple[int, int]) -> GaussianRational:
        return self.entries[ij[0]][ij[1]]

    def __eq__(self, other) -> bool:
        if not isinstance(other, ConstMatrix):
            return NotImplemented
        return self.entries == other.entries and self.kind == other.kind

    def __hash__(self):
        return hash((self.entries, self.kind))

    def kind_violation(self) -> Optional[tuple[int, int]]:
        """First entry (i, j) breaking the declared symmetry kind, or None."""
        n = self.size
        if self.kind == KIND_SYMMETRIC:
            for i in range(n):
                for j in range(i, n):
                    a, b = self.entries[i][j], self.entries[j][i]
                    if a.im or b.im or a != b:
                        return (i, j)
        elif self.kind == KIND_HERMITIAN:
            for i in range(n):
                for j in range(i, n):
                    if self.entries[i][j] != self.entries[j][i].conj():
                        return (i, j)
        return None

    def validate_kind(self) -> None:
        bad = self.kind_violation()
        if bad is not None:
            raise ValueError(f"matrix is not {self.kind}: entry {bad} violates the symmetry")

    def scale(self, c: RationalLike) -> "ConstMatrix":
        c = as_fraction(c)
        return ConstMatrix(
            [[e.scale(c) for e in row] for row in self.entries], self.kind
        )

    def add(self, other: "ConstMatrix") -> "ConstMatrix":
        if self.size != other.size:
            raise ValueError("size mismatch")
        kind = self.kind if self.kind == other.kind else KIND_NONE
        return ConstMatrix(
            [
                [a + b for a, b in zip(ra, rb)]
                for ra, rb in zip(self.entries, other.entries)
            ],
            kind,
        )

    def is_diagonal(self) -> bool:
        return all(
            not self.entries[i][j]
            for i in range(self.size)
            for j in range(self.size)
            if i != j
        )

    def to_rows(self) -> list[list[str]]:
        return [[str(e) for e in row] for row in self.entries]


def identity_matrix(n: int, kind: str = KIND_SYMMETRIC) -> ConstMatrix:
    return ConstMatrix.from_rows(
        [[1 if i == j else 0 for j in range(n)] for i in range(n)], kind
    )


def pencil_value(matrices: Sequence[ConstMatrix], point: Sequence[RationalLike]) -> ConstMatrix:
    """Evaluate sum_i point_i * A_i."""
    if len(matrices) != len(point):
        raise ValueError("pencil length does not match point arity")
    if not matrices:
        raise ValueError("empty pencil")
    acc = matrices[0].scale(point[0])
    for c, mat in zip(point[1:], matrices[1:]):
        acc = acc.add(mat.scale(c))
    return acc


def leading_principal_minors(matrix: ConstMatrix) -> list[Fraction]:
    """All leading principal minors, via fraction-free (Bareiss) elimination.

    Stops early when a minor vanishes (later ones are then not computable by
    this scheme; a zero entry is recorded and the list is truncated there).
    For symmetric/hermitian input every minor is real; an imaginary residue
    would mean the invariant is broken and raises.
    """
    n = matrix.size
    a = [list(row) for row in matrix.entries]
    minors: list[Fraction] = []
    prev = GR_ONE
    for k in range(n):
        pivot = a[k][k]
        if pivot.im:
            raise ArithmeticError(
                f"leading principal minor {k + 1} is not real; hermitian invariant broken"
            )
        minors.append(pivot.re)
        if not pivot:
            break
        for i in range(k + 1, n):
            aik = a[i][k]
            for j in range(k + 1, n):
                a[i][j] = (pivot * a[i][j] - aik * a[k][j]) / prev
            a[i][k] = GR_ZERO
        prev = pivot
    return minors


def first_nonpositive_minor(matrix: ConstMatrix) -> Optional[tuple[int, Fraction]]:
    """(1-based size, value) of the first nonpositive leading minor, or None."""
    if matrix.is_diagonal():
        # Diagonal fast path: minors are prefix products of the diagonal.
        prod = Fraction(1)
        for k in range(matrix.size):
            d = matrix.entries[k][k]
            if d.im:
                raise ArithmeticError(
                    f"diagonal entry {k} is not real; hermitian invariant broken"
                )
            prod *= d.re
            if prod <= 0:
                return (k + 1, prod)
        return None
    minors = leading_principal_minors(matrix)
    for k, value in enumerate(minors):
        if value <= 0:
            return (k + 1, value)
    if len(minors) < matrix.size:  # pragma: no cover - guarded by <=0 above
        return (len(minors), Fraction(0))
    return None


def is_positive_definite(matrix: ConstMatrix) -> bool:
    """Sylvester test: all leading principal minors positive.

    Requires a declared (and valid) symmetry kind.
    """
    if matrix.kind == KIND_NONE:
        raise ValueError("positive definiteness needs a symmetric or hermitian matrix")
    matrix.validate_kind()
    return first_nonpositive_minor(matrix) is None
