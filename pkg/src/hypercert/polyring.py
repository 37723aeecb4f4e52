"""Sparse multivariate polynomials over Q(i) with weighted gradings.

A ``Ring`` fixes the variable names, one positive integer weight per
variable, and whether Gaussian (complex) coefficients are allowed.
``MultiPoly`` stores a map from exponent vectors to nonzero coefficients.
``UniPoly`` is the dense univariate companion used by the real-root
machinery.

The ASCII grammar implemented by :func:`parse` / ``MultiPoly.__str__`` is the
single wire format for polynomials in files, CLI arguments and matrix JSON:
identifiers from the ring, operators ``+ - * ^`` with standard precedence,
parentheses, integer and ``p/q`` rational literals, and the literal token
``i`` for the imaginary unit in Gaussian rings.  Whitespace is insignificant.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Optional, Sequence, Union

from .scalars import (
    GR_ONE,
    GR_ZERO,
    GaussianRational,
    RationalLike,
    as_fraction,
)

CoeffLike = Union[GaussianRational, Fraction, int]


class ParseError(ValueError):
    """Raised for malformed polynomial text."""


def _as_coeff(value: CoeffLike) -> GaussianRational:
    if isinstance(value, GaussianRational):
        return value
    return GaussianRational(value)


@dataclass(frozen=True)
class Ring:
    """An ordered list of variables with positive weights.

    ``gaussian`` enables coefficients in Q(i); otherwise any imaginary part
    is rejected.  A distinguished variable (conventionally ``y``) may carry
    weight > 1, which is how companion-form gradings are expressed.
    """

    variables: tuple[str, ...]
    weights: tuple[int, ...]
    gaussian: bool = False

    def __post_init__(self):
        if len(self.variables) != len(self.weights):
            raise ValueError("one weight per variable required")
        if len(set(self.variables)) != len(self.variables):
            raise ValueError("duplicate variable names")
        for name in self.variables:
            if not name.isidentifier():
                raise ValueError(f"invalid variable name {name!r}")
        if self.gaussian and "i" in self.variables:
            raise ValueError("'i' denotes the imaginary unit in a gaussian ring")
        if any(w < 1 for w in self.weights):
            raise ValueError("weights must be positive integers")

    @classmethod
    def standard(cls, variables: Sequence[str], gaussian: bool = False) -> "Ring":
        names = tuple(variables)
        return cls(names, (1,) * len(names), gaussian)

    @property
    def arity(self) -> int:
        return len(self.variables)

    def index(self, name: str) -> int:
        try:
            return self.variables.index(name)
        except ValueError:
            raise KeyError(f"unknown variable {name!r}") from None

    def weighted_degree(self, expo: tuple[int, ...]) -> int:
        return sum(w * e for w, e in zip(self.weights, expo))

    def without(self, name: str) -> "Ring":
        idx = self.index(name)
        return Ring(
            self.variables[:idx] + self.variables[idx + 1 :],
            self.weights[:idx] + self.weights[idx + 1 :],
            self.gaussian,
        )


class MultiPoly:
    """Sparse polynomial: exponent-vector -> nonzero GaussianRational."""

    __slots__ = ("ring", "terms")

    def __init__(self, ring: Ring, terms: dict[tuple[int, ...], GaussianRational]):
        # Trusted constructor: terms must already be normalized (no zeros,
        # correct arity).  Use the class methods for safe construction.
        object.__setattr__(self, "ring", ring)
        object.__setattr__(self, "terms", terms)

    def __setattr__(self, name, value):
        raise AttributeError("MultiPoly is immutable")

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls, ring: Ring) -> "MultiPoly":
        return cls(ring, {})

    @classmethod
    def constant(cls, ring: Ring, value: CoeffLike) -> "MultiPoly":
        c = _as_coeff(value)
        if c.im and not ring.gaussian:
            raise ValueError("imaginary coefficient in a non-gaussian ring")
        if c.is_zero():
            return cls.zero(ring)
        return cls(ring, {(0,) * ring.arity: c})

    @classmethod
    def variable(cls, ring: Ring, name: str) -> "MultiPoly":
        idx = ring.index(name)
        expo = tuple(1 if k == idx else 0 for k in range(ring.arity))
        return cls(ring, {expo: GR_ONE})

    @classmethod
    def from_terms(
        cls, ring: Ring, items: Iterable[tuple[tuple[int, ...], CoeffLike]]
    ) -> "MultiPoly":
        terms: dict[tuple[int, ...], GaussianRational] = {}
        for expo, coeff in items:
            expo = tuple(expo)
            if len(expo) != ring.arity or any(e < 0 for e in expo):
                raise ValueError(f"bad exponent vector {expo}")
            c = _as_coeff(coeff)
            if c.im and not ring.gaussian:
                raise ValueError("imaginary coefficient in a non-gaussian ring")
            acc = terms.get(expo)
            c = acc + c if acc is not None else c
            if c.is_zero():
                terms.pop(expo, None)
            else:
                terms[expo] = c
        return cls(ring, terms)

    # -- basic predicates --------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def is_constant(self) -> bool:
        return all(not any(e) for e in self.terms)

    def constant_value(self) -> GaussianRational:
        if self.is_zero():
            return GR_ZERO
        if not self.is_constant():
            raise ValueError("polynomial is not constant")
        return next(iter(self.terms.values()))

    def is_real(self) -> bool:
        return all(not c.im for c in self.terms.values())

    def __eq__(self, other) -> bool:
        if not isinstance(other, MultiPoly):
            return NotImplemented
        return self.ring == other.ring and self.terms == other.terms

    def __hash__(self):
        return hash((self.ring, frozenset(self.terms.items())))

    # -- degree and homogeneity ---------------------------------------------

    def weighted_degree(self) -> Optional[int]:
        """Max weighted degree over terms; None for the zero polynomial
        (callers must branch on it, there is no sentinel number)."""
        if not self.terms:
            return None
        wd = self.ring.weighted_degree
        return max(wd(e) for e in self.terms)

    def is_weighted_homogeneous(self) -> bool:
        if not self.terms:
            return True
        wd = self.ring.weighted_degree
        degrees = {wd(e) for e in self.terms}
        return len(degrees) == 1

    def homogeneous_degree(self) -> Optional[int]:
        """The common weighted degree, or raises if inhomogeneous."""
        if not self.is_weighted_homogeneous():
            raise ValueError("polynomial is not weighted-homogeneous")
        return self.weighted_degree()

    # -- arithmetic ----------------------------------------------------------

    def _check_ring(self, other: "MultiPoly") -> None:
        if self.ring != other.ring:
            raise ValueError("ring mismatch")

    def __add__(self, other: "MultiPoly") -> "MultiPoly":
        self._check_ring(other)
        terms = dict(self.terms)
        for expo, coeff in other.terms.items():
            acc = terms.get(expo)
            if acc is None:
                terms[expo] = coeff
            else:
                s = acc + coeff
                if s.is_zero():
                    del terms[expo]
                else:
                    terms[expo] = s
        return MultiPoly(self.ring, terms)

    def __neg__(self) -> "MultiPoly":
        return MultiPoly(self.ring, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other: "MultiPoly") -> "MultiPoly":
        return self + (-other)

    def __mul__(self, other: "MultiPoly") -> "MultiPoly":
        self._check_ring(other)
        if not self.terms or not other.terms:
            return MultiPoly.zero(self.ring)
        a, b = self.terms, other.terms
        if len(a) > len(b):
            a, b = b, a
        terms: dict[tuple[int, ...], GaussianRational] = {}
        for ea, ca in a.items():
            for eb, cb in b.items():
                expo = tuple(x + y for x, y in zip(ea, eb))
                prod = ca * cb
                acc = terms.get(expo)
                if acc is None:
                    terms[expo] = prod
                else:
                    s = acc + prod
                    if s.is_zero():
                        del terms[expo]
                    else:
                        terms[expo] = s
        return MultiPoly(self.ring, terms)

    def __pow__(self, n: int) -> "MultiPoly":
        if not isinstance(n, int) or n < 0:
            raise ValueError("exponent must be a nonnegative integer")
        result = MultiPoly.constant(self.ring, 1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base if n > 1 else base
            n >>= 1
        return result

    def scale(self, c: CoeffLike) -> "MultiPoly":
        c = _as_coeff(c)
        if c.is_zero():
            return MultiPoly.zero(self.ring)
        return MultiPoly(self.ring, {e: k * c for e, k in self.terms.items()})

    def conjugate(self) -> "MultiPoly":
        """Coefficient-wise complex conjugation (an involution)."""
        return MultiPoly(self.ring, {e: c.conj() for e, c in self.terms.items()})

    def partial(self, var: Union[int, str]) -> "MultiPoly":
        idx = var if isinstance(var, int) else self.ring.index(var)
        terms: dict[tuple[int, ...], GaussianRational] = {}
        for expo, coeff in self.terms.items():
            k = expo[idx]
            if k == 0:
                continue
            new = list(expo)
            new[idx] = k - 1
            terms[tuple(new)] = coeff.scale(k)
        return MultiPoly(self.ring, terms)

    # -- evaluation and substitution ------------------------------------------

    def eval(self, point: Sequence[CoeffLike]) -> GaussianRational:
        if len(point) != self.ring.arity:
            raise ValueError("point arity mismatch")
        vals = [_as_coeff(p) for p in point]
        total = GR_ZERO
        for expo, coeff in self.terms.items():
            acc = coeff
            for v, e in zip(vals, expo):
                for _ in range(e):
                    acc = acc * v
            total = total + acc
        return total

    def eval_rational(self, point: Sequence[RationalLike]) -> Fraction:
        value = self.eval([GaussianRational(as_fraction(p)) for p in point])
        if value.im:
            raise ArithmeticError("evaluation produced an imaginary value")
        return value.re

    def substitute(self, images: Sequence["MultiPoly"]) -> "MultiPoly":
        """Ring morphism sending variable k to images[k] (all in one target ring)."""
        if len(images) != self.ring.arity:
            raise ValueError("need one image per variable")
        if not images:
            raise ValueError("substitution needs a target ring")
        target = images[0].ring
        for img in images:
            if img.ring != target:
                raise ValueError("images live in different rings")
        powers: list[dict[int, MultiPoly]] = [dict() for _ in images]
        one = MultiPoly.constant(target, 1)

        def power(k: int, e: int) -> MultiPoly:
            if e == 0:
                return one
            cache = powers[k]
            got = cache.get(e)
            if got is None:
                got = images[k] ** e
                cache[e] = got
            return got

        total = MultiPoly.zero(target)
        for expo, coeff in self.terms.items():
            term = MultiPoly.constant(target, coeff)
            for k, e in enumerate(expo):
                if e:
                    term = term * power(k, e)
            total = total + term
        return total

    def lift(self, target: Ring) -> "MultiPoly":
        """Reinterpret in a larger ring containing the same variable names."""
        idx = [target.index(v) for v in self.ring.variables]
        terms = {}
        for expo, coeff in self.terms.items():
            new = [0] * target.arity
            for k, e in zip(idx, expo):
                new[k] = e
            terms[tuple(new)] = coeff
        return MultiPoly(target, terms)

    # -- term order -------------------------------------------------------------

    def _glex_key(self, expo: tuple[int, ...]) -> tuple:
        return (self.ring.weighted_degree(expo), expo)

    def sorted_terms(self) -> list[tuple[tuple[int, ...], GaussianRational]]:
        """Terms in descending graded-lex order (grading by ring weights)."""
        return sorted(self.terms.items(), key=lambda t: self._glex_key(t[0]), reverse=True)

    def leading_term(self) -> tuple[tuple[int, ...], GaussianRational]:
        if not self.terms:
            raise ValueError("zero polynomial has no leading term")
        expo = max(self.terms, key=self._glex_key)
        return expo, self.terms[expo]

    def leading_coefficient(self) -> GaussianRational:
        return self.leading_term()[1]

    # -- exact division -----------------------------------------------------------

    def divide_exact(self, divisor: "MultiPoly") -> "MultiPoly":
        """Exact quotient self / divisor; raises ArithmeticError if inexact.

        Long division by the graded-lex leading term.  In an integral domain
        the leading monomial of the remainder strictly decreases, so this
        terminates, and exactness fails loudly.
        """
        self._check_ring(divisor)
        if divisor.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        if self.is_zero():
            return self
        d_expo, d_coeff = divisor.leading_term()
        quotient: dict[tuple[int, ...], GaussianRational] = {}
        rem = self
        while rem.terms:
            r_expo, r_coeff = rem.leading_term()
            step = tuple(a - b for a, b in zip(r_expo, d_expo))
            if any(e < 0 for e in step):
                raise ArithmeticError("polynomial division is not exact")
            q = r_coeff / d_coeff
            quotient[step] = q
            mono = MultiPoly(self.ring, {step: q})
            rem = rem - mono * divisor
        return MultiPoly(self.ring, quotient)

    # -- formatting ------------------------------------------------------------

    def __str__(self) -> str:
        return format_poly(self)

    def __repr__(self) -> str:
        return f"MultiPoly({self})"


# ---------------------------------------------------------------------------
# Parsing and formatting
# ---------------------------------------------------------------------------

_OPS = set("+-*^/()")


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    tokens = []
    k = 0
    while k < len(text):
        ch = text[k]
        if ch.isspace():
            k += 1
            continue
        if ch in _OPS:
            tokens.append(("op", ch, k))
            k += 1
            continue
        if ch.isdigit():
            start = k
            while k < len(text) and text[k].isdigit():
                k += 1
            tokens.append(("int", text[start:k], start))
            continue
        if ch.isalpha() or ch == "_":
            start = k
            while k < len(text) and (text[k].isalnum() or text[k] == "_"):
                k += 1
            tokens.append(("name", text[start:k], start))
            continue
        raise ParseError(f"unexpected character {ch!r} at position {k}")
    return tokens


class _Parser:
    def __init__(self, tokens: list[tuple[str, str, int]], ring: Ring):
        self.tokens = tokens
        self.ring = ring
        self.pos = 0

    def peek(self) -> Optional[tuple[str, str, int]]:
        return self.tokens[self.pos] if self.pos < len(self.tokens) else None

    def next(self) -> tuple[str, str, int]:
        tok = self.peek()
        if tok is None:
            raise ParseError("unexpected end of input")
        self.pos += 1
        return tok

    def expect_op(self, op: str) -> None:
        tok = self.next()
        if tok[0] != "op" or tok[1] != op:
            raise ParseError(f"expected {op!r} at position {tok[2]}")

    def parse(self) -> MultiPoly:
        poly = self.expr()
        tok = self.peek()
        if tok is not None:
            raise ParseError(f"unexpected token {tok[1]!r} at position {tok[2]}")
        return poly

    def expr(self) -> MultiPoly:
        value = self.term()
        while True:
            tok = self.peek()
            if tok is None or tok[0] != "op" or tok[1] not in "+-":
                return value
            self.next()
            rhs = self.term()
            value = value + rhs if tok[1] == "+" else value - rhs

    def term(self) -> MultiPoly:
        value = self.factor()
        while True:
            tok = self.peek()
            if tok is None or tok[0] != "op" or tok[1] != "*":
                return value
            self.next()
            value = value * self.factor()

    def factor(self) -> MultiPoly:
        tok = self.peek()
        if tok is not None and tok[0] == "op" and tok[1] in "+-":
            self.next()
            inner = self.factor()
            return inner if tok[1] == "+" else -inner
        return self.power()

    def power(self) -> MultiPoly:
        base = self.atom()
        tok = self.peek()
        if tok is not None and tok[0] == "op" and tok[1] == "^":
            self.next()
            exp_tok = self.next()
            if exp_tok[0] != "int":
                raise ParseError(f"exponent must be an integer at position {exp_tok[2]}")
            return base ** int(exp_tok[1])
        return base

    def atom(self) -> MultiPoly:
        tok = self.next()
        kind, text, pos = tok
        if kind == "op" and text == "(":
            inner = self.expr()
            self.expect_op(")")
            return inner
        if kind == "int":
            value = Fraction(int(text))
            nxt = self.peek()
            if nxt is not None and nxt[0] == "op" and nxt[1] == "/":
                self.next()
                den_tok = self.next()
                if den_tok[0] != "int":
                    raise ParseError(
                        f"rational literal needs an integer denominator at position {den_tok[2]}"
                    )
                den = int(den_tok[1])
                if den == 0:
                    raise ParseError(f"zero denominator at position {den_tok[2]}")
                value /= den
            return MultiPoly.constant(self.ring, value)
        if kind == "name":
            if text == "i" and self.ring.gaussian:
                return MultiPoly.constant(self.ring, GaussianRational(0, 1))
            if text == "i" and "i" not in self.ring.variables:
                raise ParseError("imaginary coefficient in a non-gaussian ring")
            if text not in self.ring.variables:
                raise ParseError(f"unknown variable {text!r} at position {pos}")
            return MultiPoly.variable(self.ring, text)
        raise ParseError(f"unexpected token {text!r} at position {pos}")


def parse(text: str, ring: Ring) -> MultiPoly:
    """Parse an expression in the polynomial grammar into ``ring``."""
    tokens = _tokenize(text)
    if not tokens:
        raise ParseError("empty polynomial text")
    return _Parser(tokens, ring).parse()


def _monomial_str(ring: Ring, expo: tuple[int, ...]) -> str:
    parts = []
    for name, e in zip(ring.variables, expo):
        if e == 1:
            parts.append(name)
        elif e > 1:
            parts.append(f"{name}^{e}")
    return "*".join(parts)


def _coeff_pieces(coeff: GaussianRational, with_mono: bool) -> tuple[int, str]:
    """(sign, magnitude-string); magnitude "" means an implicit 1 factor."""
    if not coeff.im:
        sign = 1 if coeff.re > 0 else -1
        mag = abs(coeff.re)
        if mag == 1 and with_mono:
            return sign, ""
        return sign, str(mag)
    if not coeff.re:
        sign = 1 if coeff.im > 0 else -1
        mag = abs(coeff.im)
        body = "i" if mag == 1 else f"{mag}*i"
        return sign, body
    # Mixed complex coefficient: parenthesized, sign carried inside.
    return 1, f"({coeff})"


def format_poly(poly: MultiPoly) -> str:
    """Canonical text form (graded-lex descending); parse round-trips it."""
    if poly.is_zero():
        return "0"
    out: list[str] = []
    for expo, coeff in poly.sorted_terms():
        mono = _monomial_str(poly.ring, expo)
        sign, body = _coeff_pieces(coeff, with_mono=bool(mono))
        if body and mono:
            chunk = f"{body}*{mono}"
        else:
            chunk = body or mono or "1"
        if not out:
            out.append(chunk if sign > 0 else f"-{chunk}")
        else:
            out.append(f"+ {chunk}" if sign > 0 else f"- {chunk}")
    return " ".join(out)


# ---------------------------------------------------------------------------
# Dense univariate polynomials over Q
# ---------------------------------------------------------------------------


class UniPoly:
    """Dense univariate polynomial over Q, coefficients ascending by degree."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Sequence[RationalLike]):
        cs = [as_fraction(c) for c in coeffs]
        while cs and not cs[-1]:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    def __setattr__(self, name, value):
        raise AttributeError("UniPoly is immutable")

    @classmethod
    def zero(cls) -> "UniPoly":
        return cls(())

    @classmethod
    def from_roots(cls, roots: Sequence[RationalLike], lead: RationalLike = 1) -> "UniPoly":
        poly = cls([lead])
        for r in roots:
            poly = poly * cls([-as_fraction(r), 1])
        return poly

    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    @property
    def degree(self) -> int:
        """Degree; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def leading(self) -> Fraction:
        if not self.coeffs:
            raise ValueError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def __eq__(self, other) -> bool:
        if not isinstance(other, UniPoly):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __add__(self, other: "UniPoly") -> "UniPoly":
        n = max(len(self.coeffs), len(other.coeffs))
        return UniPoly(
            [
                (self.coeffs[k] if k < len(self.coeffs) else 0)
                + (other.coeffs[k] if k < len(other.coeffs) else 0)
                for k in range(n)
            ]
        )

    def __neg__(self) -> "UniPoly":
        return UniPoly([-c for c in self.coeffs])

    def __sub__(self, other: "UniPoly") -> "UniPoly":
        return self + (-other)

    def __mul__(self, other: "UniPoly") -> "UniPoly":
        if not self.coeffs or not other.coeffs:
            return UniPoly.zero()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for a, ca in enumerate(self.coeffs):
            if not ca:
                continue
            for b, cb in enumerate(other.coeffs):
                if cb:
                    out[a + b] += ca * cb
        return UniPoly(out)

    def scale(self, c: RationalLike) -> "UniPoly":
        c = as_fraction(c)
        return UniPoly([k * c for k in self.coeffs])

    def __divmod__(self, other: "UniPoly") -> tuple["UniPoly", "UniPoly"]:
        if other.is_zero():
            raise ZeroDivisionError("univariate division by zero")
        rem = list(self.coeffs)
        dq = len(self.coeffs) - len(other.coeffs)
        if dq < 0:
            return UniPoly.zero(), self
        quo = [Fraction(0)] * (dq + 1)
        lead = other.coeffs[-1]
        for k in range(dq, -1, -1):
            c = rem[k + len(other.coeffs) - 1] / lead
            quo[k] = c
            if c:
                for j, oc in enumerate(other.coeffs):
                    rem[k + j] -= c * oc
        return UniPoly(quo), UniPoly(rem)

    def __floordiv__(self, other: "UniPoly") -> "UniPoly":
        return divmod(self, other)[0]

    def __mod__(self, other: "UniPoly") -> "UniPoly":
        return divmod(self, other)[1]

    def divide_exact(self, other: "UniPoly") -> "UniPoly":
        quo, rem = divmod(self, other)
        if not rem.is_zero():
            raise ArithmeticError("univariate division is not exact")
        return quo

    def derivative(self) -> "UniPoly":
        return UniPoly([k * c for k, c in enumerate(self.coeffs)][1:])

    def eval(self, x: RationalLike) -> Fraction:
        x = as_fraction(x)
        total = Fraction(0)
        for c in reversed(self.coeffs):
            total = total * x + c
        return total

    def shift(self, q: RationalLike) -> "UniPoly":
        """t -> t + q."""
        q = as_fraction(q)
        result = UniPoly.zero()
        base = UniPoly([q, 1])
        power = UniPoly([1])
        for c in self.coeffs:
            result = result + power.scale(c)
            power = power * base
        return result

    # -- integer normal forms (coefficient-growth control) -------------------

    def _int_coeffs(self) -> list[int]:
        if not self.coeffs:
            return []
        lcm = 1
        for c in self.coeffs:
            lcm = lcm * c.denominator // _gcd(lcm, c.denominator)
        return [int(c * lcm) for c in self.coeffs]

    def primitive(self) -> "UniPoly":
        """Integer-primitive associate with positive leading coefficient."""
        ints = self._int_coeffs()
        if not ints:
            return UniPoly.zero()
        g = 0
        for c in ints:
            g = _gcd(g, abs(c))
        if ints[-1] < 0:
            g = -g
        return UniPoly([Fraction(c, g) for c in ints])

    def monic(self) -> "UniPoly":
        if self.is_zero():
            return self
        return self.scale(1 / self.leading())

    def gcd(self, other: "UniPoly") -> "UniPoly":
        """Primitive gcd via a primitive pseudo-remainder sequence."""
        a, b = self.primitive(), other.primitive()
        if a.is_zero():
            return b
        if b.is_zero():
            return a
        if a.degree < b.degree:
            a, b = b, a
        fa, fb = a._int_coeffs(), b._int_coeffs()
        while fb:
            fr = _int_prem(fa, fb)
            fa, fb = fb, _int_primitive(fr)
        return UniPoly(fa).primitive()

    def squarefree_part(self) -> "UniPoly":
        if self.is_zero():
            raise ValueError("zero polynomial has no squarefree part")
        g = self.gcd(self.derivative())
        return self.divide_exact(g).primitive()

    def squarefree_decomposition(self) -> list[tuple["UniPoly", int]]:
        """Yun's algorithm: pairwise-coprime squarefree factors with
        multiplicities; the product of g^m recovers self up to a constant."""
        if self.is_zero():
            raise ValueError("zero polynomial")
        f = self.primitive()
        if f.degree == 0:
            return []
        df = f.derivative()
        a = f.gcd(df)
        out: list[tuple[UniPoly, int]] = []
        v = f.divide_exact(a)
        w = df.divide_exact(a)
        m = 1
        while v.degree > 0:
            z = w - v.derivative()
            g = v.gcd(z)
            if g.degree > 0:
                out.append((g.primitive(), m))
            v = v.divide_exact(g)
            w = z.divide_exact(g)
            m += 1
        return out

    def format(self, var: str = "t") -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for k in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[k]
            if not c:
                continue
            mono = "" if k == 0 else (var if k == 1 else f"{var}^{k}")
            mag = abs(c)
            body = str(mag) if not mono or mag != 1 else ""
            chunk = f"{body}*{mono}" if body and mono else (body or mono)
            if not parts:
                parts.append(chunk if c > 0 else f"-{chunk}")
            else:
                parts.append(f"+ {chunk}" if c > 0 else f"- {chunk}")
        return " ".join(parts)

    def __str__(self) -> str:
        return self.format()

    def __repr__(self) -> str:
        return f"UniPoly({self.format()})"


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return abs(a)


def _int_primitive(coeffs: list[int]) -> list[int]:
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    if not coeffs:
        return []
    g = 0
    for c in coeffs:
        g = _gcd(g, c)
    if coeffs[-1] < 0:
        g = -g
    return [c // g for c in coeffs]


def _int_prem(a: list[int], b: list[int]) -> list[int]:
    """Pseudo-remainder of integer coefficient lists (ascending)."""
    r = list(a)
    db = len(b) - 1
    lb = b[-1]
    while len(r) - 1 >= db and any(r):
        while r and r[-1] == 0:
            r.pop()
        if len(r) - 1 < db:
            break
        lr = r[-1]
        shift = len(r) - 1 - db
        r = [c * lb for c in r]
        for j in range(db + 1):
            r[shift + j] -= lr * b[j]
        while r and r[-1] == 0:
            r.pop()
    return r


# ---------------------------------------------------------------------------
# Geometric operations used throughout
# ---------------------------------------------------------------------------


def restrict_to_line(
    h: MultiPoly, e: Sequence[RationalLike], v: Sequence[RationalLike]
) -> UniPoly:
    """The univariate restriction t -> h(t*e - v).

    For homogeneous h with h(e) != 0 the result has degree deg(h) with
    leading coefficient h(e).
    """
    ring = h.ring
    if len(e) != ring.arity or len(v) != ring.arity:
        raise ValueError("direction/point arity mismatch")
    if not h.is_real():
        raise ValueError("restriction needs real coefficients")
    ev = [as_fraction(c) for c in e]
    vv = [as_fraction(c) for c in v]
    lines = [UniPoly([-vv[k], ev[k]]) for k in range(ring.arity)]
    total = UniPoly.zero()
    cache: list[dict[int, UniPoly]] = [dict() for _ in lines]

    def line_power(k: int, n: int) -> UniPoly:
        if n == 0:
            return UniPoly([1])
        got = cache[k].get(n)
        if got is None:
            got = _unipow(lines[k], n)
            cache[k][n] = got
        return got

    for expo, coeff in h.terms.items():
        term = UniPoly([coeff.re])
        for k, n in enumerate(expo):
            if n:
                term = term * line_power(k, n)
        total = total + term
    return total


def _unipow(p: UniPoly, n: int) -> UniPoly:
    result = UniPoly([1])
    base = p
    while n:
        if n & 1:
            result = result * base
        n >>= 1
        if n:
            base = base * base
    return result


def directional_derivative(h: MultiPoly, e: Sequence[RationalLike]) -> MultiPoly:
    """D_e h = sum_k e_k * dh/dx_k; homogeneous of degree deg(h) - 1."""
    ring = h.ring
    if len(e) != ring.arity:
        raise ValueError("direction arity mismatch")
    if any(w != 1 for w in ring.weights):
        raise ValueError("directional derivative needs an unweighted ring")
    total = MultiPoly.zero(ring)
    for k, c in enumerate(e):
        c = as_fraction(c)
        if c:
            total = total + h.partial(k).scale(c)
    return total


# ---------------------------------------------------------------------------
# Squares in R[x]
# ---------------------------------------------------------------------------


def real_square_factorization(p: MultiPoly) -> Optional[tuple[Fraction, MultiPoly]]:
    """If p = c * q^2 with c a positive rational and q rational, return (c, q).

    This decides whether p is the square of a *real* polynomial: p in Q[x]
    is a square in R[x] exactly when it factors this way.  The square root is
    extracted greedily from the graded-lex leading term; any failure along
    the way certifies that no square root exists.
    """
    if p.is_zero():
        return (Fraction(1), p)
    if not p.is_real():
        return None
    lead_expo, lead_coeff = p.leading_term()
    if lead_coeff.re <= 0 or any(e % 2 for e in lead_expo):
        return None
    # Work on the primitive integer part: p = content * pp, and pp must be a
    # rational square for p to be a real square.
    content = _poly_content(p)
    pp = p.scale(Fraction(1, 1) / content)
    half = tuple(e // 2 for e in lead_expo)
    pp_lead = pp.terms[lead_expo].re
    root_lead = _rational_sqrt(pp_lead)
    if root_lead is None:
        return None
    q = MultiPoly(p.ring, {half: GaussianRational(root_lead)})
    rem = pp - q * q
    double_lead = GaussianRational(2 * root_lead)
    half_key = (p.ring.weighted_degree(half), half)
    while rem.terms:
        r_expo, r_coeff = rem.leading_term()
        step = tuple(a - b for a, b in zip(r_expo, half))
        if any(e < 0 for e in step):
            return None
        step_key = (p.ring.weighted_degree(step), step)
        if step_key >= half_key:
            # The correction term would not be below the root's leading
            # monomial, so no square root exists.
            return None
        u = MultiPoly(p.ring, {step: r_coeff / double_lead})
        q = q + u
        rem = pp - q * q
    return (content, q)


def _poly_content(p: MultiPoly) -> Fraction:
    """Positive rational content of a real polynomial (gcd of coefficients)."""
    num = 0
    den = 1
    for c in p.terms.values():
        num = _gcd(num, abs(c.re.numerator))
        den = den * c.re.denominator // _gcd(den, c.re.denominator)
    return Fraction(num, den)


def _rational_sqrt(c: Fraction) -> Optional[Fraction]:
    if c < 0:
        return None
    import math as _math

    n = _math.isqrt(c.numerator)
    d = _math.isqrt(c.denominator)
    if n * n == c.numerator and d * d == c.denominator:
        return Fraction(n, d)
    return None
