"""Hyperbolicity and interlacer testing on sampled rational lines, plus
exact certification from a definite pencil.

A homogeneous h is hyperbolic with respect to e when every line restriction
t -> h(t*e - v) is real-rooted.  Sampling integer directions v can only ever
refute (exactly, with a re-checkable witness line) or report
"no-counterexample"; a verified definite pencil upgrades that to a theorem,
since the minimal polynomial of a hermitian matrix has only real zeros.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .detrep import DetRepReport, verify_pencil
from .polyring import MultiPoly, UniPoly, restrict_to_line
from .realroots import (
    DegreeMismatchError,
    NotRealRootedError,
    interlaces_univariate,
    is_real_rooted,
)
from .scalars import ConstMatrix, RationalLike, as_fraction

STATUS_NO_COUNTEREXAMPLE = "no-counterexample"
STATUS_REFUTED = "refuted"

DEFAULT_SAMPLES = 500
DEFAULT_BOX = 50

REASON_NOT_REAL_ROOTED = "restriction-not-real-rooted"
REASON_INTERLACER_NOT_REAL_ROOTED = "interlacer-restriction-not-real-rooted"
REASON_INTERLACING_FAILS = "interlacing-fails"


@dataclass(frozen=True)
class Witness:
    """A refutation: the sampled line v, the restriction of the subject
    polynomial along it, and what failed there."""

    v: tuple[Fraction, ...]
    restricted: UniPoly
    reason: str

    def to_json_dict(self) -> dict:
        return {
            "v": [str(c) for c in self.v],
            "restricted_poly": self.restricted.format("t"),
            "reason": self.reason,
        }


@dataclass(frozen=True)
class SampledVerdict:
    status: str
    samples_run: int
    seed: int
    witness: Optional[Witness] = None

    def refuted(self) -> bool:
        return self.status == STATUS_REFUTED

    def to_json_dict(self) -> dict:
        out = {"status": self.status, "samples": self.samples_run, "seed": self.seed}
        if self.witness is not None:
            out["witness"] = self.witness.to_json_dict()
        return out


def sample_direction(seed: int, index: int, arity: int, box: int) -> tuple[int, ...]:
    """Deterministic integer point in [-box, box]^arity, independent of
    sample order: digits of SHA-256(seed:index) in base 2*box+1."""
    digest = hashlib.sha256(f"{seed}:{index}".encode("ascii")).digest()
    value = int.from_bytes(digest, "big")
    base = 2 * box + 1
    coords = []
    for _ in range(arity):
        value, digit = divmod(value, base)
        coords.append(digit - box)
    return tuple(coords)


def _check_inputs(h: MultiPoly, e: Sequence[RationalLike], name: str = "h") -> list[Fraction]:
    ring = h.ring
    if any(w != 1 for w in ring.weights):
        raise ValueError("sampling needs an unweighted ring")
    if not h.is_real():
        raise ValueError(f"{name} must have real coefficients")
    if h.is_zero() or not h.is_weighted_homogeneous():
        raise ValueError(f"{name} must be nonzero and homogeneous")
    point = [as_fraction(c) for c in e]
    if len(point) != ring.arity:
        raise ValueError("direction arity mismatch")
    if not h.eval_rational(point):
        raise ValueError(f"{name}(e) = 0: hyperbolicity requires {name}(e) != 0")
    return point


def is_hyperbolic_sampled(
    h: MultiPoly,
    e: Sequence[RationalLike],
    samples: int = DEFAULT_SAMPLES,
    seed: int = 0,
    box: int = DEFAULT_BOX,
) -> SampledVerdict:
    """Test real-rootedness of h(t*e - v) over sampled integer lines v.

    The first failing line yields status "refuted" with an exact witness;
    otherwise "no-counterexample" (the universal quantifier over all real v
    is not decided by sampling).  The sample v = e is skipped.
    """
    point = _check_inputs(h, e)
    run = 0
    for index in range(samples):
        v = sample_direction(seed, index, h.ring.arity, box)
        if all(Fraction(c) == pc for c, pc in zip(v, point)):
            continue
        run += 1
        restricted = restrict_to_line(h, point, v)
        if not is_real_rooted(restricted):
            witness = Witness(tuple(Fraction(c) for c in v), restricted, REASON_NOT_REAL_ROOTED)
            return SampledVerdict(STATUS_REFUTED, run, seed, witness)
    return SampledVerdict(STATUS_NO_COUNTEREXAMPLE, run, seed)


def interlaces_sampled(
    g: MultiPoly,
    h: MultiPoly,
    e: Sequence[RationalLike],
    samples: int = DEFAULT_SAMPLES,
    seed: int = 0,
    box: int = DEFAULT_BOX,
) -> SampledVerdict:
    """Test the weak interlacing chain of g against h over sampled lines.

    Along each line the roots of the degree d restriction of h and the
    degree d-1 restriction of g must form the weak alternating chain.
    """
    point = _check_inputs(h, e)
    _check_inputs(g, e, name="g")
    if g.ring != h.ring:
        raise ValueError("g and h must share one ring")
    if g.weighted_degree() != h.weighted_degree() - 1:
        raise ValueError("deg(g) must be deg(h) - 1")
    run = 0
    for index in range(samples):
        v = sample_direction(seed, index, h.ring.arity, box)
        if all(Fraction(c) == pc for c, pc in zip(v, point)):
            continue
        run += 1
        rest_h = restrict_to_line(h, point, v)
        rest_g = restrict_to_line(g, point, v)
        reason = None
        try:
            if not interlaces_univariate(rest_h, rest_g):
                reason = REASON_INTERLACING_FAILS
        except NotRealRootedError as err:
            reason = (
                REASON_NOT_REAL_ROOTED if err.which == "f" else REASON_INTERLACER_NOT_REAL_ROOTED
            )
        if reason is not None:
            witness = Witness(tuple(Fraction(c) for c in v), rest_h, reason)
            return SampledVerdict(STATUS_REFUTED, run, seed, witness)
    return SampledVerdict(STATUS_NO_COUNTEREXAMPLE, run, seed)


class CertificationError(ValueError):
    """Pencil verification failed; the full report is attached."""

    def __init__(self, report: DetRepReport):
        details = "; ".join(f"{f.name}: {f.witness}" for f in report.failures)
        super().__init__(f"pencil does not certify hyperbolicity: {details}")
        self.report = report


@dataclass(frozen=True)
class PencilCertificate:
    """An exact hyperbolicity certificate: a verified definite pencil with
    det(sum x_i A_i) = scalar * h^power and sum e_i A_i positive definite.

    Hyperbolicity of h with respect to e (and to every direction in the
    connected component of e) is then a theorem; no sampling is involved.
    """

    h: MultiPoly
    power: int
    e: tuple[Fraction, ...]
    pencil: tuple[ConstMatrix, ...]
    scalar: Fraction
    report: DetRepReport

    def to_json_dict(self) -> dict:
        return {
            "h": str(self.h),
            "power": self.power,
            "e": [str(c) for c in self.e],
            "scalar": str(self.scalar),
            "kind": self.pencil[0].kind,
            "pencil": [mat.to_rows() for mat in self.pencil],
            "report": self.report.to_json_dict(),
        }


def certify_from_pencil(
    h: MultiPoly,
    r: int,
    e: Sequence[RationalLike],
    pencil: Sequence[ConstMatrix],
    method: str = "auto",
) -> PencilCertificate:
    """Verify the pencil and wrap it as an exact hyperbolicity certificate.

    Raises :class:`CertificationError` (with the report) on any failed check.
    """
    report = verify_pencil(pencil, h, r, e, up_to_scalar=True, method=method)
    if not report.ok:
        raise CertificationError(report)
    return PencilCertificate(
        h=h,
        power=r,
        e=tuple(as_fraction(c) for c in e),
        pencil=tuple(pencil),
        scalar=report.scalar,
        report=report,
    )
