"""File and CLI wire formats.

Polynomial files carry a ring header followed by one expression in the
polynomial grammar:

    ring: vars=x0,x1,x2 weights=1,1,1 gaussian=false
    x0^2 - x1^2 - x2^2

Directions are comma-separated rationals ("1,0,0" or "1/2,-3,0").  Pencils
serialize as JSON {"vars": [...], "kind": ..., "gaussian": ...,
"matrices": [rows of "a+b*i" strings, one block per variable]}.
"""

from __future__ import annotations

import json
from fractions import Fraction
from pathlib import Path
from typing import Sequence, Union

from .polyring import MultiPoly, ParseError, Ring, parse
from .scalars import KIND_NONE, ConstMatrix, GaussianRational, as_fraction

PathLike = Union[str, Path]


def parse_ring_header(line: str) -> Ring:
    body = line.strip()
    if not body.startswith("ring:"):
        raise ParseError("polynomial file must start with a 'ring:' header line")
    fields = {}
    for chunk in body[len("ring:") :].split():
        if "=" not in chunk:
            raise ParseError(f"malformed ring header field {chunk!r}")
        key, value = chunk.split("=", 1)
        fields[key] = value
    if "vars" not in fields:
        raise ParseError("ring header needs a vars=... field")
    names = tuple(v for v in fields["vars"].split(",") if v)
    if "weights" in fields:
        try:
            weights = tuple(int(w) for w in fields["weights"].split(",") if w)
        except ValueError as err:
            raise ParseError(f"bad weights in ring header: {err}") from None
    else:
        weights = (1,) * len(names)
    gaussian = fields.get("gaussian", "false").lower()
    if gaussian not in ("true", "false"):
        raise ParseError("gaussian must be true or false")
    try:
        return Ring(names, weights, gaussian == "true")
    except ValueError as err:
        raise ParseError(str(err)) from None


def parse_poly_text(text: str) -> MultiPoly:
    lines = text.strip().splitlines()
    if not lines:
        raise ParseError("empty polynomial file")
    ring = parse_ring_header(lines[0])
    body = " ".join(lines[1:]).strip()
    if not body:
        raise ParseError("polynomial file has no expression after the header")
    return parse(body, ring)


def load_poly_file(path: PathLike) -> MultiPoly:
    return parse_poly_text(Path(path).read_text(encoding="ascii"))


def dump_poly_text(poly: MultiPoly) -> str:
    ring = poly.ring
    header = (
        f"ring: vars={','.join(ring.variables)}"
        f" weights={','.join(str(w) for w in ring.weights)}"
        f" gaussian={'true' if ring.gaussian else 'false'}"
    )
    return f"{header}\n{poly}\n"


def parse_squares_text(text: str) -> list[MultiPoly]:
    lines = [ln for ln in text.strip().splitlines() if ln.strip()]
    if len(lines) < 2:
        raise ParseError("squares file needs a ring header and at least one polynomial")
    ring = parse_ring_header(lines[0])
    return [parse(ln, ring) for ln in lines[1:]]


def load_squares_file(path: PathLike) -> list[MultiPoly]:
    return parse_squares_text(Path(path).read_text(encoding="ascii"))


def parse_point(text: str) -> tuple[Fraction, ...]:
    try:
        return tuple(as_fraction(c) for c in text.split(","))
    except (ValueError, ZeroDivisionError) as err:
        raise ParseError(f"bad point {text!r}: {err}") from None


def pencil_to_json_dict(
    matrices: Sequence[ConstMatrix], variables: Sequence[str], gaussian: bool
) -> dict:
    if len(matrices) != len(variables):
        raise ValueError("one matrix per variable required")
    kinds = {m.kind for m in matrices}
    kind = kinds.pop() if len(kinds) == 1 else KIND_NONE
    return {
        "vars": list(variables),
        "gaussian": gaussian,
        "kind": kind,
        "matrices": [m.to_rows() for m in matrices],
    }


def pencil_from_json(data: Union[str, dict]) -> tuple[list[ConstMatrix], Ring]:
    if isinstance(data, str):
        data = json.loads(data)
    names = tuple(data["vars"])
    gaussian = bool(data.get("gaussian", False))
    ring = Ring.standard(names, gaussian)
    kind = data.get("kind", KIND_NONE)
    matrices = []
    for block in data["matrices"]:
        rows = [[GaussianRational.parse(cell) for cell in row] for row in block]
        matrices.append(ConstMatrix(rows, kind))
    if len(matrices) != len(names):
        raise ParseError("pencil needs one constant matrix per variable")
    return matrices, ring
