"""P-time event graph model: parsing, validation, characteristic matrices,
and finite-trajectory consistency checking."""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence, Union

from .tropical import (
    NEG_INF,
    POS_INF,
    ShapeError,
    TropicalError,
    TropicalMatrix,
    Value,
    as_value,
    is_finite,
)


class PTEGError(ValueError):
    """Base class for model-level errors."""


class SchemaError(PTEGError):
    """The input document does not match the expected JSON shape."""


class MarkingNotBinary(PTEGError):
    """A place carries a marking outside {0, 1}."""


class EmptyNet(PTEGError):
    """The net declares no transitions."""


class IntervalInverted(PTEGError):
    """A place has lower bound greater than upper bound."""


@dataclass(frozen=True)
class Place:
    """A place with one upstream and one downstream transition and a
    sojourn-time window [lower, upper]."""

    source: int
    target: int
    marking: int
    lower: Fraction
    upper: Value  # Fraction or POS_INF


@dataclass(frozen=True)
class PTEG:
    transitions: tuple
    places: tuple

    @property
    def n(self) -> int:
        return len(self.transitions)


@dataclass(frozen=True)
class CharacteristicMatrices:
    """A0/A1 (max-plus lower bounds) and B0/B1 (min-plus upper bounds),
    indexed [downstream, upstream], split by initial marking."""

    a0: TropicalMatrix
    a1: TropicalMatrix
    b0: TropicalMatrix
    b1: TropicalMatrix

    @property
    def n(self) -> int:
        return self.a0.rows


@dataclass(frozen=True)
class TrajectoryWindow:
    """Dater vectors x(0..K); each entry is an exact firing time."""

    daters: tuple  # tuple of tuples of Fraction

    @property
    def horizon(self) -> int:
        return len(self.daters) - 1

    @property
    def n(self) -> int:
        return len(self.daters[0])


#: Constraint families in fixed diagnostic order.
KINDS = ("A0", "B0", "A1", "B1", "NONDECREASING")


@dataclass(frozen=True)
class ValidationResult:
    consistent: bool
    k: Optional[int] = None
    kind: Optional[str] = None
    row: Optional[int] = None


def _rational_field(obj, key, where):
    try:
        v = as_value(obj[key])
    except (TropicalError, ValueError, ZeroDivisionError) as exc:
        raise SchemaError(f"{where}: bad rational in {key!r}: {exc}") from None
    return v


def parse_pteg(document: Union[str, dict]) -> PTEG:
    """Parse and validate a P-TEG JSON document.

    Accepts the JSON text itself or an already-decoded dict.  Decimal
    literals are parsed exactly (no binary-float rounding); rational
    strings use the "p/q" form and "inf" denotes an unbounded window.
    """
    if isinstance(document, str):
        try:
            document = json.loads(document, parse_float=Fraction)
        except json.JSONDecodeError as exc:
            raise SchemaError(f"invalid JSON: {exc}") from None
    if not isinstance(document, dict):
        raise SchemaError("top-level value must be an object")
    try:
        transitions = document["transitions"]
        raw_places = document["places"]
    except KeyError as exc:
        raise SchemaError(f"missing key {exc}") from None
    if not isinstance(transitions, list) or not all(isinstance(t, str) for t in transitions):
        raise SchemaError('"transitions" must be a list of strings')
    if len(transitions) == 0:
        raise EmptyNet("a P-TEG needs at least one transition")
    if len(set(transitions)) != len(transitions):
        raise SchemaError("duplicate transition labels")
    if not isinstance(raw_places, list):
        raise SchemaError('"places" must be a list')
    index = {t: i for i, t in enumerate(transitions)}

    places = []
    for pos, rp in enumerate(raw_places):
        where = f"places[{pos}]"
        if not isinstance(rp, dict):
            raise SchemaError(f"{where}: must be an object")
        for key in ("from", "to", "marking", "lb", "ub"):
            if key not in rp:
                raise SchemaError(f"{where}: missing key {key!r}")
        if rp["from"] not in index or rp["to"] not in index:
            raise SchemaError(f"{where}: unknown transition label")
        marking = rp["marking"]
        if not isinstance(marking, int) or isinstance(marking, bool):
            raise SchemaError(f"{where}: marking must be an integer")
        if marking not in (0, 1):
            raise MarkingNotBinary(
                f"{where}: marking {marking} is not in {{0, 1}}; nets with larger "
                "markings must first be rewritten into an equivalent 0/1-marked "
                "net (not handled by this tool)"
            )
        lb = _rational_field(rp, "lb", where)
        ub = _rational_field(rp, "ub", where)
        if not isinstance(lb, Fraction) or lb < 0:
            raise SchemaError(f"{where}: lower bound must be a finite rational >= 0")
        if ub is NEG_INF or (isinstance(ub, Fraction) and ub < 0):
            raise SchemaError(f"{where}: upper bound must be >= 0 or 'inf'")
        if isinstance(ub, Fraction) and lb > ub:
            raise IntervalInverted(f"{where}: window [{lb}, {ub}] is empty")
        places.append(Place(index[rp["from"]], index[rp["to"]], marking, lb, ub))
    return PTEG(tuple(transitions), tuple(places))


def compile_matrices(net: PTEG) -> CharacteristicMatrices:
    """Build A0, A1, B0, B1.  Parallel places over the same transition pair
    and marking conjoin: max of lower bounds, min of upper bounds."""
    n = net.n
    a = [[[NEG_INF] * n for _ in range(n)] for _ in range(2)]
    b = [[[POS_INF] * n for _ in range(n)] for _ in range(2)]
    for p in net.places:
        i, j, mu = p.target, p.source, p.marking
        if a[mu][i][j] is NEG_INF or p.lower > a[mu][i][j]:
            a[mu][i][j] = p.lower
        if p.upper < b[mu][i][j]:
            b[mu][i][j] = p.upper
    return CharacteristicMatrices(
        a0=TropicalMatrix.from_rows(a[0], "max"),
        a1=TropicalMatrix.from_rows(a[1], "max"),
        b0=TropicalMatrix.from_rows(b[0], "min"),
        b1=TropicalMatrix.from_rows(b[1], "min"),
    )


def parse_trajectory(document: Union[str, dict], n: Optional[int] = None) -> TrajectoryWindow:
    """Parse a trajectory JSON document ({"daters": [[...], ...]}) exactly."""
    if isinstance(document, str):
        try:
            document = json.loads(document, parse_float=Fraction)
        except json.JSONDecodeError as exc:
            raise SchemaError(f"invalid JSON: {exc}") from None
    if not isinstance(document, dict) or "daters" not in document:
        raise SchemaError('trajectory document must be an object with "daters"')
    rows = document["daters"]
    if not isinstance(rows, list) or not rows:
        raise SchemaError('"daters" must be a non-empty list of vectors')
    daters = []
    for k, row in enumerate(rows):
        if not isinstance(row, list) or (n is not None and len(row) != n):
            raise SchemaError(f"daters[{k}]: wrong shape")
        vec = []
        for v in row:
            fv = as_value(v)
            if not isinstance(fv, Fraction):
                raise SchemaError(f"daters[{k}]: entries must be finite")
            vec.append(fv)
        daters.append(tuple(vec))
    if len({len(r) for r in daters}) != 1:
        raise SchemaError("dater vectors have inconsistent lengths")
    return TrajectoryWindow(tuple(daters))


def validate_trajectory(mats: CharacteristicMatrices, traj: TrajectoryWindow) -> ValidationResult:
    """Check the finite trajectory against every window constraint.

    Scan order: k ascending, then constraint kind in KINDS order, then row
    index; the first violated inequality is reported.
    """
    n = mats.n
    if traj.n != n:
        raise ShapeError(f"trajectory dimension {traj.n} != net dimension {n}")
    xs = traj.daters
    big_k = len(xs) - 1
    a0, a1, b0, b1 = mats.a0, mats.a1, mats.b0, mats.b1
    for k in range(big_k + 1):
        x = xs[k]
        xn = xs[k + 1] if k < big_k else None
        for kind in KINDS:
            if kind == "A0":
                lhs, rhs = _maxrows(a0, x), x
            elif kind == "B0":
                lhs, rhs = x, _minrows(b0, x)
            elif xn is None:
                continue
            elif kind == "A1":
                lhs, rhs = _maxrows(a1, x), xn
            elif kind == "B1":
                lhs, rhs = xn, _minrows(b1, x)
            else:  # NONDECREASING
                lhs, rhs = x, xn
            for i in range(n):
                if not lhs[i] <= rhs[i]:
                    return ValidationResult(False, k, kind, i)
    return ValidationResult(True)


def _maxrows(m: TropicalMatrix, x) -> list:
    out = []
    for i in range(m.rows):
        best = NEG_INF
        row = m.row(i)
        for j, e in enumerate(row):
            if isinstance(e, Fraction):
                c = e + x[j]
                if c > best:
                    best = c
        out.append(best)
    return out


def _minrows(m: TropicalMatrix, x) -> list:
    out = []
    for i in range(m.rows):
        best = POS_INF
        row = m.row(i)
        for j, e in enumerate(row):
            if isinstance(e, Fraction):
                c = e + x[j]
                if c < best:
                    best = c
        out.append(best)
    return out
