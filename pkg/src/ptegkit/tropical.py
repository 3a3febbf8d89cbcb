"""Exact max-plus / min-plus linear algebra over extended rationals.

Scalars live in Q ∪ {-inf, +inf}; finite values are `fractions.Fraction`,
the infinities are the two module singletons NEG_INF and POS_INF.  All
sign decisions (circuit weights, order comparisons) are exact; there is
no tolerance parameter anywhere in this package.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm
from typing import Optional, Sequence, Union

import numpy as np


class TropicalError(ValueError):
    """Base class for errors raised by the tropical layer."""


class ShapeError(TropicalError):
    """Operand dimensions do not match."""


class FlavorError(TropicalError):
    """Max-plus and min-plus operands were mixed, or the wrong flavor was given."""


class NotInGamma(TropicalError):
    """A positive-weight circuit makes the requested operation diverge."""

    def __init__(self, message: str, witness: "PathWitness | None" = None):
        super().__init__(message)
        self.witness = witness


class _Inf:
    """Signed infinity sentinel; exactly two instances exist (NEG_INF, POS_INF)."""

    __slots__ = ("_sign",)

    def __init__(self, sign: int):
        self._sign = sign

    @property
    def sign(self) -> int:
        return self._sign

    def __neg__(self) -> "_Inf":
        return POS_INF if self is NEG_INF else NEG_INF

    # Total order against the other sentinel and any real number.
    def __lt__(self, other):
        if self is other:
            return False
        return self is NEG_INF

    def __gt__(self, other):
        if self is other:
            return False
        return self is POS_INF

    def __le__(self, other):
        return self is other or self is NEG_INF

    def __ge__(self, other):
        return self is other or self is POS_INF

    def __eq__(self, other):
        return self is other

    def __hash__(self):
        return hash(("_Inf", self._sign))

    def __repr__(self):
        return "-inf" if self is NEG_INF else "inf"


NEG_INF = _Inf(-1)
POS_INF = _Inf(+1)

#: A tropical scalar: exact rational or one of the two infinities.
Value = Union[Fraction, _Inf]


def as_value(v) -> Value:
    """Coerce ints, rational strings ("p/q"), decimal strings/floats and
    the spellings "inf"/"-inf" into an exact tropical scalar."""
    if v is NEG_INF or v is POS_INF:
        return v
    if isinstance(v, Fraction):
        return v
    if isinstance(v, bool):
        raise TropicalError("booleans are not tropical scalars")
    if isinstance(v, int):
        return Fraction(v)
    if isinstance(v, float):
        if v == float("inf"):
            return POS_INF
        if v == float("-inf"):
            return NEG_INF
        # repr() gives the shortest decimal that round-trips; Fraction parses
        # it with exact decimal semantics.
        return Fraction(repr(v))
    if isinstance(v, str):
        s = v.strip()
        if s in ("inf", "+inf", "Infinity"):
            return POS_INF
        if s == "-inf":
            return NEG_INF
        return Fraction(s)
    raise TropicalError(f"cannot interpret {v!r} as a tropical scalar")


def is_finite(v: Value) -> bool:
    return not isinstance(v, _Inf)


def tmul(a: Value, b: Value) -> Value:
    """Max-plus scalar product: a + b, absorbed by -inf (even against +inf)."""
    if a is NEG_INF or b is NEG_INF:
        return NEG_INF
    if a is POS_INF or b is POS_INF:
        return POS_INF
    return a + b


def tmul_dual(a: Value, b: Value) -> Value:
    """Min-plus scalar product: a + b, absorbed by +inf (even against -inf)."""
    if a is POS_INF or b is POS_INF:
        return POS_INF
    if a is NEG_INF or b is NEG_INF:
        return NEG_INF
    return a + b


@dataclass(frozen=True)
class PathWitness:
    """A concrete path in a precedence graph: node ids, exact weight, arc count."""

    nodes: tuple
    weight: Fraction
    length: int

    def is_circuit(self) -> bool:
        return len(self.nodes) >= 2 and self.nodes[0] == self.nodes[-1]


@dataclass(frozen=True)
class GammaVerdict:
    """Result of the positive-circuit test; witness present iff not in Gamma."""

    in_gamma: bool
    witness: Optional[PathWitness] = None


class TropicalMatrix:
    """Dense matrix over the tropical scalars, tagged max-plus or min-plus.

    Instances are immutable; every operation below is a pure function and
    safe to call concurrently.
    """

    __slots__ = ("rows", "cols", "flavor", "_data", "_scaled")

    def __init__(self, rows: int, cols: int, flavor: str, data: list):
        if rows < 1 or cols < 1:
            raise ShapeError("matrix dimensions must be positive")
        if flavor not in ("max", "min"):
            raise FlavorError(f"unknown flavor {flavor!r}")
        if len(data) != rows * cols:
            raise ShapeError("data length does not match dimensions")
        self.rows = rows
        self.cols = cols
        self.flavor = flavor
        self._data = data
        self._scaled = None  # optional (lcm, int64 ndarray) cache, max flavor only

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence], flavor: str = "max") -> "TropicalMatrix":
        data = [as_value(v) for row in rows for v in row]
        nr = len(rows)
        nc = len(rows[0]) if nr else 0
        if any(len(r) != nc for r in rows):
            raise ShapeError("ragged rows")
        return cls(nr, nc, flavor, data)

    @classmethod
    def full(cls, rows: int, cols: int, value, flavor: str = "max") -> "TropicalMatrix":
        v = as_value(value)
        return cls(rows, cols, flavor, [v] * (rows * cols))

    @classmethod
    def epsilon(cls, n: int) -> "TropicalMatrix":
        """The all -inf max-plus matrix (additive zero)."""
        return cls.full(n, n, NEG_INF, "max")

    @classmethod
    def identity(cls, n: int) -> "TropicalMatrix":
        """E_otimes: zero diagonal, -inf elsewhere."""
        data = [NEG_INF] * (n * n)
        zero = Fraction(0)
        for i in range(n):
            data[i * n + i] = zero
        return cls(n, n, "max", data)

    def __getitem__(self, ij) -> Value:
        i, j = ij
        return self._data[i * self.cols + j]

    def row(self, i: int) -> list:
        return self._data[i * self.cols : (i + 1) * self.cols]

    def to_rows(self) -> list:
        return [self.row(i) for i in range(self.rows)]

    def __eq__(self, other):
        return (
            isinstance(other, TropicalMatrix)
            and self.rows == other.rows
            and self.cols == other.cols
            and self.flavor == other.flavor
            and self._data == other._data
        )

    def __hash__(self):
        return hash((self.rows, self.cols, self.flavor, tuple(self._data)))

    def __repr__(self):
        body = ", ".join("[" + ", ".join(map(str, self.row(i))) + "]" for i in range(self.rows))
        return f"TropicalMatrix({self.flavor}, [{body}])"


def _check_same_shape(a: TropicalMatrix, b: TropicalMatrix):
    if a.rows != b.rows or a.cols != b.cols:
        raise ShapeError(f"shape mismatch: {a.rows}x{a.cols} vs {b.rows}x{b.cols}")


def _check_same_flavor(a: TropicalMatrix, b: TropicalMatrix):
    if a.flavor != b.flavor:
        raise FlavorError("mixed max-plus / min-plus operands are rejected, not coerced")


def oplus(a: TropicalMatrix, b: TropicalMatrix) -> TropicalMatrix:
    """Entrywise maximum of two matrices of equal shape and flavor."""
    _check_same_shape(a, b)
    _check_same_flavor(a, b)
    data = [x if x >= y else y for x, y in zip(a._data, b._data)]
    return TropicalMatrix(a.rows, a.cols, a.flavor, data)


def splus(a: TropicalMatrix, b: TropicalMatrix) -> TropicalMatrix:
    """Entrywise minimum (the dual addition)."""
    _check_same_shape(a, b)
    _check_same_flavor(a, b)
    data = [x if x <= y else y for x, y in zip(a._data, b._data)]
    return TropicalMatrix(a.rows, a.cols, a.flavor, data)


def otimes(a: TropicalMatrix, x: TropicalMatrix) -> TropicalMatrix:
    """Max-plus matrix product with -inf absorption."""
    if a.flavor != "max" or x.flavor != "max":
        raise FlavorError("otimes requires max-plus operands")
    if a.cols != x.rows:
        raise ShapeError(f"inner dimensions differ: {a.cols} vs {x.rows}")
    n, m, p = a.rows, a.cols, x.cols
    out = [NEG_INF] * (n * p)
    for i in range(n):
        arow = a._data[i * m : (i + 1) * m]
        for h in range(p):
            best = NEG_INF
            for k in range(m):
                t = tmul(arow[k], x._data[k * p + h])
                if t > best:
                    best = t
            out[i * p + h] = best
    return TropicalMatrix(n, p, "max", out)


def dual_otimes(b: TropicalMatrix, x: TropicalMatrix) -> TropicalMatrix:
    """Min-plus matrix product with +inf absorption."""
    if b.flavor != "min" or x.flavor != "min":
        raise FlavorError("dual_otimes requires min-plus operands")
    if b.cols != x.rows:
        raise ShapeError(f"inner dimensions differ: {b.cols} vs {x.rows}")
    n, m, p = b.rows, b.cols, x.cols
    out = [POS_INF] * (n * p)
    for i in range(n):
        brow = b._data[i * m : (i + 1) * m]
        for h in range(p):
            best = POS_INF
            for k in range(m):
                t = tmul_dual(brow[k], x._data[k * p + h])
                if t < best:
                    best = t
            out[i * p + h] = best
    return TropicalMatrix(n, p, "min", out)


def sharp(a: TropicalMatrix) -> TropicalMatrix:
    """Residuation conjugate: the negated transpose.  Flavor flips and the
    infinities swap sign."""
    out = [NEG_INF] * (a.rows * a.cols)
    for i in range(a.cols):
        for j in range(a.rows):
            out[i * a.rows + j] = -a._data[j * a.cols + i]
    flavor = "min" if a.flavor == "max" else "max"
    return TropicalMatrix(a.cols, a.rows, flavor, out)


# ---------------------------------------------------------------------------
# Floyd-Warshall core (positive-circuit detection, Kleene star)
# ---------------------------------------------------------------------------

_NEGI = -(1 << 62)  # integer sentinel for -inf in the scaled fast path
_INT_LIMIT = 1 << 61


def _denominator_lcm(values) -> int:
    d = 1
    for v in values:
        if isinstance(v, Fraction):
            d = lcm(d, v.denominator)
    return d


def _scaled_array(m: TropicalMatrix, scale: int) -> np.ndarray:
    arr = np.full((m.rows, m.cols), _NEGI, dtype=np.int64)
    data = m._data
    cols = m.cols
    for i in range(m.rows):
        base = i * cols
        for j in range(cols):
            v = data[base + j]
            if isinstance(v, Fraction):
                arr[i, j] = int(v * scale)
    return arr


class _FWResult:
    """State of an (aborted or completed) all-pairs relaxation."""

    __slots__ = ("mat", "positive", "scale", "d", "via", "plen")

    def __init__(self, mat, positive, scale, d, via, plen):
        self.mat = mat
        self.positive = positive
        self.scale = scale  # None => exact Fraction grids, else int64 grids
        self.d = d
        self.via = via
        self.plen = plen

    def value(self, i: int, j: int) -> Value:
        if self.scale is None:
            v = self.d[i][j]
            return NEG_INF if v is None else v
        v = int(self.d[i, j])
        return NEG_INF if v == _NEGI else Fraction(v, self.scale)

    def path_nodes(self, i: int, j: int) -> list:
        """Expand the recorded relaxation into the node sequence j -> ... -> i."""
        via = self.via
        out = [j]
        stack = [(i, j)]
        while stack:
            ii, jj = stack.pop()
            k = int(via[ii][jj]) if self.scale is None else int(via[ii, jj])
            if k < 0:
                out.append(ii)
            else:
                stack.append((ii, k))
                stack.append((k, jj))
        return out

    def circuit_witness(self) -> PathWitness:
        n = self.mat.rows
        best = None
        for i in range(n):
            v = self.value(i, i)
            if is_finite(v) and v > 0:
                ln = int(self.plen[i][i]) if self.scale is None else int(self.plen[i, i])
                key = (ln, i)
                if best is None or key < best:
                    best = key
        if best is None:
            raise TropicalError("no positive diagonal recorded")
        i = best[1]
        nodes = self.path_nodes(i, i)
        w = Fraction(0)
        for a, b in zip(nodes, nodes[1:]):
            e = self.mat[b, a]
            if not is_finite(e):
                raise TropicalError("witness reconstruction crossed a missing arc")
            w += e
        if w <= 0:
            raise TropicalError("reconstructed witness is not positive")
        return PathWitness(tuple(nodes), w, len(nodes) - 1)


def _run_fw(a: TropicalMatrix, want_paths: bool = True) -> _FWResult:
    if a.rows != a.cols:
        raise ShapeError("square matrix required")
    if a.flavor != "max":
        raise FlavorError("max-plus matrix required")
    if any(v is POS_INF for v in a._data):
        raise TropicalError("+inf entries are not supported in precedence graphs")
    n = a.rows
    if a._scaled is not None:
        scale, arr = a._scaled
        return _fw_int(a, arr.copy(), scale, want_paths)
    scale = _denominator_lcm(a._data)
    max_abs = 0
    for v in a._data:
        if isinstance(v, Fraction):
            m = abs(int(v * scale))
            if m > max_abs:
                max_abs = m
    if max_abs * 2 * (n + 1) < _INT_LIMIT:
        return _fw_int(a, _scaled_array(a, scale), scale, want_paths)
    return _fw_frac(a, want_paths)


def _fw_int(a: TropicalMatrix, d: np.ndarray, scale: int, want_paths: bool) -> _FWResult:
    n = d.shape[0]
    via = np.full((n, n), -1, dtype=np.int32)
    plen = np.where(d != _NEGI, 1, 0).astype(np.int64)
    if (np.diagonal(d) > 0).any():
        return _FWResult(a, True, scale, d, via, plen)
    for k in range(n):
        col = d[:, k].copy()
        rowk = d[k, :].copy()
        cand = col[:, None] + rowk[None, :]
        invalid = (col == _NEGI)[:, None] | (rowk == _NEGI)[None, :]
        cand[invalid] = _NEGI
        upd = cand > d
        if upd.any():
            d[upd] = cand[upd]
            if want_paths:
                lc = plen[:, k][:, None] + plen[k, :][None, :]
                via[upd] = k
                plen[upd] = lc[upd]
            if (np.diagonal(d) > 0).any():
                return _FWResult(a, True, scale, d, via, plen)
    return _FWResult(a, False, scale, d, via, plen)


def _fw_frac(a: TropicalMatrix, want_paths: bool) -> _FWResult:
    """Exact fallback used when scaled integers could overflow int64."""
    n = a.rows
    d = [[a[i, j] if is_finite(a[i, j]) else None for j in range(n)] for i in range(n)]
    via = [[-1] * n for _ in range(n)]
    plen = [[1] * n for _ in range(n)]

    def positive_diag():
        return any(d[i][i] is not None and d[i][i] > 0 for i in range(n))

    if positive_diag():
        return _FWResult(a, True, None, d, via, plen)
    for k in range(n):
        dk = d[k]
        for i in range(n):
            dik = d[i][k]
            if dik is None:
                continue
            di = d[i]
            for j in range(n):
                dkj = dk[j]
                if dkj is None:
                    continue
                c = dik + dkj
                if di[j] is None or c > di[j]:
                    di[j] = c
                    via[i][j] = k
                    plen[i][j] = plen[i][k] + plen[k][j]
        if positive_diag():
            return _FWResult(a, True, None, d, via, plen)
    return _FWResult(a, False, None, d, via, plen)


def gamma_check(a: TropicalMatrix) -> GammaVerdict:
    """Decide whether the precedence graph of `a` is free of positive-weight
    circuits; if not, return a circuit witness with exact positive weight."""
    fw = _run_fw(a, want_paths=True)
    if not fw.positive:
        return GammaVerdict(True, None)
    return GammaVerdict(False, fw.circuit_witness())


def kleene_star(a: TropicalMatrix) -> TropicalMatrix:
    """Kleene star: best path weights over all lengths, 0 on the diagonal
    unless a better circuit-free path exists.  Raises NotInGamma if the
    star diverges."""
    fw = _run_fw(a, want_paths=True)
    if fw.positive:
        raise NotInGamma("positive circuit: Kleene star diverges", fw.circuit_witness())
    n = a.rows
    zero = Fraction(0)
    data = [NEG_INF] * (n * n)
    for i in range(n):
        for j in range(n):
            v = fw.value(i, j)
            if i == j and v < zero:
                v = zero
            data[i * n + j] = v
    return TropicalMatrix(n, n, "max", data)


def star_apply(a: TropicalMatrix, u: Sequence) -> list:
    """Compute kleene_star(a) ⊗ u for a finite vector u without materializing
    the exact star matrix; result is a list of exact Fractions."""
    uv = [as_value(x) for x in u]
    if len(uv) != a.rows:
        raise ShapeError("vector length does not match matrix dimension")
    if not all(isinstance(x, Fraction) for x in uv):
        raise TropicalError("finite vector required")
    fw = _run_fw(a, want_paths=False)
    if fw.positive:
        raise NotInGamma("positive circuit: no finite subinvariant vector exists")
    n = a.rows
    if fw.scale is not None:
        l2 = lcm(fw.scale, _denominator_lcm(uv))
        f = l2 // fw.scale
        dmax = int(np.abs(fw.d[fw.d != _NEGI]).max()) if (fw.d != _NEGI).any() else 0
        umax = max(abs(int(x * l2)) for x in uv)
        if f * dmax + umax < _INT_LIMIT:
            dd = np.where(fw.d == _NEGI, _NEGI, fw.d * f)
            us = np.array([int(x * l2) for x in uv], dtype=np.int64)
            cand = np.where(dd == _NEGI, _NEGI, dd + us[None, :])
            xs = np.maximum(cand.max(axis=1), us)  # star diagonal is >= 0
            return [Fraction(int(v), l2) for v in xs]
    out = []
    for i in range(n):
        best = uv[i]  # the star's E_otimes part
        for j in range(n):
            v = fw.value(i, j)
            if isinstance(v, Fraction):
                c = v + uv[j]
                if i == j and v < 0:
                    c = uv[j]
                if c > best:
                    best = c
        out.append(best)
    return out


def solve_subinvariant(a: TropicalMatrix, u: Sequence) -> list:
    """A finite solution x of A ⊗ x ⪯ x, namely A* ⊗ u."""
    return star_apply(a, u)


def star_paths(a: TropicalMatrix):
    """Kleene star plus a reconstruction callback.

    Returns (star, nodes) where nodes(i, j) gives the node sequence of a
    maximum-weight path j -> i (None when no path exists and i != j; the
    empty path [j] when staying put is optimal)."""
    fw = _run_fw(a, want_paths=True)
    if fw.positive:
        raise NotInGamma("positive circuit: Kleene star diverges", fw.circuit_witness())
    n = a.rows
    zero = Fraction(0)

    def nodes(i: int, j: int):
        v = fw.value(i, j)
        if i == j and v <= zero:
            return [j]
        if not is_finite(v):
            return None
        return fw.path_nodes(i, j)

    star = kleene_star(a)
    return star, nodes
