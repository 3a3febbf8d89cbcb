"""Periodic-graph analysis: the (P, I, C) system, block matrices over a
finite horizon, same-row pumping sets and the row-connection matrix.

The infinite graph has nodes (row, column); P arcs step one column back,
I arcs one forward, C arcs stay.  Pumping paths and connecting circuits
are measured by their number of *shift* arcs (P or I); zero-shift C-walks
between shift arcs are absorbed exactly through the Kleene star of C, so
a "length <= L" path here means at most L shift arcs with arbitrary
C-detours.  All weights are exact rationals.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import List, Optional, Tuple

import numpy as np

from .pteg import CharacteristicMatrices
from .tropical import (
    NEG_INF,
    NotInGamma,
    TropicalMatrix,
    _NEGI,
    _denominator_lcm,
    is_finite,
    oplus,
    otimes,
    sharp,
    star_paths,
)


@dataclass(frozen=True)
class PeriodicSystem:
    """The three n x n max-plus matrices generating the periodic graph."""

    p: TropicalMatrix
    i: TropicalMatrix
    c: TropicalMatrix

    @property
    def n(self) -> int:
        return self.c.rows


@dataclass(frozen=True)
class PumpPair:
    """Column shift and maximum weight of a same-row pumping path."""

    t: int
    w: Fraction


@dataclass(frozen=True)
class ConnectionMatrix:
    """Symmetric matrix of best connecting-circuit weights per row pair."""

    r: TropicalMatrix


@dataclass(frozen=True)
class BlockSystem:
    """Finite-horizon block-tridiagonal matrix M_k (C diagonal, P super-,
    I subdiagonal blocks)."""

    k: int
    m: TropicalMatrix


def build_periodic(mats: CharacteristicMatrices) -> PeriodicSystem:
    """P = B1#, I = A1 (+) identity, C = A0 (+) B0#."""
    n = mats.n
    return PeriodicSystem(
        p=sharp(mats.b1),
        i=oplus(mats.a1, TropicalMatrix.identity(n)),
        c=oplus(mats.a0, sharp(mats.b0)),
    )


def build_block(sys: PeriodicSystem, k: int) -> BlockSystem:
    """Stack k+1 copies of the one-step constraints into one n(k+1) matrix."""
    if k < 0:
        raise ValueError("horizon must be non-negative")
    n = sys.n
    big_n = n * (k + 1)
    c, p, i_ = sys.c, sys.p, sys.i
    data: list = []
    for z in range(k + 1):
        for r in range(n):
            row = [NEG_INF] * big_n
            row[z * n : (z + 1) * n] = c.row(r)
            if z + 1 <= k:
                row[(z + 1) * n : (z + 2) * n] = p.row(r)
            if z >= 1:
                row[(z - 1) * n : z * n] = i_.row(r)
            data.extend(row)
    m = TropicalMatrix(big_n, big_n, "max", data)
    _attach_scaled_cache(m, sys, k)
    return BlockSystem(k, m)


def _attach_scaled_cache(m: TropicalMatrix, sys: PeriodicSystem, k: int):
    """Precompute the integer form of M_k so repeated circuit checks skip
    the per-entry Python scan; only set when int64 cannot overflow."""
    vals = sys.p._data + sys.i._data + sys.c._data
    scale = _denominator_lcm(vals)
    max_abs = 0
    for v in vals:
        if isinstance(v, Fraction):
            a = abs(int(v * scale))
            if a > max_abs:
                max_abs = a
    if max_abs * 2 * (m.rows + 1) >= (1 << 61):
        return
    n = sys.n
    tiles = {}
    for name, mat in (("c", sys.c), ("p", sys.p), ("i", sys.i)):
        arr = np.full((n, n), _NEGI, dtype=np.int64)
        for r in range(n):
            for s in range(n):
                v = mat[r, s]
                if isinstance(v, Fraction):
                    arr[r, s] = int(v * scale)
        tiles[name] = arr
    big = np.full((m.rows, m.rows), _NEGI, dtype=np.int64)
    for z in range(k + 1):
        big[z * n : (z + 1) * n, z * n : (z + 1) * n] = tiles["c"]
        if z + 1 <= k:
            big[z * n : (z + 1) * n, (z + 1) * n : (z + 2) * n] = tiles["p"]
        if z >= 1:
            big[z * n : (z + 1) * n, (z - 1) * n : z * n] = tiles["i"]
    m._scaled = (scale, big)


def path_weight(sys: PeriodicSystem, nodes) -> Fraction:
    """Exact weight of a concrete periodic-graph path given as (row, col)
    pairs; raises if a claimed arc does not exist."""
    w = Fraction(0)
    for (r1, z1), (r2, z2) in zip(nodes, nodes[1:]):
        dz = z2 - z1
        if dz == 1:
            e = sys.i[r2, r1]
        elif dz == -1:
            e = sys.p[r2, r1]
        elif dz == 0:
            e = sys.c[r2, r1]
        else:
            raise ValueError(f"non-adjacent columns {z1} -> {z2}")
        if not is_finite(e):
            raise ValueError(f"no arc ({r1},{z1}) -> ({r2},{z2})")
        w += e
    return w


_OBJ_NEG = float("-inf")


class _Tables:
    """Layered DP values: layers[l][r, s, center+t] is the best weight of a
    path (s,0) -> (r,t) with exactly l shift arcs (C-closure included)."""

    __slots__ = ("layers", "center", "neg")

    def __init__(self, layers, center, neg):
        self.layers = layers
        self.center = center
        self.neg = neg

    @property
    def width(self) -> int:
        return self.layers[0].shape[2]

    def val(self, l: int, r: int, s: int, tidx: int):
        v = self.layers[l][r, s, tidx]
        return int(v) if isinstance(v, np.integer) else v

    def finite(self, v) -> bool:
        return v != self.neg


class PeriodicAnalysis:
    """Shared exact DP state for pumping sets, the connection matrix and
    certificate-path realization.

    Requires the C-layer to be free of positive circuits (otherwise the
    C-closure diverges); callers should run gamma_check on C first.
    """

    def __init__(self, sys: PeriodicSystem):
        self.sys = sys
        self.n = sys.n
        # Raises NotInGamma when C has a positive circuit.
        self.cstar, self._cnodes = star_paths(sys.c)
        self.cplus = otimes(sys.c, self.cstar)
        self.tp = otimes(self.cstar, sys.p)
        self.ti = otimes(self.cstar, sys.i)
        base = (
            self.cstar._data + self.tp._data + self.ti._data
            + sys.p._data + sys.i._data + sys.c._data + self.cplus._data
        )
        self.scale = _denominator_lcm(base)
        max_abs = 0
        for v in base:
            if isinstance(v, Fraction):
                a = abs(int(v * self.scale))
                if a > max_abs:
                    max_abs = a
        # connecting circuits may use up to n(n+1) shift arcs
        self.budget = self.n * (self.n + 1)
        self._int_mode = max_abs * (2 * self.budget + 4) < (1 << 61)
        self._cs = self._scaled_grid(self.cstar)
        self._tp = self._scaled_grid(self.tp)
        self._ti = self._scaled_grid(self.ti)
        self._parc = self._scaled_grid(sys.p)
        self._iarc = self._scaled_grid(sys.i)
        self._pump: Optional[_Tables] = None
        self._conn: Optional[_Tables] = None
        self._conn_cum = None

    # -- scaled grids ------------------------------------------------------

    def _scaled_grid(self, m: TropicalMatrix):
        neg = _NEGI if self._int_mode else _OBJ_NEG
        out = [[neg] * m.cols for _ in range(m.rows)]
        for r in range(m.rows):
            for s in range(m.cols):
                v = m[r, s]
                if isinstance(v, Fraction):
                    out[r][s] = int(v * self.scale)
        return out

    def _grid_array(self, grid):
        if self._int_mode:
            return np.array(grid, dtype=np.int64)
        arr = np.empty((len(grid), len(grid[0])), dtype=object)
        for r, row in enumerate(grid):
            for s, v in enumerate(row):
                arr[r, s] = v
        return arr

    # -- layered DP --------------------------------------------------------

    def _apply(self, op: np.ndarray, d: np.ndarray) -> np.ndarray:
        # max-plus action of an n x n operator on (n, n, T) layer values
        cand = op[:, :, None, None] + d[None, :, :, :]
        if self._int_mode:
            invalid = (op == _NEGI)[:, :, None, None] | (d == _NEGI)[None, :, :, :]
            cand[invalid] = _NEGI
        return cand.max(axis=1)

    def _dp(self, lmax: int, width: int) -> _Tables:
        n = self.n
        t_count = 2 * width + 1
        center = width
        neg = _NEGI if self._int_mode else _OBJ_NEG
        dtype = np.int64 if self._int_mode else object
        op_p = self._grid_array(self._tp)
        op_i = self._grid_array(self._ti)
        d0 = np.full((n, n, t_count), neg, dtype=dtype)
        d0[:, :, center] = self._grid_array(self._cs)
        layers = [d0]
        cur = d0
        for _ in range(lmax):
            nxt = np.full((n, n, t_count), neg, dtype=dtype)
            via_p = self._apply(op_p, cur)
            via_i = self._apply(op_i, cur)
            nxt[:, :, :-1] = via_p[:, :, 1:]
            nxt[:, :, 1:] = np.maximum(nxt[:, :, 1:], via_i[:, :, :-1])
            layers.append(nxt)
            cur = nxt
        return _Tables(layers, center, neg)

    def pump_tables(self) -> _Tables:
        if self._pump is None:
            self._pump = self._dp(self.n, self.n)
        return self._pump

    def conn_tables(self) -> _Tables:
        if self._conn is None:
            n2 = self.budget
            self._conn = self._dp(n2, n2)
            cum = [self._conn.layers[0]]
            for l in range(1, n2 + 1):
                cum.append(np.maximum(cum[-1], self._conn.layers[l]))
            self._conn_cum = cum
        return self._conn

    # -- pumping sets ------------------------------------------------------

    def pump_sets(self) -> List[List[PumpPair]]:
        tabs = self.pump_tables()
        n, center = self.n, tabs.center
        out = []
        for i in range(n):
            pairs = []
            for t in range(-n, n + 1):
                best = tabs.neg
                for l in range(n + 1):
                    v = tabs.layers[l][i, i, center + t]
                    if v > best:
                        best = v
                if tabs.finite(best):
                    pairs.append(PumpPair(t, Fraction(int(best), self.scale)))
            out.append(pairs)
        return out

    # -- connection matrix ---------------------------------------------------

    def connection(self) -> ConnectionMatrix:
        tabs = self.conn_tables()
        cum = self._conn_cum
        n, n2, center = self.n, self.budget, tabs.center
        # cumulative over l >= 1, used to keep R_ii honest (no empty circuit)
        cum1 = tabs.layers[1]
        for l in range(2, n2 + 1):
            cum1 = np.maximum(cum1, tabs.layers[l])
        neg = tabs.neg
        data = [NEG_INF] * (n * n)
        for i in range(n):
            for j in range(i, n):
                best = neg
                for l1 in range(n2 + 1):
                    a_vec = tabs.layers[l1][j, i, :]
                    src = cum1 if (i == j and l1 == 0) else cum[n2 - l1]
                    b_vec = src[i, j, ::-1]
                    if self._int_mode:
                        s = a_vec + b_vec
                        s[(a_vec == _NEGI) | (b_vec == _NEGI)] = _NEGI
                    else:
                        s = a_vec + b_vec
                    m = s.max()
                    if m > best:
                        best = m
                if i == j:
                    cp = self.cplus[i, i]
                    if isinstance(cp, Fraction):
                        cps = int(cp * self.scale)
                        if cps > best or not tabs.finite(best):
                            best = cps
                if tabs.finite(best):
                    w = Fraction(int(best), self.scale)
                    data[i * n + j] = w
                    data[j * n + i] = w
        return ConnectionMatrix(TropicalMatrix(n, n, "max", data))

    # -- realization --------------------------------------------------------

    def _realize_path(self, tabs: _Tables, s: int, r: int, t: int, l: int):
        """Node list of a path (s,0) -> (r,t) with exactly l shift arcs whose
        weight attains tabs value; deterministic tie-breaks (P before I,
        lowest row first)."""
        n, center = self.n, tabs.center
        t_count = 2 * tabs.center + 1
        cur_r, cur_ti, cur_l = r, center + t, l
        segs = []
        while cur_l > 0:
            v = tabs.val(cur_l, cur_r, s, cur_ti)
            found = None
            for op, arcmat, dt in (
                (self._tp, self._parc, +1),
                (self._ti, self._iarc, -1),
            ):
                pti = cur_ti + dt
                if not 0 <= pti < t_count:
                    continue
                for k2 in range(n):
                    opv = op[cur_r][k2]
                    if not tabs.finite(opv):
                        continue
                    pv = tabs.val(cur_l - 1, k2, s, pti)
                    if tabs.finite(pv) and opv + pv == v:
                        found = (op, arcmat, dt, k2, pti, opv)
                        break
                if found:
                    break
            if found is None:
                raise RuntimeError("DP backtrack failed")
            op, arcmat, dt, k2, pti, opv = found
            # expand the composite step: shift arc k2 -> m, then C-walk m -> cur_r
            mrow = None
            for m in range(n):
                csv = self._cs[cur_r][m]
                av = arcmat[m][k2]
                if tabs.finite(csv) and tabs.finite(av) and csv + av == opv:
                    mrow = m
                    break
            if mrow is None:
                raise RuntimeError("composite-arc expansion failed")
            ccol = cur_ti - center
            walk = self._cnodes(cur_r, mrow)  # rows mrow .. cur_r
            segs.append([(row, ccol) for row in walk])
            cur_r, cur_ti, cur_l = k2, pti, cur_l - 1
        base = self._cnodes(cur_r, s)
        nodes = [(row, 0) for row in base]
        for seg in reversed(segs):
            nodes.extend(seg)
        return nodes

    def realize_pump(self, i: int, t: int):
        """Node list achieving the S_i pair with shift t (max weight over
        at most n shift arcs)."""
        tabs = self.pump_tables()
        center = tabs.center
        best = tabs.neg
        for l in range(self.n + 1):
            v = tabs.val(l, i, i, center + t)
            if v > best:
                best = v
        if not tabs.finite(best):
            raise ValueError(f"no pumping path with shift {t} from row {i}")
        for l in range(self.n + 1):
            if tabs.val(l, i, i, center + t) == best:
                return self._realize_path(tabs, i, i, t, l)
        raise RuntimeError("unreachable")

    def realize_connection(self, i: int, j: int):
        """A circuit (i,0) -> (j,tau) -> (i,0) within the shift-arc budget
        attaining R_ij; returns its two legs (split at the row-j visit)."""
        conn = self.connection()
        rv = conn.r[i, j]
        if not is_finite(rv):
            raise ValueError(f"rows {i} and {j} are not connected")
        rvs = int(rv * self.scale)
        tabs = self.conn_tables()
        n2, center = self.budget, tabs.center
        t_count = 2 * center + 1
        for l1 in range(n2 + 1):
            for tidx in range(t_count):
                av = tabs.val(l1, j, i, tidx)
                if not tabs.finite(av):
                    continue
                need = rvs - av
                l2_start = 1 if (i == j and l1 == 0) else 0
                for l2 in range(l2_start, n2 - l1 + 1):
                    bv = tabs.val(l2, i, j, 2 * center - tidx)
                    if tabs.finite(bv) and bv == need:
                        t = tidx - center
                        p1 = self._realize_path(tabs, i, j, t, l1)
                        p2 = self._realize_path(tabs, j, i, -t, l2)
                        p2t = [(r, c + t) for (r, c) in p2]
                        assert p1[-1] == p2t[0]
                        return p1, p2t
        # pure-C circuit through row i (only possible when i == j)
        if i == j:
            cp = self.cplus[i, i]
            if isinstance(cp, Fraction) and int(cp * self.scale) == rvs:
                for m in range(self.n):
                    arc = self.sys.c[i, m]
                    back = self.cstar[m, i]
                    if is_finite(arc) and is_finite(back) and arc + back == cp:
                        walk = self._cnodes(m, i)  # rows i .. m
                        nodes = [(row, 0) for row in walk]
                        nodes.append((i, 0))
                        return nodes, [nodes[-1]]
        raise RuntimeError("connection realization failed")


def pump_sets(sys: PeriodicSystem) -> List[List[PumpPair]]:
    """S_i for every row: all (shift, max-weight) pairs realized by paths
    (i,0) -> (i,t) with at most n shift arcs."""
    return PeriodicAnalysis(sys).pump_sets()


def connection_matrix(sys: PeriodicSystem) -> ConnectionMatrix:
    """R: best weight of a circuit with at most n(n+1) shift arcs passing
    through each pair of rows; -inf when no such circuit exists."""
    return PeriodicAnalysis(sys).connection()
