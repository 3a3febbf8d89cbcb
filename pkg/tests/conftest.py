"""Shared test fixtures: reference nets, random net generation, and small
independent oracles used to cross-check the library's results."""

from fractions import Fraction

from ptegkit import NEG_INF, TropicalMatrix, compile_matrices, parse_pteg


def two_tank_net(alpha, beta, gamma):
    """Two transitions with fixed-period self-loops and a bounded buffer
    place between them; the family used all over the small tests."""
    return parse_pteg({
        "transitions": ["t1", "t2"],
        "places": [
            {"from": "t1", "to": "t1", "marking": 1, "lb": alpha, "ub": alpha},
            {"from": "t2", "to": "t2", "marking": 1, "lb": beta, "ub": beta},
            {"from": "t1", "to": "t2", "marking": 0, "lb": 0, "ub": gamma},
        ],
    })


def two_tank_mats(alpha, beta, gamma):
    return compile_matrices(two_tank_net(alpha, beta, gamma))


def electroplating_net(depot_capacity_one):
    """Single-hoist electroplating line: depot, three tanks, output stage.

    Nine transitions; processing windows [20,30], [25,35], [20,30]; hoist
    travel times |i-j| empty and |i-j|+1 loaded; release period 92.  With
    depot_capacity_one an extra marked place closes the depot loop.
    """
    trans = ["t0in", "t0out", "t1in", "t1out", "t2in", "t2out",
             "t3in", "t3out", "t4"]
    places = [
        {"from": "t0in", "to": "t0in", "marking": 1, "lb": 92, "ub": "inf"},
        {"from": "t0in", "to": "t0out", "marking": 0, "lb": 0, "ub": "inf"},
        {"from": "t0out", "to": "t1in", "marking": 0, "lb": 2, "ub": "inf"},
        {"from": "t1in", "to": "t1out", "marking": 0, "lb": 20, "ub": 30},
        {"from": "t1out", "to": "t2in", "marking": 0, "lb": 2, "ub": "inf"},
        {"from": "t2in", "to": "t2out", "marking": 1, "lb": 25, "ub": 35},
        {"from": "t2out", "to": "t3in", "marking": 0, "lb": 2, "ub": "inf"},
        {"from": "t3in", "to": "t3out", "marking": 0, "lb": 20, "ub": 30},
        {"from": "t3out", "to": "t4", "marking": 0, "lb": 2, "ub": "inf"},
        {"from": "t3in", "to": "t1out", "marking": 0, "lb": 2, "ub": "inf"},
        {"from": "t4", "to": "t0out", "marking": 1, "lb": 4, "ub": "inf"},
        {"from": "t1in", "to": "t2out", "marking": 0, "lb": 1, "ub": "inf"},
        {"from": "t2in", "to": "t3out", "marking": 0, "lb": 1, "ub": "inf"},
    ]
    if depot_capacity_one:
        places.append(
            {"from": "t0out", "to": "t0in", "marking": 1, "lb": 0, "ub": "inf"}
        )
    return parse_pteg({"transitions": trans, "places": places})


def positive_zero_shift_net():
    """Two transitions whose unmarked places already conflict: the forward
    lower bound 5 exceeds the return upper bound 3, a positive circuit with
    no column shift at all."""
    return parse_pteg({
        "transitions": ["t1", "t2"],
        "places": [
            {"from": "t1", "to": "t2", "marking": 0, "lb": 5, "ub": "inf"},
            {"from": "t2", "to": "t1", "marking": 0, "lb": 0, "ub": 3},
        ],
    })


def random_net_doc(rng, max_n=4, max_bound=10):
    """Random P-TEG document: n <= max_n transitions, integer bounds in
    [0, max_bound] or unbounded, markings in {0, 1}."""
    n = rng.randint(1, max_n)
    trans = [f"t{i}" for i in range(n)]
    places = []
    for _ in range(rng.randint(1, 2 * n)):
        lb = rng.randint(0, max_bound)
        ub = "inf" if rng.random() < 0.5 else lb + rng.randint(0, max_bound)
        places.append({
            "from": rng.choice(trans),
            "to": rng.choice(trans),
            "marking": rng.randint(0, 1),
            "lb": lb,
            "ub": ub,
        })
    return {"transitions": trans, "places": places}


def random_mats(rng, max_n=4, max_bound=10):
    return compile_matrices(parse_pteg(random_net_doc(rng, max_n, max_bound)))


def random_tropical(rng, rows, cols, flavor="max", p_neg=0.3, halves=False):
    """Random tropical matrix with some -inf entries; optional denominator-2
    rationals to exercise the exact paths."""
    data = []
    for _ in range(rows * cols):
        if rng.random() < p_neg:
            data.append("-inf")
        else:
            num = rng.randint(-10, 10)
            data.append(Fraction(num, 2) if halves and rng.random() < 0.3
                        else num)
    return TropicalMatrix.from_rows(
        [data[r * cols:(r + 1) * cols] for r in range(rows)], flavor)


# ---------------------------------------------------------------------------
# independent oracles


def enum_power(a, r):
    """(i, j) -> best weight over walks j -> i with exactly r arcs, computed
    by plain dynamic programming over Python numbers (no library code)."""
    n = a.rows
    w = [[a.row(i)[j] if a.row(i)[j] is not NEG_INF else None
          for j in range(n)] for i in range(n)]
    best = [[0 if i == j else None for j in range(n)] for i in range(n)]
    for _ in range(r):
        nxt = [[None] * n for _ in range(n)]
        for i in range(n):
            for k in range(n):
                if w[i][k] is None:
                    continue
                for j in range(n):
                    if best[k][j] is None:
                        continue
                    cand = w[i][k] + best[k][j]
                    if nxt[i][j] is None or cand > nxt[i][j]:
                        nxt[i][j] = cand
        best = nxt
    return best


def brute_positive_circuit(a):
    """True iff the precedence graph of `a` has a positive-weight circuit.
    Any positive circuit contains a positive simple circuit, so diagonals of
    the first n walk-length layers decide it."""
    n = a.rows
    for r in range(1, n + 1):
        p = enum_power(a, r)
        if any(p[i][i] is not None and p[i][i] > 0 for i in range(n)):
            return True
    return False


def oracle_pump_sets(sys):
    """S_i by value iteration over states (row, column, shift arcs used);
    zero-shift arcs are free, shift arcs are budgeted by n."""
    n = sys.n
    c = sys.c.to_rows()
    p = sys.p.to_rows()
    i_m = sys.i.to_rows()
    out = []
    for start in range(n):
        dist = {(start, 0, 0): Fraction(0)}
        changed = True
        while changed:
            changed = False
            for (r, col, s), d in list(dist.items()):
                steps = [(c, 0, 0)]
                if s < n:
                    steps.append((p, -1, 1))
                    steps.append((i_m, 1, 1))
                for mat, dc, ds in steps:
                    nc, ns = col + dc, s + ds
                    if abs(nc) > n:
                        continue
                    for r2 in range(n):
                        wgt = mat[r2][r]
                        if wgt is NEG_INF:
                            continue
                        key = (r2, nc, ns)
                        nd = d + wgt
                        if key not in dist or nd > dist[key]:
                            dist[key] = nd
                            changed = True
        pairs = {}
        for (r, col, s), d in dist.items():
            if r == start and (col not in pairs or d > pairs[col]):
                pairs[col] = d
        out.append(pairs)
    return out
