"""Exact maximisation over box and difference constraints.

A programme here is

    maximise    c . x
    subject to  lower_i <= x_i <= upper_i
                |x_i - x_j| <= bound_ij     for every difference edge {i, j}

The constraint matrix of such a system is totally unimodular, so every
simplex pivot element is 1 and the whole tableau can be carried in
integers once costs and right-hand sides are cleared of denominators.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

import numpy as np

DEFAULT_BRUTE_BUDGET = 10**7


class LPError(Exception):
    pass


class InfeasibleError(LPError):
    def __init__(self, message: str, certificate: list[str]):
        super().__init__(f"infeasible: {message}")
        self.certificate = certificate


class UnboundedError(LPError):
    def __init__(self, ray: tuple[Fraction, ...]):
        super().__init__(f"unbounded: improving ray {[str(r) for r in ray]}")
        self.ray = ray


class BudgetExceededError(LPError):
    pass


def _frac(x) -> Fraction | None:
    return None if x is None else Fraction(x)


@dataclass(frozen=True, eq=False)
class LinearProgramme:
    cost: tuple[Fraction, ...]
    lower: tuple[Fraction | None, ...]
    upper: tuple[Fraction | None, ...]
    # normalised keys (i, j) with i < j; value is the bound on |x_i - x_j|
    diff_edges: Mapping[tuple[int, int], Fraction] = field(default_factory=dict)

    def __post_init__(self):
        n = len(self.cost)
        if len(self.lower) != n or len(self.upper) != n:
            raise ValueError("cost, lower and upper must have equal length")
        for i, j in self.diff_edges:
            if not (0 <= i < j < n):
                raise ValueError(f"bad difference edge {(i, j)}")
        for lo, hi in zip(self.lower, self.upper):
            if lo is not None and hi is not None and lo > hi:
                raise ValueError(f"empty box [{lo}, {hi}]")

    @classmethod
    def build(
        cls,
        cost: Sequence,
        lower: Sequence,
        upper: Sequence,
        edges: Iterable[tuple[int, int]] | Mapping[tuple[int, int], object] = (),
    ) -> LinearProgramme:
        """Normalise inputs; plain pairs in ``edges`` get bound 1."""
        if isinstance(edges, Mapping):
            items = edges.items()
        else:
            items = ((e, 1) for e in edges)
        diff: dict[tuple[int, int], Fraction] = {}
        for (i, j), b in items:
            if i == j:
                raise ValueError(f"difference edge {(i, j)} is a loop")
            key = (min(i, j), max(i, j))
            b = Fraction(b)
            diff[key] = min(diff.get(key, b), b)
        return cls(
            tuple(Fraction(c) for c in cost),
            tuple(_frac(x) for x in lower),
            tuple(_frac(x) for x in upper),
            diff,
        )

    @property
    def var_count(self) -> int:
        return len(self.cost)

    def scaled(self, factor) -> LinearProgramme:
        factor = Fraction(factor)
        return LinearProgramme(tuple(c * factor for c in self.cost), self.lower, self.upper, dict(self.diff_edges))

    def objective(self, x: Sequence) -> Fraction:
        return sum((c * Fraction(xi) for c, xi in zip(self.cost, x)), Fraction(0))


@dataclass(frozen=True)
class LPSolution:
    value: Fraction
    witness: tuple[Fraction, ...]
    integral_witness: tuple[int, ...] | None = None


def verify_feasible(lp: LinearProgramme, x: Sequence) -> tuple[bool, list[str]]:
    """Check every box and difference constraint exactly."""
    if len(x) != lp.var_count:
        raise ValueError("dimension mismatch")
    x = [Fraction(v) for v in x]
    bad = []
    for i, (lo, hi) in enumerate(zip(lp.lower, lp.upper)):
        if lo is not None and x[i] < lo:
            bad.append(f"x[{i}] = {x[i]} < {lo}")
        if hi is not None and x[i] > hi:
            bad.append(f"x[{i}] = {x[i]} > {hi}")
    for (i, j), b in lp.diff_edges.items():
        if abs(x[i] - x[j]) > b:
            bad.append(f"|x[{i}] - x[{j}]| = {abs(x[i] - x[j])} > {b}")
    return not bad, bad


def _feasible_point(n: int, upper, lower, diffs) -> list[int]:
    """Bellman-Ford on the constraint digraph over integer data.

    Node ``n`` is the origin; arcs ``(s, t, w)`` encode ``x_t - x_s <= w``.
    """
    arcs: list[tuple[int, int, int, str]] = []
    for i, hi in enumerate(upper):
        if hi is not None:
            arcs.append((n, i, hi, f"x[{i}] <= upper[{i}]"))
    for i, lo in enumerate(lower):
        if lo is not None:
            arcs.append((i, n, -lo, f"x[{i}] >= lower[{i}]"))
    for (i, j), b in diffs.items():
        arcs.append((i, j, b, f"x[{j}] - x[{i}] <= bound{(i, j)}"))
        arcs.append((j, i, b, f"x[{i}] - x[{j}] <= bound{(i, j)}"))

    dist = [0] * (n + 1)
    pred = [-1] * (n + 1)
    last = -1
    for _ in range(n + 1):
        last = -1
        for k, (s, t, w, _) in enumerate(arcs):
            if dist[s] + w < dist[t]:
                dist[t] = dist[s] + w
                pred[t] = k
                last = t
        if last < 0:
            break
    if last >= 0:
        node = last
        for _ in range(n + 1):
            node = arcs[pred[node]][0]
        cycle, start = [], node
        while True:
            k = pred[node]
            cycle.append(arcs[k][3])
            node = arcs[k][0]
            if node == start:
                break
        cycle.reverse()
        raise InfeasibleError("negative cycle in constraint system", cycle)
    return [dist[i] - dist[n] for i in range(n)]


def _lcm_denominator(values: Iterable[Fraction]) -> int:
    out = 1
    for v in values:
        out = math.lcm(out, v.denominator)
    return out


def solve_lp(lp: LinearProgramme) -> LPSolution:
    """Exact optimum of ``lp`` with a vertex witness.

    Raises :class:`InfeasibleError` or :class:`UnboundedError`.
    """
    n = lp.var_count
    if n == 0:
        return LPSolution(Fraction(0), (), ())
    data = [b for b in (*lp.lower, *lp.upper) if b is not None] + list(lp.diff_edges.values())
    scale_b = _lcm_denominator(data)
    integral_data = scale_b == 1

    def ints(seq):
        return [None if b is None else int(b * scale_b) for b in seq]

    upper, lower = ints(lp.upper), ints(lp.lower)
    diffs = {e: int(b * scale_b) for e, b in lp.diff_edges.items()}
    x0 = _feasible_point(n, upper, lower, diffs)

    # rows a . y <= b in the shifted variable y = x - x0, all b >= 0
    rows: list[tuple[tuple[tuple[int, int], ...], int]] = []
    for i, hi in enumerate(upper):
        if hi is not None:
            rows.append((((i, 1),), hi - x0[i]))
    for i, lo in enumerate(lower):
        if lo is not None:
            rows.append((((i, -1),), x0[i] - lo))
    for (i, j), b in diffs.items():
        rows.append((((i, 1), (j, -1)), b - x0[i] + x0[j]))
        rows.append((((i, -1), (j, 1)), b + x0[i] - x0[j]))

    scale_c = _lcm_denominator(lp.cost)
    c_int = [int(c * scale_c) for c in lp.cost]

    m = len(rows)
    width = 2 * n + m + 1  # columns p_0..p_n-1, q_0..q_n-1, slacks, rhs
    magnitude = (sum(abs(c) for c in c_int) + 1) * (sum(b for _, b in rows) + 1) * 4
    T = np.zeros((m + 1, width), dtype=np.int64 if magnitude < 2**60 else object)
    # row 0 holds reduced costs; T[0, -1] is minus the objective value
    T[0, :n] = c_int
    T[0, n:2 * n] = [-c for c in c_int]
    for r, (coef, b) in enumerate(rows, start=1):
        for i, a in coef:
            T[r, i] = a
            T[r, n + i] = -a
        T[r, 2 * n + r - 1] = 1
        T[r, -1] = b
    basis = [2 * n + r for r in range(m)]

    while True:
        improving = np.flatnonzero(T[0, :-1] > 0)
        if len(improving) == 0:
            break
        entering = int(improving[0])  # Bland: lowest index
        col = T[1:, entering]
        candidates = np.flatnonzero(col > 0)
        if len(candidates) == 0:
            ray = [Fraction(0)] * (2 * n + m)
            ray[entering] = Fraction(1)
            for r in range(m):
                ray[basis[r]] = Fraction(-col[r])
            raise UnboundedError(tuple(ray[i] - ray[n + i] for i in range(n)))
        # minimum ratio, ties to the smallest basic index
        if np.all(col[candidates] == 1):
            rhs = T[candidates + 1, -1]
            tied = candidates[rhs == rhs.min()]
            leave = min(tied, key=basis.__getitem__)
        else:
            leave = min(candidates, key=lambda r: (Fraction(T[r + 1, -1]) / col[r], basis[r]))
        pr = leave + 1
        pivot = T[pr, entering]
        if pivot != 1:
            # unreachable for box/difference systems; kept exact regardless
            T = T.astype(object) + Fraction(0)
            T[pr] = T[pr] / pivot
        row = T[pr].copy()
        T -= np.outer(T[:, entering], row)
        T[pr] = row
        basis[leave] = entering

    y = [0] * (2 * n + m)
    for r, var in enumerate(basis):
        y[var] = T[r + 1, -1]
    x = tuple(Fraction(int(x0[i]) + int(y[i]) - int(y[n + i]), scale_b) for i in range(n))
    value = lp.objective(x)
    x0_value = sum((c * t for c, t in zip(c_int, x0)), 0)
    assert value == Fraction(int(x0_value) * 1 - int(T[0, -1]), scale_b * scale_c)

    integral = None
    if all(v.denominator == 1 for v in x):
        integral = tuple(int(v) for v in x)
    elif integral_data:
        raise AssertionError("non-integral vertex for integral data")
    return LPSolution(value, x, integral)


def enumerate_feasible(
    ranges: Sequence[Sequence[int]],
    pair_bounds: Mapping[tuple[int, int], int],
) -> np.ndarray:
    """All integer points with ``x_i`` in ``ranges[i]`` and
    ``|x_i - x_j| <= pair_bounds[i, j]``, one per row.

    Variables are fixed left to right and partial points are filtered as
    soon as both ends of a pair are fixed; the surviving rows are exactly
    the feasible points of the full product, in lexicographic order.
    """
    n = len(ranges)
    later: list[list[tuple[int, int]]] = [[] for _ in range(n)]
    for (i, j), b in pair_bounds.items():
        i, j = min(i, j), max(i, j)
        later[j].append((i, b))
    rows = np.zeros((1, 0), dtype=np.int64)
    for k in range(n):
        vals = np.asarray(sorted(ranges[k]), dtype=np.int64)
        if len(vals) == 0:
            return np.zeros((0, n), dtype=np.int64)
        count = rows.shape[0]
        rows = np.hstack([np.repeat(rows, len(vals), axis=0), np.tile(vals, count)[:, None]])
        if later[k]:
            keep = np.ones(rows.shape[0], dtype=bool)
            for i, b in later[k]:
                keep &= np.abs(rows[:, k] - rows[:, i]) <= b
            rows = rows[keep]
        if rows.shape[0] == 0:
            return np.zeros((0, n), dtype=np.int64)
    return rows


def best_row(rows: np.ndarray, cost: Sequence[Fraction]) -> tuple[Fraction, int]:
    """Exact maximum of ``rows @ cost`` and the first row attaining it."""
    scale = _lcm_denominator(cost)
    c_int = [int(c * scale) for c in cost]
    if rows.shape[1] == 0:
        return Fraction(0), 0
    bound = (int(np.abs(rows).max()) + 1) * (sum(abs(c) for c in c_int) + 1)
    if bound < 2**60:
        values = rows @ np.asarray(c_int, dtype=np.int64)
    else:
        values = rows.astype(object) @ np.asarray(c_int, dtype=object)
    k = int(np.argmax(values))
    return Fraction(int(values[k]), scale), k


def brute_force_box(
    lp: LinearProgramme,
    integer_box: Sequence[tuple[int, int]] | None = None,
    budget: int = DEFAULT_BRUTE_BUDGET,
) -> LPSolution:
    """Maximise over every integer point of ``integer_box``.

    ``integer_box[i] = (lo, hi)`` is the inclusive enumeration range of
    ``x_i``; by default the programme's own box, which must then be finite.
    Points outside the programme's box or violating a difference edge are
    discarded.
    """
    n = lp.var_count
    if integer_box is None:
        if any(b is None for b in (*lp.lower, *lp.upper)):
            raise ValueError("an explicit integer box is needed for unbounded variables")
        integer_box = [(math.ceil(lo), math.floor(hi)) for lo, hi in zip(lp.lower, lp.upper)]
    if len(integer_box) != n:
        raise ValueError("dimension mismatch")
    size = 1
    for lo, hi in integer_box:
        size *= max(0, hi - lo + 1)
    if size > budget:
        raise BudgetExceededError(f"too large for brute force: {size} assignments > budget {budget}")

    ranges = []
    for (lo, hi), blo, bhi in zip(integer_box, lp.lower, lp.upper):
        ranges.append([t for t in range(lo, hi + 1)
                       if (blo is None or t >= blo) and (bhi is None or t <= bhi)])
    # fractional difference bounds still cut integer points at their floor
    pairs = {e: math.floor(b) for e, b in lp.diff_edges.items()}
    rows = enumerate_feasible(ranges, pairs)
    if rows.shape[0] == 0:
        raise InfeasibleError("no integer point in the enumeration box", [])
    value, k = best_row(rows, lp.cost)
    witness = tuple(int(t) for t in rows[k])
    ok, bad = verify_feasible(lp, witness)
    assert ok, bad
    return LPSolution(value, tuple(Fraction(t) for t in witness), witness)
