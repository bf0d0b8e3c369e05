"""Newton polytopes with exact rational linear programming."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .exact import LaurentPolynomial


@dataclass(frozen=True)
class Polytope:
    vertices: frozenset

    @property
    def dimension_of_ambient(self) -> int:
        return len(next(iter(self.vertices))) if self.vertices else 0

    def sorted_vertices(self) -> list[tuple]:
        return sorted(self.vertices)


def _lp_maximize(c: Sequence, a_rows: Sequence[Sequence], b: Sequence) -> tuple[str, Fraction | None]:
    """Maximize ``c.x`` subject to ``A x = b, x >= 0`` (dense two-phase simplex, Bland's rule).

    Returns ``("infeasible", None)``, ``("unbounded", None)`` or ``("optimal", value)``.
    """
    m = len(a_rows)
    n = len(c)
    rows = []
    for row, rhs in zip(a_rows, b):
        row = [Fraction(x) for x in row]
        rhs = Fraction(rhs)
        if rhs < 0:
            row = [-x for x in row]
            rhs = -rhs
        rows.append(row + [Fraction(0)] * m + [rhs])
    for i in range(m):
        rows[i][n + i] = Fraction(1)
    basis = [n + i for i in range(m)]
    width = n + m

    def pivot(r: int, col: int) -> None:
        pr = rows[r]
        inv = 1 / pr[col]
        rows[r] = pr = [x * inv for x in pr]
        for i in range(m):
            if i != r and rows[i][col]:
                f = rows[i][col]
                rows[i] = [x - f * y for x, y in zip(rows[i], pr)]
        basis[r] = col

    def run(objective: list, allowed: int) -> str:
        while True:
            reduced = []
            for j in range(allowed):
                if j in basis:
                    continue
                val = objective[j] - sum(objective[basis[i]] * rows[i][j] for i in range(m))
                if val > 0:
                    reduced.append(j)
                    break
            if not reduced:
                return "optimal"
            col = reduced[0]
            best = None
            for i in range(m):
                if rows[i][col] > 0:
                    ratio = rows[i][-1] / rows[i][col]
                    if best is None or ratio < best[0] or (ratio == best[0] and basis[i] < basis[best[1]]):
                        best = (ratio, i)
            if best is None:
                return "unbounded"
            pivot(best[1], col)

    phase1 = [Fraction(0)] * n + [Fraction(-1)] * m
    run(phase1, width)
    if any(rows[i][-1] and basis[i] >= n for i in range(m)):
        return "infeasible", None
    # drive remaining zero-level artificials out of the basis where possible
    for i in range(m):
        if basis[i] >= n:
            for j in range(n):
                if rows[i][j] and j not in basis:
                    pivot(i, j)
                    break
    objective = [Fraction(x) for x in c] + [Fraction(0)] * m
    active = [i for i in range(m) if basis[i] < n]
    if len(active) < m:
        rows[:] = [rows[i] for i in active]
        basis[:] = [basis[i] for i in active]
        m = len(rows)
    status = run(objective, n)
    if status != "optimal":
        return status, None
    return "optimal", sum(objective[basis[i]] * rows[i][-1] for i in range(m))


def in_convex_hull(point: Sequence[int], points: Sequence[Sequence[int]]) -> bool:
    """Whether ``point`` is a convex combination of ``points``."""
    if not points:
        return False
    dim = len(point)
    a_rows = [[q[d] for q in points] for d in range(dim)] + [[1] * len(points)]
    b = list(point) + [1]
    status, _ = _lp_maximize([0] * len(points), a_rows, b)
    return status == "optimal"


def rank(vectors: Sequence[Sequence[int]]) -> int:
    rows = [[Fraction(x) for x in v] for v in vectors]
    r = 0
    ncols = len(rows[0]) if rows else 0
    for col in range(ncols):
        piv = next((i for i in range(r, len(rows)) if rows[i][col]), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        for i in range(len(rows)):
            if i != r and rows[i][col]:
                f = rows[i][col] / rows[r][col]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        r += 1
    return r


def newton_polytope(f: LaurentPolynomial) -> Polytope:
    if f.is_zero():
        raise ValueError("the zero polynomial has no Newton polytope")
    support = f.support()
    vertices = []
    for i, p in enumerate(support):
        others = support[:i] + support[i + 1:]
        if not in_convex_hull(p, others):
            vertices.append(p)
    return Polytope(frozenset(vertices))


def origin_in_interior(f: LaurentPolynomial) -> bool:
    """Whether the origin is an interior point of the Newton polytope of ``f``.

    The origin is in the relative interior iff it is a combination of all
    support points with strictly positive weights; full dimension then makes
    it interior.
    """
    support = f.support()
    dim = len(f.variables)
    if rank(support) < dim:
        return False
    # weights lambda_i = mu_i + t with mu_i, t >= 0; maximize t
    count = len(support)
    a_rows = []
    for d in range(dim):
        coords = [p[d] for p in support]
        a_rows.append(coords + [sum(coords)])
    a_rows.append([1] * count + [count])
    b = [0] * dim + [1]
    c = [0] * count + [1]
    status, value = _lp_maximize(c, a_rows, b)
    return status == "optimal" and value > 0
