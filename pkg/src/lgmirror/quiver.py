"""The ladder quiver of the Grassmannian of planes, its blocks, triplets and weightings.

Vertices are ``(row, col)`` pairs: ``(i, j)`` for ``i`` in ``1..k`` and ``j`` in
``1, 2``, plus the sentinels ``(0, 1)`` and ``(k, 3)``.  An arrow is a pair
``(tail, head)``; its Laurent monomial is ``R(head) / R(tail)``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

from .exact import LaurentPolynomial, RationalFunction, VariableSet, require_laurent

Vertex = tuple
Arrow = tuple

MAIN = "a"


class NotFanoError(ValueError):
    """The degrees do not cut out a Fano complete intersection."""


def var(i: int, j: int) -> str:
    return f"a_{i}_{j}"


def is_vertical(arrow: Arrow) -> bool:
    (_, j0), (_, j1) = arrow
    return j0 == j1


def arrow_to_json(arrow: Arrow) -> list:
    return [list(arrow[0]), list(arrow[1])]


@dataclass(frozen=True)
class Quiver:
    k: int
    arrows: frozenset

    @property
    def vertices(self) -> frozenset:
        k = self.k
        return frozenset([(i, j) for i in range(1, k + 1) for j in (1, 2)] + [(0, 1), (k, 3)])

    def vertical_arrows(self) -> list[Arrow]:
        return sorted(a for a in self.arrows if is_vertical(a))

    def horizontal_arrows(self) -> list[Arrow]:
        return sorted(a for a in self.arrows if not is_vertical(a))

    def remove(self, arrows: Iterable[Arrow]) -> "Quiver":
        arrows = frozenset(arrows)
        if not arrows <= self.arrows:
            raise ValueError("cannot remove arrows that are not in the quiver")
        return Quiver(self.k, self.arrows - arrows)

    def to_json_data(self) -> dict:
        return {"k": self.k, "vertices": [list(v) for v in sorted(self.vertices)],
                "arrows": [arrow_to_json(a) for a in sorted(self.arrows)]}


def _check_k(k: int) -> None:
    if not isinstance(k, int) or k < 2:
        raise ValueError(f"k must be an integer >= 2, got {k!r}")


def all_arrows(k: int) -> frozenset:
    arrows = {((0, 1), (1, 1)), ((k, 2), (k, 3))}
    for i in range(1, k):
        arrows.add(((i, 1), (i + 1, 1)))
        arrows.add(((i, 2), (i + 1, 2)))
    for i in range(1, k + 1):
        arrows.add(((i, 1), (i, 2)))
    return frozenset(arrows)


def build_quiver(k: int) -> Quiver:
    _check_k(k)
    return Quiver(k, all_arrows(k))


def horizontal_basic_block(k: int, s: int) -> frozenset:
    """Vertical arrows between rows ``s`` and ``s + 1`` (``s`` in ``0..k-1``)."""
    if not 0 <= s <= k - 1:
        raise ValueError(f"no basic horizontal block {s} for k={k}")
    if s == 0:
        return frozenset({((0, 1), (1, 1))})
    return frozenset({((s, 1), (s + 1, 1)), ((s, 2), (s + 1, 2))})


def vertical_basic_block(k: int, which: int) -> frozenset:
    if which == 1:
        return frozenset(((i, 1), (i, 2)) for i in range(1, k + 1))
    if which == 2:
        return frozenset({((k, 2), (k, 3))})
    raise ValueError("there are two basic vertical blocks")


@dataclass(frozen=True)
class Block:
    """A block of arrows.

    ``first_row`` is the first basic horizontal block used (horizontal and
    mixed kinds); horizontal blocks cover basic rows ``first_row .. last_row - 1``.
    """

    kind: str
    arrows: frozenset
    size: int
    first_row: int = 0

    @property
    def last_row(self) -> int:
        return self.first_row + self.size

    @property
    def contains_start(self) -> bool:
        return ((0, 1), (1, 1)) in self.arrows

    def to_json_data(self) -> dict:
        return {"kind": self.kind, "size": self.size, "first_row": self.first_row,
                "arrows": [arrow_to_json(a) for a in sorted(self.arrows)]}


def horizontal_block(k: int, first_row: int, size: int) -> Block:
    arrows = frozenset().union(*(horizontal_basic_block(k, s) for s in range(first_row, first_row + size)))
    return Block("horizontal", arrows, size, first_row)


def mixed_block(k: int, first_row: int) -> Block:
    arrows = frozenset().union(*(horizontal_basic_block(k, s) for s in range(first_row, k)))
    arrows |= vertical_basic_block(k, 1)
    return Block("mixed", arrows, k - first_row + 1, first_row)


def vertical_block(k: int) -> Block:
    return Block("vertical", vertical_basic_block(k, 1), 1, k)


def sort_degrees(degrees: Sequence[int]) -> tuple[list[int], list[int]]:
    """Degrees in descending order together with the original positions."""
    degrees = list(degrees)
    for d in degrees:
        if not isinstance(d, int) or d < 1:
            raise ValueError(f"degrees must be positive integers, got {degrees}")
    order = sorted(range(len(degrees)), key=lambda i: (-degrees[i], i))
    return [degrees[i] for i in order], order


def fano_index(k: int, degrees: Sequence[int]) -> int:
    return k + 2 - sum(degrees)


def select_blocks(k: int, degrees: Sequence[int]) -> list[Block]:
    """Blocks placed as high as possible, one per hypersurface, in sorted-degree order."""
    _check_k(k)
    degs, _ = sort_degrees(degrees)
    total = sum(degs)
    if total >= k + 2:
        raise NotFanoError(f"sum of degrees {total} must be below k + 2 = {k + 2}")
    blocks = []
    row = 0
    if total <= k:
        for d in degs:
            blocks.append(horizontal_block(k, row, d))
            row += d
        return blocks
    if degs[-1] >= 2:
        for d in degs[:-1]:
            blocks.append(horizontal_block(k, row, d))
            row += d
        blocks.append(mixed_block(k, row))
        return blocks
    for d in degs[:-1]:
        blocks.append(horizontal_block(k, row, d))
        row += d
    blocks.append(vertical_block(k))
    return blocks


@dataclass
class Triplet:
    quiver: Quiver
    variables: VariableSet
    assignment: dict = field(default_factory=dict)

    @property
    def k(self) -> int:
        return self.quiver.k

    def value(self, vertex: Vertex) -> RationalFunction:
        return self.assignment[vertex]

    def ratio(self, arrow: Arrow) -> LaurentPolynomial:
        tail, head = arrow
        return require_laurent(self.assignment[head] / self.assignment[tail], f"ratio along {arrow}")

    def to_json_data(self) -> dict:
        return {
            "quiver": self.quiver.to_json_data(),
            "variables": list(self.variables.names),
            "assignment": {f"{v[0]},{v[1]}": self.assignment[v].to_text() for v in sorted(self.assignment)},
        }


def build_initial_triplet(k: int, auxiliary: bool = True) -> Triplet:
    """The starting triplet of the elimination pipeline.

    The auxiliary form rescales by the top-right vertex so that it becomes 1
    and a new variable ``a`` sits at both sentinels; see
    :func:`auxiliary_pullback` for the relation to the plain form.
    """
    _check_k(k)
    quiver = build_quiver(k)
    if auxiliary:
        names = [var(i, 1) for i in range(1, k + 1)] + [var(i, 2) for i in range(1, k)] + [MAIN]
    else:
        names = [var(i, j) for i in range(1, k + 1) for j in (1, 2)]
    vs = VariableSet.sorted(names)

    def lp(name: str) -> RationalFunction:
        return RationalFunction(LaurentPolynomial.variable(name, vs))

    one = RationalFunction(LaurentPolynomial.one(vs))
    assignment = {}
    for i in range(1, k + 1):
        for j in (1, 2):
            if (i, j) != (k, 2) or not auxiliary:
                assignment[(i, j)] = lp(var(i, j))
    if auxiliary:
        assignment[(k, 2)] = one
        assignment[(0, 1)] = assignment[(k, 3)] = lp(MAIN)
    else:
        assignment[(0, 1)] = assignment[(k, 3)] = one
    return Triplet(quiver, vs, assignment)


def auxiliary_pullback(k: int) -> dict[str, RationalFunction]:
    """Bindings expressing the auxiliary variables through the plain ones."""
    plain = build_initial_triplet(k, auxiliary=False).variables
    top = LaurentPolynomial.variable(var(k, 2), plain)
    out = {MAIN: RationalFunction(LaurentPolynomial.one(plain), top)}
    for i in range(1, k + 1):
        for j in (1, 2):
            if (i, j) != (k, 2):
                out[var(i, j)] = RationalFunction(LaurentPolynomial.variable(var(i, j), plain), top)
    return out


def assemble_rational_function(t: Triplet, arrows: Iterable[Arrow] | None = None) -> RationalFunction:
    arrows = sorted(t.quiver.arrows if arrows is None else arrows)
    if not arrows:
        raise ValueError("cannot assemble over an empty arrow set")
    total = None
    for arrow in arrows:
        if arrow not in t.quiver.arrows:
            raise ValueError(f"arrow {arrow} is not in the quiver")
        tail, head = arrow
        term = t.assignment[head] / t.assignment[tail]
        total = term if total is None else total + term
    return total


def assemble_laurent(t: Triplet, arrows: Iterable[Arrow] | None = None) -> LaurentPolynomial:
    """Sum of the arrow ratios, each certified Laurent."""
    arrows = sorted(t.quiver.arrows if arrows is None else arrows)
    total = LaurentPolynomial.zero(t.variables)
    for arrow in arrows:
        total = total + t.ratio(arrow)
    return total


# -- block histories and weightings ------------------------------------------


@dataclass(frozen=True)
class BlockHistory:
    M: frozenset = frozenset()
    W: frozenset = frozenset()
    gamma: int = 1

    @classmethod
    def of(cls, M: Iterable[int] = (), W: Iterable[int] = (), gamma: int = 1) -> "BlockHistory":
        return cls(frozenset(M), frozenset(W), gamma)

    def to_json_data(self) -> dict:
        return {"M": sorted(self.M), "W": sorted(self.W), "gamma": self.gamma}


def validate_block_history(h: BlockHistory, r: int) -> tuple[bool, str]:
    if not 1 <= h.gamma <= r:
        return False, f"gamma={h.gamma} must lie in [1, {r}]"
    if not h.W:
        if h.gamma != 1:
            return False, "W is empty but gamma != 1"
        if h.M:
            return False, "W is empty but M is not"
        return True, "ok"
    if h.gamma == 1:
        return False, "gamma = 1 requires W to be empty"
    ws = sorted(h.W)
    ms = sorted(h.M)
    if len(ms) != len(ws) - 1:
        return False, f"|M| = {len(ms)} must equal |W| - 1 = {len(ws) - 1}"
    if ws[0] < 1:
        return False, "elements of W must be positive"
    for j, m in enumerate(ms, start=1):
        if m != ws[j - 1] + 1:
            return False, f"m_{j} = {m} must equal w_{j - 1} + 1 = {ws[j - 1] + 1}"
        if not m < ws[j]:
            return False, f"m_{j} = {m} must be below w_{j} = {ws[j]}"
    if ws[-1] + 1 != h.gamma:
        return False, f"max W + 1 = {ws[-1] + 1} must equal gamma = {h.gamma}"
    return True, "ok"


@dataclass(frozen=True)
class WeightFunction:
    weights: Mapping[str, int]

    @property
    def domain(self) -> frozenset:
        return frozenset(self.weights)

    def __getitem__(self, name: str) -> int:
        return self.weights.get(name, 0)


def lambda_degree(w: WeightFunction, monomial: Mapping[str, int]) -> int:
    return sum(w[name] * p for name, p in monomial.items())


def lambda_degrees(w: WeightFunction, poly: LaurentPolynomial) -> list[int]:
    """Weighted degree of every monomial of ``poly``."""
    weights = [w[name] for name in poly.variables]
    return [sum(a * b for a, b in zip(weights, e)) for e in poly.terms]


def lambda_00s(s: int, k: int) -> WeightFunction:
    """Weighting attached to the rows consumed by a first horizontal block of size ``s``."""
    if not 1 <= s <= k:
        raise ValueError(f"s must lie in [1, {k}]")
    weights = {}
    for i in range(1, s + 1):
        weights[var(i, 1)] = 1 if i == s - 1 else i - s + 1
        if i < k:
            weights[var(i, 2)] = i - s
    return WeightFunction(weights)


def build_mwgamma_weighting(h: BlockHistory, r: int, k: int) -> WeightFunction:
    ok, reason = validate_block_history(h, r)
    if not ok:
        raise ValueError(f"invalid block history: {reason}")
    if r > k:
        raise ValueError("r must not exceed k")
    weights = {}
    ws = sorted(h.W)
    for i in range(1, h.gamma):
        has_second = i not in h.M
        if i in h.W:
            weights[var(i, 1)] = 1
            if has_second:
                weights[var(i, 2)] = -1
        else:
            # i < gamma - 1 here, since gamma - 1 is the largest element of W
            w_i = min(w for w in ws if w > i)
            weights[var(i, 1)] = i - w_i
            if has_second:
                weights[var(i, 2)] = i - w_i - 1
    for i in range(h.gamma, r + 1):
        weights[var(i, 1)] = 1
    if r < k:
        weights[var(r, 2)] = 0
    return WeightFunction(weights)
