"""Mirrors through a nef-partition torus chart on the toric degeneration of G(2, k+2).

Columns of the weight matrix are numbered from 1.  For a given ``k``:

* columns ``1..k`` are the variables ``x_1_j``;
* column ``2k + 1 - i`` is the monomial ``M_i``;
* columns ``2k + 1..3k`` are ``x_2_2 .. x_2_(k+1)``.

Row ``i`` is the relation expressing ``M_i`` times its denominator.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Mapping, Sequence

from .exact import (LaurentPolynomial, NotLaurentError, PowerProduct, RationalFunction, VariableSet, _Pullback,
                    rf_substitute, rf_to_laurent)
from .polytope import rank
from .quiver import NotFanoError, var


class PartitionError(ValueError):
    """The nef-partition violates the disjointness or class conditions."""


def x_name(row: int, j: int) -> str:
    return f"x_{row}_{j}"


def y_name(row: int, j: int) -> str:
    return f"y_{row}_{j}"


def column_labels(k: int) -> list:
    """Column -> ``("x", row, j)`` or ``("M", i)``, as a 1-based list (index 0 unused)."""
    labels = [None] * (3 * k + 1)
    for j in range(1, k + 1):
        labels[j] = ("x", 1, j)
    for i in range(1, k + 1):
        labels[2 * k + 1 - i] = ("M", i)
    for j in range(2, k + 2):
        labels[2 * k + j - 1] = ("x", 2, j)
    return labels


def x_variables(k: int) -> VariableSet:
    return VariableSet([x_name(1, j) for j in range(1, k + 1)] + [x_name(2, j) for j in range(2, k + 2)])


def m_exponents(k: int, i: int) -> dict:
    """``M_i = 1 / (prod_{j<=i} x_1_j * prod_{j>i} x_2_j)``."""
    out = {x_name(1, j): -1 for j in range(1, i + 1)}
    out.update({x_name(2, j): -1 for j in range(max(i + 1, 2), k + 2)})
    return out


def column_term(k: int, column: int) -> LaurentPolynomial:
    vs = x_variables(k)
    label = column_labels(k)[column]
    if label[0] == "M":
        return LaurentPolynomial.monomial(m_exponents(k, label[1]), vs)
    return LaurentPolynomial.variable(x_name(label[1], label[2]), vs)


def _check_k(k: int) -> None:
    if not isinstance(k, int) or k < 2:
        raise ValueError(f"k must be an integer >= 2, got {k!r}")


def build_weight_matrix(k: int) -> list:
    """The ``k x 3k`` integer matrix of relations among the terms of the superpotential.

    The result is validated: each row is a relation among the column terms and
    the ``M`` columns form a unimodular minor, so the rows span the whole
    relation lattice.
    """
    _check_k(k)
    labels = column_labels(k)
    rows = []
    for i in range(1, k + 1):
        row = [0] * (3 * k)
        row[2 * k + 1 - i - 1] = 1
        for j in range(1, i + 1):
            row[j - 1] = 1
        for j in range(max(i + 1, 2), k + 2):
            row[2 * k + j - 2] = 1
        rows.append(row)
    vs = x_variables(k)
    exps = [None] + [column_term(k, c).support()[0] for c in range(1, 3 * k + 1)]
    for row in rows:
        total = [sum(row[c - 1] * exps[c][v] for c in range(1, 3 * k + 1)) for v in range(len(vs))]
        if any(total):
            raise ValueError(f"weight matrix row {row} is not a relation")
    m_cols = [c for c in range(1, 3 * k + 1) if labels[c][0] == "M"]
    minor = [[row[c - 1] for c in m_cols] for row in rows]
    if rank(minor) != k or any(sum(r) != 1 for r in minor) or any(sum(col) != 1 for col in zip(*minor)):
        raise ValueError("the M columns do not form a unimodular minor")
    if rank([list(e) for e in exps[1:]]) != 2 * k:
        raise ValueError("the ray map is not surjective")
    return rows


def appendix_x_change(k: int) -> tuple[LaurentPolynomial, list]:
    """Superpotential in the ``x`` variables and the polynomials ``f_1 .. f_(k+1)``."""
    _check_k(k)
    vs = x_variables(k)
    w = sum((column_term(k, c) for c in range(1, 3 * k + 1)), LaurentPolynomial.zero(vs))
    x = lambda r, j: LaurentPolynomial.variable(x_name(r, j), vs)
    fs = [x(1, 1)] + [x(1, j) + x(2, j) for j in range(2, k + 1)] + [x(2, k + 1)]
    return w, fs


def x_change_bindings(k: int) -> dict:
    """The plain Grassmannian variables in terms of the ``x`` variables."""
    vs = x_variables(k)
    out = {}
    for r in range(1, k + 1):
        out[var(r, 1)] = RationalFunction(LaurentPolynomial.monomial({x_name(1, j): 1 for j in range(1, r + 1)}, vs))
        out[var(r, 2)] = RationalFunction(LaurentPolynomial.monomial({x_name(2, j): -1 for j in range(r + 1, k + 2)}, vs))
    return out


def f_columns(k: int, j: int) -> list:
    if j == 1:
        return [1]
    if j == k + 1:
        return [3 * k]
    return [j, 2 * k + j - 1]


@dataclass(frozen=True)
class NefPartition:
    E: tuple
    parts: tuple
    distinguished: tuple

    @classmethod
    def of(cls, E: Sequence[int], parts: Sequence[Sequence[int]], distinguished: Sequence[int] | None = None) -> "NefPartition":
        parts = tuple(tuple(sorted(p)) for p in parts)
        if distinguished is None:
            distinguished = tuple(min(p) for p in parts)
        return cls(tuple(sorted(E)), parts, tuple(distinguished))

    @classmethod
    def from_json(cls, data: "str | Mapping") -> "NefPartition":
        if isinstance(data, str):
            data = json.loads(data)
        return cls.of(data["E"], data["Em"], data.get("sm"))

    def to_json_data(self) -> dict:
        return {"E": list(self.E), "Em": [list(p) for p in self.parts], "sm": list(self.distinguished)}

    @property
    def used_columns(self) -> frozenset:
        return frozenset(c for p in self.parts for c in p)


def m_columns(k: int) -> tuple:
    return tuple(range(k + 1, 2 * k + 1))


def default_partition(k: int, degrees: Sequence[int]) -> NefPartition:
    """Consecutive groups of ``f_j`` from ``j = 1``, one group per degree."""
    parts = []
    j = 1
    for d in degrees:
        cols = []
        for _ in range(d):
            cols.extend(f_columns(k, j))
            j += 1
        parts.append(cols)
    return NefPartition.of(m_columns(k), parts)


def validate_partition(k: int, degrees: Sequence[int], p: NefPartition, matrix: list | None = None) -> None:
    matrix = matrix if matrix is not None else build_weight_matrix(k)
    ncols = 3 * k
    if len(p.parts) != len(degrees):
        raise PartitionError(f"{len(p.parts)} parts given for {len(degrees)} hypersurfaces")
    if len(p.distinguished) != len(p.parts):
        raise PartitionError("one distinguished column per part is required")
    if tuple(p.E) != m_columns(k):
        raise PartitionError(f"only E = the M columns {list(m_columns(k))} is supported")
    seen = set(p.E)
    for part, s, d in zip(p.parts, p.distinguished, degrees):
        if not part:
            raise PartitionError("parts must be nonempty")
        for c in part:
            if not 1 <= c <= ncols:
                raise PartitionError(f"column {c} is out of range 1..{ncols}")
            if c in seen:
                raise PartitionError(f"column {c} is used twice")
            seen.add(c)
        if s not in part:
            raise PartitionError(f"distinguished column {s} is not in its part {list(part)}")
        sums = [sum(row[c - 1] for c in part) for row in matrix]
        if sums != [d] * k:
            raise PartitionError(f"part {list(part)} has class {sums}, expected {[d] * k}")


def _column_variable(k: int, column: int) -> tuple[str, str]:
    label = column_labels(k)[column]
    if label[0] != "x":
        raise PartitionError(f"column {column} is not an x variable")
    return x_name(label[1], label[2]), y_name(label[1], label[2])


def chart_variables(k: int, p: NefPartition) -> VariableSet:
    names = []
    for part, s in zip(p.parts, p.distinguished):
        names.extend(_column_variable(k, c)[1] for c in part if c != s)
    free = [c for c in range(1, 3 * k + 1) if c not in p.used_columns and c not in p.E]
    names.extend(_column_variable(k, c)[0] for c in free)
    return VariableSet.sorted(names)


def torus_chart_bindings(k: int, p: NefPartition) -> dict:
    target = chart_variables(k, p)
    bindings = {}
    for part, s in zip(p.parts, p.distinguished):
        others = [_column_variable(k, c)[1] for c in part if c != s]
        denom = 1 + sum((LaurentPolynomial.variable(y, target) for y in others), LaurentPolynomial.zero(target))
        for c in part:
            x, y = _column_variable(k, c)
            mono = {} if c == s else {y: 1}
            bindings[x] = PowerProduct(target, monomial=mono, factors=[(denom, -1)])
    return bindings


def torus_chart_substitute(w: LaurentPolynomial, k: int, p: NefPartition) -> LaurentPolynomial:
    """Pull ``w`` back along the torus chart of the partition, certified Laurent."""
    if not p.parts:
        return w
    pb = _Pullback(w.variables, torus_chart_bindings(k, p), chart_variables(k, p))
    out = pb.laurent(w)
    if out is None:
        raise NotLaurentError("the torus chart pullback is not a Laurent polynomial")
    return out


@dataclass
class AppendixResult:
    k: int
    degrees: tuple
    partition: NefPartition
    weight_matrix: list
    superpotential: LaurentPolynomial
    result: LaurentPolynomial

    def to_json_data(self) -> dict:
        return {"k": self.k, "degrees": list(self.degrees), "partition": self.partition.to_json_data(),
                "weight_matrix": self.weight_matrix, "superpotential": self.superpotential.to_text(),
                "result": self.result.to_text()}


def run_appendix(k: int, degrees: Sequence[int], partition: NefPartition | None = None) -> AppendixResult:
    """Mirror ``F - l`` of the complete intersection through the torus chart."""
    _check_k(k)
    degrees = tuple(degrees)
    if any(not isinstance(d, int) or d < 1 for d in degrees):
        raise ValueError("degrees must be positive integers")
    if sum(degrees) >= k + 2:
        raise NotFanoError(f"sum of degrees {sum(degrees)} must be below k + 2 = {k + 2}")
    matrix = build_weight_matrix(k)
    p = partition if partition is not None else default_partition(k, degrees)
    validate_partition(k, degrees, p, matrix)
    w, _ = appendix_x_change(k)
    # the terms of each part sum to one on the complete intersection
    reduced = sum((column_term(k, c) for c in range(1, 3 * k + 1) if c not in p.used_columns),
                  LaurentPolynomial.zero(w.variables))
    result = torus_chart_substitute(reduced, k, p)
    full = torus_chart_substitute(w, k, p)
    if full != result + len(degrees):
        raise NotLaurentError("the parts do not sum to one in the torus chart")
    return AppendixResult(k, degrees, p, matrix, w, result)


def apply_birational_map(f: LaurentPolynomial, bindings: Mapping, variables=None) -> LaurentPolynomial:
    """Pull ``f`` back along ``bindings``; raises if the result is not Laurent."""
    out = rf_to_laurent(rf_substitute(RationalFunction(f), bindings, variables))
    if out is None:
        raise NotLaurentError("the pullback is not a Laurent polynomial")
    return out


A1_PARTITION = NefPartition.of((3, 4), [(1, 2, 5, 6)], (1,))
A2_PARTITION = NefPartition.of((5, 6, 7, 8), [(1,), (12,), (2, 9), (3, 10)])


def a1_chain() -> dict:
    """The cubic section of G(2,4): torus chart, then two cluster-type maps.

    Returns the intermediate polynomials keyed by stage.
    """
    psi = run_appendix(2, (3,), A1_PARTITION).result
    yv = psi.variables
    y = lambda name: LaurentPolynomial.variable(name, yv)
    phi1 = apply_birational_map(psi, {"y_2_3": RationalFunction((y("y_1_2") + y("y_2_2")) * y("y_2_3"))})
    avs = VariableSet.sorted([var(1, 1), var(1, 2), var(2, 1)])
    a = lambda i, j: LaurentPolynomial.variable(var(i, j), avs)
    relabel = {
        "y_1_2": RationalFunction(a(2, 1)),
        "y_2_2": RationalFunction(a(2, 1) ** 2, a(1, 1)),
        "y_2_3": RationalFunction(a(1, 2)),
    }
    relabeled = apply_birational_map(phi1, relabel, avs)
    scale = RationalFunction(a(1, 1), a(1, 1) + a(2, 1))
    phi2 = {name: RationalFunction(LaurentPolynomial.variable(name, avs)) * scale for name in avs}
    final = apply_birational_map(relabeled, phi2, avs)
    return {"psi": psi, "phi1": phi1, "relabeled": relabeled, "phi2": final}
