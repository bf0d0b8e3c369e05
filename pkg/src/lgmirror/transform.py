"""Block-by-block elimination turning the Grassmannian superpotential into a mirror.

Every hypersurface consumes one block of arrows.  The block equation
``F_B = 1`` is solved for a *main variable* after rescaling by a *weight
variable*; the weight variable is then shifted so that the main variable
becomes a monomial.  All lemmas except the basic one follow the same recipe:

1. substitute ``v -> v * w**wt(v)`` so that ``G = w * F_B`` is free of ``w``;
2. split ``G = X / m + rest`` with respect to the main variable ``m``;
3. put ``w -> S*w + rest`` and ``m -> X / (S*w)``, then undo the weighting.

``S`` is 1 except for the vertical block, where ``S = X`` keeps ``m`` a
monomial.  New variables reuse the old names.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .exact import (LaurentPolynomial, PowerProduct, RationalFunction, VariableSet, _Pullback,
                    require_laurent, rf_substitute)
from .quiver import (MAIN, Block, BlockHistory, NotFanoError, Triplet, assemble_laurent,
                     build_initial_triplet, build_mwgamma_weighting, fano_index, select_blocks,
                     sort_degrees, var)

U = "U"


class LemmaInapplicableError(RuntimeError):
    """The triplet or block does not have the shape a lemma requires."""


@dataclass
class TransformStep:
    lemma: str
    block: Block
    weight_variable: str | None
    main_variable: str
    bindings: dict
    new_triplet: Triplet
    history: BlockHistory | None = None
    row: int | None = None
    block_function: LaurentPolynomial | None = None
    total_before: LaurentPolynomial | None = None
    total_after: LaurentPolynomial | None = None
    weights: dict = field(default_factory=dict)
    main_coefficient: LaurentPolynomial | None = None
    remainder: LaurentPolynomial | None = None
    normalized: bool = False
    checks: dict = field(default_factory=dict)
    old_variables: VariableSet | None = None

    def to_json_data(self) -> dict:
        return {
            "lemma": self.lemma,
            "block": self.block.to_json_data(),
            "weight_variable": self.weight_variable,
            "main_variable": self.main_variable,
            "weights": dict(sorted(self.weights.items())),
            "main_coefficient": self.main_coefficient.to_text() if self.main_coefficient is not None else None,
            "remainder": self.remainder.to_text() if self.remainder is not None else None,
            "bindings": {k: v.to_text() for k, v in sorted(self.bindings.items())},
            "history": self.history.to_json_data() if self.history is not None else None,
            "row": self.row,
            "block_function": self.block_function.to_text() if self.block_function is not None else None,
            "total_after": self.total_after.to_text() if self.total_after is not None else None,
            "checks": self.checks,
            "triplet": self.new_triplet.to_json_data(),
        }


def _one_of(vs: VariableSet, value) -> LaurentPolynomial:
    return LaurentPolynomial.constant(value, vs)


def _value_or_one(t: Triplet, vertex) -> LaurentPolynomial:
    """``R(vertex)`` as a Laurent polynomial (``R(k,2)`` is the constant 1)."""
    return require_laurent(t.assignment[vertex], f"R{vertex}")


def _finish(t: Triplet, block: Block, lemma: str, bindings: dict, new_vs: VariableSet,
            block_function: LaurentPolynomial, **info) -> TransformStep:
    """Apply ``bindings`` to the whole triplet and certify the step."""
    pb = _Pullback(t.variables, bindings, new_vs)
    assignment = {}
    for vertex, value in t.assignment.items():
        r = pb.rational(value.numerator)
        if value.denominator != 1:
            r = r / pb.rational(value.denominator)
        assignment[vertex] = r
    new_t = Triplet(t.quiver.remove(block.arrows), new_vs, assignment)
    total_before = assemble_laurent(t)
    total_after = assemble_laurent(new_t) if new_t.quiver.arrows else LaurentPolynomial.zero(new_vs)
    pulled_block = pb.rational(block_function)
    pulled_total = pb.laurent(total_before)
    checks = {
        "block_equation": pulled_block.numerator == pulled_block.denominator,
        "total_is_laurent": pulled_total is not None,
        "total_shift": pulled_total is not None and pulled_total == total_after + 1,
        "variable_count": len(new_vs) == len(t.variables) - 1,
    }
    if not all(checks.values()):
        failed = [k for k, v in checks.items() if not v]
        raise LemmaInapplicableError(f"{lemma}: step certification failed ({', '.join(failed)})")
    materialized = {name: PowerProduct.of(v, new_vs).to_rational() for name, v in bindings.items()}
    return TransformStep(lemma=lemma, block=block, bindings=materialized, new_triplet=new_t,
                         block_function=block_function, total_before=total_before,
                         total_after=total_after, checks=checks, old_variables=t.variables, **info)


def _weighted_elimination(t: Triplet, block: Block, lemma: str, weight_var: str, main_var: str,
                          weights: dict, normalize: bool = False, **info) -> TransformStep:
    vs = t.variables
    for name in (weight_var, main_var):
        if name not in vs:
            raise LemmaInapplicableError(f"{lemma}: variable {name} is not present")
    block_function = assemble_laurent(t, block.arrows)
    iw = vs.index(weight_var)
    matrix = []
    for name in vs:
        row = [0] * len(vs)
        row[vs.index(name)] = 1
        if name != weight_var:
            row[iw] += weights.get(name, 0)
        matrix.append(row)
    shift = [0] * len(vs)
    shift[iw] = 1
    g = block_function.map_exponents(matrix, vs).scale_monomial(shift)
    if g.depends_on(weight_var):
        raise LemmaInapplicableError(f"{lemma}: weighted block equation still involves {weight_var}")
    parts = g.split_by(main_var)
    if set(parts) - {0, -1} or -1 not in parts:
        raise LemmaInapplicableError(f"{lemma}: {main_var} must enter the block equation exactly as 1/{main_var}")
    new_vs = vs.without(main_var)
    x = parts[-1].align(new_vs)
    rest = parts.get(0, LaurentPolynomial.zero(vs)).align(new_vs)
    w_new = LaurentPolynomial.variable(weight_var, new_vs)
    shifted = (x * w_new if normalize else w_new) + rest
    bindings = {weight_var: PowerProduct(new_vs, factors=[(shifted, 1)])}
    for name in vs:
        if name in (weight_var, main_var):
            continue
        wt = weights.get(name, 0)
        if wt:
            bindings[name] = PowerProduct(new_vs, monomial={name: 1}, factors=[(shifted, wt)])
    main_factors = [(shifted, weights.get(main_var, 0))]
    if not normalize:
        main_factors.append((x, 1))
    bindings[main_var] = PowerProduct(new_vs, monomial={weight_var: -1}, factors=main_factors)
    return _finish(t, block, lemma, bindings, new_vs, block_function, weight_variable=weight_var,
                   main_variable=main_var, weights=dict(weights), main_coefficient=x, remainder=rest,
                   normalized=normalize, **info)


def _require(cond: bool, lemma: str, message: str) -> None:
    if not cond:
        raise LemmaInapplicableError(f"{lemma}: {message}")


def apply_horizontal_start(t: Triplet, b: Block) -> TransformStep:
    lemma = "horizontal-start"
    _require(b.kind == "horizontal" and b.contains_start, lemma, "block must be horizontal and contain (0,1)->(1,1)")
    k = t.k
    s = b.last_row
    if s == 1:
        new_vs = t.variables.without(MAIN)
        bindings = {MAIN: LaurentPolynomial.variable(var(1, 1), new_vs)}
        return _finish(t, b, lemma, bindings, new_vs, assemble_laurent(t, b.arrows),
                       weight_variable=None, main_variable=MAIN,
                       history=BlockHistory.of(), row=1)
    weights = {MAIN: s}
    for i in range(1, s + 1):
        for j in (1, 2):
            if (i, j) != (k, 2):
                weights[var(i, j)] = s - i
    return _weighted_elimination(t, b, lemma, var(s - 1, 1), MAIN, weights,
                                 history=BlockHistory.of((), {s - 1}, s), row=s)


def apply_horizontal_wide(t: Triplet, b: Block, h: BlockHistory) -> TransformStep:
    lemma = "horizontal-wide"
    _require(b.kind == "horizontal" and not b.contains_start, lemma, "block must be horizontal without (0,1)->(1,1)")
    _require(b.size > 1, lemma, "block size must be greater than 1")
    r, s = b.first_row, b.last_row
    _require(h.gamma == r, lemma, f"history gamma={h.gamma} must equal r={r}")
    k = t.k
    weights = {}
    for i in range(r, s + 1):
        for j in (1, 2):
            if (i, j) != (k, 2):
                weights[var(i, j)] = s - i
    history = BlockHistory.of(h.M | {r}, h.W | {s - 1}, s)
    return _weighted_elimination(t, b, lemma, var(s - 1, 1), var(r, 2), weights, history=history, row=s)


def apply_horizontal_basic(t: Triplet, b: Block, h: BlockHistory) -> TransformStep:
    lemma = "horizontal-basic"
    _require(b.kind == "horizontal" and b.size == 1 and b.first_row >= 1, lemma,
             "block must be a basic horizontal block below row 0")
    r = b.first_row
    k = t.k
    vs = t.variables
    main = var(r, 2)
    _require(main in vs and var(r, 1) in vs, lemma, f"variables of row {r} must be present")
    block_function = assemble_laurent(t, b.arrows)
    new_vs = vs.without(main)
    x = _value_or_one(t, (r + 1, 2)).align(new_vs)
    low = LaurentPolynomial.variable(var(r, 1), new_vs)
    high = LaurentPolynomial.variable(var(r + 1, 1), new_vs)
    expected = (LaurentPolynomial.variable(var(r + 1, 1), vs) * LaurentPolynomial.variable(var(r, 1), vs) ** -1
                + x.align(vs) * LaurentPolynomial.variable(main, vs) ** -1)
    _require(block_function == expected, lemma, "block equation does not have the basic shape")
    total = low + high
    bindings = {
        var(r, 1): PowerProduct(new_vs, factors=[(total, 1)]),
        main: PowerProduct(new_vs, monomial={var(r, 1): -1}, factors=[(x, 1), (total, 1)]),
    }
    return _finish(t, b, lemma, bindings, new_vs, block_function, weight_variable=None,
                   main_variable=main, main_coefficient=x, remainder=high, history=h, row=r + 1)


def apply_mixed_start(t: Triplet, b: Block) -> TransformStep:
    lemma = "mixed-start"
    _require(b.kind == "mixed" and b.contains_start, lemma, "block must be mixed and contain (0,1)->(1,1)")
    k = t.k
    weights = {MAIN: k + 1}
    for i in range(1, k + 1):
        for j in (1, 2):
            if (i, j) != (k, 2):
                weights[var(i, j)] = k + 2 - i - j
    return _weighted_elimination(t, b, lemma, var(k - 1, 2), MAIN, weights)


def apply_mixed(t: Triplet, b: Block, h: BlockHistory) -> TransformStep:
    lemma = "mixed"
    _require(b.kind == "mixed" and not b.contains_start, lemma, "block must be mixed without (0,1)->(1,1)")
    r = b.first_row
    _require(h.gamma == r, lemma, f"history gamma={h.gamma} must equal r={r}")
    k = t.k
    weights = {}
    for i in range(1, k + 1):
        for j in (1, 2):
            name = var(i, j)
            if name not in t.variables:
                continue
            if i >= r:
                weights[name] = k + 2 - i - j
            else:
                weights[name] = 0 if j == 1 else -1
    return _weighted_elimination(t, b, lemma, var(k, 1), var(r, 1), weights)


def apply_vertical(t: Triplet, b: Block, h: BlockHistory) -> TransformStep:
    lemma = "vertical"
    _require(b.kind == "vertical", lemma, "block must be the first basic vertical block")
    _require(not t.quiver.vertical_arrows(), lemma, "vertical arrows remain in the quiver")
    k = t.k
    u = k if h.gamma < k else min(h.W)
    lam = build_mwgamma_weighting(h, k, k)
    weights = {name: lam[name] for name in t.variables}
    return _weighted_elimination(t, b, lemma, var(u, 1), var(h.gamma, 1), weights, normalize=True)


def apply_single_arrow(t: Triplet, arrow, variable: str) -> TransformStep:
    """Consume one arrow whose ratio is a monomial linear in ``variable``.

    The equation ``ratio = 1`` is solved for ``variable``; this is a monomial
    change of coordinates, so no shift is needed.
    """
    lemma = "single-arrow"
    block = Block("single", frozenset({arrow}), 1, arrow[0][0])
    ratio = t.ratio(arrow)
    _require(ratio.is_monomial(), lemma, f"ratio along {arrow} is not a monomial")
    (e, c), = ratio.terms.items()
    idx = t.variables.index(variable)
    p = e[idx]
    _require(p in (1, -1), lemma, f"{variable} must appear with exponent 1 or -1")
    new_vs = t.variables.without(variable)
    # variable**p * c * rest = 1  =>  variable = (c * rest)**(-p)
    others = {name: -p * e[i] for i, name in enumerate(t.variables) if i != idx and e[i]}
    bindings = {variable: PowerProduct(new_vs, coeff=Fraction(c) ** -p, monomial=others)}
    return _finish(t, block, lemma, bindings, new_vs, ratio, weight_variable=None, main_variable=variable)


def eliminate_single_arrows(t: Triplet, plan) -> list:
    """Run :func:`apply_single_arrow` for each ``(arrow, variable)`` pair in turn."""
    steps = []
    for arrow, variable in plan:
        step = apply_single_arrow(t, arrow, variable)
        steps.append(step)
        t = step.new_triplet
    return steps


def quadric_surface_single_arrow_route(auxiliary: bool = True) -> tuple[list, LaurentPolynomial]:
    """Two hyperplane sections of G(2,4) through the two single-arrow blocks."""
    t = build_initial_triplet(2, auxiliary=auxiliary)
    if auxiliary:
        plan = [(((0, 1), (1, 1)), MAIN), (((2, 2), (2, 3)), var(1, 1))]
    else:
        plan = [(((0, 1), (1, 1)), var(1, 1)), (((2, 2), (2, 3)), var(2, 2))]
    steps = eliminate_single_arrows(t, plan)
    return steps, assemble_laurent(steps[-1].new_triplet)


# -- U-deformed bindings ----------------------------------------------------------


def u_deformed_bindings(step: TransformStep) -> dict:
    """Bindings solving ``F_B = 1 - U`` before the weight-variable shift.

    They live in the new variables plus ``U``.  Composing them at ``U = 0``
    with :func:`shift_bindings` gives the plain bindings of the step.
    """
    new_vs = step.new_triplet.variables
    uvs = VariableSet.sorted(list(new_vs) + [U])
    u = LaurentPolynomial.variable(U, uvs)
    m = step.main_variable
    if step.lemma == "horizontal-start" and step.weight_variable is None:
        return {MAIN: RationalFunction(LaurentPolynomial.variable(var(1, 1), uvs), 1 - u)}
    if step.lemma == "horizontal-basic":
        r = step.row - 1
        low = LaurentPolynomial.variable(var(r, 1), uvs)
        high = LaurentPolynomial.variable(var(r + 1, 1), uvs)
        x = step.main_coefficient.align(uvs)
        return {m: RationalFunction(x * low, (1 - u) * low - high)}
    w = step.weight_variable
    wv = LaurentPolynomial.variable(w, uvs)
    out = {}
    for name in step.old_variables:
        if name in (w, m):
            continue
        wt = step.weights.get(name, 0)
        if wt:
            out[name] = RationalFunction(LaurentPolynomial.variable(name, uvs) * wv ** wt)
    x = step.main_coefficient.align(uvs)
    rest = step.remainder.align(uvs)
    out[m] = RationalFunction(x * wv ** step.weights.get(m, 0), (1 - u) * wv - rest)
    return out


def shift_bindings(step: TransformStep) -> dict:
    """The weight-variable shift ``w -> S*w + rest`` in the new variables."""
    new_vs = step.new_triplet.variables
    if step.lemma == "horizontal-basic":
        r = step.row - 1
        return {var(r, 1): RationalFunction(LaurentPolynomial.variable(var(r, 1), new_vs)
                                            + LaurentPolynomial.variable(var(r + 1, 1), new_vs))}
    if step.weight_variable is None:
        return {}
    w = LaurentPolynomial.variable(step.weight_variable, new_vs)
    s = step.main_coefficient if step.normalized else 1
    return {step.weight_variable: RationalFunction(s * w + step.remainder)}


def compose_u_bindings_at_zero(step: TransformStep) -> dict:
    """``U = 0`` specialization of the deformed bindings followed by the shift."""
    new_vs = step.new_triplet.variables
    shift = shift_bindings(step)
    out = {}
    deformed = u_deformed_bindings(step)
    for name in step.old_variables:
        if name in deformed:
            value = rf_substitute(deformed[name], {U: 0}, new_vs)
        elif name in new_vs:
            value = RationalFunction(LaurentPolynomial.variable(name, new_vs))
        else:
            continue
        out[name] = rf_substitute(value, shift, new_vs)
    return out


# -- orchestration -------------------------------------------------------------


@dataclass
class ModelSpec:
    ambient: str
    n: int
    degrees: tuple

    @property
    def index(self) -> int:
        if self.ambient == "grassmannian":
            return fano_index(self.n, self.degrees)
        return self.n + 1 - sum(self.degrees)

    @property
    def k(self) -> int:
        return self.n

    @classmethod
    def grassmannian(cls, k: int, degrees: Sequence[int] = ()) -> "ModelSpec":
        return cls("grassmannian", k, tuple(degrees))

    @classmethod
    def projective(cls, n: int, degrees: Sequence[int] = ()) -> "ModelSpec":
        return cls("projective", n, tuple(degrees))

    def to_json_data(self) -> dict:
        key = "k" if self.ambient == "grassmannian" else "N"
        return {"ambient": self.ambient, key: self.n, "degrees": list(self.degrees), "index": self.index}


@dataclass
class PipelineTrace:
    spec: ModelSpec
    steps: list
    result: LaurentPolynomial
    permutation: list
    initial: Triplet
    verification: list = field(default_factory=list)

    def to_json_data(self) -> dict:
        return {
            "spec": self.spec.to_json_data(),
            "permutation": self.permutation,
            "initial": self.initial.to_json_data(),
            "steps": [s.to_json_data() for s in self.steps],
            "verification": self.verification,
            "result": self.result.to_text(),
        }


def run_main_theorem(k: int, degrees: Sequence[int], verify: bool = True) -> PipelineTrace:
    """Mirror ``F - l`` of the complete intersection of the given degrees in G(2, k+2)."""
    from .conditions import verify_triplet_conditions

    degrees = list(degrees)
    if sum(degrees) >= k + 2:
        raise NotFanoError(f"sum of degrees {sum(degrees)} must be below k + 2 = {k + 2}")
    sorted_degrees, permutation = sort_degrees(degrees)
    blocks = select_blocks(k, sorted_degrees)
    t = build_initial_triplet(k)
    initial = t
    steps = []
    history: BlockHistory | None = None
    row = 0
    log = []

    def check(triplet, h, stage, r):
        if not verify:
            return
        result = verify_triplet_conditions(triplet, h, stage, r)
        log.append({"stage": stage, "row": r, "ok": result.ok, "violations": result.violations})
        if not result.ok:
            raise LemmaInapplicableError(f"{stage} preconditions fail: {result.violations}")

    for block in blocks:
        if block.kind == "horizontal" and block.contains_start:
            check(t, None, "horizontal-start", 0)
            step = apply_horizontal_start(t, block)
        elif block.kind == "mixed" and block.contains_start:
            check(t, None, "mixed-start", 0)
            step = apply_mixed_start(t, block)
        elif block.kind == "horizontal" and block.size > 1:
            check(t, history, "horizontal-wide", row)
            step = apply_horizontal_wide(t, block, history)
        elif block.kind == "horizontal":
            check(t, history, "horizontal-basic", row)
            step = apply_horizontal_basic(t, block, history)
        elif block.kind == "mixed":
            check(t, history, "mixed", row)
            step = apply_mixed(t, block, history)
        else:
            check(t, history, "vertical", k)
            step = apply_vertical(t, block, history)
        steps.append(step)
        t = step.new_triplet
        history, row = step.history, step.row
    if steps and history is not None:
        # the last horizontal step leaves a triplet in the shape the next lemma expects
        check(t, history, "horizontal-basic", row)
    # the remaining arrows sum to the pulled-back superpotential minus one per hypersurface
    result = assemble_laurent(t) if t.quiver.arrows else LaurentPolynomial.zero(t.variables)
    return PipelineTrace(ModelSpec.grassmannian(k, degrees), steps, result, permutation, initial, log)
