"""Mechanical checks of the shape a triplet must have before each lemma."""

from __future__ import annotations

from dataclasses import dataclass, field

from .exact import LaurentPolynomial, RationalFunction, rf_to_laurent
from .quiver import (MAIN, BlockHistory, Triplet, build_mwgamma_weighting, build_quiver, lambda_degrees,
                     validate_block_history, var)

STAGES = ("horizontal-start", "mixed-start", "horizontal-wide", "horizontal-basic", "mixed", "vertical")


@dataclass
class VerificationResult:
    ok: bool
    violations: list = field(default_factory=list)


def _lp(name: str, t: Triplet) -> LaurentPolynomial:
    return LaurentPolynomial.variable(name, t.variables)


def _is(t: Triplet, vertex, value) -> bool:
    return t.assignment[vertex] == value


def _row_sum(t: Triplet, top: int, low: int) -> LaurentPolynomial:
    return sum((_lp(var(q, 1), t) for q in range(low, top + 1)), LaurentPolynomial.zero(t.variables))


def verify_triplet_conditions(t: Triplet, h: BlockHistory | None, stage: str, r: int | None = None) -> VerificationResult:
    """Check every mechanically checkable precondition of the lemma ``stage``.

    ``r`` is the first row of the block about to be consumed (``k`` for the
    vertical block); it defaults to ``h.gamma``.
    """
    if stage not in STAGES:
        raise ValueError(f"unknown stage {stage!r}")
    k = t.k
    bad: list[str] = []
    one = RationalFunction(LaurentPolynomial.one(t.variables))
    if not _is(t, (k, 2), one):
        bad.append("(ii) R(k,2) must be 1")

    if stage in ("horizontal-start", "mixed-start"):
        if t.quiver.arrows != build_quiver(k).arrows:
            bad.append("(i) quiver must be the full ladder quiver")
        names = {var(i, 1) for i in range(1, k + 1)} | {var(i, 2) for i in range(1, k)} | {MAIN}
        if set(t.variables) != names:
            bad.append("variables must be the initial auxiliary set")
            return VerificationResult(False, bad)
        a = RationalFunction(_lp(MAIN, t))
        if not (_is(t, (0, 1), a) and _is(t, (k, 3), a)):
            bad.append("(ii) R(0,1) and R(k,3) must equal a")
        for i in range(1, k + 1):
            for j in (1, 2):
                if (i, j) != (k, 2) and not _is(t, (i, j), RationalFunction(_lp(var(i, j), t))):
                    bad.append(f"(iii) R({i},{j}) must equal a_{i}_{j}")
        return VerificationResult(not bad, bad)

    if h is None:
        return VerificationResult(False, bad + ["a block history is required"])
    if r is None:
        r = k if stage == "vertical" else h.gamma
    ok, reason = validate_block_history(h, r)
    if not ok:
        bad.append(f"history: {reason}")
        return VerificationResult(False, bad)
    if stage in ("horizontal-wide", "mixed") and h.gamma != r:
        bad.append(f"history gamma={h.gamma} must equal r={r}")
    if stage == "vertical" and r != k:
        bad.append("the vertical block is consumed at r = k")
    gamma = h.gamma

    # variable set
    names = {var(i, 1) for i in range(1, k + 1)}
    names |= {var(i, 2) for i in range(1, gamma) if i not in h.M}
    if stage != "vertical":
        names |= {var(i, 2) for i in range(r, k)}
    if set(t.variables) != names:
        bad.append(f"variable set {sorted(t.variables)} differs from the expected {sorted(names)}")
        return VerificationResult(False, bad)

    # (i) quiver shape
    for tail, head in t.quiver.vertical_arrows():
        if stage == "vertical" or 1 <= head[0] <= r:
            bad.append(f"(i) vertical arrow {tail}->{head} must already be consumed")

    # (iii) untouched rows
    top_rows = range(r, k + 1) if stage != "vertical" else [k]
    for i in top_rows:
        for j in (1, 2):
            if (i, j) == (k, 2) or (stage == "vertical" and j == 2):
                continue
            if not _is(t, (i, j), RationalFunction(_lp(var(i, j), t))):
                bad.append(f"(iii) R({i},{j}) must equal a_{i}_{j}")

    # (iv)-(vii) rows below gamma share a common factor
    ws = sorted(h.W)
    for i in range(1, gamma):
        r1 = t.assignment[(i, 1)]
        bar = r1 if i in h.W else r1 / _lp(var(i, 1), t)
        if i in h.M:
            upper = _lp(var(i + 1, 2), t) if i + 1 < k else LaurentPolynomial.one(t.variables)
            w_i = min(w for w in ws if w > i)
            expected = bar * upper / _lp(var(w_i, 1), t)
            label = "(vii)"
        else:
            expected = bar * _lp(var(i, 2), t)
            label = "(vi)"
        if not t.assignment[(i, 2)] == expected:
            bad.append(f"{label} R({i},2) is not the prescribed multiple of R({i},1)")

    # telescoping rows between gamma and r
    if stage in ("horizontal-basic", "vertical"):
        for i in range(gamma, r):
            if not _is(t, (i, 1), RationalFunction(_row_sum(t, r, i))):
                bad.append(f"(viii) R({i},1) must be the sum of a_q_1 for q in [{i},{r}]")
            num = _lp(var(r, 2), t) if r < k else LaurentPolynomial.one(t.variables)
            den = LaurentPolynomial.one(t.variables)
            for p in range(i, r):
                num = num * _row_sum(t, r, p)
                den = den * _lp(var(p, 1), t)
            if not _is(t, (i, 2), RationalFunction(num, den)):
                bad.append(f"(ix) R({i},2) must be the telescoping product")

    # conditions on R(k,3)
    top = rf_to_laurent(t.assignment[(k, 3)])
    if top is None:
        bad.append("R(k,3) must be a Laurent polynomial")
        return VerificationResult(False, bad)
    if stage != "vertical":
        for name in top.used_variables():
            row = int(name.split("_")[1])
            if row > r:
                bad.append(f"R(k,3) must not depend on {name} (row above {r})")
        for j in (1, 2):
            name = var(r, j)
            if name in top.variables and top.degree_in(name)[0] < 0:
                bad.append(f"R(k,3) has negative degree in {name}")
        if stage == "mixed" or stage == "horizontal-wide":
            second = [var(i, 2) for i in range(1, r + 1) if i not in h.M]
        else:
            second = [var(i, 2) for i in range(1, gamma) if i not in h.M]
        idx = [top.variables.index(n) for n in second if n in top.variables]
        if any(sum(e[i] for i in idx) > 0 for e in top.terms):
            bad.append("total degree of R(k,3) in the second-column variables must be non-positive")
    if stage in ("horizontal-wide", "horizontal-basic"):
        lam = build_mwgamma_weighting(h, r, k)
        degrees = set(lambda_degrees(lam, top))
        if degrees != {1}:
            bad.append(f"Lambda-degrees of R(k,3) must all be 1, found {sorted(degrees)}")
    if stage == "vertical":
        lam = build_mwgamma_weighting(h, k, k)
        if min(lambda_degrees(lam, top)) < 0:
            bad.append("Lambda-degrees of R(k,3) must be non-negative")
    return VerificationResult(not bad, bad)
