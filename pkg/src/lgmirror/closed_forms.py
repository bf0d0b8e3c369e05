"""Closed formulas for mirrors of linear sections of G(2, k+2)."""

from __future__ import annotations

from .exact import LaurentPolynomial, VariableSet
from .quiver import NotFanoError, var


def _vars(names) -> VariableSet:
    return VariableSet.sorted(names)


def _hyperplanes_low(k: int, l: int) -> LaurentPolynomial:
    """Fewer than ``k`` hyperplanes: the second column survives from row ``l`` on."""
    names = [var(i, 1) for i in range(1, k + 1)] + [var(i, 2) for i in range(l, k)]
    vs = _vars(names)

    def a(i: int, j: int = 1) -> LaurentPolynomial:
        return LaurentPolynomial.variable(var(i, j), vs)

    def tail(p: int) -> LaurentPolynomial:
        return sum((a(q) for q in range(p, l + 1)), LaurentPolynomial.zero(vs))

    total = LaurentPolynomial.zero(vs)
    for i in range(1, l):
        num = a(l, 2)
        den = LaurentPolynomial.one(vs)
        for p in range(i + 1, l):
            num = num * tail(p)
        for p in range(i, l):
            den = den * a(p)
        total = total + num / den
    for i in range(l, k):
        total = total + a(i, 2) / a(i)
    total = total + a(k) ** -1
    for i in range(l, k - 1):
        total = total + a(i + 1) / a(i) + a(i + 1, 2) / a(i, 2)
    total = total + a(k) / a(k - 1) + a(k - 1, 2) ** -1
    for i in range(1, l + 1):
        total = total + a(i)
    return total


def _hyperplanes_index2(k: int) -> LaurentPolynomial:
    vs = _vars(var(i, 1) for i in range(1, k + 1))

    def a(i: int) -> LaurentPolynomial:
        return LaurentPolynomial.variable(var(i, 1), vs)

    def tail(p: int) -> LaurentPolynomial:
        return sum((a(q) for q in range(p, k + 1)), LaurentPolynomial.zero(vs))

    total = LaurentPolynomial.zero(vs)
    for i in range(1, k):
        num = LaurentPolynomial.one(vs)
        den = LaurentPolynomial.one(vs)
        for p in range(i + 1, k):
            num = num * tail(p)
        for p in range(i, k):
            den = den * a(p)
        total = total + num / den
    total = total + a(k) ** -1
    for i in range(1, k + 1):
        total = total + a(i)
    return total


def _hyperplanes_index1(k: int) -> LaurentPolynomial:
    vs = _vars(var(i, 1) for i in range(2, k + 1))

    def a(i: int) -> LaurentPolynomial:
        return LaurentPolynomial.variable(var(i, 1), vs)

    def tail(p: int) -> LaurentPolynomial:
        return 1 + sum((a(q) for q in range(p, k)), LaurentPolynomial.zero(vs))

    first = a(k)
    for p in range(2, k):
        first = first * tail(p) / a(p)
    for i in range(2, k):
        term = LaurentPolynomial.one(vs)
        for p in range(i + 1, k):
            term = term * tail(p)
        for p in range(i, k):
            term = term / a(p)
        first = first + term
    first = first + 1
    second = 1 + sum((a(i) for i in range(2, k)), LaurentPolynomial.zero(vs)) + a(k) ** -1
    return first * second


def closed_form_hyperplanes(k: int, l: int) -> LaurentPolynomial:
    """Mirror ``F - l`` of the section of G(2, k+2) by ``l`` hyperplanes."""
    if k < 2:
        raise ValueError("k must be at least 2")
    if not 1 <= l <= k + 1:
        raise NotFanoError(f"{l} hyperplanes in G(2,{k + 2}) do not give a Fano variety of positive dimension")
    if l <= k - 1:
        return _hyperplanes_low(k, l)
    if l == k:
        return _hyperplanes_index2(k)
    return _hyperplanes_index1(k)
