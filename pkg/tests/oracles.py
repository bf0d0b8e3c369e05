"""Independent reference computations used by the tests.

Nothing here calls the arithmetic of the package: polynomials are read as
plain ``{exponent tuple: coefficient}`` dictionaries.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import product
from math import factorial


def compositions(total: int, parts: int):
    if parts == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for rest in compositions(total - first, parts - 1):
            yield (first,) + rest


def multinomial_constant_term(terms: dict, power: int) -> Fraction:
    """Constant term of ``(sum c_i x^e_i) ** power`` by the multinomial theorem."""
    items = list(terms.items())
    if power == 0:
        return Fraction(1)
    if not items:
        return Fraction(0)
    dim = len(items[0][0])
    total = Fraction(0)
    for counts in compositions(power, len(items)):
        if any(sum(n * e[d] for n, (e, _) in zip(counts, items)) for d in range(dim)):
            continue
        coeff = Fraction(factorial(power))
        for n, (_, c) in zip(counts, items):
            coeff = coeff / factorial(n) * Fraction(c) ** n
        total += coeff
    return total


def expand_power(terms: dict, power: int) -> dict:
    """Naive repeated multiplication with no pruning."""
    dim = len(next(iter(terms))) if terms else 0
    out = {(0,) * dim: Fraction(1)}
    for _ in range(power):
        nxt: dict = {}
        for e1, c1 in out.items():
            for e2, c2 in terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                nxt[e] = nxt.get(e, 0) + c1 * c2
        out = {e: c for e, c in nxt.items() if c}
    return out


def naive_constant_term(terms: dict, power: int) -> Fraction:
    if not terms:
        return Fraction(1 if power == 0 else 0)
    dim = len(next(iter(terms)))
    return expand_power(terms, power).get((0,) * dim, Fraction(0))


def grid_points(dim: int, radius: int):
    return product(range(-radius, radius + 1), repeat=dim)
