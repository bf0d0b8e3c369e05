"""Exact sparse Laurent polynomials and rational functions over the rationals.

Polynomials are immutable maps from integer exponent vectors to nonzero
coefficients (``int`` or ``fractions.Fraction``).  Every polynomial carries a
:class:`VariableSet`; arithmetic between polynomials requires equal variable
sets, use :meth:`LaurentPolynomial.align` to move between them.
"""

from __future__ import annotations

import heapq
import json
import re
from fractions import Fraction
from operator import add
from typing import Iterable, Iterator, Mapping, Sequence, Union

Coefficient = Union[int, Fraction]
Exponents = tuple


class VariableAlignmentError(ValueError):
    """Operands live in different variable sets."""


class UnsupportedOperationError(ValueError):
    pass


class NotLaurentError(ValueError):
    """A rational function that was required to be Laurent is not."""


class BindingConflictError(ValueError):
    pass


def _norm(c: Coefficient) -> Coefficient:
    if type(c) is Fraction and c.denominator == 1:
        return c.numerator
    return c


def _coeff_from_text(text: str) -> Coefficient:
    return _norm(Fraction(text))


def coeff_to_text(c: Coefficient) -> str:
    c = _norm(c)
    if isinstance(c, int):
        return str(c)
    return f"{c.numerator}/{c.denominator}"


_NAT_SPLIT = re.compile(r"(\d+)")


def natural_key(name: str) -> tuple:
    """Sort key ordering ``a_2_1`` before ``a_10_1``."""
    return tuple(int(p) if p.isdigit() else p for p in _NAT_SPLIT.split(name))


class VariableSet:
    """An ordered collection of distinct variable names."""

    __slots__ = ("names", "_index")

    def __init__(self, names: Iterable[str]):
        names = tuple(names)
        index = {n: i for i, n in enumerate(names)}
        if len(index) != len(names):
            raise ValueError(f"duplicate variable names in {names}")
        self.names = names
        self._index = index

    @classmethod
    def sorted(cls, names: Iterable[str]) -> "VariableSet":
        return cls(sorted(set(names), key=natural_key))

    def index(self, name: str) -> int:
        return self._index[name]

    def __contains__(self, name: object) -> bool:
        return name in self._index

    def __len__(self) -> int:
        return len(self.names)

    def __iter__(self) -> Iterator[str]:
        return iter(self.names)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, VariableSet) and self.names == other.names

    def __hash__(self) -> int:
        return hash(self.names)

    def __repr__(self) -> str:
        return f"VariableSet({list(self.names)!r})"

    def union(self, other: "VariableSet | Iterable[str]") -> "VariableSet":
        return VariableSet.sorted(list(self.names) + list(other))

    def without(self, *names: str) -> "VariableSet":
        drop = set(names)
        return VariableSet(n for n in self.names if n not in drop)

    def zero_exponents(self) -> tuple:
        return (0,) * len(self.names)


def _as_varset(variables: "VariableSet | Iterable[str]") -> VariableSet:
    return variables if isinstance(variables, VariableSet) else VariableSet(variables)


class LaurentPolynomial:
    """Sparse multivariate Laurent polynomial with exact rational coefficients."""

    __slots__ = ("variables", "terms", "_hash")

    def __init__(self, variables: "VariableSet | Iterable[str]", terms: Mapping[tuple, Coefficient] | None = None):
        self.variables = _as_varset(variables)
        clean = {}
        n = len(self.variables)
        for e, c in (terms or {}).items():
            if c:
                e = tuple(e)
                if len(e) != n:
                    raise ValueError(f"exponent vector {e} does not match {n} variables")
                clean[e] = _norm(c)
        self.terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, variables: VariableSet, terms: dict) -> "LaurentPolynomial":
        # terms must already be clean: tuple keys, nonzero normalized values
        obj = cls.__new__(cls)
        obj.variables = variables
        obj.terms = terms
        obj._hash = None
        return obj

    # -- constructors -------------------------------------------------------

    @classmethod
    def zero(cls, variables) -> "LaurentPolynomial":
        return cls._raw(_as_varset(variables), {})

    @classmethod
    def constant(cls, value: Coefficient, variables) -> "LaurentPolynomial":
        vs = _as_varset(variables)
        value = _norm(value)
        return cls._raw(vs, {vs.zero_exponents(): value} if value else {})

    @classmethod
    def one(cls, variables) -> "LaurentPolynomial":
        return cls.constant(1, variables)

    @classmethod
    def variable(cls, name: str, variables) -> "LaurentPolynomial":
        vs = _as_varset(variables)
        e = [0] * len(vs)
        e[vs.index(name)] = 1
        return cls._raw(vs, {tuple(e): 1})

    @classmethod
    def monomial(cls, exponents: Mapping[str, int] | Sequence[int], variables, coeff: Coefficient = 1) -> "LaurentPolynomial":
        vs = _as_varset(variables)
        if isinstance(exponents, Mapping):
            e = [0] * len(vs)
            for name, p in exponents.items():
                e[vs.index(name)] += p
            exponents = e
        return cls(vs, {tuple(exponents): coeff})

    @classmethod
    def parse(cls, text: str, variables=None) -> "LaurentPolynomial":
        rf = parse_expression(text, variables)
        lp = rf_to_laurent(rf)
        if lp is None:
            raise NotLaurentError(f"not a Laurent polynomial: {text}")
        return lp

    @classmethod
    def from_json(cls, data: "str | Mapping") -> "LaurentPolynomial":
        if isinstance(data, str):
            data = json.loads(data)
        vs = VariableSet(data["variables"])
        return cls(vs, {tuple(t["exps"]): _coeff_from_text(str(t["coeff"])) for t in data["terms"]})

    # -- basic queries ------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __len__(self) -> int:
        return len(self.terms)

    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    def is_constant(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and not any(next(iter(self.terms))))

    def constant_term(self) -> Coefficient:
        return self.terms.get(self.variables.zero_exponents(), 0)

    def coefficient(self, exponents: Mapping[str, int] | Sequence[int]) -> Coefficient:
        if isinstance(exponents, Mapping):
            e = [0] * len(self.variables)
            for name, p in exponents.items():
                e[self.variables.index(name)] = p
            exponents = e
        return self.terms.get(tuple(exponents), 0)

    def support(self) -> list[tuple]:
        return list(self.terms)

    def used_variables(self) -> list[str]:
        used = [False] * len(self.variables)
        for e in self.terms:
            for i, p in enumerate(e):
                if p:
                    used[i] = True
        return [n for n, u in zip(self.variables, used) if u]

    def exponent_bounds(self) -> tuple[list[int], list[int]]:
        """Per-coordinate minimum and maximum exponents over the support."""
        n = len(self.variables)
        if not self.terms:
            return [0] * n, [0] * n
        cols = list(zip(*self.terms))
        return [min(c) for c in cols], [max(c) for c in cols]

    def degree_in(self, name: str) -> tuple[int, int]:
        i = self.variables.index(name)
        exps = [e[i] for e in self.terms] or [0]
        return min(exps), max(exps)

    def depends_on(self, name: str) -> bool:
        if name not in self.variables:
            return False
        i = self.variables.index(name)
        return any(e[i] for e in self.terms)

    def leading_term(self) -> tuple[tuple, Coefficient]:
        """Lexicographically largest term (used by division)."""
        e = max(self.terms)
        return e, self.terms[e]

    def monomial_content(self) -> tuple:
        """Componentwise minimum exponent, i.e. the largest monomial factor."""
        return tuple(self.exponent_bounds()[0])

    # -- alignment ----------------------------------------------------------

    def align(self, variables) -> "LaurentPolynomial":
        """Re-embed into another variable set containing every used variable."""
        vs = _as_varset(variables)
        if vs == self.variables:
            return self
        pos = []
        for i, name in enumerate(self.variables):
            if name in vs:
                pos.append((i, vs.index(name)))
            elif any(e[i] for e in self.terms):
                raise VariableAlignmentError(f"variable {name} is used but missing from {vs}")
        n = len(vs)
        out = {}
        for e, c in self.terms.items():
            new = [0] * n
            for i, j in pos:
                new[j] = e[i]
            out[tuple(new)] = c
        return LaurentPolynomial._raw(vs, out)

    def _check(self, other: "LaurentPolynomial") -> None:
        if self.variables != other.variables:
            raise VariableAlignmentError(
                f"variable sets differ: {self.variables.names} vs {other.variables.names}")

    def _coerce(self, other) -> "LaurentPolynomial":
        if isinstance(other, LaurentPolynomial):
            self._check(other)
            return other
        if isinstance(other, (int, Fraction)):
            return LaurentPolynomial.constant(other, self.variables)
        return NotImplemented

    # -- arithmetic ---------------------------------------------------------

    def __neg__(self) -> "LaurentPolynomial":
        return LaurentPolynomial._raw(self.variables, {e: -c for e, c in self.terms.items()})

    def __add__(self, other) -> "LaurentPolynomial":
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self.terms)
        for e, c in other.terms.items():
            s = out.get(e, 0) + c
            if s:
                out[e] = _norm(s)
            else:
                out.pop(e, None)
        return LaurentPolynomial._raw(self.variables, out)

    __radd__ = __add__

    def __sub__(self, other) -> "LaurentPolynomial":
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other) -> "LaurentPolynomial":
        return (-self) + other

    def __mul__(self, other) -> "LaurentPolynomial":
        if isinstance(other, (int, Fraction)):
            if not other:
                return LaurentPolynomial.zero(self.variables)
            return LaurentPolynomial._raw(self.variables, {e: _norm(c * other) for e, c in self.terms.items()})
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return LaurentPolynomial._raw(self.variables, _mul_terms(self.terms, other.terms))

    __rmul__ = __mul__

    def __truediv__(self, other) -> "LaurentPolynomial":
        if isinstance(other, (int, Fraction)):
            return self * (Fraction(1) / other)
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        q = lp_exact_divide(self, other)
        if q is None:
            raise NotLaurentError("division is not exact")
        return q

    def __pow__(self, n: int) -> "LaurentPolynomial":
        if not isinstance(n, int):
            raise UnsupportedOperationError("exponent must be an integer")
        if n < 0:
            if not self.is_monomial():
                raise UnsupportedOperationError("negative power of a non-monomial")
            (e, c), = self.terms.items()
            return LaurentPolynomial._raw(
                self.variables, {tuple(p * n for p in e): _norm(Fraction(1) / Fraction(c) ** -n)})
        result = LaurentPolynomial.one(self.variables)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def scale_monomial(self, shift: Sequence[int], coeff: Coefficient = 1) -> "LaurentPolynomial":
        """Multiply by ``coeff * x**shift``."""
        out = {tuple(map(add, e, shift)): _norm(c * coeff) for e, c in self.terms.items()}
        return LaurentPolynomial._raw(self.variables, out)

    def map_exponents(self, matrix: Sequence[Sequence[int]], variables) -> "LaurentPolynomial":
        """Monomial substitution: old coordinate ``i`` becomes row ``matrix[i]``."""
        vs = _as_varset(variables)
        n = len(vs)
        rows = [(i, r) for i, r in enumerate(matrix) if any(r)]
        out: dict = {}
        for e, c in self.terms.items():
            new = [0] * n
            for i, r in rows:
                p = e[i]
                if p:
                    for j in range(n):
                        if r[j]:
                            new[j] += p * r[j]
            key = tuple(new)
            s = out.get(key, 0) + c
            if s:
                out[key] = s
            else:
                del out[key]
        return LaurentPolynomial._raw(vs, {e: _norm(c) for e, c in out.items()})

    def split_by(self, name: str) -> dict[int, "LaurentPolynomial"]:
        """Group terms by the exponent of one variable (that exponent is zeroed)."""
        i = self.variables.index(name)
        groups: dict[int, dict] = {}
        for e, c in self.terms.items():
            p = e[i]
            if p:
                e = e[:i] + (0,) + e[i + 1:]
            groups.setdefault(p, {})[e] = c
        return {p: LaurentPolynomial._raw(self.variables, t) for p, t in groups.items()}

    # -- comparison ---------------------------------------------------------

    def _named(self) -> frozenset:
        names = self.variables.names
        return frozenset(
            (tuple(sorted((names[i], p) for i, p in enumerate(e) if p)), c) for e, c in self.terms.items())

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (int, Fraction)):
            return self.is_constant() and self.constant_term() == other
        if not isinstance(other, LaurentPolynomial):
            return NotImplemented
        if self.variables == other.variables:
            return self.terms == other.terms
        return self._named() == other._named()

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(self._named())
        return self._hash

    # -- serialization ------------------------------------------------------

    def _canonical_order(self) -> list[tuple]:
        names = self.variables.names
        perm = sorted(range(len(names)), key=lambda i: natural_key(names[i]))

        def key(e):
            return (sum(e), tuple(e[i] for i in perm))

        return sorted(self.terms, key=key, reverse=True)

    def _monomial_text(self, e: tuple) -> str:
        names = self.variables.names
        order = sorted(range(len(names)), key=lambda i: natural_key(names[i]))
        parts = []
        for want_positive in (True, False):
            for i in order:
                p = e[i]
                if p and (p > 0) == want_positive:
                    parts.append(names[i] if p == 1 else f"{names[i]}^{p}")
        return "*".join(parts)

    def to_text(self) -> str:
        if not self.terms:
            return "0"
        out = []
        for e in self._canonical_order():
            c = self.terms[e]
            mono = self._monomial_text(e)
            if not mono:
                out.append(coeff_to_text(c))
            elif c == 1:
                out.append(mono)
            elif c == -1:
                out.append("-" + mono)
            else:
                out.append(f"{coeff_to_text(c)}*{mono}")
        return " + ".join(out)

    def to_json_data(self) -> dict:
        return {
            "variables": list(self.variables.names),
            "terms": [{"coeff": coeff_to_text(self.terms[e]), "exps": list(e)} for e in self._canonical_order()],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_data())

    def __str__(self) -> str:
        return self.to_text()

    def __repr__(self) -> str:
        return f"LaurentPolynomial({self.to_text()!r})"


def _mul_terms(t1: dict, t2: dict) -> dict:
    if len(t1) < len(t2):
        t1, t2 = t2, t1
    out: dict = {}
    get = out.get
    items2 = list(t2.items())
    for e1, c1 in t1.items():
        for e2, c2 in items2:
            e = tuple(map(add, e1, e2))
            out[e] = get(e, 0) + c1 * c2
    return {e: _norm(c) for e, c in out.items() if c}


def lp_arith(op: str, a: LaurentPolynomial, b) -> LaurentPolynomial:
    if op == "add":
        return a + b
    if op == "mul":
        return a * b
    if op == "pow":
        return a ** b
    raise UnsupportedOperationError(f"unknown operation {op!r}")


# -- exact division ------------------------------------------------------------


def _split_content(p: LaurentPolynomial) -> tuple[tuple, LaurentPolynomial]:
    content = p.monomial_content()
    if any(content):
        neg = tuple(-x for x in content)
        return content, p.scale_monomial(neg)
    return content, p


def _poly_divide(num: dict, den: dict, vs: VariableSet) -> dict | None:
    """Divide genuine polynomials (nonnegative exponents) in lex order."""
    lead_e = max(den)
    lead_c = den[lead_e]
    den_items = [(e, c) for e, c in den.items()]
    # cheap attempt: the quotient is a single monomial
    e0 = max(num)
    shift = tuple(x - y for x, y in zip(e0, lead_e))
    if min(shift) < 0:
        return None
    q0 = Fraction(num[e0]) / lead_c
    if len(num) == len(den):
        guess = {tuple(map(add, e, shift)): _norm(c * q0) for e, c in den_items}
        if guess == num:
            return {shift: _norm(q0)}
    rem = dict(num)
    heap = [tuple(-x for x in e) for e in rem]
    heapq.heapify(heap)
    quotient: dict = {}
    while heap:
        neg = heapq.heappop(heap)
        e = tuple(-x for x in neg)
        c = rem.get(e)
        if not c:
            continue
        shift = tuple(x - y for x, y in zip(e, lead_e))
        if min(shift) < 0:
            return None
        if isinstance(c, int) and isinstance(lead_c, int) and c % lead_c == 0:
            q = c // lead_c
        else:
            q = _norm(Fraction(c) / lead_c)
        quotient[shift] = q
        for de, dc in den_items:
            t = tuple(map(add, de, shift))
            s = rem.get(t, 0) - q * dc
            if s:
                if t not in rem:
                    heapq.heappush(heap, tuple(-x for x in t))
                rem[t] = s
            else:
                rem.pop(t, None)
    return {e: _norm(c) for e, c in quotient.items()}


def lp_exact_divide(num: LaurentPolynomial, den: LaurentPolynomial) -> LaurentPolynomial | None:
    """Exact quotient ``num / den`` as a Laurent polynomial, or ``None``."""
    num._check(den)
    if den.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    vs = num.variables
    if num.is_zero():
        return num
    if den.is_monomial():
        (e, c), = den.terms.items()
        return num.scale_monomial(tuple(-x for x in e), Fraction(1) / Fraction(c))
    cn, n_poly = _split_content(num)
    cd, d_poly = _split_content(den)
    q = _poly_divide(n_poly.terms, d_poly.terms, vs)
    if q is None:
        return None
    shift = tuple(x - y for x, y in zip(cn, cd))
    return LaurentPolynomial._raw(vs, q).scale_monomial(shift)


# -- rational functions --------------------------------------------------------


class RationalFunction:
    """Quotient of Laurent polynomials, normalized only by monomial content.

    The denominator is stored as a genuine polynomial with no monomial factor
    and leading (lex) coefficient one.
    """

    __slots__ = ("numerator", "denominator")

    def __init__(self, numerator: LaurentPolynomial, denominator: LaurentPolynomial | None = None):
        if denominator is None:
            denominator = LaurentPolynomial.one(numerator.variables)
        numerator._check(denominator)
        if denominator.is_zero():
            raise ZeroDivisionError("zero denominator")
        content, d = _split_content(denominator)
        if any(content):
            numerator = numerator.scale_monomial(tuple(-x for x in content))
        _, lc = d.leading_term()
        if d.is_monomial():
            numerator = numerator * (Fraction(1) / Fraction(lc))
            d = LaurentPolynomial.one(d.variables)
        elif lc != 1:
            inv = Fraction(1) / Fraction(lc)
            numerator = numerator * inv
            d = d * inv
        self.numerator = numerator
        self.denominator = d

    @classmethod
    def of(cls, value, variables=None) -> "RationalFunction":
        if isinstance(value, RationalFunction):
            return value
        if isinstance(value, LaurentPolynomial):
            return cls(value)
        if isinstance(value, PowerProduct):
            return value.to_rational()
        if isinstance(value, (int, Fraction)):
            return cls(LaurentPolynomial.constant(value, variables or ()))
        raise TypeError(f"cannot convert {type(value).__name__} to a rational function")

    @property
    def variables(self) -> VariableSet:
        return self.numerator.variables

    def is_laurent(self) -> bool:
        return self.denominator == 1

    def align(self, variables) -> "RationalFunction":
        return RationalFunction(self.numerator.align(variables), self.denominator.align(variables))

    def _coerce(self, other) -> "RationalFunction":
        if isinstance(other, RationalFunction):
            return other
        if isinstance(other, (LaurentPolynomial, int, Fraction)):
            if not isinstance(other, LaurentPolynomial):
                other = LaurentPolynomial.constant(other, self.variables)
            return RationalFunction(other)
        return NotImplemented

    def __add__(self, other) -> "RationalFunction":
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if self.denominator == other.denominator:
            return RationalFunction(self.numerator + other.numerator, self.denominator)
        return RationalFunction(self.numerator * other.denominator + other.numerator * self.denominator,
                                self.denominator * other.denominator)

    __radd__ = __add__

    def __neg__(self) -> "RationalFunction":
        return RationalFunction(-self.numerator, self.denominator)

    def __sub__(self, other) -> "RationalFunction":
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other) -> "RationalFunction":
        return (-self) + other

    def __mul__(self, other) -> "RationalFunction":
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return RationalFunction(self.numerator * other.numerator, self.denominator * other.denominator)

    __rmul__ = __mul__

    def inverse(self) -> "RationalFunction":
        if self.numerator.is_zero():
            raise ZeroDivisionError("inverse of zero")
        return RationalFunction(self.denominator, self.numerator)

    def __truediv__(self, other) -> "RationalFunction":
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __rtruediv__(self, other) -> "RationalFunction":
        return self.inverse() * other

    def __pow__(self, n: int) -> "RationalFunction":
        if n < 0:
            return self.inverse() ** -n
        return RationalFunction(self.numerator ** n, self.denominator ** n)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (int, Fraction, LaurentPolynomial)):
            other = RationalFunction.of(other, self.variables)
        if not isinstance(other, RationalFunction):
            return NotImplemented
        if self.variables != other.variables:
            vs = self.variables.union(other.variables)
            return self.align(vs) == other.align(vs)
        return self.numerator * other.denominator == other.numerator * self.denominator

    __hash__ = None  # equality is not structural

    def to_text(self) -> str:
        if self.is_laurent():
            return self.numerator.to_text()
        return f"({self.numerator.to_text()})/({self.denominator.to_text()})"

    def to_json_data(self) -> dict:
        return {"numerator": self.numerator.to_json_data(), "denominator": self.denominator.to_json_data()}

    def __str__(self) -> str:
        return self.to_text()

    def __repr__(self) -> str:
        return f"RationalFunction({self.to_text()!r})"


def rf_to_laurent(r: RationalFunction) -> LaurentPolynomial | None:
    """The Laurent polynomial equal to ``r``, or ``None`` when there is none."""
    if r.is_laurent():
        return r.numerator
    return lp_exact_divide(r.numerator, r.denominator)


def require_laurent(r: RationalFunction, what: str = "expression") -> LaurentPolynomial:
    lp = rf_to_laurent(r)
    if lp is None:
        raise NotLaurentError(f"{what} is not a Laurent polynomial: {r}")
    return lp


# -- substitution ----------------------------------------------------------


class PowerProduct:
    """A value ``coeff * x**monomial * prod(factor**power)``.

    Bindings of this shape let substitution track shared factors instead of
    expanding common denominators blindly.
    """

    __slots__ = ("coeff", "monomial", "factors", "variables")

    def __init__(self, variables, coeff: Coefficient = 1, monomial: Mapping[str, int] | None = None,
                 factors: Sequence[tuple[LaurentPolynomial, int]] = ()):
        vs = _as_varset(variables)
        e = [0] * len(vs)
        for name, p in (monomial or {}).items():
            e[vs.index(name)] += p
        self.variables = vs
        self.coeff = _norm(Fraction(coeff))
        self.monomial = tuple(e)
        fs = []
        for poly, power in factors:
            if not power:
                continue
            poly = poly.align(vs)
            content, core = _split_content(poly)
            self.monomial = tuple(m + power * c for m, c in zip(self.monomial, content))
            if core.is_monomial():
                (_, c), = core.terms.items()
                self.coeff = _norm(self.coeff * Fraction(c) ** power)
                continue
            fs.append((core, power))
        self.factors = tuple(fs)

    @classmethod
    def of(cls, value, variables) -> "PowerProduct":
        vs = _as_varset(variables)
        if isinstance(value, PowerProduct):
            if value.variables == vs:
                return value
            names = value.variables.names
            mono = {names[i]: p for i, p in enumerate(value.monomial) if p}
            return cls(vs, value.coeff, mono, [(f.align(vs), p) for f, p in value.factors])
        if isinstance(value, (int, Fraction)):
            return cls(vs, value)
        rf = RationalFunction.of(value).align(vs)
        return cls(vs, 1, None, [(rf.numerator, 1), (rf.denominator, -1)])

    def to_rational(self) -> RationalFunction:
        vs = self.variables
        num = LaurentPolynomial.monomial(self.monomial, vs, self.coeff)
        den = LaurentPolynomial.one(vs)
        for f, p in self.factors:
            if p > 0:
                num = num * f ** p
            else:
                den = den * f ** -p
        return RationalFunction(num, den)


def _binding_items(bindings) -> dict:
    if isinstance(bindings, Mapping):
        return dict(bindings)
    out: dict = {}
    for name, value in bindings:
        if name in out and not _same_value(out[name], value):
            raise BindingConflictError(f"variable {name} is bound twice to different values")
        out[name] = value
    return out


def _same_value(a, b) -> bool:
    try:
        return RationalFunction.of(a) == RationalFunction.of(b)
    except TypeError:
        return a == b


class _Pullback:
    """Substitution of bound variables into Laurent polynomials."""

    def __init__(self, source: VariableSet, bindings: Mapping, target: VariableSet | None = None):
        bindings = _binding_items(bindings)
        for name in bindings:
            if name not in source:
                raise BindingConflictError(f"bound variable {name} is not among {source.names}")
        if target is None:
            names = [n for n in source if n not in bindings]
            for v in bindings.values():
                if isinstance(v, (RationalFunction, LaurentPolynomial, PowerProduct)):
                    vv = v.variables
                    names.extend(vv)
            target = VariableSet.sorted(names)
        self.source = source
        self.target = target
        factors: list[LaurentPolynomial] = []
        index: dict = {}
        rows = []
        n = len(target)
        for name in source:
            if name in bindings:
                pp = PowerProduct.of(bindings[name], target)
                fpow = {}
                for f, p in pp.factors:
                    if f not in index:
                        index[f] = len(factors)
                        factors.append(f)
                    fpow[index[f]] = fpow.get(index[f], 0) + p
                rows.append((pp.coeff, pp.monomial, fpow))
            else:
                if name not in target:
                    raise BindingConflictError(f"unbound variable {name} is missing from the output variables")
                e = [0] * n
                e[target.index(name)] = 1
                rows.append((1, tuple(e), {}))
        self.factors = factors
        self.rows = rows
        self._powers: dict = {}

    def _factor_power(self, i: int, p: int) -> LaurentPolynomial:
        key = (i, p)
        if key not in self._powers:
            if p == 1:
                self._powers[key] = self.factors[i]
            elif p % 2 == 0:
                h = self._factor_power(i, p // 2)
                self._powers[key] = h * h
            else:
                self._powers[key] = self._factor_power(i, p - 1) * self.factors[i]
        return self._powers[key]

    def grouped(self, poly: LaurentPolynomial) -> dict[tuple, LaurentPolynomial]:
        """Map factor-exponent vectors to Laurent coefficients."""
        if poly.variables != self.source:
            poly = poly.align(self.source)
        nf = len(self.factors)
        n = len(self.target)
        rows = self.rows
        groups: dict[tuple, dict] = {}
        for e, c in poly.terms.items():
            coeff = Fraction(c)
            mono = [0] * n
            kappa = [0] * nf
            for i, p in enumerate(e):
                if not p:
                    continue
                rc, rm, rf = rows[i]
                if rc != 1:
                    coeff *= Fraction(rc) ** p
                for j, m in enumerate(rm):
                    if m:
                        mono[j] += p * m
                for fi, fp in rf.items():
                    kappa[fi] += p * fp
            g = groups.setdefault(tuple(kappa), {})
            key = tuple(mono)
            s = g.get(key, 0) + coeff
            if s:
                g[key] = s
            else:
                g.pop(key, None)
        return {k: LaurentPolynomial(self.target, t) for k, t in groups.items() if t}

    def apply(self, poly: LaurentPolynomial) -> tuple[LaurentPolynomial, list[tuple[int, int]]]:
        """Return ``(numerator, [(factor_index, power), ...])`` with denominator the product."""
        groups = self.grouped(poly)
        if not groups:
            return LaurentPolynomial.zero(self.target), []
        nf = len(self.factors)
        low = [min(k[i] for k in groups) for i in range(nf)]
        base = [min(0, x) for x in low]
        num = LaurentPolynomial.zero(self.target)
        for kappa, c in groups.items():
            term = c
            for i in range(nf):
                p = kappa[i] - base[i]
                if p:
                    term = term * self._factor_power(i, p)
            num = num + term
        den = [(i, -b) for i, b in enumerate(base) if b]
        return num, den

    def rational(self, poly: LaurentPolynomial) -> RationalFunction:
        num, den = self.apply(poly)
        d = LaurentPolynomial.one(self.target)
        for i, p in den:
            d = d * self._factor_power(i, p)
        return RationalFunction(num, d)

    def laurent(self, poly: LaurentPolynomial) -> LaurentPolynomial | None:
        num, den = self.apply(poly)
        for i, p in den:
            for _ in range(p):
                num = lp_exact_divide(num, self.factors[i])
                if num is None:
                    return None
        return num


def pullback(poly: LaurentPolynomial, bindings, target=None) -> RationalFunction:
    """Substitute ``bindings`` into a Laurent polynomial."""
    pb = _Pullback(poly.variables, bindings, _as_varset(target) if target is not None else None)
    return pb.rational(poly)


def rf_substitute(target: RationalFunction, bindings, variables=None) -> RationalFunction:
    """Simultaneously substitute ``bindings`` into a rational function.

    Unbound variables are carried through under their own names.
    """
    target = RationalFunction.of(target)
    pb = _Pullback(target.variables, bindings, _as_varset(variables) if variables is not None else None)
    num = pb.rational(target.numerator)
    if target.denominator == 1:
        return num
    return num / pb.rational(target.denominator)


# -- parsing -------------------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z][A-Za-z0-9_']*)|(\*\*|[-+*/^()]))")


def _tokenize(text: str) -> list[tuple[str, str]]:
    pos = 0
    out = []
    text = text.replace("−", "-")
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if not m:
            raise ValueError(f"cannot parse {text[pos:]!r}")
        num, name, op = m.groups()
        if num is not None:
            out.append(("num", num))
        elif name is not None:
            out.append(("name", name))
        else:
            out.append(("op", "^" if op == "**" else op))
        pos = m.end()
    return out


class _Parser:
    def __init__(self, tokens, variables: VariableSet):
        self.tokens = tokens
        self.pos = 0
        self.vs = variables

    def peek(self):
        return self.tokens[self.pos] if self.pos < len(self.tokens) else (None, None)

    def take(self, value=None):
        tok = self.peek()
        if tok[0] is None or (value is not None and tok[1] != value):
            raise ValueError(f"expected {value!r} at token {self.pos}, found {tok[1]!r}")
        self.pos += 1
        return tok

    def expr(self) -> RationalFunction:
        value = self.term()
        while self.peek() in (("op", "+"), ("op", "-")):
            op = self.take()[1]
            rhs = self.term()
            value = value + rhs if op == "+" else value - rhs
        return value

    def term(self) -> RationalFunction:
        value = self.unary()
        while self.peek() in (("op", "*"), ("op", "/")):
            op = self.take()[1]
            rhs = self.unary()
            value = value * rhs if op == "*" else value / rhs
        return value

    def unary(self) -> RationalFunction:
        if self.peek() == ("op", "-"):
            self.take()
            return -self.unary()
        if self.peek() == ("op", "+"):
            self.take()
            return self.unary()
        return self.power()

    def power(self) -> RationalFunction:
        base = self.atom()
        if self.peek() == ("op", "^"):
            self.take()
            sign = 1
            if self.peek() == ("op", "-"):
                self.take()
                sign = -1
            if self.peek() == ("op", "("):
                self.take()
                if self.peek() == ("op", "-"):
                    self.take()
                    sign = -sign
                exp = int(self.take()[1])
                self.take(")")
            else:
                kind, val = self.take()
                if kind != "num":
                    raise ValueError("exponents must be integers")
                exp = int(val)
            return base ** (sign * exp)
        return base

    def atom(self) -> RationalFunction:
        kind, val = self.peek()
        if kind == "num":
            self.take()
            return RationalFunction(LaurentPolynomial.constant(int(val), self.vs))
        if kind == "name":
            self.take()
            return RationalFunction(LaurentPolynomial.variable(val, self.vs))
        if (kind, val) == ("op", "("):
            self.take()
            value = self.expr()
            self.take(")")
            return value
        raise ValueError(f"unexpected token {val!r}")


def parse_expression(text: str, variables=None) -> RationalFunction:
    """Parse an arithmetic expression in ``+ - * / ^`` into a rational function.

    Without an explicit variable set the used names are sorted naturally.
    """
    tokens = _tokenize(text)
    if variables is None:
        vs = VariableSet.sorted(v for k, v in tokens if k == "name")
    else:
        vs = _as_varset(variables)
    parser = _Parser(tokens, vs)
    value = parser.expr()
    if parser.pos != len(tokens):
        raise ValueError(f"trailing input in {text!r}")
    return value


# -- constant terms --------------------------------------------------------------


class _Pruner:
    """Drops monomials that cannot cancel against the remaining factors of f."""

    def __init__(self, f: LaurentPolynomial, total: int):
        self.lo, self.hi = f.exponent_bounds()
        self.total = total

    def prune(self, terms: dict, used: int) -> dict:
        rem = self.total - used
        lo = [rem * x for x in self.lo]
        hi = [rem * x for x in self.hi]
        out = {}
        for e, c in terms.items():
            for x, a, b in zip(e, lo, hi):
                if not (a <= -x <= b):
                    break
            else:
                out[e] = c
        return out


def _pruned_power(f: LaurentPolynomial, m: int, pruner: _Pruner) -> dict:
    """Terms of ``f**m`` that can still be cancelled, by binary powering."""
    result: dict | None = None
    result_deg = 0
    base = pruner.prune(dict(f.terms), 1)
    base_deg = 1
    while m:
        if m & 1:
            if result is None:
                result = base
            else:
                result = _mul_terms(result, base)
            result_deg += base_deg
            result = pruner.prune(result, result_deg)
        m >>= 1
        if m:
            base_deg *= 2
            base = pruner.prune(_mul_terms(base, base), base_deg)
    return result if result is not None else {f.variables.zero_exponents(): 1}


def _pair_constant(hi: dict, lo: dict) -> Coefficient:
    total = 0
    if len(hi) > len(lo):
        hi, lo = lo, hi
    for e, c in hi.items():
        d = lo.get(tuple(-x for x in e))
        if d:
            total += c * d
    return _norm(total)


def lp_constant_term(f: LaurentPolynomial, power: int) -> Coefficient:
    """Constant term of ``f**power`` without expanding the whole power.

    ``f**ceil(j/2)`` and ``f**floor(j/2)`` are built with pruning, then terms
    with opposite exponents are paired.
    """
    if power < 0:
        raise ValueError("power must be nonnegative")
    if power == 0:
        return 1
    if f.is_zero():
        return 0
    pruner = _Pruner(f, power)
    a, b = (power + 1) // 2, power // 2
    big = _pruned_power(f, a, pruner)
    small = big if b == a else _pruned_power(f, b, pruner) if b else {f.variables.zero_exponents(): 1}
    return _pair_constant(big, small)


def constant_term_sequence(f: LaurentPolynomial, n_terms: int) -> list[Coefficient]:
    """``[ct(f**0), ..., ct(f**n_terms)]`` sharing one chain of pruned powers."""
    if f.is_zero():
        return [1] + [0] * n_terms
    pruner = _Pruner(f, n_terms)
    powers = [{f.variables.zero_exponents(): 1}]
    f_terms = dict(f.terms)
    for m in range(1, (n_terms + 1) // 2 + 1):
        powers.append(pruner.prune(_mul_terms(powers[-1], f_terms), m))
    out = []
    for j in range(n_terms + 1):
        out.append(_pair_constant(powers[(j + 1) // 2], powers[j // 2]))
    return out
