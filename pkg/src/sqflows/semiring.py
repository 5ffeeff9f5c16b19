"""Exact commutative-semiring arithmetic on plain Python values.

A :class:`Carrier` bundles the two operations (and optional division) of one
commutative semiring; the values themselves are ordinary Python objects:
``int`` for the counting and tropical-integer carriers, ``Fraction`` for the
rational ones, :class:`Poly` for the polynomial carriers, and the ``STAR``
sentinel for the adapter that models undefined values.  Everything is exact;
no floating point appears anywhere.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable


class SemiringError(ValueError):
    """An operation the carrier cannot perform (missing division, bad k, ...)."""


class CarrierMismatch(SemiringError):
    """An operand is not an element of the carrier."""


class _Star:
    """Extra neutral element: neutral for addition, absorbing for multiplication."""

    __slots__ = ()
    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "*"


STAR = _Star()


class Carrier:
    """Operations of one commutative semiring.

    Subclasses provide the membership test and the raw ``_add``/``_mul``
    (plus ``_div``/``_neg`` where supported); this base class layers the
    operand checking and the derived operations on top.
    """

    name = "carrier"
    zero = None
    one = None
    has_zero = False
    has_one = False
    has_div = False
    is_ring = False

    def contains(self, a) -> bool:
        raise NotImplementedError

    def check(self, *values) -> None:
        for a in values:
            if not self.contains(a):
                raise CarrierMismatch(f"{a!r} is not an element of {self.name}")

    def add(self, a, b):
        self.check(a, b)
        return self._add(a, b)

    def mul(self, a, b):
        self.check(a, b)
        return self._mul(a, b)

    def div(self, a, b):
        if not self.has_div:
            raise SemiringError(f"{self.name} has no division")
        self.check(a, b)
        return self._div(a, b)

    def neg(self, a):
        if not self.is_ring:
            raise SemiringError(f"{self.name} has no additive inverses")
        self.check(a)
        return self._neg(a)

    def nat_scale(self, k: int, a):
        """The k-fold sum a + ... + a; k = 0 needs an additive identity."""
        if not isinstance(k, int) or k < 0:
            raise SemiringError("nat_scale needs an integer k >= 0")
        if k == 0:
            if not self.has_zero:
                raise SemiringError(f"nat_scale(0, _) is undefined in {self.name}")
            return self.zero
        self.check(a)
        acc = a
        for _ in range(k - 1):
            acc = self._add(acc, a)
        return acc

    def sum(self, values: Iterable):
        """Fold of add; empty iterables need an additive identity."""
        acc = None
        for v in values:
            acc = v if acc is None else self.add(acc, v)
        if acc is None:
            if not self.has_zero:
                raise SemiringError(f"empty sum is undefined in {self.name}")
            return self.zero
        return acc

    def product(self, values: Iterable):
        acc = None
        for v in values:
            acc = v if acc is None else self.mul(acc, v)
        if acc is None:
            if not self.has_one:
                raise SemiringError(f"empty product is undefined in {self.name}")
            return self.one
        return acc

    def render(self, a) -> str:
        raise NotImplementedError

    def parse(self, text: str):
        raise NotImplementedError

    def __repr__(self):
        return self.name


class CountingNat(Carrier):
    """Natural numbers under ordinary + and *."""

    name = "nat"
    zero = 0
    one = 1
    has_zero = True
    has_one = True

    def contains(self, a):
        return isinstance(a, int) and not isinstance(a, bool) and a >= 0

    def _add(self, a, b):
        return a + b

    def _mul(self, a, b):
        return a * b

    def render(self, a):
        return str(a)

    def parse(self, text):
        value = int(text)
        self.check(value)
        return value


class ExactInt(Carrier):
    """The ring of integers."""

    name = "int"
    zero = 0
    one = 1
    has_zero = True
    has_one = True
    is_ring = True

    def contains(self, a):
        return isinstance(a, int) and not isinstance(a, bool)

    def _add(self, a, b):
        return a + b

    def _mul(self, a, b):
        return a * b

    def _neg(self, a):
        return -a

    def render(self, a):
        return str(a)

    def parse(self, text):
        return int(text)


class PositiveRational(Carrier):
    """Positive rationals under + and *; division available, no zero."""

    name = "posrat"
    one = Fraction(1)
    has_one = True
    has_div = True

    def contains(self, a):
        return isinstance(a, (int, Fraction)) and not isinstance(a, bool) and a > 0

    def _add(self, a, b):
        return Fraction(a) + Fraction(b)

    def _mul(self, a, b):
        return Fraction(a) * Fraction(b)

    def _div(self, a, b):
        return Fraction(a) / Fraction(b)

    def render(self, a):
        return str(Fraction(a))

    def parse(self, text):
        value = Fraction(text)
        self.check(value)
        return value


class TropicalInt(Carrier):
    """Integers under max and +; division is subtraction. Idempotent addition."""

    name = "tropint"
    one = 0
    has_one = True
    has_div = True

    def contains(self, a):
        return isinstance(a, int) and not isinstance(a, bool)

    def _add(self, a, b):
        return a if a >= b else b

    def _mul(self, a, b):
        return a + b

    def _div(self, a, b):
        return a - b

    def render(self, a):
        return str(a)

    def parse(self, text):
        return int(text)


class TropicalRational(Carrier):
    """Rationals under max and +; division is subtraction."""

    name = "troprat"
    one = Fraction(0)
    has_one = True
    has_div = True

    def contains(self, a):
        return isinstance(a, (int, Fraction)) and not isinstance(a, bool)

    def _add(self, a, b):
        return Fraction(max(a, b))

    def _mul(self, a, b):
        return Fraction(a) + Fraction(b)

    def _div(self, a, b):
        return Fraction(a) - Fraction(b)

    def render(self, a):
        return str(Fraction(a))

    def parse(self, text):
        return Fraction(text)


def _mono_mul(m1, m2):
    exps = dict(m1)
    for var, e in m2:
        exps[var] = exps.get(var, 0) + e
    return tuple(sorted(exps.items()))


class Poly:
    """Sparse multivariate polynomial with integer coefficients.

    A monomial is a tuple of (variable, exponent) pairs sorted by variable
    name, exponents >= 1; the constant monomial is the empty tuple.  Terms
    with zero coefficient are dropped, so equality is exact monomial-multiset
    equality of the canonical form.
    """

    __slots__ = ("terms", "nonneg")

    def __init__(self, terms=None):
        merged = {}
        if terms:
            items = terms.items() if isinstance(terms, dict) else terms
            for mono, coeff in items:
                merged[mono] = merged.get(mono, 0) + coeff
        self.terms = {m: c for m, c in merged.items() if c}
        self.nonneg = all(c > 0 for c in self.terms.values())

    @classmethod
    def variable(cls, name: str, exp: int = 1) -> "Poly":
        if exp < 1:
            return cls.const(1)
        return cls({((name, exp),): 1})

    @classmethod
    def const(cls, c: int) -> "Poly":
        return cls({(): c} if c else {})

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def __add__(self, other):
        if isinstance(other, int):
            other = Poly.const(other)
        out = dict(self.terms)
        for mono, coeff in other.terms.items():
            out[mono] = out.get(mono, 0) + coeff
        return Poly(out)

    __radd__ = __add__

    def __mul__(self, other):
        if isinstance(other, int):
            other = Poly.const(other)
        out = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                mono = _mono_mul(m1, m2)
                out[mono] = out.get(mono, 0) + c1 * c2
        return Poly(out)

    __rmul__ = __mul__

    def __neg__(self):
        return Poly({m: -c for m, c in self.terms.items()})

    def __pow__(self, n: int):
        acc = Poly.const(1)
        for _ in range(n):
            acc = acc * self
        return acc

    def __eq__(self, other):
        return isinstance(other, Poly) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __repr__(self):
        return f"Poly({render_poly(self)!r})"

    def variables(self):
        return sorted({var for mono in self.terms for var, _ in mono})

    def evaluate(self, env, carrier: Carrier):
        """Substitute carrier values for the variables and reduce.

        The result is the image of the polynomial under the evaluation
        homomorphism; negative coefficients need a ring carrier.
        """
        if not self.terms:
            if not carrier.has_zero:
                raise SemiringError(f"zero polynomial has no image in {carrier.name}")
            return carrier.zero
        total = None
        for mono in sorted(self.terms):
            coeff = self.terms[mono]
            value = carrier.one
            for var, exp in mono:
                for _ in range(exp):
                    value = carrier.mul(value, env[var])
            if coeff > 0:
                term = carrier.nat_scale(coeff, value)
            else:
                term = carrier.neg(carrier.nat_scale(-coeff, value))
            total = term if total is None else carrier.add(total, term)
        return total


def render_poly(p: Poly) -> str:
    if not p.terms:
        return "0"
    chunks = []
    for mono in sorted(p.terms):
        coeff = p.terms[mono]
        parts = []
        if coeff != 1 or not mono:
            parts.append(str(coeff))
        for var, exp in mono:
            parts.append(var if exp == 1 else f"{var}^{exp}")
        chunks.append("·".join(parts))
    return " + ".join(chunks)


def parse_poly(text: str) -> Poly:
    text = text.strip()
    if text == "0":
        return Poly()
    terms = []
    for chunk in text.split(" + "):
        coeff = 1
        exps: dict[str, int] = {}
        for part in chunk.split("·"):
            part = part.strip()
            try:
                coeff *= int(part)
                continue
            except ValueError:
                pass
            name, _, e = part.partition("^")
            exps[name] = exps.get(name, 0) + (int(e) if e else 1)
        terms.append((tuple(sorted(exps.items())), coeff))
    return Poly(terms)


class PolyNat(Carrier):
    """Multivariate polynomials with natural coefficients.

    The universal verification carrier: identities that hold here hold under
    every substitution into every commutative semiring.
    """

    name = "polynat"
    zero = Poly()
    one = Poly.const(1)
    has_zero = True
    has_one = True

    def contains(self, a):
        return isinstance(a, Poly) and a.nonneg

    def _add(self, a, b):
        return a + b

    def _mul(self, a, b):
        return a * b

    def render(self, a):
        return render_poly(a)

    def parse(self, text):
        value = parse_poly(text)
        self.check(value)
        return value


class PolyInt(Carrier):
    """Multivariate polynomials with integer coefficients; a commutative ring."""

    name = "polyint"
    zero = Poly()
    one = Poly.const(1)
    has_zero = True
    has_one = True
    is_ring = True

    def contains(self, a):
        return isinstance(a, Poly)

    def _add(self, a, b):
        return a + b

    def _mul(self, a, b):
        return a * b

    def _neg(self, a):
        return -a

    def render(self, a):
        return render_poly(a)

    def parse(self, text):
        return parse_poly(text)


class Starred(Carrier):
    """Adapter adding the extra neutral element ``STAR`` to a carrier.

    STAR + a = a and STAR * a = STAR for every a (including STAR itself);
    it stands for the undefined value of an empty flow sum.
    """

    def __init__(self, inner: Carrier):
        self.inner = inner
        self.name = f"starred({inner.name})"
        self.one = inner.one
        self.has_one = inner.has_one
        self.has_div = inner.has_div

    def contains(self, a):
        return a is STAR or self.inner.contains(a)

    def _add(self, a, b):
        if a is STAR:
            return b
        if b is STAR:
            return a
        return self.inner._add(a, b)

    def _mul(self, a, b):
        if a is STAR or b is STAR:
            return STAR
        return self.inner._mul(a, b)

    def _div(self, a, b):
        if b is STAR:
            raise SemiringError("division by *")
        if a is STAR:
            return STAR
        return self.inner._div(a, b)

    def render(self, a):
        return "*" if a is STAR else self.inner.render(a)

    def parse(self, text):
        return STAR if text.strip() == "*" else self.inner.parse(text)


COUNTING_NAT = CountingNat()
EXACT_INT = ExactInt()
POSITIVE_RATIONAL = PositiveRational()
TROPICAL_INT = TropicalInt()
TROPICAL_RATIONAL = TropicalRational()
POLY_NAT = PolyNat()
POLY_INT = PolyInt()

CARRIERS = {
    c.name: c
    for c in (
        COUNTING_NAT,
        EXACT_INT,
        POSITIVE_RATIONAL,
        TROPICAL_INT,
        TROPICAL_RATIONAL,
        POLY_NAT,
        POLY_INT,
    )
}
