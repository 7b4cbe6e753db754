"""Sparse multivariate polynomials, term orders, and ideal presentations.

Monomials are encoded as single integers ("order keys") chosen so that

  * integer comparison of keys equals the term-order comparison, and
  * key addition equals monomial multiplication.

For degrevlex with priority x_(s0) > x_(s1) > ... the key is

    deg * K^n  -  sum_j  e[rev_j] * K^(n-1-j)

with K = 2^40 and rev the reversed priority; for lex it is the plain
base-K value of the prioritized exponents.  Exponents are validated to
stay below 2^31 wherever monomials are created or multiplied through the
public API, so key digits can never collide; exceeding the bound raises
OverflowError instead of silently corrupting lengths.

A polynomial stores its terms as a tuple of (key, raw coefficient) pairs
sorted strictly descending; the raw coefficients live in the ring's
coefficient domain (see coeff).  The `terms` property decodes to public
(FieldElement, Monomial) pairs.
"""

from __future__ import annotations

from ._expr import Evaluator
from .coeff import Field, FieldElement
from .errors import StructuralError, ValidationError

KEY_BASE = 1 << 40
MAX_EXPONENT = 1 << 31


class IntegerDomain:
    """Plain integer coefficients; used only to hold parametric families
    over Z before reduction mod p.  Not a field: no inverses."""

    kind = "integers"
    characteristic = 0
    zero = 0
    one = 1

    @staticmethod
    def add(a, b):
        return a + b

    @staticmethod
    def sub(a, b):
        return a - b

    @staticmethod
    def neg(a):
        return -a

    @staticmethod
    def mul(a, b):
        return a * b

    @staticmethod
    def is_zero(a):
        return a == 0

    @staticmethod
    def from_int(n):
        return n

    @staticmethod
    def pow(a, n):
        return a**n

    @staticmethod
    def format_raw(a):
        return str(a)

    def _parse_atom(self, tok):
        if isinstance(tok, int):
            return tok
        raise ValidationError(f"unknown symbol {tok!r} over the integers")

    def __eq__(self, other):
        return isinstance(other, IntegerDomain)

    def __hash__(self):
        return hash("integers")

    def __repr__(self):
        return "ZZ"


class TermOrder:
    """A monomial order: 'degrevlex' (default) or 'lex', with an optional
    variable priority permutation (indices, most significant first)."""

    KINDS = ("degrevlex", "lex")

    def __init__(self, kind: str = "degrevlex", priority=None):
        if kind not in self.KINDS:
            raise ValidationError(f"unknown term order {kind!r}")
        self.kind = kind
        self.priority = None if priority is None else tuple(priority)

    def resolved_priority(self, nvars: int):
        if self.priority is None:
            return tuple(range(nvars))
        if sorted(self.priority) != list(range(nvars)):
            raise ValidationError(
                f"priority {self.priority} is not a permutation of 0..{nvars - 1}"
            )
        return self.priority

    def __eq__(self, other):
        return (
            isinstance(other, TermOrder)
            and other.kind == self.kind
            and other.priority == self.priority
        )

    def __hash__(self):
        return hash((self.kind, self.priority))

    def __repr__(self):
        extra = f", priority={self.priority}" if self.priority else ""
        return f"TermOrder({self.kind!r}{extra})"


class Monomial:
    """Exponent vector with cached total degree (interned per ring)."""

    __slots__ = ("exponents", "degree", "key")

    def __init__(self, exponents, degree, key):
        self.exponents = exponents
        self.degree = degree
        self.key = key

    def divides(self, other: "Monomial") -> bool:
        return all(a <= b for a, b in zip(self.exponents, other.exponents))

    def __eq__(self, other):
        return isinstance(other, Monomial) and other.exponents == self.exponents

    def __hash__(self):
        return hash(self.exponents)

    def __repr__(self):
        return f"Monomial{self.exponents}"


class PolynomialRing:
    """A polynomial ring: coefficient domain, variable names, term order."""

    def __init__(self, domain, variables, order: TermOrder | None = None):
        self.domain = domain
        self.variables = tuple(variables)
        if len(set(self.variables)) != len(self.variables):
            raise ValidationError(f"duplicate variable names: {self.variables}")
        self.nvars = len(self.variables)
        self.order = order or TermOrder()
        self._priority = self.order.resolved_priority(self.nvars)
        self._intern: dict[int, Monomial] = {}
        n = self.nvars
        if self.order.kind == "degrevlex":
            # weight of e[i] inside the negative digit block
            self._weights = [0] * n
            for j, var in enumerate(reversed(self._priority)):
                self._weights[var] = KEY_BASE ** (n - 1 - j)
            self._deg_weight = KEY_BASE**n
        else:  # lex
            self._weights = [0] * n
            for i, var in enumerate(self._priority):
                self._weights[var] = KEY_BASE ** (n - 1 - i)
            self._deg_weight = 0

    # -- monomial encoding ---------------------------------------------------

    def encode(self, exponents) -> int:
        degree = 0
        acc = 0
        for e, w in zip(exponents, self._weights):
            if e >= MAX_EXPONENT:
                raise OverflowError(f"exponent {e} exceeds 2^31")
            degree += e
            acc += e * w
        if self.order.kind == "degrevlex":
            return degree * self._deg_weight - acc
        return acc

    def decode(self, key: int):
        n = self.nvars
        if n == 0:
            return ()
        exps = [0] * n
        if self.order.kind == "degrevlex":
            deg = -((-key) // self._deg_weight)
            rest = deg * self._deg_weight - key
            for j, var in enumerate(reversed(self._priority)):
                exps[var] = (rest // KEY_BASE ** (n - 1 - j)) % KEY_BASE
        else:
            rest = key
            for i, var in enumerate(self._priority):
                exps[var] = (rest // KEY_BASE ** (n - 1 - i)) % KEY_BASE
        return tuple(exps)

    def monomial(self, exponents) -> Monomial:
        exponents = tuple(exponents)
        if len(exponents) != self.nvars:
            raise StructuralError("exponent vector length != number of variables")
        key = self.encode(exponents)
        mono = self._intern.get(key)
        if mono is None:
            mono = Monomial(exponents, sum(exponents), key)
            mono = self._intern.setdefault(key, mono)
        return mono

    def monomial_from_key(self, key: int) -> Monomial:
        mono = self._intern.get(key)
        if mono is None:
            exps = self.decode(key)
            mono = self._intern.setdefault(key, Monomial(exps, sum(exps), key))
        return mono

    # -- polynomial construction ----------------------------------------------

    def polynomial(self, raw_terms) -> "Polynomial":
        """Canonicalize a (key, raw) iterable: merge, drop zeros, sort."""
        acc = {}
        dom = self.domain
        for key, coeff in raw_terms:
            prev = acc.get(key)
            acc[key] = coeff if prev is None else dom.add(prev, coeff)
        terms = tuple(
            (k, c) for k, c in sorted(acc.items(), reverse=True) if not dom.is_zero(c)
        )
        return Polynomial(self, terms)

    @property
    def zero(self) -> "Polynomial":
        return Polynomial(self, ())

    @property
    def one(self) -> "Polynomial":
        return Polynomial(self, ((0, self.domain.one),))

    def constant(self, value) -> "Polynomial":
        raw = value.raw if isinstance(value, FieldElement) else self.domain.from_int(value)
        if self.domain.is_zero(raw):
            return self.zero
        return Polynomial(self, ((0, raw),))

    def var(self, name: str) -> "Polynomial":
        try:
            i = self.variables.index(name)
        except ValueError:
            raise ValidationError(f"variable {name!r} not declared in ring {self}")
        key = self.encode(tuple(1 if j == i else 0 for j in range(self.nvars)))
        return Polynomial(self, ((key, self.domain.one),))

    def gens(self):
        return tuple(self.var(v) for v in self.variables)

    def parse(self, text: str) -> "Polynomial":
        def atom(tok):
            if isinstance(tok, int):
                return self.constant(tok)
            if tok in self.variables:
                return self.var(tok)
            # allow the coefficient field's own symbols (extension generator,
            # rational-function transcendental) as constants
            try:
                raw = self.domain._parse_atom(tok)
            except ValidationError:
                raise ValidationError(
                    f"variable {tok!r} not declared in ring with variables {self.variables}"
                )
            return Polynomial(self, ((0, raw),)) if not self.domain.is_zero(raw) else self.zero

        return Evaluator(
            atom=atom,
            add=lambda a, b: a + b,
            mul=lambda a, b: a * b,
            neg=lambda a: -a,
            pow_int=lambda a, n: a**n,
        ).evaluate(text)

    def with_order(self, order: TermOrder) -> "PolynomialRing":
        if order == self.order:
            return self
        return PolynomialRing(self.domain, self.variables, order)

    def convert(self, poly: "Polynomial") -> "Polynomial":
        """Re-sort a polynomial from a ring that differs only in term order."""
        if poly.ring is self or poly.ring == self:
            return Polynomial(self, poly._terms) if poly.ring is not self else poly
        if (poly.ring.domain, poly.ring.variables) != (self.domain, self.variables):
            raise StructuralError("cannot convert between different rings")
        terms = [(self.encode(poly.ring.decode(k)), c) for k, c in poly._terms]
        return self.polynomial(terms)

    def __eq__(self, other):
        return (
            isinstance(other, PolynomialRing)
            and other.domain == self.domain
            and other.variables == self.variables
            and other.order == self.order
        )

    def __hash__(self):
        return hash((self.domain, self.variables, self.order))

    def __repr__(self):
        dom = getattr(self.domain, "__repr__", lambda: "?")()
        return f"{dom}[{', '.join(self.variables)}]"


class Polynomial:
    """Immutable sparse polynomial; `_terms` is ((key, raw), ...) descending."""

    __slots__ = ("ring", "_terms", "_max_exp")

    def __init__(self, ring: PolynomialRing, terms):
        object.__setattr__(self, "ring", ring)
        object.__setattr__(self, "_terms", terms)
        object.__setattr__(self, "_max_exp", None)

    def __setattr__(self, *_):
        raise AttributeError("Polynomial is immutable")

    # -- inspection -----------------------------------------------------------

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self):
        return bool(self._terms)

    def __len__(self):
        return len(self._terms)

    @property
    def terms(self):
        """Public view: ((coefficient, monomial), ...) descending."""
        ring = self.ring
        return tuple(
            (FieldElement(ring.domain, c) if isinstance(ring.domain, Field) else c,
             ring.monomial_from_key(k))
            for k, c in self._terms
        )

    def leading_monomial(self) -> Monomial:
        if not self._terms:
            raise ValidationError("zero polynomial has no leading monomial")
        return self.ring.monomial_from_key(self._terms[0][0])

    def leading_coefficient(self):
        if not self._terms:
            raise ValidationError("zero polynomial has no leading coefficient")
        return self._terms[0][1]

    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        if not self._terms:
            return -1
        if self.ring.order.kind == "degrevlex":
            return -((-self._terms[0][0]) // self.ring._deg_weight)
        return max(sum(self.ring.decode(k)) for k, _ in self._terms)

    def max_exponent(self) -> int:
        """Largest single exponent appearing in any term (0 for zero)."""
        cached = self._max_exp
        if cached is None:
            decode = self.ring.decode
            cached = max((max(decode(k), default=0) for k, _ in self._terms), default=0)
            object.__setattr__(self, "_max_exp", cached)
        return cached

    # -- arithmetic -----------------------------------------------------------

    def _check_ring(self, other: "Polynomial"):
        if other.ring is not self.ring and other.ring != self.ring:
            raise StructuralError("polynomials of different rings")

    def __add__(self, other):
        if isinstance(other, (int, FieldElement)):
            other = self.ring.constant(other)
        elif not isinstance(other, Polynomial):
            return NotImplemented
        self._check_ring(other)
        return self.ring.polynomial(list(self._terms) + list(other._terms))

    __radd__ = __add__

    def __neg__(self):
        neg = self.ring.domain.neg
        return Polynomial(self.ring, tuple((k, neg(c)) for k, c in self._terms))

    def __sub__(self, other):
        if isinstance(other, (int, FieldElement)):
            other = self.ring.constant(other)
        elif not isinstance(other, Polynomial):
            return NotImplemented
        return self.__add__(-other)

    def __rsub__(self, other):
        return (-self).__add__(other)

    def __mul__(self, other):
        if isinstance(other, (int, FieldElement)):
            raw = other.raw if isinstance(other, FieldElement) else self.ring.domain.from_int(other)
            dom = self.ring.domain
            if dom.is_zero(raw):
                return self.ring.zero
            return self.ring.polynomial((k, dom.mul(c, raw)) for k, c in self._terms)
        if not isinstance(other, Polynomial):
            return NotImplemented
        self._check_ring(other)
        if not self._terms or not other._terms:
            return self.ring.zero
        if self.max_exponent() + other.max_exponent() >= MAX_EXPONENT:
            raise OverflowError("monomial exponent overflow in product")
        dom = self.ring.domain
        acc: dict = {}
        short, long_ = (self._terms, other._terms)
        if len(short) > len(long_):
            short, long_ = long_, short
        for k1, c1 in short:
            for k2, c2 in long_:
                kk = k1 + k2
                prev = acc.get(kk)
                prod = dom.mul(c1, c2)
                acc[kk] = prod if prev is None else dom.add(prev, prod)
        terms = tuple(
            (k, c) for k, c in sorted(acc.items(), reverse=True) if not dom.is_zero(c)
        )
        return Polynomial(self.ring, terms)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValidationError("negative polynomial power")
        result = self.ring.one
        base = self
        while n:
            if n & 1:
                result = result * base
            if n > 1:
                base = base * base
            n >>= 1
        return result

    def __eq__(self, other):
        if not isinstance(other, Polynomial):
            return NotImplemented
        return other.ring == self.ring and other._terms == self._terms

    def __hash__(self):
        return hash((self.ring, self._terms))

    def __repr__(self):
        if not self._terms:
            return "0"
        ring = self.ring
        fmt = ring.domain.format_raw
        parts = []
        for k, c in self._terms:
            exps = ring.decode(k)
            factors = []
            for name, e in zip(ring.variables, exps):
                if e == 1:
                    factors.append(name)
                elif e > 1:
                    factors.append(f"{name}^{e}")
            coeff_s = fmt(c)
            if not factors:
                parts.append(f"({coeff_s})" if " " in coeff_s or "/" in coeff_s else coeff_s)
                continue
            mono_s = "*".join(factors)
            if coeff_s == "1":
                parts.append(mono_s)
            elif " " in coeff_s or "/" in coeff_s or "+" in coeff_s:
                parts.append(f"({coeff_s})*{mono_s}")
            else:
                parts.append(f"{coeff_s}*{mono_s}")
        return " + ".join(parts)


class IdealPresentation:
    """A finite list of nonzero generators in a common ring."""

    __slots__ = ("ring", "generators")

    def __init__(self, ring: PolynomialRing, generators):
        generators = tuple(generators)
        if not generators:
            raise ValidationError("ideal presentation needs at least one generator")
        for g in generators:
            if not isinstance(g, Polynomial):
                raise StructuralError(f"generator {g!r} is not a Polynomial")
            if g.ring != ring:
                raise StructuralError("generator from a different ring")
            if g.is_zero():
                raise ValidationError("zero polynomial cannot be an ideal generator")
        object.__setattr__(self, "ring", ring)
        object.__setattr__(self, "generators", generators)

    def __setattr__(self, *_):
        raise AttributeError("IdealPresentation is immutable")

    def __repr__(self):
        inner = ", ".join(repr(g) for g in self.generators)
        return f"({inner})"


def _power_of_char(q: int, p: int) -> int:
    """Return e with q = p^e, or raise."""
    if q < 1:
        raise ValidationError(f"bracket-power exponent must be >= 1: {q}")
    e = 0
    rest = q
    while rest % p == 0:
        rest //= p
        e += 1
    if rest != 1:
        raise ValidationError(f"{q} is not a power of the characteristic {p}")
    return e


def frobenius_power(I: IdealPresentation, q: int) -> IdealPresentation:
    """The Frobenius bracket power I^[q] = (g^q : g generator), q = p^e.

    Generator q-th powers suffice because the e-th Frobenius is a ring
    endomorphism; g^q is computed termwise via c^q = Frobenius^e(c) and
    exponent scaling, which is exact in characteristic p.
    """
    ring = I.ring
    p = ring.domain.characteristic
    if not p:
        raise ValidationError("bracket powers need positive characteristic")
    e = _power_of_char(q, p)
    if e == 0:
        return I
    dom = ring.domain
    gens = []
    for g in I.generators:
        if g.max_exponent() * q >= MAX_EXPONENT:
            raise OverflowError("monomial exponent overflow in bracket power")
        # key scaling is exact: encode is linear in the exponent vector
        gens.append(
            Polynomial(ring, tuple((k * q, dom.frobenius_raw(c, e)) for k, c in g._terms))
        )
    return IdealPresentation(ring, gens)


def ordinary_power(I: IdealPresentation, n: int) -> IdealPresentation:
    """I^n generated by all n-fold products of generators (duplicates removed)."""
    if n < 1:
        raise ValidationError(f"ordinary power wants n >= 1: {n}")
    from itertools import combinations_with_replacement

    seen = {}
    for combo in combinations_with_replacement(I.generators, n):
        prod = combo[0]
        for g in combo[1:]:
            prod = prod * g
        seen.setdefault(prod._terms, prod)
    return IdealPresentation(I.ring, tuple(seen.values()))
