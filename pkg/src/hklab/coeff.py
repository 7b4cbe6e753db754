"""Exact arithmetic in the three coefficient fields of the library.

Supported fields are prime fields F_p, finite extensions GF(p^m), and
univariate rational-function fields F_p(t) (or GF(p^m)(t)), always in
positive characteristic p < 2**31.

Raw representations, chosen so that canonical form makes `==` work:

  * F_p          -- an int in [0, p),
  * GF(p^m)      -- a tuple of m ints in [0, p), coefficients of the
                    generator powers s^0 .. s^(m-1),
  * F_p(t)       -- a pair (numerator, denominator) of univariate
                    polynomials in lowest terms with monic denominator.
                    Univariate polynomials over F_2 are stored as int
                    bitmasks (bit i = coefficient of t^i); over other
                    base fields as dense low-to-high coefficient tuples.

Field objects expose raw-level methods (add, mul, inv, ...) used by the
polynomial engine's hot loops; FieldElement is a thin immutable wrapper
with operator overloading for everything user-facing.
"""

from __future__ import annotations

from ._expr import Evaluator
from .errors import StructuralError, ValidationError

MAX_CHARACTERISTIC = 1 << 31


def is_prime(n: int) -> bool:
    """Trial-division primality test; inputs here are < 2**31."""
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


# ---------------------------------------------------------------------------
# Univariate polynomial helpers.
#
# _BinaryPolys: polynomials over F_2 as int bitmasks (fast XOR arithmetic).
# _DensePolys:  polynomials over an arbitrary coefficient field as tuples.
# Both expose the same method surface so RationalFunctionField can treat
# them interchangeably.
# ---------------------------------------------------------------------------


class _BinaryPolys:
    zero = 0
    one = 1

    @staticmethod
    def is_zero(a):
        return a == 0

    @staticmethod
    def deg(a):
        return a.bit_length() - 1

    @staticmethod
    def add(a, b):
        return a ^ b

    sub = add

    @staticmethod
    def neg(a):
        return a

    @staticmethod
    def mul(a, b):
        r = 0
        while b:
            if b & 1:
                r ^= a
            a <<= 1
            b >>= 1
        return r

    @staticmethod
    def divmod(a, b):
        if b == 0:
            raise ZeroDivisionError("univariate division by zero")
        db = b.bit_length()
        q = 0
        while a.bit_length() >= db:
            shift = a.bit_length() - db
            q |= 1 << shift
            a ^= b << shift
        return q, a

    @classmethod
    def gcd_monic(cls, a, b):
        while b:
            a, b = b, cls.divmod(a, b)[1]
        return a  # over F_2 every nonzero polynomial is monic

    @staticmethod
    def make_monic(a):
        return a

    @staticmethod
    def frobenius_step(a):
        # (sum a_i t^i)^2 = sum a_i t^(2i) in characteristic 2
        r = 0
        while a:
            low = a & -a
            r |= 1 << (2 * (low.bit_length() - 1))
            a ^= low
        return r

    @staticmethod
    def coeffs(a):
        return tuple((a >> i) & 1 for i in range(a.bit_length()))

    @staticmethod
    def from_coeffs(cs):
        r = 0
        for i, c in enumerate(cs):
            if c:
                r |= 1 << i
        return r


class _DensePolys:
    """Dense univariate arithmetic over a coefficient field `K` (raw level)."""

    def __init__(self, K):
        self.K = K
        self.zero = ()
        self.one = (K.one,)

    @staticmethod
    def is_zero(a):
        return not a

    @staticmethod
    def deg(a):
        return len(a) - 1

    def _trim(self, cs):
        n = len(cs)
        while n and self.K.is_zero(cs[n - 1]):
            n -= 1
        return tuple(cs[:n])

    def add(self, a, b):
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] = self.K.add(out[i], c)
        return self._trim(out)

    def neg(self, a):
        return tuple(self.K.neg(c) for c in a)

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def mul(self, a, b):
        if not a or not b:
            return ()
        out = [self.K.zero] * (len(a) + len(b) - 1)
        for i, ca in enumerate(a):
            if self.K.is_zero(ca):
                continue
            for j, cb in enumerate(b):
                out[i + j] = self.K.add(out[i + j], self.K.mul(ca, cb))
        return self._trim(out)

    def divmod(self, a, b):
        if not b:
            raise ZeroDivisionError("univariate division by zero")
        inv_lead = self.K.inv(b[-1])
        rem = list(a)
        q = [self.K.zero] * max(len(a) - len(b) + 1, 0)
        while len(rem) >= len(b):
            while rem and self.K.is_zero(rem[-1]):
                rem.pop()
            if len(rem) < len(b):
                break
            factor = self.K.mul(rem[-1], inv_lead)
            shift = len(rem) - len(b)
            q[shift] = factor
            for i, c in enumerate(b):
                rem[shift + i] = self.K.sub(rem[shift + i], self.K.mul(factor, c))
            rem.pop()
        return self._trim(q), self._trim(rem)

    def gcd_monic(self, a, b):
        while b:
            a, b = b, self.divmod(a, b)[1]
        return self.make_monic(a)

    def make_monic(self, a):
        if not a or self.K.is_zero(self.K.sub(a[-1], self.K.one)):
            return a
        inv_lead = self.K.inv(a[-1])
        return tuple(self.K.mul(c, inv_lead) for c in a)

    def frobenius_step(self, a):
        p = self.K.characteristic
        if not a:
            return ()
        out = [self.K.zero] * ((len(a) - 1) * p + 1)
        for i, c in enumerate(a):
            out[i * p] = self.K.frobenius_raw(c, 1)
        return self._trim(out)

    @staticmethod
    def coeffs(a):
        return a

    def from_coeffs(self, cs):
        return self._trim(tuple(cs))


# ---------------------------------------------------------------------------
# Fields
# ---------------------------------------------------------------------------


class Field:
    """Common raw-level interface; concrete classes fill in the arithmetic."""

    kind = None  # "prime" | "extension" | "rational_function"
    characteristic = None
    size = None  # number of elements, or None when infinite

    def is_zero(self, a):
        return a == self.zero

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def pow(self, a, n):
        if n < 0:
            return self.pow(self.inv(a), -n)
        r = self.one
        while n:
            if n & 1:
                r = self.mul(r, a)
            a = self.mul(a, a)
            n >>= 1
        return r

    def frobenius_raw(self, a, e):
        return self.pow(a, self.characteristic**e)

    def __call__(self, value) -> "FieldElement":
        if isinstance(value, FieldElement):
            if value.field != self:
                raise StructuralError("element belongs to a different field")
            return value
        if isinstance(value, int):
            return FieldElement(self, self.from_int(value))
        if isinstance(value, str):
            return self.parse(value)
        raise StructuralError(f"cannot coerce {value!r} into {self}")

    def element(self, raw) -> "FieldElement":
        return FieldElement(self, raw)

    def parse(self, text: str) -> "FieldElement":
        raw = Evaluator(
            atom=self._parse_atom,
            add=self.add,
            mul=self.mul,
            neg=self.neg,
            pow_int=self.pow,
        ).evaluate(text)
        return FieldElement(self, raw)

    def _parse_atom(self, tok):
        if isinstance(tok, int):
            return self.from_int(tok)
        raise ValidationError(f"unknown symbol {tok!r} for {self}")

    def elements(self):
        """Iterate all elements (finite fields only), in a fixed order."""
        raise ValidationError(f"{self} is not a finite field")

    def __ne__(self, other):
        return not self.__eq__(other)


class PrimeField(Field):
    """The prime field F_p; raw elements are ints in [0, p)."""

    kind = "prime"

    def __init__(self, p: int):
        if not isinstance(p, int) or not 2 <= p < MAX_CHARACTERISTIC:
            raise ValidationError(f"characteristic must be an integer in [2, 2^31): {p!r}")
        if not is_prime(p):
            raise ValidationError(f"characteristic {p} is not prime")
        self.p = p
        self.characteristic = p
        self.size = p
        self.zero = 0
        self.one = 1 % p

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def neg(self, a):
        return -a % self.p

    def mul(self, a, b):
        return (a * b) % self.p

    def inv(self, a):
        if a % self.p == 0:
            raise ZeroDivisionError("inversion of zero")
        return pow(a, self.p - 2, self.p)

    def pow(self, a, n):
        if n < 0:
            return pow(self.inv(a), -n, self.p)
        return pow(a, n, self.p)

    def frobenius_raw(self, a, e):
        return a  # Fermat: a^p = a on the prime field

    def from_int(self, n):
        return n % self.p

    def elements(self):
        return iter(range(self.p))

    def format_raw(self, a):
        return str(a)

    def to_config(self):
        return {"kind": "prime", "p": self.p}

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("prime", self.p))

    def __repr__(self):
        return f"GF({self.p})"


def _validate_irreducible(p: int, modulus: tuple) -> None:
    """Check a monic modulus over F_p for irreducibility.

    Uses gcd(f, x^(p^i) - x) == 1 for i <= deg(f)/2; the i = 1 step is the
    root (linear factor) check.
    """
    ops = _DensePolys(PrimeField(p))
    m = ops.deg(modulus)
    x = (0, 1)
    t = x
    for _ in range(m // 2):
        # t <- t^p mod f, so after i steps t = x^(p^i) mod f
        r = ops.one
        base, n = t, p
        while n:
            if n & 1:
                r = ops.divmod(ops.mul(r, base), modulus)[1]
            base = ops.divmod(ops.mul(base, base), modulus)[1]
            n >>= 1
        t = r
        g = ops.gcd_monic(modulus, ops.sub(t, x))
        if ops.deg(g) > 0:
            raise ValidationError(f"modulus {modulus} is reducible over GF({p})")


class ExtensionField(Field):
    """GF(p^m) presented as F_p[s]/(modulus); raw elements are m-tuples."""

    kind = "extension"

    def __init__(self, p: int, modulus, generator: str = "s"):
        prime = PrimeField(p)
        modulus = tuple(c % p for c in modulus)
        if len(modulus) < 3 or modulus[-1] != 1:
            raise ValidationError("extension modulus must be monic of degree >= 2")
        _validate_irreducible(p, modulus)
        self.p = p
        self.characteristic = p
        self.prime = prime
        self.modulus = modulus
        self.degree = len(modulus) - 1
        self.size = p**self.degree
        self.generator = generator
        self.zero = (0,) * self.degree
        self.one = (1,) + (0,) * (self.degree - 1)
        # s^(m+i) mod modulus, for reducing products of degree < 2m-1
        self._ops = _DensePolys(prime)
        self._reduction = []
        power = tuple(modulus[:-1])  # s^m = -tail (monic, char p)
        power = tuple(-c % p for c in power)
        for _ in range(self.degree - 1):
            self._reduction.append(power)
            shifted = (0,) + power
            power = self._reduce_once(shifted)

    def _reduce_once(self, cs):
        m, p = self.degree, self.p
        out = list(cs[:m]) + [0] * (m - len(cs[:m]))
        for i in range(len(cs) - 1, m - 1, -1):
            c = cs[i]
            if c:
                table = self._reduction[i - m]
                for j, r in enumerate(table):
                    out[j] = (out[j] + c * r) % p
        return tuple(out)

    def add(self, a, b):
        p = self.p
        return tuple((x + y) % p for x, y in zip(a, b))

    def sub(self, a, b):
        p = self.p
        return tuple((x - y) % p for x, y in zip(a, b))

    def neg(self, a):
        p = self.p
        return tuple(-x % p for x in a)

    def mul(self, a, b):
        m, p = self.degree, self.p
        conv = [0] * (2 * m - 1)
        for i, ca in enumerate(a):
            if ca:
                for j, cb in enumerate(b):
                    conv[i + j] = (conv[i + j] + ca * cb) % p
        return self._reduce_once(tuple(conv))

    def inv(self, a):
        if a == self.zero:
            raise ZeroDivisionError("inversion of zero")
        ops = self._ops
        # extended Euclid in F_p[s]
        r0, r1 = self.modulus, ops._trim(a)
        s0, s1 = ops.zero, ops.one
        while r1:
            q, r = ops.divmod(r0, r1)
            r0, r1 = r1, r
            s0, s1 = s1, ops.sub(s0, ops.mul(q, s1))
        scale = self.prime.inv(r0[0])  # r0 is a nonzero constant
        inv = tuple(self.prime.mul(c, scale) for c in s0)
        return inv + (0,) * (self.degree - len(inv))

    def from_int(self, n):
        return (n % self.p,) + (0,) * (self.degree - 1)

    def elements(self):
        def raw(v):
            return tuple((v // self.p**i) % self.p for i in range(self.degree))

        return (raw(v) for v in range(self.size))

    def _parse_atom(self, tok):
        if isinstance(tok, int):
            return self.from_int(tok)
        if tok == self.generator:
            return (0, 1) + (0,) * (self.degree - 2)
        raise ValidationError(f"unknown symbol {tok!r} for {self}")

    def format_raw(self, a):
        parts = []
        for i in range(self.degree - 1, -1, -1):
            c = a[i]
            if not c:
                continue
            if i == 0:
                parts.append(str(c))
            else:
                head = "" if c == 1 else f"{c}*"
                parts.append(f"{head}{self.generator}" + (f"^{i}" if i > 1 else ""))
        return " + ".join(parts) if parts else "0"

    def to_config(self):
        return {"kind": "extension", "p": self.p, "m": self.degree}

    def __eq__(self, other):
        return (
            isinstance(other, ExtensionField)
            and other.p == self.p
            and other.modulus == self.modulus
        )

    def __hash__(self):
        return hash(("extension", self.p, self.modulus))

    def __repr__(self):
        return f"GF({self.p}^{self.degree})"


class RationalFunctionField(Field):
    """F_q(t): reduced fractions of univariate polynomials over the base."""

    kind = "rational_function"

    def __init__(self, base: Field, var: str = "t"):
        if base.kind not in ("prime", "extension"):
            raise ValidationError("rational-function base must be a finite field")
        self.base = base
        self.var = var
        self.characteristic = base.characteristic
        self.size = None
        if base.kind == "prime" and base.p == 2:
            self._ops = _BinaryPolys()
        else:
            self._ops = _DensePolys(base)
        self.zero = (self._ops.zero, self._ops.one)
        self.one = (self._ops.one, self._ops.one)
        self.t = (self._ops.from_coeffs((base.zero, base.one)), self._ops.one)

    def _canon(self, num, den):
        ops = self._ops
        if ops.is_zero(den):
            raise ZeroDivisionError("zero denominator")
        if ops.is_zero(num):
            return (ops.zero, ops.one)
        g = ops.gcd_monic(num, den)
        if ops.deg(g) > 0:
            num = ops.divmod(num, g)[0]
            den = ops.divmod(den, g)[0]
        if isinstance(ops, _DensePolys):
            lead = den[-1]
            if not self.base.is_zero(self.base.sub(lead, self.base.one)):
                inv = self.base.inv(lead)
                num = tuple(self.base.mul(c, inv) for c in num)
                den = tuple(self.base.mul(c, inv) for c in den)
        return (num, den)

    def add(self, a, b):
        ops = self._ops
        n = ops.add(ops.mul(a[0], b[1]), ops.mul(b[0], a[1]))
        return self._canon(n, ops.mul(a[1], b[1]))

    def neg(self, a):
        return (self._ops.neg(a[0]), a[1])

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def mul(self, a, b):
        ops = self._ops
        return self._canon(ops.mul(a[0], b[0]), ops.mul(a[1], b[1]))

    def inv(self, a):
        if self._ops.is_zero(a[0]):
            raise ZeroDivisionError("inversion of zero")
        return self._canon(a[1], a[0])

    def frobenius_raw(self, a, e):
        num, den = a
        for _ in range(e):
            num = self._ops.frobenius_step(num)
            den = self._ops.frobenius_step(den)
        return (num, den)

    def from_int(self, n):
        base_raw = self.base.from_int(n) if self.base.kind == "extension" else n % self.characteristic
        if isinstance(self._ops, _BinaryPolys):
            return (n % 2, 1)
        return (self._ops._trim((base_raw,)), self._ops.one)

    def _parse_atom(self, tok):
        if isinstance(tok, int):
            return self.from_int(tok)
        if tok == self.var:
            return self.t
        if self.base.kind == "extension" and tok == self.base.generator:
            gen = self.base._parse_atom(tok)
            return (self._ops.from_coeffs((gen,)), self._ops.one)
        raise ValidationError(f"unknown symbol {tok!r} for {self}")

    def _format_upoly(self, a):
        coeffs = self._ops.coeffs(a)
        if not coeffs:
            return "0"
        parts = []
        for i in range(len(coeffs) - 1, -1, -1):
            c = coeffs[i]
            if isinstance(self._ops, _BinaryPolys):
                if not c:
                    continue
                text = "1"
            else:
                if self.base.is_zero(c):
                    continue
                text = self.base.format_raw(c)
                if ("+" in text or "-" in text) and i > 0:
                    text = f"({text})"
            if i == 0:
                parts.append(text)
            else:
                head = "" if text == "1" else f"{text}*"
                parts.append(f"{head}{self.var}" + (f"^{i}" if i > 1 else ""))
        return " + ".join(parts) if parts else "0"

    def format_raw(self, a):
        num, den = a
        num_s = self._format_upoly(num)
        if den == self._ops.one:
            return num_s
        den_s = self._format_upoly(den)
        if " " in num_s:
            num_s = f"({num_s})"
        if " " in den_s:
            den_s = f"({den_s})"
        return f"{num_s}/{den_s}"

    def to_config(self):
        cfg = {"kind": "rational_function", "p": self.characteristic, "var": self.var}
        if self.base.kind == "extension":
            cfg["m"] = self.base.degree
        return cfg

    def __eq__(self, other):
        return (
            isinstance(other, RationalFunctionField)
            and other.base == self.base
            and other.var == self.var
        )

    def __hash__(self):
        return hash(("ratfunc", self.base, self.var))

    def __repr__(self):
        return f"{self.base!r}({self.var})"


class FieldElement:
    """Immutable element wrapper; arithmetic delegates to the field."""

    __slots__ = ("field", "raw")

    def __init__(self, field: Field, raw):
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "raw", raw)

    def __setattr__(self, *_):
        raise AttributeError("FieldElement is immutable")

    def _coerce(self, other):
        if isinstance(other, FieldElement):
            if other.field != self.field:
                raise StructuralError("elements of different fields")
            return other.raw
        if isinstance(other, int):
            return self.field.from_int(other)
        return NotImplemented

    def __add__(self, other):
        raw = self._coerce(other)
        if raw is NotImplemented:
            return NotImplemented
        return FieldElement(self.field, self.field.add(self.raw, raw))

    __radd__ = __add__

    def __sub__(self, other):
        raw = self._coerce(other)
        if raw is NotImplemented:
            return NotImplemented
        return FieldElement(self.field, self.field.sub(self.raw, raw))

    def __rsub__(self, other):
        return (-self).__add__(other)

    def __mul__(self, other):
        raw = self._coerce(other)
        if raw is NotImplemented:
            return NotImplemented
        return FieldElement(self.field, self.field.mul(self.raw, raw))

    __rmul__ = __mul__

    def __truediv__(self, other):
        raw = self._coerce(other)
        if raw is NotImplemented:
            return NotImplemented
        return FieldElement(self.field, self.field.div(self.raw, raw))

    def __neg__(self):
        return FieldElement(self.field, self.field.neg(self.raw))

    def __pow__(self, n):
        return FieldElement(self.field, self.field.pow(self.raw, n))

    def __eq__(self, other):
        if isinstance(other, FieldElement):
            return other.field == self.field and other.raw == self.raw
        if isinstance(other, int):
            return self.raw == self.field.from_int(other)
        return NotImplemented

    def __hash__(self):
        return hash((self.field, self.raw))

    def __bool__(self):
        return not self.field.is_zero(self.raw)

    def inverse(self) -> "FieldElement":
        return FieldElement(self.field, self.field.inv(self.raw))

    def __repr__(self):
        return self.field.format_raw(self.raw)


def frobenius(a: FieldElement, e: int) -> FieldElement:
    """Apply the e-th Frobenius a -> a^(p^e)."""
    if e < 0:
        raise ValidationError("Frobenius exponent must be nonnegative")
    return FieldElement(a.field, a.field.frobenius_raw(a.raw, e))


def make_extension(p: int, m: int) -> Field:
    """GF(p^m) with the canonical (lexicographically smallest) modulus.

    The degree-1 "extension" is the prime field itself.  Candidate moduli
    x^m + a_(m-1) x^(m-1) + ... + a_0 are scanned in lexicographic order of
    (a_(m-1), ..., a_0), so a fixed (p, m) always yields the same field.
    """
    if m < 1:
        raise ValidationError(f"extension degree must be >= 1: {m}")
    if m == 1:
        return PrimeField(p)
    PrimeField(p)  # validates that p is prime before the scan
    for v in range(p**m):
        coeffs = [0] * m
        rest = v
        for j in range(m - 1, -1, -1):  # fill from the x^(m-1) digit down
            coeffs[j] = rest // p**j
            rest %= p**j
        modulus = tuple(coeffs) + (1,)
        try:
            _validate_irreducible(p, modulus)
        except ValidationError:
            continue
        return ExtensionField(p, modulus)
    raise ValidationError(f"no irreducible modulus found for GF({p}^{m})")  # unreachable


def field_from_config(cfg: dict) -> Field:
    """Build a field from its JSON-config form."""
    try:
        kind = cfg["kind"]
    except (TypeError, KeyError):
        raise ValidationError(f"field config must have a 'kind': {cfg!r}")
    if kind == "prime":
        return PrimeField(cfg["p"])
    if kind == "extension":
        if "modulus" in cfg:
            return ExtensionField(cfg["p"], tuple(cfg["modulus"]))
        return make_extension(cfg["p"], cfg["m"])
    if kind == "rational_function":
        base = make_extension(cfg["p"], cfg.get("m", 1))
        return RationalFunctionField(base, cfg.get("var", "t"))
    raise ValidationError(f"unknown field kind {kind!r}")
