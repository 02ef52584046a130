"""Exact base-field arithmetic over Q and finite fields F_{p^m}.

Scalars are immutable canonical values: rationals are ``fractions.Fraction``
in lowest terms, finite-field elements are residue polynomials of degree < m
stored as tuples of ints in {0..p-1}.  There is no floating point anywhere.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import DivisionByZero, FieldMismatch, InvalidField, NotSupported


def _is_prime(n):
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


def _poly_trim(c):
    c = list(c)
    while c and c[-1] == 0:
        c.pop()
    return c


def _poly_divmod(a, b, p):
    """Division with remainder in F_p[x]; a, b dense little-endian int lists."""
    a = [x % p for x in a]
    b = _poly_trim([x % p for x in b])
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    inv_lead = pow(b[-1], p - 2, p) if b[-1] != 1 else 1
    q = [0] * max(0, len(a) - len(b) + 1)
    r = list(a)
    while len(_poly_trim(r)) >= len(b):
        r = _poly_trim(r)
        shift = len(r) - len(b)
        coef = (r[-1] * inv_lead) % p
        q[shift] = coef
        for i, bc in enumerate(b):
            r[shift + i] = (r[shift + i] - coef * bc) % p
    return q, _poly_trim(r)


def _poly_is_irreducible(mod, p):
    """Exhaustive check: no monic factor of degree 1..deg/2 divides mod."""
    mod = _poly_trim(mod)
    deg = len(mod) - 1
    if deg < 1:
        return False

    def monic_polys(d):
        counts = [0] * d
        while True:
            yield counts + [1]
            i = 0
            while i < d:
                counts[i] += 1
                if counts[i] < p:
                    break
                counts[i] = 0
                i += 1
            else:
                return

    for d in range(1, deg // 2 + 1):
        for cand in monic_polys(d):
            _, rem = _poly_divmod(mod, cand, p)
            if not rem:
                return False
    return True


#: built-in irreducible moduli (little-endian, monic) for common small fields
BUILTIN_MODULI = {
    (2, 2): (1, 1, 1),        # g^2 + g + 1
    (2, 3): (1, 1, 0, 1),     # g^3 + g + 1
    (3, 2): (1, 0, 1),        # g^2 + 1
    (5, 2): (1, 1, 1),        # g^2 + g + 1
    (3, 3): (1, 2, 0, 1),     # g^3 + 2g + 1
}


class Field:
    """Q (p == 0) or F_{p^m} with an irreducible modulus when m > 1.

    The generator of the residue ring is printed/parsed as ``g``.
    """

    __slots__ = ("p", "m", "modulus")

    def __init__(self, p=0, m=1, modulus=None):
        if p == 0:
            if m != 1 or modulus is not None:
                raise InvalidField("rationals take no extension data")
            self.p, self.m, self.modulus = 0, 1, None
            return
        if not _is_prime(p):
            raise InvalidField(f"{p} is not prime")
        if m < 1:
            raise InvalidField("extension degree must be >= 1")
        if m == 1:
            if modulus is not None:
                raise InvalidField("modulus only allowed for m > 1")
            self.p, self.m, self.modulus = p, 1, None
            return
        if modulus is None:
            modulus = BUILTIN_MODULI.get((p, m))
            if modulus is None:
                raise InvalidField(
                    f"no built-in modulus for F_{p}^{m}; supply one")
        modulus = tuple(c % p for c in modulus)
        if len(modulus) != m + 1 or modulus[-1] != 1:
            raise InvalidField("modulus must be monic of degree m")
        if not _poly_is_irreducible(list(modulus), p):
            raise InvalidField("modulus is reducible over F_p")
        self.p, self.m, self.modulus = p, m, modulus

    # -- basic structure ----------------------------------------------------

    @property
    def is_rational(self):
        return self.p == 0

    @property
    def order(self):
        return None if self.p == 0 else self.p ** self.m

    def key(self):
        return (self.p, self.m, self.modulus)

    def __eq__(self, other):
        return isinstance(other, Field) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        return f"Field({self.to_string()})"

    def to_string(self):
        if self.p == 0:
            return "Q"
        if self.m == 1:
            return f"F{self.p}"
        return f"F{self.order}[{_modulus_string(self.modulus)}]"

    # -- element constructors ------------------------------------------------

    @property
    def zero(self):
        return self.from_int(0)

    @property
    def one(self):
        return self.from_int(1)

    @property
    def generator(self):
        if self.m < 2:
            raise NotSupported("generator only defined for extension fields")
        return Scalar(self, tuple(1 if i == 1 else 0 for i in range(self.m)))

    def from_int(self, n):
        if self.p == 0:
            return Scalar(self, Fraction(n))
        return Scalar(self, tuple([n % self.p] + [0] * (self.m - 1)))

    def from_fraction(self, num, den=1):
        if self.p == 0:
            return Scalar(self, Fraction(num, den))
        if den % self.p == 0:
            raise DivisionByZero("denominator vanishes in this characteristic")
        return self.from_int(num) / self.from_int(den)

    def scalar(self, value):
        """Coerce an int, Fraction, coefficient tuple, or Scalar."""
        if isinstance(value, Scalar):
            if value.field != self:
                raise FieldMismatch("scalar from a different field")
            return value
        if isinstance(value, bool):
            raise TypeError("bool is not a field element")
        if isinstance(value, int):
            return self.from_int(value)
        if isinstance(value, Fraction):
            if self.p != 0:
                raise FieldMismatch("Fraction value for a finite field")
            return Scalar(self, value)
        if isinstance(value, tuple):
            if self.p == 0:
                raise FieldMismatch("tuple value for Q")
            if len(value) != self.m:
                raise FieldMismatch("coefficient tuple of wrong length")
            return Scalar(self, tuple(c % self.p for c in value))
        raise TypeError(f"cannot coerce {value!r}")

    # -- enumeration / sampling ----------------------------------------------

    def elements(self):
        """All field elements in canonical order (finite fields only)."""
        if self.p == 0:
            raise NotSupported("Q is not enumerable")
        for n in range(self.order):
            digits = []
            v = n
            for _ in range(self.m):
                digits.append(v % self.p)
                v //= self.p
            yield Scalar(self, tuple(digits))

    def sample(self, rng):
        """Deterministic random element from a seeded random.Random."""
        if self.p == 0:
            num = rng.randint(-9, 9)
            den = rng.randint(1, 9)
            return Scalar(self, Fraction(num, den))
        return Scalar(self, tuple(rng.randrange(self.p) for _ in range(self.m)))


def _modulus_string(mod):
    terms = []
    for i in range(len(mod) - 1, -1, -1):
        c = mod[i]
        if c == 0:
            continue
        if i == 0:
            terms.append(str(c))
        else:
            head = "g" if i == 1 else f"g^{i}"
            terms.append(head if c == 1 else f"{c}*{head}")
    return "+".join(terms) if terms else "0"


class Scalar:
    """Immutable element of a Field; canonical form, structural equality."""

    __slots__ = ("field", "value")

    def __init__(self, field, value):
        self.field = field
        self.value = value

    # -- predicates ----------------------------------------------------------

    def is_zero(self):
        if self.field.p == 0:
            return self.value == 0
        return all(c == 0 for c in self.value)

    def is_one(self):
        return self == self.field.one

    # -- arithmetic ----------------------------------------------------------

    def _check(self, other):
        if isinstance(other, int):
            other = self.field.from_int(other)
        if not isinstance(other, Scalar):
            return NotImplemented
        if other.field != self.field:
            raise FieldMismatch("scalars over different fields")
        return other

    def __add__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return NotImplemented
        f = self.field
        if f.p == 0:
            return Scalar(f, self.value + other.value)
        return Scalar(f, tuple((a + b) % f.p
                               for a, b in zip(self.value, other.value)))

    __radd__ = __add__

    def __neg__(self):
        f = self.field
        if f.p == 0:
            return Scalar(f, -self.value)
        return Scalar(f, tuple((-a) % f.p for a in self.value))

    def __sub__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return NotImplemented
        f = self.field
        if f.p == 0:
            return Scalar(f, self.value * other.value)
        if f.m == 1:
            return Scalar(f, ((self.value[0] * other.value[0]) % f.p,))
        prod = [0] * (2 * f.m - 1)
        for i, a in enumerate(self.value):
            if a == 0:
                continue
            for j, b in enumerate(other.value):
                prod[i + j] = (prod[i + j] + a * b) % f.p
        # reduce by the monic modulus
        for i in range(len(prod) - 1, f.m - 1, -1):
            c = prod[i]
            if c == 0:
                continue
            prod[i] = 0
            for k in range(f.m):
                prod[i - f.m + k] = (prod[i - f.m + k] - c * f.modulus[k]) % f.p
        return Scalar(f, tuple(prod[:f.m]))

    __rmul__ = __mul__

    def inverse(self):
        if self.is_zero():
            raise DivisionByZero("inverse of zero")
        f = self.field
        if f.p == 0:
            return Scalar(f, 1 / self.value)
        return self ** (f.order - 2)

    def __truediv__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        return self.field.scalar(other) / self

    def __pow__(self, n):
        if n < 0:
            return self.inverse() ** (-n)
        result = self.field.one
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    # -- identity ------------------------------------------------------------

    def __eq__(self, other):
        if isinstance(other, int):
            other = self.field.from_int(other)
        if not isinstance(other, Scalar):
            return NotImplemented
        return self.field == other.field and self.value == other.value

    def __hash__(self):
        return hash((self.field.key(), self.value))

    def sort_key(self):
        """Total order used for canonical point/element enumeration."""
        if self.field.p == 0:
            return (self.value.numerator, self.value.denominator)
        return (sum(c * self.field.p ** i for i, c in enumerate(self.value)),)

    def __repr__(self):
        return f"Scalar({self})"

    def __str__(self):
        if self.field.p == 0:
            return str(self.value)
        if self.field.m == 1:
            return str(self.value[0])
        terms = []
        for i in range(self.field.m - 1, -1, -1):
            c = self.value[i]
            if c == 0:
                continue
            if i == 0:
                terms.append(str(c))
            else:
                head = "g" if i == 1 else f"g^{i}"
                terms.append(head if c == 1 else f"{c}*{head}")
        return "+".join(terms) if terms else "0"


def field_arith(a, b, op):
    """Dispatch form of the four field operations."""
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        return a / b
    raise NotSupported(f"unknown op {op!r}")


def pth_root(a):
    """The unique p-th root in F_{p^m}, computed as a^(p^(m-1)).

    Frobenius x -> x^p is a field automorphism of F_{p^m} of order m, so
    a^(p^(m-1)) is its inverse applied once; over F_p it is the identity.
    """
    f = a.field
    if f.p == 0:
        raise NotSupported("p-th roots are not defined in characteristic 0")
    return a ** (f.p ** (f.m - 1))
