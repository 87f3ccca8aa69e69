"""Exact scalar arithmetic over prime fields GF(p) and the rationals."""

from __future__ import annotations

from fractions import Fraction

MAX_PRIME = 2**31

# Deterministic Miller-Rabin witnesses, valid for all n < 3_215_031_751.
_MR_WITNESSES = (2, 3, 5, 7)


class FieldMismatchError(ValueError):
    """Raised when values from different fields are combined."""


class UnsupportedFieldError(ValueError):
    """Raised when an operation is asked for a field kind it cannot handle."""


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    for a in _MR_WITNESSES:
        if n % a == 0:
            return n == a
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_WITNESSES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


class FieldDescriptor:
    """A concrete ground field: GF(p) for a verified prime p, or the rationals."""

    __slots__ = ("kind", "p", "_cache")

    def __init__(self, kind: str, p: int | None = None):
        if kind == "prime":
            if not isinstance(p, int) or isinstance(p, bool):
                raise ValueError(f"prime field needs an integer modulus, got {p!r}")
            if not 2 <= p < MAX_PRIME or not is_prime(p):
                raise ValueError(f"modulus must be a prime in [2, 2^31), got {p}")
        elif kind == "rational":
            if p is not None:
                raise ValueError("the rational field takes no modulus")
        else:
            raise ValueError(f"unknown field kind {kind!r}")
        self.kind = kind
        self.p = p
        # flyweight cache of small residues, built lazily
        self._cache: list[FieldElement] | None = None

    @property
    def is_prime_field(self) -> bool:
        return self.kind == "prime"

    def from_int(self, n: int) -> FieldElement:
        if self.kind == "prime":
            v = n % self.p
            cache = self._cache
            if cache is None:
                cache = self._cache = [
                    FieldElement(self, r) for r in range(min(self.p, 256))
                ]
            if v < len(cache):
                return cache[v]
            return FieldElement(self, v)
        return FieldElement(self, Fraction(n))

    def from_fraction(self, num: int, den: int) -> FieldElement:
        if self.kind != "rational":
            raise UnsupportedFieldError("fractional literals need the rational field")
        if den == 0:
            raise ZeroDivisionError("fraction with zero denominator")
        return FieldElement(self, Fraction(num, den))

    def zero(self) -> FieldElement:
        return self.from_int(0)

    def one(self) -> FieldElement:
        return self.from_int(1)

    def __eq__(self, other):
        if not isinstance(other, FieldDescriptor):
            return NotImplemented
        return self.kind == other.kind and self.p == other.p

    def __hash__(self):
        return hash((self.kind, self.p))

    def __repr__(self):
        return f"GF({self.p})" if self.kind == "prime" else "QQ"


class FieldElement:
    """An immutable, canonical scalar tagged with its field descriptor.

    Prime fields store the residue in [0, p); the rationals store a reduced
    Fraction. Construct through a FieldDescriptor, not directly.
    """

    __slots__ = ("desc", "value")

    def __init__(self, desc: FieldDescriptor, value):
        self.desc = desc
        self.value = value

    def _coerce(self, other) -> "FieldElement":
        if not isinstance(other, FieldElement):
            raise TypeError(f"expected a FieldElement, got {other!r}")
        if other.desc != self.desc:
            raise FieldMismatchError(f"{self.desc} vs {other.desc}")
        return other

    def __add__(self, other):
        other = self._coerce(other)
        if self.desc.kind == "prime":
            return FieldElement(self.desc, (self.value + other.value) % self.desc.p)
        return FieldElement(self.desc, self.value + other.value)

    def __sub__(self, other):
        other = self._coerce(other)
        if self.desc.kind == "prime":
            return FieldElement(self.desc, (self.value - other.value) % self.desc.p)
        return FieldElement(self.desc, self.value - other.value)

    def __mul__(self, other):
        if not isinstance(other, FieldElement):
            return NotImplemented
        other = self._coerce(other)
        if self.desc.kind == "prime":
            return FieldElement(self.desc, self.value * other.value % self.desc.p)
        return FieldElement(self.desc, self.value * other.value)

    def __neg__(self):
        if self.desc.kind == "prime":
            return FieldElement(self.desc, -self.value % self.desc.p)
        return FieldElement(self.desc, -self.value)

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        if self.desc.kind == "prime":
            return FieldElement(self.desc, pow(self.value, n, self.desc.p))
        return FieldElement(self.desc, self.value**n)

    def inverse(self) -> "FieldElement":
        if not self.value:
            raise ZeroDivisionError(f"0 has no inverse in {self.desc}")
        if self.desc.kind == "prime":
            return FieldElement(self.desc, pow(self.value, self.desc.p - 2, self.desc.p))
        return FieldElement(self.desc, 1 / self.value)

    def __bool__(self):
        return bool(self.value)

    def __eq__(self, other):
        if not isinstance(other, FieldElement):
            return NotImplemented
        return self.desc == other.desc and self.value == other.value

    def __hash__(self):
        return hash((self.desc, self.value))

    def __repr__(self):
        return str(self.value)


def GF(p: int) -> FieldDescriptor:
    return FieldDescriptor("prime", p)


RATIONALS = FieldDescriptor("rational")


def from_integer(n: int, desc: FieldDescriptor) -> FieldElement:
    """Image of the integer n under the canonical ring map into the field."""
    return desc.from_int(n)


def inverse(x: FieldElement) -> FieldElement:
    """Multiplicative inverse; raises ZeroDivisionError on zero."""
    return x.inverse()


def enumerate_field(desc: FieldDescriptor):
    """Yield all p elements of a prime field, in residue order starting at 0."""
    if desc.kind != "prime":
        raise UnsupportedFieldError("can only enumerate finite prime fields")
    for r in range(desc.p):
        yield desc.from_int(r)
