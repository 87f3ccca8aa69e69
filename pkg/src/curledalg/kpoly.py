"""Sparse multivariate polynomials with field-element coefficients.

Monomials are fixed-length exponent tuples; coefficients live in one
FieldDescriptor. Just enough ring arithmetic for symbolic squares and
identity testing, nothing more.
"""

from __future__ import annotations

from .field import FieldDescriptor, FieldElement, FieldMismatchError


class KPoly:
    __slots__ = ("desc", "nvars", "terms")

    def __init__(self, desc: FieldDescriptor, nvars: int, terms: dict | None = None):
        self.desc = desc
        self.nvars = nvars
        self.terms = {m: c for m, c in (terms or {}).items() if c}

    @classmethod
    def zero(cls, desc, nvars):
        return cls(desc, nvars)

    @classmethod
    def const(cls, desc, nvars, value: FieldElement):
        return cls(desc, nvars, {(0,) * nvars: value})

    @classmethod
    def variable(cls, desc, nvars, idx: int):
        mono = tuple(1 if t == idx else 0 for t in range(nvars))
        return cls(desc, nvars, {mono: desc.one()})

    def _check(self, other: "KPoly"):
        if self.desc != other.desc or self.nvars != other.nvars:
            raise FieldMismatchError("polynomials live in different rings")

    def __add__(self, other):
        self._check(other)
        terms = dict(self.terms)
        for m, c in other.terms.items():
            terms[m] = terms[m] + c if m in terms else c
        return KPoly(self.desc, self.nvars, terms)

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return KPoly(self.desc, self.nvars, {m: -c for m, c in self.terms.items()})

    def __mul__(self, other):
        self._check(other)
        terms: dict = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = tuple(a + b for a, b in zip(m1, m2))
                c = c1 * c2
                terms[m] = terms[m] + c if m in terms else c
        return KPoly(self.desc, self.nvars, terms)

    def scale(self, c: FieldElement) -> "KPoly":
        return KPoly(self.desc, self.nvars, {m: c * v for m, v in self.terms.items()})

    def coefficient(self, mono: tuple) -> FieldElement:
        return self.terms.get(mono, self.desc.zero())

    def is_zero(self) -> bool:
        return not self.terms

    def evaluate(self, point) -> FieldElement:
        """Evaluate at a tuple of field elements, one per variable."""
        acc = self.desc.zero()
        for m, c in self.terms.items():
            v = c
            for idx, e in enumerate(m):
                if e:
                    v = v * point[idx] ** e
            acc = acc + v
        return acc

    def __eq__(self, other):
        if not isinstance(other, KPoly):
            return NotImplemented
        return (
            self.desc == other.desc
            and self.nvars == other.nvars
            and self.terms == other.terms
        )

    def __hash__(self):
        return hash((self.desc, self.nvars, frozenset(self.terms.items())))

    def __repr__(self):
        if not self.terms:
            return "0"
        bits = []
        for m in sorted(self.terms, reverse=True):
            vars_part = "".join(
                f"x{idx}" + (f"^{e}" if e > 1 else "")
                for idx, e in enumerate(m)
                if e
            )
            bits.append(f"{self.terms[m]}*{vars_part}" if vars_part else f"{self.terms[m]}")
        return " + ".join(bits)
