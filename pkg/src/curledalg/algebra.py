"""3-dimensional algebra elements, curled multiplication tables, and basis changes.

A curled table fixes an ordered basis {e, f, g} with diagonal squares
e^2 = i*e, f^2 = j*f, g^2 = k*g for type bits (i, j, k) in {0,1}^3, plus six
arbitrary off-diagonal products A = ef, B = eg, C = fe, D = fg, E = ge,
F = gf. The diagonal is implied by the type and never stored.
"""

from __future__ import annotations

import itertools

from .field import (
    FieldDescriptor,
    FieldElement,
    FieldMismatchError,
    UnsupportedFieldError,
    enumerate_field,
)
from .kpoly import KPoly

PARAM_NAMES = ("A", "B", "C", "D", "E", "F")
BASIS_NAMES = ("e", "f", "g")


class SingularMatrixError(ValueError):
    """Raised when a change of basis is attempted with a singular matrix."""


class NotCurledNormalFormError(ValueError):
    """Raised when a structure tensor has no curled normal-form diagonal."""


class Element:
    """A vector over the ordered basis {e, f, g}."""

    __slots__ = ("coords",)

    def __init__(self, coords):
        coords = tuple(coords)
        if len(coords) != 3:
            raise ValueError("an element has exactly three coordinates")
        d = coords[0].desc
        if coords[1].desc != d or coords[2].desc != d:
            raise FieldMismatchError("element coordinates from different fields")
        self.coords = coords

    @classmethod
    def zero(cls, desc: FieldDescriptor) -> "Element":
        z = desc.zero()
        return cls((z, z, z))

    @classmethod
    def basis(cls, desc: FieldDescriptor, idx: int) -> "Element":
        z, o = desc.zero(), desc.one()
        return cls(tuple(o if t == idx else z for t in range(3)))

    @classmethod
    def from_ints(cls, desc: FieldDescriptor, ints) -> "Element":
        return cls(tuple(desc.from_int(n) for n in ints))

    @property
    def desc(self) -> FieldDescriptor:
        return self.coords[0].desc

    def __add__(self, other: "Element") -> "Element":
        a, b = self.coords, other.coords
        return Element((a[0] + b[0], a[1] + b[1], a[2] + b[2]))

    def __sub__(self, other: "Element") -> "Element":
        a, b = self.coords, other.coords
        return Element((a[0] - b[0], a[1] - b[1], a[2] - b[2]))

    def __neg__(self) -> "Element":
        return Element(tuple(-c for c in self.coords))

    def __rmul__(self, scalar: FieldElement) -> "Element":
        return Element(tuple(scalar * c for c in self.coords))

    def is_zero(self) -> bool:
        return not any(self.coords)

    def __eq__(self, other):
        if not isinstance(other, Element):
            return NotImplemented
        return self.coords == other.coords

    def __hash__(self):
        return hash(self.coords)

    def __repr__(self):
        return "(" + ", ".join(str(c) for c in self.coords) + ")"


class CurledType(tuple):
    """Type bits (i, j, k): which normalized diagonal squares survive."""

    def __new__(cls, i: int, j: int, k: int):
        for b in (i, j, k):
            if b not in (0, 1) or isinstance(b, bool):
                raise ValueError(f"type bits must be 0 or 1, got {(i, j, k)}")
        return super().__new__(cls, (i, j, k))

    @property
    def i(self):
        return self[0]

    @property
    def j(self):
        return self[1]

    @property
    def k(self):
        return self[2]


ALL_TYPES = tuple(CurledType(*bits) for bits in itertools.product((0, 1), repeat=3))


class CurledTable:
    """Multiplication table of a 3-dimensional curled algebra.

    Off-diagonal products are stored in the fixed order A=ef, B=eg, C=fe,
    D=fg, E=ge, F=gf; the diagonal follows from the type bits.
    """

    __slots__ = ("desc", "ctype", "A", "B", "C", "D", "E", "F", "type_scalars")

    def __init__(self, desc, ctype, A, B, C, D, E, F):
        self.desc = desc
        self.ctype = CurledType(*ctype)
        for el in (A, B, C, D, E, F):
            if el.desc != desc:
                raise FieldMismatchError("table parameter over the wrong field")
        self.A, self.B, self.C, self.D, self.E, self.F = A, B, C, D, E, F
        self.type_scalars = tuple(desc.from_int(b) for b in self.ctype)

    @classmethod
    def zero(cls, desc, ctype) -> "CurledTable":
        z = Element.zero(desc)
        return cls(desc, ctype, z, z, z, z, z, z)

    @classmethod
    def make(cls, desc, ctype, **params) -> "CurledTable":
        """Build a table from integer coordinate triples, e.g. A=(0, 0, 1)."""
        unknown = set(params) - set(PARAM_NAMES)
        if unknown:
            raise ValueError(f"unknown table parameters {sorted(unknown)}")
        els = {
            name: Element.from_ints(desc, params.get(name, (0, 0, 0)))
            for name in PARAM_NAMES
        }
        return cls(desc, ctype, **els)

    @classmethod
    def from_coords(cls, desc, ctype, coords) -> "CurledTable":
        """Build from 18 integers: (A_e, A_f, A_g, B_e, ..., F_g)."""
        coords = tuple(coords)
        if len(coords) != 18:
            raise ValueError("expected 18 coordinates")
        els = [Element.from_ints(desc, coords[3 * t : 3 * t + 3]) for t in range(6)]
        return cls(desc, ctype, *els)

    def params(self):
        return ((n, getattr(self, n)) for n in PARAM_NAMES)

    def coords(self):
        """The 18 parameter coordinates in fixed order, as field elements."""
        out = []
        for name in PARAM_NAMES:
            out.extend(getattr(self, name).coords)
        return tuple(out)

    def __eq__(self, other):
        if not isinstance(other, CurledTable):
            return NotImplemented
        return (
            self.desc == other.desc
            and self.ctype == other.ctype
            and all(getattr(self, n) == getattr(other, n) for n in PARAM_NAMES)
        )

    def __hash__(self):
        return hash((self.desc, self.ctype, self.coords()))

    def __repr__(self):
        parts = ", ".join(f"{n}={getattr(self, n)!r}" for n in PARAM_NAMES)
        return f"CurledTable({self.desc!r}, type={tuple(self.ctype)}, {parts})"


def _require_table_operands(x: Element, y: Element, table: CurledTable):
    if x.desc != table.desc or y.desc != table.desc:
        raise FieldMismatchError("operands and table over different fields")


def product(x: Element, y: Element, table: CurledTable) -> Element:
    """Bilinear product of x and y under the table."""
    _require_table_operands(x, y, table)
    a, b, c = x.coords
    u, v, w = y.coords
    ti, tj, tk = table.type_scalars
    re = a * u * ti
    rf = b * v * tj
    rg = c * w * tk
    for s, el in (
        (a * v, table.A),
        (a * w, table.B),
        (b * u, table.C),
        (b * w, table.D),
        (c * u, table.E),
        (c * v, table.F),
    ):
        pe, pf, pg = el.coords
        re = re + s * pe
        rf = rf + s * pf
        rg = rg + s * pg
    return Element((re, rf, rg))


def square(x: Element, table: CurledTable) -> Element:
    """Square of x, via the closed form of the table expansion."""
    _require_table_operands(x, x, table)
    a, b, c = x.coords
    ti, tj, tk = table.type_scalars
    diag = Element((a * a * ti, b * b * tj, c * c * tk))
    return (
        diag
        + (a * b) * (table.A + table.C)
        + (a * c) * (table.B + table.E)
        + (b * c) * (table.D + table.F)
    )


def linearly_dependent(x: Element, y: Element) -> bool:
    """True iff the 2x3 matrix [x; y] has all three 2x2 minors zero."""
    if x.desc != y.desc:
        raise FieldMismatchError("elements over different fields")
    (x0, x1, x2), (y0, y1, y2) = x.coords, y.coords
    return (
        not (x0 * y1 - x1 * y0)
        and not (x0 * y2 - x2 * y0)
        and not (x1 * y2 - x2 * y1)
    )


def all_elements(desc: FieldDescriptor):
    """All p^3 elements of the 3-dimensional space over a prime field."""
    scalars = list(enumerate_field(desc))
    for a in scalars:
        for b in scalars:
            for c in scalars:
                yield Element((a, b, c))


def is_curled_bruteforce(table: CurledTable) -> bool:
    """Definitional check over a finite prime field: every x has {x, x^2} dependent."""
    if not table.desc.is_prime_field:
        raise UnsupportedFieldError("brute force needs a finite prime field")
    for x in all_elements(table.desc):
        if not linearly_dependent(x, square(x, table)):
            return False
    return True


def symbolic_square(table: CurledTable) -> tuple[KPoly, KPoly, KPoly]:
    """Coordinates of (a*e + b*f + c*g)^2 as polynomials in K[a, b, c]."""
    desc = table.desc
    a = KPoly.variable(desc, 3, 0)
    b = KPoly.variable(desc, 3, 1)
    c = KPoly.variable(desc, 3, 2)
    ti, tj, tk = table.type_scalars
    diag = (
        (a * a).scale(ti),
        (b * b).scale(tj),
        (c * c).scale(tk),
    )
    out = []
    for idx in range(3):
        acc = diag[idx]
        for s, pair_sum in (
            (a * b, table.A + table.C),
            (a * c, table.B + table.E),
            (b * c, table.D + table.F),
        ):
            acc = acc + s.scale(pair_sum.coords[idx])
        out.append(acc)
    return tuple(out)


def is_curled_symbolic(table: CurledTable) -> bool:
    """Polynomial-identity curledness: the minors of [x; x^2] vanish identically.

    Over an infinite field this is equivalent to every element being curled.
    Over a finite field it is sufficient but not necessary, since a nonzero
    polynomial can still vanish at every point.
    """
    desc = table.desc
    xv = [KPoly.variable(desc, 3, idx) for idx in range(3)]
    sq = symbolic_square(table)
    return (
        (xv[0] * sq[1] - xv[1] * sq[0]).is_zero()
        and (xv[0] * sq[2] - xv[2] * sq[0]).is_zero()
        and (xv[1] * sq[2] - xv[2] * sq[1]).is_zero()
    )


def normalize_diagonal(
    eps_e: FieldElement,
    eps_f: FieldElement,
    eps_g: FieldElement,
    A: Element,
    B: Element,
    C: Element,
    D: Element,
    E: Element,
    F: Element,
):
    """Rescale basis vectors so each diagonal square coefficient becomes 0 or 1.

    Input is a raw table with e^2 = eps_e*e, f^2 = eps_f*f, g^2 = eps_g*g and
    off-diagonal products A..F. Each basis vector with a nonzero square
    coefficient is scaled by its inverse; zero coefficients are left alone.
    Returns the normalized CurledTable and the three scale factors applied.
    """
    eps = (eps_e, eps_f, eps_g)
    desc = eps_e.desc
    if eps_f.desc != desc or eps_g.desc != desc:
        raise FieldMismatchError("diagonal coefficients over different fields")
    one = desc.one()
    scales = tuple(ep.inverse() if ep else one for ep in eps)
    inv_scales = tuple(ep if ep else one for ep in eps)
    bits = tuple(1 if ep else 0 for ep in eps)

    def transform(el: Element, si: FieldElement, sj: FieldElement) -> Element:
        factor = si * sj
        return Element(
            tuple(factor * (coord * inv) for coord, inv in zip(el.coords, inv_scales))
        )

    se, sf, sg = scales
    table = CurledTable(
        desc,
        CurledType(*bits),
        transform(A, se, sf),
        transform(B, se, sg),
        transform(C, sf, se),
        transform(D, sf, sg),
        transform(E, sg, se),
        transform(F, sg, sf),
    )
    return table, scales


class StructureTensor:
    """Full structure constants: entry(r, s) is the product of basis vectors r and s."""

    __slots__ = ("desc", "rows")

    def __init__(self, desc: FieldDescriptor, rows):
        rows = tuple(tuple(row) for row in rows)
        if len(rows) != 3 or any(len(r) != 3 for r in rows):
            raise ValueError("a structure tensor has 3x3 entries")
        for row in rows:
            for el in row:
                if el.desc != desc:
                    raise FieldMismatchError("tensor entry over the wrong field")
        self.desc = desc
        self.rows = rows

    def entry(self, r: int, s: int) -> Element:
        return self.rows[r][s]

    def constant(self, r: int, s: int, t: int) -> FieldElement:
        return self.rows[r][s].coords[t]

    def __eq__(self, other):
        if not isinstance(other, StructureTensor):
            return NotImplemented
        return self.desc == other.desc and self.rows == other.rows

    def __repr__(self):
        return f"StructureTensor({self.rows!r})"


def to_tensor(table: CurledTable) -> StructureTensor:
    desc = table.desc
    ti, tj, tk = table.type_scalars
    diag = (ti * Element.basis(desc, 0), tj * Element.basis(desc, 1), tk * Element.basis(desc, 2))
    rows = (
        (diag[0], table.A, table.B),
        (table.C, diag[1], table.D),
        (table.E, table.F, diag[2]),
    )
    return StructureTensor(desc, rows)


def from_tensor(t: StructureTensor) -> CurledTable:
    """Inverse of to_tensor; the diagonal must already be in curled normal form."""
    desc = t.desc
    zero, one = desc.zero(), desc.one()
    bits = []
    for r in range(3):
        el = t.entry(r, r)
        for s in range(3):
            if s != r and el.coords[s]:
                raise NotCurledNormalFormError(
                    f"basis square {r} is not a multiple of its own basis vector"
                )
        lead = el.coords[r]
        if lead == zero:
            bits.append(0)
        elif lead == one:
            bits.append(1)
        else:
            raise NotCurledNormalFormError(
                f"basis square {r} has coefficient {lead}, expected 0 or 1"
            )
    return CurledTable(
        desc,
        CurledType(*bits),
        t.entry(0, 1),
        t.entry(0, 2),
        t.entry(1, 0),
        t.entry(1, 2),
        t.entry(2, 0),
        t.entry(2, 1),
    )


def matrix_determinant(m) -> FieldElement:
    a, b, c = m[0]
    d, e, f = m[1]
    g, h, i = m[2]
    return a * (e * i - f * h) - b * (d * i - f * g) + c * (d * h - e * g)


def matrix_inverse(m):
    det = matrix_determinant(m)
    if not det:
        raise SingularMatrixError("matrix is singular")
    inv_det = det.inverse()
    a, b, c = m[0]
    d, e, f = m[1]
    g, h, i = m[2]
    cof = (
        (e * i - f * h, c * h - b * i, b * f - c * e),
        (f * g - d * i, a * i - c * g, c * d - a * f),
        (d * h - e * g, b * g - a * h, a * e - b * d),
    )
    return tuple(tuple(inv_det * v for v in row) for row in cof)


def matrix_multiply(m, n):
    return tuple(
        tuple(
            m[r][0] * n[0][s] + m[r][1] * n[1][s] + m[r][2] * n[2][s]
            for s in range(3)
        )
        for r in range(3)
    )


def change_of_basis(t: StructureTensor, m) -> StructureTensor:
    """Structure constants of the same product in the basis e'_r = sum_s m[r][s] e_s.

    Rows of m express the new basis vectors in the old one. Composition
    follows matrix products: changing by N then by M equals changing by M*N.
    """
    minv = matrix_inverse(m)
    desc = t.desc
    new_rows = []
    for r in range(3):
        row = []
        for s in range(3):
            # product of the new basis vectors, still in old coordinates
            acc = Element.zero(desc)
            for p in range(3):
                mp = m[r][p]
                if not mp:
                    continue
                for q in range(3):
                    mq = m[s][q]
                    if not mq:
                        continue
                    acc = acc + (mp * mq) * t.entry(p, q)
            # re-express in the new basis: e_t = sum_u minv[t][u] e'_u
            coords = []
            for u in range(3):
                coords.append(
                    acc.coords[0] * minv[0][u]
                    + acc.coords[1] * minv[1][u]
                    + acc.coords[2] * minv[2][u]
                )
            row.append(Element(tuple(coords)))
        new_rows.append(tuple(row))
    return StructureTensor(desc, tuple(new_rows))
