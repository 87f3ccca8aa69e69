"""Symbolic expansion engine for the squared-product identity.

Works in the ring Z[a, b, c, u, v, w, i, j, k] where i, j, k are idempotent
(they only ever take the values 0 and 1), over formal words in the basis
symbols e, f, g and the table parameters A..F. Products of two generic
elements expand into vectors of these words; endo-commutativity is the
statement that the expansion of (xy)^2 - x^2y^2 evaluates to zero.
"""

from __future__ import annotations

import functools

from .algebra import BASIS_NAMES, CurledTable, Element, PARAM_NAMES, product
from .field import FieldDescriptor, FieldElement
from .kpoly import KPoly

VariableOrder = ("a", "b", "c", "u", "v", "w", "i", "j", "k")
_VAR_INDEX = {name: idx for idx, name in enumerate(VariableOrder)}
_IDEMPOTENT = frozenset(("i", "j", "k"))
SCALAR_VARS = ("a", "b", "c", "u", "v", "w")

SYMBOLS = BASIS_NAMES + PARAM_NAMES

# basis-times-basis products reduce through the table: an optional type bit
# times a single symbol
_REDUCTIONS = {
    ("e", "e"): ("i", "e"),
    ("e", "f"): (None, "A"),
    ("e", "g"): (None, "B"),
    ("f", "e"): (None, "C"),
    ("f", "f"): ("j", "f"),
    ("f", "g"): (None, "D"),
    ("g", "e"): (None, "E"),
    ("g", "f"): (None, "F"),
    ("g", "g"): ("k", "g"),
}


def _mono_mul(m1: tuple, m2: tuple) -> tuple:
    out = []
    for idx, (e1, e2) in enumerate(zip(m1, m2)):
        s = e1 + e2
        if idx >= 6 and s > 1:
            s = 1
        out.append(s)
    return tuple(out)


class ScalarPoly:
    """Integer-coefficient polynomial in a..w, i, j, k with idempotent i, j, k."""

    __slots__ = ("terms",)

    def __init__(self, terms: dict | None = None):
        self.terms = {m: c for m, c in (terms or {}).items() if c}

    @classmethod
    def zero(cls) -> "ScalarPoly":
        return cls()

    @classmethod
    def const(cls, n: int) -> "ScalarPoly":
        return cls({(0,) * 9: n} if n else {})

    @classmethod
    def var(cls, name: str) -> "ScalarPoly":
        idx = _VAR_INDEX[name]
        return cls({tuple(1 if t == idx else 0 for t in range(9)): 1})

    def __add__(self, other: "ScalarPoly") -> "ScalarPoly":
        terms = dict(self.terms)
        for m, c in other.terms.items():
            terms[m] = terms.get(m, 0) + c
        return ScalarPoly(terms)

    def __sub__(self, other: "ScalarPoly") -> "ScalarPoly":
        return self + (-other)

    def __neg__(self) -> "ScalarPoly":
        return ScalarPoly({m: -c for m, c in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, int):
            return ScalarPoly({m: c * other for m, c in self.terms.items()})
        terms: dict = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = _mono_mul(m1, m2)
                terms[m] = terms.get(m, 0) + c1 * c2
        return ScalarPoly(terms)

    __rmul__ = __mul__

    def is_zero(self) -> bool:
        return not self.terms

    def specialize(self, bindings: dict) -> "ScalarPoly":
        """Substitute integers for a subset of the variables.

        The idempotent variables i, j, k only admit the values 0 and 1.
        """
        for name in bindings:
            if name not in _VAR_INDEX:
                raise ValueError(f"unknown variable {name!r}")
            if name in _IDEMPOTENT and bindings[name] not in (0, 1):
                raise ValueError(f"{name} is idempotent and must be bound to 0 or 1")
        if not bindings:
            return self
        terms: dict = {}
        for m, c in self.terms.items():
            value = c
            new_m = list(m)
            for name, n in bindings.items():
                idx = _VAR_INDEX[name]
                value *= n ** m[idx]
                new_m[idx] = 0
            if value:
                key = tuple(new_m)
                terms[key] = terms.get(key, 0) + value
        return ScalarPoly(terms)

    def evaluate(self, values: dict, desc: FieldDescriptor) -> FieldElement:
        """Evaluate with a full assignment of field elements to all nine variables."""
        acc = desc.zero()
        for m, c in self.terms.items():
            v = desc.from_int(c)
            for idx, e in enumerate(m):
                if e:
                    v = v * values[VariableOrder[idx]] ** e
            acc = acc + v
        return acc

    def split_scalar_parts(self):
        """Yield (scalar monomial over a..w, bit monomial over i..k, coeff)."""
        for m, c in self.terms.items():
            yield m[:6], m[6:], c

    def __eq__(self, other):
        if not isinstance(other, ScalarPoly):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def to_str(self) -> str:
        """Canonical rendering: terms in descending lexicographic monomial order."""
        if not self.terms:
            return "0"
        parts = []
        for m in sorted(self.terms, reverse=True):
            c = self.terms[m]
            body = ""
            for idx, e in enumerate(m):
                if not e:
                    continue
                body += VariableOrder[idx] + (f"^{e}" if e > 1 else "")
            mag = abs(c)
            coeff = "" if (mag == 1 and body) else str(mag)
            term = coeff + body
            if not parts:
                parts.append(("-" if c < 0 else "") + term)
            else:
                parts.append(("- " if c < 0 else "+ ") + term)
        return " ".join(parts)

    def __repr__(self):
        return self.to_str()


def parse_poly(text: str) -> ScalarPoly:
    """Parse expressions like "aw(av-bu)ik" or "a^2u^2i" into a ScalarPoly."""
    pos = 0
    n = len(text)

    def skip_ws():
        nonlocal pos
        while pos < n and text[pos].isspace():
            pos += 1

    def parse_expr() -> ScalarPoly:
        nonlocal pos
        skip_ws()
        sign = 1
        if pos < n and text[pos] in "+-":
            sign = -1 if text[pos] == "-" else 1
            pos += 1
        acc = parse_term() * sign
        while True:
            skip_ws()
            if pos < n and text[pos] in "+-":
                sign = -1 if text[pos] == "-" else 1
                pos += 1
                acc = acc + parse_term() * sign
            else:
                return acc

    def parse_term() -> ScalarPoly:
        nonlocal pos
        acc = None
        while True:
            skip_ws()
            if pos >= n or text[pos] in "+-)":
                break
            factor = parse_factor()
            acc = factor if acc is None else acc * factor
        if acc is None:
            raise ValueError(f"empty term at position {pos} in {text!r}")
        return acc

    def parse_factor() -> ScalarPoly:
        nonlocal pos
        ch = text[pos]
        if ch == "(":
            pos += 1
            inner = parse_expr()
            if pos >= n or text[pos] != ")":
                raise ValueError(f"unbalanced parenthesis in {text!r}")
            pos += 1
            return inner
        if ch.isdigit():
            start = pos
            while pos < n and text[pos].isdigit():
                pos += 1
            return ScalarPoly.const(int(text[start:pos]))
        if ch in _VAR_INDEX:
            pos += 1
            exp = 1
            if pos < n and text[pos] == "^":
                pos += 1
                start = pos
                while pos < n and text[pos].isdigit():
                    pos += 1
                if start == pos:
                    raise ValueError(f"missing exponent in {text!r}")
                exp = int(text[start:pos])
            base = ScalarPoly.var(ch)
            acc = ScalarPoly.const(1)
            for _ in range(exp):
                acc = acc * base
            return acc
        raise ValueError(f"unexpected character {ch!r} in {text!r}")

    result = parse_expr()
    skip_ws()
    if pos != n:
        raise ValueError(f"trailing input at position {pos} in {text!r}")
    return result


class FormalWord:
    """A single symbol from {e, f, g, A..F}, or an ordered product of two.

    Products of two basis symbols never occur: those always reduce through
    the multiplication table.
    """

    __slots__ = ("left", "right")

    def __init__(self, left: str, right: str | None = None):
        if left not in SYMBOLS:
            raise ValueError(f"unknown symbol {left!r}")
        if right is not None:
            if right not in SYMBOLS:
                raise ValueError(f"unknown symbol {right!r}")
            if left in BASIS_NAMES and right in BASIS_NAMES:
                raise ValueError("basis-basis words reduce through the table")
        self.left = left
        self.right = right

    @classmethod
    def single(cls, s: str) -> "FormalWord":
        return cls(s)

    @classmethod
    def pair(cls, s: str, t: str) -> "FormalWord":
        return cls(s, t)

    @classmethod
    def parse(cls, text: str) -> "FormalWord":
        text = text.strip()
        if len(text) == 1:
            return cls(text)
        if len(text) == 2:
            return cls(text[0], text[1])
        if len(text) == 3 and text[1] == "^" and text[2] == "2":
            return cls(text[0], text[0])
        raise ValueError(f"cannot parse formal word {text!r}")

    @property
    def is_single(self) -> bool:
        return self.right is None

    def __eq__(self, other):
        if not isinstance(other, FormalWord):
            return NotImplemented
        return self.left == other.left and self.right == other.right

    def __hash__(self):
        return hash((self.left, self.right))

    def __str__(self):
        if self.right is None:
            return self.left
        if self.right == self.left:
            return f"{self.left}^2"
        return self.left + self.right

    def __repr__(self):
        return f"FormalWord({self})"


class FormalVector:
    """Finitely supported map from formal words to scalar polynomials."""

    __slots__ = ("terms",)

    def __init__(self, terms: dict | None = None):
        self.terms = {w: p for w, p in (terms or {}).items() if not p.is_zero()}

    @classmethod
    def zero(cls) -> "FormalVector":
        return cls()

    def coefficient(self, word: FormalWord) -> ScalarPoly:
        return self.terms.get(word, ScalarPoly.zero())

    def words(self):
        return set(self.terms)

    def __add__(self, other: "FormalVector") -> "FormalVector":
        terms = dict(self.terms)
        for w, p in other.terms.items():
            terms[w] = terms[w] + p if w in terms else p
        return FormalVector(terms)

    def __sub__(self, other: "FormalVector") -> "FormalVector":
        return self + (-other)

    def __neg__(self) -> "FormalVector":
        return FormalVector({w: -p for w, p in self.terms.items()})

    def scale(self, poly: ScalarPoly) -> "FormalVector":
        return FormalVector({w: poly * p for w, p in self.terms.items()})

    def specialize(self, bindings: dict) -> "FormalVector":
        return FormalVector({w: p.specialize(bindings) for w, p in self.terms.items()})

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other):
        if not isinstance(other, FormalVector):
            return NotImplemented
        return self.terms == other.terms

    def to_str(self) -> str:
        if not self.terms:
            return "0"
        keys = sorted(self.terms, key=str)
        return "; ".join(f"{w}: {self.terms[w].to_str()}" for w in keys)

    def __repr__(self):
        return self.to_str()


def _vector(entries) -> FormalVector:
    terms = {}
    for word, poly in entries:
        terms[word] = terms[word] + poly if word in terms else poly
    return FormalVector(terms)


def _p(text: str) -> ScalarPoly:
    return parse_poly(text)


@functools.lru_cache(maxsize=None)
def generic_product() -> FormalVector:
    """The product xy of x = ae+bf+cg and y = ue+vf+wg, over single words."""
    return _vector(
        [
            (FormalWord("e"), _p("aui")),
            (FormalWord("A"), _p("av")),
            (FormalWord("B"), _p("aw")),
            (FormalWord("C"), _p("bu")),
            (FormalWord("f"), _p("bvj")),
            (FormalWord("D"), _p("bw")),
            (FormalWord("E"), _p("cu")),
            (FormalWord("F"), _p("cv")),
            (FormalWord("g"), _p("cwk")),
        ]
    )


@functools.lru_cache(maxsize=None)
def generic_square_x() -> FormalVector:
    """The square x^2, over single words."""
    return _vector(
        [
            (FormalWord("e"), _p("a^2i")),
            (FormalWord("f"), _p("b^2j")),
            (FormalWord("g"), _p("c^2k")),
            (FormalWord("A"), _p("ab")),
            (FormalWord("C"), _p("ab")),
            (FormalWord("B"), _p("ac")),
            (FormalWord("E"), _p("ac")),
            (FormalWord("D"), _p("bc")),
            (FormalWord("F"), _p("bc")),
        ]
    )


@functools.lru_cache(maxsize=None)
def generic_square_y() -> FormalVector:
    """The square y^2, over single words."""
    return _vector(
        [
            (FormalWord("e"), _p("u^2i")),
            (FormalWord("f"), _p("v^2j")),
            (FormalWord("g"), _p("w^2k")),
            (FormalWord("A"), _p("uv")),
            (FormalWord("C"), _p("uv")),
            (FormalWord("B"), _p("uw")),
            (FormalWord("E"), _p("uw")),
            (FormalWord("D"), _p("vw")),
            (FormalWord("F"), _p("vw")),
        ]
    )


def formal_multiply(left: FormalVector, right: FormalVector) -> FormalVector:
    """Distribute a product of two single-word vectors.

    Basis-basis symbol pairs reduce through the table (picking up a type
    bit on the diagonal); every other pair stays as an ordered word.
    """
    for v in (left, right):
        if any(not w.is_single for w in v.terms):
            raise ValueError("formal_multiply expects vectors over single words")
    terms: dict = {}
    for ws, ps in left.terms.items():
        for wt, pt in right.terms.items():
            coeff = ps * pt
            s, t = ws.left, wt.left
            key = _REDUCTIONS.get((s, t))
            if key is not None:
                bit, sym = key
                if bit is not None:
                    coeff = coeff * ScalarPoly.var(bit)
                word = FormalWord(sym)
            else:
                word = FormalWord(s, t)
            terms[word] = terms[word] + coeff if word in terms else coeff
    return FormalVector(terms)


@functools.lru_cache(maxsize=None)
def squared_product_expansion() -> FormalVector:
    """(xy)^2 for generic x, y."""
    xy = generic_product()
    return formal_multiply(xy, xy)


@functools.lru_cache(maxsize=None)
def product_of_squares_expansion() -> FormalVector:
    """x^2 y^2 for generic x, y."""
    return formal_multiply(generic_square_x(), generic_square_y())


@functools.lru_cache(maxsize=None)
def difference_expansion() -> FormalVector:
    """(xy)^2 - x^2y^2 for generic x, y."""
    return squared_product_expansion() - product_of_squares_expansion()


GREEK_NAMES = (
    "alpha",
    "beta",
    "gamma",
    "delta",
    "epsilon",
    "zeta",
    "eta",
    "theta",
    "iota",
    "kappa",
    "lambda",
    "mu",
    "nu",
    "xi",
    "pi",
)

_GREEK_DEFS = {
    "alpha": "aw(av-bu)",
    "beta": "au(cv-bw)",
    "gamma": "av(cv-bw)",
    "delta": "av(aw-cu)",
    "epsilon": "bv(aw-cu)",
    "zeta": "cv(av-bu)",
    "eta": "aw(bw-cv)",
    "theta": "bw(aw-cu)",
    "iota": "cw(av-bu)",
    "kappa": "bw(bu-av)",
    "lambda": "bu(cu-aw)",
    "mu": "bu(bw-cv)",
    "nu": "cu(bu-av)",
    "xi": "cv(cu-aw)",
    "pi": "cu(cv-bw)",
}


@functools.lru_cache(maxsize=None)
def greek_poly(name: str) -> ScalarPoly:
    """One of the fifteen quadratic-difference shorthands, by name."""
    if name not in _GREEK_DEFS:
        raise ValueError(f"unknown shorthand {name!r}")
    return parse_poly(_GREEK_DEFS[name])


@functools.lru_cache(maxsize=None)
def recombined_difference() -> FormalVector:
    """The difference regrouped through beta, epsilon and iota.

    Equals difference_expansion() on every table satisfying the parameter
    square and pairing conditions (the 18-equation condition set).
    """
    beta = greek_poly("beta")
    eps = greek_poly("epsilon")
    iota = greek_poly("iota")
    i_, j_, k_ = (ScalarPoly.var(t) for t in ("i", "j", "k"))
    entries = [
        (FormalWord.parse("AE"), beta),
        (FormalWord.parse("BC"), -beta),
        (FormalWord.parse("BA"), -beta),
        (FormalWord.parse("eF"), i_ * beta),
        (FormalWord.parse("EC"), -beta),
        (FormalWord.parse("Fe"), i_ * beta),
        (FormalWord.parse("DA"), eps),
        (FormalWord.parse("CF"), -eps),
        (FormalWord.parse("FA"), eps),
        (FormalWord.parse("Ef"), -(j_ * eps)),
        (FormalWord.parse("DC"), eps),
        (FormalWord.parse("fE"), -(j_ * eps)),
        (FormalWord.parse("Cg"), -(k_ * iota)),
        (FormalWord.parse("DB"), iota),
        (FormalWord.parse("FB"), iota),
        (FormalWord.parse("ED"), -iota),
        (FormalWord.parse("FE"), iota),
        (FormalWord.parse("gC"), -(k_ * iota)),
    ]
    return _vector(entries)


def specialize(v: FormalVector, bindings: dict) -> FormalVector:
    """Substitute integers for a subset of the nine variables in every coefficient."""
    return v.specialize(bindings)


def group_by_scalar_monomials(v: FormalVector) -> dict:
    """Split coefficients by their a..w monomial part.

    Returns {scalar monomial (6-tuple) -> {word -> polynomial in i, j, k}}.
    """
    groups: dict = {}
    for word, poly in v.terms.items():
        for scalar_m, bit_m, c in poly.split_scalar_parts():
            bucket = groups.setdefault(scalar_m, {})
            piece = ScalarPoly({(0,) * 6 + bit_m: c})
            bucket[word] = bucket[word] + piece if word in bucket else piece
    for bucket in groups.values():
        for word in [w for w, p in bucket.items() if p.is_zero()]:
            del bucket[word]
    return {m: bucket for m, bucket in groups.items() if bucket}


def word_element(word: FormalWord, table: CurledTable) -> Element:
    """The concrete element a formal word denotes under a table."""
    def single(sym: str) -> Element:
        if sym in BASIS_NAMES:
            return Element.basis(table.desc, BASIS_NAMES.index(sym))
        return getattr(table, sym)

    left = single(word.left)
    if word.right is None:
        return left
    return product(left, single(word.right), table)


def _full_bindings(table: CurledTable, scalars: dict) -> dict:
    desc = table.desc
    values = {}
    for name in SCALAR_VARS:
        if name not in scalars:
            raise ValueError(f"missing binding for scalar {name!r}")
        val = scalars[name]
        if val.desc != desc:
            raise FieldMismatchError(f"scalar {name} over the wrong field")
        values[name] = val
    for name, bit in zip(("i", "j", "k"), table.ctype):
        values[name] = desc.from_int(bit)
    return values


def eval_formal(v: FormalVector, table: CurledTable, scalars: dict) -> Element:
    """Evaluate a formal vector in a concrete algebra.

    scalars assigns field elements to all of a, b, c, u, v, w; the type bits
    substitute for i, j, k and words evaluate through the table product.
    """
    values = _full_bindings(table, scalars)
    desc = table.desc
    acc = Element.zero(desc)
    for word, poly in v.terms.items():
        coeff = poly.evaluate(values, desc)
        if coeff:
            acc = acc + coeff * word_element(word, table)
    return acc


def eval_to_polynomials(v: FormalVector, table: CurledTable):
    """Substitute the table but keep a..w symbolic.

    Returns the three coordinates as polynomials in K[a, b, c, u, v, w];
    all three are zero exactly when the vector vanishes identically on the
    table, for every scalar assignment drawn from an infinite field.
    """
    desc = table.desc
    bits = table.ctype
    coords = [KPoly.zero(desc, 6) for _ in range(3)]
    for word, poly in v.terms.items():
        el = word_element(word, table)
        if el.is_zero():
            continue
        for scalar_m, bit_m, c in poly.split_scalar_parts():
            if any(e and not bit for e, bit in zip(bit_m, bits)):
                continue
            value = desc.from_int(c)
            for idx in range(3):
                coord = el.coords[idx]
                if coord:
                    contrib = KPoly(desc, 6, {scalar_m: value * coord})
                    coords[idx] = coords[idx] + contrib
    return tuple(coords)


@functools.lru_cache(maxsize=None)
def difference_monomial_map(bits: tuple) -> tuple:
    """Difference expansion with type bits substituted, grouped by a..w monomial.

    Returns a tuple of (scalar monomial, ((int coeff, word string), ...))
    pairs; evaluating sum(coeff * word value) for each monomial and checking
    all of them vanish is the polynomial-identity decider.
    """
    acc: dict = {}
    for word, poly in difference_expansion().terms.items():
        for scalar_m, bit_m, c in poly.split_scalar_parts():
            if any(e and not bit for e, bit in zip(bit_m, bits)):
                continue
            key = (scalar_m, str(word))
            acc[key] = acc.get(key, 0) + c
    grouped: dict = {}
    for (scalar_m, word_str), c in acc.items():
        if c:
            grouped.setdefault(scalar_m, []).append((c, word_str))
    return tuple(
        (m, tuple(sorted(entries, key=lambda t: t[1])))
        for m, entries in sorted(grouped.items())
    )
