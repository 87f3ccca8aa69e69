"""Structural identity checks on a curled table.

Three labeled condition sets:

* set 10, eighteen equations on squares and symmetric pairings of the table
  parameters (10-1 .. 10-18);
* set 17, three cross-pairing equations (17-1 .. 17-3);
* set 18, the zeropotency criterion (18-1 .. 18-4).

A table is endo-commutative exactly when all 21 equations of sets 10 and 17
hold, and zeropotent exactly when set 18 holds. Each equation is evaluated
independently so a failing table reports exactly which identities broke and
with what witness elements.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .algebra import CurledTable, Element
from .formal import FormalWord, word_element

# (label, lhs terms, rhs terms); a term is (integer coefficient, type-bit
# multiplier string, word). A term whose bit multiplier is 0 drops out.
CONDITION_10 = (
    ("10-1", ((1, "", "A^2"),), ((1, "ij", "A"),)),
    ("10-2", ((1, "", "B^2"),), ((1, "ik", "B"),)),
    ("10-3", ((1, "", "C^2"),), ((1, "ij", "C"),)),
    ("10-4", ((1, "", "D^2"),), ((1, "jk", "D"),)),
    ("10-5", ((1, "", "E^2"),), ((1, "ik", "E"),)),
    ("10-6", ((1, "", "F^2"),), ((1, "jk", "F"),)),
    ("10-7", ((1, "", "AB"), (1, "", "BA")), ((1, "i", "eD"), (1, "i", "eF"))),
    ("10-8", ((1, "", "CE"), (1, "", "EC")), ((1, "i", "De"), (1, "i", "Fe"))),
    ("10-9", ((1, "", "CD"), (1, "", "DC")), ((1, "j", "fB"), (1, "j", "fE"))),
    ("10-10", ((1, "", "AF"), (1, "", "FA")), ((1, "j", "Bf"), (1, "j", "Ef"))),
    ("10-11", ((1, "", "EF"), (1, "", "FE")), ((1, "k", "gA"), (1, "k", "gC"))),
    ("10-12", ((1, "", "BD"), (1, "", "DB")), ((1, "k", "Ag"), (1, "k", "Cg"))),
    ("10-13", ((1, "i", "Ae"),), ((1, "i", "eC"),)),
    ("10-14", ((1, "i", "Be"),), ((1, "i", "eE"),)),
    ("10-15", ((1, "j", "Cf"),), ((1, "j", "fA"),)),
    ("10-16", ((1, "j", "Df"),), ((1, "j", "fF"),)),
    ("10-17", ((1, "k", "Eg"),), ((1, "k", "gB"),)),
    ("10-18", ((1, "k", "Fg"),), ((1, "k", "gD"),)),
)

CONDITION_17 = (
    (
        "17-1",
        ((1, "", "BC"), (1, "", "BA"), (1, "", "EC"), (-1, "", "AE")),
        ((1, "i", "eF"), (1, "i", "Fe")),
    ),
    (
        "17-2",
        ((1, "", "DA"), (1, "", "FA"), (1, "", "DC"), (-1, "", "CF")),
        ((1, "j", "Ef"), (1, "j", "fE")),
    ),
    (
        "17-3",
        ((1, "", "DB"), (1, "", "FB"), (1, "", "FE"), (-1, "", "ED")),
        ((1, "k", "Cg"), (1, "k", "gC")),
    ),
)

THEOREM_EQUATIONS = CONDITION_10 + CONDITION_17


def _side_value(terms, table: CurledTable) -> Element:
    bits = dict(zip("ijk", table.ctype))
    acc = Element.zero(table.desc)
    for coeff, bit_str, word_str in terms:
        if any(not bits[ch] for ch in bit_str):
            continue
        value = word_element(FormalWord.parse(word_str), table)
        if coeff == -1:
            value = -value
        elif coeff != 1:
            value = table.desc.from_int(coeff) * value
        acc = acc + value
    return acc


@dataclass(frozen=True)
class ConditionVerdict:
    """Outcome of one equation, with the two compared values as witnesses."""

    label: str
    holds: bool
    lhs: object
    rhs: object


@dataclass
class ConditionReport:
    """Per-equation verdicts, keyed by label within each condition set."""

    cond10: dict = field(default_factory=dict)
    cond17: dict = field(default_factory=dict)
    zeropotent: dict = field(default_factory=dict)

    def merged(self, other: "ConditionReport") -> "ConditionReport":
        return ConditionReport(
            {**self.cond10, **other.cond10},
            {**self.cond17, **other.cond17},
            {**self.zeropotent, **other.zeropotent},
        )

    @property
    def theorem_holds(self) -> bool:
        """Conjunction of all 21 equations in sets 10 and 17."""
        if len(self.cond10) != len(CONDITION_10) or len(self.cond17) != len(CONDITION_17):
            raise ValueError("theorem verdict needs both condition sets evaluated")
        return all(v.holds for v in self.cond10.values()) and all(
            v.holds for v in self.cond17.values()
        )

    @property
    def zeropotent_holds(self) -> bool:
        if len(self.zeropotent) != 4:
            raise ValueError("zeropotency verdict needs set 18 evaluated")
        return all(v.holds for v in self.zeropotent.values())

    def failing_labels(self) -> list[str]:
        out = []
        for section in (self.cond10, self.cond17, self.zeropotent):
            out.extend(label for label, v in section.items() if not v.holds)
        return out

    def to_json_dict(self) -> dict:
        def render(value):
            if isinstance(value, Element):
                return [str(c) for c in value.coords]
            return list(value)

        def section(entries):
            return {
                label: (
                    {"holds": True}
                    if v.holds
                    else {"holds": False, "lhs": render(v.lhs), "rhs": render(v.rhs)}
                )
                for label, v in entries.items()
            }

        return {
            "cond10": section(self.cond10),
            "cond17": section(self.cond17),
            "zeropotent18": section(self.zeropotent),
        }


def _check_equations(equations, table: CurledTable) -> dict:
    out = {}
    for label, lhs_terms, rhs_terms in equations:
        lhs = _side_value(lhs_terms, table)
        rhs = _side_value(rhs_terms, table)
        out[label] = ConditionVerdict(label, lhs == rhs, lhs, rhs)
    return out


def check_condition_10(table: CurledTable) -> ConditionReport:
    """Evaluate the eighteen square and pairing equations of set 10."""
    return ConditionReport(cond10=_check_equations(CONDITION_10, table))


def check_condition_17(table: CurledTable) -> ConditionReport:
    """Evaluate the three cross-pairing equations of set 17."""
    return ConditionReport(cond17=_check_equations(CONDITION_17, table))


def check_zeropotency_condition(table: CurledTable) -> ConditionReport:
    """Evaluate set 18: type bits all zero and the three parameter sums vanish."""
    verdicts = {}
    bits = tuple(table.ctype)
    verdicts["18-1"] = ConditionVerdict("18-1", bits == (0, 0, 0), bits, (0, 0, 0))
    zero = Element.zero(table.desc)
    for label, pair_sum in (
        ("18-2", table.A + table.C),
        ("18-3", table.B + table.E),
        ("18-4", table.D + table.F),
    ):
        verdicts[label] = ConditionVerdict(label, pair_sum.is_zero(), pair_sum, zero)
    return ConditionReport(zeropotent=verdicts)


def condition_report(table: CurledTable) -> ConditionReport:
    """Full report over all three condition sets."""
    return (
        check_condition_10(table)
        .merged(check_condition_17(table))
        .merged(check_zeropotency_condition(table))
    )


def is_ec_by_theorem(table: CurledTable) -> bool:
    """Endo-commutativity via the 21-equation characterization."""
    for label, lhs_terms, rhs_terms in THEOREM_EQUATIONS:
        if _side_value(lhs_terms, table) != _side_value(rhs_terms, table):
            return False
    return True


def is_zeropotent_by_condition(table: CurledTable) -> bool:
    """Zeropotency via set 18, without enumerating any elements."""
    return (
        tuple(table.ctype) == (0, 0, 0)
        and (table.A + table.C).is_zero()
        and (table.B + table.E).is_zero()
        and (table.D + table.F).is_zero()
    )
