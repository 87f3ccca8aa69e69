"""Built-in consistency suite for the symbolic expansion engine.

Five sections:

* ledger: the recomputed expansions match the frozen reference rows;
* shorthand identities: the six difference relations among the fifteen
  quadratic shorthands;
* specializations: pinning one generic element to a basis vector collapses
  the difference into the expected grouped form, six cases;
* consistency: evaluating the formal difference agrees with computing
  square(xy) - x^2 y^2 directly in random concrete algebras;
* recombination: on every GF(2) table satisfying condition set 10, the
  difference equals its regrouped beta/epsilon/iota form for every scalar
  assignment.

Each check returns a name, a verdict and a detail string for the first
failure, which is what the CLI selfcheck command prints.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .algebra import ALL_TYPES, CurledTable, CurledType, product, square
from .field import GF, RATIONALS, FieldDescriptor
from .formal import (
    FormalWord,
    GREEK_NAMES,
    difference_expansion,
    eval_formal,
    greek_poly,
    group_by_scalar_monomials,
    parse_poly,
    specialize,
)
from .ledger import LEDGER_ROWS, ledger_discrepancies
from .oracle import recombination_check


@dataclass
class CheckResult:
    name: str
    ok: bool
    detail: str = ""


def check_ledger() -> CheckResult:
    problems = ledger_discrepancies()
    if problems:
        return CheckResult("ledger", False, problems[0])
    return CheckResult("ledger", True, f"{len(LEDGER_ROWS)} rows, 3 columns each")


SHORTHAND_IDENTITIES = (
    ("alpha - delta = beta", ("alpha", "delta", "beta"), 1),
    ("gamma - zeta = -epsilon", ("gamma", "zeta", "epsilon"), -1),
    ("eta - theta = -iota", ("eta", "theta", "iota"), -1),
    ("kappa - mu = -epsilon", ("kappa", "mu", "epsilon"), -1),
    ("lambda - nu = beta", ("lambda", "nu", "beta"), 1),
    ("xi - pi = -iota", ("xi", "pi", "iota"), -1),
)


def check_shorthand_identities() -> list[CheckResult]:
    out = []
    for name, (first, second, third), sign in SHORTHAND_IDENTITIES:
        residue = greek_poly(first) - greek_poly(second) - sign * greek_poly(third)
        detail = "" if residue.is_zero() else f"residue {residue.to_str()}"
        out.append(CheckResult(f"identity {name}", residue.is_zero(), detail))
    return out


# Each case pins one generic element to a basis vector. Expected data:
# shorthand values after substitution, then the difference grouped by the
# monomials in the surviving scalars.
SPECIALIZATION_CASES = (
    (
        "a=1, b=c=0",
        {"a": 1, "b": 0, "c": 0},
        {"alpha": "vw", "delta": "vw"},
        {
            "v^2": {"A^2": "1", "A": "-ij"},
            "w^2": {"B^2": "1", "B": "-ik"},
            "uv": {"Ae": "i", "eC": "-i"},
            "uw": {"Be": "i", "eE": "-i"},
            "vw": {"AB": "1", "BA": "1", "eD": "-i", "eF": "-i"},
        },
    ),
    (
        "b=1, a=c=0",
        {"b": 1, "a": 0, "c": 0},
        {"kappa": "uw", "mu": "uw"},
        {
            "u^2": {"C^2": "1", "C": "-ij"},
            "w^2": {"D^2": "1", "D": "-jk"},
            "uv": {"Cf": "j", "fA": "-j"},
            "vw": {"Df": "j", "fF": "-j"},
            "uw": {"CD": "1", "DC": "1", "fB": "-j", "fE": "-j"},
        },
    ),
    (
        "c=1, a=b=0",
        {"c": 1, "a": 0, "b": 0},
        {"xi": "uv", "pi": "uv"},
        {
            "u^2": {"E^2": "1", "E": "-ik"},
            "v^2": {"F^2": "1", "F": "-jk"},
            "uw": {"Eg": "k", "gB": "-k"},
            "vw": {"Fg": "k", "gD": "-k"},
            "uv": {"EF": "1", "FE": "1", "gA": "-k", "gC": "-k"},
        },
    ),
    (
        "u=1, v=w=0",
        {"u": 1, "v": 0, "w": 0},
        {"lambda": "bc", "nu": "bc"},
        {
            "b^2": {"C^2": "1", "C": "-ij"},
            "c^2": {"E^2": "1", "E": "-ik"},
            "ab": {"eC": "i", "Ae": "-i"},
            "ac": {"eE": "i", "Be": "-i"},
            "bc": {"CE": "1", "EC": "1", "De": "-i", "Fe": "-i"},
        },
    ),
    (
        "v=1, u=w=0",
        {"v": 1, "u": 0, "w": 0},
        {"gamma": "ac", "zeta": "ac"},
        {
            "a^2": {"A^2": "1", "A": "-ij"},
            "c^2": {"F^2": "1", "F": "-jk"},
            "ab": {"fA": "j", "Cf": "-j"},
            "bc": {"fF": "j", "Df": "-j"},
            "ac": {"AF": "1", "FA": "1", "Bf": "-j", "Ef": "-j"},
        },
    ),
    (
        "w=1, u=v=0",
        {"w": 1, "u": 0, "v": 0},
        {"eta": "ab", "theta": "ab"},
        {
            "a^2": {"B^2": "1", "B": "-ik"},
            "b^2": {"D^2": "1", "D": "-jk"},
            "ac": {"gB": "k", "Eg": "-k"},
            "bc": {"gD": "k", "Fg": "-k"},
            "ab": {"BD": "1", "DB": "1", "Ag": "-k", "Cg": "-k"},
        },
    ),
)


def _single_monomial(text: str) -> tuple:
    poly = parse_poly(text)
    if len(poly.terms) != 1:
        raise ValueError(f"{text!r} is not a single monomial")
    (mono,) = poly.terms
    return mono[:6]


def check_specializations() -> list[CheckResult]:
    out = []
    for label, bindings, shorthand_values, expected_groups in SPECIALIZATION_CASES:
        problems = []
        for name in GREEK_NAMES:
            want = parse_poly(shorthand_values.get(name, "0"))
            got = greek_poly(name).specialize(bindings)
            if got != want:
                problems.append(
                    f"shorthand {name}: got {got.to_str()}, expected {want.to_str()}"
                )
        grouped = group_by_scalar_monomials(
            specialize(difference_expansion(), bindings)
        )
        expected = {
            _single_monomial(mono_text): {
                FormalWord.parse(w): parse_poly(text) for w, text in bucket.items()
            }
            for mono_text, bucket in expected_groups.items()
        }
        if set(grouped) != set(expected):
            problems.append(
                f"monomial groups differ: got {sorted(grouped)}, expected {sorted(expected)}"
            )
        else:
            for mono, bucket in expected.items():
                if grouped[mono] != bucket:
                    got = {str(w): p.to_str() for w, p in grouped[mono].items()}
                    want = {str(w): p.to_str() for w, p in bucket.items()}
                    problems.append(f"group {mono}: got {got}, expected {want}")
        out.append(
            CheckResult(
                f"specialization {label}",
                not problems,
                problems[0] if problems else "",
            )
        )
    return out


def _random_table(desc: FieldDescriptor, rng: random.Random) -> CurledTable:
    bits = CurledType(rng.randrange(2), rng.randrange(2), rng.randrange(2))
    if desc.is_prime_field:
        coords = [rng.randrange(desc.p) for _ in range(18)]
    else:
        coords = [rng.randrange(-4, 5) for _ in range(18)]
    return CurledTable.from_coords(desc, bits, coords)


def _random_scalars(desc: FieldDescriptor, rng: random.Random) -> dict:
    if desc.is_prime_field:
        return {name: desc.from_int(rng.randrange(desc.p)) for name in "abcuvw"}
    return {name: desc.from_int(rng.randrange(-5, 6)) for name in "abcuvw"}


def check_consistency(samples: int = 100, seed: int = 20240601) -> CheckResult:
    """eval_formal of the difference equals the direct algebra computation."""
    rng = random.Random(seed)
    diff = difference_expansion()
    for desc in (GF(3), RATIONALS):
        for _ in range(samples):
            table = _random_table(desc, rng)
            scalars = _random_scalars(desc, rng)
            x = _element_from(scalars, "abc")
            y = _element_from(scalars, "uvw")
            via_formal = eval_formal(diff, table, scalars)
            xy = product(x, y, table)
            direct = square(xy, table) - product(square(x, table), square(y, table), table)
            if via_formal != direct:
                return CheckResult(
                    "consistency",
                    False,
                    f"{desc!r} table {table!r} scalars {scalars}",
                )
    return CheckResult("consistency", True, f"{samples} samples per field")


def _element_from(scalars: dict, names: str):
    from .algebra import Element

    return Element(tuple(scalars[name] for name in names))


def check_recombination() -> list[CheckResult]:
    out = []
    for ctype in ALL_TYPES:
        checked, bad, ids = recombination_check(GF(2), ctype)
        detail = f"{checked} qualifying tables"
        if bad:
            detail = f"{bad} of {checked} tables disagree, e.g. index {ids[0]}"
        out.append(CheckResult(f"recombination type {tuple(ctype)}", bad == 0, detail))
    return out


def run_all(consistency_samples: int = 100) -> list[CheckResult]:
    results = [check_ledger()]
    results.extend(check_shorthand_identities())
    results.extend(check_specializations())
    results.append(check_consistency(samples=consistency_samples))
    results.extend(check_recombination())
    return results
