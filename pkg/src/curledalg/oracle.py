"""Ground-truth deciders and the differential verification harness.

Three independent routes decide endo-commutativity of a table:

* brute force, straight from the definition, over every ordered pair;
* the 21-equation characterization from the conditions module;
* identity vanishing of the symbolic difference expansion.

differential_test runs all of them (plus both zeropotency deciders and the
curledness filter) over an exhaustive or seeded-random population of tables
and reports counts together with every disagreement. Enumeration is
partitioned into index ranges that are processed independently and merged
in order, so chunked and parallel runs reproduce the single-pass report
byte for byte.
"""

from __future__ import annotations

import itertools
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

import numpy as np

from . import kernel
from .algebra import (
    ALL_TYPES,
    CurledTable,
    CurledType,
    Element,
    all_elements,
    product,
    square,
)
from .conditions import is_ec_by_theorem, is_zeropotent_by_condition
from .field import FieldDescriptor, UnsupportedFieldError
from .formal import (
    SCALAR_VARS,
    difference_expansion,
    eval_to_polynomials,
    recombined_difference,
)

DEFAULT_TABLE_BUDGET = 1_000_000
BUDGET_ENV_VAR = "CAL_BUDGET_TABLES"
DEFAULT_CHUNK = 32768
DEFAULT_MISMATCH_CAP = 100
SCHEMA_VERSION = 1

POPULATIONS = ("all", "curled")


class BudgetExceededError(RuntimeError):
    """Raised when an exhaustive run would visit more tables than allowed."""


def table_budget() -> int:
    """Exhaustive-mode budget per run; override with CAL_BUDGET_TABLES."""
    raw = os.environ.get(BUDGET_ENV_VAR)
    if raw is None:
        return DEFAULT_TABLE_BUDGET
    try:
        value = int(raw)
    except ValueError as exc:
        raise BudgetExceededError(f"bad {BUDGET_ENV_VAR} value {raw!r}") from exc
    if value <= 0:
        raise BudgetExceededError(f"{BUDGET_ENV_VAR} must be positive")
    return value


@dataclass(frozen=True)
class TableId:
    """Coordinates of one table inside the enumeration of its type and field.

    The index is the base-q integer whose digit m (least significant first)
    is coordinate m of the fixed order (A_e, A_f, A_g, B_e, ..., F_g).
    """

    desc: FieldDescriptor
    ctype: CurledType
    index: int


def _require_prime(desc: FieldDescriptor):
    if not desc.is_prime_field:
        raise UnsupportedFieldError("table enumeration needs a finite prime field")


def table_space_size(desc: FieldDescriptor) -> int:
    _require_prime(desc)
    size = desc.p**kernel.N_COORDS
    if size > 2**63 - 1:
        raise OverflowError("table space exceeds the addressable index range")
    return size


def encode_table(table: CurledTable) -> TableId:
    _require_prime(table.desc)
    table_space_size(table.desc)
    index = 0
    place = 1
    for coord in table.coords():
        index += coord.value * place
        place *= table.desc.p
    return TableId(table.desc, table.ctype, index)


def decode_table(tid: TableId) -> CurledTable:
    size = table_space_size(tid.desc)
    if not 0 <= tid.index < size:
        raise ValueError(f"index {tid.index} out of range")
    digits = []
    rest = tid.index
    for _ in range(kernel.N_COORDS):
        rest, digit = divmod(rest, tid.desc.p)
        digits.append(digit)
    return CurledTable.from_coords(tid.desc, tid.ctype, digits)


def enumerate_tables(
    desc: FieldDescriptor,
    ctype: CurledType,
    visitor,
    start: int = 0,
    stop: int | None = None,
):
    """Call visitor(table) on every table of the type, in index order.

    Passing a [start, stop) window supports partitioned execution: disjoint
    windows cover each table exactly once.
    """
    size = table_space_size(desc)
    if stop is None:
        stop = size
    if not 0 <= start <= stop <= size:
        raise ValueError(f"bad enumeration window [{start}, {stop})")
    small = [desc.from_int(r) for r in range(desc.p)]
    p = desc.p
    for index in range(start, stop):
        rest = index
        els = []
        for _ in range(6):
            rest, d0 = divmod(rest, p)
            rest, d1 = divmod(rest, p)
            rest, d2 = divmod(rest, p)
            els.append(Element((small[d0], small[d1], small[d2])))
        visitor(CurledTable(desc, ctype, *els))


def is_ec_bruteforce(table: CurledTable) -> bool:
    """Definitional endo-commutativity: x^2 y^2 = (xy)^2 for every ordered pair."""
    if not table.desc.is_prime_field:
        raise UnsupportedFieldError("brute force needs a finite prime field")
    elements = list(all_elements(table.desc))
    squares = [square(x, table) for x in elements]
    for xi, x in enumerate(elements):
        sx = squares[xi]
        for yi, y in enumerate(elements):
            xy = product(x, y, table)
            if square(xy, table) != product(sx, squares[yi], table):
                return False
    return True


def is_ec_polynomial(table: CurledTable) -> bool:
    """Endo-commutativity as identity vanishing of the difference expansion."""
    return all(poly.is_zero() for poly in eval_to_polynomials(difference_expansion(), table))


def is_zeropotent_bruteforce(table: CurledTable) -> bool:
    """x^2 = 0 for every element of a finite prime field algebra."""
    if not table.desc.is_prime_field:
        raise UnsupportedFieldError("brute force needs a finite prime field")
    return all(square(x, table).is_zero() for x in all_elements(table.desc))


@dataclass(frozen=True)
class DifferentialReport:
    """Counts and disagreements from one differential sweep."""

    desc: FieldDescriptor
    ctype: CurledType
    population: str
    mode: str
    n: int | None
    seed: int | None
    counts: dict
    mismatch_ids: tuple
    mismatch_total: int

    def to_json_dict(self) -> dict:
        mode: dict = {"kind": self.mode}
        if self.mode == "sample":
            mode.update({"n": self.n, "seed": self.seed, "sampler": kernel.SAMPLER_VERSION})
        return {
            "schema_version": SCHEMA_VERSION,
            "field": {"kind": "prime", "p": self.desc.p},
            "type": list(self.ctype),
            "population": self.population,
            "mode": mode,
            "counts": dict(self.counts),
            "mismatches": {
                "total": self.mismatch_total,
                "ids": list(self.mismatch_ids),
            },
        }


def _chunk_windows(total: int, chunk_size: int):
    lo = 0
    while lo < total:
        hi = min(lo + chunk_size, total)
        yield lo, hi
        lo = hi


def _exhaustive_chunk(args):
    p, bits, lo, hi, cap = args
    coords = kernel.decode_block(p, lo, hi)
    ids = np.arange(lo, hi, dtype=np.int64)
    return kernel.summarize_block(p, bits, coords, ids, cap)


def _sampled_chunk(args):
    p, bits, coords, ids, cap = args
    return kernel.summarize_block(p, bits, coords, ids, cap)


def _run_chunks(jobs, worker, workers: int | None):
    if workers and workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(worker, jobs))
    return [worker(job) for job in jobs]


def _sweep(
    desc: FieldDescriptor,
    ctype: CurledType,
    mode: str,
    n: int | None,
    seed: int | None,
    workers: int | None,
    chunk_size: int,
    cap: int,
) -> kernel.ChunkSummary:
    _require_prime(desc)
    p = desc.p
    bits = tuple(ctype)
    # warm the formal-engine caches in this process so forked workers
    # inherit them instead of each re-expanding the difference
    from .formal import difference_monomial_map

    difference_monomial_map(bits)
    if mode == "exhaustive":
        total = table_space_size(desc)
        if total > table_budget():
            raise BudgetExceededError(
                f"{total} tables exceed the budget of {table_budget()};"
                f" raise {BUDGET_ENV_VAR} to allow this"
            )
        jobs = [(p, bits, lo, hi, cap) for lo, hi in _chunk_windows(total, chunk_size)]
        summaries = _run_chunks(jobs, _exhaustive_chunk, workers)
    elif mode == "sample":
        if n is None or n < 0:
            raise ValueError("sample mode needs n >= 0")
        if seed is None:
            raise ValueError("sample mode needs a seed")
        coords = kernel.sample_coords(p, n, seed)
        ids = kernel.encode_columns(p, coords)
        jobs = [
            (p, bits, coords[:, lo:hi].copy(), ids[lo:hi].copy(), cap)
            for lo, hi in _chunk_windows(n, chunk_size)
        ]
        summaries = _run_chunks(jobs, _sampled_chunk, workers)
    else:
        raise ValueError(f"unknown mode {mode!r}")
    merged = kernel.ChunkSummary.empty()
    for summary in summaries:
        merged = merged.merge(summary, cap)
    return merged


def differential_reports(
    desc: FieldDescriptor,
    ctype: CurledType,
    mode: str = "exhaustive",
    n: int | None = None,
    seed: int | None = None,
    workers: int | None = None,
    chunk_size: int = DEFAULT_CHUNK,
    mismatch_cap: int = DEFAULT_MISMATCH_CAP,
) -> dict:
    """One sweep, both populations: {"all": report, "curled": report}."""
    merged = _sweep(desc, ctype, mode, n, seed, workers, chunk_size, mismatch_cap)

    def build(population: str) -> DifferentialReport:
        if population == "all":
            counts, ids, total = merged.counts_all, merged.mm_all_ids, merged.mm_all_total
        else:
            counts, ids, total = (
                merged.counts_curled,
                merged.mm_curled_ids,
                merged.mm_curled_total,
            )
        return DifferentialReport(
            desc=desc,
            ctype=ctype,
            population=population,
            mode=mode,
            n=n if mode == "sample" else None,
            seed=seed if mode == "sample" else None,
            counts=dict(counts),
            mismatch_ids=tuple(ids),
            mismatch_total=total,
        )

    return {population: build(population) for population in POPULATIONS}


def differential_test(
    desc: FieldDescriptor,
    ctype: CurledType,
    mode: str = "exhaustive",
    n: int | None = None,
    seed: int | None = None,
    population: str = "all",
    workers: int | None = None,
    chunk_size: int = DEFAULT_CHUNK,
    mismatch_cap: int = DEFAULT_MISMATCH_CAP,
) -> DifferentialReport:
    """Differential sweep over one type; deterministic given (mode, n, seed)."""
    if population not in POPULATIONS:
        raise ValueError(f"unknown population {population!r}")
    return differential_reports(
        desc, ctype, mode, n, seed, workers, chunk_size, mismatch_cap
    )[population]


def classify_counts(
    desc: FieldDescriptor,
    mode: str = "exhaustive",
    n: int | None = None,
    seed: int | None = None,
    workers: int | None = None,
    chunk_size: int = DEFAULT_CHUNK,
) -> list[dict]:
    """Per-type summary rows over all eight types, population "all"."""
    rows = []
    for ctype in ALL_TYPES:
        report = differential_test(
            desc, ctype, mode, n, seed, workers=workers, chunk_size=chunk_size
        )
        row = {
            "field": desc.p,
            "type_i": ctype.i,
            "type_j": ctype.j,
            "type_k": ctype.k,
        }
        row.update(report.counts)
        row["mismatches"] = report.mismatch_total
        rows.append(row)
    return rows


def ec_bruteforce_batch(tables) -> list[bool]:
    """Brute-force endo-commutativity of many tables at once.

    Tables are grouped by field and type and pushed through the vectorized
    kernel; order of results matches the input order.
    """
    tables = list(tables)
    groups: dict = {}
    for pos, table in enumerate(tables):
        _require_prime(table.desc)
        groups.setdefault((table.desc.p, tuple(table.ctype)), []).append(pos)
    out = [False] * len(tables)
    for (p, bits), positions in groups.items():
        coords = np.array(
            [[coord.value for coord in tables[pos].coords()] for pos in positions],
            dtype=np.int64,
        ).T
        mask = kernel.ec_bruteforce_mask(p, bits, coords)
        for local, pos in enumerate(positions):
            out[pos] = bool(mask[local])
    return out


def _constant_entries(vector) -> tuple:
    entries = []
    for word, poly in vector.terms.items():
        if poly.is_zero():
            continue
        terms = poly.terms
        if set(terms) - {(0,) * 9}:
            raise ValueError("vector is not fully specialized")
        entries.append((terms[(0,) * 9], str(word)))
    return tuple(sorted(entries, key=lambda t: t[1]))


def recombination_assignment_tables(p: int, bits) -> list:
    """Specialized (difference, recombined difference) coefficient tables.

    One pair per scalar assignment (a, b, c, u, v, w) over GF(p); each side
    lists (integer coefficient, word) entries ready for block evaluation.
    """
    diff = difference_expansion()
    recombined = recombined_difference()
    bit_bindings = dict(zip("ijk", bits))
    tables = []
    for assignment in itertools.product(range(p), repeat=6):
        bindings = dict(zip(SCALAR_VARS, assignment))
        bindings.update(bit_bindings)
        tables.append(
            (
                _constant_entries(diff.specialize(bindings)),
                _constant_entries(recombined.specialize(bindings)),
            )
        )
    return tables


def recombination_check(
    desc: FieldDescriptor,
    ctype: CurledType,
    chunk_size: int = DEFAULT_CHUNK,
    mismatch_cap: int = DEFAULT_MISMATCH_CAP,
) -> tuple[int, int, list]:
    """Exhaustively compare the difference against its recombined form.

    Restricted to tables satisfying condition set 10, over every scalar
    assignment. Returns (tables checked, mismatching tables, sample ids).
    """
    _require_prime(desc)
    total = table_space_size(desc)
    if total > table_budget():
        raise BudgetExceededError(f"{total} tables exceed the budget")
    p = desc.p
    bits = tuple(ctype)
    assignment_tables = recombination_assignment_tables(p, bits)
    checked = 0
    bad = 0
    sample: list = []
    for lo, hi in _chunk_windows(total, chunk_size):
        coords = kernel.decode_block(p, lo, hi)
        ids = np.arange(lo, hi, dtype=np.int64)
        c, b, ids_bad = kernel.recombination_block(
            p, bits, coords, ids, assignment_tables, mismatch_cap
        )
        checked += c
        bad += b
        if len(sample) < mismatch_cap:
            sample.extend(ids_bad[: mismatch_cap - len(sample)])
    return checked, bad, sample
