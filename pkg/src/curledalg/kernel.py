"""Vectorized evaluation of table deciders over blocks of GF(p) tables.

A block is an int64 array of shape (18, n): column t holds the parameter
coordinates (A_e, A_f, A_g, B_e, ..., F_g) of table t. All deciders are
evaluated with elementwise numpy arithmetic; coordinates stay reduced
mod p between products.

The brute-force deciders only visit one representative per projective ray:
scaling x by a nonzero field element scales x^2 by its square, so curledness,
zeropotency and the squared-product difference all vanish on a ray exactly
when they vanish on its representative, and they vanish trivially at zero.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .conditions import CONDITION_10, THEOREM_EQUATIONS
from .formal import FormalWord, difference_monomial_map

N_COORDS = 18
_PARAM_INDEX = {"A": 0, "B": 1, "C": 2, "D": 3, "E": 4, "F": 5}
_BASIS_INDEX = {"e": 0, "f": 1, "g": 2}

SAMPLER_VERSION = "splitmix64-v1"
_GOLD = np.uint64(0x9E3779B97F4A7C15)
_MIX1 = np.uint64(0xBF58476D1CE4E5B9)
_MIX2 = np.uint64(0x94D049BB133111EB)
_RETRY_STRIDE = np.uint64(2**48)


def decode_block(q: int, lo: int, hi: int) -> np.ndarray:
    """Coordinates of tables lo..hi-1, digit m of the base-q index in row m."""
    idx = np.arange(lo, hi, dtype=np.int64)
    out = np.empty((N_COORDS, hi - lo), dtype=np.int64)
    for m in range(N_COORDS):
        out[m] = idx % q
        idx = idx // q
    return out


def encode_columns(q: int, coords: np.ndarray) -> np.ndarray:
    """Table indices of a block: the base-q value of each column."""
    ids = np.zeros(coords.shape[1], dtype=np.int64)
    place = 1
    for m in range(N_COORDS):
        ids += coords[m] * place
        place *= q
    return ids


def _mix64(z: np.ndarray) -> np.ndarray:
    z = (z ^ (z >> np.uint64(30))) * _MIX1
    z = (z ^ (z >> np.uint64(27))) * _MIX2
    return z ^ (z >> np.uint64(31))


def _draws(seed: int, counters: np.ndarray) -> np.ndarray:
    base = np.uint64(seed & (2**64 - 1))
    return _mix64(base + (counters + np.uint64(1)) * _GOLD)


def sample_coords(q: int, n: int, seed: int) -> np.ndarray:
    """Seeded i.i.d. uniform coordinates for n tables (sampler splitmix64-v1).

    Draw d of the stream is mix64(seed + (d+1) * golden) where mix64 is the
    splitmix64 finalizer; coordinate m of sample t consumes draw t*18 + m.
    Values outside the largest multiple of q are redrawn at counter offsets
    of 2^48 per retry round, so the result is reproducible everywhere.
    """
    counters = np.arange(n * N_COORDS, dtype=np.uint64)
    vals = _draws(seed, counters)
    coords = (vals % np.uint64(q)).astype(np.int64)
    rem = (2**64) % q
    if rem:
        limit = np.uint64(2**64 - rem)
        rejected = np.flatnonzero(vals >= limit)
        retry = 1
        while rejected.size:
            if retry > 64:
                raise RuntimeError("sampler retry budget exhausted")
            vals = _draws(seed, counters[rejected] + np.uint64(retry) * _RETRY_STRIDE)
            accept = vals < limit
            coords[rejected[accept]] = (vals[accept] % np.uint64(q)).astype(np.int64)
            rejected = rejected[~accept]
            retry += 1
    return coords.reshape(n, N_COORDS).T.copy()


def projective_reps(p: int) -> list[tuple[int, int, int]]:
    """One representative per nonzero ray: first nonzero coordinate equals 1."""
    reps = [(1, b, c) for b in range(p) for c in range(p)]
    reps += [(0, 1, c) for c in range(p)]
    reps.append((0, 0, 1))
    return reps


def _is_zero_scalar(v) -> bool:
    return isinstance(v, int) and v == 0


def vec_product(x, y, coords: np.ndarray, bits, p: int):
    """Tablewise bilinear product of coordinate triples (arrays or ints)."""
    a, b, c = x
    u, v, w = y
    re = a * u * bits[0]
    rf = b * v * bits[1]
    rg = c * w * bits[2]
    for s, base in (
        (a * v, 0),
        (a * w, 3),
        (b * u, 6),
        (b * w, 9),
        (c * u, 12),
        (c * v, 15),
    ):
        if _is_zero_scalar(s):
            continue
        re = re + s * coords[base]
        rf = rf + s * coords[base + 1]
        rg = rg + s * coords[base + 2]
    return (re % p, rf % p, rg % p)


def vec_square(x, coords: np.ndarray, bits, p: int):
    return vec_product(x, x, coords, bits, p)


def _take3(triple, keep):
    return tuple(v[keep] if isinstance(v, np.ndarray) else v for v in triple)


def _eq3(lhs, rhs, p: int):
    return (
        ((lhs[0] - rhs[0]) % p == 0)
        & ((lhs[1] - rhs[1]) % p == 0)
        & ((lhs[2] - rhs[2]) % p == 0)
    )


def ec_bruteforce_mask(p: int, bits, coords: np.ndarray) -> np.ndarray:
    """Definitional endo-commutativity over all pairs, by projective rays.

    Columns that have already failed are periodically compacted away.
    """
    n = coords.shape[1]
    result = np.zeros(n, dtype=bool)
    reps = projective_reps(p)
    positions = np.arange(n)
    cur = coords
    alive = np.ones(n, dtype=bool)
    squares = [vec_square(r, cur, bits, p) for r in reps]
    pair_no = 0
    for xi in range(len(reps)):
        for yi in range(len(reps)):
            xy = vec_product(reps[xi], reps[yi], cur, bits, p)
            lhs = vec_product(xy, xy, cur, bits, p)
            rhs = vec_product(squares[xi], squares[yi], cur, bits, p)
            alive = alive & _eq3(lhs, rhs, p)
            pair_no += 1
            if pair_no % 24 == 0 and alive.size and alive.mean() < 0.5:
                keep = np.flatnonzero(alive)
                if keep.size == 0:
                    return result
                positions = positions[keep]
                cur = np.ascontiguousarray(cur[:, keep])
                squares = [_take3(s, keep) for s in squares]
                alive = np.ones(keep.size, dtype=bool)
    result[positions[alive]] = True
    return result


def curled_and_zeropotent_masks(p: int, bits, coords: np.ndarray):
    """Brute-force curledness and zeropotency in one sweep over the rays."""
    n = coords.shape[1]
    curled = np.ones(n, dtype=bool)
    zeropotent = np.ones(n, dtype=bool)
    for rep in projective_reps(p):
        x0, x1, x2 = rep
        s0, s1, s2 = vec_square(rep, coords, bits, p)
        zeropotent = zeropotent & ((s0 % p == 0) & (s1 % p == 0) & (s2 % p == 0))
        curled = curled & (
            ((x0 * s1 - x1 * s0) % p == 0)
            & ((x0 * s2 - x2 * s0) % p == 0)
            & ((x1 * s2 - x2 * s1) % p == 0)
        )
    return curled, zeropotent


def zeropotent_condition_mask(p: int, bits, coords: np.ndarray) -> np.ndarray:
    n = coords.shape[1]
    if tuple(bits) != (0, 0, 0):
        return np.zeros(n, dtype=bool)
    mask = np.ones(n, dtype=bool)
    for base_a, base_b in ((0, 6), (3, 12), (9, 15)):
        for t in range(3):
            mask &= (coords[base_a + t] + coords[base_b + t]) % p == 0
    return mask


class WordCache:
    """Lazily evaluated formal-word values over a block of tables."""

    def __init__(self, p: int, bits, coords: np.ndarray):
        self.p = p
        self.bits = tuple(bits)
        self.coords = coords
        self._values: dict = {}

    def _single(self, sym: str):
        if sym in _BASIS_INDEX:
            idx = _BASIS_INDEX[sym]
            return tuple(1 if t == idx else 0 for t in range(3))
        base = 3 * _PARAM_INDEX[sym]
        return (self.coords[base], self.coords[base + 1], self.coords[base + 2])

    def value(self, word_str: str):
        cached = self._values.get(word_str)
        if cached is not None:
            return cached
        word = FormalWord.parse(word_str)
        if word.right is None:
            out = self._single(word.left)
        else:
            out = vec_product(
                self._single(word.left),
                self._single(word.right),
                self.coords,
                self.bits,
                self.p,
            )
        self._values[word_str] = out
        return out


def _combine(entries, cache: WordCache, p: int):
    """Sum of coeff * word value over (coeff, word string) pairs, mod p."""
    acc = [0, 0, 0]
    for coeff, word_str in entries:
        wv = cache.value(word_str)
        for t in range(3):
            if not _is_zero_scalar(wv[t]):
                acc[t] = acc[t] + coeff * wv[t]
    return tuple(v % p for v in acc)


def equations_mask(equations, cache: WordCache) -> np.ndarray:
    """Conjunction of labeled lhs = rhs equations over a block."""
    p = cache.p
    bits = dict(zip("ijk", cache.bits))
    n = cache.coords.shape[1]
    mask = np.ones(n, dtype=bool)
    for _label, lhs_terms, rhs_terms in equations:
        sides = []
        for terms in (lhs_terms, rhs_terms):
            live = [
                (coeff, word)
                for coeff, bit_str, word in terms
                if all(bits[ch] for ch in bit_str)
            ]
            sides.append(_combine(live, cache, p))
        mask = mask & _eq3(sides[0], sides[1], p)
    return mask


def ec_theorem_mask(cache: WordCache) -> np.ndarray:
    return equations_mask(THEOREM_EQUATIONS, cache)


def condition_10_mask(cache: WordCache) -> np.ndarray:
    return equations_mask(CONDITION_10, cache)


def ec_polynomial_mask(cache: WordCache) -> np.ndarray:
    """Identity-vanishing of the difference expansion, monomial by monomial."""
    p = cache.p
    n = cache.coords.shape[1]
    mask = np.ones(n, dtype=bool)
    for _mono, entries in difference_monomial_map(cache.bits):
        acc = _combine(entries, cache, p)
        mask = mask & ((acc[0] % p == 0) & (acc[1] % p == 0) & (acc[2] % p == 0))
    return mask


def curled_symbolic_mask(p: int, bits, coords: np.ndarray) -> np.ndarray:
    """Vanishing of the minor polynomials of [x; x^2] with symbolic x."""
    pair_sums = {
        "AC": (coords[0:3] + coords[6:9]) % p,
        "BE": (coords[3:6] + coords[12:15]) % p,
        "DF": (coords[9:12] + coords[15:18]) % p,
    }
    diag_monos = ((2, 0, 0), (0, 2, 0), (0, 0, 2))
    square_polys = []
    for t in range(3):
        poly = {}
        if bits[t]:
            poly[diag_monos[t]] = bits[t]
        poly[(1, 1, 0)] = pair_sums["AC"][t]
        poly[(1, 0, 1)] = pair_sums["BE"][t]
        poly[(0, 1, 1)] = pair_sums["DF"][t]
        square_polys.append(poly)

    def shifted(poly, axis):
        return {
            tuple(m[t] + (1 if t == axis else 0) for t in range(3)): v
            for m, v in poly.items()
        }

    def minor(first, second):
        merged = dict(shifted(square_polys[second], first))
        for m, v in shifted(square_polys[first], second).items():
            merged[m] = merged.get(m, 0) - v
        return merged

    mask = np.ones(coords.shape[1], dtype=bool)
    for first, second in ((0, 1), (0, 2), (1, 2)):
        for v in minor(first, second).values():
            mask = mask & (v % p == 0)
    return mask


def decider_masks(p: int, bits, coords: np.ndarray, include_symbolic: bool = False) -> dict:
    """All per-table decider verdicts for a block."""
    cache = WordCache(p, bits, coords)
    curled, zp_brute = curled_and_zeropotent_masks(p, bits, coords)
    masks = {
        "curled": curled,
        "ec_bruteforce": ec_bruteforce_mask(p, bits, coords),
        "ec_theorem": ec_theorem_mask(cache),
        "ec_polynomial": ec_polynomial_mask(cache),
        "zeropotent_bruteforce": zp_brute,
        "zeropotent_condition": zeropotent_condition_mask(p, bits, coords),
    }
    if include_symbolic:
        masks["curled_symbolic"] = curled_symbolic_mask(p, bits, coords)
    return masks


@dataclass
class ChunkSummary:
    """Associatively mergeable per-chunk outcome of a differential sweep."""

    visited: int
    counts_all: dict
    counts_curled: dict
    mm_all_ids: list
    mm_all_total: int
    mm_curled_ids: list
    mm_curled_total: int

    @classmethod
    def empty(cls):
        zero = {
            "tables": 0,
            "curled": 0,
            "ec_bruteforce": 0,
            "ec_theorem": 0,
            "ec_polynomial": 0,
            "zeropotent_bruteforce": 0,
            "zeropotent_condition": 0,
        }
        return cls(0, dict(zero), dict(zero), [], 0, [], 0)

    def merge(self, other: "ChunkSummary", cap: int) -> "ChunkSummary":
        counts_all = {k: v + other.counts_all[k] for k, v in self.counts_all.items()}
        counts_curled = {
            k: v + other.counts_curled[k] for k, v in self.counts_curled.items()
        }
        return ChunkSummary(
            self.visited + other.visited,
            counts_all,
            counts_curled,
            (self.mm_all_ids + other.mm_all_ids)[:cap],
            self.mm_all_total + other.mm_all_total,
            (self.mm_curled_ids + other.mm_curled_ids)[:cap],
            self.mm_curled_total + other.mm_curled_total,
        )


def summarize_block(
    p: int, bits, coords: np.ndarray, ids: np.ndarray, cap: int
) -> ChunkSummary:
    """Run every decider on a block and fold the verdicts into counts."""
    masks = decider_masks(p, bits, coords)
    mismatch = (
        (masks["ec_bruteforce"] != masks["ec_theorem"])
        | (masks["ec_bruteforce"] != masks["ec_polynomial"])
        | (masks["zeropotent_bruteforce"] != masks["zeropotent_condition"])
    )
    curled = masks["curled"]

    def counts(selector) -> dict:
        out = {"tables": int(selector.sum()), "curled": int((curled & selector).sum())}
        for key in (
            "ec_bruteforce",
            "ec_theorem",
            "ec_polynomial",
            "zeropotent_bruteforce",
            "zeropotent_condition",
        ):
            out[key] = int((masks[key] & selector).sum())
        return out

    everything = np.ones(coords.shape[1], dtype=bool)
    mm_all = ids[mismatch]
    mm_curled = ids[mismatch & curled]
    return ChunkSummary(
        visited=coords.shape[1],
        counts_all=counts(everything),
        counts_curled=counts(curled),
        mm_all_ids=mm_all[:cap].tolist(),
        mm_all_total=int(mm_all.size),
        mm_curled_ids=mm_curled[:cap].tolist(),
        mm_curled_total=int(mm_curled.size),
    )


def recombination_block(
    p: int,
    bits,
    coords: np.ndarray,
    ids: np.ndarray,
    assignment_tables,
    cap: int,
):
    """Compare two fully specialized word combinations on condition-10 tables.

    assignment_tables is a sequence of (lhs entries, rhs entries) pairs, one
    per scalar assignment, each side a tuple of (integer coeff, word string).
    Returns (tables checked, mismatch count, sample mismatching ids).
    """
    cache = WordCache(p, bits, coords)
    eligible = condition_10_mask(cache)
    idx = np.flatnonzero(eligible)
    if idx.size == 0:
        return 0, 0, []
    sub = np.ascontiguousarray(coords[:, idx])
    sub_ids = ids[idx]
    sub_cache = WordCache(p, bits, sub)
    bad = np.zeros(idx.size, dtype=bool)
    for lhs_entries, rhs_entries in assignment_tables:
        lhs = _combine(lhs_entries, sub_cache, p)
        rhs = _combine(rhs_entries, sub_cache, p)
        bad = np.logical_or(bad, np.logical_not(_eq3(lhs, rhs, p)))
    return int(idx.size), int(bad.sum()), sub_ids[bad][:cap].tolist()
