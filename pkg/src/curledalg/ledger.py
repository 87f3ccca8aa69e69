"""Frozen reference table of expansion coefficients.

For every formal word that can occur in (xy)^2, x^2y^2 or their difference,
the expected coefficient of that word in each of the three expansions. The
self-check suite recomputes the expansions from scratch and flags any row
that disagrees; the difference column is additionally required to equal the
first column minus the second, so a transcription slip in any one column is
caught.
"""

from __future__ import annotations

import functools

from .formal import (
    FormalVector,
    FormalWord,
    difference_expansion,
    parse_poly,
    product_of_squares_expansion,
    squared_product_expansion,
)

# (word, coefficient in (xy)^2, in x^2y^2, in the difference)
LEDGER_ROWS = (
    ("e", "a^2u^2i", "a^2u^2i", "0"),
    ("f", "b^2v^2j", "b^2v^2j", "0"),
    ("g", "c^2w^2k", "c^2w^2k", "0"),
    ("A", "abuvij", "a^2v^2ij", "av(bu-av)ij"),
    ("B", "acuwik", "a^2w^2ik", "aw(cu-aw)ik"),
    ("C", "abuvij", "b^2u^2ij", "bu(av-bu)ij"),
    ("D", "bcvwjk", "b^2w^2jk", "bw(cv-bw)jk"),
    ("E", "acuwik", "c^2u^2ik", "cu(aw-cu)ik"),
    ("F", "bcvwjk", "c^2v^2jk", "cv(bw-cv)jk"),
    ("eA", "a^2uvi", "a^2uvi", "0"),
    ("eB", "a^2uwi", "a^2uwi", "0"),
    ("eC", "abu^2i", "a^2uvi", "au(bu-av)i"),
    ("eD", "abuwi", "a^2vwi", "aw(bu-av)i"),
    ("eE", "acu^2i", "a^2uwi", "au(cu-aw)i"),
    ("eF", "acuvi", "a^2vwi", "av(cu-aw)i"),
    ("fA", "abv^2j", "b^2uvj", "bv(av-bu)j"),
    ("fB", "abvwj", "b^2uwj", "bw(av-bu)j"),
    ("fC", "b^2uvj", "b^2uvj", "0"),
    ("fD", "b^2vwj", "b^2vwj", "0"),
    ("fE", "bcuvj", "b^2uwj", "bu(cv-bw)j"),
    ("fF", "bcv^2j", "b^2vwj", "bv(cv-bw)j"),
    ("gA", "acvwk", "c^2uvk", "cv(aw-cu)k"),
    ("gB", "acw^2k", "c^2uwk", "cw(aw-cu)k"),
    ("gC", "bcuwk", "c^2uvk", "cu(bw-cv)k"),
    ("gD", "bcw^2k", "c^2vwk", "cw(bw-cv)k"),
    ("gE", "c^2uwk", "c^2uwk", "0"),
    ("gF", "c^2vwk", "c^2vwk", "0"),
    ("Ae", "a^2uvi", "abu^2i", "au(av-bu)i"),
    ("Be", "a^2uwi", "acu^2i", "au(aw-cu)i"),
    ("Ce", "abu^2i", "abu^2i", "0"),
    ("De", "abuwi", "bcu^2i", "bu(aw-cu)i"),
    ("Ee", "acu^2i", "acu^2i", "0"),
    ("Fe", "acuvi", "bcu^2i", "cu(av-bu)i"),
    ("Af", "abv^2j", "abv^2j", "0"),
    ("Bf", "abvwj", "acv^2j", "av(bw-cv)j"),
    ("Cf", "b^2uvj", "abv^2j", "bv(bu-av)j"),
    ("Df", "b^2vwj", "bcv^2j", "bv(bw-cv)j"),
    ("Ef", "bcuvj", "acv^2j", "cv(bu-av)j"),
    ("Ff", "bcv^2j", "bcv^2j", "0"),
    ("Ag", "acvwk", "abw^2k", "aw(cv-bw)k"),
    ("Bg", "acw^2k", "acw^2k", "0"),
    ("Cg", "bcuwk", "abw^2k", "bw(cu-aw)k"),
    ("Dg", "bcw^2k", "bcw^2k", "0"),
    ("Eg", "c^2uwk", "acw^2k", "cw(cu-aw)k"),
    ("Fg", "c^2vwk", "bcw^2k", "cw(cv-bw)k"),
    ("A^2", "a^2v^2", "abuv", "av(av-bu)"),
    ("B^2", "a^2w^2", "acuw", "aw(aw-cu)"),
    ("C^2", "b^2u^2", "abuv", "bu(bu-av)"),
    ("D^2", "b^2w^2", "bcvw", "bw(bw-cv)"),
    ("E^2", "c^2u^2", "acuw", "cu(cu-aw)"),
    ("F^2", "c^2v^2", "bcvw", "cv(cv-bw)"),
    ("AB", "a^2vw", "abuw", "aw(av-bu)"),
    ("AC", "abuv", "abuv", "0"),
    ("AD", "abvw", "abvw", "0"),
    ("AE", "acuv", "abuw", "au(cv-bw)"),
    ("AF", "acv^2", "abvw", "av(cv-bw)"),
    ("BA", "a^2vw", "acuv", "av(aw-cu)"),
    ("CA", "abuv", "abuv", "0"),
    ("DA", "abvw", "bcuv", "bv(aw-cu)"),
    ("EA", "acuv", "acuv", "0"),
    ("FA", "acv^2", "bcuv", "cv(av-bu)"),
    ("BC", "abuw", "acuv", "au(bw-cv)"),
    ("BD", "abw^2", "acvw", "aw(bw-cv)"),
    ("BE", "acuw", "acuw", "0"),
    ("BF", "acvw", "acvw", "0"),
    ("CB", "abuw", "abuw", "0"),
    ("DB", "abw^2", "bcuw", "bw(aw-cu)"),
    ("EB", "acuw", "acuw", "0"),
    ("FB", "acvw", "bcuw", "cw(av-bu)"),
    ("CD", "b^2uw", "abvw", "bw(bu-av)"),
    ("CE", "bcu^2", "abuw", "bu(cu-aw)"),
    ("CF", "bcuv", "abvw", "bv(cu-aw)"),
    ("DC", "b^2uw", "bcuv", "bu(bw-cv)"),
    ("EC", "bcu^2", "acuv", "cu(bu-av)"),
    ("FC", "bcuv", "bcuv", "0"),
    ("DE", "bcuw", "bcuw", "0"),
    ("DF", "bcvw", "bcvw", "0"),
    ("ED", "bcuw", "acvw", "cw(bu-av)"),
    ("FD", "bcvw", "bcvw", "0"),
    ("EF", "c^2uv", "acvw", "cv(cu-aw)"),
    ("FE", "c^2uv", "bcuw", "cu(cv-bw)"),
)

LEDGER_WORD_ORDER = tuple(row[0] for row in LEDGER_ROWS)


@functools.lru_cache(maxsize=None)
def reference_vectors() -> tuple[FormalVector, FormalVector, FormalVector]:
    """The three reference expansions, assembled from the frozen rows."""
    cols = ({}, {}, {})
    for word_str, *polys in LEDGER_ROWS:
        word = FormalWord.parse(word_str)
        for col, text in zip(cols, polys):
            p = parse_poly(text)
            if not p.is_zero():
                col[word] = p
    return tuple(FormalVector(col) for col in cols)


def computed_vectors() -> tuple[FormalVector, FormalVector, FormalVector]:
    """The same three expansions, computed from scratch by the engine."""
    return (
        squared_product_expansion(),
        product_of_squares_expansion(),
        difference_expansion(),
    )


def compare_row(word_str: str):
    """Per-column (computed, expected, match) triples for one ledger word."""
    idx = LEDGER_WORD_ORDER.index(word_str)
    word = FormalWord.parse(word_str)
    expected = [parse_poly(text) for text in LEDGER_ROWS[idx][1:]]
    computed = [v.coefficient(word) for v in computed_vectors()]
    return [(c, e, c == e) for c, e in zip(computed, expected)]


def ledger_discrepancies() -> list[str]:
    """Human-readable descriptions of every reference-vs-computed mismatch."""
    problems = []
    computed = computed_vectors()
    reference = reference_vectors()
    names = ("(xy)^2", "x^2y^2", "difference")
    for word_str, *polys in LEDGER_ROWS:
        word = FormalWord.parse(word_str)
        for name, vec, text in zip(names, computed, polys):
            got = vec.coefficient(word)
            want = parse_poly(text)
            if got != want:
                problems.append(
                    f"{word_str} [{name}]: computed {got.to_str()}, reference {want.to_str()}"
                )
    # completeness in both directions: the rows cover every computed word
    covered = {FormalWord.parse(w) for w in LEDGER_WORD_ORDER}
    for name, vec in zip(names, computed):
        extra = vec.words() - covered
        if extra:
            problems.append(f"{name} has words outside the ledger: {sorted(map(str, extra))}")
    # internal consistency of the reference itself
    for word_str, xy2, sq, diff in LEDGER_ROWS:
        if parse_poly(xy2) - parse_poly(sq) != parse_poly(diff):
            problems.append(f"{word_str}: reference difference column is inconsistent")
    return problems
