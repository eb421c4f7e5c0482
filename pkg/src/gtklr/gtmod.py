"""Gelfand-Tsetlin side: canonical forms, weights, Verma words and tables."""
from __future__ import annotations

import heapq
from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Sequence

from .characters import BlockData, cached_block, DEFAULT_STRAND_LIMIT
from .errors import DomainError, ResourceError, StructuralError
from .qlaurent import LaurentPoly
from .words import (
    check_letters,
    check_vector,
    enumerate_words,
    essentially_same,
    format_word,
    gk_dimension,
    is_essential,
    is_realizable_singular,
    is_reduced,
    is_red_good,
    iws_predicate,
)

DEFAULT_CLASS_CAP = 5_000_000


# --- canonical moves --------------------------------------------------------------

def move_neighbors(word: Sequence[int], n: int) -> set:
    """Words one canonical move away from ``word`` (in either direction)."""
    w = tuple(word)
    out = set()
    L = len(w)
    for i in range(L - 1):
        a, b = w[i], w[i + 1]
        if abs(a - b) >= 2:
            out.add(w[:i] + (b, a) + w[i + 2:])
    for i in range(L - 2):
        a, b, c = w[i:i + 3]
        head, tail = w[:i], w[i + 3:]
        # (r, r-1, r) <-> (r, r, r-1), 2 <= r <= n-1
        if a == c and b == a - 1 and 2 <= a <= n - 1:
            out.add(head + (a, a, b) + tail)
        if a == b and c == a - 1 and 2 <= a <= n - 1:
            out.add(head + (a, c, a) + tail)
        # (r, r+1, r) <-> (r+1, r, r), 1 <= r <= n-1
        if a == c and b == a + 1 and 1 <= a <= n - 1:
            out.add(head + (b, a, a) + tail)
        if b == c and a == b + 1 and 1 <= b <= n - 1:
            out.add(head + (b, a, b) + tail)
    out.discard(w)
    return out


def canonical_class(word: Sequence[int], n: int, cap: int = DEFAULT_CLASS_CAP) -> set:
    """Every word reachable from ``word`` by canonical moves."""
    start = tuple(word)
    check_letters(start, n)
    seen = {start}
    todo = deque([start])
    while todo:
        for nb in move_neighbors(todo.popleft(), n):
            if nb not in seen:
                seen.add(nb)
                if len(seen) > cap:
                    raise ResourceError(f"canonical class exceeds {cap} words")
                todo.append(nb)
    return seen


def canonical_form(word: Sequence[int], n: int, cap: int = DEFAULT_CLASS_CAP,
                   verify: bool = False) -> tuple:
    """The red-good word equivalent to ``word`` under canonical moves.

    Best-first search, always expanding the lexicographically smallest word
    seen so far; the red-good representative is the lex-minimum of its class,
    so this usually stops long before the class is exhausted.  With
    ``verify`` the whole class is built and must contain exactly one red-good word.
    """
    start = tuple(word)
    check_letters(start, n)
    if verify:
        goods = [w for w in canonical_class(start, n, cap) if is_red_good(w, n)]
        if len(goods) != 1:
            raise StructuralError(
                f"class of {format_word(start, n)} holds {len(goods)} red-good words")
        return goods[0]
    seen = {start}
    heap = [start]
    while heap:
        w = heapq.heappop(heap)
        if is_red_good(w, n):
            return w
        for nb in move_neighbors(w, n):
            if nb not in seen:
                seen.add(nb)
                if len(seen) > cap:
                    raise ResourceError(f"canonical class exceeds {cap} words")
                heapq.heappush(heap, nb)
    raise StructuralError(f"class of {format_word(start, n)} contains no red-good word")


# --- Gelfand-Tsetlin patterns -----------------------------------------------------

CRITICAL = None  # returned by weight_to_word for critical weights


@dataclass(frozen=True)
class GTPattern:
    """Rows ``rows[i-1]`` hold the entries a_{i,1..v_i}."""
    rows: tuple

    @property
    def n(self) -> int:
        return len(self.rows)

    @property
    def v(self) -> tuple:
        return tuple(len(r) for r in self.rows)

    def dominant(self) -> "GTPattern":
        return GTPattern(tuple(tuple(sorted(r)) for r in self.rows))

    def is_integral(self) -> bool:
        return all(Fraction(x).denominator == 1 for r in self.rows for x in r)

    def is_critical(self) -> bool:
        return any(len(set(r)) < len(r) for r in self.rows)


def parse_pattern(text: str) -> GTPattern:
    """Parse ``"0,1,2;0,1;0"``: rows from i=n down to i=1, entries as ints or fractions."""
    try:
        rows = [tuple(Fraction(t.strip()) for t in part.split(",") if t.strip())
                for part in text.split(";")]
    except (ValueError, ZeroDivisionError):
        raise DomainError(f"cannot parse pattern {text!r}") from None
    return GTPattern(tuple(reversed(rows)))


def weight_to_word(p: GTPattern):
    """Word of an integral weight, or CRITICAL when a row repeats an entry.

    Sort Omega by value; equal values in different rows go larger row first.
    """
    if p.is_critical():
        return CRITICAL
    cells = [(x, -i, i) for i, row in enumerate(p.rows, start=1) for x in row]
    cells.sort()
    return tuple(i for _, _, i in cells)


def weight_to_words_by_coset(p: GTPattern) -> dict:
    """Split a weight by residue mod Z and return ``{residue: word}`` (CRITICAL if critical).

    Entries in different cosets are incomparable, so each coset contributes
    its own word; the content of the coset word is that coset's dimension vector.
    """
    if p.is_critical():
        return CRITICAL
    by_res: dict = {}
    for i, row in enumerate(p.rows, start=1):
        for x in row:
            x = Fraction(x)
            by_res.setdefault(x - (x.numerator // x.denominator), []).append((x, -i, i))
    return {res: tuple(i for _, _, i in sorted(cells)) for res, cells in sorted(by_res.items())}


def coset_vector(word: Sequence[int], n: int) -> tuple:
    return tuple(list(word).count(i) for i in range(1, n + 1))


# --- Verma modules ----------------------------------------------------------------

def _check_perm(sigma, n):
    if sorted(sigma) != list(range(1, n + 1)):
        raise DomainError(f"{tuple(sigma)} is not a permutation of 1..{n}")


def verma_word(sigma: Sequence[int], n: int) -> tuple:
    """Concatenate (n, n-1, ..., sigma(k)) for k = 1..n."""
    _check_perm(sigma, n)
    return tuple(x for s in sigma for x in range(n, s - 1, -1))


def is_semi_pattern(p: GTPattern, top: Sequence) -> bool:
    """Top row equals ``top`` (unsorted) and a_{ij} >= a_{i+1,j} throughout."""
    n = p.n
    if p.v != tuple(range(1, n + 1)) or len(top) != n:
        raise DomainError("semi-patterns need the gl_n shape")
    if tuple(p.rows[-1]) != tuple(top):
        return False
    return all(p.rows[i - 1][j] >= p.rows[i][j] for i in range(1, n) for j in range(i))


def semi_pattern_support(sigma: Sequence[int], chi: Sequence, bound: int) -> set:
    """Words of the non-critical semi-patterns with free entries in a window around chi.

    Row n is chi placed in the sigma-determined column order; lower entries
    range over [min(chi) - bound, max(chi) + bound].  ``chi`` should be
    increasing, as it is for the lowest weight of an antidominant Verma module;
    for other orders the words can leave the support of the Verma character.
    """
    n = len(chi)
    _check_perm(sigma, n)
    inv = {s: k for k, s in enumerate(sigma, start=1)}
    top = tuple(chi[inv[j] - 1] for j in range(1, n + 1))
    lo, hi = min(chi) - bound, max(chi) + bound
    out = set()

    def rows_below(upper):
        # all rows r with len(upper)-1 entries, r[j] >= upper[j]
        ranges = [range(max(lo, upper[j]), hi + 1) for j in range(len(upper) - 1)]
        return product(*ranges)

    def rec(acc):
        if len(acc[0]) == 1:
            w = weight_to_word(GTPattern(tuple(acc)).dominant())
            if w is not CRITICAL:
                out.add(w)
            return
        for r in rows_below(acc[0]):
            rec([tuple(r)] + acc)  # acc[0] is the lowest row so far

    rec([top])
    return out


# --- tables --------------------------------------------------------------------------

@dataclass(frozen=True)
class BlockSpec:
    v: tuple
    singular: tuple | None = None
    cosets: tuple | None = None


@dataclass
class BlockTable:
    v: tuple
    rows: list
    columns: list
    entries: list  # entries[row][col]: int, or LaurentPoly when graded
    boxes: dict  # row index -> column index
    gk_row: list
    iws_row: list | None
    singular: tuple | None = None

    @property
    def n(self) -> int:
        return len(self.v)


def simple_metadata(record, n: int) -> dict:
    support = list(record.character)
    ess = sorted((w for w in support if is_essential(w, n)), reverse=True)
    for w in ess[1:]:
        if not essentially_same(ess[0], w, n):
            raise StructuralError(
                f"L({format_word(record.good_word, n)}) has essentially different essential words")
    meta = {"gk": max(gk_dimension(w, n) for w in support), "essential_support": ess}
    if n in (3, 4):
        meta["iws"] = any(iws_predicate(w, n) for w in support)
    return meta


def block_table(spec: BlockSpec, reduced: bool = False, graded: bool = False,
                block: BlockData | None = None,
                strand_limit: int = DEFAULT_STRAND_LIMIT) -> BlockTable:
    """Assemble the decorated multiplicity table of a block.

    ``reduced`` keeps only rows without an adjacent pair (a, b), a - b >= 2;
    such a pair can be swapped by a distant move without changing any entry.
    """
    v = tuple(spec.v)
    check_vector(v)
    n = len(v)
    if block is None:
        block = cached_block(v, strand_limit)
    rows = enumerate_words(v)
    if spec.singular is not None:
        rows = [w for w in rows if is_realizable_singular(w, n, spec.singular)]
    if reduced:
        rows = [w for w in rows if is_reduced(w)]

    simples = block.simples
    if spec.singular is not None:
        row_set = set(rows)
        simples = [s for s in simples if any(w in row_set for w in s.character)]
    columns = [s.good_word for s in simples]
    col_of = {g: k for k, g in enumerate(columns)}

    zero = LaurentPoly()
    entries = []
    for w in rows:
        if graded:
            entries.append([s.character.get(w, zero) for s in simples])
        else:
            entries.append([s.character[w].eval_at_one() if w in s.character else 0
                            for s in simples])

    boxes = {}
    for k, w in enumerate(rows):
        c = canonical_form(w, n)
        if c in col_of:
            boxes[k] = col_of[c]
    metas = [simple_metadata(s, n) for s in simples]
    return BlockTable(
        v=v, rows=rows, columns=columns, entries=entries, boxes=boxes,
        gk_row=[m["gk"] for m in metas],
        iws_row=[m["iws"] for m in metas] if n in (3, 4) else None,
        singular=tuple(spec.singular) if spec.singular is not None else None,
    )


def product_multiplicity(cosets: Sequence[Sequence[int]], words: Sequence[Sequence[int]],
                         simples: Sequence[Sequence[int]],
                         strand_limit: int = DEFAULT_STRAND_LIMIT) -> int:
    """Weight multiplicity in a tensor product of simples, one per coset block."""
    if not (len(cosets) == len(words) == len(simples)):
        raise DomainError("need one word and one simple per coset")
    total = 1
    for v, w, g in zip(cosets, words, simples):
        v, w, g = tuple(v), tuple(w), tuple(g)
        n = len(v)
        if coset_vector(w, n) != v or coset_vector(g, n) != v:
            raise DomainError(f"{format_word(w)} / {format_word(g)} do not have content {v}")
        block = cached_block(v, strand_limit)
        if g not in block.index:
            raise DomainError(f"{format_word(g)} is not a red-good word for {v}")
        p = block.simple(g).character.get(w)
        total *= p.eval_at_one() if p else 0
    return total
