"""Graded characters of standard and simple modules.

A character maps words to Laurent polynomials.  Internally the hot loops work
on "raw" characters, ``{word: {exponent: coeff}}``, and only the public
results are converted to :class:`LaurentPoly` values.

Standard characters are restricted quantum shuffles of the red-good
factors.  Simple characters come out of the peeling pass: starting from the
standard character of a good word, subtract the simples of all lex-greater
good words, splitting each coefficient into a bar-invariant part and a
kappa-multiple with positive exponents.
"""
from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Sequence

from .errors import DomainError, ResourceError, StructuralError
from .qlaurent import LaurentPoly, peel_split, quantum_factorial, ONE
from .words import (
    RedGoodFactorization,
    check_vector,
    enumerate_red_good,
    factorize_red_good,
    format_word,
)

DEFAULT_STRAND_LIMIT = 12
POOL_MIN_WORDS = 64  # below this a process pool costs more than it saves


def crossing_degree(x: int, y: int) -> int:
    if x == y:
        return -2
    if abs(x - y) == 1:
        return 1
    return 0


# --- raw character helpers ----------------------------------------------------

def _add_into(target: dict, word, poly: dict, scale: int = 1, shift: int = 0) -> None:
    slot = target.get(word)
    if slot is None:
        slot = target[word] = {}
    for e, c in poly.items():
        e += shift
        s = slot.get(e, 0) + c * scale
        if s:
            slot[e] = s
        else:
            del slot[e]
    if not slot:
        del target[word]


def to_character(raw: dict) -> dict:
    return {w: LaurentPoly(p) for w, p in raw.items() if p}


def to_raw(char: dict) -> dict:
    return {w: p.coeffs() for w, p in char.items() if p}


def _interleavings(w: tuple, f: tuple, n: int):
    """Yield (word, degree) for every allowed interleaving of f into w.

    k[j] is how many letters of w precede f[j].  A letter of f placed with k
    letters of w before it crosses w[k:], contributing the suffix sum of
    crossing degrees.  The red letter of f must come after every red of w.
    """
    L, m = len(w), len(f)
    suffix = []
    for b in f:
        s = [0] * (L + 1)
        for t in range(L - 1, -1, -1):
            s[t] = s[t + 1] + crossing_degree(w[t], b)
        suffix.append(s)
    last_red = max((i for i, x in enumerate(w) if x == n), default=-1)
    floor = [last_red + 1 if b == n else 0 for b in f]

    ks = [0] * m

    def rec(j, lo, deg):
        if j == m:
            out = []
            prev = 0
            for jj in range(m):
                out.extend(w[prev:ks[jj]])
                out.append(f[jj])
                prev = ks[jj]
            out.extend(w[prev:])
            yield tuple(out), deg
            return
        for k in range(max(lo, floor[j]), L + 1):
            ks[j] = k
            yield from rec(j + 1, k, deg + suffix[j][k])

    yield from rec(0, 0, 0)


def _shuffle_raw(acc: dict, factor: tuple, n: int) -> dict:
    out: dict = {}
    for w, poly in acc.items():
        for word, deg in _interleavings(w, factor, n):
            _add_into(out, word, poly, shift=deg)
    return out


def shuffle_into(acc: dict, factor: Sequence[int], n: int) -> dict:
    """Restricted quantum shuffle of a character with a single word.

    Red-red crossings are forbidden: the red letter of ``factor`` lands after
    every red letter already present.
    """
    factor = tuple(factor)
    if factor.count(n) > 1:
        raise DomainError(f"factor {format_word(factor)} carries more than one red letter")
    return to_character(_shuffle_raw(to_raw(acc), factor, n))


# --- standard characters --------------------------------------------------------

def kappa_and_shift(fact: RedGoodFactorization) -> tuple[LaurentPoly, int]:
    kappa = ONE
    shift = 0
    for m in fact.multiplicities.values():
        kappa = kappa * quantum_factorial(m)
        shift += m * (m - 1) // 2
    return kappa, shift


def _factorize_or_raise(good, n) -> RedGoodFactorization:
    fact = factorize_red_good(good, n)
    if fact is None:
        raise DomainError(f"{format_word(good)} is not red-good")
    return fact


def _standard_raw_many(goods: Sequence[tuple], n: int) -> dict:
    """Raw standard characters for several good words, sharing factor prefixes.

    Words are processed in order of their factor lists, so a stack of partial
    shuffles is enough to reuse every common prefix.
    """
    facts = {g: _factorize_or_raise(g, n) for g in goods}
    order = sorted(goods, key=lambda g: facts[g].factors())
    stack: list = []  # (factor, raw character after shuffling it in)
    out = {}
    for g in order:
        fs = facts[g].factors()
        common = 0
        while common < len(stack) and common < len(fs) and stack[common][0] == fs[common]:
            common += 1
        del stack[common:]
        acc = stack[-1][1] if stack else {(): {0: 1}}
        for f in fs[common:]:
            acc = _shuffle_raw(acc, f, n)
            stack.append((f, acc))
        _, shift = kappa_and_shift(facts[g])
        out[g] = {w: {e + shift: c for e, c in p.items()} for w, p in acc.items()}
    return out


def _standard_worker(args):
    goods, n = args
    return _standard_raw_many(goods, n)


def std_character(good: Sequence[int], v: Sequence[int]) -> dict:
    """Character of the standard module attached to a red-good word."""
    good = tuple(good)
    n = len(v)
    if len(good) != sum(v) or any(good.count(i + 1) != v[i] for i in range(n)):
        raise DomainError(f"{format_word(good)} does not have content {tuple(v)}")
    return to_character(_standard_raw_many([good], n)[good])


# --- peeling ---------------------------------------------------------------------

@dataclass(frozen=True)
class SimpleRecord:
    good_word: tuple
    character: dict = field(repr=False)
    kappa: LaurentPoly
    shift: int
    std_character: dict = field(repr=False)


@dataclass
class BlockData:
    v: tuple
    simples: list
    decomposition: dict  # (standard good word, simple good word) -> gamma

    def simple(self, good) -> SimpleRecord:
        return self.simples[self.index[tuple(good)]]

    @property
    def index(self) -> dict:
        idx = self.__dict__.get("_index")
        if idx is None:
            idx = self.__dict__["_index"] = {s.good_word: k for k, s in enumerate(self.simples)}
        return idx

    def good_words(self) -> list:
        return [s.good_word for s in self.simples]


def _resolve_threads(threads):
    if threads is None:
        env = os.environ.get("GTK_THREADS")
        threads = int(env) if env else 1
    if threads < 1:
        raise DomainError("threads must be positive")
    return threads


def simple_characters(v: Sequence[int], strand_limit: int = DEFAULT_STRAND_LIMIT,
                      threads: int | None = None, progress=None) -> BlockData:
    """Characters of every simple in the block of content v, plus decomposition numbers.

    ``progress``, if given, is called with (stage, done, total).
    """
    v = tuple(v)
    check_vector(v)
    n = len(v)
    if sum(v) > strand_limit:
        raise ResourceError(f"{sum(v)} strands exceeds the strand limit {strand_limit}")
    threads = _resolve_threads(threads)
    goods = enumerate_red_good(v)

    if threads > 1 and len(goods) >= POOL_MIN_WORDS:
        # group by first factor so each worker still shares prefixes
        groups: dict = {}
        for g in goods:
            groups.setdefault(_factorize_or_raise(g, n).factors()[:1], []).append(g)
        with ProcessPoolExecutor(max_workers=threads) as pool:
            std_raw = {}
            for part in pool.map(_standard_worker, [(grp, n) for _, grp in sorted(groups.items())]):
                std_raw.update(part)
    else:
        std_raw = _standard_raw_many(goods, n)
    if progress:
        progress("standard", len(goods), len(goods))

    simples_raw: list = []
    kappas: list = []
    records = []
    decomposition = {}
    for k, good in enumerate(goods):
        kappa, shift = kappa_and_shift(factorize_red_good(good, n))
        ch = {w: dict(p) for w, p in std_raw[good].items()}
        for r in range(k - 1, -1, -1):
            target = goods[r]
            alpha = ch.get(target)
            if not alpha:
                continue
            rho, gamma = peel_split(LaurentPoly(alpha), kappas[r])
            if not gamma:
                continue
            decomposition[(good, target)] = gamma
            for w, p in simples_raw[r].items():
                for ge, gc in gamma.items():
                    _add_into(ch, w, p, scale=-gc, shift=ge)
        _check_simple(good, ch, kappa)
        simples_raw.append(ch)
        kappas.append(kappa)
        records.append(SimpleRecord(good, to_character(ch), kappa, shift,
                                    to_character(std_raw[good])))
        if progress:
            progress("peel", k + 1, len(goods))
    return BlockData(v, records, decomposition)


def _check_simple(good, ch: dict, kappa: LaurentPoly) -> None:
    if LaurentPoly(ch.get(good, {})) != kappa:
        raise StructuralError(f"coefficient of L({format_word(good)}) at its good word is not kappa")
    for w, p in ch.items():
        if w < good:
            raise StructuralError(f"L({format_word(good)}) has support below its good word")
        if any(p.get(-e) != c for e, c in p.items()):
            raise StructuralError(f"L({format_word(good)}) is not bar-invariant at {format_word(w)}")


@lru_cache(maxsize=64)
def cached_block(v: tuple, strand_limit: int = DEFAULT_STRAND_LIMIT) -> BlockData:
    """Memoized :func:`simple_characters`, single-threaded."""
    return simple_characters(v, strand_limit=strand_limit, threads=1)


# --- serialization ----------------------------------------------------------------

def character_to_json(char: dict, n: int) -> dict:
    return {format_word(w, n): p.to_json() for w, p in sorted(char.items(), reverse=True)}


def block_to_json(block: BlockData) -> dict:
    n = len(block.v)
    return {
        "v": list(block.v),
        "simples": [
            {"good": format_word(s.good_word, n), "kappa": s.kappa.to_json(),
             "char": character_to_json(s.character, n)}
            for s in block.simples
        ],
        "decomposition": [
            {"std": format_word(a, n), "simple": format_word(b, n), "gamma": g.to_json()}
            for (a, b), g in block.decomposition.items()
        ],
    }
