"""Words over the alphabet [1, n] and their red-good combinatorics.

A word is a tuple of ints.  Letter ``n`` is the red letter; everything below
it is black.  Dimension vectors are tuples ``(v_1, ..., v_n)`` counting how
often each letter occurs.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from functools import lru_cache
from math import factorial, prod
from typing import Sequence

from .errors import DomainError, StructuralError, UnsupportedRankError

Word = tuple


# --- parsing and formatting -------------------------------------------------

def parse_word(text: str, n: int | None = None) -> Word:
    """Parse ``"332321"`` or ``"3,3,2,3,2,1"`` into a tuple of letters."""
    text = text.strip()
    if not text:
        return ()
    if "," in text:
        try:
            letters = tuple(int(t) for t in text.split(","))
        except ValueError:
            raise DomainError(f"cannot parse word {text!r}") from None
    elif text.isdigit():
        letters = tuple(int(ch) for ch in text)
    else:
        raise DomainError(f"cannot parse word {text!r}")
    if n is not None:
        check_letters(letters, n)
    return letters


def format_word(word: Sequence[int], n: int | None = None) -> str:
    """Digit string when every letter is a single digit, comma-separated otherwise."""
    big = (n is not None and n > 9) or any(x > 9 for x in word)
    return ",".join(map(str, word)) if big else "".join(map(str, word))


def parse_vector(text: str) -> tuple:
    try:
        v = tuple(int(t) for t in text.split(","))
    except ValueError:
        raise DomainError(f"bad dimension vector {text!r}") from None
    check_vector(v)
    return v


def check_letters(word: Sequence[int], n: int) -> None:
    for x in word:
        if not 1 <= x <= n:
            raise DomainError(f"letter {x} of {format_word(word)} is outside [1, {n}]")


def check_vector(v: Sequence[int]) -> None:
    if len(v) < 1 or any(x < 0 for x in v):
        raise DomainError(f"invalid dimension vector {tuple(v)}")


def gl_vector(n: int) -> tuple:
    """The dimension vector (1, 2, ..., n) of gl_n."""
    return tuple(range(1, n + 1))


def content(word: Sequence[int], n: int) -> tuple:
    c = [0] * n
    for x in word:
        c[x - 1] += 1
    return tuple(c)


# --- Lyndon words -------------------------------------------------------------

def gl_lyndon(n: int) -> list:
    """Black good Lyndon words (k, k-1, ..., k-p) with k <= n-1."""
    return [tuple(range(k, k - p - 1, -1)) for k in range(1, n) for p in range(k)]


def glprime_lyndon(n: int) -> list:
    """Red good Lyndon words (n, n-1, ..., n-p)."""
    return [tuple(range(n, n - p - 1, -1)) for p in range(n)]


def lyndon_compare(u: Sequence[int], w: Sequence[int]) -> int:
    """Three-way comparison where a proper prefix counts as the larger word.

    Returns -1, 0 or 1.  So (2, 1) < (2): the end of a word beats any letter.
    """
    for a, b in zip(u, w):
        if a != b:
            return -1 if a < b else 1
    if len(u) == len(w):
        return 0
    return 1 if len(u) < len(w) else -1


def _lyndon_key(u):
    # end-of-word sorts above every letter
    return tuple(u) + (float("inf"),)


@dataclass(frozen=True)
class RedGoodFactorization:
    a_list: tuple
    b_list: tuple
    multiplicities: dict = field(compare=False)

    def factors(self) -> tuple:
        return self.a_list + self.b_list

    def word(self) -> Word:
        return tuple(x for f in self.factors() for x in f)


def _is_descending_run(seg, top) -> bool:
    return seg[0] == top and all(seg[i] == seg[i - 1] - 1 for i in range(1, len(seg))) and seg[-1] >= 1


def factorize_red_good(word: Sequence[int], n: int) -> RedGoodFactorization | None:
    """Return the red-good factorization of ``word`` or None if it has none."""
    word = tuple(word)
    check_letters(word, n)
    try:
        cut = word.index(n)
    except ValueError:
        cut = len(word)
    prefix, suffix = word[:cut], word[cut:]

    b_list = []
    starts = [i for i, x in enumerate(suffix) if x == n] + [len(suffix)]
    for s, e in zip(starts, starts[1:]):
        seg = suffix[s:e]
        if not _is_descending_run(seg, n):
            return None
        b_list.append(seg)

    found = _split_prefix(prefix)
    if not found:
        return None
    if len(found) > 1:
        raise StructuralError(f"{format_word(word)} has several red-good factorizations")
    a_list = found[0]
    return RedGoodFactorization(tuple(a_list), tuple(b_list), dict(Counter(a_list)))


def _split_prefix(prefix: tuple) -> list:
    """All factorizations of ``prefix`` into black GL words, weakly increasing."""

    @lru_cache(maxsize=None)
    def go(i: int, last):
        # factorizations of prefix[i:] whose first factor is >= last
        if i == len(prefix):
            return [()]
        out = []
        j = i + 1
        while True:
            piece = prefix[i:j]
            if last is None or lyndon_compare(last, piece) <= 0:
                for rest in go(j, piece):
                    out.append((piece,) + rest)
            if j < len(prefix) and prefix[j] == prefix[j - 1] - 1:
                j += 1
            else:
                break
        return out

    return [list(f) for f in go(0, None)]


def is_red_good(word: Sequence[int], n: int) -> bool:
    return factorize_red_good(word, n) is not None


# --- enumeration and counting -------------------------------------------------

def _sub(c, w, n):
    out = list(c)
    for x in w:
        out[x - 1] -= 1
        if out[x - 1] < 0:
            return None
    return tuple(out)


def enumerate_red_good(v: Sequence[int]) -> list:
    """All red-good words of content v, in decreasing lexicographic order."""
    v = tuple(v)
    check_vector(v)
    n = len(v)
    gl = sorted(gl_lyndon(n), key=_lyndon_key)
    glp = glprime_lyndon(n)
    found: set = set()

    def a_parts(c, start):
        # weakly increasing GL sequences using gl[start:], exhausting content c
        if not any(c):
            yield ()
            return
        for idx in range(start, len(gl)):
            rest = _sub(c, gl[idx], n)
            if rest is not None:
                for tail in a_parts(rest, idx):
                    yield gl[idx] + tail

    def b_parts(c, k):
        if k == 0:
            yield c, ()
            return
        for w in glp:
            rest = _sub(c, w, n)
            if rest is not None:
                for left, tail in b_parts(rest, k - 1):
                    yield left, w + tail

    for left, b in b_parts(v, v[-1]):
        for a in a_parts(left, 0):
            found.add(a + b)
    return sorted(found, reverse=True)


def count_red_good(v: Sequence[int]) -> int:
    """Number of red-good words of content v, by dynamic programming.

    Sums over multisets B of red Lyndon words (arranged in every order) the
    number of black multisets filling the remaining content.
    """
    v = tuple(v)
    check_vector(v)
    n = len(v)
    glp = glprime_lyndon(n)
    black_counts = _black_multiset_counts(v[:-1], n)

    total = 0

    def walk(idx, k, c, mults):
        nonlocal total
        if k == 0:
            if c[-1] == 0:
                arrangements = factorial(sum(mults)) // prod(factorial(m) for m in mults)
                total += arrangements * black_counts.get(c[:-1], 0)
            return
        if idx == len(glp):
            return
        w = glp[idx]
        cur, m = c, 0
        while True:
            walk(idx + 1, k - m, cur, mults + (m,))
            if m == k:
                break
            cur = _sub(cur, w, n)
            if cur is None:
                break
            m += 1

    walk(0, v[-1], v, ())
    return total


def _black_multiset_counts(bound: tuple, n: int) -> dict:
    """Map content c <= bound (letters 1..n-1) to the number of GL multisets of content c."""
    dp = {tuple([0] * len(bound)): 1}
    for w in gl_lyndon(n):
        vec = [0] * len(bound)
        for x in w:
            vec[x - 1] += 1
        # unbounded coin change: add k copies of w to every state known before w
        for state, cnt in list(dp.items()):
            nxt = tuple(s + d for s, d in zip(state, vec))
            while all(a <= b for a, b in zip(nxt, bound)):
                dp[nxt] = dp.get(nxt, 0) + cnt
                nxt = tuple(s + d for s, d in zip(nxt, vec))
    return dp


def enumerate_words(v: Sequence[int]) -> list:
    """All words of content v in decreasing lexicographic order."""
    v = tuple(v)
    check_vector(v)
    n = len(v)
    out = []
    counts = list(v)
    cur = []
    total = sum(v)

    def rec():
        if len(cur) == total:
            out.append(tuple(cur))
            return
        for x in range(n, 0, -1):
            if counts[x - 1]:
                counts[x - 1] -= 1
                cur.append(x)
                rec()
                cur.pop()
                counts[x - 1] += 1

    rec()
    return out


# --- word-level predicates ----------------------------------------------------

def gk_dimension(word: Sequence[int], n: int) -> int:
    """Letters lying outside the span of the red letters."""
    reds = [i for i, x in enumerate(word) if x == n]
    if not reds:
        return len(word)
    return reds[0] + (len(word) - 1 - reds[-1])


def _orientation(word, n) -> tuple:
    # for each i: +1 if every (i+1) precedes every i, -1 if every (i+1) follows, 0 if absent
    pos: dict = {}
    for k, x in enumerate(word):
        pos.setdefault(x, []).append(k)
    out = []
    for i in range(1, n):
        lo, hi = pos.get(i), pos.get(i + 1)
        if not lo or not hi:
            out.append(0)
        elif hi[-1] < lo[0]:
            out.append(1)
        elif lo[-1] < hi[0]:
            out.append(-1)
        else:
            out.append(None)
    return tuple(out)


def is_essential(word: Sequence[int], n: int, strict: bool = False) -> bool:
    """Whether no letter i+-1 sits between two occurrences of a black letter i.

    This is exactly when the half twist of every group of equal black strands
    crosses no strand with an adjacent label.  ``strict`` asks for the stronger
    condition that, for every i, all (i+1)'s come before all i's or all after.
    """
    if strict:
        return None not in _orientation(word, n)
    word = tuple(word)
    for i in range(1, n):
        try:
            first = word.index(i)
        except ValueError:
            continue
        last = len(word) - 1 - word[::-1].index(i)
        if any(abs(x - i) == 1 for x in word[first:last]):
            return False
    return True


def _restriction(word, i) -> tuple:
    return tuple(x for x in word if x == i or x == i + 1)


def essentially_same(w1: Sequence[int], w2: Sequence[int], n: int) -> bool:
    """Essential words that agree after deleting everything but i and i+1, for each i.

    For strictly essential words this says the (i, i+1) orientations agree.
    """
    if not (is_essential(w1, n) and is_essential(w2, n)):
        raise DomainError("essentially_same needs essential words")
    return all(_restriction(w1, i) == _restriction(w2, i) for i in range(1, n))


_IWS_ENDS = {4: ((2,), (3,), (2, 3), (3, 2)), 3: ((2,),)}


def iws_predicate(word: Sequence[int], n: int) -> bool:
    """Whether a weight with this word has an infinite-dimensional h-weight space (n = 3, 4)."""
    if n not in _IWS_ENDS:
        raise UnsupportedRankError(f"no infinite-weight-space criterion for n={n}")
    word = tuple(word)
    return any(
        len(word) >= len(t) and word[: len(t)] == t and word[-len(t):] == t
        for t in _IWS_ENDS[n]
    )


def run_divisor(word: Sequence[int], n: int) -> int:
    """Product of factorials of maximal runs of one black letter."""
    out = 1
    i = 0
    while i < len(word):
        j = i
        while j < len(word) and word[j] == word[i]:
            j += 1
        if word[i] != n:
            out *= factorial(j - i)
        i = j
    return out


def is_realizable_singular(word: Sequence[int], n: int, comp: Sequence[int]) -> bool:
    """False when a black letter sits between two reds sharing a longitude.

    ``comp`` groups the red letters left to right into blocks of equal longitude.
    """
    reds = [i for i, x in enumerate(word) if x == n]
    if not comp or any(c < 1 for c in comp) or sum(comp) != len(reds):
        raise DomainError(f"composition {tuple(comp)} does not split {len(reds)} red letters")
    k = 0
    for size in comp:
        group = reds[k:k + size]
        if group and group[-1] - group[0] != size - 1:
            return False
        k += size
    return True


def is_reduced(word: Sequence[int]) -> bool:
    """No adjacent pair (a, b) with a - b >= 2.

    Such a pair can be swapped by a distant-letter move without changing any
    multiplicity, so reduced words pick one representative per swap orbit.
    """
    return all(a - b < 2 for a, b in zip(word, word[1:]))


def factorial_bound(v: Sequence[int]) -> int:
    """Product of v_i! over the black letters."""
    return prod(factorial(x) for x in v[:-1])


def multinomial(v: Sequence[int]) -> int:
    """Number of words of content v."""
    return factorial(sum(v)) // prod(factorial(x) for x in v)
