"""Self-check suites behind ``gtklr verify``.

Each suite returns a list of ``(description, passed)`` pairs.  The expected
values are published reference numbers for low rank, kept here so an
installed package can check itself without the test tree.
"""
from __future__ import annotations

from collections import Counter
from math import factorial

from .characters import cached_block
from .gtmod import BlockSpec, block_table, simple_metadata
from .ogz import verify_gl_relations
from .qlaurent import LaurentPoly, exact_div, peel_split, q, quantum_factorial
from .words import (
    count_red_good,
    enumerate_red_good,
    factorial_bound,
    gl_vector,
    is_essential,
    parse_word,
)

SUITES = ("words", "qlaurent", "gl2", "gl3", "gl4-spot", "ogz")

GL_COUNTS = {2: 3, 3: 20, 4: 259, 5: 6005, 6: 235546, 7: 14981789}

# nonzero entries (q=1) of selected gl_4 rows, across all simples of the block
GL4_ROW_MULTISETS = {
    "4432143243": [1],
    "4444333221": [12],
    "4444333212": [6, 6],
    "4444332321": [2, 8],
    "4443343221": [4, 8],
    "4443432321": [1, 1, 2, 5],
    "4434343221": [2, 2, 2, 4],
    "4434343212": [1, 1, 1, 1, 1, 1, 2, 2],
}


def _words_suite():
    out = [(f"gl_{n}: {c} red-good words", count_red_good(gl_vector(n)) == c)
           for n, c in GL_COUNTS.items()]
    for n in (2, 3, 4):
        out.append((f"gl_{n}: enumeration agrees with count",
                    len(enumerate_red_good(gl_vector(n))) == GL_COUNTS[n]))
    return out


def _qlaurent_suite():
    qi = q.bar()
    return [
        ("[2]! = q + q^-1", quantum_factorial(2) == q + qi),
        ("[3]! = q^3 + 2q + 2q^-1 + q^-3",
         quantum_factorial(3) == LaurentPoly({3: 1, 1: 2, -1: 2, -3: 1})),
        ("[m]! is bar-invariant and m! at q=1 for m <= 12",
         all(quantum_factorial(m).is_bar_invariant()
             and quantum_factorial(m).eval_at_one() == factorial(m) for m in range(13))),
        ("(q^2 - q^-2)/(q + q^-1) = q - q^-1", exact_div(q * q - qi * qi, q + qi) == q - qi),
        ("peel q^2 + 1 by [2]", peel_split(q * q + 1, q + qi) == (LaurentPoly(), q)),
    ]


def _gl2_suite():
    b = cached_block((1, 2))
    w = lambda s: parse_word(s)  # noqa: E731
    return [
        ("three simples 221, 212, 122", b.good_words() == [w("221"), w("212"), w("122")]),
        ("[std(122) : L(212)] = q", b.decomposition.get((w("122"), w("212"))) == q),
        ("[std(122) : L(221)] = q^2", b.decomposition.get((w("122"), w("221"))) == q * q),
        ("every simple is one-dimensional at its good word",
         all(s.character == {s.good_word: LaurentPoly.const(1)} for s in b.simples)),
    ]


def _gl3_suite():
    v = gl_vector(3)
    t = block_table(BlockSpec(v))
    b = cached_block(v)
    gk = Counter(t.gk_row)
    out = [
        ("60 rows and 20 columns", (len(t.rows), len(t.columns)) == (60, 20)),
        ("one finite-dimensional simple, L(321323)",
         [c for c, g in zip(t.columns, t.gk_row) if g == 0] == [parse_word("321323")]),
        ("GK dimensions: seven 3s, twelve 2s, one 0", gk == Counter({3: 7, 2: 12, 0: 1})),
        ("exactly one simple with an infinite weight space, L(213332)",
         [c for c, i in zip(t.columns, t.iws_row) if i] == [parse_word("213332")]),
        ("every row is boxed at a nonzero entry",
         all(t.entries[k][j] for k, j in t.boxes.items()) and len(t.boxes) == 60),
    ]
    out.append(("row sums <= 2", all(sum(row) <= 2 for row in t.entries)))
    out.append(("a single entry reaches 2 exactly at essential words",
                all((max(row) == 2) == is_essential(w, 3) for w, row in zip(t.rows, t.entries))))
    out.append(("good word is the last nonzero row of its column",
                all(min(s.character) == s.good_word for s in b.simples)))
    return out


def _gl4_suite():
    v = gl_vector(4)
    b = cached_block(v)
    by_word: dict = {}
    for s in b.simples:
        for w, p in s.character.items():
            by_word.setdefault(w, []).append(p.eval_at_one())
    out = []
    for text, expect in GL4_ROW_MULTISETS.items():
        got = sorted(x for x in by_word.get(parse_word(text), []) if x)
        out.append((f"row {text} has entries {expect}", got == expect))
    bound = factorial_bound(v)
    out.append((f"row sums <= {bound}", max(sum(xs) for xs in by_word.values()) <= bound))
    out.append((f"a single entry reaches {bound} exactly at essential words",
                all((max(xs) == bound) == is_essential(w, 4) for w, xs in by_word.items())))
    gk0 = [s.good_word for s in b.simples if simple_metadata(s, 4)["gk"] == 0]
    out.append(("exactly one simple of GK dimension 0", len(gk0) == 1))
    return out


def _ogz_suite(trials, seed):
    out = []
    for n in (2, 3, 4):
        for name, ok in verify_gl_relations(n, trials, seed):
            out.append((f"gl_{n} {name}", ok))
    mutated = verify_gl_relations(3, trials, seed, mutate=True)
    out.append(("sign flip in X_1^+ is detected", not dict(mutated)["[E1,F1] = H1"]))
    return out


def run_suite(name: str, trials: int = 20, seed: int = 0) -> list:
    if name == "words":
        return _words_suite()
    if name == "qlaurent":
        return _qlaurent_suite()
    if name == "gl2":
        return _gl2_suite()
    if name == "gl3":
        return _gl3_suite()
    if name == "gl4-spot":
        return _gl4_suite()
    if name == "ogz":
        return _ogz_suite(trials, seed)
    raise ValueError(f"unknown suite {name!r}")

