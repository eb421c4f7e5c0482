import itertools

import pytest
from hypothesis import given, strategies as st

from gtklr.errors import DomainError, StructuralError, UnsupportedRankError
from gtklr.words import (
    content,
    count_red_good,
    enumerate_red_good,
    enumerate_words,
    essentially_same,
    factorize_red_good,
    format_word,
    gk_dimension,
    gl_lyndon,
    gl_vector,
    glprime_lyndon,
    is_essential,
    is_realizable_singular,
    is_red_good,
    is_reduced,
    iws_predicate,
    lyndon_compare,
    multinomial,
    parse_vector,
    parse_word,
    run_divisor,
)

from oracles import all_words, red_good_brute

W = parse_word


def test_parse_and_format_roundtrip():
    assert W("332321") == (3, 3, 2, 3, 2, 1)
    assert W("3,3,2") == (3, 3, 2)
    assert format_word((1, 10, 2)) == "1,10,2"
    assert format_word((3, 2, 1), 10) == "3,2,1"
    assert format_word((3, 2, 1), 3) == "321"


@pytest.mark.parametrize("bad", ["3a2", "1,,2", "x"])
def test_parse_word_rejects_garbage(bad):
    with pytest.raises(DomainError):
        parse_word(bad)


def test_parse_word_checks_range():
    with pytest.raises(DomainError):
        parse_word("1240", 4)
    with pytest.raises(DomainError):
        parse_word("125", 4)


def test_parse_vector():
    assert parse_vector("1,2,3") == (1, 2, 3)
    with pytest.raises(DomainError):
        parse_vector("1,-2")


@pytest.mark.parametrize("n, expected", [
    (1, []),
    (2, [(1,)]),
    (3, [(1,), (2,), (2, 1)]),
])
def test_gl_lyndon(n, expected):
    assert sorted(gl_lyndon(n)) == sorted(expected)


@pytest.mark.parametrize("n, expected", [
    (1, [(1,)]),
    (2, [(2,), (2, 1)]),
    (3, [(3,), (3, 2), (3, 2, 1)]),
])
def test_glprime_lyndon(n, expected):
    assert sorted(glprime_lyndon(n)) == sorted(expected)


@pytest.mark.parametrize("u, w, expected", [
    ((1,), (2,), -1),
    ((2, 1), (2,), -1),
    ((2,), (2, 1), 1),
    ((3, 2), (3, 2), 0),
])
def test_lyndon_compare(u, w, expected):
    assert lyndon_compare(u, w) == expected


def test_factorize_examples():
    f = factorize_red_good(W("212"), 2)
    assert f.a_list == () and f.b_list == ((2, 1), (2,))
    assert factorize_red_good(W("333221"), 3) is None
    f = factorize_red_good(W("212333"), 3)
    assert f.a_list == ((2, 1), (2,)) and f.b_list == ((3,), (3,), (3,))
    f = factorize_red_good(W("122333"), 3)
    assert f.multiplicities == {(1,): 1, (2,): 2}


def test_factorize_rejects_bad_letters():
    with pytest.raises(DomainError):
        factorize_red_good((1, 4), 3)


def test_enumerate_examples():
    assert enumerate_red_good((1, 2)) == [W("221"), W("212"), W("122")]
    g3 = enumerate_red_good((1, 2, 3))
    assert len(g3) == 20 and g3[0] == W("332321") and g3[-1] == W("122333")
    for n in range(1, 6):
        v = (0,) * (n - 1) + (1,)
        assert enumerate_red_good(v) == [(n,)]


@pytest.mark.parametrize("v, expected", [
    (gl_vector(2), 3), (gl_vector(3), 20), ((1, 2, 2), 11), (gl_vector(7), 14981789),
])
def test_count_examples(v, expected):
    assert count_red_good(v) == expected


def test_enumerate_words_examples():
    assert enumerate_words((1, 2)) == [W("221"), W("212"), W("122")]
    assert len(enumerate_words((1, 2, 3))) == 60
    assert len(enumerate_words((0, 0, 2, 3))) == 10


@pytest.mark.parametrize("v", [(1, 2), (1, 2, 0), (1, 2, 3), (1, 2, 2), (0, 2, 3), (2, 2, 2),
                               (1, 2, 1, 1), (1, 1, 2, 2), (0, 0, 2, 3), (3, 1, 2)])
def test_red_good_matches_brute_force(v):
    n = len(v)
    words = all_words(v)
    assert enumerate_words(v) == words
    brute = [w for w in words if red_good_brute(w, n)]
    assert enumerate_red_good(v) == brute
    assert count_red_good(v) == len(brute)
    for w in words:
        assert len(red_good_brute(w, n)) <= 1


vectors = st.lists(st.integers(0, 3), min_size=1, max_size=4).filter(lambda v: 0 < sum(v) <= 8)


@given(vectors)
def test_enumeration_and_count_agree(v):
    v = tuple(v)
    goods = enumerate_red_good(v)
    assert len(goods) == len(set(goods)) == count_red_good(v)
    assert goods == sorted(goods, reverse=True)
    assert len(enumerate_words(v)) == multinomial(v)
    n = len(v)
    for g in goods:
        assert content(g, n) == v
        f = factorize_red_good(g, n)
        assert f is not None and f.word() == g
        assert len(f.b_list) == v[-1]


@given(vectors, st.randoms(use_true_random=False))
def test_factorization_iff_membership(v, rnd):
    v = tuple(v)
    n = len(v)
    goods = set(enumerate_red_good(v))
    words = enumerate_words(v)
    for w in rnd.sample(words, min(20, len(words))):
        assert is_red_good(w, n) == (w in goods)


@pytest.mark.parametrize("word, n, expected", [
    ("321323", 3, 0), ("333221", 3, 3), ("123233", 3, 2), ("1221", 3, 4), ("", 3, 0),
])
def test_gk_dimension(word, n, expected):
    assert gk_dimension(W(word), n) == expected


@given(st.lists(st.integers(1, 3), min_size=1, max_size=7), st.randoms(use_true_random=False))
def test_gk_invariant_left_of_first_red(letters, rnd):
    w = list(letters) + [4] + list(reversed(letters))
    cut = w.index(4)
    head = w[:cut]
    rnd.shuffle(head)
    assert gk_dimension(tuple(head + w[cut:]), 4) == gk_dimension(tuple(w), 4)
    assert gk_dimension(tuple(w), 4) <= len(w)


@pytest.mark.parametrize("word, n, expected", [
    ("333221", 3, True), ("332321", 3, False), ("333212", 3, False),
    ("4444333221", 4, True), ("4444333212", 4, False), ("333122", 3, True),
])
def test_is_essential(word, n, expected):
    assert is_essential(W(word), n) is expected


def test_essential_strict_is_stronger():
    # 2 between the 3's: fine for the black letters, not for the strict orientation test
    w = W("332231")
    assert is_essential(w, 3) and not is_essential(w, 3, strict=True)
    for v in [(1, 2, 3), (1, 2, 2), (2, 2, 2)]:
        for w in enumerate_words(v):
            if is_essential(w, 3, strict=True):
                assert is_essential(w, 3)


@pytest.mark.parametrize("a, b, expected", [
    ("333122", "133322", True), ("333122", "313322", True),
    ("333221", "333122", False), ("333221", "333221", True),
])
def test_essentially_same(a, b, expected):
    assert essentially_same(W(a), W(b), 3) is expected


def test_essentially_same_rejects_non_essential():
    with pytest.raises(DomainError):
        essentially_same(W("332321"), W("333221"), 3)


def test_essentially_same_is_an_equivalence():
    words = [w for w in enumerate_words((1, 2, 3)) if is_essential(w, 3)]
    rel = {(a, b): essentially_same(a, b, 3) for a in words for b in words}
    for a in words:
        assert rel[a, a]
    for a, b in itertools.product(words, words):
        assert rel[a, b] == rel[b, a]
    for a, b, c in itertools.product(words, words, words):
        if rel[a, b] and rel[b, c]:
            assert rel[a, c]


@pytest.mark.parametrize("word, n, expected", [
    ("233312", 3, True), ("213332", 3, True), ("133322", 3, False), ("233321", 3, False),
    ("2344321443", 4, False), ("2144443313", 4, False), ("3144442312", 4, False),
    ("3214444323", 4, True), ("2144443332", 4, True), ("2343214432", 4, True),
    ("2344441323", 4, True), ("3244441132", 4, True), ("1244443332", 4, False),
])
def test_iws_predicate(word, n, expected):
    assert iws_predicate(W(word), n) is expected


@pytest.mark.parametrize("n", [2, 5])
def test_iws_predicate_unsupported_rank(n):
    with pytest.raises(UnsupportedRankError):
        iws_predicate((1,) * n, n)


@pytest.mark.parametrize("word, n, expected", [
    ("4443343221", 4, 4), ("4444333212", 4, 6), ("212", 2, 1), ("4444333221", 4, 12),
])
def test_run_divisor(word, n, expected):
    assert run_divisor(W(word), n) == expected


@pytest.mark.parametrize("word, comp, expected", [
    ("333221", (1, 2), True), ("332321", (1, 2), False), ("323321", (1, 2), True),
    ("332321", (2, 1), True), ("332321", (1, 1, 1), True),
])
def test_is_realizable_singular(word, comp, expected):
    assert is_realizable_singular(W(word), 3, comp) is expected


@pytest.mark.parametrize("comp", [(1, 1), (0, 3), (4,), ()])
def test_is_realizable_singular_bad_composition(comp):
    with pytest.raises(DomainError):
        is_realizable_singular(W("333221"), 3, comp)


@given(vectors, st.randoms(use_true_random=False))
def test_all_ones_composition_is_regular(v, rnd):
    v = tuple(v)
    if v[-1] == 0:
        return
    words = enumerate_words(v)
    for w in rnd.sample(words, min(10, len(words))):
        assert is_realizable_singular(w, len(v), (1,) * v[-1])


def test_is_reduced():
    assert is_reduced(W("4443343221"))
    assert is_reduced(W("4432143243"))
    assert not is_reduced(W("4443342231"))
    assert sum(map(is_reduced, enumerate_words(gl_vector(4)))) == 1050


def test_factorize_structural_error_is_not_raised_for_valid_words():
    # uniqueness is asserted inside factorize_red_good; a full block exercises it
    for w in enumerate_words((1, 2, 3)):
        try:
            factorize_red_good(w, 3)
        except StructuralError:  # pragma: no cover
            pytest.fail(f"two factorizations of {w}")
