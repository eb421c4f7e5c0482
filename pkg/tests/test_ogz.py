import random
from fractions import Fraction
from math import prod

import pytest
from hypothesis import given, settings, strategies as st

from gtklr.errors import DomainError, ResourceError
from gtklr.ogz import (
    ShiftOperator,
    check_identity,
    commutator,
    delta,
    e_diag,
    omega,
    random_point,
    verify_gl_relations,
    x_minus,
    x_plus,
)

GL3 = (1, 2, 3)
# coordinates of the gl_3 point, in omega order
L11, L21, L22, L31, L32, L33 = range(6)


def test_omega():
    assert omega((1, 2)) == [(1, 1), (2, 1), (2, 2)]
    assert omega((0, 2)) == [(2, 1), (2, 2)]


def test_delta_shifts():
    assert delta(GL3, 1, 1, +1) == (-1, 0, 0, 0, 0, 0)
    assert delta(GL3, 2, 2, -1) == (0, 0, 1, 0, 0, 0)


def lam11(p):
    return p[0]


def test_compose_examples():
    v = (1,)
    s = ShiftOperator.from_terms(v, [(lambda p: Fraction(1), (2,))])
    t = ShiftOperator.from_terms(v, [(lambda p: Fraction(1), (3,))])
    assert [sh for _, sh in (s @ t).terms] == [(5,)]
    mult = ShiftOperator.from_terms(v, [(lam11, (0,))])
    down = ShiftOperator.from_terms(v, [(lambda p: Fraction(1), delta(v, 1, 1, -1))])
    assert (mult @ down).apply(lam11, (Fraction(5),)) == 30
    ident = ShiftOperator.identity(v)
    assert check_identity(mult @ ident, mult) and check_identity(ident @ mult, mult)


def test_from_terms_merges_equal_shifts():
    v = (1,)
    op = ShiftOperator.from_terms(v, [(lambda p: Fraction(2), (1,)), (lambda p: Fraction(3), (1,))])
    assert len(op.terms) == 1 and op.terms[0][0]((Fraction(0),)) == 5


def random_operator(v, rng):
    size = len(omega(v))
    terms = []
    for _ in range(rng.randint(1, 3)):
        idx = [rng.randrange(size) for _ in range(rng.randint(0, 2))]
        c = rng.randint(-3, 3)
        shift = tuple(rng.randint(-1, 1) for _ in range(size))
        terms.append((lambda p, idx=idx, c=c: c * prod((p[k] for k in idx), start=Fraction(1)),
                      shift))
    return ShiftOperator.from_terms(v, terms)


@settings(max_examples=25)
@given(st.integers(0, 10**6))
def test_compose_is_associative(seed):
    rng = random.Random(seed)
    v = (1, 2)
    a, b, c = (random_operator(v, rng) for _ in range(3))
    assert check_identity((a @ b) @ c, a @ (b @ c), trials=5, seed=seed)
    assert check_identity(a @ (b + c), a @ b + a @ c, trials=5, seed=seed)


def printed_gl3():
    """The gl_3 operators as printed, as {shift: coefficient}."""
    d = lambda i, j, s: delta(GL3, i, j, s)  # noqa: E731
    return {
        "e12": {d(1, 1, +1): lambda p: (p[L11] - p[L21]) * (p[L22] - p[L11])},
        "e21": {d(1, 1, -1): lambda p: Fraction(1)},
        "e23": {
            d(2, 2, +1): lambda p: (p[L22] - p[L31]) * (p[L22] - p[L32]) * (p[L22] - p[L33])
            / (p[L21] - p[L22]),
            d(2, 1, +1): lambda p: -(p[L21] - p[L31]) * (p[L21] - p[L32]) * (p[L21] - p[L33])
            / (p[L21] - p[L22]),
        },
        "e32": {
            d(2, 2, -1): lambda p: (p[L11] - p[L22]) / (p[L21] - p[L22]),
            d(2, 1, -1): lambda p: -(p[L11] - p[L21]) / (p[L21] - p[L22]),
        },
        "e11": {(0,) * 6: lambda p: p[L11]},
    }


def test_gl3_operators_match_printed_formulas():
    ours = {"e12": x_plus(1, GL3), "e21": x_minus(1, GL3), "e23": x_plus(2, GL3),
            "e32": x_minus(2, GL3), "e11": e_diag(1, GL3)}
    rng = random.Random(7)
    points = [random_point(GL3, rng) for _ in range(10)]
    for name, printed in printed_gl3().items():
        terms = dict((s, f) for f, s in ours[name].terms)
        assert set(terms) == set(printed), name
        for p in points:
            for s, f in printed.items():
                assert terms[s](p) == f(p), name


def test_x_minus_bottom_row():
    assert x_minus(1, GL3).apply(lam11, (Fraction(5),) + (Fraction(0),) * 5) == 6


def test_x_range_checks():
    with pytest.raises(DomainError):
        x_plus(3, GL3)
    with pytest.raises(DomainError):
        x_minus(0, GL3)
    with pytest.raises(DomainError):
        e_diag(4, GL3)


def test_e_diag_values():
    p = tuple(Fraction(x) for x in (7, 2, 5, 0, 0, 0))
    one = lambda _: Fraction(1)  # noqa: E731
    assert e_diag(1, GL3).apply(one, p) == 7
    assert e_diag(2, GL3).apply(one, p) == 2 + 5 - 7 - 1
    assert e_diag(2, GL3, offset=1).apply(one, p) == 2 + 5 - 7 + 1


@pytest.mark.parametrize("n", [2, 3])
def test_other_offset_sign_breaks_the_relations(n):
    v = tuple(range(1, n + 1))
    E, F = x_plus(1, v), x_minus(1, v)
    H_other = e_diag(1, v, offset=0) - e_diag(2, v, offset=1)
    assert not check_identity(commutator(E, F), H_other)
    assert check_identity(commutator(E, F), e_diag(1, v) - e_diag(2, v))


def test_check_identity_examples():
    E1, E2 = x_plus(1, GL3), x_plus(2, GL3)
    assert check_identity(E1, E1)
    assert check_identity(commutator(E1, x_minus(1, GL3)), e_diag(1, GL3) - e_diag(2, GL3))
    assert not check_identity(commutator(E1, E2), ShiftOperator.zero(GL3), trials=1)
    with pytest.raises(DomainError):
        check_identity(E1, E1, trials=0)


def test_check_identity_retry_cap():
    # the coefficient always divides by zero, so no usable point exists
    bad = ShiftOperator.from_terms((1,), [(lambda p: Fraction(1) / 0, (0,))])
    with pytest.raises(ResourceError):
        check_identity(bad, bad)


def test_random_points_distinct_within_rows():
    rng = random.Random(1)
    for _ in range(50):
        p = random_point(GL3, rng)
        assert len({p[L21], p[L22]}) == 2 and len({p[L31], p[L32], p[L33]}) == 3


@pytest.mark.parametrize("n", [2, 3, 4])
def test_gl_relations(n):
    report = verify_gl_relations(n, trials=20, seed=0)
    assert report and all(ok for _, ok in report), [name for name, ok in report if not ok]


def test_mutation_is_detected():
    report = dict(verify_gl_relations(3, trials=20, seed=0, mutate=True))
    assert not report["[E1,F1] = H1"]


def test_verify_rank_range():
    with pytest.raises(DomainError):
        verify_gl_relations(5)
