"""Shift operators on functions of the variables lambda_{ij}, evaluated exactly.

An operator is a finite sum of terms ``f * S_s``: ``f`` is a coefficient
function of the point and ``S_s`` the shift ``(S_s h)(lam) = h(lam + s)``.
Coefficients are plain closures evaluated in exact rational arithmetic;
nothing is ever expanded symbolically.  This is enough to test operator
identities at random points, which is all the oracle is used for.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from math import prod
from typing import Callable, Sequence

from .errors import DomainError, ResourceError

RETRY_CAP = 100


def omega(v: Sequence[int]) -> list:
    """Index set [(i, j)] with 1 <= j <= v_i, in row order."""
    return [(i, j) for i, vi in enumerate(v, start=1) for j in range(1, vi + 1)]


def _shifted(point, s):
    return tuple(x + d for x, d in zip(point, s))


@dataclass(frozen=True)
class ShiftOperator:
    v: tuple
    terms: tuple  # ((coeff, shift), ...), shifts distinct

    @classmethod
    def from_terms(cls, v, terms) -> "ShiftOperator":
        merged: dict = {}
        for f, s in terms:
            merged.setdefault(tuple(s), []).append(f)
        out = []
        for s, fs in merged.items():
            if len(fs) == 1:
                out.append((fs[0], s))
            else:
                out.append((lambda p, fs=tuple(fs): sum(f(p) for f in fs), s))
        return cls(tuple(v), tuple(out))

    @classmethod
    def identity(cls, v) -> "ShiftOperator":
        return cls.scalar(v, 1)

    @classmethod
    def scalar(cls, v, c) -> "ShiftOperator":
        c = Fraction(c)
        return cls(tuple(v), ((lambda p: c, (0,) * len(omega(v))),))

    @classmethod
    def zero(cls, v) -> "ShiftOperator":
        return cls(tuple(v), ())

    def compose(self, other: "ShiftOperator") -> "ShiftOperator":
        """self after other: (f S_s)(g S_t) = f * g(. + s) S_{s+t}."""
        terms = []
        for f, s in self.terms:
            for g, t in other.terms:
                terms.append((lambda p, f=f, g=g, s=s: f(p) * g(_shifted(p, s)),
                              tuple(a + b for a, b in zip(s, t))))
        return ShiftOperator.from_terms(self.v, terms)

    __matmul__ = compose

    def __add__(self, other):
        return ShiftOperator.from_terms(self.v, self.terms + other.terms)

    def scale(self, c) -> "ShiftOperator":
        c = Fraction(c)
        return ShiftOperator(self.v, tuple((lambda p, f=f: c * f(p), s) for f, s in self.terms))

    def __neg__(self):
        return self.scale(-1)

    def __sub__(self, other):
        return self + (-other)

    def apply(self, h: Callable, point) -> Fraction:
        """Evaluate (self h)(point)."""
        return sum((f(point) * h(_shifted(point, s)) for f, s in self.terms), Fraction(0))


def commutator(a: ShiftOperator, b: ShiftOperator) -> ShiftOperator:
    return a @ b - b @ a


def delta(v, i: int, j: int, sign: int) -> tuple:
    """Shift vector of delta_{ij}^{sign}: lambda_{ij} moves by -sign."""
    idx = omega(v).index((i, j))
    s = [0] * len(omega(v))
    s[idx] = -sign
    return tuple(s)


def _x(v, i: int, sign: int, flip_first: bool = False) -> ShiftOperator:
    v = tuple(v)
    n = len(v)
    if not 1 <= i <= n - 1:
        raise DomainError(f"X_{i} needs 1 <= i <= {n - 1}")
    pos = {c: k for k, c in enumerate(omega(v))}
    other = i + sign  # row i+1 for X^+, row i-1 for X^-
    other_cols = [pos[(other, m)] for m in range(1, v[other - 1] + 1)] if other >= 1 else []
    terms = []
    for j in range(1, v[i - 1] + 1):
        me = pos[(i, j)]
        rest = [pos[(i, m)] for m in range(1, v[i - 1] + 1) if m != j]
        c = -sign
        if flip_first and j == 1:
            c = -c

        def coeff(p, me=me, rest=rest, c=c):
            num = prod((p[k] - p[me] for k in other_cols), start=Fraction(1))
            den = prod((p[k] - p[me] for k in rest), start=Fraction(1))
            return c * num / den

        terms.append((coeff, delta(v, i, j, sign)))
    return ShiftOperator.from_terms(v, terms)


def x_plus(i: int, v, flip_first: bool = False) -> ShiftOperator:
    """X_i^+ = e_{i,i+1}.  ``flip_first`` negates the j=1 term (mutation testing)."""
    return _x(v, i, +1, flip_first)


def x_minus(i: int, v) -> ShiftOperator:
    """X_i^- = e_{i+1,i}."""
    return _x(v, i, -1)


def e_diag(i: int, v, offset: int | None = None) -> ShiftOperator:
    """Multiplication by sum_k lam_{ik} - sum_l lam_{i-1,l} + offset.

    The offset defaults to -(i-1).  With the X operators read literally as
    coefficient-times-shift, this is the value for which [E_i, F_i] = H_i holds;
    ``offset=i-1`` is accepted so the other sign can be checked directly.
    """
    v = tuple(v)
    if not 1 <= i <= len(v):
        raise DomainError(f"e_{i}{i} needs 1 <= i <= {len(v)}")
    if offset is None:
        offset = -(i - 1)
    om = omega(v)
    mine = [k for k, (a, _) in enumerate(om) if a == i]
    below = [k for k, (a, _) in enumerate(om) if a == i - 1]

    def coeff(p):
        return sum(p[k] for k in mine) - sum(p[k] for k in below) + offset

    return ShiftOperator(v, ((coeff, (0,) * len(om)),))


def random_point(v, rng: random.Random) -> tuple:
    """Rational point, integers in [-10^6, 10^6] plus a small fraction, distinct within rows."""
    pts = []
    for i, vi in enumerate(v, start=1):
        row: set = set()
        while len(row) < vi:
            d = rng.randint(2, 60)
            row.add(rng.randint(-10**6, 10**6) + Fraction(rng.randint(1, d - 1), d))
        pts.extend(sorted(row, key=lambda _: rng.random()))
    return tuple(pts)


def random_monomial(size: int, rng: random.Random) -> Callable:
    deg = rng.randint(0, 3)
    idx = [rng.randrange(size) for _ in range(deg)]
    return lambda p: prod((p[k] for k in idx), start=Fraction(1))


def check_identity(a: ShiftOperator, b: ShiftOperator, trials: int = 20, seed: int = 0) -> bool:
    """Compare a and b on random monomials at random rational points."""
    if trials < 1:
        raise DomainError("trials must be >= 1")
    rng = random.Random(seed)
    size = len(omega(a.v))
    for _ in range(trials):
        h = random_monomial(size, rng)
        for _attempt in range(RETRY_CAP):
            point = random_point(a.v, rng)
            try:
                lhs, rhs = a.apply(h, point), b.apply(h, point)
            except ZeroDivisionError:
                continue
            break
        else:
            raise ResourceError(f"no non-degenerate point after {RETRY_CAP} attempts")
        if lhs != rhs:
            return False
    return True


def cartan(i: int, j: int) -> int:
    return 2 if i == j else (-1 if abs(i - j) == 1 else 0)


def verify_gl_relations(n: int, trials: int = 20, seed: int = 0, mutate: bool = False) -> list:
    """Check the gl_n relations for the operators on v = (1, ..., n).

    Returns [(relation name, passed)].  ``mutate`` flips the sign of the
    first term of X_1^+, which must be caught.
    """
    if not 2 <= n <= 4:
        raise DomainError("verify_gl_relations supports 2 <= n <= 4")
    v = tuple(range(1, n + 1))
    E = {i: x_plus(i, v, flip_first=mutate and i == 1) for i in range(1, n)}
    F = {i: x_minus(i, v) for i in range(1, n)}
    H = {i: e_diag(i, v) - e_diag(i + 1, v) for i in range(1, n)}
    zero = ShiftOperator.zero(v)
    checks = []
    for i in range(1, n):
        checks.append((f"[E{i},F{i}] = H{i}", commutator(E[i], F[i]), H[i]))
        for j in range(1, n):
            if i != j:
                checks.append((f"[E{i},F{j}] = 0", commutator(E[i], F[j]), zero))
            a = cartan(i, j)
            checks.append((f"[H{i},E{j}] = {a}E{j}", commutator(H[i], E[j]), E[j].scale(a)))
            checks.append((f"[H{i},F{j}] = {-a}F{j}", commutator(H[i], F[j]), F[j].scale(-a)))
            if abs(i - j) >= 2 and i < j:
                checks.append((f"[E{i},E{j}] = 0", commutator(E[i], E[j]), zero))
                checks.append((f"[F{i},F{j}] = 0", commutator(F[i], F[j]), zero))
            if abs(i - j) == 1:
                checks.append((f"[E{i},[E{i},E{j}]] = 0",
                               commutator(E[i], commutator(E[i], E[j])), zero))
                checks.append((f"[F{i},[F{i},F{j}]] = 0",
                               commutator(F[i], commutator(F[i], F[j])), zero))
    for a in range(1, n + 1):
        for b in range(a + 1, n + 1):
            checks.append((f"[e{a}{a},e{b}{b}] = 0", commutator(e_diag(a, v), e_diag(b, v)), zero))
    return [(name, check_identity(lhs, rhs, trials, seed + k))
            for k, (name, lhs, rhs) in enumerate(checks)]
