"""Integer Laurent polynomials in a single variable q.

Polynomials are stored sparsely as ``{exponent: coefficient}`` with no zero
coefficients, so equality is plain dict equality.  Coefficients are Python
ints and never overflow.
"""
from __future__ import annotations

from functools import lru_cache
from typing import Iterable, Mapping

from .errors import DomainError, InexactDivisionError, StructuralError


class LaurentPoly:
    __slots__ = ("_c",)

    def __init__(self, coeffs: Mapping[int, int] | None = None):
        self._c = {int(e): int(c) for e, c in (coeffs or {}).items() if c}

    @classmethod
    def _raw(cls, d: dict) -> "LaurentPoly":
        # trusted constructor: d is already canonical and owned by the result
        p = cls.__new__(cls)
        p._c = d
        return p

    @classmethod
    def monomial(cls, exp: int, coeff: int = 1) -> "LaurentPoly":
        return cls._raw({exp: coeff} if coeff else {})

    @classmethod
    def const(cls, c: int) -> "LaurentPoly":
        return cls.monomial(0, c)

    # --- inspection -------------------------------------------------------
    def items(self):
        return self._c.items()

    def coeffs(self) -> dict:
        return dict(self._c)

    def __getitem__(self, exp: int) -> int:
        return self._c.get(exp, 0)

    def __bool__(self):
        return bool(self._c)

    def __len__(self):
        return len(self._c)

    def min_exp(self) -> int:
        return min(self._c)

    def max_exp(self) -> int:
        return max(self._c)

    def __eq__(self, other):
        if isinstance(other, int):
            other = LaurentPoly.const(other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self._c == other._c

    def __hash__(self):
        return hash(frozenset(self._c.items()))

    # --- ring operations ----------------------------------------------------
    def __add__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        d = dict(self._c)
        for e, c in other._c.items():
            s = d.get(e, 0) + c
            if s:
                d[e] = s
            else:
                d.pop(e, None)
        return LaurentPoly._raw(d)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly._raw({e: -c for e, c in self._c.items()})

    def __sub__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            if not other:
                return LaurentPoly()
            return LaurentPoly._raw({e: c * other for e, c in self._c.items()})
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        d: dict = {}
        for e1, c1 in self._c.items():
            for e2, c2 in other._c.items():
                e = e1 + e2
                d[e] = d.get(e, 0) + c1 * c2
        return LaurentPoly._raw({e: c for e, c in d.items() if c})

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            if len(self._c) != 1:
                raise InexactDivisionError("only monomials have inverses")
            (e, c), = self._c.items()
            if c not in (1, -1):
                raise InexactDivisionError("only unit monomials have inverses")
            return LaurentPoly.monomial(e * k, c ** abs(k))
        out = LaurentPoly.const(1)
        for _ in range(k):
            out = out * self
        return out

    def shift(self, k: int) -> "LaurentPoly":
        """Multiply by q**k."""
        if not k:
            return self
        return LaurentPoly._raw({e + k: c for e, c in self._c.items()})

    def bar(self) -> "LaurentPoly":
        return LaurentPoly._raw({-e: c for e, c in self._c.items()})

    def is_bar_invariant(self) -> bool:
        return all(self._c.get(-e) == c for e, c in self._c.items())

    def eval_at_one(self) -> int:
        return sum(self._c.values())

    def positive_part(self) -> "LaurentPoly":
        return LaurentPoly._raw({e: c for e, c in self._c.items() if e > 0})

    # --- serialization ----------------------------------------------------
    def to_json(self) -> dict:
        return {str(e): c for e, c in sorted(self._c.items())}

    @classmethod
    def from_json(cls, obj: Mapping[str, int]) -> "LaurentPoly":
        return cls({int(e): int(c) for e, c in obj.items()})

    def __repr__(self):
        if not self._c:
            return "0"
        parts = []
        for e in sorted(self._c, reverse=True):
            c = self._c[e]
            sign = "-" if c < 0 else "+"
            a = abs(c)
            if e == 0:
                body = str(a)
            else:
                mon = "q" if e == 1 else f"q^{e}"
                body = mon if a == 1 else f"{a}{mon}"
            parts.append((sign, body))
        s = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        for sign, body in parts[1:]:
            s += f" {sign} {body}"
        return s


def _coerce(x):
    if isinstance(x, LaurentPoly):
        return x
    if isinstance(x, int):
        return LaurentPoly.const(x)
    return None


q = LaurentPoly.monomial(1)
ZERO = LaurentPoly()
ONE = LaurentPoly.const(1)


def bar(p: LaurentPoly) -> LaurentPoly:
    return p.bar()


def is_bar_invariant(p: LaurentPoly) -> bool:
    return p.is_bar_invariant()


def eval_at_one(p: LaurentPoly) -> int:
    return p.eval_at_one()


def exact_div(p: LaurentPoly, d: LaurentPoly) -> LaurentPoly:
    """Return c with c*d == p, raising InexactDivisionError otherwise.

    Plain long division from the lowest exponent upwards; q is a unit, so the
    only obstructions are coefficient divisibility and a remainder whose span
    is narrower than the divisor's.
    """
    if not d:
        raise ZeroDivisionError("division by the zero polynomial")
    dlo = d.min_exp()
    dlc = d[dlo]
    span = d.max_exp() - dlo
    rem = dict(p._c)
    quot: dict = {}
    while rem:
        lo = min(rem)
        if max(rem) - lo < span:
            raise InexactDivisionError(f"{p!r} is not divisible by {d!r}")
        c, r = divmod(rem[lo], dlc)
        if r:
            raise InexactDivisionError(f"{p!r} is not divisible by {d!r}")
        k = lo - dlo
        quot[k] = c
        for e, dc in d._c.items():
            s = rem.get(e + k, 0) - c * dc
            if s:
                rem[e + k] = s
            else:
                rem.pop(e + k, None)
    return LaurentPoly._raw(quot)


@lru_cache(maxsize=None)
def quantum_integer(m: int) -> LaurentPoly:
    """Balanced quantum integer [m] = q^(m-1) + q^(m-3) + ... + q^(1-m)."""
    return LaurentPoly({m - 1 - 2 * t: 1 for t in range(m)})


@lru_cache(maxsize=None)
def quantum_factorial(m: int) -> LaurentPoly:
    """Balanced quantum factorial [m]! = [1][2]...[m]; bar-invariant, equals m! at q=1."""
    if m < 0:
        raise DomainError("quantum_factorial needs m >= 0")
    out = ONE
    for s in range(2, m + 1):
        out = out * quantum_integer(s)
    return out


def peel_split(alpha: LaurentPoly, kappa: LaurentPoly) -> tuple[LaurentPoly, LaurentPoly]:
    """Split alpha = rho + kappa*gamma with rho bar-invariant and gamma in qZ[q].

    Since kappa is bar-invariant, alpha - bar(alpha) = kappa*(gamma - bar(gamma)),
    and gamma is the positive half of that quotient.
    """
    diff = alpha - alpha.bar()
    if not diff:
        return alpha, ZERO
    try:
        gamma = exact_div(diff, kappa).positive_part()
    except InexactDivisionError as exc:
        raise StructuralError(f"cannot peel {alpha!r} by kappa={kappa!r}") from exc
    rho = alpha - kappa * gamma
    if not rho.is_bar_invariant():
        raise StructuralError(f"peeling {alpha!r} by {kappa!r} left a non-bar-invariant remainder")
    return rho, gamma


def poly_sum(polys: Iterable[LaurentPoly]) -> LaurentPoly:
    d: dict = {}
    for p in polys:
        for e, c in p._c.items():
            d[e] = d.get(e, 0) + c
    return LaurentPoly._raw({e: c for e, c in d.items() if c})
