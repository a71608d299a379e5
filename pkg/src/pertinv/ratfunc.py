"""Univariate rational functions over Q in a formal parameter ``eps``.

Used as an optional coefficient field for regularized linking matrices.  The
class interoperates with :class:`fractions.Fraction` and ``int`` so that code
written against rational coefficients runs unchanged over Q(eps).
"""
from __future__ import annotations

from fractions import Fraction
from typing import Sequence

Poly = tuple  # tuple of Fraction, lowest degree first, no trailing zeros


def _trim(c: Sequence[Fraction]) -> Poly:
    c = list(c)
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


def _padd(a: Poly, b: Poly) -> Poly:
    n = max(len(a), len(b))
    return _trim([(a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(n)])


def _pneg(a: Poly) -> Poly:
    return tuple(-x for x in a)


def _pmul(a: Poly, b: Poly) -> Poly:
    if not a or not b:
        return ()
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x == 0:
            continue
        for j, y in enumerate(b):
            out[i + j] += x * y
    return _trim(out)


def _pdivmod(a: Poly, b: Poly) -> tuple[Poly, Poly]:
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    r = list(a)
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 0)
    lead = b[-1]
    for k in range(len(a) - len(b), -1, -1):
        c = r[k + len(b) - 1] / lead
        q[k] = c
        if c:
            for j, y in enumerate(b):
                r[k + j] -= c * y
    return _trim(q), _trim(r[: len(b) - 1])


def _pgcd(a: Poly, b: Poly) -> Poly:
    while b:
        a, b = b, _pdivmod(a, b)[1]
    if not a:
        return ()
    lead = a[-1]
    return tuple(x / lead for x in a)


class RatFunc:
    """num/den in Q(eps), reduced, with monic denominator."""

    __slots__ = ("num", "den")

    def __init__(self, num: Sequence, den: Sequence = (1,), _reduced: bool = False):
        n = _trim([Fraction(x) for x in num])
        d = _trim([Fraction(x) for x in den])
        if not d:
            raise ZeroDivisionError("zero denominator")
        if not _reduced:
            if not n:
                d = (Fraction(1),)
            else:
                g = _pgcd(n, d)
                if len(g) > 1:
                    n = _pdivmod(n, g)[0]
                    d = _pdivmod(d, g)[0]
                lead = d[-1]
                if lead != 1:
                    n = tuple(x / lead for x in n)
                    d = tuple(x / lead for x in d)
        self.num = n
        self.den = d

    @classmethod
    def eps(cls) -> "RatFunc":
        return cls((0, 1))

    @staticmethod
    def _coerce(x) -> "RatFunc":
        if isinstance(x, RatFunc):
            return x
        if isinstance(x, (int, Fraction)):
            return RatFunc((x,), _reduced=True) if x else RatFunc(())
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        if self.den == o.den:
            return RatFunc(_padd(self.num, o.num), self.den)
        return RatFunc(_padd(_pmul(self.num, o.den), _pmul(o.num, self.den)), _pmul(self.den, o.den))

    __radd__ = __add__

    def __neg__(self):
        return RatFunc(_pneg(self.num), self.den, _reduced=True)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        if not self.num or not o.num:
            return RatFunc(())
        if len(o.num) == 1 and len(o.den) == 1:
            c = o.num[0]
            return RatFunc(tuple(x * c for x in self.num), self.den, _reduced=True)
        return RatFunc(_pmul(self.num, o.num), _pmul(self.den, o.den))

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        if not o.num:
            raise ZeroDivisionError("division by zero rational function")
        return self * RatFunc(o.den, o.num)

    def __rtruediv__(self, other):
        return self._coerce(other) / self

    def __pow__(self, k: int):
        if k < 0:
            return RatFunc((1,)) / (self ** (-k))
        out = RatFunc((1,))
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __eq__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self.num == o.num and self.den == o.den

    def __hash__(self):
        return hash((self.num, self.den))

    def __bool__(self):
        return bool(self.num)

    def is_constant(self) -> bool:
        return len(self.num) <= 1 and len(self.den) == 1

    def constant(self) -> Fraction:
        if not self.is_constant():
            raise ValueError("not a constant")
        return self.num[0] if self.num else Fraction(0)

    def has_pole_at_zero(self) -> bool:
        return self.den[0] == 0

    def limit_at_zero(self) -> Fraction:
        if self.has_pole_at_zero():
            raise ZeroDivisionError("pole at eps = 0")
        return (self.num[0] if self.num else Fraction(0)) / self.den[0]

    def sign_near_zero(self) -> int:
        """Sign of the function for small positive eps."""
        if not self.num:
            return 0
        lead_n = next(x for x in self.num if x != 0)
        lead_d = next(x for x in self.den if x != 0)
        return 1 if (lead_n > 0) == (lead_d > 0) else -1

    def __repr__(self):
        def p(c):
            return " + ".join(f"{x}*e^{i}" for i, x in enumerate(c) if x) or "0"

        return f"RatFunc(({p(self.num)}) / ({p(self.den)}))"


def sign_of(x) -> int:
    """Sign of a rational, or of a rational function for small eps > 0."""
    if isinstance(x, RatFunc):
        return x.sign_near_zero()
    return (x > 0) - (x < 0)


def limit_at_zero(x) -> Fraction:
    if isinstance(x, RatFunc):
        return x.limit_at_zero()
    return Fraction(x)
