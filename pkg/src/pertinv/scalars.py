"""Exact coefficient arithmetic.

``SymbolicScalar`` is a finite Laurent polynomial in a formal symbol ``pi``
with Gaussian-rational coefficients.  ``Prefactor`` collects the radical and
phase factors (eighth roots of unity, half-integer powers of 2 and K, one
square root of a rational) that Gaussian integration produces.

No floating point value of pi is used anywhere here except in
:meth:`SymbolicScalar.approx`, which is for display only.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator

from .ratfunc import RatFunc

_ZERO = Fraction(0)
_ONE = Fraction(1)

# powers of i as (re, im)
_I_POW = ((1, 0), (0, 1), (-1, 0), (0, -1))


def _is_coeff(x) -> bool:
    return isinstance(x, (int, Fraction, RatFunc))


class SymbolicScalar:
    """Sum over integer d of (re + im*i) * pi**d, stored sparsely."""

    __slots__ = ("_t",)

    def __init__(self, terms: dict | None = None):
        t = {}
        if terms:
            for d, (a, b) in terms.items():
                if a != 0 or b != 0:
                    t[int(d)] = (a, b)
        self._t = t

    # constructors -----------------------------------------------------
    @classmethod
    def rational(cls, r) -> "SymbolicScalar":
        return cls({0: (Fraction(r) if isinstance(r, int) else r, _ZERO)})

    @classmethod
    def pi_power(cls, d: int, re=1, im=0) -> "SymbolicScalar":
        return cls({d: (_frac(re), _frac(im))})

    @classmethod
    def i_pi(cls, n: int, r=1) -> "SymbolicScalar":
        """r * (i*pi)**n."""
        a, b = _I_POW[n % 4]
        r = _frac(r)
        return cls({n: (r * a, r * b)})

    @classmethod
    def imag_unit(cls) -> "SymbolicScalar":
        return cls({0: (_ZERO, _ONE)})

    # access ---------------------------------------------------------------
    @property
    def terms(self) -> dict:
        return dict(self._t)

    def items(self) -> Iterator:
        return iter(sorted(self._t.items()))

    def is_zero(self) -> bool:
        return not self._t

    def is_rational(self) -> bool:
        if not self._t:
            return True
        if set(self._t) != {0}:
            return False
        return self._t[0][1] == 0

    def to_rational(self):
        if not self.is_rational():
            raise ValueError(f"not rational: {self}")
        return self._t[0][0] if self._t else _ZERO

    def pi_degrees(self) -> set[int]:
        return set(self._t)

    # arithmetic -------------------------------------------------------
    def _coerce(self, other):
        if isinstance(other, SymbolicScalar):
            return other
        if _is_coeff(other):
            return SymbolicScalar.rational(other)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        t = dict(self._t)
        for d, (a, b) in o._t.items():
            if d in t:
                x, y = t[d]
                t[d] = (x + a, y + b)
            else:
                t[d] = (a, b)
        return SymbolicScalar(t)

    __radd__ = __add__

    def __neg__(self):
        out = SymbolicScalar()
        out._t = {d: (-a, -b) for d, (a, b) in self._t.items()}
        return out

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if _is_coeff(other):
            return self.scale(other)
        if not isinstance(other, SymbolicScalar):
            return NotImplemented
        t: dict = {}
        for d1, (a1, b1) in self._t.items():
            for d2, (a2, b2) in other._t.items():
                re_ = a1 * a2 - b1 * b2
                im_ = a1 * b2 + b1 * a2
                d = d1 + d2
                if d in t:
                    x, y = t[d]
                    t[d] = (x + re_, y + im_)
                else:
                    t[d] = (re_, im_)
        return SymbolicScalar(t)

    __rmul__ = __mul__

    def scale(self, r) -> "SymbolicScalar":
        """Multiply by a real coefficient (rational or rational function)."""
        if isinstance(r, int):
            r = Fraction(r)
        return SymbolicScalar({d: (a * r, b * r) for d, (a, b) in self._t.items()})

    def mul_i_pi(self, n: int) -> "SymbolicScalar":
        """Multiply by (i*pi)**n without building an intermediate scalar."""
        ca, cb = _I_POW[n % 4]
        return SymbolicScalar({d + n: (ca * a - cb * b, ca * b + cb * a) for d, (a, b) in self._t.items()})

    def inverse(self) -> "SymbolicScalar":
        if len(self._t) != 1:
            raise ZeroDivisionError("only single pi-power scalars are invertible")
        (d, (a, b)), = self._t.items()
        n = a * a + b * b
        return SymbolicScalar({-d: (a / n, -b / n)})

    def __truediv__(self, other):
        if _is_coeff(other):
            return self.scale(1 / Fraction(other) if isinstance(other, int) else 1 / other)
        if isinstance(other, SymbolicScalar):
            return self * other.inverse()
        return NotImplemented

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        out = SymbolicScalar.rational(1)
        for _ in range(k):
            out = out * self
        return out

    def conjugate(self) -> "SymbolicScalar":
        return SymbolicScalar({d: (a, -b) for d, (a, b) in self._t.items()})

    def map_coeffs(self, f) -> "SymbolicScalar":
        return SymbolicScalar({d: (f(a), f(b)) for d, (a, b) in self._t.items()})

    def __eq__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self._t == o._t

    def __hash__(self):
        return hash(tuple(sorted(self._t.items())))

    # rendering --------------------------------------------------------
    def __str__(self):
        if not self._t:
            return "0"
        parts = []
        for d in sorted(self._t, reverse=True):
            a, b = self._t[d]
            if b == 0:
                c = f"{a}"
            elif a == 0:
                c = "i" if b == 1 else ("-i" if b == -1 else f"{b}·i")
            else:
                c = f"({a} + {b}·i)"
            if d == 0:
                parts.append(c)
            else:
                pi = "pi" if d == 1 else f"pi^{d}"
                parts.append(pi if c == "1" else (f"-{pi}" if c == "-1" else f"{c}·{pi}"))
        return " + ".join(parts)

    def __repr__(self):
        return f"SymbolicScalar({self})"

    def approx(self, dps: int = 30):
        """High precision complex value, for human-readable output only."""
        import mpmath

        with mpmath.workdps(dps):
            tot = mpmath.mpc(0)
            for d, (a, b) in self._t.items():
                tot += mpmath.mpc(_to_mpf(a), _to_mpf(b)) * mpmath.pi ** d
            return tot

    _PI = re.compile(r"^(?P<coef>.*?)(?:·?pi(?:\^(?P<d>-?\d+))?)$")

    @classmethod
    def parse(cls, text: str) -> "SymbolicScalar":
        """Inverse of ``str``; also accepts ``*`` for ``·``."""
        text = text.strip().replace("*", "·")
        if text in ("", "0"):
            return cls()
        out = cls()
        for raw in _split_top(text):
            raw = raw.strip().replace(" + ", "+")
            d = 0
            coef = raw
            m = cls._PI.match(raw) if "pi" in raw else None
            if m:
                d = int(m.group("d")) if m.group("d") else 1
                coef = m.group("coef")
            if coef in ("", "+"):
                a, b = _ONE, _ZERO
            elif coef == "-":
                a, b = -_ONE, _ZERO
            else:
                try:
                    a, b = _parse_gauss(coef)
                except (ValueError, ZeroDivisionError):
                    raise ValueError(f"cannot parse scalar term {raw!r}") from None
            out = out + cls({d: (a, b)})
        return out


def _split_top(text: str) -> list[str]:
    parts, depth, cur = [], 0, ""
    i = 0
    while i < len(text):
        ch = text[i]
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        if depth == 0 and text.startswith(" + ", i):
            parts.append(cur)
            cur = ""
            i += 3
            continue
        cur += ch
        i += 1
    parts.append(cur)
    return parts


def _parse_gauss(s: str) -> tuple[Fraction, Fraction]:
    s = s.strip()
    if s.startswith("(") and s.endswith(")"):
        inner = s[1:-1].replace(" ", "")
        m = re.match(r"^([-+]?[0-9/]+)\+([-+]?[0-9/]+)·i$", inner)
        if not m:
            raise ValueError(f"cannot parse gaussian rational {s!r}")
        return Fraction(m.group(1)), Fraction(m.group(2))
    if s.endswith("i"):
        body = s[:-1].rstrip("·")
        if body in ("", "+"):
            return _ZERO, _ONE
        if body == "-":
            return _ZERO, -_ONE
        return _ZERO, Fraction(body)
    return Fraction(s), _ZERO


def _frac(x):
    if isinstance(x, (Fraction, RatFunc)):
        return x
    return Fraction(x)


def _to_mpf(x):
    import mpmath

    if isinstance(x, RatFunc):
        x = x.limit_at_zero()
    return mpmath.mpf(x.numerator) / x.denominator


# ---------------------------------------------------------------------------


def _squarefree_split(n: int) -> tuple[int, int]:
    """n = s*s*f with f squarefree; returns (s, f)."""
    s, f, p = 1, 1, 2
    while p * p <= n:
        while n % (p * p) == 0:
            n //= p * p
            s *= p
        if n % p == 0:
            n //= p
            f *= p
        p += 1
    return s, f * n


@dataclass(frozen=True)
class Prefactor:
    """e^{i pi octant/4} * 2^{half2/2} * K^{halfK/2} * rho * sqrt(radicand).

    Canonical form: octant in 0..7, half2 in {0, 1}, radicand an odd
    squarefree positive integer, rho a positive rational.
    """

    octant: int = 0
    half2: int = 0
    halfK: int = 0
    radicand: int = 1
    rho: Fraction = _ONE

    def __post_init__(self):
        if not 0 <= self.octant < 8:
            raise ValueError("octant must be reduced mod 8")
        if self.half2 not in (0, 1):
            raise ValueError("half2 must be reduced to 0 or 1")
        r = self.radicand
        if not isinstance(r, int) or r < 1 or r % 2 == 0 or _squarefree_split(r)[0] != 1:
            raise ValueError(f"radicand {r!r} is not reduced (odd squarefree positive integer required)")
        if Fraction(self.rho) <= 0:
            raise ValueError("rho must be positive")
        object.__setattr__(self, "rho", Fraction(self.rho))

    @classmethod
    def make(cls, octant=0, half2=0, halfK=0, radicand=1, rho=1) -> "Prefactor":
        """Build from unnormalized data; radicand may be any positive rational."""
        base = cls(octant % 8, 0, halfK, 1, Fraction(rho))
        return base * cls.two_power(half2) * cls.sqrt(radicand)

    @classmethod
    def two_power(cls, half2: int) -> "Prefactor":
        """2^{half2/2}."""
        return cls(0, half2 % 2, 0, 1, Fraction(2) ** (half2 // 2))

    @classmethod
    def sqrt(cls, r) -> "Prefactor":
        """sqrt(r) for a positive rational r."""
        r = Fraction(r)
        if r <= 0:
            raise ValueError("radicand must be positive")
        s, f = _squarefree_split(r.numerator * r.denominator)
        half2 = 0
        if f % 2 == 0:
            f //= 2
            half2 = 1
        return cls(0, half2, 0, f, Fraction(s, r.denominator))

    @classmethod
    def phase(cls, octant: int) -> "Prefactor":
        return cls(octant % 8)

    def __mul__(self, other: "Prefactor") -> "Prefactor":
        if not isinstance(other, Prefactor):
            return NotImplemented
        s, f = _squarefree_split(self.radicand * other.radicand)
        half2 = self.half2 + other.half2
        rho = self.rho * other.rho * s * Fraction(2) ** (half2 // 2)
        return Prefactor((self.octant + other.octant) % 8, half2 % 2, self.halfK + other.halfK, f, rho)

    def inverse(self) -> "Prefactor":
        # 1/sqrt(r) = sqrt(r)/r ; 2^{-1/2} = 2^{1/2}/2
        rho = 1 / (self.rho * self.radicand)
        if self.half2:
            rho /= 2
        return Prefactor((-self.octant) % 8, self.half2, -self.halfK, self.radicand, rho)

    def __pow__(self, k: int) -> "Prefactor":
        if k < 0:
            return self.inverse() ** (-k)
        out = Prefactor()
        for _ in range(k):
            out = out * self
        return out

    def is_trivial(self) -> bool:
        return self == Prefactor()

    def gaussian_part(self) -> "SymbolicScalar | None":
        """The prefactor as a Gaussian rational, if it is one (halfK = 0)."""
        if self.halfK or self.half2 or self.radicand != 1 or self.octant % 2:
            return None
        a, b = _I_POW[self.octant // 2]
        return SymbolicScalar({0: (self.rho * a, self.rho * b)})

    def split_gaussian(self) -> tuple["SymbolicScalar", "Prefactor"]:
        """(g, r) with self = g * r, g a Gaussian rational and r free of rho and even octants."""
        odd = self.octant % 2
        a, b = _I_POW[(self.octant - odd) // 2 % 4]
        g = SymbolicScalar({0: (self.rho * a, self.rho * b)})
        return g, Prefactor(odd, self.half2, self.halfK, self.radicand, _ONE)

    def __str__(self):
        bits = []
        if self.octant:
            bits.append(f"e^(i·pi·{self.octant}/4)")
        if self.half2:
            bits.append("2^(1/2)")
        if self.halfK:
            bits.append(f"K^({self.halfK}/2)")
        if self.rho != 1:
            bits.append(str(self.rho))
        if self.radicand != 1:
            bits.append(f"sqrt({self.radicand})")
        return "·".join(bits) or "1"

    def approx(self, K, dps: int = 30):
        import mpmath

        with mpmath.workdps(dps):
            return (
                mpmath.expjpi(mpmath.mpf(self.octant) / 4)
                * mpmath.sqrt(2) ** self.half2
                * mpmath.sqrt(mpmath.mpf(K)) ** self.halfK
                * mpmath.mpf(self.rho.numerator) / self.rho.denominator
                * mpmath.sqrt(self.radicand)
            )
