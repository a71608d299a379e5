"""Exact arithmetic in cyclotomic fields, Gauss sums and Legendre symbols.

Elements of Q(z), z = exp(2 pi i / n), are stored as integer coordinates over
a common positive denominator in the power basis 1, z, ..., z^{phi(n)-1}.
The working field for a prime K is n = 8K, which contains i, e^{i pi/4},
e^{i pi/K} and sqrt(K).  Other orders are supported for the few places
that need a compositum (K = 3 normalization) or a subfield (Z[zeta_K]).
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb, gcd

from .errors import InputError, MathAssertionError

K_BOUND = 23


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


def check_prime_K(K: int, bound: int | None = None) -> None:
    bound = K_BOUND if bound is None else bound
    if not isinstance(K, int) or K < 3 or not is_prime(K):
        raise InputError(f"K must be an odd prime, got {K!r}")
    if K > bound:
        raise InputError(f"K = {K} exceeds the configured bound {bound}")


def legendre(p: int, K: int) -> int:
    if not is_prime(K) or K == 2:
        raise InputError(f"{K} is not an odd prime")
    r = pow(p % K, (K - 1) // 2, K)
    return -1 if r == K - 1 else r


@dataclass(frozen=True)
class ModularValue:
    residue: int
    K: int

    def __post_init__(self):
        object.__setattr__(self, "residue", self.residue % self.K)

    def __int__(self):
        return self.residue

    def __add__(self, o):
        return ModularValue(self.residue + int(o), self.K)

    def __mul__(self, o):
        return ModularValue(self.residue * int(o), self.K)

    def __eq__(self, o):
        if isinstance(o, ModularValue):
            return (self.residue, self.K) == (o.residue, o.K)
        if isinstance(o, int):
            return (self.residue - o) % self.K == 0
        return NotImplemented

    def __hash__(self):
        return hash((self.residue, self.K))


def modinv(q: int, K: int) -> int:
    if q % K == 0:
        raise InputError("non-invertible denominator")
    return pow(q, -1, K)


def vee(p: int, q: int, K: int) -> ModularValue:
    """p * q^{-1} mod K."""
    return ModularValue(p * modinv(q, K), K)


def vee_rational(r: Fraction, K: int) -> ModularValue:
    r = Fraction(r)
    return vee(r.numerator, r.denominator, K)


# ---------------------------------------------------------------------------
# cyclotomic polynomials and reduction tables


def _divisors(n: int) -> list[int]:
    return [d for d in range(1, n + 1) if n % d == 0]


@lru_cache(maxsize=None)
def cyclotomic_poly(n: int) -> tuple[int, ...]:
    """Integer coefficients of Phi_n, lowest degree first."""
    num = [-1] + [0] * (n - 1) + [1]
    for d in _divisors(n)[:-1]:
        den = cyclotomic_poly(d)
        # exact division by a monic polynomial
        q = [0] * (len(num) - len(den) + 1)
        r = list(num)
        for k in range(len(q) - 1, -1, -1):
            c = r[k + len(den) - 1]
            q[k] = c
            if c:
                for j, y in enumerate(den):
                    r[k + j] -= c * y
        num = q
    return tuple(num)


def totient(n: int) -> int:
    return len(cyclotomic_poly(n)) - 1


@lru_cache(maxsize=None)
def _power_table(n: int) -> tuple[tuple[tuple[int, int], ...], ...]:
    """Sparse basis coordinates of z^k for 0 <= k < n."""
    phi = cyclotomic_poly(n)
    d = len(phi) - 1
    rows: list[tuple[tuple[int, int], ...]] = []
    cur = [0] * d
    cur[0] = 1
    for _ in range(n):
        rows.append(tuple((j, c) for j, c in enumerate(cur) if c))
        # multiply by z, reduce z^d = -sum phi_j z^j
        top = cur[-1]
        cur = [0] + cur[:-1]
        if top:
            for j in range(d):
                cur[j] -= top * phi[j]
    return tuple(rows)


def _normalize(coeffs: list[int], den: int) -> tuple[tuple[int, ...], int]:
    if den < 0:
        coeffs = [-c for c in coeffs]
        den = -den
    g = den
    for c in coeffs:
        if c:
            g = gcd(g, c)
            if g == 1:
                break
    if g > 1:
        coeffs = [c // g for c in coeffs]
        den //= g
    if not any(coeffs):
        den = 1
    return tuple(coeffs), den


class CycNumber:
    """Element of the cyclotomic field of order ``order``."""

    __slots__ = ("order", "coeffs", "den")

    def __init__(self, order: int, coeffs, den: int = 1, _normal: bool = False):
        self.order = order
        if _normal:
            self.coeffs, self.den = coeffs, den
        else:
            self.coeffs, self.den = _normalize(list(coeffs), den)

    # constructors -----------------------------------------------------
    @classmethod
    def zero(cls, order: int) -> "CycNumber":
        return cls(order, (0,) * totient(order), 1, True)

    @classmethod
    def from_rational(cls, order: int, r) -> "CycNumber":
        r = Fraction(r)
        c = [0] * totient(order)
        c[0] = r.numerator
        return cls(order, c, r.denominator)

    @classmethod
    def one(cls, order: int) -> "CycNumber":
        return cls.from_rational(order, 1)

    @classmethod
    def from_exponents(cls, order: int, terms: dict) -> "CycNumber":
        """sum of c * z^e over the table; c int or Fraction, e any integer."""
        den = 1
        for c in terms.values():
            if isinstance(c, Fraction):
                den = den * c.denominator // gcd(den, c.denominator)
        table = _power_table(order)
        out = [0] * totient(order)
        for e, c in terms.items():
            if not c:
                continue
            ci = int(c * den)
            for j, v in table[e % order]:
                out[j] += ci * v
        return cls(order, out, den)

    @classmethod
    def root(cls, order: int, e: int = 1) -> "CycNumber":
        return cls.from_exponents(order, {e: 1})

    # arithmetic -------------------------------------------------------
    def _check(self, other: "CycNumber"):
        if not isinstance(other, CycNumber):
            return False
        if other.order != self.order:
            raise InputError(f"field mismatch: order {self.order} vs {other.order}")
        return True

    def _lift(self, other):
        if isinstance(other, (int, Fraction)):
            return CycNumber.from_rational(self.order, other)
        return other

    def __add__(self, other):
        other = self._lift(other)
        if not self._check(other):
            return NotImplemented
        a, b = self.den, other.den
        return CycNumber(self.order, [x * b + y * a for x, y in zip(self.coeffs, other.coeffs)], a * b)

    __radd__ = __add__

    def __neg__(self):
        return CycNumber(self.order, tuple(-x for x in self.coeffs), self.den, True)

    def __sub__(self, other):
        other = self._lift(other)
        if not self._check(other):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            r = Fraction(other)
            return CycNumber(self.order, [x * r.numerator for x in self.coeffs], self.den * r.denominator)
        if not self._check(other):
            return NotImplemented
        d = len(self.coeffs)
        prod = [0] * (2 * d - 1)
        for i, x in enumerate(self.coeffs):
            if x:
                for j, y in enumerate(other.coeffs):
                    if y:
                        prod[i + j] += x * y
        out = prod[:d]
        table = _power_table(self.order)
        for k in range(d, 2 * d - 1):
            c = prod[k]
            if c:
                for j, v in table[k]:
                    out[j] += c * v
        return CycNumber(self.order, out, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return self * (1 / Fraction(other))
        if not self._check(other):
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        return self._lift(other) * self.inverse()

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        out = CycNumber.one(self.order)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def inverse(self) -> "CycNumber":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero")
        d = len(self.coeffs)
        cols = [self * CycNumber.root(self.order, j) for j in range(d)]
        rhs = [Fraction(0)] * d
        rhs[0] = Fraction(1)
        sol = _solve([[Fraction(c.coeffs[i], c.den) for c in cols] for i in range(d)], rhs)
        if sol is None:
            raise ZeroDivisionError("singular element")
        return CycNumber.from_fractions(self.order, sol)

    @classmethod
    def from_fractions(cls, order: int, vals) -> "CycNumber":
        den = 1
        for v in vals:
            den = den * v.denominator // gcd(den, v.denominator)
        return cls(order, [int(v * den) for v in vals], den)

    # structure --------------------------------------------------------
    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def fractions(self) -> list[Fraction]:
        return [Fraction(c, self.den) for c in self.coeffs]

    def is_rational(self) -> bool:
        return not any(self.coeffs[1:])

    def to_rational(self) -> Fraction:
        if not self.is_rational():
            raise ValueError("not rational")
        return Fraction(self.coeffs[0], self.den)

    def galois(self, k: int) -> "CycNumber":
        """Image under z -> z^k."""
        if gcd(k, self.order) != 1:
            raise InputError("Galois exponent must be a unit")
        terms = {j * k: Fraction(c, self.den) for j, c in enumerate(self.coeffs) if c}
        return CycNumber.from_exponents(self.order, terms)

    def conj(self) -> "CycNumber":
        return self.galois(-1)

    def embed(self, order: int) -> "CycNumber":
        if order % self.order:
            raise InputError(f"cannot embed order {self.order} into order {order}")
        m = order // self.order
        terms = {j * m: Fraction(c, self.den) for j, c in enumerate(self.coeffs) if c}
        return CycNumber.from_exponents(order, terms)

    def descend(self, order: int) -> "CycNumber":
        """Express in the subfield of the given order; raises ValueError if outside."""
        if self.order % order:
            raise InputError(f"order {order} does not divide {self.order}")
        m = self.order // order
        dsub = totient(order)
        table = _power_table(self.order)
        d = len(self.coeffs)
        mat = [[Fraction(0)] * dsub for _ in range(d)]
        for k in range(dsub):
            for j, v in table[(k * m) % self.order]:
                mat[j][k] = Fraction(v)
        sol = _solve(mat, self.fractions())
        if sol is None:
            raise ValueError(f"element is not in the subfield of order {order}")
        return CycNumber.from_fractions(order, sol)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = CycNumber.from_rational(self.order, other)
        if not isinstance(other, CycNumber):
            return NotImplemented
        return self.order == other.order and self.coeffs == other.coeffs and self.den == other.den

    def __hash__(self):
        return hash((self.order, self.coeffs, self.den))

    def to_complex(self, dps: int = 40):
        import mpmath

        with mpmath.workdps(dps + 10):
            tot = mpmath.mpc(0)
            for j, c in enumerate(self.coeffs):
                if c:
                    tot += c * mpmath.expjpi(mpmath.mpf(2 * j) / self.order)
            return tot / self.den

    def __str__(self):
        parts = []
        for j, c in enumerate(self.coeffs):
            if c:
                f = Fraction(c, self.den)
                parts.append(f"{f}" if j == 0 else f"{f}·z^{j}")
        return " + ".join(parts) if parts else "0"

    def __repr__(self):
        return f"CycNumber(order={self.order}: {self})"


def _solve(mat: list[list[Fraction]], rhs: list[Fraction]) -> list[Fraction] | None:
    """Solve a consistent (possibly overdetermined) linear system exactly.

    Returns None if inconsistent or if the columns are dependent.
    """
    rows = len(mat)
    cols = len(mat[0]) if rows else 0
    a = [list(mat[i]) + [Fraction(rhs[i])] for i in range(rows)]
    piv_row = 0
    pivots = []
    for c in range(cols):
        p = next((r for r in range(piv_row, rows) if a[r][c] != 0), None)
        if p is None:
            return None
        a[piv_row], a[p] = a[p], a[piv_row]
        inv = 1 / a[piv_row][c]
        a[piv_row] = [x * inv for x in a[piv_row]]
        for r in range(rows):
            if r != piv_row and a[r][c] != 0:
                f = a[r][c]
                ar, ap = a[r], a[piv_row]
                a[r] = [x - f * y for x, y in zip(ar, ap)]
        pivots.append(c)
        piv_row += 1
    for r in range(piv_row, rows):
        if a[r][cols] != 0:
            return None
    return [a[i][cols] for i in range(cols)]


# ---------------------------------------------------------------------------
# distinguished elements of the order-8K field


def field_order(K: int) -> int:
    return 8 * K


def imag_unit(order: int) -> CycNumber:
    if order % 4:
        raise InputError("i is not in this field")
    return CycNumber.root(order, order // 4)


def sin_pi(a: int, K: int, order: int | None = None) -> CycNumber:
    """sin(pi a / K) in the field of order 8K (or a multiple)."""
    n = order or 8 * K
    u = n // (2 * K)  # z^u = e^{i pi / K}
    q = n // 4  # z^q = i
    return CycNumber.from_exponents(n, _merge({u * a - q: Fraction(1, 2)}, {-u * a - q: Fraction(-1, 2)}))


def sin_pi_terms(a: int, K: int, order: int) -> dict:
    """sin(pi a / K) as an exponent table, without field reduction."""
    u = order // (2 * K)
    q = order // 4
    return _merge({(u * a - q) % order: Fraction(1, 2)}, {(-u * a - q) % order: Fraction(-1, 2)})


def _merge(a: dict, b: dict) -> dict:
    out = dict(a)
    for k, v in b.items():
        out[k] = out.get(k, 0) + v
    return out


def quadratic_gauss_sum(K: int, order: int | None = None) -> CycNumber:
    n = order or 8 * K
    u = n // K
    terms: dict = {}
    for x in range(K):
        e = u * (x * x % K)
        terms[e] = terms.get(e, 0) + 1
    return CycNumber.from_exponents(n, terms)


def sqrt_K(K: int, order: int | None = None) -> CycNumber:
    """The positive square root of K, realized through the quadratic Gauss sum."""
    n = order or 8 * K
    g = quadratic_gauss_sum(K, n)
    if K % 4 == 1:
        return g
    return -(imag_unit(n) * g)


def sqrt_two(order: int) -> CycNumber:
    """2 cos(pi/4); requires 8 | order."""
    if order % 8:
        raise InputError("sqrt(2) needs 8 | order")
    e = order // 8
    return CycNumber.from_exponents(order, {e: 1, -e: 1})


def gauss_sum_direct(p: int, q: int, n: int, K: int) -> CycNumber:
    """sum_{a=0}^{K-1} exp(2 pi i (p q* a^2 + 2 n a) / K)."""
    check_prime_K(K)
    if q % K == 0:
        raise InputError("gcd(q, K) must be 1")
    a = p * modinv(q, K)
    order = 8 * K
    terms: dict = {}
    for x in range(K):
        e = 8 * ((a * x * x + 2 * n * x) % K)
        terms[e] = terms.get(e, 0) + 1
    return CycNumber.from_exponents(order, terms)


def gauss_kappa(K: int, printed_labels: bool = False) -> int:
    """Branch sign in the closed-form Gauss sum.

    The correct assignment is +1 for K = 1 mod 4 and -1 for K = 3 mod 4.
    ``printed_labels=True`` returns the opposite assignment, kept only so
    the test suite can demonstrate that it fails.
    """
    k = 1 if K % 4 == 1 else -1
    return -k if printed_labels else k


def gauss_sum_closed(p: int, q: int, n: int, K: int, printed_labels: bool = False) -> CycNumber:
    """e^{i pi (1-kappa)/4} sqrt(K) (p q*/K) exp(-2 pi i p* q n^2 / K)."""
    check_prime_K(K)
    if (p * q) % K == 0:
        raise InputError("gcd(pq, K) must be 1")
    order = 8 * K
    kappa = gauss_kappa(K, printed_labels)
    a = p * modinv(q, K)
    a_inv = modinv(p, K) * q
    # e^{i pi (1-kappa)/4} = z^{K (1-kappa)}
    phase = CycNumber.root(order, K * (1 - kappa) + 8 * ((-a_inv * n * n) % K))
    return phase * sqrt_K(K) * legendre(a, K)


def zeta_minus_one_expand(z: CycNumber, K: int) -> list[int]:
    """Integer a_0..a_{K-2} with z = sum a_n (zeta_K - 1)^n."""
    try:
        w = z if z.order == K else z.descend(K)
    except ValueError:
        raise MathAssertionError("not in Z[zeta_K]: element lies outside the subfield of order K") from None
    c = w.fractions()  # coordinates in 1, zeta, ..., zeta^{K-2}
    out = []
    for n in range(K - 1):
        a = sum((c[j] * comb(j, n) for j in range(n, K - 1)), Fraction(0))
        out.append(a)
    if any(a.denominator != 1 for a in out):
        raise MathAssertionError(f"not in Z[zeta_K]: non-integral coordinates {[str(a) for a in out]}")
    return [int(a) for a in out]


def zeta_minus_one_collect(a: list[int], K: int) -> CycNumber:
    """Inverse of :func:`zeta_minus_one_expand` (any length)."""
    u = CycNumber.root(K, 1) - 1
    out = CycNumber.zero(K)
    p = CycNumber.one(K)
    for x in a:
        out = out + p * x
        p = p * u
    return out
