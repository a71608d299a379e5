"""Gaussian moments and one-component stationary-phase integration.

The surgery sum over a color alpha_j is replaced by the contribution of the
critical point a = 0 of an integral over a = alpha_j / K.  For the
polynomial * sine * Gaussian integrands met here, that contribution is half
of the full-line integral and is computed in closed form.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb, factorial

from .cyclotomic import CycNumber, check_prime_K, sin_pi, sqrt_K, sqrt_two
from .errors import InputError, MathAssertionError
from .ratfunc import RatFunc, limit_at_zero, sign_of
from .scalars import Prefactor, SymbolicScalar
from .series import (
    ColorSeries,
    KSeries,
    data_exp_const,
    data_exp_linear,
    data_mul,
)


def double_factorial(n: int) -> int:
    out = 1
    while n > 1:
        out *= n
        n -= 2
    return out


@dataclass(frozen=True)
class GaussMoment:
    """prefactor * series, the exact value of a Gaussian moment integral."""

    prefactor: Prefactor
    series: KSeries

    def approx(self, K, dps: int = 40):
        import mpmath

        with mpmath.workdps(dps):
            tot = mpmath.mpc(0)
            for n, c in enumerate(self.series.coeffs):
                tot += c.approx(dps) / mpmath.mpf(K) ** n
            return tot * self.prefactor.approx(K, dps) * self.series.prefactor.approx(K, dps)


def _check_pivot(l) -> None:
    if isinstance(l, RatFunc):
        if not l:
            raise MathAssertionError("zero pivot: enable regularization or reorder")
    elif l == 0:
        raise MathAssertionError("zero pivot: enable regularization or reorder")


def _base_prefactor(l: Fraction) -> Prefactor:
    """sqrt(pi/|lambda|) e^{i sgn(l) pi/4} with lambda = pi K l/2, i.e. sqrt(2/(K|l|)) e^{+-i pi/4}."""
    s = sign_of(l)
    return Prefactor.make(octant=s % 8, half2=1, halfK=-1, radicand=1 / abs(Fraction(l)))


def gauss_moment_shifted(p: int, l, shift=0, n0: int = 4, power: int | None = None) -> GaussMoment:
    """Integral over the real line of a^power exp(i pi K l a^2/2 + i shift pi a).

    ``power`` defaults to 2p; odd powers are allowed when shift != 0.
    ``shift`` is the rational sigma in the linear phase sigma*pi*a.
    """
    _check_pivot(l)
    l = Fraction(l)
    power = 2 * p if power is None else power
    if power < 0:
        raise InputError("power must be non-negative")
    sigma = Fraction(shift)
    # complete the square: center c = sigma/(K l); e^{-i pi sigma^2/(2 K l)}
    # (b - c)^power, even powers of b: int b^{2q} e^{i lam b^2} = (2q-1)!! (i/(pi K l))^q * base
    poly = [SymbolicScalar() for _ in range(n0 + 1)]
    for q in range(power // 2 + 1):
        r = power - 2 * q  # power of (-c)
        kpow = r + q
        if kpow > n0:
            continue
        if r and not sigma:
            continue
        coef = Fraction(comb(power, 2 * q) * double_factorial(2 * q - 1)) * (-sigma / l) ** r / l ** q
        poly[kpow] = poly[kpow] + SymbolicScalar.i_pi(q, coef) * SymbolicScalar.pi_power(-2 * q)
    # i^q / pi^q = (i pi)^q / pi^{2q}
    shift_series = [SymbolicScalar.i_pi(j, Fraction(1, factorial(j)) * (-(sigma ** 2) / (2 * l)) ** j) for j in range(n0 + 1)]
    ser = KSeries(poly) * KSeries(shift_series)
    return GaussMoment(_base_prefactor(l), ser)


@lru_cache(maxsize=None)
def sine_kernel(m: int, l, kmax: int) -> tuple:
    """Reduced coefficients r_k, k = 0..kmax, of the half-line kernel.

    With h = i pi/K the half-line integral

        int_0^inf a^{2m+1} sin(pi a) e^{i pi K l a^2/2} da
          = (1/2) sqrt(2/(K|l|)) e^{i sgn(l) pi/4} * i * K^{-(2m+2)} * sum_k r_k h^{k-m} ...

    is assembled in :func:`half_line_sine_moment`; r_k itself is
    (-1)^{k+m} (2m+2k+1)!! / (2k+1)! / l^{m+k+1}.
    """
    out = []
    for k in range(kmax + 1):
        c = Fraction((-1) ** (k + m) * double_factorial(2 * m + 2 * k + 1), factorial(2 * k + 1))
        out.append(c / l ** (m + k + 1) if isinstance(l, RatFunc) else c / Fraction(l) ** (m + k + 1))
    return tuple(out)


def half_line_sine_moment(m: int, l, n0: int) -> GaussMoment:
    """Exact value of int_0^inf a^{2m+1} sin(pi a) exp(i pi K l a^2/2) da.

    Computed from the Taylor series of the sine, each term a Gaussian moment.
    The result is e^{i pi/4 sgn l} sqrt(2/(K|l|)) / 2 times a 1/K series.
    """
    _check_pivot(l)
    l = Fraction(l)
    coeffs = [SymbolicScalar() for _ in range(n0 + 1)]
    # term k sits at K^{-(m+k+1)}: (-1)^k (2m+2k+1)!!/(2k+1)! i^{m+k+1} pi^{k-m} l^{-(m+k+1)}
    for k in range(max(0, n0 - m)):
        n = m + k + 1
        c = Fraction((-1) ** k * double_factorial(2 * m + 2 * k + 1), factorial(2 * k + 1)) / l ** n
        ipow = (m + k + 1) % 4
        a, b = ((1, 0), (0, 1), (-1, 0), (0, -1))[ipow]
        coeffs[n] = SymbolicScalar({k - m: (c * a, c * b)})
    pre = _base_prefactor(l) * Prefactor.make(rho=Fraction(1, 2))
    return GaussMoment(pre, KSeries(coeffs))


def half_line_trig_moment(m: int, l, n0: int) -> GaussMoment:
    """Same integral as :func:`half_line_sine_moment`, via sin = (e^{i pi a} - e^{-i pi a})/2i.

    Each exponential is a shifted Gaussian moment; this is an independent route.
    """
    l = Fraction(l)
    plus = gauss_moment_shifted(0, l, 1, n0, power=2 * m + 1)
    minus = gauss_moment_shifted(0, l, -1, n0, power=2 * m + 1)
    diff = plus.series - minus.series
    # half line (1/2, kept in the prefactor) times 1/(2i) = -i/2
    ser = diff * SymbolicScalar({0: (Fraction(0), Fraction(-1, 2))})
    return GaussMoment(plus.prefactor * Prefactor.make(rho=Fraction(1, 2)), ser)


def twist_integral_check(alpha: int, n0: int) -> tuple[bool, KSeries, KSeries]:
    """The integral form of the twist identity for one strand of colour alpha.

    Right side: -i^{1/2} e^{i pi/K} sqrt(2K)/sin(pi alpha/K) times the
    half-line integral of e^{i pi K b^2/2} sin(pi alpha b) sin(pi b).
    Left side: exp(-(i pi/2K)(alpha^2 - 1)).  Returns (equal, lhs, rhs).
    """
    N = n0 + 1
    # (1/2) int_R sin(pi alpha b) sin(pi b) e^{..} = (1/4)[M(alpha-1) - M(alpha+1)]
    m1 = gauss_moment_shifted(0, 1, alpha - 1, N)
    m2 = gauss_moment_shifted(0, 1, alpha + 1, N)
    integral = (m1.series - m2.series) * Fraction(1, 4)
    pre = m1.prefactor
    # 1/sin(pi alpha/K) = K/(pi alpha) * x/sin x, x = pi alpha/K
    x_over_sin = [Fraction(0)] * (N + 1)
    inv = _x_over_sin_coeffs(N)
    for k, v in enumerate(inv):
        if 2 * k <= N:
            x_over_sin[2 * k] = v * Fraction(alpha) ** (2 * k)
    xs = KSeries([SymbolicScalar.pi_power(n, c) for n, c in enumerate(x_over_sin)])
    body = integral.shift_down() * xs.truncate(n0) * SymbolicScalar.pi_power(-1, Fraction(1, alpha))
    e_ipk = KSeries([SymbolicScalar.i_pi(n, Fraction(1, factorial(n))) for n in range(n0 + 1)])
    body = body * e_ipk
    # -i^{1/2} sqrt(2K): octant 4 + 1, 2^{1/2} K^{1/2}
    rhs = KSeries(body.coeffs, pre * Prefactor.make(octant=5, half2=1, halfK=1)).fold_gaussian()
    lhs = KSeries([SymbolicScalar.i_pi(n, Fraction(-(alpha * alpha - 1), 2) ** n / factorial(n)) for n in range(n0 + 1)])
    return (rhs == lhs, lhs, rhs)


def _x_over_sin_coeffs(order: int) -> list[Fraction]:
    """Coefficients of x^{2k} in x / sin x."""
    m = order // 2
    a = [Fraction((-1) ** k, factorial(2 * k + 1)) for k in range(m + 1)]
    inv = [Fraction(0)] * (m + 1)
    inv[0] = Fraction(1)
    for k in range(1, m + 1):
        inv[k] = -sum((a[j] * inv[k - j] for j in range(1, k + 1)), Fraction(0))
    return inv


# ---------------------------------------------------------------------------
# one integration step


def schur_update(linking, j: int):
    """l'_ik = l_ik - l_ji l_jk / l_jj on the components other than j."""
    L = linking
    piv = L[j][j]
    _check_pivot(piv)
    keep = [i for i in range(len(L)) if i != j]
    return [[L[i][k] - L[j][i] * L[j][k] / piv for k in keep] for i in keep]


def step_integrate(s: ColorSeries, j: int, n0_out: int) -> ColorSeries:
    """Integrate out component j (an index into the current components)."""
    N = s.ncomp
    if not 0 <= j < N:
        raise InputError(f"no component {j}")
    if s.order < 2 * n0_out:
        raise InputError(f"input order {s.order} is below 2 * {n0_out}")
    l = s.linking[j][j]
    _check_pivot(l)
    sg = sign_of(l)
    out: dict = {}
    for (n, d), c in s.data.items():
        m = d[j]
        if 2 * m > n:
            raise MathAssertionError(f"input violates the Melvin-Morton bound at {(n, d)}")
        if n - m > n0_out:
            continue
        kern = sine_kernel(m, l, n0_out - (n - m))
        rest = d[:j] + d[j + 1 :]
        for k, r in enumerate(kern):
            key = (n - m + k, rest)
            v = c * r
            out[key] = out[key] + v if key in out else v
    out = {k: v for k, v in out.items() if v}
    M = N - 1
    out = data_mul(out, data_exp_const(Fraction(3 * sg, 2), M, n0_out), n0_out)
    newlink = schur_update(s.linking, j)
    keep = [i for i in range(N) if i != j]
    dress = [s.linking[j][i] * s.linking[j][i] / (2 * l) for i in keep]
    if any(dress):
        out = data_mul(out, data_exp_linear(dress, n0_out), n0_out)
    pre = s.prefactor
    if sg < 0:
        pre = pre * Prefactor.phase(4)
    deferred = s.deferred
    if isinstance(l, RatFunc):
        deferred = deferred + (l * sg,)
    else:
        pre = pre * Prefactor.sqrt(1 / abs(l))
    res = ColorSeries(
        M,
        n0_out,
        out,
        newlink,
        pre,
        s.labels[:j] + s.labels[j + 1 :],
        s.pivots + ((s.labels[j], l, sg),),
        deferred,
        s.notes,
    )
    w = res.mm_violation()
    if w is not None:
        raise MathAssertionError(f"output violates the Melvin-Morton bound at {w}")
    return res


def epsilon_regularize(s: ColorSeries) -> ColorSeries:
    """Add a formal eps to every stored diagonal (the normal form is unchanged)."""
    eps = RatFunc.eps()
    link = [[x + eps if i == k else x for k, x in enumerate(row)] for i, row in enumerate(s.linking)]
    return s.replace(linking=link, notes=s.notes + ("eps-regularized",))


def epsilon_limit(s: ColorSeries) -> ColorSeries:
    """Take eps -> 0 in every coefficient; a pole means a singular presentation."""
    try:
        data = {k: limit_at_zero(v) for k, v in s.data.items()}
        link = [[limit_at_zero(x) for x in row] for row in s.linking]
        deferred = tuple(limit_at_zero(x) for x in s.deferred)
    except ZeroDivisionError:
        raise MathAssertionError("singular presentation: pole at eps = 0 survives the limit") from None
    return s.replace(data=data, linking=link, deferred=deferred)


# ---------------------------------------------------------------------------
# meridian identities in the cyclotomic field


def meridian_sum_identity(alpha: int, K: int) -> bool:
    """exp(-(i pi/2K)(alpha^2-1)) equals the finite surgery sum over the meridian colour.

    Right side: -i^{1/2} e^{i pi/K} sqrt(2/K) / sin(pi alpha/K)
    * sum_{b=1}^{K-1} e^{i pi b^2/(2K)} sin(pi alpha b/K) sin(pi b/K).
    Checked after multiplying both sides by sin(pi alpha/K) sqrt(K).
    """
    check_prime_K(K, bound=max(K, 23))
    if not 1 <= alpha <= K - 1:
        raise InputError("alpha must lie in 1..K-1")
    n = 8 * K
    lhs = CycNumber.root(n, -2 * (alpha * alpha - 1)) * sin_pi(alpha, K) * sqrt_K(K)
    acc = CycNumber.zero(n)
    for b in range(1, K):
        acc = acc + CycNumber.root(n, 2 * b * b) * sin_pi(alpha * b, K) * sin_pi(b, K)
    rhs = -(CycNumber.root(n, K + 4) * sqrt_two(n) * acc)
    return lhs == rhs


def poisson_identity(K: int) -> tuple[bool, CycNumber, CycNumber]:
    """sum_{b=-K}^{K-1} e^{i pi b^2/(2K)} against the Fresnel value sqrt(2K) e^{i pi/4}."""
    check_prime_K(K, bound=max(K, 23))
    n = 8 * K
    terms: dict = {}
    for b in range(-K, K):
        e = (2 * b * b) % n
        terms[e] = terms.get(e, 0) + 1
    lhs = CycNumber.from_exponents(n, terms)
    rhs = sqrt_two(n) * sqrt_K(K) * CycNumber.root(n, K)
    return (lhs == rhs, lhs, rhs)
