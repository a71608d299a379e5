"""Exact WRT invariants at prime K, the Kirby-Melvin ratio and Ohtsuki coefficients."""
from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction

from .cyclotomic import (
    CycNumber,
    ModularValue,
    check_prime_K,
    legendre,
    sin_pi,
    sin_pi_terms,
    sqrt_K,
    sqrt_two,
    vee_rational,
    zeta_minus_one_expand,
)
from .errors import InputError, MathAssertionError
from .jones import FramedLink, _tmul, inv_sin1, jones_parts
from .series import KSeries, change_variable_to_zeta, inv_sinhc_coeffs
from .surgery import compute_invariants, determinant, signature


@dataclass
class WrtValue:
    K: int
    value: CycNumber
    presentation: FramedLink

    def approx(self, dps: int = 30):
        return self.value.to_complex(dps)

    def to_json(self) -> dict:
        return {"K": self.K, "Z": str(self.value), "presentation": self.presentation.to_json()}


def sqrt_two_over_K_power(N: int, K: int, order: int) -> CycNumber:
    """(2/K)^{N/2} in the field of the given order."""
    v = CycNumber.from_rational(order, Fraction(2, K) ** (N // 2))
    if N % 2:
        v = v * sqrt_two(order) * sqrt_K(K, order) / K
    return v


def z_s3(K: int) -> CycNumber:
    check_prime_K(K)
    return sqrt_two_over_K_power(1, K, 8 * K) * sin_pi(1, K)


def framing_phase(sig: int, K: int) -> CycNumber:
    """exp(-3 pi i (K-2) sig / (4K))."""
    return CycNumber.root(8 * K, -3 * (K - 2) * sig)


def color_sum(link: FramedLink, K: int, colors=None) -> CycNumber:
    """sum over colors of J(L) * prod sin(pi a_j / K); colors defaults to 1..K-1."""
    n = 8 * K
    N = link.ncomp
    colors = range(1, K) if colors is None else colors
    # group by the leftover denominators so that only a few field divisions remain
    groups: dict = {}
    for cs in itertools.product(colors, repeat=N):
        parts = jones_parts(link, list(cs), K)
        measure = Counter(cs)
        rest = []
        for a in parts.divisors:
            if measure[a] > 0:
                measure[a] -= 1
            else:
                rest.append(a)
        t = parts.terms
        for a, k in measure.items():
            for _ in range(k):
                t = _tmul(t, sin_pi_terms(a, K, n), n)
        key = (parts.s1, tuple(sorted(rest)))
        acc = groups.setdefault(key, {})
        for e, c in t.items():
            acc[e] = acc.get(e, 0) + c
    total = CycNumber.zero(n)
    for (s1, rest), t in groups.items():
        v = CycNumber.from_exponents(n, t)
        if s1 > 0:
            v = v * inv_sin1(K) ** s1
        elif s1 < 0:
            v = v * sin_pi(1, K) ** (-s1)
        for a in rest:
            v = v / sin_pi(a, K)
        total = total + v
    return total


def z_wrt(link: FramedLink, K: int) -> WrtValue:
    """Surgery sum over colors 1..K-1 on every component."""
    check_prime_K(K)
    N = link.ncomp
    sig = signature(link.linking) if N else 0
    total = color_sum(link, K) * sin_pi(1, K)
    value = total * sqrt_two_over_K_power(N + 1, K, 8 * K) * framing_phase(sig, K)
    return WrtValue(K, value, link)


def tau(link: FramedLink, K: int) -> CycNumber:
    """Z(M;K) / Z(S^3;K)."""
    return z_wrt(link, K).value / z_s3(K)


def _eigen_counts(link: FramedLink) -> tuple[int, int]:
    if link.ncomp == 0:
        return 0, 0
    if determinant(link.linking) == 0:
        raise MathAssertionError("not a rational homology sphere")
    sig = signature(link.linking)
    return (link.ncomp + sig) // 2, (link.ncomp - sig) // 2


def z_so3(link: FramedLink, K: int) -> CycNumber:
    """Odd-color surgery sum normalized by the +-1 framed unknots, in Q(zeta_K)."""
    check_prime_K(K)
    if K == 3:
        return CycNumber.one(3)
    odd = range(1, K, 2)
    bp, bm = _eigen_counts(link)
    v = color_sum(link, K, odd)
    up = color_sum(FramedLink.unknot(1), K, odd)
    um = color_sum(FramedLink.unknot(-1), K, odd)
    v = v / (up**bp * um**bm)
    try:
        return v.descend(K)
    except ValueError:
        raise MathAssertionError("odd-color invariant is not in Q(zeta_K)") from None


def z_prime_ratio(link: FramedLink, K: int) -> CycNumber:
    """tau_K / tau_3, with tau_3 conjugated when K = 1 mod 4, in Q(zeta_K)."""
    check_prime_K(K)
    if K == 3:
        return CycNumber.one(3)
    t3 = tau(link, 3)
    if t3.is_zero():
        raise MathAssertionError("Z(M;3) = 0: the Kirby-Melvin ratio is undefined")
    tk = tau(link, K)
    n = 24 * K
    t3 = t3.embed(n)
    if K % 4 == 1:
        t3 = t3.conj()
    ratio = tk.embed(n) / t3
    try:
        return ratio.descend(K)
    except ValueError:
        raise MathAssertionError("Z' is not in Q(zeta_K)") from None


def z_prime(link: FramedLink, K: int, strict: bool = False) -> CycNumber:
    """Kirby-Melvin Z'(M;K).

    The ratio tau_K / tau_3 is used whenever tau_3 != 0.  When tau_3 vanishes
    (lens spaces L(2k, 1) for instance) the ratio is undefined and the same
    invariant is taken from the odd-color sum, unless ``strict`` is set.
    """
    try:
        return z_prime_ratio(link, K)
    except MathAssertionError as e:
        if strict or "Z(M;3) = 0" not in str(e):
            raise
    return z_so3(link, K)


def ohtsuki_coefficients(link: FramedLink, K: int) -> list[int]:
    """Integer a_n with Z'(M;K) = sum a_n (zeta_K - 1)^n."""
    return zeta_minus_one_expand(z_prime(link, K), K)


def perturbative_lambdas(link: FramedLink, n0: int) -> list[Fraction]:
    """lambda_0..lambda_n0 from S_1..S_n0 through the zeta - 1 change of variable."""
    res = compute_invariants(link, n0)
    delta = KSeries(res.delta)
    ih = inv_sinhc_coeffs(n0)
    inv = KSeries.from_reduced([ih[n // 2] if n % 2 == 0 else 0 for n in range(n0 + 1)])
    return [x.to_rational() for x in change_variable_to_zeta(inv * delta, n0)]


@dataclass
class CongruenceRow:
    n: int
    a: int
    a_mod_K: int
    lam: Fraction
    lambda_vee: int
    ok: bool

    def to_json(self) -> dict:
        return {"n": self.n, "a_mod_K": self.a_mod_K, "lambda": str(self.lam), "lambda_vee": self.lambda_vee, "ok": self.ok}


@dataclass
class CongruenceReport:
    K: int
    h1: int
    integral: bool
    a: list
    rows: list = field(default_factory=list)
    legendre: int = 1

    @property
    def ok(self) -> bool:
        return self.integral and bool(self.rows) and all(r.ok for r in self.rows)

    def to_json(self) -> dict:
        return {
            "K": self.K,
            "h1": self.h1,
            "legendre": self.legendre,
            "Zprime_integral": self.integral,
            "a": self.a,
            "congruence": [r.to_json() for r in self.rows],
        }


def ohtsuki_congruence_check(link: FramedLink, K: int, n0: int) -> CongruenceReport:
    """Compare a_n mod K with the reduction of (|H|/K) lambda_n / |H|.

    lambda_n comes from S_n alone; the factor 1/|H| restores the |H_1| power
    that the generating function carries, and the Legendre symbol is the
    sign of the square root of |H| in Z[zeta_K] reduced mod (zeta_K - 1).
    """
    check_prime_K(K)
    H = abs(int(determinant(link.linking))) if link.ncomp else 1
    if H == 0:
        raise MathAssertionError("not a rational homology sphere")
    if H % K == 0:
        raise InputError(f"|H_1| = {H} is divisible by K = {K}")
    top = min(n0, (K - 3) // 2)
    if top < 0:
        raise InputError("K too small for any congruence")
    leg = legendre(H, K)
    try:
        a = ohtsuki_coefficients(link, K)
    except MathAssertionError:
        return CongruenceReport(K, H, False, [], [], leg)
    lam = perturbative_lambdas(link, max(top, 1))
    rows = []
    for k in range(top + 1):
        v: ModularValue = vee_rational(lam[k] * leg / H, K)
        am = a[k] % K
        rows.append(CongruenceRow(k, a[k], am, lam[k], v.residue, am == v.residue))
    return CongruenceReport(K, H, True, a, rows, leg)
