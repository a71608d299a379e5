"""Colored Jones generators for a small family of framed links.

Each family has a closed form that is evaluated two ways: exactly at a prime
K inside the cyclotomic field of order 8K, and as a 1/K series in normal
form (diagonal framing phase and the product of colors stripped).

Conventions: [n] = sin(pi n/K)/sin(pi/K), theta_a = exp(i pi (a^2-1)/(2K)).
A framing shift by f on a component multiplies by theta_a^f.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import factorial

from .cyclotomic import CycNumber, check_prime_K, sin_pi, sin_pi_terms
from .errors import InputError
from .scalars import SymbolicScalar
from .series import (
    ColorSeries,
    color_series_mul,
    data_add,
    data_exp_const,
    data_mul,
    data_S,
    data_S_inverse,
    disjoint_union,
    inv_sinhc_coeffs,
)

FAMILIES = ("empty", "unknot", "hopf_chain", "torus_knot", "disjoint_union", "connected_sum")


@dataclass(frozen=True)
class FramedLink:
    """A surgery presentation from one of the supported families."""

    family: str
    framings: tuple = ()
    m: int = 0
    p: int = 0
    children: tuple = field(default=())

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise InputError(f"unknown link family {self.family!r}")
        if self.family == "unknot" and len(self.framings) != 1:
            raise InputError("unknot takes one framing")
        if self.family == "hopf_chain" and len(self.framings) < 1:
            raise InputError("hopf_chain needs at least one framing")
        if self.family == "torus_knot":
            if len(self.framings) != 1:
                raise InputError("torus_knot takes one framing")
            from math import gcd

            if self.m < 1 or self.p == 0 or gcd(self.m, abs(self.p)) != 1:
                raise InputError("torus_knot needs m >= 1, p != 0 coprime")
        if self.family == "connected_sum":
            if not self.children or any(c.ncomp != 1 for c in self.children):
                raise InputError("connected_sum takes knots (one component each)")
        for f in self.framings:
            if not isinstance(f, int):
                raise InputError("framings must be integers")

    # constructors -----------------------------------------------------
    @classmethod
    def empty(cls) -> "FramedLink":
        return cls("empty")

    @classmethod
    def unknot(cls, framing: int) -> "FramedLink":
        return cls("unknot", (framing,))

    @classmethod
    def hopf_chain(cls, framings) -> "FramedLink":
        return cls("hopf_chain", tuple(framings))

    @classmethod
    def torus_knot(cls, m: int, p: int, framing: int = 0) -> "FramedLink":
        return cls("torus_knot", (framing,), m, p)

    @classmethod
    def disjoint_union(cls, children) -> "FramedLink":
        return cls("disjoint_union", children=tuple(children))

    @classmethod
    def connected_sum(cls, children) -> "FramedLink":
        return cls("connected_sum", children=tuple(children))

    # structure --------------------------------------------------------
    @property
    def ncomp(self) -> int:
        if self.family == "empty":
            return 0
        if self.family in ("unknot", "torus_knot", "connected_sum"):
            return 1
        if self.family == "hopf_chain":
            return len(self.framings)
        return sum(c.ncomp for c in self.children)

    @property
    def linking(self) -> tuple:
        N = self.ncomp
        if self.family in ("unknot", "torus_knot"):
            return ((self.framings[0],),)
        if self.family == "connected_sum":
            return ((sum(c.linking[0][0] for c in self.children),),)
        if self.family == "hopf_chain":
            rows = [[0] * N for _ in range(N)]
            for i, f in enumerate(self.framings):
                rows[i][i] = f
                if i + 1 < N:
                    rows[i][i + 1] = rows[i + 1][i] = 1
            return tuple(tuple(r) for r in rows)
        rows = [[0] * N for _ in range(N)]
        off = 0
        for c in self.children:
            for i, r in enumerate(c.linking):
                for j, v in enumerate(r):
                    rows[off + i][off + j] = v
            off += c.ncomp
        return tuple(tuple(r) for r in rows)

    def is_split(self) -> bool:
        L = self.linking
        return all(L[i][j] == 0 for i in range(len(L)) for j in range(len(L)) if i != j)

    def sublink(self, keep) -> "FramedLink":
        """Sublink of a split union (or single component) keeping the given component indices."""
        keep = sorted(keep)
        comps = self.components()
        if not self.is_split() and len(keep) not in (0, self.ncomp):
            raise InputError("sublinks are only supported for algebraically split unions")
        picked = [comps[i] for i in keep]
        if not picked:
            return FramedLink.empty()
        if len(picked) == 1:
            return picked[0]
        return FramedLink.disjoint_union(picked)

    def components(self) -> list:
        """Split pieces as individual one-component links, when that makes sense."""
        if self.family == "disjoint_union":
            out = []
            for c in self.children:
                out.extend(c.components() if c.ncomp != 1 else [c])
            return out
        if self.ncomp == 1:
            return [self]
        if self.family == "hopf_chain":
            raise InputError("a Hopf chain does not split into components")
        return []

    # JSON -------------------------------------------------------------
    def to_json(self) -> dict:
        if self.family == "empty":
            return {"family": "empty"}
        if self.family == "unknot":
            return {"family": "unknot", "framing": self.framings[0]}
        if self.family == "hopf_chain":
            return {"family": "hopf_chain", "framings": list(self.framings)}
        if self.family == "torus_knot":
            return {"family": "torus_knot", "m": self.m, "p": self.p, "framing": self.framings[0]}
        return {"family": self.family, "children": [c.to_json() for c in self.children]}

    _FIELDS = {
        "empty": set(),
        "unknot": {"framing"},
        "hopf_chain": {"framings"},
        "torus_knot": {"m", "p", "framing"},
        "disjoint_union": {"children"},
        "connected_sum": {"children"},
    }

    @classmethod
    def from_json(cls, obj) -> "FramedLink":
        if isinstance(obj, str):
            if obj.strip() == "empty":
                return cls.empty()
            try:
                obj = json.loads(obj)
            except json.JSONDecodeError as e:
                raise InputError(f"bad link descriptor: {e}") from None
        if not isinstance(obj, dict) or "family" not in obj:
            raise InputError("link descriptor must be an object with a 'family' field")
        fam = obj["family"]
        if fam not in cls._FIELDS:
            raise InputError(f"unknown link family {fam!r}")
        extra = set(obj) - cls._FIELDS[fam] - {"family"}
        if extra:
            raise InputError(f"unknown fields for {fam}: {sorted(extra)}")
        try:
            if fam == "empty":
                return cls.empty()
            if fam == "unknot":
                return cls.unknot(_int(obj["framing"]))
            if fam == "hopf_chain":
                return cls.hopf_chain([_int(f) for f in obj["framings"]])
            if fam == "torus_knot":
                return cls.torus_knot(_int(obj["m"]), _int(obj["p"]), _int(obj.get("framing", 0)))
            kids = [cls.from_json(c) for c in obj["children"]]
            return cls(fam, children=tuple(kids))
        except KeyError as e:
            raise InputError(f"missing field {e} in {fam} descriptor") from None

    def __str__(self):
        return json.dumps(self.to_json(), separators=(",", ":"))


def _int(x) -> int:
    if isinstance(x, bool) or not isinstance(x, int):
        raise InputError(f"expected an integer, got {x!r}")
    return x


# ---------------------------------------------------------------------------
# exact evaluation


def _tmul(a: dict, b: dict, n: int) -> dict:
    out: dict = {}
    for e1, c1 in a.items():
        for e2, c2 in b.items():
            e = (e1 + e2) % n
            out[e] = out.get(e, 0) + c1 * c2
    return {e: c for e, c in out.items() if c}


def _phase(e: int, n: int) -> dict:
    return {e % n: 1}


@dataclass
class JonesParts:
    """J = terms / sin(pi/K)^s1 / prod_{a in divisors} sin(pi a/K)."""

    terms: dict
    s1: int
    divisors: list


def jones_parts(link: FramedLink, colors, K: int) -> JonesParts:
    n = 8 * K
    colors = list(colors)
    f = link.family
    if f == "empty":
        return JonesParts({0: 1}, 0, [])
    if f == "unknot" or (f == "hopf_chain" and link.ncomp == 1):
        a = colors[0]
        t = _tmul(sin_pi_terms(a, K, n), _phase(2 * link.framings[0] * (a * a - 1), n), n)
        return JonesParts(t, 1, [])
    if f == "hopf_chain":
        N = link.ncomp
        t = {0: 1}
        for j in range(N - 1):
            t = _tmul(t, sin_pi_terms(colors[j] * colors[j + 1], K, n), n)
        ph = sum(2 * fj * (a * a - 1) for fj, a in zip(link.framings, colors))
        t = _tmul(t, _phase(ph, n), n)
        return JonesParts(t, 1, [colors[j] for j in range(1, N - 1)])
    if f == "torus_knot":
        a = colors[0]
        m, p = link.m, link.p
        t: dict = {}
        for j in range(a):
            tt = a - 1 - 2 * j
            d = m * tt + 1
            part = _tmul(sin_pi_terms(d, K, n), _phase(2 * p * tt * (m * tt + 2), n), n)
            for e, c in part.items():
                t[e] = t.get(e, 0) + c
        t = {e: c for e, c in t.items() if c}
        fr = link.framings[0] - m * p
        t = _tmul(t, _phase(2 * fr * (a * a - 1), n), n)
        return JonesParts(t, 1, [])
    if f == "disjoint_union":
        out = JonesParts({0: 1}, 0, [])
        off = 0
        for c in link.children:
            part = jones_parts(c, colors[off : off + c.ncomp], K)
            off += c.ncomp
            out = JonesParts(_tmul(out.terms, part.terms, n), out.s1 + part.s1, out.divisors + part.divisors)
        return out
    if f == "connected_sum":
        a = colors[0]
        out = JonesParts({0: 1}, 0, [])
        for c in link.children:
            part = jones_parts(c, [a], K)
            out = JonesParts(_tmul(out.terms, part.terms, n), out.s1 + part.s1, out.divisors + part.divisors)
        k = len(link.children) - 1
        return JonesParts(out.terms, out.s1 - k, out.divisors + [a] * k)
    raise InputError(f"unsupported family {f}")


@lru_cache(maxsize=None)
def inv_sin1(K: int) -> CycNumber:
    """1/sin(pi/K) = 2i z^4 / (zeta_K - 1), with 1/(zeta - 1) = (1/K) sum_j j zeta^j."""
    n = 8 * K
    terms = {(4 + 2 * K + 8 * j) % n: Fraction(2 * j, K) for j in range(1, K)}
    return CycNumber.from_exponents(n, terms)


def parts_value(parts: JonesParts, K: int) -> CycNumber:
    v = CycNumber.from_exponents(8 * K, parts.terms)
    if parts.s1 > 0:
        v = v * inv_sin1(K) ** parts.s1
    elif parts.s1 < 0:
        v = v * sin_pi(1, K) ** (-parts.s1)
    for a in parts.divisors:
        v = v / sin_pi(a, K)
    return v


def jones_exact(link: FramedLink, colors, K: int) -> CycNumber:
    check_prime_K(K)
    colors = list(colors)
    if len(colors) != link.ncomp:
        raise InputError(f"expected {link.ncomp} colors, got {len(colors)}")
    for a in colors:
        if not isinstance(a, int) or not 1 <= a <= K - 1:
            raise InputError(f"color {a!r} outside 1..K-1")
    return parts_value(jones_parts(link, colors, K), K)


def quantum_integer(a: int, K: int) -> CycNumber:
    return sin_pi(a, K) * inv_sin1(K)


# ---------------------------------------------------------------------------
# fusion


@dataclass(frozen=True)
class FusionRange:
    a1: int
    a2: int
    admissible: tuple


def fusion_range(a1: int, a2: int) -> FusionRange:
    if a1 < 1 or a2 < 1:
        raise InputError("colors must be >= 1")
    return FusionRange(a1, a2, tuple(range(abs(a1 - a2) + 1, a1 + a2, 2)))


def theta(a: int, K: int, power: int = 1) -> CycNumber:
    return CycNumber.root(8 * K, 2 * power * (a * a - 1))


def fusion_identities_check(a1: int, a2: int, K: int, beta: int = 2) -> dict:
    """Exact checks of the fusion rules on the 2-cable of the unknot.

    (i) [a1][a2] = sum [a]; (ii) sum [a] theta_a^{-1} equals the framed
    cable theta_{a1}^{-1} theta_{a2}^{-1} [a1 a2]; (iii) the meridian of
    colour beta: sum [a] [a beta]/[a] = [a1 beta][a2 beta]/[beta], i.e. the
    three-component chain with colours (a1, beta, a2).
    """
    check_prime_K(K)
    if a1 + a2 - 1 > K - 1:
        raise InputError("a1 + a2 - 1 must not exceed K - 1")
    rng = fusion_range(a1, a2).admissible
    q = lambda x: quantum_integer(x, K)  # noqa: E731
    report = {}
    lhs = q(a1) * q(a2)
    rhs = sum((q(a) for a in rng), CycNumber.zero(8 * K))
    report["product"] = (lhs == rhs, str(lhs), str(rhs))
    lhs = sum((q(a) * theta(a, K, -1) for a in rng), CycNumber.zero(8 * K))
    rhs = theta(a1, K, -1) * theta(a2, K, -1) * q(a1 * a2)
    report["twist"] = (lhs == rhs, str(lhs), str(rhs))
    lhs = sum((q(a * beta) for a in rng), CycNumber.zero(8 * K))
    rhs = jones_exact(FramedLink.hopf_chain([0, 0, 0]), [a1, beta, a2], K)
    report["meridian"] = (lhs == rhs, str(lhs), str(rhs))
    report["ok"] = all(v[0] for k, v in report.items() if k != "ok")
    return report


# ---------------------------------------------------------------------------
# 1/K series


def _empty_data(N: int) -> dict:
    return {(0, (0,) * N): Fraction(1)}


def _parity_sum_poly(r: int) -> list[Fraction]:
    """Coefficients (in alpha) of sum_{j=0}^{alpha-1} (alpha-1-2j)^r."""
    pts = list(range(r + 2))
    vals = [Fraction(sum((a - 1 - 2 * j) ** r for j in range(a))) for a in pts]
    # Lagrange interpolation into monomial coefficients
    coeffs = [Fraction(0)] * (r + 2)
    for i, xi in enumerate(pts):
        if not vals[i]:
            continue
        basis = [Fraction(1)]
        denom = Fraction(1)
        for j, xj in enumerate(pts):
            if j == i:
                continue
            basis = [Fraction(0)] + basis
            for k in range(len(basis) - 1):
                basis[k] -= xj * basis[k + 1]
            denom *= xi - xj
        for k, b in enumerate(basis):
            coeffs[k] += vals[i] * b / denom
    return coeffs


def _bivar_mul(a: dict, b: dict, order: int) -> dict:
    out: dict = {}
    for (n1, d1), c1 in a.items():
        for (n2, d2), c2 in b.items():
            if n1 + n2 > order:
                continue
            k = (n1 + n2, d1 + d2)
            out[k] = out.get(k, 0) + c1 * c2
    return {k: v for k, v in out.items() if v}


def _torus_data(m: int, p: int, framing: int, order: int) -> dict:
    """Normal-form data of the (m, p) torus knot with the given framing."""
    top = order + 1
    # summand exp((h/2)(p m t^2 + 2 p t)) * sinh(h (m t + 1)) as {(n, deg_t): c}
    ex: dict = {(0, 0): Fraction(1)}
    gen = {(1, 2): Fraction(p * m, 2), (1, 1): Fraction(p)}
    term = dict(ex)
    for k in range(1, top + 1):
        term = {kk: v / k for kk, v in _bivar_mul(term, gen, top).items()}
        for kk, v in term.items():
            ex[kk] = ex.get(kk, 0) + v
    sh: dict = {}
    for k in range(1, top + 1, 2):
        # (m t + 1)^k / k!
        for j in range(k + 1):
            c = Fraction(factorial(k), factorial(j) * factorial(k - j)) * m ** j / factorial(k)
            sh[(k, j)] = sh.get((k, j), 0) + c
    summand = _bivar_mul(ex, sh, top)
    # sum over t: keep even powers, replace t^r by the parity power sum in alpha
    summed: dict = {}
    for (n, r), c in summand.items():
        if r % 2:
            continue
        for e, pc in enumerate(_parity_sum_poly(r)):
            if pc:
                summed[(n - 1, e)] = summed.get((n - 1, e), 0) + c * pc
    summed = {k: v for k, v in summed.items() if v}
    # h / sinh(h)
    inv = {(2 * k, 0): v for k, v in enumerate(inv_sinhc_coeffs(order)) if 2 * k <= order}
    out = _bivar_mul(summed, inv, order)
    # exp(-(h/2) m p (alpha^2 - 1)) and exp(-h f / 2); the framing phase is exp((h/2) f (alpha^2-1))
    # and the normal form strips exp((h/2) f alpha^2).
    lin = {(1, 2): Fraction(-m * p, 2), (1, 0): Fraction(m * p - framing, 2)}
    ex2: dict = {(0, 0): Fraction(1)}
    term = dict(ex2)
    for k in range(1, order + 1):
        term = {kk: v / k for kk, v in _bivar_mul(term, lin, order).items()}
        for kk, v in term.items():
            ex2[kk] = ex2.get(kk, 0) + v
    out = _bivar_mul(out, ex2, order)
    data = {}
    for (n, e), c in out.items():
        if e % 2 == 0:
            raise AssertionError("torus knot series is not odd in the color")
        data[(n, ((e - 1) // 2,))] = c
    return data


def jones_series(link: FramedLink, n0: int) -> ColorSeries:
    """Normal-form 1/K series of the colored Jones polynomial to order n0."""
    if n0 < 0:
        raise InputError("order must be non-negative")
    N = link.ncomp
    f = link.family
    lk = [[Fraction(x) for x in r] for r in link.linking]
    if f == "empty":
        return ColorSeries(0, n0, _empty_data(0), [])
    if f == "unknot" or (f == "hopf_chain" and N == 1):
        d = data_mul(data_exp_const(Fraction(-link.framings[0], 2), 1, n0), data_S((0,), 1, n0), n0)
        return ColorSeries(1, n0, d, lk)
    if f == "hopf_chain":
        d = data_exp_const(Fraction(-sum(link.framings), 2), N, n0)
        for j in range(N - 1):
            d = data_mul(d, data_S((j, j + 1), N, n0), n0)
        for j in range(1, N - 1):
            d = data_mul(d, data_S_inverse(j, N, n0), n0)
        return ColorSeries(N, n0, d, lk)
    if f == "torus_knot":
        return ColorSeries(1, n0, _torus_data(link.m, link.p, link.framings[0], n0), lk)
    if f == "disjoint_union":
        out = None
        for c in link.children:
            s = jones_series(c, n0)
            out = s if out is None else disjoint_union(out, s)
        return out if out is not None else jones_series(FramedLink.empty(), n0)
    if f == "connected_sum":
        out = None
        for c in link.children:
            s = jones_series(c, n0)
            out = s if out is None else color_series_mul(out, s)
        inv = data_S_inverse(0, 1, n0)
        d = out.data
        for _ in range(len(link.children) - 1):
            d = data_mul(d, inv, n0)
        return out.replace(data=d)
    raise InputError(f"unsupported family {f}")


def extract_D(s: ColorSeries) -> dict:
    """(degrees, n) -> coefficient of x^degrees K^{-n} in the normal form."""
    return {(d, n): SymbolicScalar.i_pi(n, 1) * c for (n, d), c in s.data.items()}


def check_mm_bound(s: ColorSeries):
    """(True, None) or (False, witness monomial)."""
    w = s.mm_violation()
    return (w is None, w)


def check_asl_bound(s: ColorSeries):
    """(True/False, witness) or ('not-applicable', None) for links that are not split."""
    L = s.linking
    if any(L[i][j] != 0 for i in range(s.ncomp) for j in range(s.ncomp) if i != j):
        return ("not-applicable", None)
    w = s.asl_violation()
    return (w is None, w)


def series_numeric(link: FramedLink, colors, K, n0: int, dps: int = 40):
    """Value of J reconstructed from its truncated series at a numeric K."""
    import mpmath

    s = jones_series(link, n0)
    with mpmath.workdps(dps):
        v = s.evaluate(colors, K, dps)
        h = mpmath.mpc(0, mpmath.pi) / K
        L = link.linking
        for j, a in enumerate(colors):
            v *= mpmath.exp(h / 2 * L[j][j] * a * a) * a
        return v


def exact_numeric(link: FramedLink, colors, K, dps: int = 40):
    """Closed-form value of J at any real K (not necessarily prime), numerically."""
    import mpmath

    with mpmath.workdps(dps):
        pi = mpmath.pi

        def qi(n):
            return mpmath.sin(pi * n / K) / mpmath.sin(pi / K)

        def th(a, pw):
            return mpmath.expjpi(mpmath.mpf(pw * (a * a - 1)) / (2 * K))

        f = link.family
        if f == "empty":
            return mpmath.mpc(1)
        if f == "unknot" or (f == "hopf_chain" and link.ncomp == 1):
            return qi(colors[0]) * th(colors[0], link.framings[0])
        if f == "hopf_chain":
            v = mpmath.mpc(1)
            for j in range(link.ncomp - 1):
                v *= qi(colors[j] * colors[j + 1])
            for j in range(1, link.ncomp - 1):
                v /= qi(colors[j])
            for fj, a in zip(link.framings, colors):
                v *= th(a, fj)
            return v
        if f == "torus_knot":
            a, m, p = colors[0], link.m, link.p
            v = mpmath.mpc(0)
            for j in range(a):
                d = m * (a - 1 - 2 * j) + 1
                v += mpmath.expjpi(mpmath.mpf(p * (d * d - 1)) / (2 * K * m)) * qi(d)
            return v * th(a, link.framings[0] - m * p)
        if f == "disjoint_union":
            v = mpmath.mpc(1)
            off = 0
            for c in link.children:
                v *= exact_numeric(c, colors[off : off + c.ncomp], K, dps)
                off += c.ncomp
            return v
        if f == "connected_sum":
            v = mpmath.mpc(1)
            for c in link.children:
                v *= exact_numeric(c, colors, K, dps)
            return v / qi(colors[0]) ** (len(link.children) - 1)
    raise InputError(f"unsupported family {link.family}")


def family_grid() -> list[FramedLink]:
    """The shipped families used by the bound sweeps."""
    U, H, T = FramedLink.unknot, FramedLink.hopf_chain, FramedLink.torus_knot
    out = [U(f) for f in (-3, -1, 0, 1, 2, 5)]
    out += [H(fs) for fs in ([0, 0], [2, 1], [-1, 3], [0, 0, 0], [1, -2, 3], [2, 2, 2, 2])]
    out += [T(m, p, f) for m, p, f in ((2, 3, 0), (2, 3, 1), (2, -3, -1), (2, 5, 0), (3, 4, 2), (3, 2, 0))]
    out += [
        FramedLink.disjoint_union([U(2), U(-3)]),
        FramedLink.disjoint_union([T(2, 3, 1), U(2), U(-1)]),
        FramedLink.disjoint_union([H([1, 1]), U(4)]),
        FramedLink.connected_sum([T(2, 3, 0), T(2, -3, 0)]),
        FramedLink.connected_sum([T(2, 3, 1), U(2), T(2, 5, 0)]),
    ]
    return out
