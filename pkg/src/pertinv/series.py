"""Truncated 1/K series.

Two containers live here.

``KSeries`` is a univariate series sum_n c_n K^{-n} with SymbolicScalar
coefficients and a Prefactor.  It is what the Delta/S conversions act on.

``ColorSeries`` is a multivariate series in 1/K whose coefficients are
polynomials in the squared colors x_j = alpha_j^2.  Every series the
pipeline builds is graded by h = i*pi/K: the coefficient of K^{-n} is
(i*pi)^n times an element of the base field (Q, or Q(eps) in regularized
runs).  ColorSeries therefore stores that reduced coefficient and restores
the (i*pi)^n on request, which keeps the inner loops on plain rationals.
"""
from __future__ import annotations

import json
from fractions import Fraction
from math import factorial
from typing import Iterable

from .errors import InputError, MathAssertionError
from .ratfunc import RatFunc
from .scalars import Prefactor, SymbolicScalar

ONE = Fraction(1)


# ---------------------------------------------------------------------------
# univariate series in 1/K


class KSeries:
    """sum_{n=0}^{order} c_n K^{-n}, times a Prefactor."""

    def __init__(self, coeffs: Iterable, prefactor: Prefactor | None = None, notes: tuple = ()):
        cs = []
        for c in coeffs:
            cs.append(c if isinstance(c, SymbolicScalar) else SymbolicScalar.rational(c))
        if not cs:
            raise InputError("a KSeries needs at least the constant term")
        self.coeffs = cs
        self.prefactor = prefactor or Prefactor()
        self.notes = tuple(notes)

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    @classmethod
    def from_reduced(cls, reduced: Iterable, prefactor: Prefactor | None = None) -> "KSeries":
        """Coefficient n is reduced[n] * (i*pi)^n."""
        return cls([SymbolicScalar.i_pi(n, 1) * r for n, r in enumerate(reduced)], prefactor)

    @classmethod
    def one(cls, order: int) -> "KSeries":
        return cls([1] + [0] * order)

    @classmethod
    def k_inverse(cls, order: int) -> "KSeries":
        """The series 1/K itself."""
        return cls([0, 1] + [0] * (order - 1)) if order >= 1 else cls([0])

    def __getitem__(self, n: int) -> SymbolicScalar:
        return self.coeffs[n]

    def truncate(self, order: int) -> "KSeries":
        if order > self.order:
            raise InputError("cannot extend a truncated series")
        return KSeries(self.coeffs[: order + 1], self.prefactor, self.notes)

    def fold_gaussian(self) -> "KSeries":
        """Move the Gaussian-rational part of the prefactor into the coefficients."""
        g, rest = self.prefactor.split_gaussian()
        return KSeries([c * g for c in self.coeffs], rest, self.notes)

    def shift_down(self) -> "KSeries":
        """Multiply by K; the constant term must vanish."""
        if not self.coeffs[0].is_zero():
            raise MathAssertionError("cannot multiply by K: constant term is not zero")
        return KSeries(self.coeffs[1:], self.prefactor, self.notes)

    def reduced(self) -> list:
        """c_n / (i*pi)^n, each checked to be rational."""
        out = []
        for n, c in enumerate(self.coeffs):
            r = c.mul_i_pi(-n)
            if not r.is_rational():
                raise MathAssertionError(f"coefficient {n} is not graded by i*pi/K: {c}")
            out.append(r.to_rational())
        return out

    def _pair(self, other: "KSeries"):
        n = min(self.order, other.order)
        notes = self.notes + other.notes
        if self.order != other.order:
            notes = notes + (f"truncated to order {n} (inputs {self.order}, {other.order})",)
        return n, notes

    def __add__(self, other):
        if not isinstance(other, KSeries):
            other = KSeries([other] + [0] * self.order, self.prefactor)
        if other.prefactor != self.prefactor:
            raise InputError("cannot add series with different prefactors")
        n, notes = self._pair(other)
        return KSeries([self.coeffs[i] + other.coeffs[i] for i in range(n + 1)], self.prefactor, notes)

    __radd__ = __add__

    def __neg__(self):
        return KSeries([-c for c in self.coeffs], self.prefactor, self.notes)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, SymbolicScalar)):
            return KSeries([c * other for c in self.coeffs], self.prefactor, self.notes)
        if isinstance(other, Prefactor):
            return KSeries(self.coeffs, self.prefactor * other, self.notes)
        if not isinstance(other, KSeries):
            return NotImplemented
        n, notes = self._pair(other)
        out = []
        for k in range(n + 1):
            acc = SymbolicScalar()
            for i in range(k + 1):
                a, b = self.coeffs[i], other.coeffs[k - i]
                if not a.is_zero() and not b.is_zero():
                    acc = acc + a * b
            out.append(acc)
        return KSeries(out, self.prefactor * other.prefactor, notes)

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, KSeries):
            return NotImplemented
        return self.coeffs == other.coeffs and self.prefactor == other.prefactor

    def __repr__(self):
        body = " + ".join(f"({c})K^-{n}" for n, c in enumerate(self.coeffs) if not c.is_zero())
        return f"KSeries[{self.prefactor}]({body or '0'}; order {self.order})"

    def to_json(self) -> dict:
        return {"order": self.order, "prefactor": str(self.prefactor), "coeffs": [str(c) for c in self.coeffs]}


def series_exp(s: KSeries) -> KSeries:
    """exp of a series without constant term."""
    if not s.coeffs[0].is_zero():
        raise InputError("exp needs a series with zero constant term")
    if not s.prefactor.is_trivial():
        raise InputError("exp needs a trivial prefactor")
    n0 = s.order
    e = [SymbolicScalar.rational(1)] + [SymbolicScalar()] * n0
    for n in range(1, n0 + 1):
        acc = SymbolicScalar()
        for k in range(1, n + 1):
            if not s.coeffs[k].is_zero() and not e[n - k].is_zero():
                acc = acc + s.coeffs[k] * e[n - k] * k
        e[n] = acc / n
    return KSeries(e, notes=s.notes)


def series_log(s: KSeries) -> KSeries:
    """log of a series with constant term 1 and trivial prefactor."""
    if s.coeffs[0] != SymbolicScalar.rational(1) or not s.prefactor.is_trivial():
        raise InputError("log needs constant term 1 and a trivial prefactor")
    n0 = s.order
    f = [SymbolicScalar()] * (n0 + 1)
    for n in range(1, n0 + 1):
        acc = s.coeffs[n] * n
        for k in range(1, n):
            if not f[k].is_zero() and not s.coeffs[n - k].is_zero():
                acc = acc - f[k] * s.coeffs[n - k] * k
        f[n] = acc / n
    return KSeries(f, notes=s.notes)


def sinc_series(order: int) -> KSeries:
    """K sin(pi/K) / pi = sinh(h)/h with h = i*pi/K."""
    return KSeries.from_reduced([Fraction(1, factorial(n + 1)) if n % 2 == 0 else 0 for n in range(order + 1)])


def sn_from_delta(d: KSeries) -> list[SymbolicScalar]:
    """S_1..S_n0 from sum Delta_n K^{-n} = exp(sum S_n (i pi/K)^n)."""
    if d.coeffs[0] != SymbolicScalar.rational(1):
        raise MathAssertionError(f"Delta_0 must be 1, got {d.coeffs[0]}")
    lg = series_log(d)
    out = []
    for n in range(1, d.order + 1):
        s = lg.coeffs[n].mul_i_pi(-n)
        if not s.is_rational():
            raise MathAssertionError(f"pi-cancellation failure at S_{n}: {s}")
        out.append(s)
    return out


def delta_from_sn(s: list, order: int | None = None) -> KSeries:
    order = len(s) if order is None else order
    coeffs = [SymbolicScalar()] + [
        SymbolicScalar.i_pi(n, 1) * (s[n - 1] if n - 1 < len(s) else 0) for n in range(1, order + 1)
    ]
    return series_exp(KSeries(coeffs))


def _log1p_powers(n0: int) -> list[list[Fraction]]:
    """Coefficient lists of log(1+w)^n for n = 0..n0, truncated at w^n0."""
    lg = [Fraction(0)] + [Fraction((-1) ** (m + 1), m) for m in range(1, n0 + 1)]
    pw = [[Fraction(1)] + [Fraction(0)] * n0]
    for _ in range(n0):
        prev = pw[-1]
        nxt = [Fraction(0)] * (n0 + 1)
        for i, a in enumerate(prev):
            if a:
                for j in range(1, n0 + 1 - i):
                    nxt[i + j] += a * lg[j]
        pw.append(nxt)
    return pw


def change_variable_to_zeta(s: KSeries, n0: int | None = None) -> list[SymbolicScalar]:
    """Coefficients lambda_n of s rewritten as a series in w = exp(2 pi i/K) - 1.

    With y = 2 pi i / K we have 1/K = y/(2 pi i) and y = log(1 + w).
    """
    n0 = s.order if n0 is None else n0
    if n0 > s.order:
        raise InputError("requested more terms than the series carries")
    if not s.prefactor.is_trivial():
        raise InputError("series must carry a trivial prefactor")
    pw = _log1p_powers(n0)
    two_pi_i = SymbolicScalar.i_pi(1, 2)
    lam = [SymbolicScalar() for _ in range(n0 + 1)]
    for n in range(n0 + 1):
        c = s.coeffs[n] / (two_pi_i ** n)
        if c.is_zero():
            continue
        for k in range(n0 + 1):
            if pw[n][k]:
                lam[k] = lam[k] + c * pw[n][k]
    for k, v in enumerate(lam):
        if not v.is_rational():
            raise MathAssertionError(f"lambda_{k} is not rational: {v}")
    return lam


def zeta_series_to_k(lam: list, order: int) -> KSeries:
    """sum lambda_n (exp(2 pi i/K) - 1)^n as a series in 1/K."""
    # w = sum_{m>=1} (2 pi i)^m / m! K^{-m}
    w = KSeries([0] + [SymbolicScalar.i_pi(m, Fraction(2 ** m, factorial(m))) for m in range(1, order + 1)])
    out = KSeries([0] * (order + 1))
    p = KSeries.one(order)
    for c in lam:
        out = out + p * (c if isinstance(c, SymbolicScalar) else SymbolicScalar.rational(c))
        p = p * w
    return out


# ---------------------------------------------------------------------------
# multivariate data helpers; keys are (n, degs) with degs a tuple


def _zero(x) -> bool:
    if isinstance(x, SymbolicScalar):
        return x.is_zero()
    return not x


def data_add(a: dict, b: dict) -> dict:
    out = dict(a)
    for k, v in b.items():
        if k in out:
            s = out[k] + v
            if _zero(s):
                del out[k]
            else:
                out[k] = s
        elif not _zero(v):
            out[k] = v
    return out


def data_mul(a: dict, b: dict, order: int) -> dict:
    out: dict = {}
    for (n1, d1), c1 in a.items():
        if n1 > order:
            continue
        for (n2, d2), c2 in b.items():
            n = n1 + n2
            if n > order:
                continue
            key = (n, tuple(x + y for x, y in zip(d1, d2)))
            v = c1 * c2
            if key in out:
                out[key] = out[key] + v
            else:
                out[key] = v
    return {k: v for k, v in out.items() if not _zero(v)}


def data_scale(a: dict, c) -> dict:
    return {k: v * c for k, v in a.items() if not _zero(v * c)}


def data_exp_linear(v: list, order: int) -> dict:
    """exp(h * sum_i v_i x_i) with v_i in the base field."""
    N = len(v)
    zero = (0,) * N
    out = {(0, zero): ONE}
    term = {(0, zero): ONE}
    lin = {}
    for i, c in enumerate(v):
        if not _zero(c):
            d = [0] * N
            d[i] = 1
            lin[(1, tuple(d))] = c
    if not lin:
        return out
    for k in range(1, order + 1):
        term = data_scale(data_mul(term, lin, order), Fraction(1, k))
        if not term:
            break
        out = data_add(out, term)
    return out


def data_exp_const(c, N: int, order: int) -> dict:
    """exp(c * h) as multivariate data."""
    zero = (0,) * N
    out = {}
    t = ONE
    for k in range(order + 1):
        if not _zero(t):
            out[(k, zero)] = t
        t = t * c / (k + 1)
    return out


def sinhc_coeffs(order: int) -> list[Fraction]:
    """Coefficients s_k of h^{2k} u^{2k} in sinh(h u)/(u sinh h) ... numerator part."""
    return [Fraction(1, factorial(2 * k + 1)) for k in range(order // 2 + 1)]


def inv_sinhc_coeffs(order: int) -> list[Fraction]:
    """Coefficients of h^{2k} in h / sinh(h)."""
    m = order // 2
    a = sinhc_coeffs(order)
    inv = [Fraction(0)] * (m + 1)
    inv[0] = ONE
    for k in range(1, m + 1):
        inv[k] = -sum((a[j] * inv[k - j] for j in range(1, k + 1)), Fraction(0))
    return inv


def data_S(idx: tuple[int, ...], N: int, order: int) -> dict:
    """S(u) = sinh(h u)/(u sinh h) with u^2 = prod of x_i over idx."""
    num = sinhc_coeffs(order)
    den = inv_sinhc_coeffs(order)
    out = {}
    for k, a in enumerate(num):
        for j, b in enumerate(den):
            n = 2 * k + 2 * j
            if n > order:
                continue
            d = [0] * N
            for i in idx:
                d[i] += k
            key = (n, tuple(d))
            out[key] = out.get(key, 0) + a * b
    return {k: v for k, v in out.items() if v}


def data_S_inverse(i: int, N: int, order: int) -> dict:
    """1/S(alpha_i) as data, via a power series inversion in h."""
    s = data_S((i,), N, order)
    # s = 1 + r ; 1/s = sum (-r)^k
    zero = (0,) * N
    r = {k: v for k, v in s.items() if k != (0, zero)}
    out = {(0, zero): ONE}
    p = {(0, zero): ONE}
    neg = data_scale(r, -1)
    for _ in range(order // 2 + 1):
        p = data_mul(p, neg, order)
        if not p:
            break
        out = data_add(out, p)
    return out


# ---------------------------------------------------------------------------


class ColorPolynomial:
    """Polynomial in x_1..x_N with SymbolicScalar coefficients (a read-only view)."""

    def __init__(self, monomials: dict):
        self.monomials = {tuple(k): v for k, v in monomials.items() if not v.is_zero()}

    def __eq__(self, other):
        return isinstance(other, ColorPolynomial) and self.monomials == other.monomials

    def __repr__(self):
        return " + ".join(f"({v})x^{list(k)}" for k, v in sorted(self.monomials.items())) or "0"


def _as_field(x):
    if isinstance(x, (Fraction, RatFunc)):
        return x
    if isinstance(x, int):
        return Fraction(x)
    raise InputError(f"unsupported matrix entry {x!r}")


class ColorSeries:
    """Normal-form color series.

    Represents exp(-(h/2) sum_j l_jj x_j) J / prod_j alpha_j, h = i pi / K, as
    ``data[(n, degs)]`` = reduced coefficient of h^n x^degs, times a Prefactor.

    ``linking`` is the current (possibly Schur-updated) matrix.  ``labels``
    names the original components still present.  ``pivots`` records
    (label, pivot value, sign) for components already integrated out;
    ``deferred`` holds pivot values whose square roots have not yet been
    folded into the prefactor (regularized runs).
    """

    def __init__(
        self,
        ncomp: int,
        order: int,
        data: dict,
        linking,
        prefactor: Prefactor | None = None,
        labels: tuple | None = None,
        pivots: tuple = (),
        deferred: tuple = (),
        notes: tuple = (),
    ):
        self.ncomp = ncomp
        self.order = order
        self.data = {k: v for k, v in data.items() if k[0] <= order and not _zero(v)}
        self.linking = tuple(tuple(_as_field(x) for x in row) for row in linking)
        if len(self.linking) != ncomp or any(len(r) != ncomp for r in self.linking):
            raise InputError("linking matrix shape does not match the component count")
        for i in range(ncomp):
            for j in range(ncomp):
                if self.linking[i][j] != self.linking[j][i]:
                    raise InputError("linking matrix must be symmetric")
        self.prefactor = prefactor or Prefactor()
        self.labels = tuple(range(ncomp)) if labels is None else tuple(labels)
        self.pivots = tuple(pivots)
        self.deferred = tuple(deferred)
        self.notes = tuple(notes)
        self.stripped = True

    # views ------------------------------------------------------------
    def coefficient(self, n: int, degs) -> SymbolicScalar:
        c = self.data.get((n, tuple(degs)))
        if c is None:
            return SymbolicScalar()
        return SymbolicScalar.i_pi(n, 1) * c

    @property
    def terms(self) -> dict:
        out: dict = {}
        for (n, d), c in self.data.items():
            out.setdefault(n, {})[d] = SymbolicScalar.i_pi(n, 1) * c
        return {n: ColorPolynomial(m) for n, m in sorted(out.items())}

    def replace(self, **kw) -> "ColorSeries":
        args = dict(
            ncomp=self.ncomp,
            order=self.order,
            data=self.data,
            linking=self.linking,
            prefactor=self.prefactor,
            labels=self.labels,
            pivots=self.pivots,
            deferred=self.deferred,
            notes=self.notes,
        )
        args.update(kw)
        return ColorSeries(**args)

    def truncate(self, order: int) -> "ColorSeries":
        if order > self.order:
            raise InputError("cannot extend a truncated series")
        return self.replace(order=order)

    def __eq__(self, other):
        if not isinstance(other, ColorSeries):
            return NotImplemented
        return (
            self.ncomp == other.ncomp
            and self.order == other.order
            and self.data == other.data
            and self.linking == other.linking
            and self.prefactor == other.prefactor
        )

    def __repr__(self):
        return f"ColorSeries(N={self.ncomp}, order={self.order}, {len(self.data)} terms, prefactor {self.prefactor})"

    def is_regularized(self) -> bool:
        return any(isinstance(x, RatFunc) for row in self.linking for x in row) or any(
            isinstance(v, RatFunc) for v in self.data.values()
        )

    # bounds -----------------------------------------------------------
    def mm_violation(self):
        """First monomial with deg x_j > n/2, or None."""
        for (n, d), c in sorted(self.data.items(), key=lambda kv: kv[0]):
            for e in d:
                if 2 * e > n:
                    return (n, d)
        return None

    def asl_violation(self):
        """First monomial with total degree > 3n/4, or None."""
        for (n, d) in sorted(self.data):
            if 4 * sum(d) > 3 * n:
                return (n, d)
        return None

    # numeric check ----------------------------------------------------
    def evaluate(self, alphas, K, dps: int = 40):
        """High-precision value of the truncated series times its prefactor (display/tests)."""
        import mpmath

        with mpmath.workdps(dps):
            h = mpmath.mpc(0, mpmath.pi) / K
            tot = mpmath.mpc(0)
            for (n, d), c in self.data.items():
                if isinstance(c, RatFunc):
                    c = c.limit_at_zero()
                term = mpmath.mpf(c.numerator) / c.denominator * h ** n
                for a, e in zip(alphas, d):
                    term *= mpmath.mpf(a) ** (2 * e)
                tot += term
            return tot * self.prefactor.approx(K, dps)

    # JSON -------------------------------------------------------------
    def to_json(self) -> dict:
        terms = []
        for n in range(self.order + 1):
            poly = []
            for (m, d), c in sorted(self.data.items()):
                if m != n:
                    continue
                if isinstance(c, RatFunc):
                    raise InputError("regularized series cannot be emitted as JSON")
                poly.append({"degrees": list(d), "coeff": str(SymbolicScalar.i_pi(n, 1) * c)})
            if poly:
                terms.append({"k_power": n, "poly": poly})
        return {
            "order": self.order,
            "ncomp": self.ncomp,
            "linking": [[str(x) for x in row] for row in self.linking],
            "prefactor": str(self.prefactor),
            "terms": terms,
        }

    @classmethod
    def from_json(cls, obj: dict) -> "ColorSeries":
        if isinstance(obj, str):
            obj = json.loads(obj)
        n0 = int(obj["order"])
        linking = [[Fraction(x) for x in row] for row in obj["linking"]]
        data = {}
        for t in obj["terms"]:
            n = int(t["k_power"])
            for m in t["poly"]:
                v = SymbolicScalar.parse(m["coeff"]).mul_i_pi(-n)
                if not v.is_rational():
                    raise InputError(f"coefficient at K^-{n} is not graded by i*pi/K")
                data[(n, tuple(m["degrees"]))] = v.to_rational()
        return cls(len(linking), n0, data, linking)


def color_series_mul(a: ColorSeries, b: ColorSeries) -> ColorSeries:
    """Product of two series over the same components; the diagonals add."""
    if a.ncomp != b.ncomp:
        raise InputError(f"component count mismatch: {a.ncomp} vs {b.ncomp}")
    order = min(a.order, b.order)
    link = [[a.linking[i][j] if i != j else a.linking[i][i] + b.linking[i][i] for j in range(a.ncomp)] for i in range(a.ncomp)]
    for i in range(a.ncomp):
        for j in range(a.ncomp):
            if i != j and a.linking[i][j] != b.linking[i][j]:
                raise InputError("off-diagonal linking must agree")
    notes = a.notes + b.notes
    if a.order != b.order:
        notes += (f"truncated to order {order}",)
    return ColorSeries(
        a.ncomp, order, data_mul(a.data, b.data, order), link, a.prefactor * b.prefactor, a.labels, notes=notes
    )


def disjoint_union(a: ColorSeries, b: ColorSeries) -> ColorSeries:
    """Series of a split union: block-diagonal linking, product of the data."""
    N = a.ncomp + b.ncomp
    order = min(a.order, b.order)
    da = {(n, d + (0,) * b.ncomp): c for (n, d), c in a.data.items()}
    db = {(n, (0,) * a.ncomp + d): c for (n, d), c in b.data.items()}
    link = [[Fraction(0)] * N for _ in range(N)]
    for i in range(a.ncomp):
        for j in range(a.ncomp):
            link[i][j] = a.linking[i][j]
    for i in range(b.ncomp):
        for j in range(b.ncomp):
            link[a.ncomp + i][a.ncomp + j] = b.linking[i][j]
    return ColorSeries(N, order, data_mul(da, db, order), link, a.prefactor * b.prefactor)


def color_series_scale_phase(a: ColorSeries, j: int, c) -> ColorSeries:
    """Multiply by exp((i pi/2K) c x_j) and lower the stored l_jj by c."""
    if not 0 <= j < a.ncomp:
        raise InputError(f"no component {j}")
    c = _as_field(c)
    v = [Fraction(0)] * a.ncomp
    v[j] = c / 2
    data = data_mul(a.data, data_exp_linear(v, a.order), a.order)
    link = [list(r) for r in a.linking]
    link[j][j] = link[j][j] - c
    return a.replace(data=data, linking=link)
