"""Integrals of invariant polynomials over coadjoint orbits of SU(2).

Vectors are indexed by component labels 1..N.  Every contraction monomial
is expanded into Cartesian coordinates and integrated term by term with
the exact sphere moments

    <x^a y^b z^c> = r^{a+b+c} (a-1)!! (b-1)!! (c-1)!! / (a+b+c+1)!!

(zero unless a, b, c are all even).  Each sphere carries total mass equal
to its radius, matching the d^2 alpha / (4 pi alpha) measure.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .errors import InputError, MathAssertionError
from .scalars import SymbolicScalar
from .series import ColorSeries, series_log, sinc_series
from .stationary import double_factorial



# ---------------------------------------------------------------------------
# coordinate polynomials: {exponent tuple of length 3N: Fraction}


def _cmul(a: dict, b: dict) -> dict:
    out: dict = {}
    for e1, c1 in a.items():
        for e2, c2 in b.items():
            e = tuple(x + y for x, y in zip(e1, e2))
            out[e] = out.get(e, 0) + c1 * c2
    return {e: c for e, c in out.items() if c}


def _coord(N: int, j: int, axis: int) -> dict:
    e = [0] * (3 * N)
    e[3 * (j - 1) + axis] = 1
    return {tuple(e): Fraction(1)}


def _cadd(a: dict, b: dict, s=1) -> dict:
    out = dict(a)
    for e, c in b.items():
        out[e] = out.get(e, 0) + s * c
    return {e: c for e, c in out.items() if c}


_EPS = {(0, 1, 2): 1, (1, 2, 0): 1, (2, 0, 1): 1, (0, 2, 1): -1, (2, 1, 0): -1, (1, 0, 2): -1}


def _cross_coords(N: int, i: int, j: int) -> list[dict]:
    out = []
    for a in range(3):
        acc: dict = {}
        for (x, b, c), s in _EPS.items():
            if x == a:
                acc = _cadd(acc, _cmul(_coord(N, i, b), _coord(N, j, c)), s)
        out.append(acc)
    return out


def _dot_vec(u: list[dict], v: list[dict]) -> dict:
    acc: dict = {}
    for a in range(3):
        acc = _cadd(acc, _cmul(u[a], v[a]))
    return acc


def _vec(N: int, j: int) -> list[dict]:
    return [_coord(N, j, a) for a in range(3)]


# ---------------------------------------------------------------------------
# invariant polynomials


def _norm_factor(f: tuple):
    """(sign, normalized factor) or (0, None) when the factor vanishes identically."""
    kind = f[0]
    if kind == "dot":
        i, j = sorted(f[1:])
        return 1, ("dot", i, j)
    if kind == "triple":
        idx = list(f[1:])
        if len(set(idx)) < 3:
            return 0, None
        sign = 1
        # bubble sort parity
        for a in range(3):
            for b in range(2 - a):
                if idx[b] > idx[b + 1]:
                    idx[b], idx[b + 1] = idx[b + 1], idx[b]
                    sign = -sign
        return sign, ("triple", *idx)
    if kind == "crossdot":
        i, j, k, l = f[1:]
        if i == j or k == l:
            return 0, None
        sign = 1
        if i > j:
            i, j, sign = j, i, -sign
        if k > l:
            k, l, sign = l, k, -sign
        if (i, j) > (k, l):
            i, j, k, l = k, l, i, j
        return sign, ("crossdot", i, j, k, l)
    if kind == "tree":
        return 1, f
    raise InputError(f"unknown contraction {kind!r}")


class InvariantPolynomial:
    """Formal sum of contraction monomials with SymbolicScalar coefficients.

    A monomial is a sorted tuple of factors ("dot", i, j), ("triple", i, j, k),
    ("crossdot", i, j, k, l) or ("tree", TreeMonomial).
    """

    def __init__(self, terms: dict | None = None):
        self.terms: dict = {}
        for mono, c in (terms or {}).items():
            self._add(mono, c)

    def _add(self, mono, c):
        if not isinstance(c, SymbolicScalar):
            c = SymbolicScalar.rational(c)
        sign = 1
        fs = []
        for f in mono:
            s, nf = _norm_factor(f)
            if s == 0:
                return
            sign *= s
            fs.append(nf)
        key = tuple(sorted(fs, key=repr))
        v = self.terms.get(key, SymbolicScalar()) + c.scale(sign)
        if v.is_zero():
            self.terms.pop(key, None)
        else:
            self.terms[key] = v

    @classmethod
    def constant(cls, c) -> "InvariantPolynomial":
        return cls({(): c})

    @classmethod
    def dot(cls, i: int, j: int, c=1) -> "InvariantPolynomial":
        return cls({(("dot", i, j),): c})

    @classmethod
    def triple(cls, i: int, j: int, k: int, c=1) -> "InvariantPolynomial":
        return cls({(("triple", i, j, k),): c})

    @classmethod
    def crossdot(cls, i: int, j: int, k: int, l: int, c=1) -> "InvariantPolynomial":
        return cls({(("crossdot", i, j, k, l),): c})

    @classmethod
    def tree(cls, t: "TreeMonomial", c=1) -> "InvariantPolynomial":
        return cls({(("tree", t),): c})

    def is_zero(self) -> bool:
        return not self.terms

    def __add__(self, other):
        out = InvariantPolynomial(self.terms)
        for m, c in other.terms.items():
            out._add(m, c)
        return out

    def __sub__(self, other):
        return self + other.scale(-1)

    def scale(self, c) -> "InvariantPolynomial":
        if not isinstance(c, SymbolicScalar):
            c = SymbolicScalar.rational(c)
        return InvariantPolynomial({m: v * c for m, v in self.terms.items()})

    def __mul__(self, other):
        if not isinstance(other, InvariantPolynomial):
            return self.scale(other)
        out = InvariantPolynomial()
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                out._add(m1 + m2, c1 * c2)
        return out

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, InvariantPolynomial):
            return NotImplemented
        return self.terms == other.terms

    def labels(self) -> set[int]:
        out = set()
        for m in self.terms:
            for f in m:
                out.update(f[1].labels() if f[0] == "tree" else f[1:])
        return out

    def coordinates(self, N: int) -> list:
        """[(coefficient, coordinate polynomial)] per monomial."""
        return [(c, _mono_coords(m, N)) for m, c in self.terms.items()]

    def is_identically_zero(self, N: int | None = None) -> bool:
        """True when the coordinate expansion vanishes (stronger than an empty term table)."""
        N = N or max(self.labels(), default=1)
        acc: dict = {}
        for c, poly in self.coordinates(N):
            for e, v in poly.items():
                acc[e] = acc.get(e, SymbolicScalar()) + c.scale(v)
        return all(v.is_zero() for v in acc.values())

    def to_json(self) -> dict:
        terms = []
        for m, c in sorted(self.terms.items(), key=repr):
            fs = []
            for f in m:
                fs.append(["tree", f[1].to_json()] if f[0] == "tree" else list(f))
            terms.append({"coef": str(c), "factors": fs})
        return {"terms": terms}

    @classmethod
    def from_json(cls, obj) -> "InvariantPolynomial":
        if not isinstance(obj, dict) or set(obj) != {"terms"}:
            raise InputError("invariant polynomial must be {'terms': [...]}")
        out = cls()
        for t in obj["terms"]:
            if set(t) - {"coef", "factors"}:
                raise InputError(f"unknown fields in term {t}")
            c = SymbolicScalar.parse(str(t.get("coef", "1")))
            fs = []
            for f in t.get("factors", []):
                if f[0] == "tree":
                    fs.append(("tree", TreeMonomial.from_json(f[1])))
                else:
                    if f[0] not in ("dot", "triple", "crossdot"):
                        raise InputError(f"unknown contraction {f[0]!r}")
                    if any(not isinstance(x, int) or x < 1 for x in f[1:]):
                        raise InputError(f"slot labels must be positive integers: {f}")
                    fs.append(tuple(f))
            out._add(tuple(fs), c)
        return out

    def __repr__(self):
        return f"InvariantPolynomial({self.to_json()})"


def _factor_coords(f: tuple, N: int) -> dict:
    kind = f[0]
    if kind == "dot":
        return _dot_vec(_vec(N, f[1]), _vec(N, f[2]))
    if kind == "triple":
        return _dot_vec(_vec(N, f[1]), _cross_coords(N, f[2], f[3]))
    if kind == "crossdot":
        return _dot_vec(_cross_coords(N, f[1], f[2]), _cross_coords(N, f[3], f[4]))
    return f[1].coordinates(N)


def _mono_coords(mono: tuple, N: int) -> dict:
    acc = {(0,) * (3 * N): Fraction(1)}
    for f in mono:
        acc = _cmul(acc, _factor_coords(f, N))
    return acc


# ---------------------------------------------------------------------------
# trivalent trees


@dataclass(frozen=True)
class TreeMonomial:
    """Trivalent tree: ``edges`` join internal vertices 0..V-1; ``legs[k] = (vertex, label)``.

    Each internal vertex carries epsilon with its three half-edges in the
    order they appear (edges first, in listing order, then legs).
    """

    nvertices: int
    edges: tuple
    legs: tuple

    def __post_init__(self):
        deg = [0] * self.nvertices
        for a, b in self.edges:
            deg[a] += 1
            deg[b] += 1
        for v, _ in self.legs:
            deg[v] += 1
        if any(d != 3 for d in deg):
            raise InputError("every internal vertex of a tree monomial must be trivalent")
        if len(self.edges) != self.nvertices - 1:
            raise InputError("tree monomial graph must be a tree")

    @classmethod
    def star(cls, labels) -> "TreeMonomial":
        """Caterpillar tree with the given leg labels (at least 3)."""
        labels = list(labels)
        m = len(labels)
        if m < 3:
            raise InputError("a tree monomial needs at least 3 legs")
        V = m - 2
        edges = tuple((k, k + 1) for k in range(V - 1))
        legs = [(0, labels[0]), (0, labels[1])]
        for k in range(1, V - 1):
            legs.append((k, labels[k + 1]))
        legs += [(V - 1, labels[-2]), (V - 1, labels[-1])]
        if V == 1:
            legs = [(0, labels[0]), (0, labels[1]), (0, labels[2])]
        return cls(V, edges, tuple(legs))

    def labels(self) -> set[int]:
        return {l for _, l in self.legs}

    def coordinates(self, N: int) -> dict:
        slots: list[list] = [[] for _ in range(self.nvertices)]
        for e, (a, b) in enumerate(self.edges):
            slots[a].append(("e", e))
            slots[b].append(("e", e))
        for v, lab in self.legs:
            slots[v].append(("l", lab))
        total: dict = {}
        for assign in itertools.product(range(3), repeat=len(self.edges)):
            term = {(0,) * (3 * N): Fraction(1)}
            for v in range(self.nvertices):
                fixed = [assign[s[1]] if s[0] == "e" else None for s in slots[v]]
                legs = [s[1] for s in slots[v] if s[0] == "l"]
                acc: dict = {}
                for comp in itertools.product(range(3), repeat=len(legs)):
                    it = iter(comp)
                    sign = _EPS.get(tuple(x if x is not None else next(it) for x in fixed), 0)
                    if not sign:
                        continue
                    mono = {(0,) * (3 * N): Fraction(sign)}
                    for lab, c in zip(legs, comp):
                        mono = _cmul(mono, _coord(N, lab, c))
                    acc = _cadd(acc, mono)
                term = _cmul(term, acc)
                if not term:
                    break
            total = _cadd(total, term)
        return total

    def to_invariant(self) -> InvariantPolynomial:
        return InvariantPolynomial.tree(self)

    def to_json(self) -> dict:
        return {"nvertices": self.nvertices, "edges": [list(e) for e in self.edges], "legs": [list(l) for l in self.legs]}

    @classmethod
    def from_json(cls, obj) -> "TreeMonomial":
        if set(obj) != {"nvertices", "edges", "legs"}:
            raise InputError("tree monomial needs nvertices, edges, legs")
        return cls(int(obj["nvertices"]), tuple(tuple(e) for e in obj["edges"]), tuple(tuple(l) for l in obj["legs"]))


# ---------------------------------------------------------------------------
# sphere moments


@lru_cache(maxsize=None)
def _moment(a: int, b: int, c: int) -> Fraction:
    if a % 2 or b % 2 or c % 2:
        return Fraction(0)
    num = double_factorial(a - 1) * double_factorial(b - 1) * double_factorial(c - 1)
    return Fraction(num, double_factorial(a + b + c + 1))


def coordinate_moment(poly: dict, N: int) -> dict:
    """Sphere average of a coordinate polynomial: {degs in x_j = alpha_j^2: Fraction}."""
    out: dict = {}
    for e, c in poly.items():
        v = c
        degs = []
        for j in range(N):
            a, b, cc = e[3 * j : 3 * j + 3]
            m = _moment(a, b, cc)
            if not m:
                v = 0
                break
            v *= m
            degs.append((a + b + cc) // 2)
        if v:
            key = tuple(degs)
            out[key] = out.get(key, 0) + v
    return {k: v for k, v in out.items() if v}


def sphere_moment(poly: InvariantPolynomial, N: int) -> dict:
    """Integral over prod_j of spheres |alpha_j| = alpha_j, divided by the total mass prod alpha_j.

    Returns {degs: SymbolicScalar}, a polynomial in x_j = alpha_j^2.
    """
    out: dict = {}
    for c, coords in poly.coordinates(N):
        for degs, v in coordinate_moment(coords, N).items():
            out[degs] = out.get(degs, SymbolicScalar()) + c.scale(v)
    return {k: v for k, v in out.items() if not v.is_zero()}


# ---------------------------------------------------------------------------
# L_m data


def build_L2(linking) -> InvariantPolynomial:
    out = InvariantPolynomial()
    N = len(linking)
    for i in range(N):
        for j in range(N):
            if linking[i][j]:
                out = out + InvariantPolynomial.dot(i + 1, j + 1, Fraction(linking[i][j]))
    return out


def build_L3_milnor(mu: dict) -> InvariantPolynomial:
    """sum over triples of -4 pi mu_{ijk} triple(i, j, k)."""
    out = InvariantPolynomial()
    for (i, j, k), m in mu.items():
        out = out + InvariantPolynomial.triple(i, j, k, SymbolicScalar.pi_power(1, -4 * Fraction(m)))
    return out


def build_L4_milnor(mu: dict) -> InvariantPolynomial:
    """(pi^2/3) sum (mu_{m1 m2 m3 m4} - mu_{m3 m1 m2 m4}) crossdot(m1, m2; m3, m4) over the given labels."""
    labels = sorted({x for key in mu for x in key})
    out = InvariantPolynomial()
    for m1, m2, m3, m4 in itertools.product(labels, repeat=4):
        c = Fraction(mu.get((m1, m2, m3, m4), 0)) - Fraction(mu.get((m3, m1, m2, m4), 0))
        if c:
            out = out + InvariantPolynomial.crossdot(m1, m2, m3, m4, SymbolicScalar.pi_power(2, c / 3))
    return out


def canonical_P(n0: int) -> list:
    """Scalar P_{0,n} whose exponential is (pi/K)/sin(pi/K) to order n0."""
    # (pi/K)/sin(pi/K) = h/sinh(h) with h = i pi/K
    lg = series_log(sinc_series(n0))
    return [(0, n, InvariantPolynomial.constant(-lg.coeffs[n])) for n in range(1, n0 + 1) if not lg.coeffs[n].is_zero()]


# ---------------------------------------------------------------------------
# the orbit integral


def _inv_add(acc: dict, k: int, poly: InvariantPolynomial):
    acc[k] = acc[k] + poly if k in acc else poly


def orbit_integral_raw(L: list, P: list, N: int, n0: int) -> tuple[dict, list]:
    """exp((i pi/2) sum L_m K^{1-m} + sum P_{m,l} K^{-l-m}) integrated over the orbits.

    Diagonal dot(j, j) terms of L_2 are constant on the orbits and are
    stripped (they are returned as the framing list).  The result is
    {(n, degs): SymbolicScalar}, the coefficient of K^{-n} x^degs after
    division by prod alpha_j.
    """
    if not any(m == 2 for m, _ in L):
        raise InputError("L must contain an order-2 entry")
    frame = [Fraction(0)] * N
    expo: dict = {}
    half_i_pi = SymbolicScalar.i_pi(1, Fraction(1, 2))
    for m, poly in L:
        if m < 2:
            raise InputError("L_m needs m >= 2")
        if poly.labels() and max(poly.labels()) > N:
            raise InputError("polynomial refers to a component beyond N")
        k = m - 1
        if k > n0:
            continue
        rest = InvariantPolynomial()
        for mono, c in poly.terms.items():
            if m == 2 and len(mono) == 1 and mono[0][0] == "dot" and mono[0][1] == mono[0][2]:
                if not c.is_rational():
                    raise InputError("framing coefficients must be rational")
                frame[mono[0][1] - 1] += c.to_rational()
                continue
            rest._add(mono, c)
        if not rest.is_zero():
            _inv_add(expo, k, rest.scale(half_i_pi))
    for m, l, poly in P:
        k = m + l
        if k == 0:
            raise InputError("P_{0,0} is excluded")
        if k > n0:
            continue
        _inv_add(expo, k, poly)
    # exp of a series whose every term carries at least one power of 1/K
    total = {0: InvariantPolynomial.constant(1)}
    power = {0: InvariantPolynomial.constant(1)}
    for r in range(1, n0 + 1):
        nxt: dict = {}
        for a, pa in power.items():
            for b, pb in expo.items():
                if a + b <= n0:
                    _inv_add(nxt, a + b, pa * pb)
        power = {k: v.scale(Fraction(1, r)) for k, v in nxt.items()}
        if not power:
            break
        for k, v in power.items():
            _inv_add(total, k, v)
    out: dict = {}
    for n, poly in total.items():
        for degs, v in sphere_moment(poly, N).items():
            out[(n, degs)] = out.get((n, degs), SymbolicScalar()) + v
    return {k: v for k, v in out.items() if not v.is_zero()}, frame


def orbit_integral(L: list, P: list, N: int, n0: int, linking=None) -> ColorSeries:
    """The orbit integral as a normal-form ColorSeries (requires an h-graded result)."""
    raw, frame = orbit_integral_raw(L, P, N, n0)
    data = {}
    for (n, degs), v in raw.items():
        r = v.mul_i_pi(-n)
        if not r.is_rational():
            raise MathAssertionError(f"orbit integral coefficient at K^-{n} is not graded by i pi: {v}")
        data[(n, degs)] = r.to_rational()
    if linking is None:
        linking = [[Fraction(0)] * N for _ in range(N)]
        for m, poly in L:
            if m != 2:
                continue
            for mono, c in poly.terms.items():
                if len(mono) == 1 and mono[0][0] == "dot" and c.is_rational():
                    i, j = mono[0][1] - 1, mono[0][2] - 1
                    if i == j:
                        linking[i][i] += c.to_rational()
                    else:
                        linking[i][j] += c.to_rational() / 2
                        linking[j][i] += c.to_rational() / 2
    return ColorSeries(N, n0, data, linking, notes=("orbit integral",))


def kirillov_check(alpha: int, n0: int, direction=(0, 0, 1)) -> tuple[bool, int | None]:
    """(|v|/sin|v|) <exp(i v . alpha)>_orbit * alpha = sin(alpha |v|)/sin |v| as series in a scale s, v = s * direction.

    Returns (ok, first failing order).
    """
    d = [Fraction(x) for x in direction]
    norm2 = sum(x * x for x in d)
    if norm2 <= 0:
        raise InputError("direction must be nonzero")
    # left: orbit moments of (i s d . a)^k / k!, a real series in s^2 times norm2 powers
    lin = {}
    for a in range(3):
        e = [0, 0, 0]
        e[a] = 1
        if d[a]:
            lin[tuple(e)] = d[a]
    avg = [Fraction(0)] * (n0 + 1)
    pw = {(0, 0, 0): Fraction(1)}
    fact = 1
    for k in range(n0 + 1):
        if k:
            pw = _cmul(pw, lin)
            fact *= k
        mom = coordinate_moment(pw, 1)
        for (deg,), v in mom.items():
            # i^k s^k alpha^{2 deg} / k!, only even k survive
            avg[k] += v * Fraction(alpha) ** (2 * deg) * (-1) ** (k // 2) / fact
    # |v|/sin|v| with |v|^2 = s^2 norm2
    u_over_sin = _series_u_over_sin(n0, norm2)
    lhs = _smul(u_over_sin, avg, n0)
    lhs = [x * alpha for x in lhs]
    # right: sin(alpha u)/sin u = alpha * (sin(alpha u)/(alpha u)) * (u/sin u)
    sinc_a = [Fraction(0)] * (n0 + 1)
    for k in range(0, n0 + 1, 2):
        sinc_a[k] = Fraction((-1) ** (k // 2) * Fraction(alpha) ** k * norm2 ** (k // 2), _fact(k + 1))
    rhs = [x * alpha for x in _smul(u_over_sin, sinc_a, n0)]
    for k in range(n0 + 1):
        if lhs[k] != rhs[k]:
            return False, k
    return True, None


def _fact(n: int) -> int:
    out = 1
    for i in range(2, n + 1):
        out *= i
    return out


def _smul(a: list, b: list, n0: int) -> list:
    out = [Fraction(0)] * (n0 + 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            if i + j <= n0:
                out[i + j] += x * y
    return out


def _series_u_over_sin(n0: int, norm2: Fraction) -> list:
    """u/sin u with u^2 = s^2 norm2, as a series in s."""
    sin_over = [Fraction(0)] * (n0 + 1)
    for k in range(0, n0 + 1, 2):
        sin_over[k] = Fraction((-1) ** (k // 2), _fact(k + 1)) * norm2 ** (k // 2)
    inv = [Fraction(0)] * (n0 + 1)
    inv[0] = Fraction(1)
    for k in range(1, n0 + 1):
        inv[k] = -sum(sin_over[j] * inv[k - j] for j in range(1, k + 1))
    return inv


def single_component_collapse(tree: TreeMonomial) -> bool:
    """True when a tree monomial whose legs all carry one label vanishes identically."""
    labs = tree.labels()
    if len(labs) != 1:
        raise InputError("collapse check needs all legs on one component")
    N = max(labs)
    return not tree.coordinates(N)
