"""From a surgery presentation to Delta_n and S_n.

The pipeline integrates the components out one at a time (or all at once
for algebraically split links), folds the accumulated prefactor, divides
by the S^3 normalization and reads S_n off the logarithm.
"""
from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from importlib import resources

from .errors import InputError, MathAssertionError
from .jones import FramedLink, jones_series
from .ratfunc import RatFunc, limit_at_zero
from .scalars import Prefactor, SymbolicScalar
from .series import KSeries, data_exp_const, data_mul, sn_from_delta
from .stationary import epsilon_regularize, sine_kernel, step_integrate

MAX_SUBLINK_COMPONENTS = 12


# ---------------------------------------------------------------------------
# exact linear algebra


def determinant(mat) -> Fraction:
    a = [[Fraction(x) for x in row] for row in mat]
    n = len(a)
    det = Fraction(1)
    for c in range(n):
        p = next((r for r in range(c, n) if a[r][c] != 0), None)
        if p is None:
            return Fraction(0)
        if p != c:
            a[c], a[p] = a[p], a[c]
            det = -det
        det *= a[c][c]
        for r in range(c + 1, n):
            f = a[r][c] / a[c][c]
            if f:
                a[r] = [x - f * y for x, y in zip(a[r], a[c])]
    return det


def char_poly(mat) -> list[Fraction]:
    """Coefficients c_0..c_n of det(x I - A), lowest degree first (Faddeev-LeVerrier)."""
    n = len(mat)
    A = [[Fraction(x) for x in row] for row in mat]
    coeffs = [Fraction(0)] * (n + 1)
    coeffs[n] = Fraction(1)
    M = [[Fraction(0)] * n for _ in range(n)]
    for k in range(1, n + 1):
        # M_k = A M_{k-1} + c_{n-k+1} I
        AM = [[sum(A[i][t] * M[t][j] for t in range(n)) for j in range(n)] for i in range(n)]
        M = [[AM[i][j] + (coeffs[n - k + 1] if i == j else 0) for j in range(n)] for i in range(n)]
        AM = [[sum(A[i][t] * M[t][j] for t in range(n)) for j in range(n)] for i in range(n)]
        coeffs[n - k] = -sum(AM[i][i] for i in range(n)) / k
    return coeffs


def _sign_changes(c: list[Fraction]) -> int:
    s = [x for x in c if x != 0]
    return sum(1 for a, b in zip(s, s[1:]) if (a > 0) != (b > 0))


def signature(mat) -> int:
    """Signature of a symmetric rational matrix (Descartes' rule is exact for real-rooted polynomials)."""
    n = len(mat)
    if n == 0:
        return 0
    for i in range(n):
        for j in range(n):
            if Fraction(mat[i][j]) != Fraction(mat[j][i]):
                raise InputError("signature needs a symmetric matrix")
    c = char_poly(mat)
    pos = _sign_changes(c)
    neg = _sign_changes([x * (-1) ** i for i, x in enumerate(c)])
    return pos - neg


# ---------------------------------------------------------------------------


@dataclass
class ManifoldResult:
    h1order: int
    signature: int
    delta: list
    s: list
    presentation: FramedLink
    order: int
    pivots: tuple = ()

    def to_json(self) -> dict:
        return {
            "h1": self.h1order,
            "signature": self.signature,
            "order": self.order,
            "S": [str(x) for x in self.s],
            "Delta": [str(x) for x in self.delta],
            "presentation": self.presentation.to_json(),
        }


def required_input_order(N: int, n0: int, asl: bool = False) -> int:
    if N == 0:
        return n0
    return 4 * n0 if asl else 2 ** N * n0


def plan_pivots(linking, order=None) -> list[int]:
    """A pivot order (original indices) whose Schur pivots are all nonzero."""
    N = len(linking)
    cands = [list(order)] if order is not None else [list(range(N))] + [
        list(p) for p in itertools.permutations(range(N)) if list(p) != list(range(N))
    ]
    for perm in cands:
        L = [[Fraction(x) for x in row] for row in linking]
        labels = list(range(N))
        ok = True
        for lab in perm:
            j = labels.index(lab)
            piv = L[j][j]
            if piv == 0:
                ok = False
                break
            keep = [i for i in range(len(L)) if i != j]
            L = [[L[i][k] - L[j][i] * L[j][k] / piv for k in keep] for i in keep]
            labels.pop(j)
        if ok:
            return perm
        if order is not None:
            break
    raise MathAssertionError("zero pivot: enable regularization or reorder")


def _assemble(coeffs: dict, prefactor: Prefactor, H: int, n0: int, link: FramedLink, sig: int, pivots=()):
    """Delta series from the fully integrated data; coeffs maps n -> reduced coefficient."""
    # |H|^{3/2} and the S^3 factor K sin(pi/K)/pi = sinh(h)/h
    pre = prefactor * Prefactor.sqrt(Fraction(H) ** 3)
    g, rest = pre.split_gaussian()
    if not rest.is_trivial():
        raise MathAssertionError(f"residual prefactor is not trivial: {rest}")
    if not g.is_rational():
        raise MathAssertionError(f"prefactor does not fold to a real rational: {g}")
    gr = g.to_rational()
    sinh = [Fraction(1, _fact(n + 1)) if n % 2 == 0 else Fraction(0) for n in range(n0 + 1)]
    red = []
    for n in range(n0 + 1):
        acc = Fraction(0)
        for k in range(n + 1):
            c = coeffs.get(k, 0)
            if c:
                acc += c * sinh[n - k]
        red.append(acc * gr)
    delta = KSeries.from_reduced(red)
    if delta.coeffs[0] != SymbolicScalar.rational(1):
        raise MathAssertionError(f"Delta_0 = {delta.coeffs[0]}, expected 1")
    s = sn_from_delta(delta)
    return ManifoldResult(H, sig, delta.coeffs, [x.to_rational() for x in s], link, n0, tuple(pivots))


@lru_cache(maxsize=None)
def _fact(n: int) -> int:
    out = 1
    for i in range(2, n + 1):
        out *= i
    return out


def _check_rhs(link: FramedLink) -> tuple[int, int]:
    L = link.linking
    det = determinant(L)
    if det == 0:
        raise MathAssertionError("not a rational homology sphere (det of the linking matrix is 0)")
    return abs(int(det)), signature(L)


def compute_invariants(link: FramedLink, n0: int, epsilon: bool = False, pivot_order=None) -> ManifoldResult:
    """Delta_0..Delta_n0 and S_1..S_n0 by step-by-step integration."""
    if n0 < 1:
        raise InputError("order must be at least 1")
    N = link.ncomp
    if N == 0:
        return _assemble({0: Fraction(1)}, Prefactor(), 1, n0, link, 0)
    H, sig = _check_rhs(link)
    if epsilon:
        perm = list(range(N)) if pivot_order is None else list(pivot_order)
    else:
        perm = plan_pivots(link.linking, pivot_order)
    order = required_input_order(N, n0)
    s = jones_series(link, order)
    if epsilon:
        s = epsilon_regularize(s)
    for lab in perm:
        j = s.labels.index(lab)
        s = step_integrate(s, j, s.order // 2)
    data = s.data
    pre = s.prefactor
    if epsilon:
        try:
            data = {k: limit_at_zero(v) for k, v in data.items()}
            prod = RatFunc((1,))
            for x in s.deferred:
                prod = prod * x
            root = limit_at_zero(prod)
        except ZeroDivisionError:
            raise MathAssertionError("singular presentation: pole at eps = 0 survives the limit") from None
        if root <= 0:
            raise MathAssertionError("deferred pivot product does not tend to a positive limit")
        pre = pre * Prefactor.sqrt(1 / root)
        absprod = root
    else:
        absprod = Fraction(1)
        for _, l, _ in s.pivots:
            absprod *= abs(l)
    # Sylvester checks
    if sum(sg for _, _, sg in s.pivots) != sig:
        raise MathAssertionError("pivot signs do not add up to the signature")
    if absprod != H:
        raise MathAssertionError(f"product of |pivots| {absprod} differs from |det| {H}")
    coeffs = {n: c for (n, d), c in data.items()}
    return _assemble(coeffs, pre, H, n0, link, sig, s.pivots)


def compute_invariants_asl(link: FramedLink, n0: int) -> ManifoldResult:
    """One-scoop integration for algebraically split links with nonzero framings."""
    if n0 < 1:
        raise InputError("order must be at least 1")
    N = link.ncomp
    if N == 0:
        return compute_invariants(link, n0)
    if not link.is_split():
        raise InputError("not an algebraically split link")
    L = link.linking
    diag = [Fraction(L[j][j]) for j in range(N)]
    if any(d == 0 for d in diag):
        raise InputError("one-scoop integration needs nonzero framings")
    H, sig = _check_rhs(link)
    s = jones_series(link, required_input_order(N, n0, asl=True))
    w = s.asl_violation()
    if w is not None:
        raise MathAssertionError(f"input violates the 3n/4 bound at {w}")
    out: dict = {}
    for (n, d), c in s.data.items():
        t = n - sum(d)
        if t > n0:
            continue
        budget = n0 - t
        poly = {0: c}
        for j in range(N):
            ker = sine_kernel(d[j], diag[j], budget)
            nxt: dict = {}
            for a, x in poly.items():
                for k, r in enumerate(ker):
                    if a + k <= budget:
                        nxt[a + k] = nxt.get(a + k, 0) + x * r
            poly = nxt
        for a, x in poly.items():
            out[t + a] = out.get(t + a, 0) + x
    data = {(k, ()): v for k, v in out.items() if v}
    data = data_mul(data, data_exp_const(Fraction(3 * sig, 2), 0, n0), n0)
    pre = Prefactor()
    for l in diag:
        if l < 0:
            pre = pre * Prefactor.phase(4)
        pre = pre * Prefactor.sqrt(1 / abs(l))
    coeffs = {n: c for (n, _), c in data.items()}
    return _assemble(coeffs, pre, H, n0, link, sig)


def alternating_sum(link: FramedLink, n: int) -> SymbolicScalar:
    """sum over sublinks L' of (-1)^{#L'} S_n(surgery on L')."""
    if not link.is_split():
        raise InputError("alternating sums are defined for algebraically split links")
    N = link.ncomp
    if N > MAX_SUBLINK_COMPONENTS:
        raise InputError("sublink lattice too large")
    L = link.linking
    if any(L[j][j] == 0 for j in range(N)):
        raise InputError("all framings must be nonzero")
    total = Fraction(0)
    for r in range(N + 1):
        for keep in itertools.combinations(range(N), r):
            sub = link.sublink(keep)
            res = compute_invariants_asl(sub, n)
            total += (-1) ** r * res.s[n - 1]
    return SymbolicScalar.rational(total)


# ---------------------------------------------------------------------------
# presentations of the same manifold


def chain_fraction(framings) -> Fraction:
    """[a1, ..., an] = a1 - 1/(a2 - 1/(... - 1/an))."""
    x = None
    for a in reversed(list(framings)):
        x = Fraction(a) if x is None else Fraction(a) - 1 / x
    return x


def lens_key(framings) -> tuple[int, int]:
    """(p, q) normalized so that equal keys mean orientation-preserving homeomorphic lens spaces."""
    f = chain_fraction(framings)
    p, q = f.numerator, f.denominator
    if p < 0:
        p, q = -p, -q
    q %= p
    inv = pow(q, -1, p) if p > 1 else 0
    return (p, min(q, inv))


@lru_cache(maxsize=None)
def load_registry() -> tuple:
    raw = resources.files("pertinv").joinpath("data/registry.json").read_text()
    out = []
    for entry in json.loads(raw):
        pres = tuple(FramedLink.from_json(p) for p in entry["presentations"])
        out.append({"name": entry["name"], "move": entry["move"], "presentations": pres})
    return tuple(out)
