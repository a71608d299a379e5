"""Command line front end: ``pertinv <command> ...``."""
from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys

from . import cyclotomic
from .cyclotomic import K_BOUND, check_prime_K, gauss_sum_closed, gauss_sum_direct, is_prime, zeta_minus_one_expand
from .errors import InputError, MathAssertionError, PertinvError
from .jones import FramedLink, check_asl_bound, check_mm_bound, family_grid, fusion_identities_check, jones_exact, jones_series
from .orbit import (
    InvariantPolynomial,
    TreeMonomial,
    build_L2,
    canonical_P,
    kirillov_check,
    orbit_integral,
    single_component_collapse,
)
from .stationary import meridian_sum_identity, poisson_identity, twist_integral_check
from .surgery import compute_invariants, compute_invariants_asl, load_registry
from .wrt import ohtsuki_congruence_check, z_prime, z_wrt

SUITES = ("gauss", "kirby-sum", "kirby-integral", "poisson", "fusion", "orbit", "mm-bounds", "ohtsuki", "presentations")


def parse_link(text: str) -> FramedLink:
    if text is None:
        raise InputError("--link is required")
    if text.strip() != "empty" and not text.lstrip().startswith("{") and os.path.exists(text):
        with open(text) as fh:
            text = fh.read()
    return FramedLink.from_json(text)


def parse_K_list(text: str | None, default) -> list[int]:
    if text is None:
        return list(default)
    out = []
    for part in text.split(","):
        try:
            out.append(int(part))
        except ValueError:
            raise InputError(f"bad K value {part!r}") from None
    return out


def _primes_upto(kmax: int) -> list[int]:
    return [k for k in range(3, kmax + 1) if is_prime(k)]


# ---------------------------------------------------------------------------
# output


def _approx_text(z) -> str:
    import mpmath

    z = mpmath.chop(mpmath.mpc(z), tol=mpmath.mpf(10) ** -25)
    return "approx " + mpmath.nstr(z, 15)


def _emit(args, payload: dict, text: str, rows: list | None = None):
    fmt = args.format
    if fmt == "json":
        out = json.dumps(payload, indent=2, sort_keys=True, ensure_ascii=False)
    elif fmt == "csv":
        buf = io.StringIO()
        rows = rows or [payload]
        w = csv.DictWriter(buf, fieldnames=list(rows[0].keys()), lineterminator="\n")
        w.writeheader()
        for r in rows:
            w.writerow({k: (json.dumps(v) if isinstance(v, (list, dict)) else v) for k, v in r.items()})
        out = buf.getvalue().rstrip("\n")
    else:
        out = text
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(out + "\n")
    else:
        print(out)


# ---------------------------------------------------------------------------
# commands


def cmd_invariants(args) -> int:
    link = parse_link(args.link)
    n0 = args.order
    if args.asl:
        res = compute_invariants_asl(link, n0)
    else:
        res = compute_invariants(link, n0, epsilon=args.epsilon)
    payload = res.to_json()
    lines = [f"link: {link}", f"|H_1| = {res.h1order}, signature = {res.signature}"]
    lines += [f"S_{n} = {s}" for n, s in enumerate(res.s, 1)]
    lines += [f"Delta_{n} = {d}" for n, d in enumerate(res.delta)]
    rows = [{"n": n, "S": str(s)} for n, s in enumerate(res.s, 1)]
    _emit(args, payload, "\n".join(lines), rows)
    return 0


def cmd_wrt(args) -> int:
    link = parse_link(args.link)
    Ks = parse_K_list(args.K, [5])
    results, lines, rows = [], [], []
    for K in Ks:
        check_prime_K(K, args.Kmax)
        w = z_wrt(link, K)
        entry = w.to_json()
        entry["approx"] = _approx_text(w.approx(30))
        lines.append(f"Z(M;{K}) = {w.value}")
        lines.append(f"  {entry['approx']}")
        if args.zprime:
            try:
                zp = z_prime(link, K)
                entry["Zprime"] = str(zp)
                try:
                    entry["a"] = zeta_minus_one_expand(zp, K)
                    entry["Zprime_integral"] = True
                except MathAssertionError:
                    entry["Zprime_integral"] = False
            except MathAssertionError as e:
                entry["Zprime"] = None
                entry["Zprime_integral"] = False
                entry["Zprime_error"] = str(e)
            lines.append(f"  Z' = {entry.get('Zprime')}  integral: {entry['Zprime_integral']}")
            if "a" in entry:
                lines.append(f"  a_n = {entry['a']}")
        results.append(entry)
        rows.append({"K": K, "Z": entry["Z"], "approx": entry["approx"]})
    payload = results[0] if len(results) == 1 else {"results": results}
    _emit(args, payload, "\n".join(lines), rows)
    return 0


def cmd_jones(args) -> int:
    link = parse_link(args.link)
    if args.colors:
        colors = [int(c) for c in args.colors.split(",")]
        K = parse_K_list(args.K, [5])[0]
        check_prime_K(K, args.Kmax)
        v = jones_exact(link, colors, K)
        payload = {"K": K, "colors": colors, "J": str(v), "approx": _approx_text(v.to_complex(30))}
        _emit(args, payload, f"J = {v}\n  {payload['approx']}")
        return 0
    s = jones_series(link, args.order)
    payload = s.to_json()
    lines = [f"normal form of {link} to order {args.order}"]
    for (n, d), c in sorted(s.data.items()):
        lines.append(f"  h^{n} x^{list(d)}: {c}")
    rows = [{"n": n, "degs": list(d), "coef": str(c)} for (n, d), c in sorted(s.data.items())]
    _emit(args, payload, "\n".join(lines), rows or None)
    return 0


def cmd_orbit(args) -> int:
    if args.data:
        text = args.data
        if not text.lstrip().startswith("{") and os.path.exists(text):
            with open(text) as fh:
                text = fh.read()
        try:
            obj = json.loads(text)
        except json.JSONDecodeError as e:
            raise InputError(f"bad orbit data: {e}") from None
        allowed = {"ncomp", "L", "P", "canonical_P"}
        if set(obj) - allowed:
            raise InputError(f"unknown fields {sorted(set(obj) - allowed)}")
        N = int(obj["ncomp"])
        L = [(int(e["m"]), InvariantPolynomial.from_json(e["poly"])) for e in obj.get("L", [])]
        P = [(int(e["m"]), int(e["l"]), InvariantPolynomial.from_json(e["poly"])) for e in obj.get("P", [])]
        if obj.get("canonical_P"):
            P += canonical_P(args.order)
    else:
        N = 2
        L = [(2, build_L2([[0, 1], [1, 0]]))]
        P = canonical_P(args.order)
    s = orbit_integral(L, P, N, args.order)
    lines = [f"orbit integral, {N} components, order {args.order}"]
    for (n, d), c in sorted(s.data.items()):
        lines.append(f"  h^{n} x^{list(d)}: {c}")
    _emit(args, s.to_json(), "\n".join(lines))
    return 0


# ---------------------------------------------------------------------------
# verification suites


def _suite_cases(args):
    suite = args.suite
    if suite == "gauss":
        for K in _primes_upto(args.Kmax):
            for p in (1, -1, 2, -2, 3, -3):
                for q in (1, -1, 2, -2, 3, -3):
                    if p % K == 0 or q % K == 0:
                        continue
                    for n in range(K):
                        key = f"K={K} p={p} q={q} n={n}"
                        yield key, lambda p=p, q=q, n=n, K=K: gauss_sum_direct(p, q, n, K) == gauss_sum_closed(p, q, n, K)
    elif suite == "kirby-sum":
        for K in parse_K_list(args.K, [5, 7, 11, 13]):
            for a in range(1, K):
                yield f"K={K} alpha={a}", lambda a=a, K=K: meridian_sum_identity(a, K)
    elif suite == "kirby-integral":
        n0 = args.order or 6
        for a in range(1, 8):
            yield f"alpha={a} order={n0}", lambda a=a: twist_integral_check(a, n0)[0]
    elif suite == "poisson":
        for K in parse_K_list(args.K, [5, 7, 11, 13]):
            yield f"K={K}", lambda K=K: poisson_identity(K)[0]
    elif suite == "fusion":
        for K in parse_K_list(args.K, [5, 7]):
            for a1 in range(1, K):
                for a2 in range(1, K - a1 + 1):
                    yield f"K={K} a1={a1} a2={a2}", lambda a1=a1, a2=a2, K=K: all(fusion_identities_check(a1, a2, K).values())
    elif suite == "orbit":
        def hopf():
            o = orbit_integral([(2, build_L2([[0, 1], [1, 0]]))], canonical_P(4), 2, 4)
            return o.data == jones_series(FramedLink.hopf_chain([0, 0]), 4).data

        yield "hopf reconstruction order 4", hopf
        for a in (1, 2, 3):
            yield f"kirillov alpha={a} order 6", lambda a=a: kirillov_check(a, 6)[0]
        for m in (3, 4, 5, 6):
            yield f"tree collapse legs={m}", lambda m=m: single_component_collapse(TreeMonomial.star([1] * m))
    elif suite == "mm-bounds":
        n0 = args.order or 8
        for L in family_grid():
            def check(L=L):
                s = jones_series(L, n0)
                ok = check_mm_bound(s)[0]
                asl = check_asl_bound(s)[0]
                return ok and asl in (True, "not-applicable")

            yield f"{L}", check
    elif suite == "ohtsuki":
        n0 = args.order or 2
        for K in parse_K_list(args.K, [5, 7, 11, 13]):
            for p in (2, 3, 5):
                if p % K == 0:
                    continue
                yield f"L({p},1) K={K}", lambda p=p, K=K: ohtsuki_congruence_check(FramedLink.unknot(p), K, n0).ok
    elif suite == "presentations":
        n0 = args.order or 2
        for e in load_registry():
            a, b = e["presentations"]
            yield e["name"], lambda a=a, b=b: compute_invariants(a, n0).s == compute_invariants(b, n0).s
    else:
        raise InputError(f"unknown suite {suite!r}")


def cmd_verify(args) -> int:
    rows = []
    for key, fn in _suite_cases(args):
        try:
            ok = bool(fn())
            note = ""
        except MathAssertionError as e:
            ok, note = False, str(e)
        rows.append({"case": key, "ok": ok, "note": note})
    passed = sum(r["ok"] for r in rows)
    payload = {"suite": args.suite, "passed": passed, "total": len(rows), "cases": rows}
    lines = [f"{'PASS' if r['ok'] else 'FAIL'}  {r['case']}" + (f"  ({r['note']})" if r["note"] else "") for r in rows]
    lines.append(f"{args.suite}: {passed}/{len(rows)} passed")
    _emit(args, payload, "\n".join(lines), rows)
    return 0 if passed == len(rows) else 3


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="pertinv", description="Perturbative and WRT invariants of rational homology spheres")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "csv", "text"), default="text")
    common.add_argument("--out", help="write output to this file")
    common.add_argument("--Kmax", type=int, default=K_BOUND, help="largest admissible K")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("invariants", parents=[common], help="S_n and Delta_n of a surgery presentation")
    p.add_argument("--link", required=True, help="JSON descriptor, a file containing one, or 'empty'")
    p.add_argument("--order", type=int, default=2)
    p.add_argument("--epsilon", action="store_true", help="regularize zero pivots")
    p.add_argument("--asl", action="store_true", help="one-scoop integration for algebraically split links")
    p.set_defaults(func=cmd_invariants)

    p = sub.add_parser("wrt", parents=[common], help="exact WRT invariant at prime K")
    p.add_argument("--link", required=True)
    p.add_argument("--K", help="prime or comma separated primes")
    p.add_argument("--zprime", action="store_true", help="also compute Z' and its zeta - 1 coordinates")
    p.set_defaults(func=cmd_wrt)

    p = sub.add_parser("jones", parents=[common], help="colored Jones polynomial, exact or as a 1/K series")
    p.add_argument("--link", required=True)
    p.add_argument("--colors", help="comma separated colors for an exact value")
    p.add_argument("--K")
    p.add_argument("--order", type=int, default=4)
    p.set_defaults(func=cmd_jones)

    p = sub.add_parser("verify", parents=[common], help="run a verification suite")
    p.add_argument("suite", choices=SUITES)
    p.add_argument("--K", help="comma separated primes")
    p.add_argument("--order", type=int)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("orbit-integral", parents=[common], help="integrate L/P data over coadjoint orbits")
    p.add_argument("--data", help="JSON with ncomp, L, P, canonical_P (default: Hopf data)")
    p.add_argument("--order", type=int, default=4)
    p.set_defaults(func=cmd_orbit)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if getattr(args, "order", None) is not None and args.order < 0:
        print("error: order must be non-negative", file=sys.stderr)
        return 2
    saved = cyclotomic.K_BOUND
    cyclotomic.K_BOUND = args.Kmax
    try:
        return args.func(args)
    except PertinvError as e:
        print(f"error: {e}", file=sys.stderr)
        return e.exit_code
    except (KeyError, TypeError, ValueError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    finally:
        cyclotomic.K_BOUND = saved


if __name__ == "__main__":
    sys.exit(main())
