"""Command-line front end.

    riordan matrix --g "1/(1-x)" --F "x/(1-x)" --rows 6
    riordan --conductor 6 order --g "w^2" --F "-x"
    riordan identity --g "1/(1-x)" --F "-x/(1-x)" --k 0 --n 7 --json
"""
from __future__ import annotations

import argparse
import json
import random
import sys

from . import __version__
from .eigen import EigenSpec, eigen_check, eigenvector, row_identity
from .errors import RiordanError
from .expr import parse_scalar, parse_series
from .forder import complete_to_order, is_conjugate, normalize, pair_order, series_order
from .fps import DEFAULT_PRECISION, Series, compose_pow, exp_pos
from .riordan import RiordanPair, expand_matrix, rinv, rmul, rpow
from .scalar import field
from .symmetric import CyclicSeriesEvaluator, cyclic_sum, marshall_F, phi2_eval


def series_json(s: Series) -> dict:
    return {"precision": s.N, "conductor": s.ctx.conductor, "coeffs": s.scalar_strings()}


def series_from_json(obj: dict) -> Series:
    ctx = field(obj["conductor"])
    return Series(ctx, [parse_scalar(c, ctx) for c in obj["coeffs"]], obj["precision"])


class _Out:
    """Collects either a JSON document or text lines for one command."""

    def __init__(self, as_json: bool):
        self.as_json = as_json
        self.doc = {}
        self.lines = []

    def put(self, key, value, text=None):
        self.doc[key] = value
        if text is not None:
            self.lines.append(text)

    def emit(self):
        if self.as_json:
            print(json.dumps(self.doc, indent=2))
        else:
            print("\n".join(self.lines))


def _pair(args, ctx) -> RiordanPair:
    N = args.precision
    return RiordanPair(parse_series(args.g, ctx, N), parse_series(args.F, ctx, N))


def _theta(args, ctx):
    return tuple(parse_scalar(t, ctx) for t in args.theta.split(","))


def cmd_eval(args, ctx, out):
    if args.expr is None:
        args.expr = args.expr_opt
    if args.expr is None:
        raise RiordanError("eval needs an expression")
    s = parse_series(args.expr, ctx, args.precision)
    out.put("series", series_json(s), str(s))


def cmd_matrix(args, ctx, out):
    M = expand_matrix(_pair(args, ctx), args.rows)
    out.put("rows", M.to_strings(), M.to_text())


def cmd_order(args, ctx, out):
    if args.g is None:
        rep = series_order(parse_series(args.F, ctx, args.precision))
    else:
        rep = pair_order(_pair(args, ctx))
    out.doc.update(rep.to_json())
    out.lines.append(str(rep))


def cmd_complete(args, ctx, out):
    omega = parse_scalar(args.omega, ctx)
    prescribed = {}
    for item in args.set or []:
        k, _, val = item.partition("=")
        prescribed[int(k)] = parse_scalar(val, ctx)
    F = complete_to_order(omega, prescribed, args.precision)
    rep = series_order(F)
    out.put("F", series_json(F), f"F = {F}")
    out.put("order", rep.to_json(), str(rep))


def cmd_conjugate(args, ctx, out):
    p = _pair(args, ctx)
    C, normal = normalize(p)
    ok = rmul(rmul(rinv(C), p), C) == normal
    out.put("conjugator", {"h": series_json(C.g), "Sigma_F": series_json(C.F)},
            f"h = {C.g}\nSigma_F = {C.F}")
    out.put("normal", {"g0": str(normal.g0), "omega": str(normal.f1)},
            f"normal form = ({normal.g[0]}, {normal.F})")
    out.put("verified", ok, f"C^-1 p C == normal form: {ok}")
    if args.against_g is not None or args.against_F is not None:
        if args.against_g is None or args.against_F is None:
            raise RiordanError("--against-g and --against-F go together")
        q = RiordanPair(parse_series(args.against_g, ctx, args.precision),
                        parse_series(args.against_F, ctx, args.precision))
        c = is_conjugate(p, q)
        out.put("conjugate_to_other", c, f"conjugate to other pair: {c}")


def cmd_eigen(args, ctx, out):
    p = _pair(args, ctx)
    b = series_order(p.F).order
    spec = EigenSpec(args.k, b if b is not None else 0, _theta(args, ctx))
    v, lam = eigenvector(p, spec)
    ok = eigen_check(p, v, lam)
    out.put("v", series_json(v), f"v = {v}")
    out.put("lambda", str(lam), f"lambda = {lam}")
    out.put("check", ok, f"(g, F) v == lambda v: {ok}")


def cmd_identity(args, ctx, out):
    p = _pair(args, ctx)
    b = series_order(p.F).order
    spec = EigenSpec(args.k, b if b is not None else 0, _theta(args, ctx))
    v, lam = eigenvector(p, spec)
    ns = range(args.n, (args.upto if args.upto is not None else args.n) + 1)
    recs = [row_identity(p, spec, n, v, lam) for n in ns]
    if len(recs) == 1:
        out.doc.update(recs[0].to_json())
    else:
        out.doc["records"] = [r.to_json() for r in recs]
    out.lines.extend(r.to_text() for r in recs)


def cmd_marshall(args, ctx, out):
    g = parse_series(args.g, ctx, args.precision)
    F = marshall_F(g)
    ok = rpow(RiordanPair(g, F), 2).is_identity()
    out.put("F", series_json(F), f"F = {F}")
    out.put("involution", ok, f"(g, F)^2 == (1, x): {ok}")


def _random_positive(rng, ctx, N):
    coeffs = [0] + [rng.randint(-3, 3) for _ in range(min(N, 6))]
    if not any(coeffs[1:]):
        coeffs[1] = 1
    return Series(ctx, coeffs, N)


def cmd_cyclic_check(args, ctx, out):
    N = args.precision
    g = parse_series(args.g, ctx, N)
    F = parse_series(args.F, ctx, N) if args.F else None
    k = args.k
    if k is None:
        k = series_order(F).order if F is not None else 2
        if k is None:
            raise RiordanError("F has infinite order; pass --k explicitly")
    rng = random.Random(args.seed)
    ghat = g / g[0]
    e = CyclicSeriesEvaluator(ghat, k)
    cyc_ok = anti_ok = 0
    for _ in range(args.trials):
        xs = [_random_positive(rng, ctx, N) for _ in range(k)]
        cyc_ok += cyclic_sum(e, xs).is_zero()
        A, B = xs[0], _random_positive(rng, ctx, N)
        anti_ok += (phi2_eval(g, A, B) + phi2_eval(g, B, A)).is_zero()
    out.put("arity", k, f"arity k = {k}")
    out.put("cyclic_sums_zero", cyc_ok, f"cyclic sums vanishing: {cyc_ok}/{args.trials}")
    out.put("antisymmetric", anti_ok, f"Phi(A,B) + Phi(B,A) vanishing: {anti_ok}/{args.trials}")
    if F is not None:
        orbit = [compose_pow(F, i) for i in range(k)]
        rebuilt = exp_pos(e(orbit)) * g[0]
        ok = rebuilt == g
        out.put("reconstructs_g", ok, f"g0 * exp(phi(x, F, ..., F^(k-1))) == g: {ok}")
        if k == 2:
            ok2 = exp_pos(phi2_eval(g, Series.x(ctx, N), F)) * g[0] == g
            out.put("reconstructs_g_phi2", ok2, f"g0 * exp(Phi(x, F)) == g: {ok2}")


COMMANDS = {
    "eval": cmd_eval,
    "matrix": cmd_matrix,
    "order": cmd_order,
    "complete": cmd_complete,
    "conjugate": cmd_conjugate,
    "eigen": cmd_eigen,
    "identity": cmd_identity,
    "marshall": cmd_marshall,
    "cyclic-check": cmd_cyclic_check,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--precision", "-N", type=int, default=argparse.SUPPRESS,
                        help=f"truncation degree N (default {DEFAULT_PRECISION})")
    common.add_argument("--conductor", "-m", type=int, default=argparse.SUPPRESS,
                        help="work in Q(zeta_m); w denotes zeta_m (default 1)")
    common.add_argument("--json", action="store_true", default=argparse.SUPPRESS,
                        help="emit JSON")

    ap = argparse.ArgumentParser(prog="riordan", parents=[common],
                                 description="Exact Riordan group computations.")
    ap.add_argument("--version", action="version", version=__version__)
    sub = ap.add_subparsers(dest="command", required=True)

    def add(name, help_):
        return sub.add_parser(name, parents=[common], help=help_)

    p = add("eval", "evaluate a series expression")
    p.add_argument("expr", nargs="?")
    p.add_argument("--expr", dest="expr_opt", help=argparse.SUPPRESS)

    p = add("matrix", "expand the Riordan array of (g, F)")
    p.add_argument("--g", required=True)
    p.add_argument("--F", required=True)
    p.add_argument("--rows", type=int, default=8)

    p = add("order", "order of (g, F), or of F alone when --g is omitted")
    p.add_argument("--g")
    p.add_argument("--F", required=True)

    p = add("complete", "complete omega*x + prescribed terms to finite order")
    p.add_argument("--omega", required=True, help="root of unity, e.g. -1 or w")
    p.add_argument("--set", action="append", metavar="K=VALUE",
                   help="prescribe the coefficient of x^K (repeatable)")

    p = add("conjugate", "conjugate a finite-order pair to its normal form")
    p.add_argument("--g", required=True)
    p.add_argument("--F", required=True)
    p.add_argument("--against-g", help="g of a second pair to test for conjugacy")
    p.add_argument("--against-F", help="F of the second pair")

    for name, help_ in (("eigen", "eigenvector from free coefficients theta"),
                        ("identity", "row identity sum_k d[n,k] v_k = lambda v_n")):
        p = add(name, help_)
        p.add_argument("--g", required=True)
        p.add_argument("--F", required=True)
        p.add_argument("--k", type=int, default=0, help="residue of the lowest theta index")
        p.add_argument("--theta", default="1",
                       help="comma-separated theta_{k}, theta_{k+b}, ... (default 1)")
        if name == "identity":
            p.add_argument("--n", type=int, required=True, help="row index")
            p.add_argument("--upto", type=int, help="emit rows n..UPTO")

    p = add("marshall", "the involution partner F of a bi-invertible g")
    p.add_argument("--g", required=True)

    p = add("cyclic-check", "check antisymmetric / k-cyclic log constructions")
    p.add_argument("--g", required=True)
    p.add_argument("--F", help="finite-order F; enables the reconstruction check")
    p.add_argument("--k", type=int, help="arity (default: order of F, else 2)")
    p.add_argument("--trials", type=int, default=10)
    p.add_argument("--seed", type=int, default=0)
    return ap


_GLOBAL_VALUE_FLAGS = {"-N", "--precision", "-m", "--conductor"}
_GLOBAL_FLAGS = _GLOBAL_VALUE_FLAGS | {"--json", "-h", "--help", "--version"}
VALUE_OPTIONS = {"--g", "--F", "--omega", "--theta", "--set", "--against-g", "--against-F"}


def _glue_values(argv):
    """Attach option values that begin with '-' (like ``--F -x/(1+x)``)."""
    out = []
    in_eval = False
    i = 0
    while i < len(argv):
        tok = argv[i]
        if tok in VALUE_OPTIONS and i + 1 < len(argv):
            out.append(f"{tok}={argv[i + 1]}")
            i += 2
            continue
        if tok in _GLOBAL_VALUE_FLAGS and i + 1 < len(argv):
            out.extend(argv[i:i + 2])
            i += 2
            continue
        if in_eval and tok.startswith("-") and tok not in _GLOBAL_FLAGS and "=" not in tok:
            tok = f"--expr={tok}"
        in_eval = in_eval or tok == "eval"
        out.append(tok)
        i += 1
    return out


def run(argv=None) -> int:
    argv = sys.argv[1:] if argv is None else list(argv)
    args = build_parser().parse_args(_glue_values(argv))
    args.precision = getattr(args, "precision", DEFAULT_PRECISION)
    args.conductor = getattr(args, "conductor", 1)
    as_json = getattr(args, "json", False)
    if args.precision < 1 or args.conductor < 1:
        print("error: precision and conductor must be positive", file=sys.stderr)
        return 2
    out = _Out(as_json)
    try:
        COMMANDS[args.command](args, field(args.conductor), out)
    except (RiordanError, ZeroDivisionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    out.emit()
    return 0


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
