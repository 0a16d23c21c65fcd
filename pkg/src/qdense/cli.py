"""Command-line entry point: ``qdense {compute,bound,oracle,figure,verify}``.

Exit codes: 0 success, 1 verification failure, 2 bad usage,
3 precondition violation, 4 census budget exceeded.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path
from typing import Sequence

from . import bounds as B
from . import oracle as O
from .errors import BudgetExceeded, PreconditionError
from .gf import GF, span
from .qfunc import RealInterval, ball_size, euler_phi_interval, nu, pi_q_interval, qbinom, tau_linear, theta
from .render import DEFAULT_PLACES, fraction_str, interval_dict, render_decimal

EXIT_OK, EXIT_VERIFY, EXIT_USAGE, EXIT_PRECONDITION, EXIT_BUDGET = 0, 1, 2, 3, 4


def _fraction(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}")


def _positive_fraction(text: str) -> Fraction:
    x = _fraction(text)
    if x <= 0:
        raise argparse.ArgumentTypeError("must be > 0")
    return x


def _positive_int(text: str) -> int:
    x = int(text)
    if x < 1:
        raise argparse.ArgumentTypeError("must be >= 1")
    return x


def _int_or_inf(text: str) -> int | None:
    return None if text.lower() in ("inf", "infinity") else int(text)


def _q_list(text: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad q list {text!r}")


def _interval_out(iv: RealInterval, places: int) -> dict:
    d = interval_dict(iv, places)
    d["width"] = fraction_str(iv.width)
    return d


def _emit(obj, args) -> None:
    text = obj if isinstance(obj, str) else json.dumps(obj, indent=2, ensure_ascii=False) + "\n"
    if not text.endswith("\n"):
        text += "\n"
    out = getattr(args, "out", None)
    if out:
        Path(out).write_text(text, encoding="utf-8", newline="\n")
    else:
        sys.stdout.write(text)


def _load_json(path: str):
    try:
        return json.loads(Path(path).read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as exc:
        raise PreconditionError(f"cannot read {path}: {exc}") from exc


def _family(args) -> O.FamilySpec:
    try:
        return O.FamilySpec.from_dict(_load_json(args.family))
    except KeyError as exc:
        raise PreconditionError(f"family file lacks key {exc}") from exc


# --- compute -------------------------------------------------------------------


def cmd_compute(args) -> int:
    w = args.what
    if w == "qbinom":
        val = qbinom(args.a, args.b, args.q)
    elif w == "nu":
        val = nu(args.N, args.k, args.l, args.q)
    elif w == "theta":
        val = theta(args.n, args.u, args.i, args.q)
    elif w == "tau":
        val = tau_linear(args.r, args.k, args.N, args.q)
    elif w == "ball":
        val = ball_size(args.n, args.m, args.r, args.q)
    elif w == "pi":
        _emit(_interval_out(pi_q_interval(args.q, args.eps), args.places), args)
        return EXIT_OK
    elif w == "phi":
        x = args.x if args.x is not None else Fraction(1, args.q)
        if not 0 < x < 1:
            raise PreconditionError("need 0 < x < 1")
        _emit(_interval_out(euler_phi_interval(x, args.eps), args.places), args)
        return EXIT_OK
    else:  # pragma: no cover - argparse restricts choices
        raise PreconditionError(w)
    _emit(fraction_str(val), args)
    return EXIT_OK


# --- bound ---------------------------------------------------------------------


def _report_out(rep: B.BoundReport) -> dict:
    return rep.to_dict()


def cmd_bound(args) -> int:
    w = args.what
    places = args.places
    if w == "cc":
        data = _load_json(args.profile)
        prof = B.IntersectionProfile.from_dict(data)
        q = args.q if args.q is not None else data.get("q")
        if q is None:
            raise PreconditionError("q missing: give --q or a \"q\" key in the profile")
        rep = B.cc_bounds(prof, int(q))
    elif w == "cc-lmax":
        rep = B.cc_bounds_lmax(args.s, args.l_max, args.N, args.k, args.q)
    elif w == "cone":
        rep = B.cone_bounds(args.cone_size, args.N, args.k, args.q)
    elif w == "mrd-q":
        rep = B.BoundReport({"bound": "mrd-q", "n": args.n, "m": args.m, "d": args.d, "q": args.q}, None,
                            B.mrd_density_upper_q(args.n, args.m, args.d, args.q), kind="density")
    elif w == "generic":
        rep = B.generic_density_bounds(args.n, args.m, args.k, args.d, args.q)
    elif w == "mrd-m":
        iv = B.mrd_density_upper_m(args.n, args.d, args.q, args.eps)
        _emit({"params": {"bound": "mrd-m", "n": args.n, "d": args.d, "q": args.q, "eps": fraction_str(args.eps)},
               "upper": _interval_out(iv, places)}, args)
        return EXIT_OK
    elif w == "prior":
        out = []
        for lb in B.prior_bounds(args.n, args.m, args.d, args.q, args.eps):
            if isinstance(lb.value, RealInterval):
                out.append({"label": lb.label, "interval": _interval_out(lb.value, places)})
            else:
                out.append({"label": lb.label, "exact": fraction_str(lb.value),
                            "decimal": render_decimal(lb.value, places)})
        _emit({"params": {"bound": "prior", "n": args.n, "m": args.m if args.m is not None else "inf", "d": args.d,
                          "q": args.q if args.q is not None else "inf"}, "bounds": out}, args)
        return EXIT_OK
    elif w == "tingley":
        val = B.tingley_lower(args.s, args.q)
        rep = B.BoundReport({"bound": "tingley", "s": args.s, "q": args.q, "counts": "common complements"},
                            Fraction(val), None)
    elif w == "section7":
        vals = {key: getattr(args, key) for key in ("delta_first", "delta_rest", "delta_2xm", "count", "dual_count")
                if getattr(args, key) is not None}
        try:
            rep = B.section7_bounds(args.relation, args.n, args.m, args.d, args.q, **vals)
        except KeyError as exc:
            raise PreconditionError(f"relation {args.relation} needs --{exc.args[0].replace('_', '-')}") from exc
    else:  # pragma: no cover
        raise PreconditionError(w)
    if getattr(args, "check", None) is not None:
        rep = rep.check(args.check)
    _emit(_report_out(rep), args)
    return EXIT_OK


# --- oracle --------------------------------------------------------------------


def cmd_oracle(args) -> int:
    w = args.what
    t, budget = args.threads, args.budget
    if w == "cc":
        fam = _family(args)
        k = fam.N - fam.member_dim
        comps, meeting = O.count_common_complements(fam, k, t, budget)
        out = {"params": {"q": fam.field.q, "N": fam.N, "k": k, "s": fam.s},
               "counts": {"complements": comps, "intersecting": meeting, "total": comps + meeting}}
    elif w == "profile":
        fam = _family(args)
        prof = O.intersection_profile(fam)
        out = {"q": fam.field.q, **prof.to_dict()}
    elif w == "cone":
        if args.rank_ball:
            n, m, r = args.rank_ball
            F = GF(args.q)
            cone, N = O.rank_ball_cone(n, m, r, F), n * m
        else:
            fam = _family(args)
            F, N = fam.field, fam.N
            cone = O.union_cone(fam.members)
        if args.k is None:
            raise PreconditionError("--k is required")
        good = O.count_distinguishing_cone(cone, N, args.k, F, t, budget)
        total = qbinom(N, args.k, F.q)
        out = {"params": {"q": F.q, "N": N, "k": args.k, "cone": cone.label, "cone_size": cone.size},
               "counts": {"distinguishing": good, "meeting": total - good, "total": total}}
    elif w == "mrd":
        out = O.mrd_census(args.n, args.m, args.d, args.q, t, budget).to_dict()
    elif w == "dual":
        out = O.dual_census(args.n, args.m, args.d, args.q, t, budget).to_dict()
    elif w == "split":
        out = O.split_census(args.n, args.m, args.d, args.q, t, budget).to_dict()
    elif w == "nu":
        seen = O.nu_census(args.N, args.k, args.q, budget)
        out = {"params": {"N": args.N, "k": args.k, "q": args.q},
               "counts": {str(l): sorted(v) for l, v in seen.items()},
               "formula": {str(l): nu(args.N, args.k, l, args.q) for l in seen}}
    elif w == "theta":
        out = {"params": {"n": args.n, "u": args.u, "q": args.q},
               "counts": {str(i): c for i, c in O.theta_census(args.n, args.u, args.q).items()}}
    elif w == "tau":
        if args.family:
            fam = _family(args)
            pts = {v for A in fam.members for v in A.projective_points()}
            F, N = fam.field, fam.N
        else:
            if args.N is None or args.k is None or args.q is None:
                raise PreconditionError("give --family, or --N --k --q for a coordinate subspace")
            F, N = GF(args.q), args.N
            pts = set(span([[int(i == j) for j in range(N)] for i in range(args.k)], N, F).projective_points())
        val = O.count_distinguishing_functionals(pts, args.r, N, F)
        out = {"params": {"q": F.q, "N": N, "r": args.r, "points": len(pts)}, "counts": {"tau": val}}
    else:  # pragma: no cover
        raise PreconditionError(w)
    _emit(out, args)
    return EXIT_OK


# --- figure, verify ------------------------------------------------------------


def cmd_figure(args) -> int:
    from .figures import figure_csv

    _emit(figure_csv(args.which, args.q_list, args.places), args)
    return EXIT_OK


def cmd_verify(args) -> int:
    from .verify import run

    report = run(args.level, threads=args.threads)
    for rec in report.records:
        print(rec.line(), file=sys.stderr)
    _emit(report.to_dict(), args)
    return EXIT_OK if report.passed else EXIT_VERIFY


# --- parser --------------------------------------------------------------------


def _add(p: argparse.ArgumentParser, *names: str, **kw) -> None:
    for name in names:
        p.add_argument(f"--{name}", type=int, required=kw.get("required", True),
                       dest=name.replace("-", "_"))


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="qdense", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out", help="write output to this file instead of stdout")
    common.add_argument("--places", type=int, default=DEFAULT_PLACES, help="decimal places (default 12)")
    eps = argparse.ArgumentParser(add_help=False)
    eps.add_argument("--eps", type=_positive_fraction, default=Fraction(1, 10**12),
                     help="interval width target (default 1e-12)")

    comp = sub.add_parser("compute", help="evaluate a closed formula").add_subparsers(dest="what", required=True)
    p = comp.add_parser("qbinom", parents=[common])
    _add(p, "a", "b", "q")
    p = comp.add_parser("nu", parents=[common])
    _add(p, "N", "k", "l", "q")
    p = comp.add_parser("theta", parents=[common])
    _add(p, "n", "u", "i", "q")
    p = comp.add_parser("tau", parents=[common])
    _add(p, "r", "k", "N", "q")
    p = comp.add_parser("ball", parents=[common])
    _add(p, "n", "m", "r", "q")
    p = comp.add_parser("pi", parents=[common, eps])
    _add(p, "q")
    p = comp.add_parser("phi", parents=[common, eps])
    _add(p, "q", required=False)
    p.add_argument("--x", type=_fraction, help="evaluate at x instead of 1/q")

    bnd = sub.add_parser("bound", help="evaluate a bound").add_subparsers(dest="what", required=True)
    check = argparse.ArgumentParser(add_help=False)
    check.add_argument("--check", type=int, help="oracle count to test against the bounds")
    p = bnd.add_parser("cc", parents=[common, check])
    p.add_argument("--profile", required=True, help="intersection profile JSON")
    _add(p, "q", required=False)
    p = bnd.add_parser("cc-lmax", parents=[common, check])
    _add(p, "s", "l-max", "N", "k", "q")
    p = bnd.add_parser("cone", parents=[common, check])
    _add(p, "cone-size", "N", "k", "q")
    p = bnd.add_parser("mrd-q", parents=[common])
    _add(p, "n", "m", "d", "q")
    p = bnd.add_parser("generic", parents=[common])
    _add(p, "n", "m", "k", "d", "q")
    p = bnd.add_parser("mrd-m", parents=[common, eps])
    _add(p, "n", "d", "q")
    p = bnd.add_parser("prior", parents=[common, eps])
    _add(p, "n", "d")
    p.add_argument("--m", type=_int_or_inf, default=None, help="an integer, or 'inf' (default)")
    p.add_argument("--q", type=_int_or_inf, default=None, help="a prime power, or 'inf' (default)")
    p = bnd.add_parser("tingley", parents=[common])
    _add(p, "s", "q")
    p = bnd.add_parser("section7", parents=[common])
    _add(p, "n", "m", "d", "q")
    p.add_argument("--relation", choices=B.SECTION7_RELATIONS, required=True)
    for name in ("delta-first", "delta-rest", "delta-2xm"):
        p.add_argument(f"--{name}", type=_fraction, dest=name.replace("-", "_"))
    p.add_argument("--count", type=int)
    p.add_argument("--dual-count", type=int, dest="dual_count")

    orc = sub.add_parser("oracle", help="run a brute-force census").add_subparsers(dest="what", required=True)
    run_opts = argparse.ArgumentParser(add_help=False)
    run_opts.add_argument("--threads", type=_positive_int, default=1)
    run_opts.add_argument("--budget", type=_positive_int, default=None,
                          help="maximum subspaces to enumerate (default 2e6 or $QDENSE_BUDGET)")
    fam = argparse.ArgumentParser(add_help=False)
    fam.add_argument("--family", help="family JSON: {q, p, e, N, members: [[rows]]}")
    for name in ("cc", "profile"):
        p = orc.add_parser(name, parents=[common, run_opts])
        p.add_argument("--family", required=True)
    p = orc.add_parser("cone", parents=[common, run_opts, fam])
    p.add_argument("--rank-ball", type=lambda s: tuple(int(x) for x in s.split(",")), metavar="n,m,r")
    _add(p, "k", "q", required=False)
    for name in ("mrd", "dual", "split"):
        p = orc.add_parser(name, parents=[common, run_opts])
        _add(p, "n", "m", "d", "q")
    p = orc.add_parser("nu", parents=[common, run_opts])
    _add(p, "N", "k", "q")
    p = orc.add_parser("theta", parents=[common, run_opts])
    _add(p, "n", "u", "q")
    p = orc.add_parser("tau", parents=[common, run_opts, fam])
    _add(p, "r")
    _add(p, "N", "k", "q", required=False)

    p = sub.add_parser("figure", parents=[common], help="write bound curves as CSV")
    p.add_argument("which", choices=("fig1", "fig2"))
    p.add_argument("--q-list", type=_q_list, default=[2, 3, 4, 5], dest="q_list")

    p = sub.add_parser("verify", parents=[common], help="run the acceptance checks")
    p.add_argument("level", choices=("smoke", "full"))
    p.add_argument("--threads", type=_positive_int, default=4)
    return parser


HANDLERS = {"compute": cmd_compute, "bound": cmd_bound, "oracle": cmd_oracle, "figure": cmd_figure,
            "verify": cmd_verify}


def run(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        return HANDLERS[args.command](args)
    except PreconditionError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION
    except BudgetExceeded as exc:
        print(f"budget exceeded: {exc}", file=sys.stderr)
        return EXIT_BUDGET


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
