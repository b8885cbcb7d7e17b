"""Command-line interface.

Exit codes: 0 success (or criterion met), 1 invalid input, 2 resource cap
exceeded, 3 criterion not met. Data goes to stdout or --out; progress and
diagnostics go to stderr.
"""

from __future__ import annotations

import argparse
import sys

from . import densities, iwasawa, matsuno
from .arith import is_prime
from .classify import scan_proportions, stderr_progress
from .errors import CapExceeded, EcGrowthError, NoSuchExtension
from .extensions import ExtensionProfile, unique_extension_of_conductor_q
from .ingest import VerdictRow, csv_text, parse_curve_file, parse_curve_line
from .localdata import conductor, factor_integer, local_data_table, minimal_model, tate_algorithm

EXIT_OK, EXIT_INPUT, EXIT_CAP, EXIT_NOT_MET = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    # argparse exits with 2 on bad usage; 2 is reserved for cap errors here
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        sys.exit(EXIT_INPUT)


def _add_curve(sp, required=True):
    sp.add_argument("--curve", help='inline model "a1 a2 a3 a4 a6 [label] [key=value ...]"')
    sp.add_argument("--curve-file", help="file with one curve per line")
    sp.set_defaults(curve_required=required)


def _add_assumptions(sp):
    g = sp.add_argument_group("assumptions (never computed)")
    g.add_argument("--assume-rank0", action="store_true", help="rank E(Q) = 0")
    g.add_argument("--assume-mu0", action="store_true", help="mu(E/Q) = 0")
    g.add_argument("--assume-lambda0", action="store_true", help="lambda(E/Q) = 0")
    g.add_argument("--assume-sha-finite", action="store_true", help="Sha(E/L)[p^inf] finite")
    g.add_argument("--assume-torsion-trivial", action="store_true", help="E(Q)[p^inf] = 0")
    g.add_argument("--assume-ordinary", action="store_true", help="E is good ordinary at p")
    g.add_argument("--assume-all", action="store_true", help="all of the above")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="ecgrowth", description=__doc__.splitlines()[0])
    parser.add_argument("--quiet", action="store_true", help="no progress output")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    sp = sub.add_parser("table-expression", help="rank-zero density expression for a range of p")
    sp.add_argument("--pmin", type=int, default=3)
    sp.add_argument("--pmax", type=int, default=47)
    sp.add_argument("--xbound", type=int, default=179_424_673)
    sp.add_argument("--workers", type=int, default=1)
    sp.add_argument("--out")

    sp = sub.add_parser("scan", help="enemy/friendly counts for q <= X, q = 1 mod p")
    _add_curve(sp)
    sp.add_argument("--p", type=int, required=True)
    sp.add_argument("--xbound", type=int, required=True)
    sp.add_argument("--workers", type=int, default=1)
    sp.add_argument("--out")

    sp = sub.add_parser("criterion", help="lambda-stability or the Selmer-growth criterion (lkr)")
    sp.add_argument("kind", choices=["lkr", "lambda-stable"])
    _add_curve(sp)
    sp.add_argument("--p", type=int, required=True)
    sp.add_argument("--q", type=int, help="prime conductor of the extension")
    sp.add_argument("--conductor", type=int, help="conductor of the extension")
    sp.add_argument("--out")
    _add_assumptions(sp)

    sp = sub.add_parser("gl2-count", help="#{g in GL2(F_p): tr 2, det 1}")
    sp.add_argument("--p", type=int, required=True)
    sp.add_argument("--mode", choices=["formula", "bruteforce"], default="formula")

    sp = sub.add_parser("kida", help="lambda(E/L) from Kida's formula")
    sp.add_argument("--lambda", dest="lam", type=int, required=True)
    sp.add_argument("--p", type=int, required=True)
    sp.add_argument("profile", nargs="*", help='entries like "P2:31:e=5" (comma separated or repeated)')

    sp = sub.add_parser("matsuno", help="prime-picking plan for 2-rank growth of Sha")
    _add_curve(sp)
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--rank", type=int, help="rank of E(Q) (default: from the curve record, else 0)")

    sp = sub.add_parser("tate", help="local reduction data")
    _add_curve(sp)
    sp.add_argument("--q", type=int, help="prime (default: every bad prime)")

    sp = sub.add_parser("cojocaru", help="proportion of q <= X with p | #E(F_q)")
    _add_curve(sp)
    sp.add_argument("--p", type=int, required=True)
    sp.add_argument("--xbound", type=int, required=True)
    sp.add_argument("--workers", type=int, default=1)
    return parser


def _records(args):
    if args.curve and args.curve_file:
        raise UsageError("give either --curve or --curve-file, not both")
    if args.curve:
        text = args.curve.replace(",", " ").replace("[", " ").replace("]", " ")
        rec = parse_curve_line(text)
        if rec is None:
            raise UsageError("empty --curve")
        return [rec]
    if args.curve_file:
        recs = parse_curve_file(args.curve_file)
        if not recs:
            raise UsageError(f"no curves in {args.curve_file}")
        return recs
    raise UsageError("one of --curve or --curve-file is required")


def _emit(args, text):
    out = getattr(args, "out", None)
    if out:
        with open(out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _progress(args, label):
    return None if args.quiet else stderr_progress(label)


def _check_prime(name, value, minimum=2):
    if value < minimum or not is_prime(value):
        raise UsageError(f"--{name} must be a prime >= {minimum}, got {value}")


def _check_workers(args):
    if args.workers < 1:
        raise UsageError("--workers must be at least 1")


def cmd_table_expression(args):
    if not 3 <= args.pmin <= args.pmax:
        raise UsageError("need 3 <= --pmin <= --pmax")
    if args.xbound < 2:
        raise UsageError("--xbound must be at least 2")
    _check_workers(args)
    ps = [p for p in range(args.pmin, args.pmax + 1) if is_prime(p)]
    results = densities.rank_zero_table(ps, args.xbound, args.workers, _progress(args, "sieve"))
    _emit(args, csv_text(results, "density"))
    return EXIT_OK


def cmd_scan(args):
    _check_prime("p", args.p, 5)
    if args.xbound < 2:
        raise UsageError("--xbound must be at least 2")
    _check_workers(args)
    recs = _records(args)
    reports = []
    for rec in recs:
        reports.append(scan_proportions(rec.curve(), args.p, args.xbound, args.workers,
                                        _progress(args, f"scan {rec.name}")))
    _emit(args, csv_text(reports, "scan"))
    return EXIT_OK


def _profile(args):
    if (args.q is None) == (args.conductor is None):
        raise UsageError("give exactly one of --q or --conductor")
    if args.q is not None:
        return unique_extension_of_conductor_q(args.p, args.q)
    f = factor_integer(args.conductor) if args.conductor > 1 else {}
    p_part = f.pop(args.p, 0)
    if p_part not in (0, 2) or any(e != 1 for e in f.values()):
        raise NoSuchExtension(f"{args.conductor} is not the conductor of a Z/{args.p}Z-extension")
    profile = ExtensionProfile(args.p, frozenset(f), p_ramified=p_part == 2)
    if not profile.ramified_primes:
        raise NoSuchExtension("an extension ramified only at p lies in the cyclotomic tower")
    return profile


def _assumptions(args, rec):
    a = args.assume_all
    out = iwasawa.IwasawaAssumptions(
        rank_zero=a or args.assume_rank0 or rec.rank == 0,
        torsion_p_trivial=a or args.assume_torsion_trivial,
        mu_zero=a or args.assume_mu0 or rec.mu == 0,
        lambda_q=0 if (a or args.assume_lambda0) else rec.lambda_,
        sha_finite_over_l=a or args.assume_sha_finite,
        good_ordinary_at_p=a or args.assume_ordinary,
        residual_surjective=a,
    )
    return out


def cmd_criterion(args):
    _check_prime("p", args.p, 3)
    profile = _profile(args)
    rows, all_met = [], True
    for rec in _records(args):
        E = rec.curve()
        assumptions = _assumptions(args, rec)
        if args.kind == "lkr":
            v = iwasawa.lkr_check(E, args.p, profile, assumptions)
            met, name, reasons = v.met, v.name, v.reasons
            print(f"{rec.name}: {v}")
            for ell, info in sorted(v.checks.items()):
                detail = " ".join(f"{k}={val}" for k, val in info.items())
                print(f"  ell={ell} {detail}")
            for fact in v.certified:
                print(f"  certified: {fact}")
            for note in v.notes:
                print(f"warning: {note}", file=sys.stderr)
        else:
            v = iwasawa.lambda_stable(E, args.p, profile, assumptions)
            met, name = v.stable, str(v)
            reasons = tuple(f"P1:{q}" for q in sorted(v.P1)) + tuple(f"P2:{q}" for q in sorted(v.P2))
            print(f"{rec.name}: {v} lambda(E/L)={v.lambda_L}")
            for fact in v.consequences:
                print(f"  certified: {fact}")
        all_met = all_met and met
        rows.append(VerdictRow(rec.name, args.p, conductor(E), name, reasons))
    if args.out:
        _emit(args, csv_text(rows, "verdict"))
    return EXIT_OK if all_met else EXIT_NOT_MET


def cmd_gl2_count(args):
    _check_prime("p", args.p, 3)
    print(densities.chebotarev_set_size(args.p, args.mode))
    return EXIT_OK


def _parse_kida_profile(entries, p):
    P1, P2 = {}, {}
    for entry in entries:
        for item in filter(None, (s.strip() for s in entry.split(","))):
            parts = item.split(":")
            if len(parts) not in (2, 3) or parts[0].upper() not in ("P1", "P2"):
                raise UsageError(f"bad profile entry {item!r}; expected P1:<prime>[:e=<index>]")
            try:
                q = int(parts[1])
                e = int(parts[2].split("=", 1)[1]) if len(parts) == 3 else p
            except (ValueError, IndexError):
                raise UsageError(f"bad profile entry {item!r}") from None
            target = P1 if parts[0].upper() == "P1" else P2
            if q in P1 or q in P2:
                raise UsageError(f"prime {q} listed twice")
            target[q] = e
    return P1, P2


def cmd_kida(args):
    P1, P2 = _parse_kida_profile(args.profile, args.p)
    print(iwasawa.kida_lambda(args.lam, args.p, P1, P2))
    return EXIT_OK


def cmd_matsuno(args):
    if args.n < 1:
        raise UsageError("--n must be at least 1")
    for rec in _records(args):
        rank = args.rank if args.rank is not None else (rec.rank or 0)
        plan = matsuno.matsuno_plan(rec.curve(), args.n, rank)
        est = "undefined" if plan.asymptotic_estimate is None else f"{plan.asymptotic_estimate:.6g}"
        print(f"{rec.name}: n={plan.n} rank={plan.rank_q} k={plan.k} "
              f"[Q(E[2]):Q]={plan.galois_degree} c={plan.c}")
        print(f"  primes: {' '.join(map(str, plan.picked_primes))}")
        print(f"  product: {plan.conductor_product}")
        print(f"  asymptotic estimate: {est}")
        print(f"  Sha[2] rank lower bound over K: {plan.sha_two_rank_bound}")
        for a in plan.assumptions:
            print(f"  assumes: {a}")
    return EXIT_OK


def _format_local(d):
    tam = "?" if d.tamagawa is None else d.tamagawa
    return (f"ell={d.prime} reduction={d.reduction_type.value} kodaira={d.kodaira} "
            f"tamagawa={tam} f={d.conductor_exponent} v_disc_min={d.v_disc_min}")


def cmd_tate(args):
    for rec in _records(args):
        E = minimal_model(rec.curve())
        print(f"{rec.name}: minimal model {list(E.ainvs)} conductor={conductor(E)}")
        if args.q is not None:
            _check_prime("q", args.q)
            print("  " + _format_local(tate_algorithm(E, args.q)))
        else:
            for d in local_data_table(E).values():
                print("  " + _format_local(d))
    return EXIT_OK


def cmd_cojocaru(args):
    _check_prime("p", args.p, 3)
    _check_workers(args)
    for rec in _records(args):
        r = densities.cojocaru_scan(rec.curve(), args.p, args.xbound, args.workers)
        print(f"{rec.name}: p={r.p} X={r.X} count={r.count} pi_X={r.pi_X} "
              f"proportion={densities.format_6g(r.proportion)} 1/p={densities.format_6g(1 / r.p)}")
    return EXIT_OK


COMMANDS = {
    "table-expression": cmd_table_expression,
    "scan": cmd_scan,
    "criterion": cmd_criterion,
    "gl2-count": cmd_gl2_count,
    "kida": cmd_kida,
    "matsuno": cmd_matsuno,
    "tate": cmd_tate,
    "cojocaru": cmd_cojocaru,
}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return COMMANDS[args.command](args)
    except CapExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CAP
    except (UsageError, EcGrowthError, ValueError, OSError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
