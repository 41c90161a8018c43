"""Command-line verification reports.

    hecke-koszul check    --zoo dj --dim 2 --q 3
    hecke-koszul poincare --zoo sum:dj1+odd --q 2
    hecke-koszul koszul   --zoo superflip --m 1 --n 1 --max 5 --berezinian
    hecke-koszul lr       --m 2 --n 2

Exit codes: 0 pass, 1 verification failure (or undetermined), 2 input or
parse error, 3 resource cap exceeded.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
import time
from typing import Any

from gmpy2 import mpq

from . import __version__
from .errors import (AxiomViolation, HeckeError, MismatchedQ, ParseError, PoleAtQ, ResourceCapExceeded,
                     RootOfUnity, Undetermined)
from .exact import ExactMatrix, Rat, check_not_root_of_unity, qint, rat, rat_str
from .hecke import DEFAULT_MAX_AMBIENT_DIM, HeckeSym, check_hecke, compute_P
from .koszul import berezinian_check, koszul, random_point
from .partitions import birank_hom_queries, verify_theorem1_homs
from .qspaces import DEFAULT_GUARD, DEFAULT_MAX_DEGREE, poincare
from .zoo import family_from_spec, load_family, super_flip

EXIT_PASS, EXIT_FAIL, EXIT_INPUT, EXIT_CAP = 0, 1, 2, 3
PASS, FAIL, UNDETERMINED = "pass", "fail", "undetermined"


class InputError(Exception):
    pass


def jsonable(x: Any):
    if isinstance(x, Rat):
        return rat_str(x)
    if isinstance(x, bool) or x is None or isinstance(x, (int, float, str)):
        return x
    if isinstance(x, dict):
        return {(",".join(map(str, k)) if isinstance(k, tuple) else str(k)): jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [jsonable(v) for v in x]
    if isinstance(x, ExactMatrix):
        return [[rat_str(v) for v in row] for row in x.to_dense()]
    return str(x)


# ---------------------------------------------------------------------------
# sources


def _source_desc(args) -> dict:
    if args.file:
        return {"file": args.file}
    return {"zoo": args.zoo, "dim": args.dim, "m": args.m, "n": args.n}


def _is_superflip(args) -> bool:
    return not args.file and args.zoo == "superflip"


def _family(args):
    if args.file:
        return load_family(args.file)
    if args.zoo is None:
        raise InputError("give --zoo NAME or --file PATH")
    if args.zoo == "dj":
        if args.dim is None:
            raise InputError("--zoo dj needs --dim")
        return family_from_spec(f"dj{args.dim}")
    return family_from_spec(args.zoo)


def build_sym(args, q) -> HeckeSym:
    """Construct the R-matrix selected by the arguments at q (q is forced to 1 for super flips)."""
    cap = args.max_ambient_dim
    if _is_superflip(args):
        if args.m is None or args.n is None:
            raise InputError("--zoo superflip needs --m and --n")
        return super_flip(args.m, args.n, max_ambient_dim=cap)
    fam = _family(args)
    check_not_root_of_unity(q, max(getattr(args, "max", None) or 0, DEFAULT_MAX_DEGREE + 1))
    return fam.at(q, max_ambient_dim=cap)


def _q_values(args) -> list[Rat]:
    if _is_superflip(args):
        if args.q is not None and rat(args.q) != 1:
            raise InputError("super flips are only defined at q = 1")
        return [mpq(1)]
    if getattr(args, "scan_q", None):
        return [rat(s) for s in args.scan_q.split(",") if s.strip()]
    if args.q is None:
        raise InputError("--q is required for this source")
    return [rat(args.q)]


# ---------------------------------------------------------------------------
# commands


def cmd_check(args) -> tuple[dict, str]:
    q = _q_values(args)[0]
    try:
        sym = build_sym(args, q)
    except AxiomViolation as exc:
        rep = exc.report
        res = {"braid": rep.braid, "quadratic": rep.quadratic,
               "half_adjoint_invertible": rep.half_adjoint_invertible,
               "failed": rep.failed(), "witnesses": rep.witnesses}
        return res, FAIL
    rep = check_hecke(sym.R, sym.q)
    P = compute_P(sym)
    res = {"d": sym.d, "q": sym.q, "braid": rep.braid, "quadratic": rep.quadratic,
           "half_adjoint_invertible": rep.half_adjoint_invertible, "rank_q": sym.rank_q,
           "P_nnz": P.nnz}
    return res, PASS if rep.ok else FAIL


def _poincare_result(sym, K, guard) -> dict:
    rep = poincare(sym, K, guard)
    out = {"lambda_dims": rep.lambda_dims, "sym_dims": rep.sym_dims, "numer": rep.numer,
           "denom": rep.denom, "birank": rep.birank, "roots_ok": rep.roots_ok,
           "duality_ok": rep.duality_ok, "rank_q": sym.rank_q}
    if rep.birank is not None:
        m, n = rep.birank
        out["rank_relation_ok"] = sym.rank_q == -qint(n - m, sym.q)
    if rep.detail:
        out["detail"] = rep.detail
    return out


def cmd_poincare(args) -> tuple[dict, str]:
    q = _q_values(args)[0]
    sym = build_sym(args, q)
    res = _poincare_result(sym, args.max_k, args.guard)
    if res["birank"] is None:
        status = UNDETERMINED
    else:
        status = PASS if res["roots_ok"] and res["duality_ok"] and res["rank_relation_ok"] else FAIL
    res["q"] = sym.q
    return res, status


def _koszul_at(args, sym) -> tuple[dict, str]:
    kmax = args.kmax if args.kmax is not None else args.max
    lmax = args.lmax if args.lmax is not None else args.max
    K = koszul(sym)
    table = K.homology_table(kmax, lmax)
    bigrades = [(k, l) for k in range(kmax + 1) for l in range(lmax + 1)]
    gur = [K.gurevich(k, l) for k, l in bigrades]
    gur_ok = all(g.matches for g in gur)
    dd_ok = all((K.d(k + 1, l + 1) @ K.d(k, l)).is_zero() for k, l in bigrades)
    dpdp_ok = all((K.dprime(k - 1, l - 1) @ K.dprime(k, l)).is_zero()
                  for k, l in bigrades if k >= 2 and l >= 2)
    pres = _poincare_result(sym, args.max_k, args.guard)
    res = {"q": sym.q, "kmax": kmax, "lmax": lmax, "rank_q": sym.rank_q,
           "homology": table.grid(), "nonzero": table.nonzero(),
           "gurevich_ok": gur_ok, "d_squared_zero": dd_ok, "dprime_squared_zero": dpdp_ok,
           "birank": pres["birank"]}
    failures = [] if gur_ok else [f"gurevich at {(g.k, g.l)}" for g in gur if not g.matches]
    if not dd_ok:
        failures.append("d^2 != 0")
    if not dpdp_ok:
        failures.append("d'^2 != 0")
    status = PASS
    if pres["birank"] is None:
        status = UNDETERMINED
    else:
        m, n = pres["birank"]
        res["rank_relation_ok"] = pres["rank_relation_ok"]
        concentrated = table.nonzero() == {(m, n): 1}
        res["concentrated"] = concentrated
        if not pres["rank_relation_ok"]:
            failures.append("rank_q != -[n-m]_q")
        if not concentrated:
            failures.append(f"homology not concentrated at {(m, n)}")
        else:
            gen = K.homology_generator(m, n)
            res["generator"] = {"m": m, "n": n, "coords": gen.coords}
            if args.berezinian:
                if sym.q != 1 or not _is_superflip(args):
                    raise InputError("--berezinian needs --zoo superflip")
                rng = random.Random(args.seed)
                pt = random_point(m, n, rng)
                b = berezinian_check((m, n), pt, K)
                res["berezinian"] = {"seed": args.seed, "A": pt.A, "D": pt.D,
                                     "scalar_action": b.scalar_action, "berezinian": b.berezinian,
                                     "equal": b.equal, "commutes": b.commutes}
                if not b.equal:
                    failures.append("scalar action != det A / det D")
    res["failures"] = failures
    if failures:
        status = FAIL
    return res, status


def cmd_koszul(args) -> tuple[dict, str]:
    qs = _q_values(args)
    runs = []
    for q in qs:
        sym = build_sym(args, q)
        runs.append(_koszul_at(args, sym))
    if len(runs) == 1:
        return runs[0]
    grids = [r["homology"] for r, _ in runs]
    identical = all(g == grids[0] for g in grids)
    statuses = [s for _, s in runs]
    if FAIL in statuses or not identical:
        status = FAIL
    elif UNDETERMINED in statuses:
        status = UNDETERMINED
    else:
        status = PASS
    return {"scan": [r for r, _ in runs], "identical_tables": identical}, status


def cmd_lr(args) -> tuple[dict, str]:
    if args.m is None or args.n is None:
        raise InputError("lr needs --m and --n")
    if args.m < 1 or args.n < 1:
        raise InputError("lr needs m >= 1 and n >= 1")
    h = verify_theorem1_homs(args.m, args.n)
    qs = birank_hom_queries(args.m, args.n)
    res = {"homs": h, "expected": (1, 0, 0),
           "queries": [{"alpha": str(x.alpha), "row": x.row, "beta": str(x.beta), "col": x.col} for x in qs]}
    return res, PASS if h == (1, 0, 0) else FAIL


COMMANDS = {"check": cmd_check, "poincare": cmd_poincare, "koszul": cmd_koszul, "lr": cmd_lr}


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="hecke-koszul", description=__doc__.split("\n\n")[0])
    p.add_argument("--version", action="version", version=__version__)
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--zoo", help="dj, superflip, odd, or sum:A+B (e.g. sum:dj1+odd)")
    common.add_argument("--file", help="R-matrix file (YAML/JSON)")
    common.add_argument("--dim", type=int, help="N for --zoo dj")
    common.add_argument("--m", type=int, help="even dimension / hook rows")
    common.add_argument("--n", type=int, help="odd dimension / hook columns")
    common.add_argument("--q", help="exact rational, e.g. 2 or 7/3")
    common.add_argument("--json", action="store_true", help="emit the report as JSON")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--max-ambient-dim", type=int, default=DEFAULT_MAX_AMBIENT_DIM)
    common.add_argument("--max-k", type=int, default=DEFAULT_MAX_DEGREE,
                        help="top degree of the computed Poincare series")
    common.add_argument("--guard", type=int, default=DEFAULT_GUARD)
    sub = p.add_subparsers(dest="command", required=True)
    sub.add_parser("check", parents=[common], help="Hecke axioms, P and rank_q")
    sub.add_parser("poincare", parents=[common], help="exterior/symmetric dimensions and birank")
    kz = sub.add_parser("koszul", parents=[common], help="Koszul homology and identities")
    kz.add_argument("--max", type=int, default=4)
    kz.add_argument("--kmax", type=int)
    kz.add_argument("--lmax", type=int)
    kz.add_argument("--scan-q", help="comma-separated rationals")
    kz.add_argument("--berezinian", action="store_true")
    sub.add_parser("lr", parents=[common], help="hook-restricted Pieri Hom dimensions")
    return p


def _inputs(args) -> dict:
    out = {"source": _source_desc(args), "q": args.q}
    for name in ("max", "kmax", "lmax", "scan_q", "berezinian", "max_k", "guard", "seed", "max_ambient_dim"):
        if hasattr(args, name):
            out[name] = getattr(args, name)
    if args.command == "lr":
        out = {"m": args.m, "n": args.n}
    return out


def _render_text(report: dict) -> str:
    lines = [f"{report['command']}: {report['status']}"]

    def walk(prefix, v):
        if isinstance(v, dict):
            for k, x in v.items():
                walk(f"{prefix}{k}.", x)
        elif isinstance(v, list) and v and isinstance(v[0], dict):
            for i, x in enumerate(v):
                walk(f"{prefix}{i}.", x)
        else:
            lines.append(f"  {prefix[:-1]}: {v}")

    walk("", report["results"])
    lines.append(f"  time: {report['timings']['total_s']:.3f}s")
    return "\n".join(lines)


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    t0 = time.perf_counter()
    code = EXIT_PASS
    try:
        results, status = COMMANDS[args.command](args)
        code = EXIT_PASS if status == PASS else EXIT_FAIL
    except ResourceCapExceeded as exc:
        results, status, code = {"error": {"type": "ResourceCapExceeded", "message": str(exc)}}, FAIL, EXIT_CAP
    except AxiomViolation as exc:
        results = {"error": {"type": "AxiomViolation", "message": str(exc),
                             "witnesses": exc.report.witnesses if exc.report else {}}}
        status, code = FAIL, EXIT_FAIL
    except (InputError, ParseError, MismatchedQ, RootOfUnity, PoleAtQ, ValueError, OSError) as exc:
        results, status, code = {"error": {"type": type(exc).__name__, "message": str(exc)}}, FAIL, EXIT_INPUT
    except (Undetermined, HeckeError) as exc:
        results = {"error": {"type": type(exc).__name__, "message": str(exc)}}
        status = UNDETERMINED if isinstance(exc, Undetermined) else FAIL
        code = EXIT_FAIL
    report = {"command": args.command, "inputs": _inputs(args), "results": results, "status": status,
              "timings": {"total_s": round(time.perf_counter() - t0, 6)}}
    report = jsonable(report)
    if args.json:
        print(json.dumps(report, indent=2))
    else:
        print(_render_text(report))
    return code


if __name__ == "__main__":
    sys.exit(main())
