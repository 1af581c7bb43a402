"""Command-line front end.

Every subcommand prints one document, JSON by default or CSV with
--format csv. Unbounded integers are always written as decimal strings.

Exit codes: 0 ok, 1 internal certificate failure, 2 invalid input,
3 resource guard exceeded.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
import time

import numpy as np

from . import adversary, bhconstants, coprime, linform, numbercore, shiftsearch
from .errors import DomainError, InvariantError, ResourceLimitError

EXIT_OK, EXIT_INVARIANT, EXIT_INPUT, EXIT_GUARD = 0, 1, 2, 3


def parse_vector(text: str) -> tuple[int, ...]:
    try:
        vec = tuple(int(tok) for tok in text.split(","))
    except ValueError:
        raise DomainError(f"cannot parse integer vector {text!r}") from None
    if not vec:
        raise DomainError("empty vector")
    return vec


def parse_int_list(text: str) -> list[int]:
    return list(parse_vector(text))


def _strs(v):
    return [str(x) for x in v]


def _need(args, *names):
    missing = [f"--{n}" for n in names if getattr(args, n) is None]
    if missing:
        raise DomainError(f"missing required flag(s): {', '.join(missing)}")


def _guard(args, default):
    return args.guard if args.guard is not None else default


# Each handler returns (input echo, result payload, csv header, csv rows).

def cmd_constants(args):
    _need(args, "n", "eps")
    rep = bhconstants.constants(args.n, args.eps)
    result = {
        "n": rep.n, "epsilon": rep.epsilon, "kappa": rep.kappa, "theta": rep.theta,
        "gamma": rep.gamma, "residual": rep.residual, "eps_kappa": rep.eps_kappa,
    }
    if args.H is not None:
        plan = bhconstants.plan_parameters(args.n, args.eps, args.H)
        result["plan"] = {
            "H": plan.H, "K": plan.K, "A": plan.A, "Q": plan.Q, "R": plan.R, "psi": plan.psi,
            "gcd_gain": plan.gcd_gain, "q_at_least_one": plan.q_at_least_one,
            "psi_below_log_ceiling": plan.psi_below_log_ceiling,
        }
    header = ["n", "epsilon", "kappa", "theta", "gamma", "residual"]
    rows = [[rep.n, rep.epsilon, rep.kappa, rep.theta, rep.gamma, rep.residual]]
    return {"n": args.n, "eps": args.eps, "H": args.H}, result, header, rows


def cmd_max_gcd_shift(args):
    _need(args, "a", "H")
    res = shiftsearch.max_shifted_gcd(args.a, args.H, strict=not args.loose)
    result = {"d": str(res.d), "h": list(res.witness), "shifted": _strs(res.shifted),
              "exponent": res.exponent}
    header = ["d", "h", "exponent"]
    rows = [[res.d, " ".join(map(str, res.witness)), res.exponent]]
    return {"a": _strs(args.a), "H": args.H, "loose": args.loose}, result, header, rows


def cmd_exponent_sweep(args):
    _need(args, "n", "eps", "scale", "trials", "seed")
    recs = shiftsearch.exponent_experiment(args.n, args.eps, args.scale, args.trials, args.seed)
    theta = bhconstants.theta(args.n, args.eps)
    result = {
        "records": [{"a": _strs(r.a), "H": r.H, "d": str(r.d), "exponent": r.exponent} for r in recs],
        "median_exponent": shiftsearch.median_exponent(recs),
        "one_plus_theta": 1.0 + theta,
    }
    header = ["a", "H", "d", "exponent"]
    rows = [[" ".join(_strs(r.a)), r.H, r.d, r.exponent] for r in recs]
    echo = {"n": args.n, "eps": args.eps, "scale": args.scale, "trials": args.trials, "seed": args.seed}
    return echo, result, header, rows


def cmd_greedy_coprime(args):
    _need(args, "a")
    res = coprime.greedy_coprime(args.a)
    result = {"h": list(res.shifts), "shifted": _strs(res.shifted), "height": res.height_used}
    header = ["h", "shifted", "height"]
    rows = [[" ".join(map(str, res.shifts)), " ".join(_strs(res.shifted)), res.height_used]]
    return {"a": _strs(args.a)}, result, header, rows


def cmd_greedy_audit(args):
    _need(args, "n", "samples", "seed")
    magnitude = args.magnitude if args.magnitude is not None else 10**12
    audit = coprime.greedy_bound_audit(args.samples, args.n, magnitude, args.seed)
    records = [{
        "a": _strs(r.a), "h": list(r.shifts), "height": r.height_used,
        "height_star": str(r.height_star), "ratio": r.ratio, "certified": r.certified,
        "jacobsthal_checks": len(r.jacobsthal_steps), "jacobsthal_ok": r.jacobsthal_ok,
    } for r in audit]
    result = {"records": records, "max_ratio": max(r.ratio for r in audit),
              "all_certified": all(r.certified for r in audit)}
    header = ["a", "h", "height", "height_star", "ratio", "certified", "jacobsthal_checks", "jacobsthal_ok"]
    rows = [[" ".join(_strs(r.a)), " ".join(map(str, r.shifts)), r.height_used, r.height_star,
             r.ratio, r.certified, len(r.jacobsthal_steps), r.jacobsthal_ok] for r in audit]
    echo = {"n": args.n, "samples": args.samples, "magnitude": str(magnitude), "seed": args.seed}
    return echo, result, header, rows


def _exact_search(fn, args):
    _need(args, "a")
    H, w = fn(args.a, _guard(args, coprime.LEVEL_GUARD))
    result = {"H": H, "h": list(w)}
    return {"a": _strs(args.a)}, result, ["H", "h"], [[H, " ".join(map(str, w))]]


def cmd_l_exact(args):
    return _exact_search(coprime.L_witness, args)


def cmd_ell_exact(args):
    return _exact_search(coprime.ell_witness, args)


def cmd_crt_instance(args):
    _need(args, "n", "H")
    inst = adversary.crt_hard_instance(args.n, args.H, _guard(args, adversary.PRIME_COUNT_GUARD))
    cert = adversary.verify_hard_instance(inst)
    if not cert.passed:
        raise InvariantError(f"generated instance fails at shift {cert.failing_shift}: {cert.reason}")
    result = inst.to_dict()
    header = ["shift", "p"]
    rows = [[" ".join(map(str, t)), p] for t, p in inst.assignment.items()]
    return {"n": args.n, "H": args.H}, result, header, rows


def cmd_verify_instance(args):
    _need(args, "instance")
    try:
        if args.instance == "-":
            doc = json.load(sys.stdin)
        else:
            with open(args.instance, encoding="utf-8") as fh:
                doc = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise DomainError(f"cannot read instance: {exc}") from None
    # accept either a bare instance or a full crt-instance document
    if isinstance(doc, dict) and "result" in doc and "cmd" in doc:
        doc = doc["result"]
    inst = adversary.HardInstance.from_dict(doc)
    cert = adversary.verify_hard_instance(inst, _guard(args, adversary.VERIFY_GUARD))
    failing = list(cert.failing_shift) if cert.failing_shift is not None else None
    result = {"passed": cert.passed, "failing_shift": failing, "reason": cert.reason,
              "certified_lower_bound": inst.certified_lower_bound if cert.passed else None}
    header = ["passed", "failing_shift", "reason"]
    rows = [[cert.passed, "" if failing is None else " ".join(map(str, failing)), cert.reason]]
    return {"instance": args.instance}, result, header, rows


def cmd_crt_growth(args):
    _need(args, "n", "Hs")
    table = adversary.growth_audit(args.n, args.Hs)
    header = ["H", "bits", "log_height", "shape", "ratio", "log_height_scaled"]
    rows = [[r.H, r.bits, r.log_height, r.shape, r.ratio, r.log_height_scaled] for r in table]
    result = {"rows": [dict(zip(header, row)) for row in rows]}
    return {"n": args.n, "Hs": args.Hs}, result, header, rows


def cmd_count_r(args):
    _need(args, "a", "h")
    rep = linform.count_r(args.a, args.h, with_table=args.table,
                          budget=_guard(args, linform.D_BUDGET))
    result = {"R": str(rep.R), "main_term": rep.main_term, "rel_error": rep.rel_error,
              "d_max": rep.d_max}
    if rep.ud_table is not None:
        result["ud_table"] = [[d, str(u)] for d, u in rep.ud_table]
    header = ["R", "main_term", "rel_error", "d_max"]
    rows = [[rep.R, rep.main_term, rep.rel_error, rep.d_max]]
    return {"a": _strs(args.a), "h": args.h}, result, header, rows


def cmd_bound_audit(args):
    _need(args, "a", "h")
    if args.d is not None:
        ds = args.d
    else:
        _need(args, "samples", "seed")
        rng = np.random.default_rng(args.seed)
        top = linform.d_max(args.a, args.h)
        ds = [int(x) for x in rng.integers(1, top, size=args.samples, endpoint=True)]
    table = linform.bound_audit(args.a, args.h, ds)
    header = ["d", "U", "squarefree", "asymp_applies", "asymp_ok", "bound1_ok", "bound2_ok"]
    rows = [[r.d, r.U, r.squarefree, r.asymp_applies, r.asymp_ok, r.bound1_ok, r.bound2_ok] for r in table]
    result = {
        "rows": [{**dict(zip(header, row)), "U": str(row[1])} for row in rows],
        "violations": sum(r.violation for r in table),
    }
    echo = {"a": _strs(args.a), "h": args.h, "d": args.d, "samples": args.samples, "seed": args.seed}
    return echo, result, header, rows


def cmd_converge(args):
    _need(args, "a")
    if args.hs is not None:
        hs = args.hs
    else:
        _need(args, "h")
        hs = [2**k for k in range(1, args.h.bit_length()) if 2**k <= args.h] or [args.h]
    table = linform.convergence_sweep(args.a, hs, _guard(args, linform.D_BUDGET))
    header = ["h", "R", "density", "error", "observed_exponent", "predicted_exponent"]
    rows = [[r.h, r.R, r.density, r.error, r.observed_exponent, r.predicted_exponent] for r in table]
    result = {"rows": [{**dict(zip(header, row)), "R": str(row[1])} for row in rows],
              "inv_zeta2": linform.INV_ZETA2}
    return {"a": _strs(args.a), "hs": hs}, result, header, rows


def cmd_jacobsthal(args):
    _need(args, "m")
    g = numbercore.jacobsthal(args.m, cap=_guard(args, numbercore.DEFAULT_JACOBSTHAL_CAP))
    return {"m": str(args.m)}, {"g": g}, ["m", "g"], [[args.m, g]]


COMMANDS = {
    "constants": cmd_constants,
    "max-gcd-shift": cmd_max_gcd_shift,
    "exponent-sweep": cmd_exponent_sweep,
    "greedy-coprime": cmd_greedy_coprime,
    "greedy-audit": cmd_greedy_audit,
    "l-exact": cmd_l_exact,
    "ell-exact": cmd_ell_exact,
    "crt-instance": cmd_crt_instance,
    "verify-instance": cmd_verify_instance,
    "crt-growth": cmd_crt_growth,
    "count-r": cmd_count_r,
    "bound-audit": cmd_bound_audit,
    "converge": cmd_converge,
    "jacobsthal": cmd_jacobsthal,
}


class _Parser(argparse.ArgumentParser):
    """argparse that reports bad flags as DomainError instead of exiting."""

    def error(self, message):
        raise DomainError(message)


def _vector_arg(text):
    try:
        return parse_vector(text)
    except DomainError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _int_list_arg(text):
    return list(_vector_arg(text))


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False, allow_abbrev=False)
    common.add_argument("--format", choices=("json", "csv"), default="json")
    common.add_argument("--guard", type=int, help="override the enumeration/sieve cap")
    common.add_argument("--timing", action="store_true",
                        help="fill elapsed_ms with wall time (output is then not reproducible)")
    common.add_argument("--a", type=_vector_arg, help="comma-separated integers")
    common.add_argument("--H", type=int, help="shift height bound")
    common.add_argument("--h", type=int, help="box size for linear forms")
    common.add_argument("--n", type=int)
    common.add_argument("--eps", type=float)
    common.add_argument("--seed", type=int, help="64-bit seed, required for random runs")
    common.add_argument("--m", type=int)
    common.add_argument("--scale", type=int, help="entry magnitude for exponent-sweep")
    common.add_argument("--trials", type=int)
    common.add_argument("--samples", type=int)
    common.add_argument("--magnitude", type=int)
    common.add_argument("--d", type=_int_list_arg, help="comma-separated divisors")
    common.add_argument("--hs", type=_int_list_arg, help="comma-separated h values")
    common.add_argument("--Hs", type=_int_list_arg, help="comma-separated H values")
    common.add_argument("--instance", help="hard-instance JSON file, '-' for stdin")
    common.add_argument("--loose", action="store_true",
                        help="allow H >= min(a) and non-positive entries")
    common.add_argument("--table", action="store_true", help="include the U_d table")

    parser = _Parser(prog="shiftgcd", description=__doc__.splitlines()[0], allow_abbrev=False)
    sub = parser.add_subparsers(dest="cmd", required=True, parser_class=_Parser)
    for name in COMMANDS:
        sub.add_parser(name, parents=[common], allow_abbrev=False)
    return parser


def render(cmd, echo, result, header, rows, fmt, elapsed_ms) -> str:
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(header)
        for row in rows:
            writer.writerow(["" if v is None else v for v in row])
        return buf.getvalue()
    doc = {"cmd": cmd, "input": echo, "result": result, "elapsed_ms": elapsed_ms}
    return json.dumps(doc, indent=2) + "\n"


def main(argv=None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    try:
        args = build_parser().parse_args(argv)
        if args.seed is not None and not 0 <= args.seed < 2**64:
            raise DomainError("--seed must fit in 64 unsigned bits")
        start = time.perf_counter()
        echo, result, header, rows = COMMANDS[args.cmd](args)
        elapsed = (time.perf_counter() - start) * 1e3 if args.timing else 0
        stdout.write(render(args.cmd, echo, result, header, rows, args.format, elapsed))
        return EXIT_OK
    except DomainError as exc:
        print(f"shiftgcd: error: {exc}", file=stderr)
        return EXIT_INPUT
    except ResourceLimitError as exc:
        print(f"shiftgcd: resource limit: {exc}", file=stderr)
        return EXIT_GUARD
    except InvariantError as exc:
        print(f"shiftgcd: invariant violated: {exc}", file=stderr)
        return EXIT_INVARIANT


if __name__ == "__main__":
    sys.exit(main())
