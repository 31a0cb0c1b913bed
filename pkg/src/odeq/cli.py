"""Command-line front end: ``odeq <command> [options] EQUATION ...``.

Every command builds a report dictionary.  With ``--json`` it is printed as
JSON (schema ``odeq-report/1``), otherwise as ``key: value`` lines.  Exit
status is 0 for definite answers, 2 for Unsupported / NotFoundOverQ and 1
for malformed input.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time

import sympy

from . import autonomous as auto
from .curves import genus, hyperelliptic_model, x, y
from .equation import (induced_derivation, is_autonomous, parse_equation,
                       strip_comments)
from .equivalence import (FieldIso, autonomous_test_hyper, elliptic_necessary,
                          elliptic_semi_autonomous_necessary, semi_autonomous_test,
                          strict_equiv_hyper, transport_residuals)
from .errors import (DegenerateEquation, EquationSyntaxError, NotSquarefree, OdeqError,
                     ReducibleEquation)
from .fieldtower import as_rational, is_constant, parse_point, point_str, z
from .local import puiseux_leading
from .moebius import Moebius
from .painleve import pp_check
from .verdicts import NO, UNSUPPORTED, YES, EquivVerdict

REPORT_VERSION = "odeq-report/1"
INPUT_ERRORS = (EquationSyntaxError, DegenerateEquation, NotSquarefree, ReducibleEquation)


class InputError(Exception):
    pass


# ---------------------------------------------------------------------------
# Helpers

def read_equation(arg):
    """An equation from a file path or from the argument text itself."""
    if os.path.isfile(arg):
        with open(arg, encoding="utf-8") as fh:
            text = strip_comments(fh.read())
    else:
        text = arg
    return parse_equation(text)


def _s(value):
    return None if value is None else str(value)


def _verdict_dict(verdict):
    witness = verdict.witness
    return {
        "verdict": verdict.kind,
        "reason": verdict.reason,
        "witness": witness.as_dict() if hasattr(witness, "as_dict") else _s(witness),
        "details": _jsonable(verdict.details),
    }


def _jsonable(obj):
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if obj is None or isinstance(obj, (bool, int, float, str)):
        return obj
    if hasattr(obj, "as_dict"):
        return _jsonable(obj.as_dict())
    return str(obj)


def _parse_generator(text):
    return sympy.sympify(text, locals={"x": x, "y": y, "v": auto.v, "z": z})


# ---------------------------------------------------------------------------
# Commands; each returns (result dict, exit code)

def cmd_parse(args, eqs):
    (eq,) = eqs
    der = induced_derivation(eq)
    return {
        "equation": eq.text(),
        "deg_S": eq.deg_S,
        "deg_T": eq.deg_T,
        "autonomous": is_autonomous(eq),
        "s_prime": str(der.s_prime.as_expr()),
    }, 0


def cmd_genus(args, eqs):
    (eq,) = eqs
    return _jsonable(genus(eq).as_dict()), 0


def cmd_pp(args, eqs):
    (eq,) = eqs
    verdict = pp_check(eq)
    pp = {"PP": True, "NotPP": False}.get(verdict.kind)
    return {"pp": pp, "verdict": verdict.kind, "reason": verdict.reason,
            "certificate": _jsonable(verdict.certificate)}, 0 if verdict.definite else 2


def cmd_pair(args, eqs):
    (eq,) = eqs
    pair = auto.extract_pair(eq)
    out = {"pair": pair.as_dict(), "divisor": None}
    if isinstance(pair, auto.Genus0Pair):
        try:
            out["divisor"] = auto.vf_divisor(pair.h).as_dict()
        except OdeqError as exc:
            out["divisor"] = f"unavailable: {exc}"
    return out, 0


def _equiv(args, e1, e2):
    g1, g2 = genus(e1).genus, genus(e2).genus
    if g1 != g2:
        return EquivVerdict.no(f"genera differ ({g1} vs {g2})")
    if g1 >= 2:
        return strict_equiv_hyper(e1, e2, max_candidates=args.max_candidates)
    if g1 == 1:
        check = elliptic_necessary(e1, e2)
        if check.kind == "ObstructionFound":
            return EquivVerdict.no(check.reason, j=[str(j) for j in check.j])
        return EquivVerdict.unsupported("genus 1 with equal j-invariants is not decided",
                                        j=[str(j) for j in check.j])
    if is_autonomous(e1) and is_autonomous(e2):
        return auto.pair_equivalent_genus0(auto.extract_pair(e1), auto.extract_pair(e2))
    return EquivVerdict.unsupported("genus 0 equivalence is decided for autonomous pairs only")


def cmd_equiv(args, eqs):
    e1, e2 = eqs
    verdict = _equiv(args, e1, e2)
    return _verdict_dict(verdict), 0 if verdict.definite else 2


def cmd_semi_autonomous(args, eqs):
    (eq,) = eqs
    g = genus(eq).genus
    if g == 1:
        check = elliptic_semi_autonomous_necessary(eq)
        verdict = NO if check.kind == "ObstructionFound" else UNSUPPORTED
        return {"verdict": verdict, "reason": check.reason, "normalizer": None,
                "roots": None, "autonomous": None,
                "j": [str(j) for j in check.j]}, 0 if verdict == NO else 2
    if g < 2:
        return {"verdict": UNSUPPORTED, "reason": f"genus {g} is not handled",
                "normalizer": None, "roots": None, "autonomous": None}, 2
    model = hyperelliptic_model(eq)
    if model.roots is None:
        return {"verdict": UNSUPPORTED, "reason": "branch points do not split over Q(z)",
                "normalizer": None, "roots": None, "autonomous": None}, 2
    N = semi_autonomous_test(model.roots)
    roots = [point_str(r) for r in model.roots]
    aut = _verdict_dict(autonomous_test_hyper(model))
    if N is None:
        return {"verdict": NO, "reason": "a cross-ratio of the branch points depends on z",
                "normalizer": None, "roots": roots, "autonomous": aut}, 0
    return {"verdict": YES, "reason": "normalized branch points are constant",
            "normalizer": N.as_dict(), "roots": roots, "autonomous": aut}, 0


def cmd_autonomize(args, eqs):
    (eq,) = eqs
    pair = auto.extract_pair(eq)
    default = "v" if isinstance(pair, auto.Genus0Pair) else "x"
    gen = _parse_generator(args.generator or default)
    G = auto.make_autonomous(pair, gen)
    return {"pair": pair.as_dict(), "generator": str(gen), "equation": G.text()}, 0


def cmd_alg_solutions(args, eqs):
    (eq,) = eqs
    rep = genus(eq)
    out = {"genus": rep.genus, "autonomous": is_autonomous(eq), "exists": None, "t": None,
           "certificate": None, "infinitesimal_automorphisms": None}
    code = 0
    if is_autonomous(eq):
        pair = auto.extract_pair(eq)
        if isinstance(pair, auto.Genus0Pair):
            t = auto.algebraic_solution_genus0(pair)
            out["certificate"] = {"h": str(pair.h), "method": "hermite-rothstein-trager"}
        else:
            sol = auto.algebraic_solution_hyper(pair, with_certificate=True)
            t = sol.t
            out["certificate"] = _jsonable(sol.certificate)
        out["exists"] = t is not None
        out["t"] = _s(t)
    else:
        out["certificate"] = "non-autonomous equation: not decided"
        code = 2
    if rep.genus == 0:
        g = auto.rational_parametrization(eq).g
        basis = auto.infinitesimal_automorphisms(g, args.degree_bound)
        out["infinitesimal_automorphisms"] = {"g": str(g), "degree_bound": args.degree_bound,
                                              "basis": [str(h) for h in basis]}
    return out, code


def cmd_local(args, eqs):
    (eq,) = eqs
    at = parse_point(args.at)
    if not is_constant(at):
        raise InputError("--at must be a rational number or oo")
    leads = puiseux_leading(eq, at if at == sympy.oo else as_rational(at))
    return {"point": point_str(at), "leads": [lead.as_dict() for lead in leads]}, 0


def cmd_disguise(args, eqs):
    (eq,) = eqs
    factor = sympy.sympify(args.factor, locals={"z": z})
    new = auto.disguise(eq, args.mode, factor)
    t_old, s_old = auto.disguise_substitution(args.mode, factor)
    if args.mode == "scaleS":
        sub = {"s_old": str(t_old), "s_old_prime": str(s_old)}
    else:
        sub = {"t_old": str(t_old), "s_old": str(s_old)}
    return {"equation": new.text(), "mode": args.mode, "factor": str(factor),
            "substitution": sub}, 0


# ---------------------------------------------------------------------------
# verify

def _check_equiv(report, eqs):
    e1, e2 = eqs
    witness = report.get("witness")
    if report.get("verdict") != YES or witness is None:
        return report.get("verdict") == _equiv(_Opts(), e1, e2).kind
    if "lambda_squared" in witness:
        iso = FieldIso.from_dict(witness)
        return transport_residuals(iso, hyperelliptic_model(e1), hyperelliptic_model(e2)) == (0, 0)
    psi = Moebius.from_dict(witness)
    p1, p2 = auto.extract_pair(e1), auto.extract_pair(e2)
    return sympy.cancel(auto.conjugate_vf(psi, p1.h) - p2.h) == 0


def _check_semi(report, eqs):
    if report.get("normalizer") is None:
        return cmd_semi_autonomous(_Opts(), eqs)[0]["verdict"] == report.get("verdict")
    N = Moebius.from_dict(report["normalizer"])
    model = hyperelliptic_model(eqs[0])
    return all(is_constant(N(r)) for r in model.roots)


def _check_alg(report, eqs):
    (eq,) = eqs
    if report.get("t") is None:
        return cmd_alg_solutions(_Opts(), eqs)[0]["exists"] == report.get("exists")
    pair = auto.extract_pair(eq)
    t = _parse_generator(report["t"])
    if isinstance(pair, auto.Genus0Pair):
        return sympy.cancel(pair.derive(t) - 1) == 0
    return pair.derive(t) == pair.field(1)


def _check_autonomize(report, eqs):
    (eq,) = eqs
    pair = auto.extract_pair(eq)
    gen = _parse_generator(report["generator"])
    G = parse_equation(report["equation"])
    if isinstance(pair, auto.Genus0Pair):
        val = G.f.subs({auto.S: pair.derive(gen), auto.T: gen}, simultaneous=True)
        return sympy.cancel(val) == 0
    dg = pair.derive(gen)
    val = G.f.subs({auto.S: dg.as_expr(), auto.T: gen}, simultaneous=True)
    return pair.field(val).is_zero()


class _Opts:
    max_candidates = None
    degree_bound = 2
    generator = None
    at = "0"
    mode = "scaleT"
    factor = "1"


_WITNESS_CHECKS = {
    "equiv": _check_equiv,
    "semi-autonomous": _check_semi,
    "alg-solutions": _check_alg,
    "autonomize": _check_autonomize,
}


def cmd_verify(args, _eqs):
    with open(args.report, encoding="utf-8") as fh:
        report = json.load(fh)
    if report.get("version") != REPORT_VERSION:
        raise InputError(f"unsupported report version {report.get('version')!r}")
    command = report["command"]
    inp = report["input"]
    eqs = [parse_equation(t) for t in inp["equations"]]
    checker = _WITNESS_CHECKS.get(command)
    if checker is not None:
        ok = bool(checker(report, eqs))
        method = "witness re-check"
    else:
        opts = _Opts()
        for k, val in inp.get("options", {}).items():
            setattr(opts, k, val)
        fresh, _ = COMMANDS[command][0](opts, eqs)
        stored = {k: report.get(k) for k in fresh}
        ok = _jsonable(fresh) == stored
        method = "recomputation"
    return {"verified": ok, "command": command, "method": method}, 0 if ok else 1


COMMANDS = {
    "parse": (cmd_parse, 1, "canonical form and induced derivation"),
    "genus": (cmd_genus, 1, "genus with method and certificate"),
    "pp": (cmd_pp, 1, "Painlevé property"),
    "pair": (cmd_pair, 1, "the (curve, vector field) pair of an autonomous equation"),
    "equiv": (cmd_equiv, 2, "strict equivalence of two equations"),
    "semi-autonomous": (cmd_semi_autonomous, 1, "semi-autonomy and autonomy tests"),
    "autonomize": (cmd_autonomize, 1, "autonomous equation of a generator of the pair"),
    "alg-solutions": (cmd_alg_solutions, 1, "algebraic solutions and infinitesimal automorphisms"),
    "local": (cmd_local, 1, "leading terms of local solutions"),
    "disguise": (cmd_disguise, 1, "build a strictly equivalent non-autonomous equation"),
    "verify": (cmd_verify, 0, "re-check the witness stored in a JSON report"),
}

_OPTION_KEYS = {
    "equiv": ("max_candidates",),
    "alg-solutions": ("degree_bound",),
    "autonomize": ("generator",),
    "local": ("at",),
    "disguise": ("mode", "factor"),
}


# ---------------------------------------------------------------------------
# Driver

def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="print the report as JSON")
    common.add_argument("--deterministic", action="store_true", help="omit timing information")
    common.add_argument("--degree-bound", type=int, default=2,
                        help="degree bound for the infinitesimal automorphism search")
    common.add_argument("--max-candidates", type=int, default=None,
                        help="cap on transporter candidates (reports Truncated)")
    parser = argparse.ArgumentParser(prog="odeq", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    for name, (_, nargs, help_text) in COMMANDS.items():
        p = sub.add_parser(name, parents=[common], help=help_text)
        if name == "verify":
            p.add_argument("report", help="JSON report written by odeq --json")
            continue
        for i in range(nargs):
            p.add_argument(f"eq{i + 1}", help="equation text or path to an equation file")
        if name == "autonomize":
            p.add_argument("--generator", help="generator in pair coordinates (v, or x and y)")
        if name == "local":
            p.add_argument("--at", default="0", help="rational point or oo (default 0)")
        if name == "disguise":
            p.add_argument("--mode", choices=("scaleT", "scaleS"), default="scaleT")
            p.add_argument("--factor", default="1/z", help="rational function of z")
    return parser


def _emit(report, as_json):
    if as_json:
        print(json.dumps(report, indent=2, ensure_ascii=False))
        return
    for key, val in report.items():
        if key in ("version", "input"):
            continue
        if isinstance(val, (dict, list)):
            val = json.dumps(val, ensure_ascii=False)
        print(f"{key}: {val}")


def run(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    func, nargs, _ = COMMANDS[args.command]
    start = time.perf_counter()
    report = {"version": REPORT_VERSION, "command": args.command}
    try:
        eqs = [read_equation(getattr(args, f"eq{i + 1}")) for i in range(nargs)]
        report["input"] = {
            "equations": [e.text() for e in eqs],
            "options": {k: getattr(args, k) for k in _OPTION_KEYS.get(args.command, ())},
        }
        result, code = func(args, eqs)
    except (InputError, OSError, json.JSONDecodeError, KeyError, ValueError, TypeError,
            sympy.SympifyError, *INPUT_ERRORS) as exc:
        print(f"odeq: error: {exc}", file=sys.stderr)
        return 1
    except OdeqError as exc:
        result = {"verdict": UNSUPPORTED, "reason": f"{type(exc).__name__}: {exc}"}
        code = 2
    report.setdefault("input", {"equations": [], "options": {}})
    report.update(result)
    if not args.deterministic:
        report["timing"] = {"seconds": round(time.perf_counter() - start, 6)}
    _emit(report, args.json)
    return code


def main(argv=None):
    sys.exit(run(argv))


if __name__ == "__main__":
    main()
