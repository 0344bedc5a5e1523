"""Command line front end: one document in, one JSON report out.

Exit codes: 0 affirmative verdict, 1 negative verdict (witness in the
report), 2 error (no verdict is reported).
"""

import argparse
import re
import sys
import time
from fractions import Fraction

from . import __version__
from .base import RationalFunction
from .descent import (complete_assignment, enumerate_homomorphisms, fan_automorphism_group,
                      orbit_subfan, pairwise_maximal, toric_descent_check, translates,
                      tvariety_descent_check, verify_galois_action)
from .document import Document, canonical_dumps, library
from .errors import DivfanError
from .exact import FieldElement
from .fan import (quasiprojectivity_check, separatedness_check, tail_fan, toric_fan_as_divisorial,
                  validate_fan)
from .polyhedral import identity_matrix, mat_mul
from .ppdivisor import check_proper, default_bound, evaluate, localize, search_face

VERBS = ("validate", "eval", "face", "localize", "separated", "qp", "aut", "action-verify",
         "orbit", "descent", "selftest")


class UsageError(DivfanError):
    pass


def jsonable(x):
    if x is None or isinstance(x, (bool, int, str)):
        return x
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, dict):
        return {str(k): jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [jsonable(v) for v in x]
    if isinstance(x, (set, frozenset)):
        return sorted((jsonable(v) for v in x), key=str)
    if isinstance(x, FieldElement):
        return x.to_json()
    if hasattr(x, "to_json"):
        return jsonable(x.to_json())
    return repr(x)


# ---------------------------------------------------------------------------
# argument parsing helpers


def parse_vector(text):
    try:
        return tuple(Fraction(s.strip()) for s in text.split(",") if s.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise UsageError(f"cannot read {text!r} as a comma separated vector") from exc


_FACTOR = re.compile(r"\s*(?:(\(\s*t\s*([-+])\s*([0-9]+(?:/[0-9]+)?)\s*\))|(t)|([0-9]+))\s*(?:\^\s*(-?[0-9]+))?\s*")


def parse_function(text, field):
    """Products and quotients of constants, t and (t -/+ a), each with an optional ^k.

    JSON in the document format is accepted too.
    """
    text = text.strip()
    if text.startswith("{"):
        import json
        return RationalFunction.from_json(json.loads(text), field)
    sign = 1
    if text.startswith("-"):
        sign, text = -1, text[1:]
    f = RationalFunction.const(sign, field)
    pos, op = 0, "*"
    while True:
        m = _FACTOR.match(text, pos)
        if not m or m.end() == pos:
            raise UsageError(f"cannot parse function {text!r} near position {pos}")
        exp = int(m.group(6)) if m.group(6) else 1
        if m.group(1):
            a = Fraction(m.group(3))
            root = a if m.group(2) == "-" else -a
            g = RationalFunction.linear(root, field, exp)
        elif m.group(4):
            g = RationalFunction.monomial(field, exp)
        else:
            g = RationalFunction.const(Fraction(m.group(5)) ** exp, field)
        f = f * g if op == "*" else f / g
        pos = m.end()
        if pos == len(text):
            return f
        op = text[pos]
        if op not in "*/":
            raise UsageError(f"unexpected {op!r} in function {text!r}")
        pos += 1


def _need(args, *names):
    missing = [n for n in names if getattr(args, n.replace("-", "_")) in (None, [])]
    if missing:
        raise UsageError(f"{args.verb} needs " + ", ".join(f"--{n}" for n in missing))


def _doc(args):
    return Document.load(args.document) if args.document else library()


def _action_fan(doc, args):
    fan_name, _, act = doc._get("actions", args.action)
    if args.fan and args.fan != fan_name:
        raise UsageError(f"action {args.action!r} acts on fan {fan_name!r}, not {args.fan!r}")
    return doc.fan(fan_name), act


# ---------------------------------------------------------------------------
# verbs; each returns (verdict, witness, extra report fields)


def cmd_validate(doc, args):
    names = [args.fan] if args.fan else sorted(doc.fans)
    results = {}
    ok = True
    first = None
    for n in names:
        fan = doc.fan(n)
        v = validate_fan(fan, args.jobs)
        improper = [d.name for d in fan if not check_proper(d).ok]
        try:
            tails = [c.to_json() for c in tail_fan(fan)]
            tail_ok = True
        except DivfanError as exc:
            tails, tail_ok = str(exc), False
        good = v.ok and not improper and tail_ok
        results[n] = {"valid": good, "members": len(fan), "edges": len(fan.edges),
                      "improper": improper, "tail_fan": tails}
        if not good and first is None:
            first = {"fan": n, "problem": v.witness, "improper": improper}
        ok = ok and good
    return ok, first, {"fans": results}


def cmd_eval(doc, args):
    _need(args, "ppdivisor", "m")
    d = doc.ppdivisor(args.ppdivisor)
    return True, None, {"divisor": evaluate(d, parse_vector(args.m)).to_json()}


def cmd_face(doc, args):
    _need(args, "sub", "super")
    sub, sup = doc.ppdivisor(args.sub), doc.ppdivisor(args.super)
    cert = search_face(sub, sup, args.bound)
    if cert is None:
        return False, {"sub": sub.name, "super": sup.name, "bound": args.bound}, {}
    return True, cert.to_json(), {"bound": args.bound}


def cmd_localize(doc, args):
    _need(args, "ppdivisor", "m", "f")
    d = doc.ppdivisor(args.ppdivisor)
    f = parse_function(args.f, d.base.field)
    loc = localize(d, parse_vector(args.m), f, f"{d.name}_f")
    base = doc.base_name(loc.base)
    return True, None, {"localized": loc.to_json(base)}


def cmd_separated(doc, args):
    _need(args, "fan")
    v = separatedness_check(doc.fan(args.fan))
    return v.ok, v.witness, {}


def _dump_writer(path):
    if not path:
        return None

    def write(obj):
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(canonical_dumps(obj))
    return write


def cmd_qp(doc, args):
    if args.toric:
        fan = toric_fan_as_divisorial(doc.toric(args.toric).cones)
    else:
        _need(args, "fan")
        fan = doc.fan(args.fan)
    v = quasiprojectivity_check(fan, solver=args.solver, dump=_dump_writer(args.dump_lp))
    return v.ok, v.witness, {"program": v.details}


def cmd_aut(doc, args):
    _need(args, "toric")
    labels, mats, group = fan_automorphism_group(doc.toric(args.toric))
    gens = [mats[g] for g in group.generators()]
    return True, None, {"group_order": group.order, "generators": [[list(r) for r in F] for F in gens],
                        "elements": {x: [list(r) for r in mats[x]] for x in labels},
                        "table": group.to_json()["table"]}


def cmd_action_verify(doc, args):
    _need(args, "action")
    fan, act = _action_fan(doc, args)
    v = verify_galois_action(fan, act)
    extra = {"group_order": act.group.order}
    if v.ok:
        extra["assignments"] = {x: complete_assignment(fan, act.elements[x]) for x in act.group.elements}
    return v.ok, v.witness, dict(extra, **{k: jsonable(w) for k, w in v.details.items()})


def cmd_orbit(doc, args):
    _need(args, "action")
    fan, act = _action_fan(doc, args)
    members = args.member or [d.name for d in fan.maximal_members()]
    if args.translates_only:
        out = []
        for n in members:
            out.extend(translates(fan[n], [act.elements[x] for x in act.group.elements]))
        maximal = pairwise_maximal(out)
        return True, None, {"mode": "geometric transport", "group_order": act.group.order,
                            "members": members, "translates": len(out), "maximal": len(maximal)}
    results = {}
    for n in members:
        sub = orbit_subfan(fan, act, n, args.bound)
        results[n] = {"orbit_size": len(sub), "maximal": len(sub.maximal_members()),
                      "members": sorted(sub.names())}
    return True, None, {"orbits": results}


def cmd_descent(doc, args):
    if args.toric or args.hom:
        _need(args, "hom")
        sigma, group, images = doc.hom(args.hom)
        if args.toric and args.toric != sigma.name:
            raise UsageError(f"hom {args.hom!r} maps into {sigma.name!r}, not {args.toric!r}")
        rep = toric_descent_check(sigma, group, images, solver=args.solver)
        labels, mats, aut = fan_automorphism_group(sigma)
        extra = {"report": jsonable(rep.to_json())}
        if group.order <= 24:
            homs = enumerate_homomorphisms(group, mats, mat_mul, identity_matrix(sigma.rank))
            extra["homomorphisms_into_aut"] = len(homs)
        return rep.conclusion, None if rep.conclusion else rep.orbit_results, extra
    _need(args, "action")
    fan, act = _action_fan(doc, args)
    rep = tvariety_descent_check(fan, act, args.bound, solver=args.solver)
    witness = None if rep.conclusion else (rep.details or [r for r in rep.orbit_results
                                                          if not r["quasi_projective"]])
    return rep.conclusion, witness, {"report": jsonable(rep.to_json())}


def cmd_selftest(doc, args):
    from .properties import run_all
    results = run_all(args.scale, args.seed)
    bad = [r for r in results if r["failures"]]
    return not bad, bad[0] if bad else None, {"suites": results}


COMMANDS = {
    "validate": cmd_validate, "eval": cmd_eval, "face": cmd_face, "localize": cmd_localize,
    "separated": cmd_separated, "qp": cmd_qp, "aut": cmd_aut, "action-verify": cmd_action_verify,
    "orbit": cmd_orbit, "descent": cmd_descent, "selftest": cmd_selftest,
}


def build_parser():
    p = argparse.ArgumentParser(prog="divfan", description="Checks on divisorial fans and Galois actions.")
    p.add_argument("verb", choices=VERBS)
    p.add_argument("document", nargs="?", help="JSON document; the bundled library when omitted")
    p.add_argument("--fan")
    p.add_argument("--toric")
    p.add_argument("--ppdivisor")
    p.add_argument("--sub")
    p.add_argument("--super")
    p.add_argument("--m")
    p.add_argument("--f")
    p.add_argument("--action")
    p.add_argument("--member", action="append")
    p.add_argument("--hom")
    p.add_argument("--translates-only", action="store_true",
                   help="orbit: count Mobius translates without closing under intersection")
    p.add_argument("--bound", type=int, default=None, help="face search bound (default 4 or $DIVFAN_BOUND)")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--solver", choices=("simplex", "fm", "both"), default="simplex")
    p.add_argument("--dump-lp", metavar="PATH")
    p.add_argument("--scale", type=float, default=1.0, help="selftest: fraction of the default case counts")
    p.add_argument("--seed", type=int, default=0)
    return p


def run(argv=None):
    """Returns (exit code, report dict)."""
    args = build_parser().parse_args(argv)
    if args.bound is None:
        args.bound = default_bound()
    t = time.perf_counter()
    report = {"tool_version": __version__, "verb": args.verb}
    try:
        doc = None if args.verb == "selftest" else _doc(args)
        ok, witness, extra = COMMANDS[args.verb](doc, args)
    except DivfanError as exc:
        report["error"] = exc.to_json()
        report["timing_ms"] = int((time.perf_counter() - t) * 1000)
        return 2, report
    except (ValueError, ZeroDivisionError, ArithmeticError) as exc:
        report["error"] = {"type": type(exc).__name__, "message": str(exc)}
        report["timing_ms"] = int((time.perf_counter() - t) * 1000)
        return 2, report
    report.update(jsonable(extra))
    report["verdict"] = bool(ok)
    report["witness"] = jsonable(witness)
    report["timing_ms"] = int((time.perf_counter() - t) * 1000)
    return (0 if ok else 1), report


def main(argv=None):
    code, report = run(argv)
    sys.stdout.write(canonical_dumps(report))
    return code


if __name__ == "__main__":
    sys.exit(main())
