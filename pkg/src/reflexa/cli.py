"""reflexa command line: ring | classify | resolve | tower | verify-paper."""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction
from pathlib import Path

from . import __version__
from .algebra import NotFiniteDimensional, NotLocal
from .classify import DEFAULT_BOUND, ConsistencyError, classify, classify_ring
from .corpus import ring_spec
from .duality import BudgetExceeded, default_budget, dual_tower
from .fields import FieldMismatch
from .modules import ModuleError, is_free
from .poly import PolySyntaxError, UnknownVariable
from .resolution import DEFAULT_STEPS, betti_bound_checks, ext_display_report, ext_lengths, min_resolution
from .specs import ModuleSpec, RingSpec, SpecError, input_hash

EXIT_OK, EXIT_MISMATCH, EXIT_INPUT, EXIT_BUDGET = 0, 1, 2, 3
INPUT_ERRORS = (SpecError, PolySyntaxError, UnknownVariable, NotFiniteDimensional, NotLocal,
                ModuleError, FieldMismatch, json.JSONDecodeError, OSError, ValueError)


class InputError(Exception):
    pass


def _load_json_arg(text: str):
    """Inline JSON, @file, or an existing file path."""
    if text.startswith("@"):
        return json.loads(Path(text[1:]).read_text())
    stripped = text.lstrip()
    if stripped.startswith("{") or stripped.startswith("[") or stripped.startswith('"'):
        return json.loads(text)
    if os.path.isfile(text):
        return json.loads(Path(text).read_text())
    return None


def parse_ring(text: str) -> RingSpec:
    data = _load_json_arg(text)
    if data is None:
        return ring_spec(text)
    if isinstance(data, str):
        return ring_spec(data)
    return RingSpec.from_json(data)


def parse_module(text: str) -> ModuleSpec:
    data = _load_json_arg(text)
    return ModuleSpec.from_json(text if data is None else data)


def _default(o):
    if isinstance(o, Fraction):
        return str(o)
    if hasattr(o, "numerator") and hasattr(o, "denominator"):
        return str(Fraction(int(o.numerator), int(o.denominator)))
    if hasattr(o, "to_json"):
        return o.to_json()
    if isinstance(o, (set, frozenset, tuple)):
        return list(o)
    raise TypeError(f"not serializable: {type(o).__name__}")


def dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2, default=_default)


def _envelope(command, ring, module=None, **extra):
    inputs = {"ring": ring.to_json()}
    if module is not None:
        inputs["module"] = module.to_json()
    out = {"command": command, "input": inputs, "input_sha256": input_hash(command, inputs, extra),
           "version": __version__}
    out.update(extra)
    return out


# ---- commands ----------------------------------------------------------------

def cmd_ring(args):
    spec = parse_ring(args.ring)
    A = spec.build()
    inv = A.invariants()
    rep = classify_ring(A, args.bound)
    out = _envelope("ring", spec, bound=args.bound)
    out["result"] = {
        "length": inv.length,
        "type": inv.type,
        "gorenstein": inv.is_gorenstein,
        "mu_m": inv.mu_m,
        "loewy_length": inv.loewy,
        "hilbert": list(inv.hilbert),
        "standard_monomials": [str(A.to_poly({i: A.field.one})) for i in range(A.length)],
        "socle": [str(p) for p in A.socle_polys()],
        "bnsi": rep.bnsi.summary(),
        "ring_report": rep.to_json(),
    }
    return out, EXIT_OK


def cmd_classify(args):
    spec, mspec = parse_ring(args.ring), parse_module(args.module)
    A = spec.build()
    M = mspec.build(A)
    budget = args.budget or default_budget()
    rep = classify(M, args.bound, budget)
    out = _envelope("classify", spec, mspec, bound=args.bound, budget=budget)
    out["result"] = {"length": M.dim, "mu": M.mu, **rep.to_json()}
    return out, EXIT_OK


def cmd_resolve(args):
    spec, mspec = parse_ring(args.ring), parse_module(args.module)
    A = spec.build()
    M = mspec.build(A)
    budget = args.budget or default_budget()
    res = min_resolution(M, args.steps, budget)
    ext = ext_lengths(M, min(args.steps, res.computed_up_to), budget)
    out = _envelope("resolve", spec, mspec, steps=args.steps, budget=budget)
    result = {
        "betti": res.betti,
        "computed_up_to": res.computed_up_to,
        "partial": res.partial or ext.partial,
        "ext_lengths": ext.lengths,
        "ext_computed_up_to": ext.computed_up_to,
        "notes": list(res.notes),
    }
    if not is_free(M):
        result["bound_checks"] = [c.to_json() for c in betti_bound_checks(M, args.steps, res.betti)]
    if A.max_ideal_power(2).dim == 0 and args.steps >= 2:
        result["ext_display"] = ext_display_report(M, 2, min(6, args.steps), budget)
    out["result"] = result
    return out, EXIT_BUDGET if result["partial"] else EXIT_OK


def cmd_tower(args):
    spec, mspec = parse_ring(args.ring), parse_module(args.module)
    A = spec.build()
    M = mspec.build(A)
    budget = args.budget or default_budget()
    tower = dual_tower(M, args.depth, budget)
    out = _envelope("tower", spec, mspec, depth=args.depth, budget=budget)
    out["result"] = {**tower.to_json(), "notes": tower.notes}
    return out, EXIT_BUDGET if tower.partial else EXIT_OK


def cmd_verify_paper(args):
    from .verification import default_jobs, select, verify
    if not select(args.filter):
        raise InputError(f"no corpus entry matches {args.filter!r}")
    jobs = args.jobs or default_jobs()
    results = verify(args.filter, args.seed, jobs)
    for r in results:
        r.pop("_seconds", None)
    out = {"command": "verify-paper", "filter": args.filter, "seed": args.seed,
           "input_sha256": input_hash("verify-paper", args.filter, args.seed),
           "version": __version__, "entries": results,
           "pass": all(r["pass"] for r in results)}
    return out, EXIT_OK if out["pass"] else EXIT_MISMATCH


# ---- text rendering ------------------------------------------------------------

def render_text(out) -> str:
    cmd = out["command"]
    if cmd == "verify-paper":
        lines = []
        for e in out["entries"]:
            lines.append(f"{'PASS' if e['pass'] else 'FAIL'} {e['id']}: {e['claim']}")
            for f in e["facts"]:
                if not f["pass"]:
                    lines.append(f"    {f['name']}: expected {f['expected']!r}, got {f['actual']!r}")
        n_ok = sum(e["pass"] for e in out["entries"])
        lines.append(f"{n_ok}/{len(out['entries'])} entries passed")
        return "\n".join(lines)
    r = out["result"]
    if cmd == "ring":
        return (f"length {r['length']}  type {r['type']}  gorenstein {r['gorenstein']}  mu(m) {r['mu_m']}  "
                f"loewy {r['loewy_length']}\nhilbert {r['hilbert']}\nbnsi {r['bnsi']}")
    if cmd == "classify":
        lines = [f"length {r['length']}  mu {r['mu']}  bound {r['bound']}"]
        for p, v in r["verdicts"].items():
            lines.append(f"  {p:18} {v['status']:16} {v['reason']}")
        return "\n".join(lines)
    if cmd == "resolve":
        s = f"betti {r['betti']}\next   {r['ext_lengths']}"
        return s + ("\n(partial)" if r["partial"] else "")
    if cmd == "tower":
        return f"lengths {r['lengths']}\nratios  {r['ratios']}" + ("\n(partial)" if r["partial"] else "")
    return dumps(out)


# ---- entry point -------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="reflexa", description="Reflexivity and duality over artinian local rings.")
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", required=True)

    def fmt(sp):
        g = sp.add_mutually_exclusive_group()
        g.add_argument("--json", dest="fmt", action="store_const", const="json", default="json")
        g.add_argument("--text", dest="fmt", action="store_const", const="text")
        sp.add_argument("--budget", type=int, default=None, help="dimension budget (default REFLEXA_BUDGET or 10000)")

    ring_help = "corpus id (lam, ex56, ex57, gor415, kxn:N, power:M,N), inline JSON or @file"
    sp = sub.add_parser("ring", help="ring invariants and BNSI certificate")
    sp.add_argument("ring", help=ring_help)
    sp.add_argument("--bound", type=int, default=DEFAULT_BOUND)
    fmt(sp)
    sp.set_defaults(func=cmd_ring)

    for name, func, helptext in (("classify", cmd_classify, "tri-state reflexivity verdicts"),
                                 ("resolve", cmd_resolve, "Betti numbers and Ext lengths"),
                                 ("tower", cmd_tower, "lengths of iterated duals")):
        sp = sub.add_parser(name, help=helptext)
        sp.add_argument("ring", help=ring_help)
        sp.add_argument("module", help="builder name (k, m, R, omega) or module spec JSON")
        if name == "classify":
            sp.add_argument("--bound", type=int, default=DEFAULT_BOUND)
        if name == "resolve":
            sp.add_argument("--steps", type=int, default=DEFAULT_STEPS)
        if name == "tower":
            sp.add_argument("--depth", type=int, default=8)
        fmt(sp)
        sp.set_defaults(func=func)

    sp = sub.add_parser("verify-paper", help="check the built-in corpus of expected facts")
    sp.add_argument("--filter", default=None, help="glob on entry ids")
    sp.add_argument("--seed", type=int, default=0, help="seed for the random-module generator")
    sp.add_argument("--jobs", type=int, default=None, help="worker processes")
    fmt(sp)
    sp.set_defaults(func=cmd_verify_paper)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "budget", None) is not None and args.budget < 1:
        parser.error("--budget must be positive")
    try:
        out, code = args.func(args)
    except (InputError, *INPUT_ERRORS) as e:
        print(f"reflexa: input error: {e}", file=sys.stderr)
        return EXIT_INPUT
    except BudgetExceeded as e:
        print(f"reflexa: budget exceeded: {e}", file=sys.stderr)
        return EXIT_BUDGET
    except ConsistencyError as e:
        print(f"reflexa: consistency failure: {e}", file=sys.stderr)
        return EXIT_MISMATCH
    print(render_text(out) if args.fmt == "text" else dumps(out))
    return code


if __name__ == "__main__":
    sys.exit(main())
