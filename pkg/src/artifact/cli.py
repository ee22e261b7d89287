"""Command-line front end: build, verify, classify and dump tori described by recipe JSON."""

import argparse
import json
import sys

from . import classify as cl
from .constructors import build
from .cubic import check_adjoint_identity
from .errors import ArtifactError, RecipeError
from .scalars import to_json
from .torus_core import IDENTITIES, Sampler, check_identity, invariant_table

EXIT_OK, EXIT_VIOLATIONS, EXIT_RECIPE, EXIT_PRECONDITION = 0, 1, 2, 3


def load_recipe(arg):
    """A recipe is inline JSON, a path to a JSON file, or '-' for stdin."""
    try:
        if arg == "-":
            text = sys.stdin.read()
        elif arg.lstrip().startswith("{"):
            text = arg
        else:
            with open(arg) as f:
                text = f.read()
        rec = json.loads(text)
    except OSError as e:
        raise RecipeError(f"cannot read recipe: {e}") from e
    except json.JSONDecodeError as e:
        raise RecipeError(f"recipe is not valid JSON: {e}") from e
    if not isinstance(rec, dict):
        raise RecipeError("recipe must be a JSON object")
    return rec


def _pair_of(h):
    pair = h.meta.get("pair")
    if pair is None:
        pair = cl.extract_hN(h)
    return pair


# ---------------------------------------------------------------- commands

def cmd_build(h, args):
    sd = cl.support_data(h)
    out = {"rank": h.rank, "field": h.field_tag, "recipe": h.recipe,
           "period": h.period.to_json(),
           "support_reps_mod_period": len(h.support_reps()),
           "skew_reps_mod_period": len(sd.S_minus),
           "Lambda_minus": sd.Lambda_minus.to_json(),
           "Gamma": sd.Gamma.to_json(),
           "gamma_source": h.meta.get("gamma_source", "computed")}
    return out, EXIT_OK


def cmd_verify(h, args):
    tag = args.identity
    if tag == "adjoint":
        s = Sampler("random", args.box, args.samples or 200, args.seed)
        rep = check_adjoint_identity(_pair_of(h), s)
    elif tag in IDENTITIES:
        mode = "random" if args.samples else "exhaustive"
        rep = check_identity(h, tag, Sampler(mode, args.box, args.samples, args.seed))
    else:
        known = ", ".join(sorted(IDENTITIES) + ["adjoint"])
        raise RecipeError(f"unknown identity {tag!r}; expected one of {known}")
    out = rep.to_json()
    out["passed"] = rep.passed
    return out, EXIT_OK if rep.passed else EXIT_VIOLATIONS


def cmd_classify(h, args):
    return cl.classify(h), EXIT_OK


def cmd_geometry(h, args):
    return cl.geometry(h).to_json(), EXIT_OK


def cmd_invariants(h, args):
    return invariant_table(h).to_json(), EXIT_OK


def cmd_table(h, args):
    win = h.box(args.box)
    entries = [{"l": list(l), "m": list(m), "coeff": to_json(h.coeff(l, m))}
               for l in win for m in win]
    signs = [{"l": list(l), "sign": h.inv_sign(l)} for l in win]
    return {"box": args.box, "entries": entries, "involution": signs}, EXIT_OK


COMMANDS = {"build": cmd_build, "verify": cmd_verify, "classify": cmd_classify,
            "geometry": cmd_geometry, "invariants": cmd_invariants, "table": cmd_table}


# ---------------------------------------------------------------- text rendering

def _text(cmd, out):
    if cmd == "verify":
        head = (f"{out['identity']}: {'PASS' if out['passed'] else 'FAIL'} "
                f"({out['checked']} checked, {len(out['violations'])} violations, "
                f"mode={out['mode']}, box={out['box']}, seed={out['seed']})")
        lines = [head] + [f"  violation at {v['degrees']}" + (f" [{v['tag']}]" if "tag" in v else "")
                          for v in out["violations"][:10]]
        return "\n".join(lines)
    if cmd == "table":
        lines = [f"box {out['box']}: {len(out['entries'])} entries"]
        for e in out["entries"]:
            lines.append(f"  x{e['l']} x{e['m']} = {_scalar(e['coeff'])} x[l+m]")
        return "\n".join(lines)
    if cmd == "classify":
        parts = [f"class {out['class']}"]
        for k in ("subclass", "model"):
            if k in out:
                parts.append(f"{k} {out[k]}")
        if "census" in out:
            c = out["census"]
            parts.append(f"{c['points']} points ({c['order2']} of order 2), {c['lines']} lines")
        return "; ".join(parts)
    return "\n".join(f"{k}: {json.dumps(v, sort_keys=True)}" for k, v in out.items())


def _scalar(d):
    return d["re"] if d["im"] == "0" else f"({d['re']}+{d['im']}i)"


def render(cmd, out, fmt_):
    if fmt_ == "json":
        return json.dumps(out, sort_keys=True, indent=2)
    return _text(cmd, out)


# ---------------------------------------------------------------- entry point

def make_parser():
    p = argparse.ArgumentParser(prog="artifact", description=__doc__)
    sub = p.add_subparsers(dest="cmd", required=True)
    for name in COMMANDS:
        sp = sub.add_parser(name)
        sp.add_argument("recipe", help="recipe JSON: inline, a file path, or '-' for stdin")
        sp.add_argument("--format", choices=("json", "text"), default="json")
        if name in ("verify", "table"):
            sp.add_argument("--box", type=int, default=1 if name == "table" else 2)
        if name == "verify":
            sp.add_argument("--identity", required=True)
            sp.add_argument("--samples", type=int, default=200,
                            help="random samples; 0 means every basis tuple in the box")
            sp.add_argument("--seed", type=int, default=0)
    return p


def main(argv=None):
    parser = make_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_RECIPE if e.code else EXIT_OK
    try:
        h = build(load_recipe(args.recipe))
        out, code = COMMANDS[args.cmd](h, args)
    except RecipeError as e:
        print(f"recipe error: {e}", file=sys.stderr)
        return EXIT_RECIPE
    except ArtifactError as e:
        cond = f" [{e.condition}]" if e.condition else ""
        print(f"{type(e).__name__}{cond}: {e}", file=sys.stderr)
        return EXIT_PRECONDITION
    print(render(args.cmd, out, args.format))
    return code


if __name__ == "__main__":
    sys.exit(main())
