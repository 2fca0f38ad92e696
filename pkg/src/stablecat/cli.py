"""Command-line interface: ``stablecat [global options] <command> ...``.

Exit codes: 0 success, 1 negative verdict under ``decide --expect``,
2 validation or usage error, 3 budget exhausted.
"""

from __future__ import annotations

import argparse
import sys
import time
from typing import Sequence

from . import balance, stable
from .catalog import SCENARIOS, builtin
from .exceptions import BudgetExceeded, StableCatError
from .modules import hom
from .quiver import Representation
from .workspace import (
    Workspace,
    dumps,
    export_workspace,
    load_workspace,
    module_to_json,
    morphism_to_json,
    verdict_to_json,
    workspace_from,
)

EXIT_OK, EXIT_NEGATIVE, EXIT_INVALID, EXIT_BUDGET = 0, 1, 2, 3

DECISIONS = {
    "is-stable-mono": stable.is_stable_mono,
    "is-stable-epi": stable.is_stable_epi,
    "is-strong-mono": stable.is_stable_strong_mono,
    "is-strong-epi": stable.is_stable_strong_epi,
    "is-iso": stable.is_stable_iso,
    "is-stable-zero": stable.is_stable_zero,
    "in-add": None,
}


class Outcome(Exception):
    """Raised by a command to finish with a report and a nonzero exit code."""

    def __init__(self, report: dict, code: int):
        self.report = report
        self.code = code


def _global_options(parser: argparse.ArgumentParser, suppress: bool):
    d = (lambda v: argparse.SUPPRESS) if suppress else (lambda v: v)
    parser.add_argument("--workspace", default=d(None), help="workspace JSON file")
    parser.add_argument("--scenario", default=d(None), help=f"built-in scenario ({', '.join(SCENARIOS)})")
    parser.add_argument("--field-p", type=int, default=d(None), help="override the field modulus")
    parser.add_argument("--seed", type=int, default=d(0))
    parser.add_argument("--budget", type=int, default=d(10000))
    parser.add_argument("--len-cap", type=int, default=d(None), help="longest path before declaring infinite dimension")
    parser.add_argument("--format", choices=("text", "json"), default=d("text"))
    parser.add_argument("--output", default=d(None), help="write the report here instead of stdout")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="stablecat", description="Computations in stable module categories over F_p.")
    _global_options(parser, suppress=False)
    sub = parser.add_subparsers(dest="command", required=True)

    def cmd(name, help):
        p = sub.add_parser(name, help=help)
        _global_options(p, suppress=True)
        return p

    def t_opt(p):
        p.add_argument("--T", dest="T", default=None, help="subcategory name (default: first declared)")

    cmd("check", "validate the workspace and summarise it")
    p = cmd("hom", "basis of Hom(X, Y)")
    p.add_argument("--from", dest="source", required=True)
    p.add_argument("--to", dest="target", required=True)
    p = cmd("stable-hom", "dimension of the stable Hom space")
    p.add_argument("--from", dest="source", required=True)
    p.add_argument("--to", dest="target", required=True)
    t_opt(p)
    p = cmd("decide", "run a decision procedure")
    p.add_argument("op", choices=sorted(DECISIONS))
    p.add_argument("--morphism")
    p.add_argument("--module")
    p.add_argument("--expect", choices=("true", "false"))
    t_opt(p)
    p = cmd("approx", "canonical precover or preenvelope")
    p.add_argument("side", choices=("precover", "preenvelope"))
    p.add_argument("--module", required=True)
    t_opt(p)
    for name, help in (("omega", "loop of a module"), ("sigma", "suspension of a module")):
        p = cmd(name, help)
        p.add_argument("--module", required=True)
        t_opt(p)
    p = cmd("serre", "Serre-class computations")
    p.add_argument("action", choices=("torsion", "balance"))
    p.add_argument("--serre", dest="support", default=None, help="Serre support name (default: first declared)")
    p.add_argument("--module")
    p.add_argument("--corpus", default="all")
    p = cmd("weak-balance", "sufficient condition for weak balance, per generator")
    t_opt(p)
    p = cmd("balance", "search for a counterexample to (weak) balance")
    p.add_argument("--corpus", default="all")
    p.add_argument("--mode", choices=("balance", "weak_balance"), default="balance")
    t_opt(p)
    p = cmd("hereditary", "hereditary-case criterion on the corpus")
    p.add_argument("--corpus", default="all")
    t_opt(p)
    p = cmd("example", "print a built-in scenario as a workspace document")
    p.add_argument("name")
    return parser


# --- helpers ---------------------------------------------------------------


def _workspace(args) -> Workspace:
    if args.workspace and args.scenario:
        raise StableCatError("give either --workspace or --scenario, not both")
    if args.workspace:
        return load_workspace(args.workspace, args.field_p, args.len_cap)
    if args.scenario:
        return workspace_from(builtin(args.scenario, args.field_p or 101))
    raise StableCatError("no workspace: pass --workspace FILE or --scenario NAME")


def _corpus(ws: Workspace, spec: str) -> list[Representation]:
    if spec == "all":
        return list(ws.modules.values())
    return [ws.module(n.strip()) for n in spec.split(",") if n.strip()]


def _module_report(m: Representation) -> dict:
    return {"dim_vector": list(m.dim_vector()), **module_to_json(m)}


def _balance_report(rep: balance.BalanceReport) -> dict:
    out = {
        "verdict": rep.verdict,
        "route": rep.route,
        "certificates": {k: morphism_to_json(f) for k, f in rep.witnesses.items()},
        "verdicts": {k: verdict_to_json(v) for k, v in rep.verdicts.items()},
        "log": rep.log,
        "stats": rep.stats,
    }
    return out


# --- commands --------------------------------------------------------------


def run(args, ws: Workspace | None = None) -> dict:
    """Execute one parsed command and return its report."""
    if args.command == "example":
        return {"workspace": export_workspace(builtin(args.name, args.field_p or 101))}
    ws = ws or _workspace(args)
    c = args.command
    if c == "check":
        return {
            "verdict": "valid",
            "algebra_dim": ws.algebra.dim,
            "vertices": list(ws.algebra.vertices),
            "modules": {k: list(m.dim_vector()) for k, m in ws.modules.items()},
            "morphisms": list(ws.morphisms),
            "subcategories": ws.subcategories,
            "serre": ws.serre,
        }
    if c == "hom":
        space = hom(ws.module(args.source), ws.module(args.target))
        return {"dim": space.dim, "basis": [morphism_to_json(b, args.source, args.target) for b in space.basis]}
    if c == "stable-hom":
        ctx = ws.context(args.T)
        x, y = ws.module(args.source), ws.module(args.target)
        return {
            "dim": stable.stable_hom_dim(ctx, x, y),
            "hom_dim": ctx.hom(x, y).dim,
            "ideal_dim": stable.ideal_basis(ctx, x, y).dim,
        }
    if c == "decide":
        ctx = ws.context(args.T)
        if args.op == "in-add":
            if not args.module:
                raise StableCatError("in-add needs --module")
            v = stable.is_in_add(ctx, ws.module(args.module))
        else:
            if not args.morphism:
                raise StableCatError(f"{args.op} needs --morphism")
            v = DECISIONS[args.op](ctx, ws.morphism(args.morphism))
        report = verdict_to_json(v)
        report["verified"] = v.verify(ctx)
        if args.expect is not None and v.answer != (args.expect == "true"):
            raise Outcome(report, EXIT_NEGATIVE)
        return report
    if c == "approx":
        ctx = ws.context(args.T)
        f = stable.approximation(ctx, ws.module(args.module), args.side)
        return {"morphism": morphism_to_json(f), "object_dim_vector": list((f.source if args.side == "precover" else f.target).dim_vector())}
    if c in ("omega", "sigma"):
        ctx = ws.context(args.T)
        m = stable.loop_suspension(ctx, ws.module(args.module), "loop" if c == "omega" else "suspension")
        return {"module": _module_report(m)}
    if c == "serre":
        sctx = ws.serre_context(args.support)
        if args.action == "torsion":
            if not args.module:
                raise StableCatError("serre torsion needs --module")
            seq = balance.serre_torsion(ws.module(args.module), sctx.support)
            return {
                "torsion": _module_report(seq.mono.source),
                "torsion_free": _module_report(seq.epi.target),
                "splits": seq.splits(),
                "certificates": {"inclusion": morphism_to_json(seq.mono), "projection": morphism_to_json(seq.epi)},
            }
        rep = balance.check_serre_balance(sctx.support, _corpus(ws, args.corpus), ws.algebra)
        return _balance_report(rep)
    if c == "weak-balance":
        wb = balance.check_weak_balance_sufficient(ws.context(args.T))
        return {
            "verdict": "sufficient_condition_holds" if wb.all_pass else "sufficient_condition_fails",
            "generators": [
                {
                    "generator": ch.generator.name,
                    "envelope_dim_vector": list(ch.envelope.target.dim_vector()),
                    "envelope_projective": ch.envelope_projective,
                    "restriction_rank": ch.restriction_rank,
                    "passed": ch.passed,
                }
                for ch in wb.checks
            ],
            "route": "restriction along the injective envelope of each generator",
        }
    if c == "balance":
        ctx = ws.context(args.T)
        rep = balance.search_counterexample(ctx, _corpus(ws, args.corpus), args.mode, args.budget, args.seed)
        report = _balance_report(rep)
        report["verified"] = rep.verify(ctx)
        if rep.verdict == balance.UNDETERMINED and not rep.stats.get("candidates_exhausted", True):
            raise Outcome(report, EXIT_BUDGET)
        return report
    if c == "hereditary":
        rep = balance.check_hereditary(ws.context(args.T), _corpus(ws, args.corpus))
        return {
            "verdict": rep.verdict,
            "hypothesis": rep.hypothesis,
            "closure": rep.closure,
            "log": rep.log,
            "route": "submodules of generators projective; modules without maps to T closed under submodules",
        }
    raise StableCatError(f"unknown command {c!r}")


def render_text(report: dict, indent: int = 0) -> str:
    lines = []
    pad = "  " * indent
    for k, v in report.items():
        if isinstance(v, dict) and v and k not in ("maps",):
            lines.append(f"{pad}{k}:")
            lines.append(render_text(v, indent + 1))
        else:
            lines.append(f"{pad}{k}: {v}")
    return "\n".join(lines)


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    start = time.perf_counter()
    code = EXIT_OK
    fld = args.field_p
    try:
        ws = None if args.command == "example" else _workspace(args)
        if ws is not None:
            fld = ws.algebra.field.p
        report = run(args, ws)
    except Outcome as out:
        report, code = out.report, out.code
    except BudgetExceeded as e:
        report, code = {"error": str(e), "kind": "BudgetExceeded"}, EXIT_BUDGET
    except StableCatError as e:
        report, code = {"error": str(e), "kind": type(e).__name__}, EXIT_INVALID
    if args.command == "example" and code == EXIT_OK:
        text = dumps(report["workspace"])
    else:
        report = {"command": args.command, **report, "seed": args.seed, "field": fld}
        report["timing"] = round(time.perf_counter() - start, 6)
        text = dumps(report) if args.format == "json" else render_text(report)
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    else:
        print(text)
    if "error" in report:
        print(f"error: {report['error']}", file=sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())
