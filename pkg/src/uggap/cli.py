"""Command-line front door for the gap-construction toolkit.

Every subcommand is a thin adapter over the library modules: derive
parameter sizes, run a construction, solve or lift an instance, play a
pebble match, run the decay experiment, inspect the approximation gap,
or serve interactive sessions over HTTP.  Machine output is canonical
compact JSON (one document, sorted keys, trailing newline) so repeated
invocations with the same seed are byte-identical; --human switches to
indented JSON.  Rationals are printed as "num/den" strings and big
integers as decimal strings, never floats.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from fractions import Fraction
from pathlib import Path
from typing import Optional

from .construction import (
    approx_gap_params,
    branching_inequality_slack,
    build_gap_pair,
    canonical_dumps,
    decay_simulation,
    derive_params,
    load_output,
    sample_edge_data,
    write_output,
)
from .game import external_transcript, run_match
from .gf2 import to_bitstring
from .graphs import graph_loads, preset as graph_preset
from .instances import instance_from_json, instance_to_json
from .lifting import lift
from .presets import (
    StrategyContext,
    instance_token_names,
    pair_names,
    resolve_instance_token,
    resolve_pair,
)
from .service import build_server
from .solver import exact_opt, inconsistent_cycle, is_completely_satisfiable
from .strategy import (
    CycleGreedySpoiler,
    ExhaustiveSpoiler,
    IdentityDuplicator,
    IdentityPlanner,
    RandomSpoiler,
    TreeDuplicator,
    TreePlanner,
)

__all__ = ["execute", "main_entry"]


def _rational(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(
            f"not a rational number: {text!r} (write e.g. 1/4 or 3)"
        ) from None


def _frac(f: Fraction) -> str:
    f = Fraction(f)
    if f.denominator == 1:
        return str(f.numerator)
    return f"{f.numerator}/{f.denominator}"


def _emit(doc: dict, human: bool) -> None:
    if human:
        sys.stdout.write(json.dumps(doc, sort_keys=True, indent=2) + "\n")
    else:
        sys.stdout.write(canonical_dumps(doc))


def _load_instance(spec: str):
    """An instance from a bundled token (fig3-u2-lifted) or a JSON file."""
    inst = resolve_instance_token(spec)
    if inst is not None:
        return inst
    path = Path(spec)
    if not path.exists():
        raise ValueError(
            f"{spec!r} is neither a bundled instance token "
            f"({', '.join(instance_token_names())}) nor an existing file"
        )
    return instance_from_json(json.loads(path.read_text()))


def _token_pair(spec: str) -> Optional[str]:
    """The preset pair a token belongs to, None for plain files."""
    if resolve_instance_token(spec) is None:
        return None
    return spec.split("-")[0]


# --- subcommands --------------------------------------------------------

def _cmd_params(args) -> dict:
    p = derive_params(args.epsilon, args.delta, args.ell)
    return {
        "epsilon": _frac(p.epsilon),
        "delta": _frac(p.delta),
        "ell": p.ell,
        "d": p.d,
        "gamma": _frac(p.gamma),
        "m": p.m,
        "r": str(p.r),
        "q": str(p.q),
    }


def _cmd_construct(args) -> dict:
    if args.graph is not None:
        graph = graph_loads(Path(args.graph).read_text())
        preset = None
    else:
        graph = graph_preset(args.preset)
        preset = args.preset
    rng = random.Random(args.seed)
    data = sample_edge_data(graph, args.m, args.ell, rng)
    out = build_gap_pair(graph, data, args.r, seed=args.seed, preset=preset)
    write_output(out, Path(args.out))
    return json.loads((Path(args.out) / "report.json").read_text())


def _cmd_opt(args) -> dict:
    inst = _load_instance(args.infile)
    res = exact_opt(inst)
    return {
        "opt": _frac(res.optimum),
        "witness": {
            v: to_bitstring(g, inst.m) for v, g in sorted(res.witness.items())
        },
        "enumerated": res.enumerated,
        "constraints": inst.constraint_count,
    }


def _cmd_satcheck(args) -> dict:
    inst = _load_instance(args.infile)
    sat, assignment, witness = is_completely_satisfiable(inst)
    if sat:
        return {
            "satisfiable": True,
            "assignment": {
                v: to_bitstring(g, inst.m) for v, g in sorted(assignment.items())
            },
        }
    cycle = inconsistent_cycle(witness)
    return {
        "satisfiable": False,
        "cycle": [[u, v, to_bitstring(z, inst.m)] for u, v, z in cycle],
    }


def _cmd_lift(args) -> dict:
    inst = _load_instance(args.infile)
    lifted = lift(inst)
    doc = instance_to_json(lifted)
    if args.out is None:
        return doc
    Path(args.out).write_text(canonical_dumps(doc))
    return {
        "written": str(args.out),
        "vertices": len(lifted.graph.vertices),
        "constraints": lifted.constraint_count,
    }


def _cmd_play(args) -> dict:
    a = _load_instance(args.a)
    b = _load_instance(args.b)

    ctx = None
    if args.construction is not None:
        out = load_output(Path(args.construction))
        ctx = StrategyContext(out.good_graph, out.edge_data, out.r)
    else:
        pair_a, pair_b = _token_pair(args.a), _token_pair(args.b)
        if pair_a is not None and pair_a == pair_b:
            ctx = resolve_pair(pair_a).context()

    if args.duplicator == "tree":
        if ctx is None:
            raise ValueError(
                "the tree duplicator needs its construction data: use bundled "
                "tokens from one preset pair, or pass --construction DIR"
            )
        duplicator = TreeDuplicator(ctx)
    else:
        duplicator = IdentityDuplicator(a.m)

    if args.spoiler == "random":
        spoiler = RandomSpoiler(args.seed)
    elif args.spoiler == "cycle":
        spoiler = CycleGreedySpoiler(args.seed)
    else:
        if args.duplicator == "tree":
            planner = TreePlanner(ctx)
        else:
            planner = IdentityPlanner(a.m)
        spoiler = ExhaustiveSpoiler(planner, args.depth or args.rounds)

    outcome = run_match(a, b, args.k, spoiler, duplicator, args.rounds)
    return {
        "a": args.a,
        "b": args.b,
        "k": args.k,
        "spoiler": args.spoiler,
        "duplicator": args.duplicator,
        "seed": args.seed,
        "winner": outcome.winner,
        "reason": outcome.reason,
        "rounds_played": outcome.rounds_played,
        "transcript": external_transcript(outcome.transcript),
    }


def _cmd_decay(args) -> dict:
    trace = decay_simulation(
        args.m, args.ell, args.d, args.r, args.trials, args.seed
    )
    return {
        "m": trace.m,
        "ell": trace.ell,
        "d": trace.d,
        "r": trace.r,
        "trials": trace.trials,
        "seed": trace.seed,
        "means": [_frac(x) for x in trace.means],
        "stderrs": list(trace.stderrs),
        "final_zero_fraction": _frac(trace.final_zero_fraction),
    }


def _cmd_gapcheck(args) -> dict:
    g = approx_gap_params(args.alpha)
    return {
        "alpha": _frac(g.alpha),
        "ell": g.ell,
        "delta": _frac(g.delta),
        "completeness": _frac(g.completeness),
        "soundness": _frac(g.soundness),
        "ratio": _frac(g.ratio),
        "ell_formula": g.ell_formula,
        "formula_ratio": _frac(g.formula_ratio),
        "formula_valid": g.formula_valid,
    }


def _cmd_slack(args) -> dict:
    return {
        "d": args.d,
        "n": args.n,
        "slack": _frac(branching_inequality_slack(args.d, args.n)),
    }


def _cmd_serve(args) -> Optional[dict]:
    server = build_server(args.bind, args.port)
    host, port = server.server_address[:2]
    _emit({"bind": host, "port": port}, args.human)
    sys.stdout.flush()
    try:
        server.serve_forever()
    except KeyboardInterrupt:
        pass
    finally:
        server.server_close()
    return None


# --- parser -------------------------------------------------------------

def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="uggap",
        description="Two-instance gap constructions and the pebble game around them.",
    )
    sub = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")

    def cmd(name: str, func, help: str):
        p = sub.add_parser(name, help=help)
        p.set_defaults(func=func)
        p.add_argument("--human", action="store_true", help="indent the JSON output")
        return p

    p = cmd("params", _cmd_params, "derive instance sizes from target parameters")
    p.add_argument("--epsilon", type=_rational, required=True)
    p.add_argument("--delta", type=_rational, required=True)
    p.add_argument("--ell", type=int, required=True)

    p = cmd("construct", _cmd_construct, "sample edge data and build an instance pair")
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--graph", help="base graph JSON file")
    src.add_argument(
        "--preset",
        help="named base graph: K3, K4, Petersen, Heawood, McGee, TutteCoxeter",
    )
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--ell", type=int, required=True)
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", required=True, help="bundle output directory")

    p = cmd("opt", _cmd_opt, "exact optimum of an instance")
    p.add_argument("--in", dest="infile", required=True,
                   help="instance JSON file or bundled token (e.g. fig3-u2)")

    p = cmd("satcheck", _cmd_satcheck, "decide complete satisfiability")
    p.add_argument("--in", dest="infile", required=True,
                   help="instance JSON file or bundled token")

    p = cmd("lift", _cmd_lift, "label-cover lift of an instance")
    p.add_argument("--in", dest="infile", required=True,
                   help="instance JSON file or bundled token")
    p.add_argument("--out", help="write the lifted instance here instead of stdout")

    p = cmd("play", _cmd_play, "run a pebble match between two agents")
    p.add_argument("--a", required=True, help="first structure (token or file)")
    p.add_argument("--b", required=True, help="second structure (token or file)")
    p.add_argument("--k", type=int, required=True, help="pebble pairs")
    p.add_argument("--spoiler", choices=("random", "cycle", "exhaustive"),
                   default="random")
    p.add_argument("--duplicator", choices=("tree", "identity"), default="tree")
    p.add_argument("--rounds", type=int, default=20)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--depth", type=int, default=None,
                   help="search depth for the exhaustive spoiler (default: rounds)")
    p.add_argument("--construction",
                   help="construction bundle directory backing the tree strategy")

    p = cmd("decay", _cmd_decay, "spanning-deficit decay experiment")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--ell", type=int, required=True)
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--trials", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)

    p = cmd("gapcheck", _cmd_gapcheck, "completeness/soundness pair for a target ratio")
    p.add_argument("--alpha", type=_rational, required=True)

    p = cmd("slack", _cmd_slack, "branching inequality slack at (d, n)")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--n", type=int, required=True)

    p = cmd("serve", _cmd_serve, "serve interactive game sessions over HTTP")
    p.add_argument("--bind", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8642)

    return parser


def execute(argv) -> int:
    """Run one command; returns the process exit code.

    0 on success, 1 on a domain error (JSON error object on stdout),
    2 on a usage error (argparse message on stderr).
    """
    parser = _build_parser()
    try:
        args = parser.parse_args(list(argv))
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        doc = args.func(args)
    except (ValueError, KeyError, OSError, AssertionError) as exc:
        message = exc.args[0] if exc.args and isinstance(exc.args[0], str) else str(exc)
        _emit({"error": message}, args.human)
        return 1
    if doc is not None:
        _emit(doc, args.human)
    return 0


def main_entry() -> None:
    sys.exit(execute(sys.argv[1:]))


if __name__ == "__main__":
    main_entry()
