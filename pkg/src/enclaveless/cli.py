"""Command-line entry point.

Exit status: 0 success, 1 usage error, 2 check violation, 3 cap exceeded.
Every flag can also be set through an ``ENCLAVELESS_<FLAG>`` environment
variable (``--cap-n`` becomes ``ENCLAVELESS_CAP_N``); explicit flags win.
"""

from __future__ import annotations

import argparse
import json
import os
import random
import sys
from typing import Sequence, TextIO

from . import families
from .formats import (
    Graph6Error,
    Graph6SizeError,
    emit_report,
    parse_edge_list,
    parse_graph6,
    read_graph6_lines,
    write_graph6,
)
from .game import (
    GameKind,
    GameSolver,
    IllegalMove,
    Side,
    apply_move,
    initial_position,
    legal_moves,
    parse_kind,
    parse_side,
)
from .graph import CapExceeded, Graph, GraphError, bits, build_graph
from .invariants import compute_invariants, is_maximal_enclaveless
from .verifier import (
    Caps,
    catalog_names,
    exhaustive_corpus,
    format_rows,
    graph_classes,
    reproduce_known_values,
    run_checks,
    select_checks,
)

ENV_PREFIX = "ENCLAVELESS_"
MAX_CAP_N = 30

EXIT_OK, EXIT_USAGE, EXIT_VIOLATION, EXIT_CAP = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _env(name: str, default=None):
    return os.environ.get(ENV_PREFIX + name.upper().replace("-", "_"), default)


def _common(p: argparse.ArgumentParser, *, kind: bool = False) -> None:
    p.add_argument("--input", default=_env("input"), help="graph file, or - for stdin")
    p.add_argument("--format", choices=("g6", "edges"), default=_env("format", "g6"))
    p.add_argument("--cap-n", type=int, default=_env("cap_n"), help="largest order accepted")
    p.add_argument("--out", choices=("table", "records"), default=_env("out", "table"))
    if kind:
        p.add_argument("--kind", choices=("enclaveless", "domination"), default=_env("kind", "enclaveless"))
        p.add_argument("--starter", choices=("max", "min", "dominator", "staller"), default=_env("starter"))


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="enclaveless", description="Exact enclaveless and domination game laboratory.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("invariants", help="domination chain invariants of each input graph")
    _common(p)

    p = sub.add_parser("game", help="solve a game exactly and print an optimal transcript")
    _common(p, kind=True)

    p = sub.add_parser("family", help="emit a generated graph as graph6")
    p.add_argument("name", choices=("path", "cycle", "star", "complete", "double_star",
                                    "corona_path", "connector_ring", "family_f"))
    p.add_argument("--n", type=int)
    p.add_argument("--k", type=int)
    p.add_argument("--m", type=int)
    p.add_argument("--r", type=int)
    p.add_argument("--input", default=_env("input"), help="family spec file for family_f")
    p.add_argument("--out", choices=("table", "records"), default=_env("out", "table"))

    p = sub.add_parser("sweep", help="run the check catalog over a corpus")
    _common(p)
    p.add_argument("--exhaustive", type=int, metavar="NMAX", help="all labeled graphs up to NMAX vertices")
    p.add_argument("--classes", action="store_true", help="one graph per isomorphism class, weighted")
    p.add_argument("--connected", action="store_true")
    p.add_argument("--random", type=int, metavar="COUNT", help="COUNT random graphs G(n, 1/2)")
    p.add_argument("--random-n", type=int, default=8)
    p.add_argument("--seed", type=int, default=_env("seed", 0))
    p.add_argument("--checks", default=_env("checks"), help="comma-separated check names")
    p.add_argument("--workers", type=int, default=_env("workers", 1))
    p.add_argument("--list-checks", action="store_true")
    p.add_argument("--no-domination", action="store_true", help="skip the domination game values")

    p = sub.add_parser("reproduce", help="recompute the known values table")
    p.add_argument("--quick", action="store_true", help="skip the sweep and strategy rows")

    p = sub.add_parser("play", help="play against the engine on the terminal")
    _common(p, kind=True)
    p.add_argument("--human", choices=("max", "min", "dominator", "staller"), default=_env("human", "min"))
    return parser


def _read_text(path: str | None, stdin: TextIO) -> str:
    if path is None:
        raise UsageError("--input is required")
    if path == "-":
        return stdin.read()
    try:
        with open(path) as fh:
            return fh.read()
    except OSError as exc:
        raise UsageError(str(exc)) from None


def load_graphs(args, stdin: TextIO) -> list[Graph]:
    text = _read_text(args.input, stdin)
    if args.format == "edges":
        graphs = [parse_edge_list(text)]
    else:
        graphs = list(read_graph6_lines(text.splitlines()))
    if not graphs:
        raise UsageError("no graphs in input")
    cap = _cap_n(args)
    if cap is not None:
        for g in graphs:
            if g.n > cap:
                raise CapExceeded(f"order {g.n} exceeds --cap-n {cap}")
    return graphs


def _cap_n(args) -> int | None:
    cap = getattr(args, "cap_n", None)
    if cap is None:
        return None
    cap = int(cap)
    if not 1 <= cap <= MAX_CAP_N:
        raise UsageError(f"--cap-n must lie in 1..{MAX_CAP_N}")
    return cap


def _caps(args) -> Caps:
    cap = _cap_n(args)
    base = Caps(domination_game=not getattr(args, "no_domination", False))
    if cap is None:
        return base
    return Caps(cap, cap, cap, cap, base.domination_game)


def _starter(args, kind: GameKind) -> Side:
    if args.starter is None:
        return Side.MIN if kind is GameKind.DOMINATION else Side.MAX
    return parse_side(args.starter)


def cmd_invariants(args, out: TextIO, stdin: TextIO) -> int:
    caps = _caps(args)
    for g in load_graphs(args, stdin):
        r = compute_invariants(g, caps.invariants, caps.irredundance)
        row = {"graph6": write_graph6(g)} | r.as_dict()
        if args.out == "records":
            out.write(json.dumps(row) + "\n")
        else:
            out.write("  ".join(f"{k}={v}" for k, v in row.items()) + "\n")
    return EXIT_OK


def cmd_game(args, out: TextIO, stdin: TextIO) -> int:
    kind = parse_kind(args.kind)
    starter = _starter(args, kind)
    cap = _cap_n(args)
    for g in load_graphs(args, stdin):
        solver = GameSolver(g, kind, starter, cap=cap)
        outcome = solver.outcome(initial_position(g, kind, starter))
        if args.out == "records":
            out.write(json.dumps({
                "graph6": write_graph6(g),
                "kind": kind.value,
                "starter": starter.value,
                "value": outcome.total_moves,
                "optimal_first_moves": list(bits(outcome.optimal_first_moves)),
                "transcript": list(outcome.principal_variation),
            }) + "\n")
            continue
        out.write(f"{write_graph6(g)}  {kind.value} game, {starter.title(kind)} starts\n")
        out.write(f"value: {outcome.total_moves}\n")
        out.write(f"optimal first moves: {' '.join(map(str, bits(outcome.optimal_first_moves))) or '-'}\n")
        side = starter
        for i, v in enumerate(outcome.principal_variation, 1):
            out.write(f"{i}. {side.title(kind)} plays {v}\n")
            side = side.other
    return EXIT_OK


def _family_graph(args, stdin: TextIO):
    def need(name):
        value = getattr(args, name)
        if value is None:
            raise UsageError(f"family {args.name} needs --{name}")
        return value

    name = args.name
    if name in ("path", "cycle", "complete", "corona_path"):
        maker = families.corona_path if name == "corona_path" else lambda n: families.basic(name, n)
        return maker(need("n")), None
    if name == "star":
        return families.star(need("k")), None
    if name == "double_star":
        return families.double_star(need("k")), None
    if name == "connector_ring":
        return families.connector_ring(need("m"), need("r")), None
    spec = families.parse_family_spec(_read_text(args.input, stdin))
    pg = families.build_family_f(spec)
    return pg.graph, pg


def cmd_family(args, out: TextIO, stdin: TextIO) -> int:
    g, parts = _family_graph(args, stdin)
    if args.out == "records":
        row = {"graph6": write_graph6(g), "n": g.n, "labels": {str(k): v for k, v in sorted(g.labels.items())}}
        if parts is not None:
            row["A"] = list(bits(parts.A))
            row["B"] = list(bits(parts.B))
        out.write(json.dumps(row) + "\n")
    else:
        out.write(write_graph6(g) + "\n")
    return EXIT_OK


def cmd_sweep(args, out: TextIO, stdin: TextIO) -> int:
    if args.list_checks:
        out.write("\n".join(catalog_names()) + "\n")
        return EXIT_OK
    try:
        checks = select_checks(args.checks.split(",") if args.checks else None)
    except KeyError as exc:
        raise UsageError(exc.args[0]) from None
    sources = [x for x in (args.input, args.exhaustive, args.random) if x is not None]
    if len(sources) != 1:
        raise UsageError("sweep needs exactly one of --input, --exhaustive, --random")
    if args.exhaustive is not None:
        if args.classes:
            corpus = graph_classes(args.exhaustive, args.connected)
        else:
            corpus = list(exhaustive_corpus(args.exhaustive, args.connected))
    elif args.random is not None:
        rng = random.Random(int(args.seed))
        corpus = []
        n = args.random_n
        for _ in range(args.random):
            corpus.append(build_graph(n, [(i, j) for i in range(n) for j in range(i + 1, n) if rng.random() < 0.5]))
    else:
        corpus = load_graphs(args, stdin)
    caps = _caps(args)
    result = run_checks(corpus, checks, caps, workers=int(args.workers))
    out.write(emit_report(result.records, args.out, skipped=len(result.skipped)))
    return EXIT_OK if result.ok else EXIT_VIOLATION


def cmd_reproduce(args, out: TextIO, stdin: TextIO) -> int:
    rows = reproduce_known_values(include_sweep=not args.quick, include_strategies=not args.quick)
    out.write(format_rows(rows))
    return EXIT_OK if all(r.passed for r in rows) else EXIT_VIOLATION


def _fmt_set(mask: int) -> str:
    return "{" + ", ".join(map(str, bits(mask))) + "}"


def cmd_play(args, out: TextIO, stdin: TextIO) -> int:
    """Line-oriented session: the human types vertex ids, ``q`` quits."""
    if args.input == "-":
        raise UsageError("play reads moves from stdin; give the graph with --input <file>")
    g = load_graphs(args, stdin)[0]
    kind = parse_kind(args.kind)
    starter = _starter(args, kind)
    human = parse_side(args.human)
    solver = GameSolver(g, kind, starter, cap=_cap_n(args))
    p = initial_position(g, kind, starter)
    out.write(f"{kind.value} game on {write_graph6(g)} (n={g.n}); "
              f"you are {human.title(kind)}, {starter.title(kind)} moves first.\n")
    while True:
        legal = legal_moves(p)
        if not legal:
            break
        if p.mover is human:
            out.write(f"played: {_fmt_set(p.played)}\nlegal: {' '.join(map(str, bits(legal)))}\nyour move> ")
            out.flush()
            line = stdin.readline()
            if not line or line.strip().lower() in ("q", "quit"):
                out.write("\nsession aborted\n")
                return EXIT_USAGE
            try:
                p = apply_move(p, int(line.strip()))
            except (ValueError, IllegalMove):
                out.write(f"{line.strip()!r} is not a legal move\n")
            continue
        best = solver.best_moves(p)
        v = (best & -best).bit_length() - 1
        out.write(f"engine ({p.mover.title(kind)}) plays {v}\n")
        p = apply_move(p, v)
    size = p.played.bit_count()
    out.write(f"game over after {size} vertices: {_fmt_set(p.played)}\n")
    if g.n <= 20:
        r = compute_invariants(g)
        if kind is GameKind.ENCLAVELESS:
            assert is_maximal_enclaveless(g, p.played)
            out.write(f"psi={r.psi} <= {size} <= Psi={r.Psi}\n")
        else:
            out.write(f"gamma={r.gamma} <= {size}\n")
    return EXIT_OK


COMMANDS = {
    "invariants": cmd_invariants,
    "game": cmd_game,
    "family": cmd_family,
    "sweep": cmd_sweep,
    "reproduce": cmd_reproduce,
    "play": cmd_play,
}


def main(argv: Sequence[str] | None = None, out: TextIO | None = None, stdin: TextIO | None = None) -> int:
    out = out or sys.stdout
    stdin = stdin or sys.stdin
    args = build_parser().parse_args(argv)
    try:
        return COMMANDS[args.command](args, out, stdin)
    except UsageError as exc:
        print(f"enclaveless: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (CapExceeded, Graph6SizeError) as exc:
        print(f"enclaveless: cap exceeded: {exc}", file=sys.stderr)
        return EXIT_CAP
    except (GraphError, Graph6Error, ValueError) as exc:
        print(f"enclaveless: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
