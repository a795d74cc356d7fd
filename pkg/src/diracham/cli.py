"""Unified command-line entry point.

Subcommands: classify | ham | ham-bip | expcheck | sweep | play | serve |
oracle.  Machine-readable output (JSON or CSV) goes to stdout or --out;
human diagnostics go to stderr.  Exit codes: 0 success, 1 domain errors,
2 usage errors.  Every randomized command takes --seed; when omitted, one
is generated and printed so the run can be replayed byte-for-byte.
"""

from __future__ import annotations

import argparse
import json
import random as _random
import sys
from typing import Optional

from . import bipartite, expanders, games, oracle
from .classifier import ClassifierParams, classify, sparsest_halfset_pair
from .dirac_strategy import (
    breaker_greedy_block,
    breaker_random,
    maker_dirac_strategy,
    play_hamiltonicity_game,
)
from .errors import (
    BudgetError,
    ClassificationFailedError,
    DomainError,
    GraphFormatError,
    HallViolationError,
    InvalidSetError,
    PreconditionError,
)
from .games import BREAKER, MAKER, WinningFamily, minimax_strategy
from .graph import Graph, load_graph
from .random_subgraph import clogn_grid, hamiltonicity_sweep, sweep_rows_csv
from .rotation import Budget, find_hamilton_cycle, find_path_between

DOMAIN_ERRORS = (
    DomainError,
    GraphFormatError,
    InvalidSetError,
    BudgetError,
    PreconditionError,
    ClassificationFailedError,
    HallViolationError,
    FileNotFoundError,
)


def _emit(payload: str, out: Optional[str]) -> None:
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(payload)
    else:
        sys.stdout.write(payload)


def _ensure_seed(args) -> int:
    if args.seed is None:
        seed = _random.SystemRandom().randrange(2**32)
        print(f"seed: {seed}", file=sys.stderr)
        return seed
    return args.seed


def _json(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":")) + "\n"


# -- subcommand handlers ------------------------------------------------------


def _cmd_classify(args) -> int:
    G = load_graph(args.graph)
    params = ClassifierParams(alpha=args.alpha, gamma=args.gamma)
    seed = _ensure_seed(args)
    mode = "local_search" if args.mode == "local" else args.mode
    cls = classify(G, params, mode=mode, seed=seed)
    payload = {
        "case": cls.case,
        "A": sorted(cls.A) if cls.A is not None else None,
        "heuristic": cls.heuristic,
        "diagnostics": {
            k: (sorted(v) if isinstance(v, (set, frozenset)) else v)
            for k, v in cls.diagnostics.items()
        },
    }
    _emit(_json(payload), args.out)
    return 0


def _cmd_ham(args) -> int:
    G = load_graph(args.graph)
    seed = _ensure_seed(args)
    budget = Budget(restarts=args.restarts, max_steps=args.budget)
    if args.path:
        u, v = args.path
        res = find_path_between(G, u, v, budget=budget, seed=seed)
        payload = {
            "found": res.found,
            "certificate": list(res.path) if res.found else None,
            "restarts": res.restarts,
            "steps": res.steps,
        }
    else:
        res = find_hamilton_cycle(G, budget=budget, seed=seed)
        payload = {
            "found": res.found,
            "certificate": list(res.cycle) if res.found else None,
            "restarts": res.restarts,
            "steps": res.steps,
        }
    _emit(_json(payload), args.out)
    return 0


def _parse_special(spec: str) -> list[tuple[int, int]]:
    if not spec:
        return []
    out = []
    for part in spec.split(","):
        a, b = part.strip().split("-")
        out.append((int(a), int(b)))
    return out


def _cmd_ham_bip(args) -> int:
    G = load_graph(args.graph)
    with open(args.part, "r", encoding="utf-8") as fh:
        v1 = sorted({int(tok) for tok in fh.read().split()})
    v2 = sorted(set(range(G.n)) - set(v1))
    special = _parse_special(args.special or "")
    mf = bipartite.build_matched_frame(G, v1, v2, special)
    seed = _ensure_seed(args)
    res = bipartite.find_proper_hamilton_cycle(
        G, mf, budget=Budget(restarts=args.restarts, max_steps=args.budget), seed=seed
    )
    payload = {
        "found": res.found,
        "certificate": list(res.cycle) if res.found else None,
        "restarts": res.restarts,
        "steps": res.steps,
        "diagnostic": res.diagnostic,
        "k": mf.frame.k,
    }
    _emit(_json(payload), args.out)
    return 0


def _cmd_expcheck(args) -> int:
    G = load_graph(args.graph)
    params = expanders.ExpanderParams(epsilon=args.eps, r=args.r, k=args.k)
    seed = _ensure_seed(args)
    kw = dict(mode=args.mode, seed=seed, samples=args.samples)
    if args.kind == "half":
        rep = expanders.check_half_expander(G, params, **kw)
    elif args.kind == "plain":
        rep = expanders.check_expander(G, params, **kw)
    else:
        if not args.part:
            raise DomainError("--kind bip needs --part (file listing V1 ids)")
        with open(args.part, "r", encoding="utf-8") as fh:
            v1 = sorted({int(tok) for tok in fh.read().split()})
        v2 = sorted(set(range(G.n)) - set(v1))
        frame = bipartite.build_special_frame(
            G, v1, v2, _parse_special(args.special or "")
        )
        rep = expanders.check_bipartite_expander(G, frame, params, **kw)
    payload = {
        "verdict": rep.verdict,
        "condition": rep.condition,
        "witness": [sorted(w) for w in rep.witness] if rep.witness else None,
        "observed": rep.observed,
        "required": rep.required,
        "details": rep.details,
    }
    _emit(_json(payload), args.out)
    return 0


def _cmd_sweep(args) -> int:
    G = load_graph(args.graph)
    seed = _ensure_seed(args)
    cs = [float(c) for c in args.pgrid.split(",")]
    ps = clogn_grid(G.n, cs) if args.pgrid_unit == "clogn" else cs
    budget = Budget(restarts=args.restarts, max_steps=args.budget)
    result = hamiltonicity_sweep(
        G, ps, trials=args.trials, budget=budget, seed=seed, graph_desc=args.graph
    )
    for w in result.warnings:
        print(f"warning: {w}", file=sys.stderr)
    _emit(sweep_rows_csv(result), args.out)
    return 0


def _load_family(path: str, board_size: int) -> WinningFamily:
    with open(path, "r", encoding="utf-8") as fh:
        obj = json.load(fh)
    fam = WinningFamily.of(obj)
    for B in fam.sets:
        if any(not (0 <= e < board_size) for e in B):
            raise DomainError("family element off the board")
    return fam


def _hamiltonicity_family(G: Graph) -> WinningFamily:
    """Explicit Hamilton-cycle family; exponential, so tiny n only."""
    if G.n > 8:
        raise DomainError(
            "explicit Hamiltonicity family only materialized for n <= 8; "
            "use --breaker greedy-block or supply --family"
        )
    from itertools import permutations

    eidx = {e: i for i, e in enumerate(G.edges())}
    sets = set()
    for perm in permutations(range(1, G.n)):
        seq = (0,) + perm
        ok = all(
            G.has_edge(seq[i], seq[(i + 1) % G.n]) for i in range(G.n)
        )
        if ok:
            cyc = frozenset(
                eidx[(min(seq[i], seq[(i + 1) % G.n]), max(seq[i], seq[(i + 1) % G.n]))]
                for i in range(G.n)
            )
            sets.add(cyc)
    return WinningFamily(tuple(sets))


def _cmd_play(args) -> int:
    G = load_graph(args.graph)
    seed = _ensure_seed(args)
    if ":" in args.bias:
        m_part, b_part = args.bias.split(":")
        bias = (int(m_part), int(b_part))
    else:
        bias = (1, int(args.bias))
    family = None
    if args.family:
        family = _load_family(args.family, G.m)
    if args.maker == "dirac":
        maker = maker_dirac_strategy(G, bias[1], seed=seed, beta=args.beta)
    elif args.maker == "random":
        maker = games.random_strategy()
    else:
        fam = family if family is not None else _hamiltonicity_family(G)
        maker = minimax_strategy(fam, MAKER)
    if args.breaker == "potential":
        fam = family if family is not None else _hamiltonicity_family(G)
        breaker = lambda state, rng: games.breaker_potential_move(fam, state)
    elif args.breaker == "random":
        breaker = breaker_random()
    elif args.breaker == "minimax":
        fam = family if family is not None else _hamiltonicity_family(G)
        breaker = minimax_strategy(fam, BREAKER)
    else:
        breaker = breaker_greedy_block(G)
    budget = Budget(restarts=4, max_steps=args.budget)
    t = play_hamiltonicity_game(
        G, bias, maker, breaker, seed=seed, per_move_budget=budget
    )
    payload = {
        "winner": t.winner,
        "certificate": list(t.certificate) if t.certificate else None,
        "moves": [[p, e, turn] for p, e, turn in t.state.history],
        "edges": [list(e) for e in G.edges()],
        "forfeited_by": t.forfeited_by,
    }
    if t.potentials:
        payload["potentials"] = t.potentials
    out = args.transcript or args.out
    _emit(_json(payload), out)
    return 0


def _cmd_oracle(args) -> int:
    G = load_graph(args.graph)
    if args.path:
        u, v = args.path
        path = oracle.hamilton_path_between(G, u, v)
        payload = {"hamilton_path": path is not None, "certificate": list(path) if path else None}
    else:
        cyc = oracle.hamilton_cycle(G)
        payload = {"hamiltonian": cyc is not None, "certificate": list(cyc) if cyc else None}
    _emit(_json(payload), args.out)
    return 0


def _cmd_serve(args) -> int:
    from .service import run_server

    run_server(host=args.host, port=args.port, persist=args.persist, seed=args.seed or 0)
    return 0


# -- parser ------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(prog="diracham")
    sub = top.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--graph", required=True, help="graph file (text or JSON)")
        p.add_argument("--seed", type=int, default=None)
        p.add_argument("--out", default=None, help="write output here instead of stdout")

    p = sub.add_parser("classify", help="structural trichotomy with witness")
    common(p)
    p.add_argument("--alpha", type=float, required=True)
    p.add_argument("--gamma", type=float, required=True)
    p.add_argument("--mode", choices=["exact", "local"], default="exact")
    p.set_defaults(fn=_cmd_classify)

    p = sub.add_parser("ham", help="rotation-extension Hamilton cycle / path search")
    common(p)
    p.add_argument("--budget", type=int, default=1_000_000)
    p.add_argument("--restarts", type=int, default=50)
    p.add_argument("--path", nargs=2, type=int, metavar=("U", "V"))
    p.set_defaults(fn=_cmd_ham)

    p = sub.add_parser("ham-bip", help="proper Hamilton cycle in a matched frame")
    common(p)
    p.add_argument("--part", required=True, help="file listing V1 vertex ids")
    p.add_argument("--special", default="", help='special edges "u1-w1,u2-w2,..."')
    p.add_argument("--budget", type=int, default=200_000)
    p.add_argument("--restarts", type=int, default=12)
    p.set_defaults(fn=_cmd_ham_bip)

    p = sub.add_parser("expcheck", help="expansion certification")
    common(p)
    p.add_argument("--kind", choices=["half", "plain", "bip"], required=True)
    p.add_argument("--eps", type=float, required=True)
    p.add_argument("--r", type=float, required=True)
    p.add_argument("--k", type=int, default=0)
    p.add_argument("--mode", choices=["exact", "sampled"], default="exact")
    p.add_argument("--samples", type=int, default=10_000)
    p.add_argument("--part", default=None)
    p.add_argument("--special", default="")
    p.set_defaults(fn=_cmd_expcheck)

    p = sub.add_parser("sweep", help="coupled Hamiltonicity threshold sweep")
    common(p)
    p.add_argument("--pgrid", required=True, help='comma list, e.g. "1,2,4,8"')
    p.add_argument("--pgrid-unit", choices=["clogn", "raw"], default="clogn")
    p.add_argument("--trials", type=int, required=True)
    p.add_argument("--budget", type=int, default=60_000)
    p.add_argument("--restarts", type=int, default=6)
    p.set_defaults(fn=_cmd_sweep)

    p = sub.add_parser("play", help="Maker-Breaker Hamiltonicity game")
    common(p)
    p.add_argument("--bias", default="1:1", help='"m:b" or just "b"')
    p.add_argument("--maker", choices=["dirac", "random", "minimax"], default="dirac")
    p.add_argument(
        "--breaker",
        choices=["potential", "random", "minimax", "greedy-block"],
        default="greedy-block",
    )
    p.add_argument("--beta", type=float, default=1.0)
    p.add_argument("--family", default=None, help="JSON file of explicit winning sets")
    p.add_argument("--budget", type=int, default=100_000)
    p.add_argument("--transcript", default=None)
    p.set_defaults(fn=_cmd_play)

    p = sub.add_parser("oracle", help="exact Hamiltonicity decision (n <= 20)")
    common(p)
    p.add_argument("--path", nargs=2, type=int, metavar=("U", "V"))
    p.set_defaults(fn=_cmd_oracle)

    p = sub.add_parser("serve", help="local game session service for the UI")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8123)
    p.add_argument("--persist", default=None, help="append-only JSONL directory")
    p.add_argument("--seed", type=int, default=None)
    p.set_defaults(fn=_cmd_serve)
    return top


def run_command(argv) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    try:
        return args.fn(args)
    except DOMAIN_ERRORS as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def main() -> None:
    sys.exit(run_command(sys.argv[1:]))


if __name__ == "__main__":
    main()
