"""Command-line entry point.

    edgeblocks blocks       --input g.json
    edgeblocks nested       --input g.json [--k K] [--strategy minimal]
    edgeblocks treecut      --input g.json [--k K] [--root R] --format dot
    edgeblocks verify       --input g.json [--separations seps.json]
    edgeblocks oracle-check --input g.json

Exit status: 0 all checks pass, 1 a verification failed (the report is still
written), 2 bad input or configuration, 3 internal invariant violated.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from dataclasses import dataclass
from pathlib import Path

from .blocks import block_hierarchy, block_pairs, k_blocks
from .distinguishers import DistinguisherFamily, build_nested_set, efficient_distinguishers, verify_nested_set
from .exceptions import EdgeBlocksError, InvariantError
from .generation import check_generation_equivalence
from .graph import Multigraph, read_graph, to_mask
from .mincut import DEFAULT_CAP, gomory_hu
from .oracles import brute_blocks, brute_efficient_distinguishers, brute_lambda_matrix
from .separations import CutSeparation
from .treecut import build_tree_cut, verify_k_block_decomposition
from .validation import check_level, check_multigraph, check_vertex

log = logging.getLogger("edgeblocks")

COMMANDS = ("blocks", "nested", "treecut", "verify", "oracle-check")
FORMATS = ("json", "dot", "text")

EXIT_OK, EXIT_FAILED, EXIT_INPUT, EXIT_INVARIANT = 0, 1, 2, 3


@dataclass(frozen=True)
class RunConfig:
    command: str
    input: Path
    k: int | None = None
    root: int = 0
    cap: int = DEFAULT_CAP
    format: str = "json"
    output: Path | None = None
    strategy: str = "greedy"
    separations: Path | None = None

    def __post_init__(self):
        if self.command not in COMMANDS:
            raise ValueError(f"unknown command {self.command!r}")
        if self.format not in FORMATS:
            raise ValueError(f"unknown format {self.format!r}")
        if self.format == "dot" and self.command != "treecut":
            raise ValueError("--format dot is only available for treecut")
        if self.k is not None:
            check_level(self.k)
        if self.cap < 1:
            raise ValueError("--cap must be positive")


@dataclass
class Outcome:
    ok: bool
    report: dict
    dot: str | None = None
    text: str | None = None


def _blocks(g: Multigraph, cfg: RunConfig) -> Outcome:
    h = block_hierarchy(g)
    levels = range(1, h.max_level + 1) if cfg.k is None else [cfg.k]
    per_k = {str(k): [sorted(b) for b in k_blocks(h, k)] for k in levels}
    report = {"vertices": g.n, "max_level": h.max_level, "hierarchy": h.to_dict(), "k_blocks": per_k}
    lines = [f"{k}-edge-blocks: " + " ".join(_fmt_set(g, b) for b in bs) for k, bs in per_k.items()]
    return Outcome(True, report, text="\n".join(lines))


def _nested(g: Multigraph, cfg: RunConfig) -> Outcome:
    family = DistinguisherFamily(g, cap=cfg.cap)
    result = build_nested_set(g, family, strategy=cfg.strategy)
    report = result.to_dict()
    members = result.members
    if cfg.k is not None:
        report["k"] = cfg.k
        report["members"] = [m.to_dict() for m in members if m.separation.order < cfg.k]
        members = tuple(m for m in members if m.separation.order < cfg.k)
    report["repairs"] = len(result.repairs)
    lines = [f"{_fmt_sep(g, m.separation)}  [{m.phase}]" for m in members]
    return Outcome(True, report, text="\n".join(lines))


def _treecut(g: Multigraph, cfg: RunConfig) -> Outcome:
    h = block_hierarchy(g)
    k = cfg.k if cfg.k is not None else h.max_level
    nested_set = build_nested_set(g, DistinguisherFamily(g, h, cap=cfg.cap), strategy=cfg.strategy)
    d = build_tree_cut(g, sorted(nested_set.below(k)), check_vertex(g, cfg.root))
    check = verify_k_block_decomposition(g, d, k, h)
    report = {"k": k, "root": cfg.root, "decomposition": d.to_dict(), "k_block_check": check.to_dict()}
    lines = [f"t{t} parent={d.parent[t]} part={_fmt_set(g, p)}" for t, p in enumerate(d.parts)]
    return Outcome(check.ok, report, dot=d.to_dot(), text="\n".join(lines))


def _read_separations(g: Multigraph, path: Path) -> list[CutSeparation]:
    try:
        doc = json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise ValueError(f"{path}: not valid JSON ({exc})") from None
    items = doc.get("members", doc) if isinstance(doc, dict) else doc
    seps = []
    for item in items:
        side = item["side"] if isinstance(item, dict) else item
        seps.append(CutSeparation.from_side(g, to_mask(check_vertex(g, v) for v in side)))
    return seps


def _verify(g: Multigraph, cfg: RunConfig) -> Outcome:
    h = block_hierarchy(g)
    if cfg.separations is not None:
        seps = _read_separations(g, cfg.separations)
    else:
        seps = sorted(build_nested_set(g, DistinguisherFamily(g, h, cap=cfg.cap), strategy=cfg.strategy).separations)
    nested_report = verify_nested_set(g, seps, h)
    report = {"separations": [s.to_dict() for s in sorted(set(seps))], "nested_set": nested_report.to_dict()}
    ok = nested_report.ok
    if nested_report.nested and nested_report.bonds:
        k_max = cfg.k
        equivalence = check_generation_equivalence(g, seps, k_max=k_max, hierarchy=h)
        report["generation"] = equivalence.to_dict()
        ok = ok and equivalence.ok
    lines = [f"{key}: {value}" for key, value in nested_report.to_dict().items() if isinstance(value, bool)]
    if "generation" in report:
        gen = report["generation"]
        lines.append(f"generates all cuts up to order {gen['k_max']}: {gen['generates_all_cuts']}")
    return Outcome(ok, report, text="\n".join(lines))


def oracle_agreement(g: Multigraph, cap: int = DEFAULT_CAP) -> dict:
    """Compare the flow-based results with the brute-force oracles."""
    tree = gomory_hu(g)
    h = block_hierarchy(g, tree)
    brute = brute_lambda_matrix(g)
    lam = [[u, v] for u in g.vertices for v in g.vertices if u < v and tree.connectivity(u, v) != brute[u][v]]
    blocks = [k for k in range(1, h.max_level + 1) if k_blocks(h, k) != brute_blocks(g, k, brute)]
    dist = []
    for pair in block_pairs(h):
        fast = {s.side for s in efficient_distinguishers(g, pair, cap)}
        if fast != set(brute_efficient_distinguishers(g, pair.first.vertices, pair.second.vertices)):
            dist.append(pair.to_dict())
    return {
        "ok": not (lam or blocks or dist),
        "lambda_mismatches": lam,
        "k_block_mismatches": blocks,
        "distinguisher_mismatches": dist,
    }


def _oracle(g: Multigraph, cfg: RunConfig) -> Outcome:
    report = oracle_agreement(g, cfg.cap)
    lines = [f"{key}: {value}" for key, value in report.items()]
    return Outcome(report["ok"], report, text="\n".join(lines))


HANDLERS = {"blocks": _blocks, "nested": _nested, "treecut": _treecut, "verify": _verify, "oracle-check": _oracle}


def _fmt_set(g: Multigraph, vertices) -> str:
    return "{" + ", ".join(g.label(v) for v in sorted(vertices)) + "}" if vertices else "∅"


def _fmt_sep(g: Multigraph, s: CutSeparation) -> str:
    return f"{_fmt_set(g, s.side)} | {_fmt_set(g, s.other)}  order={s.order}"


def render(outcome: Outcome, fmt: str) -> str:
    if fmt == "dot":
        return outcome.dot
    if fmt == "text":
        return outcome.text + "\n"
    return json.dumps(outcome.report, indent=2, ensure_ascii=False) + "\n"


def execute(cfg: RunConfig) -> int:
    try:
        g = check_multigraph(read_graph(cfg.input))
        outcome = HANDLERS[cfg.command](g, cfg)
        text = render(outcome, cfg.format)
        if cfg.output is None:
            sys.stdout.write(text)
        else:
            Path(cfg.output).write_text(text, encoding="utf-8")
    except InvariantError as exc:
        log.error("internal invariant violated: %s", exc)
        return EXIT_INVARIANT
    except (EdgeBlocksError, OSError, ValueError, KeyError, TypeError) as exc:
        log.error("%s", exc)
        return EXIT_INPUT
    return EXIT_OK if outcome.ok else EXIT_FAILED


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="edgeblocks", description="k-edge-blocks and their tree-cut decompositions")
    parser.add_argument("command", choices=COMMANDS)
    parser.add_argument("--input", required=True, type=Path, help="graph document (JSON)")
    parser.add_argument("--k", type=int, help="restrict to separations of order < k")
    parser.add_argument("--root", type=int, default=0, help="root vertex for treecut")
    parser.add_argument("--cap", type=int, default=DEFAULT_CAP, help="max minimum separations per block pair")
    parser.add_argument("--format", choices=FORMATS, default="json")
    parser.add_argument("--output", type=Path)
    parser.add_argument("--strategy", choices=("greedy", "minimal"), default="greedy")
    parser.add_argument("--separations", type=Path, help="verify: check this set instead of a computed one")
    parser.add_argument("-v", "--verbose", action="store_true")
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_INPUT
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING, format="%(levelname)s: %(message)s")
    try:
        cfg = RunConfig(
            command=args.command,
            input=args.input,
            k=args.k,
            root=args.root,
            cap=args.cap,
            format=args.format,
            output=args.output,
            strategy=args.strategy,
            separations=args.separations,
        )
    except (ValueError, EdgeBlocksError) as exc:
        log.error("%s", exc)
        return EXIT_INPUT
    return execute(cfg)
