"""Command-line interface.

Exit status: 0 success, 2 invalid input, 3 a guarantee was violated.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from . import __version__
from .audit import audit_bounds
from .engine import (
    EDGE_PEEL,
    STAR_PEEL,
    embed_tree,
    filter_rich_points,
    pack_pairs,
    pack_stars,
    packing_to_dot,
    star_tree,
)
from .oracle import OracleBudget, OracleBudgetExceeded, enumerate_embeddings, max_disjoint_packing
from .space import DistanceSpace, SpaceError, resolve_points, space_from_json
from .surjectivity import (
    DEFAULT_EXACT_CAP,
    DIAGONAL,
    DISTINCT,
    estimate_k,
    exact_k,
    threshold_csv,
    threshold_rows,
)
from .tree import (
    StarIndicator,
    StarSpec,
    TreeError,
    enumerate_trees,
    leaf_peel,
    stringiness,
    tree_from_json,
    tree_to_dot,
)

EXIT_OK = 0
EXIT_INVALID = 2
EXIT_VIOLATION = 3


class InputError(Exception):
    pass


def _load(source: str, what: str):
    """Parse inline JSON, or read JSON from a file path."""
    text = source
    if not source.lstrip().startswith(("{", "[")):
        if not os.path.exists(source):
            raise InputError(f"{what} file not found: {source}")
        try:
            with open(source) as fh:
                text = fh.read()
        except OSError as exc:
            raise InputError(f"cannot read {what} file {source}: {exc}") from exc
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"malformed {what} JSON: {exc}") from exc


def _space(args) -> DistanceSpace:
    if not args.space:
        raise InputError("--space is required")
    return space_from_json(_load(args.space, "space"))


def _subset(args, space: DistanceSpace) -> list[int]:
    if not getattr(args, "subset", None):
        return list(range(space.size))
    data = _load(args.subset, "subset")
    if not isinstance(data, list):
        raise InputError("subset JSON must be a list of point ids or coordinate tuples")
    return resolve_points(space, data)


def _tree(args):
    if not args.tree:
        raise InputError("--tree is required")
    return tree_from_json(_load(args.tree, "tree"))


def _convention(args) -> str:
    return DIAGONAL if getattr(args, "diagonal_convention", False) else DISTINCT


def _k(args, space, weights=None) -> tuple[int | None, bool]:
    """Threshold for bound reports and whether it is advisory."""
    if getattr(args, "assume_k", None) is not None:
        return args.assume_k, True
    if getattr(args, "exact_k", False):
        return exact_k(space, args.max_points, _convention(args), alphabet=weights).exact_k, False
    return None, False


def _emit(obj, out) -> None:
    out.write(json.dumps(obj, sort_keys=True) + "\n")


# ---------------------------------------------------------------- commands


def cmd_stringiness(args, out):
    source = args.graph or args.tree
    if not source:
        raise InputError("--graph (or --tree) is required")
    g = _load(source, "graph")
    if not isinstance(g, dict) or "vertices" not in g or "edges" not in g:
        raise InputError("graph JSON needs 'vertices' and 'edges'")
    _emit(stringiness(g["vertices"], [tuple(e) for e in g["edges"]]), out)


def cmd_peel(args, out):
    tree = _tree(args)
    step = leaf_peel(tree)
    if isinstance(step, StarIndicator):
        _emit({"star": True, "center": step.center, "spec": step.spec.to_json()}, out)
    elif args.format == "dot":
        out.write(tree_to_dot(step.remainder, "remainder"))
    else:
        _emit({"star": False, **step.to_json()}, out)


def _packing_out(args, out, space, tree, res):
    if args.format == "dot":
        out.write(packing_to_dot(space, tree, res))
    else:
        _emit(res.to_json(), out)


def cmd_pack_pairs(args, out):
    space = _space(args)
    res = pack_pairs(space, _subset(args, space), args.t)
    _packing_out(args, out, space, star_tree(StarSpec(((args.t, 1),))), res)


def cmd_pack_stars(args, out):
    space = _space(args)
    raw = _load(args.star, "star")
    try:
        spec = StarSpec(tuple(sorted((int(t), int(m)) for t, m in raw)))
    except (TypeError, ValueError) as exc:
        raise InputError(f"star must be a list of [t, m] pairs: {exc}") from exc
    res = pack_stars(space, _subset(args, space), spec)
    _packing_out(args, out, space, star_tree(spec), res)


def cmd_filter(args, out):
    space = _space(args)
    rich, poor = filter_rich_points(space, _subset(args, space), args.t, args.s)
    _emit({"rich": rich, "poor": poor}, out)


def cmd_embed(args, out):
    space = _space(args)
    tree = _tree(args)
    k, advisory = _k(args, space)
    res = embed_tree(space, _subset(args, space), tree, args.strategy, k=k, advisory=advisory)
    _packing_out(args, out, space, tree, res)


def cmd_exact_k(args, out):
    space = _space(args)
    _emit(exact_k(space, args.max_points, _convention(args)).to_json(), out)


def cmd_estimate_k(args, out):
    space = _space(args)
    _emit(estimate_k(space, args.trials, args.seed, _convention(args)).to_json(), out)


def _int_list(text: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError as exc:
        raise InputError(f"expected a comma-separated integer list, got {text!r}") from exc


def cmd_ir_table(args, out):
    if args.pairs:
        pairs = []
        for item in args.pairs.split(","):
            q, _, dim = item.partition("x")
            try:
                pairs.append((int(q), int(dim)))
            except ValueError as exc:
                raise InputError(f"pairs must look like 3x2,5x2; got {item!r}") from exc
    else:
        pairs = [(q, d) for q in _int_list(args.q) for d in _int_list(args.dim)]
    rows = threshold_rows(pairs, args.max_points, args.trials, args.seed, convention=_convention(args))
    if args.format == "json":
        _emit(
            [
                {"q": r.q, "dim": r.dim, "K": r.k, "q_pow": round(r.q_pow, 6), "ratio": round(r.ratio, 6), "method": r.method}
                for r in rows
            ],
            out,
        )
    else:
        out.write(threshold_csv(rows))


def cmd_oracle(args, out):
    space = _space(args)
    tree = _tree(args)
    E = _subset(args, space)
    budget = OracleBudget(args.max_points, args.max_edges, args.node_limit)
    embs = enumerate_embeddings(space, E, tree, budget)
    size, witness = max_disjoint_packing(space, E, tree, budget)
    _emit(
        {
            "embedding_count": len(embs),
            "max_packing": size,
            "witness": [e.to_json() for e in witness],
        },
        out,
    )


def cmd_verify_bounds(args, out):
    space = _space(args)
    pool = _subset(args, space) if args.subset else None
    k = args.assume_k
    rep = audit_bounds(
        space,
        args.instances,
        seed=args.seed,
        max_edges=args.max_edges,
        pool=pool,
        k=k,
        weight_k=args.weight_k,
        cap=args.max_points,
    )
    payload = rep.to_json()
    payload["K"] = k if k is not None else ("per-weight" if args.weight_k else exact_k(space, args.max_points).exact_k)
    _emit(payload, out)
    return EXIT_OK if rep.ok else EXIT_VIOLATION


def cmd_enumerate_trees(args, out):
    trees = enumerate_trees(args.edges)
    if args.format == "dot":
        for i, t in enumerate(trees):
            out.write(tree_to_dot(t, f"T{i}"))
    else:
        _emit([t.to_json() for t in trees], out)


# ---------------------------------------------------------------- parser


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="treepack", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, fn, help_, *, space=False, tree=False, subset=False, fmt=("json",)):
        sp = sub.add_parser(name, help=help_)
        sp.set_defaults(fn=fn)
        if space:
            sp.add_argument("--space", required=True, help="space JSON (inline or file)")
        if tree:
            sp.add_argument("--tree", required=name != "stringiness", help="tree JSON (inline or file)")
        if subset:
            sp.add_argument("--subset", help="point-set JSON (inline or file); default: whole space")
        sp.add_argument("--format", choices=fmt, default=fmt[0])
        sp.add_argument("--seed", type=int, default=0)
        sp.add_argument("--max-points", type=int, default=DEFAULT_EXACT_CAP, help="cap for exact/oracle search")
        sp.add_argument("--diagonal-convention", action="store_true", help="let d(x,x) count towards realised distances")
        return sp

    sp = add("stringiness", cmd_stringiness, "stringiness of a connected graph", tree=True)
    sp.add_argument("--graph", help="graph JSON {vertices, edges}")

    add("peel", cmd_peel, "one leaf-peeling step", tree=True, fmt=("json", "dot"))

    sp = add("pack-pairs", cmd_pack_pairs, "greedy maximal pair packing", space=True, subset=True, fmt=("json", "dot"))
    sp.add_argument("--t", type=int, required=True)

    sp = add("pack-stars", cmd_pack_stars, "greedy maximal star packing", space=True, subset=True, fmt=("json", "dot"))
    sp.add_argument("--star", required=True, help="weight multiset as [[t, m], ...]")

    sp = add("filter", cmd_filter, "split points by degree in the distance-t graph", space=True, subset=True)
    sp.add_argument("--t", type=int, required=True)
    sp.add_argument("--s", type=int, required=True)

    sp = add("embed", cmd_embed, "disjoint tree embeddings", space=True, tree=True, subset=True, fmt=("json", "dot"))
    sp.add_argument("--strategy", choices=(STAR_PEEL, EDGE_PEEL), default=STAR_PEEL)
    kg = sp.add_mutually_exclusive_group()
    kg.add_argument("--exact-k", action="store_true", help="attach a bound report with the exact threshold")
    kg.add_argument("--assume-k", type=int, help="attach an advisory bound report for this K")

    add("exact-k", cmd_exact_k, "exact surjectivity threshold", space=True)

    sp = add("estimate-k", cmd_estimate_k, "randomized lower bound on the threshold", space=True)
    sp.add_argument("--trials", type=int, default=1000)

    sp = add("ir-table", cmd_ir_table, "thresholds of F_q^dim against q^((dim+1)/2)", fmt=("csv", "json"))
    sp.add_argument("--q", default="3,5,7")
    sp.add_argument("--dim", default="2")
    sp.add_argument("--pairs", help="explicit list such as 3x2,5x2,7x2,3x3 (overrides --q/--dim)")
    sp.add_argument("--trials", type=int, default=1000)

    sp = add("oracle", cmd_oracle, "brute-force embeddings and maximum packing", space=True, tree=True, subset=True)
    sp.set_defaults(max_points=12)
    sp.add_argument("--max-edges", type=int, default=4)
    sp.add_argument("--node-limit", type=int, default=2_000_000)

    sp = add("verify-bounds", cmd_verify_bounds, "audit every guarantee on random instances", space=True, subset=True)
    sp.add_argument("--instances", type=int, default=100)
    sp.add_argument("--max-edges", type=int, default=3)
    sp.add_argument("--assume-k", type=int)
    sp.add_argument("--exact-k", action="store_true", help="use the exact threshold (default)")
    sp.add_argument("--weight-k", action="store_true", help="threshold over the distances each instance uses")

    sp = add("enumerate-trees", cmd_enumerate_trees, "all unlabelled trees with n edges", fmt=("json", "dot"))
    sp.add_argument("--edges", type=int, required=True)
    return p


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INVALID if exc.code else EXIT_OK
    try:
        status = args.fn(args, out)
    except (InputError, SpaceError, TreeError, OracleBudgetExceeded, ValueError) as exc:
        sys.stderr.write(f"treepack {args.command}: error: {exc}\n")
        return EXIT_INVALID
    return EXIT_OK if status is None else status


if __name__ == "__main__":
    sys.exit(main())
