"""Command-line front end.

Exit codes: 0 success, 1 validation failure, 2 input error, 3 budget or
resampling cap exceeded.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

import numpy as np

from . import instance as inst_mod
from .bench import medians_by_target, run_bench, to_csv
from .coloring import KFoldColoring, exact_chi_cf, expand_to_kfold, greedy_cf_coloring
from .collection import (
    ColoringCollection,
    binary_collection,
    build_log2_collection,
    bucket_decomposition,
    is_cf_collection,
)
from .encoder import (
    FieldMatrix,
    decode,
    encode,
    indicator_matrix,
    mds_matrix,
    satisfies_receiver,
    stack,
    validate_encoder,
)
from .errors import BudgetExceeded, InvalidInputError, ResampleCapExceeded
from .localcf import EssentialSelection, min_delta_for_coloring
from .oracle import certify_chain

EXACT_COLORING_MAX_M = 10


def _resolve_seed(seed):
    if seed is None:
        seed = int(np.random.SeedSequence().entropy % 2**32)
    return seed


def _emit(obj, out=None):
    text = json.dumps(obj, indent=None if out else 2)
    if out:
        Path(out).write_text(text + "\n")
    else:
        print(text)


def _load_json(path):
    try:
        return json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise InvalidInputError(f"malformed JSON in {path}: {exc}") from exc


def cmd_gen(args):
    if args.example:
        inst = inst_mod.NAMED[args.example]()
        header = {"source": f"example:{args.example}"}
    elif args.complete2 is not None:
        inst = inst_mod.complete_two_uniform(args.complete2)
        header = {"source": f"complete2:{args.complete2}"}
    else:
        missing = [f for f in ("m", "n", "min_size", "max_size") if getattr(args, f) is None]
        if missing:
            raise InvalidInputError(
                "random generation needs --m --n --min-size --max-size (missing: "
                + ", ".join("--" + f.replace("_", "-") for f in missing) + ")"
            )
        seed = _resolve_seed(args.seed)
        inst = inst_mod.random_instance(args.m, args.n, (args.min_size, args.max_size), seed)
        header = {"source": "random", "seed": seed}
    print(json.dumps(header), file=sys.stderr)
    if args.out:
        inst_mod.save(inst, args.out)
    else:
        print(json.dumps(inst.to_dict()))
    return 0


def cmd_stats(args):
    inst = inst_mod.load(args.instance)
    prof = inst_mod.gamma(inst)
    sizes: dict[int, int] = {}
    for e in inst.edges:
        sizes[len(e)] = sizes.get(len(e), 0) + 1
    out = {
        "m": inst.m,
        "n": inst.n,
        "gamma": prof.gamma,
        "edge_size_histogram": {str(s): c for s, c in sorted(sizes.items())},
        "kappa": prof.kappa,
    }
    if prof.kappa is not None:
        parts = bucket_decomposition(inst, prof.gamma)
        out["large_edges"] = len(parts.large)
        out["buckets"] = [{"k_i": ki, "edges": len(rs)} for ki, rs in parts.buckets]
    else:
        out["buckets"] = None
    _emit(out)
    return 0


def _coloring_for(inst, k, how, seed):
    if how == "auto":
        how = "exact" if inst.m <= EXACT_COLORING_MAX_M else "greedy"
    if how == "exact":
        return exact_chi_cf(inst, k)[1]
    c = greedy_cf_coloring(inst, seed=seed)
    return c if k == 1 else expand_to_kfold(c, k)


def cmd_build_code(args):
    inst = inst_mod.load(args.instance)
    seed = _resolve_seed(args.seed)
    rng = np.random.default_rng(seed)
    sub_seed = int(rng.integers(2**31))
    k = args.k
    info: dict = {"strategy": args.strategy, "k": k, "seed": seed}
    artifact = None
    if args.strategy == "indicator":
        if args.coloring_file:
            c = KFoldColoring.from_dict(_load_json(args.coloring_file))
        else:
            c = _coloring_for(inst, k, args.coloring, sub_seed)
        G = indicator_matrix(c, q=args.q or 2)
        info["colors"] = c.L
        artifact = c.to_dict()
    elif args.strategy == "mds":
        if args.coloring_file:
            c = KFoldColoring.from_dict(_load_json(args.coloring_file))
        else:
            c = _coloring_for(inst, k, args.coloring, sub_seed)
        res = min_delta_for_coloring(c, inst)
        G = mds_matrix(c, res.D, inst, q=args.q)
        info.update(colors=c.L, essential=list(res.D), delta=res.delta, heuristic=res.heuristic)
        artifact = {"coloring": c.to_dict(), **EssentialSelection([res.D]).to_dict()}
    elif args.strategy == "log2-collection":
        b = build_log2_collection(inst, seed=sub_seed, c0=args.c0, prune=not args.no_prune)
        col = b.collection
        if k > 1:
            col = ColoringCollection([expand_to_kfold(c, k) for c in col])
        G = stack([indicator_matrix(c, q=args.q or 2) for c in col])
        info.update(
            gamma=b.gamma, total_colors=col.total_colors, attempts=b.attempts,
            fallback=b.fallback, unpruned_colors=b.unpruned_colors,
        )
        artifact = col.to_dict()
    else:  # binary
        col = binary_collection(inst.m)
        if k > 1:
            col = ColoringCollection([expand_to_kfold(c, k) for c in col])
        if not is_cf_collection(col, inst):
            raise InvalidInputError(
                "the binary collection is not conflict-free for this instance"
            )
        G = stack([indicator_matrix(c, q=args.q or 2) for c in col])
        info["total_colors"] = col.total_colors
        artifact = col.to_dict()
    report = validate_encoder(G, inst)
    info.update(rows=G.rows, q=G.q, valid=report.ok, failing=report.failing)
    if not report.ok:
        print(json.dumps(info), file=sys.stderr)
        return 1
    _emit(G.to_dict(), args.out)
    if args.coloring_out:
        _emit(artifact, args.coloring_out)
    print(json.dumps(info), file=sys.stderr if not args.out else sys.stdout)
    return 0


def cmd_verify(args):
    G = FieldMatrix.from_dict(_load_json(args.matrix))
    inst = inst_mod.load(args.instance)
    report = validate_encoder(G, inst)
    _emit(report.to_dict())
    return 0 if report.ok else 1


def cmd_decode_demo(args):
    G = FieldMatrix.from_dict(_load_json(args.matrix))
    inst = inst_mod.load(args.instance)
    seed = _resolve_seed(args.seed)
    rng = np.random.default_rng(seed)
    verdicts = [satisfies_receiver(G, inst, r) for r in range(inst.n)]
    ok = 0
    for _ in range(args.trials):
        x = rng.integers(0, G.q, size=(inst.m, G.k))
        y = encode(G, x.reshape(-1))
        for v in verdicts:
            if not v.satisfied:
                continue
            side = {i: x[i] for i in inst.side_information(v.r)}
            d, xd = decode(v, G, y, side, inst)
            ok += bool(np.array_equal(xd, x[d]))
    total = args.trials * inst.n
    out = {
        "seed": seed,
        "trials": args.trials,
        "receivers": inst.n,
        "round_trips": ok,
        "expected": total,
        "unsatisfied": [v.r for v in verdicts if not v.satisfied],
    }
    _emit(out)
    return 0 if ok == total else 1


def cmd_oracle(args):
    inst = inst_mod.load(args.instance)
    budgets = {}
    for key in ("chi", "alpha", "delta", "lambda", "l_star"):
        val = getattr(args, f"budget_{key}")
        if val is not None:
            budgets[key] = val
    rep = certify_chain(inst, args.k, budgets, q=args.q)
    _emit(rep.to_dict())
    if not rep.complete:
        return 3
    return 0 if rep.chain_ok else 1


def cmd_bench(args):
    seed = _resolve_seed(args.seed)
    seeds = [seed + i for i in range(args.seeds)]
    rows = run_bench(args.gammas, seeds, m=args.m, size_range=(args.min_size, args.max_size),
                     c0=args.c0, prune=not args.no_prune)
    text = to_csv(rows)
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    summary = {"seed": seed, "median_total_colors": medians_by_target(rows)}
    print(json.dumps(summary), file=sys.stderr)
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="picod", description="Pliable index codes from conflict-free colorings.")
    sub = p.add_subparsers(dest="command", required=True)

    g = sub.add_parser("gen", help="write an instance as JSON")
    src = g.add_mutually_exclusive_group()
    src.add_argument("--example", choices=sorted(inst_mod.NAMED))
    src.add_argument("--complete2", type=int, metavar="M")
    g.add_argument("--m", type=int)
    g.add_argument("--n", type=int)
    g.add_argument("--min-size", type=int)
    g.add_argument("--max-size", type=int)
    g.add_argument("--seed", type=int)
    g.add_argument("--out")
    g.set_defaults(func=cmd_gen)

    s = sub.add_parser("stats", help="intersection statistics of an instance")
    s.add_argument("instance")
    s.set_defaults(func=cmd_stats)

    b = sub.add_parser("build-code", help="construct and validate an encoder")
    b.add_argument("instance")
    b.add_argument("--strategy", choices=["indicator", "mds", "log2-collection", "binary"], default="indicator")
    b.add_argument("--k", type=int, default=1)
    b.add_argument("--q", type=int, help="prime field size")
    b.add_argument("--seed", type=int)
    b.add_argument("--coloring", choices=["auto", "exact", "greedy"], default="auto")
    b.add_argument("--coloring-file", help="use this coloring JSON instead of searching")
    b.add_argument("--c0", type=float, default=4.0, help="palette constant for large edges")
    b.add_argument("--no-prune", action="store_true", help="keep redundant collection members")
    b.add_argument("--out", help="matrix JSON path (stdout if omitted)")
    b.add_argument("--coloring-out", help="write the coloring or collection used")
    b.set_defaults(func=cmd_build_code)

    v = sub.add_parser("verify", help="per-receiver verdicts for a matrix")
    v.add_argument("matrix")
    v.add_argument("instance")
    v.set_defaults(func=cmd_verify)

    d = sub.add_parser("decode-demo", help="encode random messages and decode at every receiver")
    d.add_argument("matrix")
    d.add_argument("instance")
    d.add_argument("--seed", type=int)
    d.add_argument("--trials", type=int, default=1)
    d.set_defaults(func=cmd_decode_demo)

    o = sub.add_parser("oracle", help="brute-force parameter chain on a tiny instance")
    o.add_argument("instance")
    o.add_argument("--k", type=int, default=1)
    o.add_argument("--q", type=int, default=2)
    for key in ("chi", "alpha", "delta", "lambda", "l_star"):
        o.add_argument(f"--budget-{key.replace('_', '-')}", dest=f"budget_{key}", type=int)
    o.set_defaults(func=cmd_oracle)

    be = sub.add_parser("bench", help="CSV of Gamma against total colors")
    be.add_argument("--gammas", type=int, nargs="+", default=[8, 32, 128, 512])
    be.add_argument("--seeds", type=int, default=10, help="instances per Gamma")
    be.add_argument("--seed", type=int, help="first seed")
    be.add_argument("--m", type=int, default=48)
    be.add_argument("--min-size", type=int, default=2)
    be.add_argument("--max-size", type=int, default=8)
    be.add_argument("--c0", type=float, default=4.0)
    be.add_argument("--no-prune", action="store_true")
    be.add_argument("--out")
    be.set_defaults(func=cmd_bench)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except InvalidInputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (BudgetExceeded, ResampleCapExceeded) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
