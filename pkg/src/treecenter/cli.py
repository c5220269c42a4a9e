"""Command-line front end.

    treecenter solve --input t.tree --p 2 [--algorithm parametric]
    treecenter feasible --input t.tree --p 2 --alpha 7/2
    treecenter gen --n 100 --seed 1 [--balanced]
    treecenter bench --sizes 1000:4,10000:4
    treecenter validate --input t.tree

Exit status: 0 success, 1 infeasible or invalid instance, 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import statistics
import sys
import time
from dataclasses import dataclass
from fractions import Fraction

from .feasibility import feasibility_test, preprocess
from .generate import generate
from .optimizer import Solution, solve_candidate, solve_parametric
from .oracle import exhaustive_solve
from .tree import TreeFormatError, parse_number, parse_tree

OK, FAILED, USAGE = 0, 1, 2
CANDIDATE_BENCH_LIMIT = 3000  # pairwise candidate lists grow quadratically


@dataclass
class CliConfig:
    command: str
    input: str | None = None
    p: int | None = None
    alpha: Fraction | None = None
    algorithm: str = "candidate"
    tree_path: str = "balanced"
    mode: str = "exact"
    seed: int = 0
    n: int | None = None
    output: str = "json"
    balanced: bool = False
    sizes: tuple = ((1000, 4), (10000, 4))
    seeds: int = 5


class UsageError(Exception):
    pass


def _positive_int(text: str) -> int:
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError("must be a positive integer")
    return v


def _rational_arg(text: str) -> Fraction:
    try:
        return parse_number(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _sizes_arg(text: str) -> tuple:
    out = []
    try:
        for item in text.split(","):
            n, p = item.split(":")
            out.append((int(n), int(p)))
    except ValueError:
        raise argparse.ArgumentTypeError("sizes look like 1000:4,10000:8") from None
    return tuple(out)


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="treecenter", description="Weighted p-center on trees.")
    sub = ap.add_subparsers(dest="command", required=True)

    def common(sp, need_input=True):
        if need_input:
            sp.add_argument("--input", required=True, help="instance document")
        sp.add_argument("--output", choices=("json", "text"), default="json")

    def solving(sp):
        sp.add_argument("--p", type=_positive_int, required=True)
        sp.add_argument("--tree-path", choices=("balanced", "std"), default="balanced")
        sp.add_argument("--mode", choices=("exact", "float"), default="exact")

    sp = sub.add_parser("solve", help="optimal cost and placement")
    common(sp)
    solving(sp)
    sp.add_argument("--algorithm", choices=("candidate", "parametric", "oracle"), default="candidate")

    sp = sub.add_parser("feasible", help="can p centers reach cost alpha?")
    common(sp)
    solving(sp)
    sp.add_argument("--alpha", type=_rational_arg, required=True)

    sp = sub.add_parser("gen", help="seeded random instance")
    sp.add_argument("--n", type=_positive_int, required=True)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--balanced", action="store_true", help="complete binary tree")

    sp = sub.add_parser("bench", help="timing table")
    sp.add_argument("--sizes", type=_sizes_arg, default=CliConfig.sizes)
    sp.add_argument("--seeds", type=_positive_int, default=5)
    sp.add_argument("--balanced", action="store_true")
    sp.add_argument("--mode", choices=("exact", "float"), default="float")
    sp.add_argument("--output", choices=("json", "text"), default="text")

    sp = sub.add_parser("validate", help="check an instance document")
    common(sp)
    return ap


def config_from_args(ns: argparse.Namespace) -> CliConfig:
    fields = {k: v for k, v in vars(ns).items() if v is not None}
    return CliConfig(**fields)


def _read(path: str):
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None


def _solution_text(sol: Solution, labels) -> str:
    d = sol.to_dict(labels)
    a = d["alpha"]
    lines = [f"alpha {a['num']}/{a['den']} ({d['alpha_float']:.6g})"]
    for c in d["centers"]:
        o = c["offset_from_child"]
        lines.append(f"center on {c['edge'][0]}-{c['edge'][1]} at {o['num']}/{o['den']} from {c['edge'][0]}")
    lines.append(f"feasibility calls {sol.feasibility_calls}, candidates {sol.candidates}")
    return "\n".join(lines)


def _emit(doc, text: str, cfg: CliConfig) -> str:
    return json.dumps(doc) if cfg.output == "json" else text


def run(cfg: CliConfig) -> tuple[int, str]:
    """Execute one command; returns (exit status, output document)."""
    if cfg.command == "gen":
        return OK, generate(cfg.n, cfg.seed, cfg.balanced).to_text().rstrip("\n")
    if cfg.command == "bench":
        rows = bench_suite(cfg.sizes, seeds=cfg.seeds, balanced=cfg.balanced, mode=cfg.mode)
        if cfg.output == "json":
            return OK, json.dumps(rows)
        return OK, _table(rows)

    text = _read(cfg.input)
    if cfg.command == "validate":
        try:
            t = parse_tree(text)
        except TreeFormatError as exc:
            return FAILED, _emit({"valid": False, "problems": str(exc).split("; ")}, f"invalid: {exc}", cfg)
        return OK, _emit({"valid": True, "n": t.n}, f"valid tree with {t.n} vertices", cfg)

    try:
        t = parse_tree(text)
    except TreeFormatError as exc:
        return FAILED, f"invalid instance: {exc}"
    pre = preprocess(t, mode=cfg.mode, tree_path=cfg.tree_path)
    labels = t.labels
    if cfg.command == "feasible":
        alpha = float(cfg.alpha) if cfg.mode == "float" else cfg.alpha
        res = feasibility_test(pre, alpha, cfg.p)
        if not res.feasible:
            return FAILED, _emit({"feasible": False}, "infeasible", cfg)
        sol = Solution(alpha, [pre.tree.to_original(x) for x in res.centers])
        centers = sol.to_dict(labels)["centers"]
        return OK, _emit({"feasible": True, "centers": centers},
                         "feasible\n" + "\n".join(_solution_text(sol, labels).splitlines()[1:-1]), cfg)
    if cfg.command == "solve":
        if cfg.algorithm == "candidate":
            sol = solve_candidate(pre.network, cfg.p, pre)
        elif cfg.algorithm == "parametric":
            sol = solve_parametric(pre.network, cfg.p, pre)
        else:
            try:
                sol = exhaustive_solve(t, cfg.p)
            except ValueError as exc:
                return FAILED, str(exc)
        return OK, _emit(sol.to_dict(labels), _solution_text(sol, labels), cfg)
    raise UsageError(f"unknown command {cfg.command!r}")


def bench_suite(sizes, seeds: int = 5, balanced: bool = False, mode: str = "float") -> list[dict]:
    """Median timings per (n, p) over ``seeds`` generated instances."""
    rows = []
    for n, p in sizes:
        samples = []
        for seed in range(seeds):
            t = generate(n, seed, balanced)
            if t.positive_count() == 0:
                continue
            t0 = time.perf_counter()
            pre = preprocess(t, mode=mode)
            t1 = time.perf_counter()
            par = solve_parametric(t, p, pre)
            t2 = time.perf_counter()
            feas_ms = []
            for alpha in (par.alpha_star, par.alpha_star * 0.99, par.alpha_star * 1.01):
                s = time.perf_counter()
                feasibility_test(pre, alpha, p)
                feas_ms.append((time.perf_counter() - s) * 1000)
            cand_calls = None
            if n <= CANDIDATE_BENCH_LIMIT:
                cand_calls = solve_candidate(t, p, pre).feasibility_calls
            samples.append({
                "preprocessing_ms": (t1 - t0) * 1000,
                "feasibility_ms": statistics.median(feas_ms),
                "solve_ms": (t2 - t1) * 1000,
                "feasibility_calls": par.feasibility_calls,
                "candidate_calls": cand_calls,
            })
        row = {"n": n, "p": p}
        for key in ("preprocessing_ms", "feasibility_ms", "solve_ms", "feasibility_calls"):
            row[key] = statistics.median(s[key] for s in samples)
        calls = [s["candidate_calls"] for s in samples if s["candidate_calls"] is not None]
        row["candidate_calls"] = statistics.median(calls) if calls else None
        rows.append(row)
    return rows


def _table(rows: list[dict]) -> str:
    keys = ["n", "p", "preprocessing_ms", "feasibility_ms", "solve_ms", "feasibility_calls",
            "candidate_calls"]
    out = ["\t".join(keys)]
    for r in rows:
        out.append("\t".join(f"{r[k]:.3f}" if isinstance(r[k], float) else str(r[k]) for k in keys))
    return "\n".join(out)


def main(argv=None) -> int:
    parser = build_parser()
    ns = parser.parse_args(argv)
    cfg = config_from_args(ns)
    try:
        status, out = run(cfg)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"error: {exc}", file=sys.stderr)
        return USAGE
    print(out)
    return status


if __name__ == "__main__":
    sys.exit(main())
