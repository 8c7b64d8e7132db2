"""Command-line front end.

Exit codes are uniform across subcommands: 0 success, 1 verification
failure, 2 invalid input, 3 guard or budget exceeded.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .composition import (
    compose,
    composition_metadata,
    count_distinct_profits,
    count_distinct_weights,
    index_labels,
)
from .core import (
    Error,
    GuardError,
    Index,
    InvariantError,
    KnapsackInstance,
    RestrictedSubsetSumInstance,
    SchemaError,
    SubsetSumInstance,
    X3CInstance,
)
from .generators import SplitMix64, gen_knapsack, gen_rss, gen_x3c
from .kernel import group, kernelize_with_report, solve_grouped
from .reductions import subset_sum_to_knapsack, x3c_to_rss
from .serialize import dump_instance, instance_to_obj, load_instance
from .solvers import pick_oracle, solve_brute_force, solve_dp_by_weight, solve_meet_in_middle

__all__ = ["main", "verify_compose"]

_VERIFY_SCALES = {(2, 1), (4, 1), (8, 1), (2, 2), (4, 2)}


def _emit(obj: dict, out: str | None) -> None:
    text = json.dumps(obj, indent=2)
    if out:
        Path(out).write_text(text + "\n", encoding="utf-8")
    else:
        print(text)


def _cmd_gen(args) -> int:
    if args.kind == "knapsack":
        inst = gen_knapsack(args.items, args.w_distinct, args.p_distinct, args.max_value, args.seed)
    elif args.kind == "x3c":
        inst = gen_x3c(args.n, args.seed, args.yes)
    else:
        inst = gen_rss(args.n, args.seed, args.yes)
    print(f"seed={args.seed}", file=sys.stderr)
    _emit(instance_to_obj(inst), args.out)
    return 0


def _cmd_reduce(args) -> int:
    inst = load_instance(args.input)
    if args.transform == "x3c-to-rss":
        if not isinstance(inst, X3CInstance):
            raise SchemaError("schema.kind", f"{args.input}: expected an x3c instance")
        out = x3c_to_rss(inst)
    else:
        if not isinstance(inst, SubsetSumInstance):
            raise SchemaError("schema.kind", f"{args.input}: expected a subsetsum instance")
        out = subset_sum_to_knapsack(inst)
    _emit(instance_to_obj(out), args.out)
    return 0


def _cmd_compose(args) -> int:
    inputs = []
    for path in args.inputs:
        try:
            inst = load_instance(path)
        except (SchemaError, InvariantError) as exc:
            raise type(exc)(exc.code, f"{path}: {exc}") from exc
        if not isinstance(inst, RestrictedSubsetSumInstance):
            raise SchemaError("schema.kind", f"{path}: expected an rss instance")
        inputs.append(inst)
    composed = compose(inputs)
    dump_instance(composed.knapsack, args.out, strip_labels=args.strip_labels)
    meta = composition_metadata(composed)
    meta["inputs"] = len(inputs)
    sidecar = Path(args.out).with_suffix(".meta.json")
    sidecar.write_text(json.dumps(meta, indent=2) + "\n", encoding="utf-8")
    print(f"w#={count_distinct_weights(composed.knapsack)}")
    print(f"p#={count_distinct_profits(composed.knapsack)}")
    return 0


def _cmd_kernelize(args) -> int:
    inst = load_instance(args.input)
    if not isinstance(inst, KnapsackInstance):
        raise SchemaError("schema.kind", f"{args.input}: expected a knapsack instance")
    out, report = kernelize_with_report(inst)
    if args.out:
        dump_instance(out, args.out, strip_labels=args.strip_labels)
        if args.report:
            print(json.dumps(report))
    else:
        _emit(instance_to_obj(out, strip_labels=args.strip_labels), None)
        if args.report:
            print(json.dumps(report), file=sys.stderr)
    return 0


def _cmd_solve(args) -> int:
    inst = load_instance(args.input)
    if not isinstance(inst, KnapsackInstance):
        raise SchemaError("schema.kind", f"{args.input}: expected a knapsack instance")
    if args.method == "grouped-bb":
        result = solve_grouped(group(inst))
    else:
        solver = {
            "brute": solve_brute_force,
            "mim": solve_meet_in_middle,
            "dp": solve_dp_by_weight,
        }[args.method]
        result = solver(inst)
    print("feasible" if result.feasible else "infeasible")
    if result.feasible:
        print(f"weight={result.achieved_weight} profit={result.achieved_profit}")
        if args.witness:
            if result.chosen is not None:
                print("chosen=" + " ".join(str(i) for i in sorted(result.chosen)))
            else:
                print("assignment=" + " ".join(str(x) for x in result.assignment))
    return 0


def verify_compose(t: int, n: int, trials: int, seed: int, log=print):
    """Compose planted yes/no patterns and check the exact oracle agrees with
    the OR of the labels.

    The all-no pattern and every single-yes pattern run unconditionally;
    further random patterns are drawn until ``trials`` rows ran.  Returns
    ``(ok, rows, failures)`` where each row is (pattern, oracle, verdict,
    expected) and failures pair failing patterns with their inputs.
    """
    if (t, n) not in _VERIFY_SCALES:
        raise GuardError(
            "verify.scale",
            f"(t={t}, n={n}) outside the oracle-checked scales {sorted(_VERIFY_SCALES)}",
        )
    rng = SplitMix64(seed)
    patterns = [tuple([False] * t)]
    for i in range(t):
        patterns.append(tuple(j == i for j in range(t)))
    while len(patterns) < trials:
        patterns.append(tuple(rng.randrange(2) == 1 for _ in range(t)))

    rows = []
    failures = []
    log(f"pattern{' ' * max(1, t - 4)}oracle verdict expected status")
    for pattern in patterns:
        inputs = [gen_rss(n, rng.randrange(2**32), yes) for yes in pattern]
        composed = compose(inputs)
        name, oracle = pick_oracle(composed.knapsack)
        result = oracle(composed.knapsack)
        expected = any(pattern)
        ok = result.feasible == expected
        if ok and result.feasible and name == "brute":
            # the maximal witness must spell out the index of a solved input
            chosen_index_items = frozenset(
                composed.knapsack.items[i].label
                for i in result.chosen
                if isinstance(composed.knapsack.items[i].label, Index)
            )
            solved = [
                i
                for i in range(t)
                if chosen_index_items == index_labels(i, composed.constants.lg_t)
            ]
            ok = len(solved) == 1 and pattern[solved[0]]
        bits = "".join("1" if b else "0" for b in pattern)
        status = "pass" if ok else "FAIL"
        log(f"{bits:<{max(7, t)}} {name:<6} {str(result.feasible):<7} {str(expected):<8} {status}")
        rows.append((pattern, name, result.feasible, expected))
        if not ok:
            failures.append((pattern, inputs))
    return not failures, rows, failures


def _cmd_verify(args) -> int:
    ok, rows, failures = verify_compose(args.t, args.n, args.trials, args.seed)
    if ok:
        print(f"all {len(rows)} patterns verified")
        return 0
    for k, (pattern, inputs) in enumerate(failures):
        for idx, inst in enumerate(inputs):
            path = Path(f"compose-counterexample-{k}-{idx}.json")
            dump_instance(inst, path)
            print(f"counterexample input written: {path}", file=sys.stderr)
    return 1


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fewweights",
        description="exact workbench for knapsack instances with few distinct weights/profits",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_gen = sub.add_parser("gen", help="generate seeded instances with known answers")
    gen_sub = p_gen.add_subparsers(dest="kind", required=True)
    for kind in ("x3c", "rss"):
        pk = gen_sub.add_parser(kind)
        pk.add_argument("--n", type=int, required=True)
        pk.add_argument("--seed", type=int, default=0)
        flag = pk.add_mutually_exclusive_group(required=True)
        flag.add_argument("--yes", action="store_true")
        flag.add_argument("--no", dest="yes", action="store_false")
        pk.add_argument("--out")
        pk.set_defaults(func=_cmd_gen)
    pk = gen_sub.add_parser("knapsack")
    pk.add_argument("--items", type=int, required=True)
    pk.add_argument("--w-distinct", type=int, required=True)
    pk.add_argument("--p-distinct", type=int, required=True)
    pk.add_argument("--max-value", type=int, required=True)
    pk.add_argument("--seed", type=int, default=0)
    pk.add_argument("--out")
    pk.set_defaults(func=_cmd_gen)

    p_red = sub.add_parser("reduce", help="problem-to-problem transformations")
    p_red.add_argument("transform", choices=["x3c-to-rss", "subset-sum-to-knapsack"])
    p_red.add_argument("input")
    p_red.add_argument("--out")
    p_red.set_defaults(func=_cmd_reduce)

    p_comp = sub.add_parser("compose", help="merge rss instances into one knapsack instance")
    p_comp.add_argument("inputs", nargs="+")
    p_comp.add_argument("--out", required=True)
    p_comp.add_argument("--strip-labels", action="store_true")
    p_comp.set_defaults(func=_cmd_compose)

    p_ker = sub.add_parser("kernelize", help="shrink an instance to size poly(w# * p#)")
    p_ker.add_argument("input")
    p_ker.add_argument("--out")
    p_ker.add_argument("--report", action="store_true")
    p_ker.add_argument("--strip-labels", action="store_true")
    p_ker.set_defaults(func=_cmd_kernelize)

    p_sol = sub.add_parser("solve", help="exact oracle solvers")
    p_sol.add_argument("input")
    p_sol.add_argument("--method", choices=["brute", "mim", "dp", "grouped-bb"], default="brute")
    p_sol.add_argument("--witness", action="store_true")
    p_sol.set_defaults(func=_cmd_solve)

    p_ver = sub.add_parser("verify", help="end-to-end verification harnesses")
    ver_sub = p_ver.add_subparsers(dest="check", required=True)
    pv = ver_sub.add_parser("compose")
    pv.add_argument("--t", type=int, required=True)
    pv.add_argument("--n", type=int, required=True)
    pv.add_argument("--trials", type=int, default=0)
    pv.add_argument("--seed", type=int, default=0)
    pv.set_defaults(func=_cmd_verify)

    return parser


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (SchemaError, InvariantError) as exc:
        print(f"error[{exc.code}]: {exc}", file=sys.stderr)
        return 2
    except GuardError as exc:
        print(f"guard[{exc.code}]: {exc}", file=sys.stderr)
        return 3
    except Error as exc:  # pragma: no cover - future error classes
        print(f"error[{exc.code}]: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
