"""Command-line interface: instance I/O, generators, and analyses.

Numbers in instance files are decimal strings or exact fraction strings
("p/q"); both parse to exact rationals, so no floats contaminate the exact
pipeline.  Single analyses emit human-readable tables (or JSON with --json);
sweeps emit CSV.

Exit codes: 0 success, 2 input/validation error, 3 size-guard exceeded.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
from fractions import Fraction
from typing import Optional

from .core import Box, DiscreteDist, Instance, InvalidDistributionError, Num, SizeGuardError
from . import adaptive, committing, evaluator, generators, reservation, simulator, twobox
from .policies import CommittingPolicy, Policy, WeitzmanPolicy

# Rational lower bound on 1 - 1/e, used for exact ratio checks.
ONE_MINUS_INV_E_LB = Fraction(6321205588, 10**10)


class InputError(ValueError):
    pass


def parse_numlit(x) -> Fraction:
    """Decimal string, fraction string "p/q", or JSON int -> exact Fraction."""
    if isinstance(x, bool):
        raise InputError(f"not a number: {x!r}")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, float):
        # JSON floats are tolerated but converted via their shortest repr.
        return Fraction(repr(x))
    if isinstance(x, str):
        try:
            return Fraction(x)
        except (ValueError, ZeroDivisionError) as e:
            raise InputError(f"bad number literal {x!r}: {e}") from None
    raise InputError(f"not a number: {x!r}")


def fmt_num(x: Num) -> str:
    f = Fraction(x) if not isinstance(x, float) else Fraction(repr(x))
    return str(f)


def instance_from_doc(doc) -> Instance:
    if not isinstance(doc, dict) or "boxes" not in doc:
        raise InputError('instance file must be an object with a "boxes" array')
    boxes = []
    for bi, bdoc in enumerate(doc["boxes"]):
        try:
            cost = parse_numlit(bdoc["cost"])
            pairs = [
                (parse_numlit(e["value"]), parse_numlit(e["prob"]))
                for e in bdoc["support"]
            ]
            boxes.append(Box(DiscreteDist(pairs), cost))
        except (KeyError, TypeError, InvalidDistributionError, ValueError) as e:
            raise InputError(f"box {bi}: {e}") from None
    try:
        return Instance(boxes)
    except ValueError as e:
        raise InputError(str(e)) from None


def instance_to_doc(inst: Instance) -> dict:
    return {
        "boxes": [
            {
                "cost": fmt_num(b.cost),
                "support": [
                    {"value": fmt_num(v), "prob": fmt_num(p)} for v, p in b.dist.support
                ],
            }
            for b in inst.boxes
        ]
    }


def load_instance(path: str) -> Instance:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            doc = json.load(fh)
    except OSError as e:
        raise InputError(f"cannot read {path}: {e}") from None
    except json.JSONDecodeError as e:
        raise InputError(f"{path}: invalid JSON at line {e.lineno}: {e.msg}") from None
    return instance_from_doc(doc)


def write_instance(inst: Instance, path: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(instance_to_doc(inst), fh, indent=2)
        fh.write("\n")


def build_policy(inst: Instance, spec: str) -> Policy:
    if spec == "weitzman":
        return WeitzmanPolicy(inst)
    if spec.startswith("commit:"):
        body = spec[len("commit:"):]
        indices = frozenset(int(s) for s in body.split(",") if s != "")
        return CommittingPolicy(inst, indices)
    if spec == "best-committing":
        sol = committing.best_committing(inst)
        return CommittingPolicy(inst, sol.best_set)
    if spec == "dp":
        return adaptive.dp_policy(adaptive.solve_dp(inst, adaptive.NONOBLIGATORY))
    if spec == "dp-required":
        return adaptive.dp_policy(adaptive.solve_dp(inst, adaptive.REQUIRED))
    raise InputError(f"unknown policy spec {spec!r}")


def _emit(doc: dict, as_json: bool, lines) -> None:
    if as_json:
        print(json.dumps(doc, indent=2))
    else:
        for ln in lines:
            print(ln)


def cmd_profile(args) -> int:
    inst = load_instance(args.file)
    prof = reservation.profile(inst)
    doc = {
        "boxes": [
            {
                "sigma": fmt_num(prof.sigmas[i]),
                "expected_value": fmt_num(prof.expected_values[i]),
                "kappa": [
                    {"value": fmt_num(v), "prob": fmt_num(p)}
                    for v, p in prof.kappa_dists[i].support
                ],
            }
            for i in range(inst.n)
        ]
    }
    lines = ["box  sigma        E[v]         kappa support"]
    for i in range(inst.n):
        kap = ", ".join(f"{fmt_num(v)}:{fmt_num(p)}" for v, p in prof.kappa_dists[i].support)
        lines.append(
            f"{i:<4} {fmt_num(prof.sigmas[i]):<12} {fmt_num(prof.expected_values[i]):<12} {{{kap}}}"
        )
    _emit(doc, args.json, lines)
    return 0


def cmd_solve(args) -> int:
    inst = load_instance(args.file)
    spec = args.policy
    doc = {"policy": spec}
    lines = []
    if spec == "best-committing":
        sol = committing.best_committing(inst)
        value = sol.best_value
        doc["best_set"] = sorted(sol.best_set)
        doc["candidates"] = [
            {"set": sorted(s), "value": fmt_num(v)} for s, v in sol.candidate_values
        ]
        lines.append(f"best reservation set: {sorted(sol.best_set)}")
        for s, v in sol.candidate_values:
            lines.append(f"  S={sorted(s)!s:<10} value = {fmt_num(v)} ({float(v):.6g})")
    elif spec in ("dp", "dp-required"):
        variant = adaptive.NONOBLIGATORY if spec == "dp" else adaptive.REQUIRED
        sol = adaptive.solve_dp(inst, variant)
        value = sol.value
        table_doc = []
        for (uninsp, best), (act, val) in sorted(
            sol.table.items(), key=lambda kv: (sorted(kv[0][0]), str(kv[0][1]))
        ):
            table_doc.append(
                {
                    "uninspected": sorted(uninsp),
                    "best_open": None if best is None else fmt_num(best),
                    "action": {"kind": act[0], "box": act[1]},
                    "value": fmt_num(val),
                }
            )
        doc["table"] = table_doc
        lines.append("decision table (uninspected | best open -> action, value):")
        for row in table_doc:
            act = row["action"]
            tgt = "" if act["box"] is None else f"({act['box']})"
            lines.append(
                f"  U={row['uninspected']!s:<12} best={row['best_open'] or '-':<8} "
                f"-> {act['kind']}{tgt:<5} value = {row['value']}"
            )
    else:
        pol = build_policy(inst, spec)
        value = evaluator.evaluate_exact(inst, pol).utility
    doc["value"] = fmt_num(value)
    doc["value_float"] = float(value)
    lines.append(f"value = {fmt_num(value)} ({float(value):.12g})")
    _emit(doc, args.json, lines)
    return 0


def _ratio_row(inst: Instance):
    dp = adaptive.solve_dp(inst).value
    bc = committing.best_committing(inst).best_value
    ratio = bc / dp if dp != 0 else Fraction(1)
    return dp, bc, ratio


def cmd_ratio(args) -> int:
    inst = load_instance(args.file)
    dp, bc, ratio = _ratio_row(inst)
    ok_e = bc >= ONE_MINUS_INV_E_LB * dp
    ok_45 = (inst.n != 2) or (5 * bc >= 4 * dp)
    doc = {
        "dp": fmt_num(dp),
        "best_committing": fmt_num(bc),
        "ratio": fmt_num(ratio),
        "ratio_float": float(ratio),
        "floor_1_minus_1_over_e": "PASS" if ok_e else "FAIL",
    }
    lines = [
        f"dp-optimal       = {fmt_num(dp)} ({float(dp):.12g})",
        f"best committing  = {fmt_num(bc)} ({float(bc):.12g})",
        f"ratio            = {fmt_num(ratio)} ({float(ratio):.12g})",
        f"1-1/e floor      : {'PASS' if ok_e else 'FAIL'}",
    ]
    if inst.n == 2:
        doc["floor_4_5"] = "PASS" if ok_45 else "FAIL"
        lines.append(f"4/5 floor (n=2)  : {'PASS' if ok_45 else 'FAIL'}")
    _emit(doc, args.json, lines)
    return 0 if (ok_e and ok_45) else 1


def cmd_gen(args) -> int:
    if args.tight is not None:
        if args.tight < 2:
            raise InputError("--tight needs N >= 2")
        inst = twobox.tight_example(args.tight)
    else:
        n, s, vmax, cmax, seed = args.random
        try:
            scale = Fraction(cmax)
        except ValueError:
            raise InputError(f"bad cost scale {cmax!r}") from None
        inst = generators.random_instance(
            n=int(n), max_support=int(s), value_max=int(vmax),
            seed=int(seed), cost_scale_max=scale,
        )
    write_instance(inst, args.output)
    return 0


def cmd_simulate(args) -> int:
    inst = load_instance(args.file)
    pol = build_policy(inst, args.policy)
    report = simulator.simulate(inst, pol, trials=args.trials, seed=args.seed)
    doc = {
        "trials": report.trials,
        "seed": report.seed,
        "mean_utility": report.mean_utility,
        "std_error": report.std_error,
        "inspect_freq": list(report.inspect_freq),
        "select_freq": list(report.select_freq),
    }
    lines = [
        f"trials     = {report.trials}  (seed {report.seed})",
        f"mean       = {report.mean_utility:.6f}",
        f"std error  = {report.std_error:.6f}",
        "box  inspect freq  select freq",
    ]
    for i in range(inst.n):
        lines.append(f"{i:<4} {report.inspect_freq[i]:<13.6f} {report.select_freq[i]:.6f}")
    _emit(doc, args.json, lines)
    return 0


def cmd_sweep(args) -> int:
    rows = []
    if args.family == "tight":
        for big_n in (int(s) for s in args.n_list.split(",")):
            inst = twobox.tight_example(big_n)
            rows.append((f"tight-{big_n}", inst))
    else:
        count, n, s, vmax, seed0 = (int(x) for x in args.random_batch)
        for k in range(count):
            inst = generators.random_instance(
                n=n, max_support=s, value_max=vmax, seed=seed0 + k
            )
            rows.append((f"random-{seed0 + k}", inst))
    out = open(args.output, "w", newline="", encoding="utf-8") if args.output else sys.stdout
    try:
        writer = csv.writer(out)
        writer.writerow(["instance-id", "n", "dp", "best_committing", "ratio", "min-ratio-so-far"])
        min_ratio = None
        for iid, inst in rows:
            dp, bc, ratio = _ratio_row(inst)
            min_ratio = ratio if min_ratio is None else min(min_ratio, ratio)
            writer.writerow([iid, inst.n, fmt_num(dp), fmt_num(bc), fmt_num(ratio), fmt_num(min_ratio)])
    finally:
        if out is not sys.stdout:
            out.close()
    return 0


def make_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="pandora",
        description="Exact and approximate search policies for box-inspection problems "
        "with optional inspection.  Box indices are 0-based.",
    )
    sub = p.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("profile", help="reservation values and amortized distributions")
    sp.add_argument("file")
    sp.add_argument("--json", action="store_true")
    sp.set_defaults(fn=cmd_profile)

    sp = sub.add_parser("solve", help="exact value of a policy")
    sp.add_argument("file")
    sp.add_argument(
        "--policy",
        required=True,
        help="weitzman | commit:I,J,... | best-committing | dp | dp-required",
    )
    sp.add_argument("--json", action="store_true")
    sp.set_defaults(fn=cmd_solve)

    sp = sub.add_parser("ratio", help="best committing vs adaptive optimum")
    sp.add_argument("file")
    sp.add_argument("--json", action="store_true")
    sp.set_defaults(fn=cmd_ratio)

    sp = sub.add_parser("gen", help="write an instance file")
    group = sp.add_mutually_exclusive_group(required=True)
    group.add_argument("--tight", type=int, metavar="N", help="two-box tight family at N")
    group.add_argument(
        "--random",
        nargs=5,
        metavar=("N", "S", "VMAX", "CSCALE", "SEED"),
        help="random instance: boxes, max support, value grid max, "
        "cost scale (rational multiple of E[v]), seed",
    )
    sp.add_argument("-o", "--output", required=True)
    sp.set_defaults(fn=cmd_gen)

    sp = sub.add_parser("simulate", help="Monte Carlo estimate of a policy")
    sp.add_argument("file")
    sp.add_argument("--policy", required=True)
    sp.add_argument("--trials", type=int, required=True)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--json", action="store_true")
    sp.set_defaults(fn=cmd_simulate)

    sp = sub.add_parser("sweep", help="batch ratio study, CSV output")
    group = sp.add_mutually_exclusive_group(required=True)
    group.add_argument("--family", choices=["tight"])
    group.add_argument(
        "--random-batch",
        nargs=5,
        metavar=("COUNT", "N", "S", "VMAX", "SEED0"),
    )
    sp.add_argument("--N-list", dest="n_list", default="2,10,1000")
    sp.add_argument("-o", "--output")
    sp.set_defaults(fn=cmd_sweep)

    return p


def main(argv=None) -> int:
    parser = make_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except InputError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    except (InvalidDistributionError, ValueError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    except SizeGuardError as e:
        print(f"guard: {e}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
