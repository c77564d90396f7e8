"""Command-line interface.

Exit codes: 0 success, 2 invalid input, 3 guard refusal, 4 search
exhausted without reaching the goal.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Optional

from .configspace import Tour, brute_force_vtsp, make_search_box
from .errors import GuardError, InvalidInputError, TrajectoryNotFound
from .estimate import estimate_remaining, turning_points, unidim_cost
from .harness import (ExperimentConfig, generate, read_instance, render_svg,
                      run_experiment, trajectory_to_json_dict, write_csv,
                      write_instance)
from .kinematics import initial_visits
from .oracle import multipoint_astar
from .reductions import atsp_to_stsp, noon_bean, to_gtsp
from .search import flip_vtsp


def _parse_view(text: str) -> Optional[int]:
    if text == "full":
        return None
    try:
        window = int(text)
    except ValueError:
        raise InvalidInputError(f"--view must be 'full' or an integer, got {text!r}")
    return window


def _parse_order(instance, text: str) -> Tour:
    try:
        ids = [int(t) for t in text.split(",") if t.strip() != ""]
    except ValueError:
        raise InvalidInputError(f"--order must be comma-separated indices, got {text!r}")
    return Tour.closed(ids, instance.start).validate(instance)


def _box_for(args, instance):
    margin = getattr(args, "margin", None)
    return make_search_box(instance, margin=margin)


def cmd_generate(args) -> int:
    instance = generate(args.n, args.width, args.height, args.seed)
    write_instance(instance, args.out)
    return 0


def cmd_solve(args) -> int:
    instance = read_instance(args.instance)
    box = _box_for(args, instance)
    report = flip_vtsp(instance, box, view=_parse_view(args.view),
                       prefilter=args.prefilter)
    print(f"initial cost: {report.initial_cost}")
    print(f"final cost:   {report.final_cost}")
    print(f"final tour:   {','.join(map(str, report.final_tour.order))}")
    print(f"flips:        {report.flips_applied}")
    print(f"oracle calls: {report.oracle_calls}")
    if args.svg:
        render_svg(instance, report.final_trajectory, args.svg)
    if args.report:
        payload = {
            "initial_tour": list(report.initial_tour.order),
            "final_tour": list(report.final_tour.order),
            "initial_cost": report.initial_cost,
            "final_cost": report.final_cost,
            "flips": report.flips_applied,
            "oracle_calls": report.oracle_calls,
            "trajectory": trajectory_to_json_dict(report.final_trajectory),
        }
        with open(args.report, "w", encoding="utf-8") as f:
            f.write(json.dumps(payload) + "\n")
    return 0


def cmd_trajectory(args) -> int:
    instance = read_instance(args.instance)
    tour = _parse_order(instance, args.order)
    box = _box_for(args, instance)
    traj = multipoint_astar(instance, tour, box)
    print(json.dumps(trajectory_to_json_dict(traj)))
    return 0


def cmd_estimate(args) -> int:
    instance = read_instance(args.instance)
    tour = _parse_order(instance, args.order)
    positions = tour.positions(instance)
    consumed = initial_visits(instance.start_pos, positions, instance.params)
    suffix = positions[consumed:]
    config = instance.start_config()
    dims = []
    for axis in range(instance.dim):
        plan = turning_points(config.pos[axis], [q[axis] for q in suffix])
        dims.append({
            "axis": axis,
            "legs": [list(leg) for leg in plan.legs],
            "distances": list(plan.distances),
            "cost": sum(unidim_cost(d) for d in plan.distances),
        })
    print(json.dumps({
        "estimate": estimate_remaining(config, suffix, instance.params),
        "dimensions": dims,
    }))
    return 0


def cmd_brute(args) -> int:
    instance = read_instance(args.instance)
    box = _box_for(args, instance)
    tour, traj = brute_force_vtsp(instance, box)
    print(json.dumps({
        "cost": traj.cost,
        "order": list(tour.order),
        "trajectory": trajectory_to_json_dict(traj),
    }))
    return 0


def cmd_reduce(args) -> int:
    instance = read_instance(args.instance)
    box = _box_for(args, instance)
    gtsp = to_gtsp(instance, box)
    if args.to == "gtsp":
        payload = gtsp.to_json_dict()
    elif args.to == "atsp":
        payload = noon_bean(gtsp).to_json_dict()
    else:
        payload = atsp_to_stsp(noon_bean(gtsp)).to_json_dict()
    with open(args.out, "w", encoding="utf-8") as f:
        f.write(json.dumps(payload) + "\n")
    return 0


def cmd_experiment(args) -> int:
    with open(args.config, "r", encoding="utf-8") as f:
        try:
            obj = json.load(f)
        except json.JSONDecodeError as exc:
            raise InvalidInputError(f"not valid JSON: {args.config}") from exc
    cfg = ExperimentConfig.from_json_dict(obj)
    rows = run_experiment(cfg)
    write_csv(rows, args.csv)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="vectortsp",
        description="Tour search under racetrack acceleration constraints")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("generate", help="write a random instance")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--width", type=int, required=True)
    p.add_argument("--height", type=int, required=True)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("solve", help="flip search from the boustrophedon tour")
    p.add_argument("instance")
    p.add_argument("--view", default="full",
                   help="'full' for the exact oracle or a window size")
    p.add_argument("--prefilter", type=float, default=None,
                   help="skip flips whose Euclidean length grows more than this fraction")
    p.add_argument("--margin", type=int, default=None)
    p.add_argument("--svg", default=None)
    p.add_argument("--report", default=None)
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("trajectory", help="optimal trajectory for a visit order")
    p.add_argument("instance")
    p.add_argument("--order", required=True)
    p.add_argument("--margin", type=int, default=None)
    p.set_defaults(func=cmd_trajectory)

    p = sub.add_parser("estimate", help="projection lower bound for a visit order")
    p.add_argument("instance")
    p.add_argument("--order", required=True)
    p.set_defaults(func=cmd_estimate)

    p = sub.add_parser("brute", help="exact solution of a tiny instance")
    p.add_argument("instance")
    p.add_argument("--margin", type=int, default=None)
    p.set_defaults(func=cmd_brute)

    p = sub.add_parser("reduce", help="emit a GTSP/ATSP/STSP reduction")
    p.add_argument("instance")
    p.add_argument("--to", choices=("gtsp", "atsp", "stsp"), required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--margin", type=int, default=None)
    p.set_defaults(func=cmd_reduce)

    p = sub.add_parser("experiment", help="run a seeded experiment sweep")
    p.add_argument("--config", required=True)
    p.add_argument("--csv", required=True)
    p.set_defaults(func=cmd_experiment)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except InvalidInputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except GuardError as exc:
        print(f"refused: {exc}", file=sys.stderr)
        return 3
    except TrajectoryNotFound as exc:
        print(f"not found: {exc}", file=sys.stderr)
        return 4
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
