"""Instance generation, file formats, SVG rendering, experiments.

The experiment runner mirrors the measurement protocol: draw cities
uniformly in a square, compute the exact Euclidean-optimal tour, cost it
under the acceleration model with the exact oracle, then let the flip
search (sliding-window oracle, Euclidean prefilter) look for a better
visit order seeded with the Euclidean tour.  Reported final costs are
re-certified with the exact oracle, and the pipeline never reports a
tour worse than its seed, so ``flipvtsp_cost <= racetrack_etsp_cost``
holds row by row.  Everything is deterministic given the seed.
"""

from __future__ import annotations

import json
import math
import random
import xml.etree.ElementTree as ET
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

from .configspace import Trajectory, make_search_box
from .errors import InvalidInputError
from .kinematics import Configuration, Instance, SuccessorModel, VisitParams
from .oracle import astar_cost_bounded, multipoint_astar
from .search import flip_vtsp, held_karp_etsp

CSV_HEADER = "n,width,height,seed,etsp_cost,racetrack_etsp_cost,flipvtsp_cost,flips,improved"


def generate(n: int, width: int, height: int, seed: int) -> Instance:
    """n distinct integer points drawn uniformly from the width x height
    grid [0,width) x [0,height), rejecting duplicates, from a seeded
    generator; start is the first city; default visit setting."""
    if n < 1:
        raise InvalidInputError("need at least one city")
    if n > width * height:
        raise InvalidInputError(f"cannot place {n} distinct cities in {width}x{height}")
    rng = random.Random(seed)
    seen = set()
    cities = []
    while len(cities) < n:
        p = (rng.randint(0, width - 1), rng.randint(0, height - 1))
        if p not in seen:
            seen.add(p)
            cities.append(p)
    return Instance(cities=tuple(cities), start=0)


# ---------------------------------------------------------------------------
# file formats


def _strict_int(v, what: str) -> int:
    if isinstance(v, bool) or not isinstance(v, int):
        raise InvalidInputError(f"{what} must be an integer, got {v!r}")
    return v


def instance_to_json_dict(instance: Instance) -> dict:
    return {
        "dim": instance.dim,
        "model": instance.model.value,
        "cities": [list(c) for c in instance.cities],
        "start": instance.start,
        "nu": instance.params.nu,
        "alpha": instance.params.alpha,
        "beta": instance.params.beta,
    }


def instance_from_json_dict(obj: dict) -> Instance:
    try:
        dim = _strict_int(obj["dim"], "dim")
        model = {m.value: m for m in SuccessorModel}[obj["model"]]
        cities = tuple(tuple(_strict_int(x, "city coordinate") for x in c)
                       for c in obj["cities"])
        start = _strict_int(obj["start"], "start")
        nu = obj["nu"]
        if nu is not None:
            nu = _strict_int(nu, "nu")
        alpha = _strict_int(obj["alpha"], "alpha")
        beta = obj["beta"]
        if not isinstance(beta, bool):
            raise InvalidInputError("beta must be a boolean")
    except (KeyError, TypeError) as exc:
        raise InvalidInputError(f"malformed instance JSON: {exc}") from exc
    if any(len(c) != dim for c in cities):
        raise InvalidInputError("city dimension mismatch")
    return Instance(cities=cities, start=start,
                    params=VisitParams(nu=nu, alpha=alpha, beta=beta),
                    model=model)


def write_instance(instance: Instance, path: str) -> None:
    with open(path, "w", encoding="utf-8") as f:
        f.write(json.dumps(instance_to_json_dict(instance)) + "\n")


def read_instance(path: str) -> Instance:
    with open(path, "r", encoding="utf-8") as f:
        try:
            obj = json.load(f)
        except json.JSONDecodeError as exc:
            raise InvalidInputError(f"not valid JSON: {path}") from exc
    return instance_from_json_dict(obj)


def trajectory_to_json_dict(traj: Trajectory) -> dict:
    return {
        "cost": traj.cost,
        "configurations": [[*c.pos, *c.vel] for c in traj.configurations],
    }


def trajectory_from_json_dict(obj: dict) -> Trajectory:
    try:
        rows = obj["configurations"]
        configs = tuple(
            Configuration((_strict_int(r[0], "x"), _strict_int(r[1], "y")),
                          (_strict_int(r[2], "dx"), _strict_int(r[3], "dy")))
            for r in rows)
        cost = _strict_int(obj["cost"], "cost")
    except (KeyError, TypeError, IndexError) as exc:
        raise InvalidInputError(f"malformed trajectory JSON: {exc}") from exc
    traj = Trajectory(configs)
    if traj.cost != cost:
        raise InvalidInputError("trajectory cost does not match its length")
    return traj


def write_trajectory(traj: Trajectory, path: str) -> None:
    with open(path, "w", encoding="utf-8") as f:
        f.write(json.dumps(trajectory_to_json_dict(traj)) + "\n")


# ---------------------------------------------------------------------------
# rendering


def render_svg(instance: Instance, traj: Trajectory, path: str,
               scale: int = 12) -> None:
    """Write the trajectory as an SVG: one line per vector in alternating
    colors, cities as circles, the start city highlighted."""
    pts = [c.pos for c in traj.configurations] + list(instance.cities)
    min_x = min(p[0] for p in pts)
    max_y = max(p[1] for p in pts)
    pad = 2 * scale

    def sx(x: int) -> float:
        return (x - min_x) * scale + pad

    def sy(y: int) -> float:
        return (max_y - y) * scale + pad

    width = max(sx(p[0]) for p in pts) + pad
    height = max(sy(p[1]) for p in pts) + pad
    root = ET.Element("svg", {
        "xmlns": "http://www.w3.org/2000/svg",
        "width": str(width), "height": str(height),
        "viewBox": f"0 0 {width} {height}",
    })
    colors = ("#d62728", "#1f77b4")
    for i, (a, b) in enumerate(zip(traj.configurations, traj.configurations[1:])):
        ET.SubElement(root, "line", {
            "x1": str(sx(a.pos[0])), "y1": str(sy(a.pos[1])),
            "x2": str(sx(b.pos[0])), "y2": str(sy(b.pos[1])),
            "stroke": colors[i % 2], "stroke-width": str(scale / 5),
            "stroke-linecap": "round",
        })
    for i, city in enumerate(instance.cities):
        ET.SubElement(root, "circle", {
            "cx": str(sx(city[0])), "cy": str(sy(city[1])),
            "r": str(scale / 3),
            "fill": colors[0] if i == instance.start else "white",
            "stroke": "black", "stroke-width": "1",
        })
    ET.ElementTree(root).write(path, xml_declaration=True, encoding="unicode")


# ---------------------------------------------------------------------------
# experiments


@dataclass(frozen=True)
class ExperimentConfig:
    """One sweep: city counts, area, trials per point, and solver knobs.

    In density mode the area scales with n (width = height =
    isqrt(n * area_per_city)) and the configured width/height are ignored.
    """

    n_values: Tuple[int, ...]
    width: int = 100
    height: int = 100
    trials: int = 100
    seed: int = 0
    density_mode: bool = False
    area_per_city: int = 1000
    prefilter: Optional[float] = 0.15
    window: int = 5

    def __post_init__(self):
        if self.trials < 1:
            raise InvalidInputError("trials must be at least 1")

    @classmethod
    def from_json_dict(cls, obj: dict) -> "ExperimentConfig":
        known = {f: obj[f] for f in (
            "n_values", "width", "height", "trials", "seed", "density_mode",
            "area_per_city", "prefilter", "window") if f in obj}
        if "n_values" not in known:
            raise InvalidInputError("experiment config needs n_values")
        known["n_values"] = tuple(known["n_values"])
        return cls(**known)

    def points(self) -> List[Tuple[int, int, int]]:
        out = []
        for n in self.n_values:
            if self.density_mode:
                side = math.isqrt(n * self.area_per_city)
                out.append((n, side, side))
            else:
                out.append((n, self.width, self.height))
        return out


@dataclass(frozen=True)
class ExperimentRow:
    n: int
    width: int
    height: int
    seed: int
    etsp_cost: float
    racetrack_etsp_cost: int
    flipvtsp_cost: int
    flips: int
    improved: bool

    def csv_line(self) -> str:
        return (f"{self.n},{self.width},{self.height},{self.seed},"
                f"{self.etsp_cost:.6f},{self.racetrack_etsp_cost},"
                f"{self.flipvtsp_cost},{self.flips},{1 if self.improved else 0}")


def measure_instance(instance: Instance, window: int,
                     prefilter: Optional[float]):
    """One measurement: exact Euclidean baseline, its exact trajectory
    cost, then flip search seeded with it (window oracle) and the
    certified final cost (clamped to the reference when certification
    shows no gain).  Returns (etsp_len, reference, final, flips)."""
    box = make_search_box(instance)
    etsp_tour, etsp_len = held_karp_etsp(instance.cities, instance.start)
    reference = multipoint_astar(instance, etsp_tour, box).cost
    report = flip_vtsp(instance, box, view=window, prefilter=prefilter,
                       initial_tour=etsp_tour)
    if report.flips_applied == 0:
        final = reference
    else:
        certified = astar_cost_bounded(instance, report.final_tour, box, reference)
        final = reference if certified is None else certified.cost
    return etsp_len, reference, final, report.flips_applied


def run_trial(n: int, width: int, height: int, seed: int,
              window: int, prefilter: Optional[float]) -> ExperimentRow:
    instance = generate(n, width, height, seed)
    etsp_len, reference, final, flips = measure_instance(
        instance, window, prefilter)
    return ExperimentRow(n=n, width=width, height=height, seed=seed,
                         etsp_cost=etsp_len, racetrack_etsp_cost=reference,
                         flipvtsp_cost=final, flips=flips,
                         improved=final < reference)


def run_experiment(cfg: ExperimentConfig) -> List[ExperimentRow]:
    rows = []
    for n, width, height in cfg.points():
        for trial in range(cfg.trials):
            rows.append(run_trial(n, width, height, cfg.seed + trial,
                                  cfg.window, cfg.prefilter))
    return rows


def write_csv(rows: Sequence[ExperimentRow], path: str) -> None:
    with open(path, "w", encoding="utf-8", newline="") as f:
        f.write(CSV_HEADER + "\n")
        for row in rows:
            f.write(row.csv_line() + "\n")


def read_csv(path: str) -> List[ExperimentRow]:
    with open(path, "r", encoding="utf-8") as f:
        lines = f.read().splitlines()
    if not lines or lines[0] != CSV_HEADER:
        raise InvalidInputError("unexpected CSV header")
    rows = []
    for line in lines[1:]:
        parts = line.split(",")
        if len(parts) != 9:
            raise InvalidInputError(f"bad CSV row: {line}")
        rows.append(ExperimentRow(
            n=int(parts[0]), width=int(parts[1]), height=int(parts[2]),
            seed=int(parts[3]), etsp_cost=float(parts[4]),
            racetrack_etsp_cost=int(parts[5]), flipvtsp_cost=int(parts[6]),
            flips=int(parts[7]), improved=parts[8] == "1"))
    return rows
