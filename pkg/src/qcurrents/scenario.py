"""Scenario files: JSON descriptions of a computation to run.

A scenario names its kind (scatter, currents, local-symmetry, evolve,
sun-check, fig1) plus the landscapes, grid, energy or packet parameters,
transforms/domains and tolerances that kind needs.  Validation collects
every problem, not just the first, and reports field paths.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass, field

from .grids import Grid
from .potentials import PotentialProfile, SymmetryDomain, SymmetryTransform

__all__ = ["Scenario", "ScenarioError", "parse_scenario", "KINDS", "DEFAULT_TOLERANCES"]

KINDS = ("scatter", "currents", "local-symmetry", "evolve", "sun-check", "fig1")

DEFAULT_TOLERANCES = {
    "scatter": 1e-10,
    "currents": 1e-8,
    "local-symmetry": 1e-8,
    "evolve": math.inf,  # evolve reports norms; only checked when max_l2 given
    "sun-check": 1e-13,
    "fig1": 1e-8,
}

GRID_PADDING = 10.0  # default grid extent beyond the potential support
DEFAULT_DX = 1e-3


class ScenarioError(ValueError):
    """Validation failure; carries the full list of problems."""

    def __init__(self, errors):
        self.errors = list(errors)
        super().__init__("; ".join(self.errors))


@dataclass
class Scenario:
    kind: str
    potentials: list[PotentialProfile] = field(default_factory=list)
    grid: Grid | None = None
    energy: float | None = None
    incidence: str = "left"
    transform: SymmetryTransform | None = None
    domain: SymmetryDomain | None = None
    packet: dict | None = None
    dt: float | None = None
    steps: int | None = None
    sample_every: int | None = None
    n: int | None = None
    trials: int = 100
    seed: int = 0
    tolerance: float | None = None
    max_l2: float | None = None


def _is_num(v) -> bool:
    return isinstance(v, (int, float)) and not isinstance(v, bool) and math.isfinite(v)


def _parse_profile(raw, path, errors) -> PotentialProfile | None:
    if not isinstance(raw, list):
        errors.append(f"{path}: expected a list of segments")
        return None
    segs = []
    for i, seg in enumerate(raw):
        if not isinstance(seg, dict) or not all(k in seg for k in ("left", "right", "value")):
            errors.append(f"{path}[{i}]: segment needs left, right, value")
            return None
        if not all(_is_num(seg[k]) for k in ("left", "right", "value")):
            errors.append(f"{path}[{i}]: left, right, value must be finite numbers")
            return None
        if not seg["left"] < seg["right"]:
            errors.append(f"{path}[{i}]: requires left < right")
            return None
        segs.append((seg["left"], seg["right"], seg["value"]))
    try:
        return PotentialProfile.from_segments(segs)
    except ValueError as exc:
        errors.append(f"{path}: {exc}")
        return None


def _default_grid(potentials) -> Grid:
    edges = [e for p in potentials for s in ((p.support(),) if p.support() else ()) for e in s]
    lo = (min(edges) if edges else 0.0) - GRID_PADDING
    hi = (max(edges) if edges else 0.0) + GRID_PADDING
    n = int(round((hi - lo) / DEFAULT_DX)) + 1
    return Grid(lo, hi, n)


def _parse_grid(raw, potentials, errors) -> Grid | None:
    if raw is None:
        return _default_grid(potentials)
    if not isinstance(raw, dict):
        errors.append("grid: expected an object with x_min, x_max, n_points")
        return None
    ok = True
    for key in ("x_min", "x_max"):
        if not _is_num(raw.get(key)):
            errors.append(f"grid.{key}: must be a finite number")
            ok = False
    if not isinstance(raw.get("n_points"), int) or raw.get("n_points", 0) < 3:
        errors.append("grid.n_points: must be an integer >= 3")
        ok = False
    if not ok:
        return None
    try:
        return Grid(raw["x_min"], raw["x_max"], raw["n_points"])
    except ValueError as exc:
        errors.append(f"grid: {exc}")
        return None


def _check_fig1_geometry(p1, p2, errors) -> None:
    if set(p1.segments) - set(p2.segments):
        errors.append("potentials: second landscape must repeat the first inside its domain")
        return
    extras = [s for s in p2.segments if s not in set(p1.segments)]
    if not extras:
        return
    left = p1.support()[1] if p1.segments else -math.inf
    if min(s[0] for s in extras) <= left:
        errors.append(
            "potentials: extra landscape must start beyond the first landscape "
            "with a free gap (region II) between them"
        )


def parse_scenario(text: str) -> Scenario:
    """Parse and validate a scenario JSON document."""
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ScenarioError([f"malformed JSON: {exc}"])
    if not isinstance(raw, dict):
        raise ScenarioError(["scenario must be a JSON object"])

    errors: list[str] = []
    kind = raw.get("kind")
    if kind not in KINDS:
        raise ScenarioError([f"kind: must be one of {', '.join(KINDS)}"])
    sc = Scenario(kind=kind)

    n_required = {"scatter": 1, "currents": 2, "local-symmetry": 1, "fig1": 2}
    raw_pots = raw.get("potentials", [])
    if kind != "sun-check":
        if not isinstance(raw_pots, list):
            errors.append("potentials: expected a list")
            raw_pots = []
        want = n_required.get(kind)
        if want is not None and len(raw_pots) != want:
            errors.append(f"potentials: kind '{kind}' requires exactly {want} landscape(s)")
        if kind == "evolve" and len(raw_pots) < 2:
            errors.append("potentials: kind 'evolve' requires at least 2 landscapes")
        for i, rp in enumerate(raw_pots):
            prof = _parse_profile(rp, f"potentials[{i}]", errors)
            if prof is not None:
                sc.potentials.append(prof)
        if not errors:
            sc.grid = _parse_grid(raw.get("grid"), sc.potentials, errors)

    if kind in ("scatter", "currents", "local-symmetry", "fig1"):
        if not _is_num(raw.get("energy")) or raw.get("energy", 0) <= 0:
            errors.append("energy: must be a positive number")
        else:
            sc.energy = float(raw["energy"])

    if kind == "scatter":
        sc.incidence = raw.get("incidence", "left")
        if sc.incidence not in ("left", "right"):
            errors.append("incidence: must be 'left' or 'right'")

    if kind == "local-symmetry":
        tr = raw.get("transform")
        if not isinstance(tr, dict) or tr.get("sigma") not in (1, -1) or not _is_num(tr.get("rho", 0.0)):
            errors.append("transform: needs sigma in {1, -1} and numeric rho")
        else:
            sc.transform = SymmetryTransform(tr["sigma"], float(tr.get("rho", 0.0)))
        dom = raw.get("domain")
        if not isinstance(dom, dict) or not (_is_num(dom.get("a")) and _is_num(dom.get("b"))) or not dom.get("a", 0) < dom.get("b", 0):
            errors.append("domain: needs numbers a < b")
        else:
            sc.domain = SymmetryDomain(dom["a"], dom["b"])

    if kind == "evolve":
        pk = raw.get("packet")
        if (
            not isinstance(pk, dict)
            or not all(_is_num(pk.get(key)) for key in ("x0", "k0", "width"))
            or pk.get("width", 0) <= 0
        ):
            errors.append("packet: needs numeric x0, k0 and positive width")
        else:
            sc.packet = {"x0": float(pk["x0"]), "k0": float(pk["k0"]), "width": float(pk["width"])}
        if not _is_num(raw.get("dt")) or raw.get("dt", 0) <= 0:
            errors.append("dt: must be a positive number")
        else:
            sc.dt = float(raw["dt"])
        if not isinstance(raw.get("steps"), int) or raw.get("steps", 0) < 1:
            errors.append("steps: must be a positive integer")
        else:
            sc.steps = raw["steps"]
        se = raw.get("sample_every")
        if se is not None and (not isinstance(se, int) or se < 1):
            errors.append("sample_every: must be a positive integer")
        else:
            sc.sample_every = se
        ml = raw.get("max_l2")
        if ml is not None and not _is_num(ml):
            errors.append("max_l2: must be a number")
        else:
            sc.max_l2 = ml

    if kind == "sun-check":
        if not isinstance(raw.get("n"), int) or raw.get("n", 0) < 2:
            errors.append("n: must be an integer >= 2")
        else:
            sc.n = raw["n"]
        if "trials" in raw:
            if not isinstance(raw["trials"], int) or raw["trials"] < 1:
                errors.append("trials: must be a positive integer")
            else:
                sc.trials = raw["trials"]
        if "seed" in raw:
            if not isinstance(raw["seed"], int):
                errors.append("seed: must be an integer")
            else:
                sc.seed = raw["seed"]

    if kind == "fig1" and len(sc.potentials) == 2 and not errors:
        _check_fig1_geometry(sc.potentials[0], sc.potentials[1], errors)

    tol = raw.get("tolerance")
    if tol is not None:
        if not _is_num(tol) or tol <= 0:
            errors.append("tolerance: must be a positive number")
        else:
            sc.tolerance = float(tol)

    if errors:
        raise ScenarioError(errors)
    if sc.tolerance is None:
        sc.tolerance = DEFAULT_TOLERANCES[kind]
    return sc
