"""Command-line front end: parameter sweeps to CSV, single-point dumps,
the EDR-vs-interaction-time scan, and the built-in validation suite.

Config files are flat INI documents with [scenario], [contour], [quadrature]
and [sweep] sections; see README for the full key list.  CSV columns follow
the documented contract: axis, vacuum, status, one column per requested
output (complex outputs split into _re/_im), then err_<output> columns.
Floats carry 12 significant digits and row order is axis-major,
vacuum-minor, so identical configs give identical files.

Exit codes: 0 success, 1 validation failure, 2 config error, 3 numerical failure.
"""

from __future__ import annotations

import argparse
import configparser
import math
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, replace

from .contour_quadrature import ContourSpec, QuadratureConfig
from .correlations import concurrence, eigenvalue_split, mutual_information, signalling_estimator
from .detector_matrix import (Scenario, Switching, edr_ratio, pair_state,
                              transition_probability)
from .geometry import SpacetimeParams, StaticDetector, radius_from_proper_distance
from .wightman import VacuumKind

AXES = ("dA", "dAB", "mass", "sigma", "tau0", "omega")
OUTPUTS = ("L_AA", "L_BB", "L_AB", "M_nonlocal", "concurrence",
           "mutual_information", "estimator", "edr")
_COMPLEX_OUTPUTS = ("L_AA", "L_BB", "L_AB", "M_nonlocal")


class ConfigError(ValueError):
    pass


class NumericalFailure(RuntimeError):
    pass


@dataclass(frozen=True)
class ScenarioTemplate:
    """Plain-value scenario description (picklable; radii derived lazily)."""
    mass: float = 0.5
    omega: float = 2.0
    tau0: float = 12.0
    d_a: float = 0.5
    d_ab: float = 2.0
    r_over_2m: float | None = None  # overrides d_a when given
    coupling: float = 1.0
    switching: str = "main"
    vacuum: str = "unruh"
    drop_vaidya_cross: bool = False
    b: float = 5.0
    h: float = 1.0
    rel_tol: float = 1e-8
    abs_tol: float = 1e-12
    max_depth: int = 30
    min_depth: int = 3

    def with_axis(self, axis: str, value: float) -> "ScenarioTemplate":
        if axis == "dA":
            return replace(self, d_a=value, r_over_2m=None)
        if axis == "dAB":
            return replace(self, d_ab=value)
        if axis == "mass":
            return replace(self, mass=value)
        if axis == "tau0":
            return replace(self, tau0=value)
        if axis == "omega":
            return replace(self, omega=value)
        if axis == "sigma":
            # re-express the configured scales in units of the new switching width
            return replace(self, mass=self.mass / value, omega=self.omega * value)
        raise ConfigError(f"unknown sweep axis {axis!r} (choose from {AXES})")

    def build(self, vacuum: str | None = None) -> Scenario:
        vac = VacuumKind(vacuum or self.vacuum)
        mass = self.mass
        if vac in (VacuumKind.MINKOWSKI, VacuumKind.THERMAL_FLAT):
            r_a = self.d_a
            r_b = self.d_a + self.d_ab
        else:
            if mass <= 0:
                raise ConfigError("black-hole vacua need mass > 0")
            if self.r_over_2m is not None:
                r_a = self.r_over_2m * 2.0 * mass
            else:
                r_a = radius_from_proper_distance(self.d_a, 2.0 * mass, mass)
            r_b = radius_from_proper_distance(self.d_ab, r_a, mass)
        det_a = StaticDetector(radius=r_a, gap=self.omega, tau0=self.tau0,
                               coupling=self.coupling)
        det_b = StaticDetector(radius=r_b, gap=self.omega, tau0=self.tau0,
                               coupling=self.coupling)
        return Scenario(
            SpacetimeParams(mass), vac, det_a, det_b,
            switching=Switching(self.switching),
            contour=ContourSpec(b=self.b, h=self.h),
            quad=QuadratureConfig(rel_tol=self.rel_tol, abs_tol=self.abs_tol,
                                  max_depth=self.max_depth, min_depth=self.min_depth),
            drop_vaidya_cross=self.drop_vaidya_cross)


@dataclass(frozen=True)
class SweepConfig:
    template: ScenarioTemplate
    axis: str
    grid: tuple
    vacua: tuple
    outputs: tuple

    def __post_init__(self):
        if not self.grid:
            raise ConfigError("sweep grid is empty")
        if list(self.grid) != sorted(self.grid) or len(set(self.grid)) != len(self.grid):
            raise ConfigError("sweep grid must be strictly increasing")
        if not self.vacua:
            raise ConfigError("no vacua requested")
        if self.axis not in AXES:
            raise ConfigError(f"unknown axis {self.axis!r}")
        for out in self.outputs:
            if out not in OUTPUTS:
                raise ConfigError(f"unknown output {out!r} (choose from {OUTPUTS})")

    @staticmethod
    def example(axis="dA", grid=(0.5, 2.0), vacua=(VacuumKind.UNRUH,),
                outputs=("L_AA",)) -> "SweepConfig":
        return SweepConfig(ScenarioTemplate(), axis, tuple(grid),
                           tuple(v.value for v in vacua), tuple(outputs))


@dataclass
class ResultRow:
    axis_value: float
    vacuum: str
    status: str
    values: dict = field(default_factory=dict)
    errors: dict = field(default_factory=dict)


def _row_columns(outputs) -> list[str]:
    cols = []
    for out in outputs:
        if out in _COMPLEX_OUTPUTS:
            cols += [f"{out}_re", f"{out}_im"]
        else:
            cols.append(out)
    return cols


def csv_header(outputs) -> list[str]:
    return ["axis", "vacuum", "status"] + _row_columns(outputs) + \
        [f"err_{out}" for out in outputs]


def compute_row(template: ScenarioTemplate, axis: str, value: float,
                vacuum: str, outputs: tuple) -> ResultRow:
    row = ResultRow(axis_value=value, vacuum=vacuum, status="ok")
    try:
        scenario = template.with_axis(axis, value).build(vacuum)
        need_pair = any(o in outputs for o in
                        ("L_AA", "L_BB", "L_AB", "M_nonlocal", "concurrence",
                         "mutual_information"))
        pair = pair_state(scenario) if need_pair else None
        if pair is not None and not pair.converged:
            row.status = "flagged"
        for out in outputs:
            if out in _COMPLEX_OUTPUTS:
                val = getattr(pair, "M_nonlocal" if out == "M_nonlocal" else out)
                row.values[f"{out}_re"] = val.real
                row.values[f"{out}_im"] = val.imag
                row.errors[out] = pair.errors[out]
            elif out == "concurrence":
                row.values[out] = concurrence(pair)
                e_m = pair.errors["M_nonlocal"]
                laa, lbb = max(pair.L_AA.real, 1e-300), max(pair.L_BB.real, 1e-300)
                geo = math.sqrt(laa * lbb)
                row.errors[out] = 2.0 * (e_m + 0.5 * geo * (
                    pair.errors["L_AA"] / laa + pair.errors["L_BB"] / lbb))
            elif out == "mutual_information":
                row.values[out] = mutual_information(pair)
                lp, lm = eigenvalue_split(pair)
                scale = sum(abs(math.log(max(x, 1e-300))) + 1.0 for x in
                            (lp, max(lm, 1e-30), pair.L_AA.real, pair.L_BB.real))
                row.errors[out] = scale * (pair.errors["L_AA"] + pair.errors["L_BB"]
                                           + pair.errors["L_AB"])
            elif out == "estimator":
                est = signalling_estimator(scenario)
                row.values[out] = est.value
                row.errors[out] = est.error
                if not est.converged:
                    row.status = "flagged"
            elif out == "edr":
                row.values[out] = edr_ratio(scenario, "A")
                up = transition_probability(scenario, "A")
                row.errors[out] = abs(row.values[out]) * scenario.quad.rel_tol * 4 \
                    if up != 0 else 0.0
    except Exception as exc:  # per-row failures are recorded, never fatal
        row.status = f"error: {type(exc).__name__}: {exc}"
        for col in _row_columns(outputs):
            row.values.setdefault(col, math.nan)
        for out in outputs:
            row.errors.setdefault(out, math.nan)
    return row


def _row_task(args):
    return compute_row(*args)


def run_sweep(cfg: SweepConfig, workers: int = 1) -> list[ResultRow]:
    """One row per (grid point x vacuum), axis-major then vacuum-minor order."""
    tasks = [(cfg.template, cfg.axis, value, vacuum, cfg.outputs)
             for value in cfg.grid for vacuum in cfg.vacua]
    if workers <= 1:
        return [_row_task(t) for t in tasks]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(_row_task, tasks))


def _fmt(x) -> str:
    if isinstance(x, float):
        return format(x, ".12g")
    return str(x)


def write_csv(path: str, cfg: SweepConfig, rows: list[ResultRow]) -> None:
    header = csv_header(cfg.outputs)
    with open(path, "w") as fh:
        fh.write(",".join(header) + "\n")
        for row in rows:
            cells = [_fmt(row.axis_value), row.vacuum,
                     row.status.replace(",", ";")]
            cells += [_fmt(row.values.get(col, math.nan)) for col in _row_columns(cfg.outputs)]
            cells += [_fmt(row.errors.get(out, math.nan)) for out in cfg.outputs]
            fh.write(",".join(cells) + "\n")


# ---------------------------------------------------------------- config I/O

def _parse_list(raw: str) -> list[str]:
    return [tok.strip() for tok in raw.replace("\n", ",").split(",") if tok.strip()]


def load_template(parser: configparser.ConfigParser) -> ScenarioTemplate:
    sc = parser["scenario"] if parser.has_section("scenario") else {}
    ct = parser["contour"] if parser.has_section("contour") else {}
    qd = parser["quadrature"] if parser.has_section("quadrature") else {}

    def get(section, key, cast, default):
        if key not in section:
            return default
        try:
            if cast is bool:
                return str(section[key]).strip().lower() in ("1", "true", "yes", "on")
            return cast(section[key])
        except ValueError as exc:
            raise ConfigError(f"bad value for {key!r}: {section[key]!r}") from exc

    r_over_2m = get(sc, "r_over_2m", float, None) if "r_over_2m" in sc else None
    return ScenarioTemplate(
        mass=get(sc, "mass", float, 0.5),
        omega=get(sc, "omega", float, 2.0),
        tau0=get(sc, "tau0", float, 12.0),
        d_a=get(sc, "d_a", float, 0.5),
        d_ab=get(sc, "d_ab", float, 2.0),
        r_over_2m=r_over_2m,
        coupling=get(sc, "coupling", float, 1.0),
        switching=get(sc, "switching", str, "main"),
        vacuum=get(sc, "vacuum", str, "unruh"),
        drop_vaidya_cross=get(sc, "drop_vaidya_cross", bool, False),
        b=get(ct, "b", float, 5.0),
        h=get(ct, "h", float, 1.0),
        rel_tol=get(qd, "rel_tol", float, 1e-8),
        abs_tol=get(qd, "abs_tol", float, 1e-12),
        max_depth=get(qd, "max_depth", int, 30),
        min_depth=get(qd, "min_depth", int, 3),
    )


def load_config(path: str) -> SweepConfig:
    parser = configparser.ConfigParser(inline_comment_prefixes=(";", "#"))
    read = parser.read(path)
    if not read:
        raise ConfigError(f"config file {path!r} not found")
    template = load_template(parser)
    if not parser.has_section("sweep"):
        raise ConfigError("config needs a [sweep] section for sweeps")
    sw = parser["sweep"]
    try:
        grid = tuple(float(x) for x in _parse_list(sw.get("grid", "")))
    except ValueError as exc:
        raise ConfigError(f"bad sweep grid: {sw.get('grid')!r}") from exc
    vacua = tuple(_parse_list(sw.get("vacua", template.vacuum)))
    for v in vacua:
        try:
            VacuumKind(v)
        except ValueError as exc:
            raise ConfigError(f"unknown vacuum {v!r}") from exc
    outputs = tuple(_parse_list(sw.get("outputs", "L_AA")))
    return SweepConfig(template, sw.get("axis", "dA").strip(), grid, vacua, outputs)


# ----------------------------------------------------------------- commands

def _cmd_sweep(args) -> int:
    cfg = load_config(args.config)
    rows = run_sweep(cfg, workers=args.workers)
    write_csv(args.out, cfg, rows)
    n_err = sum(1 for r in rows if r.status.startswith("error"))
    n_flag = sum(1 for r in rows if r.status == "flagged")
    print(f"wrote {len(rows)} rows to {args.out} "
          f"({n_flag} flagged, {n_err} failed)")
    return 3 if n_err else 0


def _cmd_single(args) -> int:
    parser = configparser.ConfigParser(inline_comment_prefixes=(";", "#"))
    if not parser.read(args.config):
        raise ConfigError(f"config file {args.config!r} not found")
    template = load_template(parser)
    scenario = template.build()
    pair = pair_state(scenario)
    if not pair.converged:
        print("warning: quadrature tolerance not met; error estimates follow", flush=True)
    print(f"vacuum      : {scenario.vacuum.value}")
    print(f"r_A, r_B    : {scenario.det_a.radius:.12g}, {scenario.det_b.radius:.12g}")
    for name in ("L_AA", "L_BB", "L_AB", "M_nonlocal"):
        val = getattr(pair, name)
        print(f"{name:12s}: {val.real:+.12g} {val.imag:+.12g}i  (err {pair.errors[name]:.3g})")
    print(f"concurrence : {concurrence(pair):.12g}")
    print(f"mutual info : {mutual_information(pair):.12g}")
    est = signalling_estimator(scenario)
    print(f"estimator   : {est.value:.12g}  (err {est.error:.3g})")
    return 0


def _cmd_edr(args) -> int:
    parser = configparser.ConfigParser(inline_comment_prefixes=(";", "#"))
    if not parser.read(args.config):
        raise ConfigError(f"config file {args.config!r} not found")
    template = load_template(parser)
    sigmas = [float(x) for x in _parse_list(args.sigma_grid)]
    if not sigmas or sigmas != sorted(sigmas):
        raise ConfigError("sigma grid must be nonempty and increasing")
    vacua = _parse_list(parser["sweep"].get("vacua", template.vacuum)) \
        if parser.has_section("sweep") else [template.vacuum]
    rows = []
    for s in sigmas:
        for vac in vacua:
            rows.append(compute_row(template, "sigma", s, vac, ("edr",)))
    cfg = SweepConfig(template, "sigma", tuple(sigmas), tuple(vacua), ("edr",))
    write_csv(args.out, cfg, rows)
    n_err = sum(1 for r in rows if r.status.startswith("error"))
    print(f"wrote {len(rows)} rows to {args.out}")
    return 3 if n_err else 0


def _cmd_validate(args) -> int:
    from .validation import run_validation
    results = run_validation(args.filter)
    hard = [r for r in results if not r.expected_fail]
    n_fail = sum(1 for r in hard if not r.passed)
    print(f"{len(hard) - n_fail}/{len(hard)} criteria passed"
          + (f", {n_fail} FAILED" if n_fail else ""))
    return 1 if n_fail else 0


def main(argv=None) -> int:
    top = argparse.ArgumentParser(prog="udwharvest",
                                  description="Static-detector correlation sweeps "
                                              "outside (1+1)D black holes")
    sub = top.add_subparsers(dest="command", required=True)

    p = sub.add_parser("sweep", help="run a parameter sweep to CSV")
    p.add_argument("--config", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--workers", type=int, default=1)

    p = sub.add_parser("validate", help="run the acceptance suite")
    p.add_argument("--filter", default=None)

    p = sub.add_parser("edr", help="excitation/de-excitation ratio vs interaction time")
    p.add_argument("--config", required=True)
    p.add_argument("--sigma-grid", required=True,
                   help="comma-separated interaction times (units of the config scales)")
    p.add_argument("--out", required=True)

    p = sub.add_parser("single", help="full pair-state dump for one scenario")
    p.add_argument("--config", required=True)

    args = top.parse_args(argv)
    try:
        if args.command == "sweep":
            return _cmd_sweep(args)
        if args.command == "validate":
            return _cmd_validate(args)
        if args.command == "edr":
            return _cmd_edr(args)
        if args.command == "single":
            return _cmd_single(args)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    except (ArithmeticError, RuntimeError) as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return 3
    return 2


if __name__ == "__main__":
    sys.exit(main())
