"""Declarative scenarios: parsing, execution, sweeps, reports.

A scenario is a TOML file naming a metric family, a boundary radius,
the checks to run and optional numerics overrides plus a one-parameter
sweep.  Execution produces a Report whose data section is fully
deterministic: fixed key order, 17-significant-digit floats, no
timestamps.  Wall time lives outside the data section.
"""

from __future__ import annotations

import concurrent.futures
import sys
import time
from dataclasses import dataclass, replace

import numpy as np

from . import __version__
from .capacity import GridSpec, capacity_quadrature, capacity_variational
from .conformal import (
    BRANCH_ATOL,
    conformal_mass,
    conformal_transform,
    hm_condition,
    reconstruct_from_state,
    transformed_boundary,
    verify_pmt_hypotheses,
)
from .critical import evaluate_theorem1
from .errors import (
    AlphaOutOfRange,
    CheckFailure,
    NotStatic,
    ScenarioParseError,
    ZeroMeanCurvature,
)
from .fillin import conical_fillin, dirac_eigenvalue_check, euclidean_gauss_identity
from .geometry import RadialMetric, adm_mass, boundary_geometry
from .profiles import PerturbedProfile, SchwarzschildProfile, TabulatedProfile
from .schwarzschild import SchwarzschildStaticPotential
from .static_vacuum import StaticTriple, rigidity_pipeline, static_residuals, lemma1_normal_derivative

if sys.version_info >= (3, 11):
    import tomllib
else:
    import tomli as tomllib

__all__ = ["Scenario", "Report", "load_scenario", "run_scenario", "emit"]

KNOWN_CHECKS = (
    "Theorem1",
    "Theorem2",
    "Corollary1",
    "ConformalProof",
    "StaticVacuum",
    "AppendixA",
)

SWEEPABLE = ("boundary_r0", "mass", "epsilon", "scale")

CSV_HEADER = "name,n,m,r0,capacity,mass,Lambda,c,alpha,rhs,gap,verdict"


@dataclass(frozen=True)
class Numerics:
    grid_points: int = 4000
    r_max_factor: float = 1.0e4
    equality_rtol: float = 1.0e-8
    curvature_samples: int = 256
    cross_check_rtol: float = 1.0e-5

    def as_dict(self) -> dict:
        return {
            "grid_points": self.grid_points,
            "r_max_factor": self.r_max_factor,
            "equality_rtol": self.equality_rtol,
            "curvature_samples": self.curvature_samples,
            "cross_check_rtol": self.cross_check_rtol,
        }


@dataclass(frozen=True)
class MetricSpec:
    kind: str
    mass: float = 0.0
    epsilon: float = 0.0
    scale: float = 0.0
    spin: bool = True
    radii: tuple = ()
    values: tuple = ()

    def build(self, n: int, r0: float) -> RadialMetric:
        if self.kind == "schwarzschild":
            profile = SchwarzschildProfile(n, self.mass)
        elif self.kind == "perturbed":
            profile = PerturbedProfile(n, self.mass, self.epsilon, self.scale)
        elif self.kind == "tabulated":
            profile = TabulatedProfile(n, np.asarray(self.radii), np.asarray(self.values))
        else:
            raise ScenarioParseError(f"unknown metric kind {self.kind!r}")
        return RadialMetric(n, r0, profile, self.spin)


@dataclass(frozen=True)
class Scenario:
    name: str
    dimension: int
    boundary_r0: float
    metric: MetricSpec
    checks: tuple
    numerics: Numerics = Numerics()
    sweep_parameter: str | None = None
    sweep_values: tuple = ()

    def points(self):
        """Sweep points as (index, parameter overrides) pairs."""
        if self.sweep_parameter is None:
            return [(0, {})]
        return [(i, {self.sweep_parameter: v}) for i, v in enumerate(self.sweep_values)]

    def materialize(self, overrides: dict) -> tuple[float, MetricSpec]:
        r0 = overrides.get("boundary_r0", self.boundary_r0)
        metric = self.metric
        for key in ("mass", "epsilon", "scale"):
            if key in overrides:
                metric = replace(metric, **{key: overrides[key]})
        return r0, metric


@dataclass
class Report:
    scenario: str
    provenance: dict
    records: list
    wall_time_s: float = 0.0

    @property
    def failed_assertions(self) -> list:
        out = []
        for record in self.records:
            for check, payload in record["checks"].items():
                for a in payload["assertions"]:
                    if not a["passed"]:
                        out.append((record["point"]["index"], check, a["name"]))
        return out

    def data_section(self) -> dict:
        """The deterministic part of the report (what json emission uses)."""
        return {
            "scenario": self.scenario,
            "provenance": self.provenance,
            "records": self.records,
        }


def _require(table: dict, key: str, kinds, where: str):
    if key not in table:
        raise ScenarioParseError(f"missing field {key!r} in {where}")
    value = table[key]
    if not isinstance(value, kinds):
        raise ScenarioParseError(
            f"field {key!r} in {where} has type {type(value).__name__}"
        )
    return value


def load_scenario(path) -> Scenario:
    """Parse and validate a scenario file."""
    try:
        with open(path, "rb") as fh:
            raw = tomllib.load(fh)
    except FileNotFoundError as exc:
        raise ScenarioParseError(f"scenario file not found: {path}") from exc
    except tomllib.TOMLDecodeError as exc:
        raise ScenarioParseError(f"malformed scenario file {path}: {exc}") from exc

    name = _require(raw, "name", str, "scenario")
    dimension = _require(raw, "dimension", int, "scenario")
    if dimension < 3:
        raise ScenarioParseError("dimension must be >= 3")
    r0 = float(_require(raw, "boundary_r0", (int, float), "scenario"))
    checks = tuple(_require(raw, "checks", list, "scenario"))
    for check in checks:
        if check not in KNOWN_CHECKS:
            raise ScenarioParseError(
                f"unknown check {check!r}; known: {', '.join(KNOWN_CHECKS)}"
            )

    mtab = _require(raw, "metric", dict, "scenario")
    kind = _require(mtab, "kind", str, "[metric]")
    if kind not in ("schwarzschild", "perturbed", "tabulated"):
        raise ScenarioParseError(f"unknown metric kind {kind!r}")
    metric = MetricSpec(
        kind=kind,
        mass=float(mtab.get("mass", 0.0)),
        epsilon=float(mtab.get("epsilon", 0.0)),
        scale=float(mtab.get("scale", 0.0)),
        spin=bool(mtab.get("spin", True)),
        radii=tuple(mtab.get("radii", ())),
        values=tuple(mtab.get("values", ())),
    )
    if kind == "tabulated" and (not metric.radii or not metric.values):
        raise ScenarioParseError("tabulated metric needs 'radii' and 'values' arrays")

    ntab = raw.get("numerics", {})
    if not isinstance(ntab, dict):
        raise ScenarioParseError("[numerics] must be a table")
    numerics = Numerics(
        grid_points=int(ntab.get("grid_points", Numerics.grid_points)),
        r_max_factor=float(ntab.get("r_max_factor", Numerics.r_max_factor)),
        equality_rtol=float(ntab.get("equality_rtol", Numerics.equality_rtol)),
        curvature_samples=int(ntab.get("curvature_samples", Numerics.curvature_samples)),
        cross_check_rtol=float(ntab.get("cross_check_rtol", Numerics.cross_check_rtol)),
    )

    sweep_parameter = None
    sweep_values = ()
    if "sweep" in raw:
        stab = _require(raw, "sweep", dict, "scenario")
        sweep_parameter = _require(stab, "parameter", str, "[sweep]")
        if sweep_parameter not in SWEEPABLE:
            raise ScenarioParseError(
                f"sweep parameter {sweep_parameter!r} not one of {SWEEPABLE}"
            )
        sweep_values = tuple(float(v) for v in _require(stab, "values", list, "[sweep]"))
        if not sweep_values:
            raise ScenarioParseError("[sweep] values must be non-empty")

    return Scenario(
        name=name,
        dimension=dimension,
        boundary_r0=r0,
        metric=metric,
        checks=checks,
        numerics=numerics,
        sweep_parameter=sweep_parameter,
        sweep_values=sweep_values,
    )


def _assertion(name: str, passed: bool, detail: str = "") -> dict:
    return {"name": name, "passed": bool(passed), "detail": detail}


def _finite(x):
    """Floats for the report; non-finite becomes None for JSON."""
    if x is None:
        return None
    x = float(x)
    return x if np.isfinite(x) else None


def _criticality_record(report) -> dict:
    return {
        "Lambda": _finite(report.Lambda),
        "residual": _finite(report.residual),
        "c": _finite(report.c),
        "alpha": _finite(report.alpha),
        "beta": _finite(report.beta),
        "Gamma": _finite(report.Gamma),
        "mass": _finite(report.mass),
        "capacity": _finite(report.capacity),
        "rhs_thm1": _finite(report.rhs_thm1),
        "rhs_cor1": _finite(report.rhs_cor1),
        "equality_gap": _finite(report.equality_gap),
        "scalar_min": _finite(report.scalar_min),
        "verdict": report.verdict.value,
    }


def _check_theorem1(metric: RadialMetric, num: Numerics, corollary: bool = False) -> dict:
    sol_q = capacity_quadrature(metric)
    sol_v = capacity_variational(
        metric, GridSpec(points=num.grid_points, r_max_factor=num.r_max_factor)
    )
    report = evaluate_theorem1(
        metric,
        sol=sol_q,
        equality_rtol=num.equality_rtol,
        curvature_samples=num.curvature_samples,
    )
    boundary = boundary_geometry(metric)

    assertions = []
    cross = abs(sol_q.capacity - sol_v.capacity) / max(1.0, abs(sol_q.capacity))
    assertions.append(
        _assertion(
            "capacity cross-method agreement",
            cross <= num.cross_check_rtol,
            f"|quadrature - variational| = {cross:.3e} (tol {num.cross_check_rtol:g})",
        )
    )
    flux_cap = sol_q.flux_capacity(boundary.area)
    flux_rel = abs(flux_cap - sol_q.capacity) / max(1.0, abs(sol_q.capacity))
    assertions.append(
        _assertion("flux-formula capacity identity", flux_rel <= 1e-8, f"rel dev {flux_rel:.3e}")
    )
    if report.hypotheses_hold:
        rhs_rel = abs(report.rhs_thm1 - report.rhs_cor1) / max(1.0, abs(report.rhs_thm1))
        assertions.append(
            _assertion("rhs theorem/corollary consistency", rhs_rel <= 1e-12, f"rel dev {rhs_rel:.3e}")
        )
        gap_floor = -num.equality_rtol * max(1.0, abs(report.mass))
        assertions.append(
            _assertion(
                "mass-capacity inequality",
                report.equality_gap >= gap_floor,
                f"gap = {report.equality_gap:.6e}",
            )
        )

    record = _criticality_record(report)
    record["capacity_variational"] = _finite(sol_v.capacity)
    record["spin"] = metric.spin
    if corollary:
        record["note"] = "overdetermined-potential form; rhs_cor1 applies"
    return {"record": record, "assertions": assertions}


def _check_theorem2(metric: RadialMetric, num: Numerics) -> dict:
    out = _check_theorem1(metric, num)
    out["record"]["embedding_hypothesis"] = "round sphere: automatic"
    out["record"]["relaxed_pinching"] = metric.n == 3
    return out


def _check_conformal(metric: RadialMetric, num: Numerics) -> dict:
    sol = capacity_quadrature(metric)
    report = evaluate_theorem1(
        metric, sol=sol, equality_rtol=num.equality_rtol,
        curvature_samples=num.curvature_samples,
    )
    assertions = []
    if not report.hypotheses_hold:
        return {
            "record": {"skipped": "hypotheses violated", "verdict": report.verdict.value},
            "assertions": assertions,
        }

    state = conformal_transform(metric, sol)
    mass = report.mass
    m_bar = conformal_mass(state, rtol=1e-6)
    m_bar_expected = mass - (1.0 - state.alpha) * sol.capacity
    shift_dev = abs(m_bar - m_bar_expected) / max(1.0, abs(mass))
    assertions.append(
        _assertion("conformal mass shift", shift_dev <= 1e-6, f"rel dev {shift_dev:.3e}")
    )

    tb = transformed_boundary(state)
    h_dev = abs(tb["H_bar_closed"] - tb["H_bar_direct"]) / max(1.0, abs(tb["H_bar_closed"]))
    s_dev = abs(tb["S_bar_closed"] - tb["S_bar_direct"]) / max(1.0, abs(tb["S_bar_closed"]))
    assertions.append(
        _assertion("transformed mean curvature closed vs direct", h_dev <= 1e-8, f"rel dev {h_dev:.3e}")
    )
    assertions.append(
        _assertion("transformed scalar curvature closed vs direct", s_dev <= 1e-8, f"rel dev {s_dev:.3e}")
    )

    if state.alpha_sq_c >= 1.0 - BRANCH_ATOL:
        assertions.append(
            _assertion(
                "matched condition implies Hirsch-Miao condition",
                hm_condition(metric, sol, state.alpha),
                f"alpha^2 c = {state.alpha_sq_c:.12g}",
            )
        )
    pmt_ok = None
    if state.alpha_sq_c <= 1.0 + BRANCH_ATOL:
        pmt_ok = bool(
            verify_pmt_hypotheses(state, curvature_samples=num.curvature_samples)
        )
        assertions.append(
            _assertion("positive-mass hypotheses on conformal metric", pmt_ok, "")
        )

    record = {
        "alpha": _finite(state.alpha),
        "c": _finite(state.c),
        "Lambda": _finite(state.Lambda),
        "alpha_sq_c": _finite(state.alpha_sq_c),
        "branch": state.branch.value,
        "conformal_mass": _finite(m_bar),
        "conformal_mass_expected": _finite(m_bar_expected),
        "H_bar_closed": _finite(tb["H_bar_closed"]),
        "H_bar_direct": _finite(tb["H_bar_direct"]),
        "S_bar_closed": _finite(tb["S_bar_closed"]),
        "S_bar_direct": _finite(tb["S_bar_direct"]),
        "pmt_hypotheses": pmt_ok,
    }
    if abs(m_bar) <= 1e-6 * max(1.0, abs(mass)):
        rec = reconstruct_from_state(state)
        record["equality_case"] = {
            "reconstructed_mass": _finite(rec.m),
            "reconstructed_r0": _finite(rec.r0),
        }
    return {"record": record, "assertions": assertions}


def _check_static(metric: RadialMetric, spec_kind: str, num: Numerics) -> dict:
    n = metric.n
    assertions = []
    if spec_kind == "schwarzschild":
        mass_param = 2.0 * float(metric.profile.deviation(metric.r0)) * metric.r0 ** (n - 2)
        potential = SchwarzschildStaticPotential(n, mass_param)
    else:
        sol = capacity_quadrature(metric)
        report = evaluate_theorem1(metric, sol=sol, curvature_samples=num.curvature_samples)
        if not report.hypotheses_hold or not np.isfinite(report.alpha):
            return {
                "record": {"skipped": "hypotheses violated"},
                "assertions": assertions,
            }
        from .profiles import AffineOfFunction

        potential = AffineOfFunction(1.0, report.alpha - 1.0, sol.phi)

    triple = StaticTriple(metric, potential)
    residuals = static_residuals(triple)
    record = {
        "hessian_residual": _finite(residuals.hessian_residual),
        "laplace_residual": _finite(residuals.laplace_residual),
        "smarr_mass": _finite(residuals.smarr_mass),
        "expansion_mass": _finite(residuals.expansion_mass),
        "is_static": residuals.is_static(),
        "alpha_boundary": _finite(triple.alpha_boundary),
    }
    if not residuals.is_static():
        record["pipeline_status"] = "not static: rigidity pipeline skipped"
        return {"record": record, "assertions": assertions}

    pred, act = lemma1_normal_derivative(triple)
    lemma_dev = abs(pred - act) / max(1.0, abs(pred))
    assertions.append(
        _assertion("equipotential normal-derivative identity", lemma_dev <= 1e-8, f"rel dev {lemma_dev:.3e}")
    )
    adm = adm_mass(metric)
    for label, value in (("smarr", residuals.smarr_mass), ("expansion", residuals.expansion_mass)):
        dev = abs(value - adm) / max(1.0, abs(adm))
        assertions.append(
            _assertion(f"{label} mass matches ADM mass", dev <= 1e-6, f"rel dev {dev:.3e}")
        )
    try:
        rig = rigidity_pipeline(triple, equality_rtol=num.equality_rtol)
    except (AlphaOutOfRange, ZeroMeanCurvature, NotStatic, ValueError) as exc:
        record["pipeline_status"] = f"{type(exc).__name__}: {exc}"
        return {"record": record, "assertions": assertions}
    record["pipeline_status"] = "ok"
    record["rigidity"] = {
        "alpha": _finite(rig.alpha),
        "c": _finite(rig.c),
        "smarr_mass": _finite(rig.smarr_mass),
        "boundary_integral_mass": _finite(rig.boundary_integral_mass),
        "capacity": _finite(rig.capacity),
        "equality_gap": _finite(rig.equality_gap),
        "reconstructed_mass": _finite(rig.reconstructed.m),
        "reconstructed_r0": _finite(rig.reconstructed.r0),
    }
    bnd_dev = abs(rig.boundary_integral_mass - rig.smarr_mass) / max(1.0, abs(rig.smarr_mass))
    assertions.append(
        _assertion("Smarr vs boundary-integral mass", bnd_dev <= 1e-8, f"rel dev {bnd_dev:.3e}")
    )
    assertions.append(
        _assertion(
            "rigidity equality m = (1-alpha) C",
            abs(rig.equality_gap) <= num.equality_rtol * max(1.0, abs(rig.smarr_mass)),
            f"gap = {rig.equality_gap:.3e}",
        )
    )
    return {"record": record, "assertions": assertions}


def _check_appendix(metric: RadialMetric, num: Numerics) -> dict:
    n = metric.n
    boundary = boundary_geometry(metric)
    dirac = dirac_eigenvalue_check(boundary, n)
    cone = conical_fillin(boundary, n)
    H0, residual = euclidean_gauss_identity(boundary, n)

    hypothesis = boundary.scalar_curvature >= (n - 2) / (n - 1) * boundary.mean_curvature**2
    sign = cone.scalar_sign
    assertions = [
        _assertion(
            "eigenvalue criterion matches pinching hypothesis",
            dirac.herzlich_ok == bool(hypothesis or abs(sign) < 1e-12),
            f"herzlich_ok={dirac.herzlich_ok}, hypothesis={bool(hypothesis)}",
        ),
        _assertion(
            "cone scalar curvature sign matches hypothesis",
            (sign >= 0) == bool(hypothesis),
            f"sign={sign:g}",
        ),
        _assertion(
            "cone slice matches boundary",
            abs(cone.slice_radius - boundary.induced_radius) <= 1e-12 * boundary.induced_radius
            and abs(cone.slice_mean_curvature - boundary.mean_curvature)
            <= 1e-12 * abs(boundary.mean_curvature),
            "",
        ),
        _assertion("Gauss identity residual", residual <= 1e-12, f"residual {residual:.3e}"),
    ]
    record = {
        "lambda1": _finite(dirac.lambda1),
        "friedrich_bound": _finite(dirac.friedrich_bound),
        "herzlich_ok": dirac.herzlich_ok,
        "cone_r0": _finite(cone.cone_r0),
        "cone_scalar_at_slice": _finite(cone.scalar_curvature(cone.cone_r0)),
        "euclidean_H0": _finite(H0),
        "boundary_H": _finite(boundary.mean_curvature),
    }
    return {"record": record, "assertions": assertions}


def _run_point(scenario: Scenario, index: int, overrides: dict) -> dict:
    r0, mspec = scenario.materialize(overrides)
    metric = mspec.build(scenario.dimension, r0)
    num = scenario.numerics

    point = {"index": index, "boundary_r0": r0, "kind": mspec.kind, "mass": mspec.mass}
    if mspec.kind == "perturbed":
        point["epsilon"] = mspec.epsilon
        point["scale"] = mspec.scale

    checks = {}
    for check in scenario.checks:
        if check == "Theorem1":
            checks[check] = _check_theorem1(metric, num)
        elif check == "Theorem2":
            checks[check] = _check_theorem2(metric, num)
        elif check == "Corollary1":
            checks[check] = _check_theorem1(metric, num, corollary=True)
        elif check == "ConformalProof":
            checks[check] = _check_conformal(metric, num)
        elif check == "StaticVacuum":
            checks[check] = _check_static(metric, mspec.kind, num)
        elif check == "AppendixA":
            checks[check] = _check_appendix(metric, num)
    return {"point": point, "checks": checks}


def run_scenario(path, jobs: int = 1) -> Report:
    """Execute a scenario file and return its report.

    Raises ScenarioParseError for malformed input, NumericsError
    subclasses when a solver fails, and CheckFailure (carrying the
    report) when an invariant assertion fails.
    """
    scenario = load_scenario(path)
    started = time.perf_counter()
    points = scenario.points()

    if jobs > 1 and len(points) > 1:
        with concurrent.futures.ThreadPoolExecutor(max_workers=jobs) as pool:
            futures = [
                pool.submit(_run_point, scenario, idx, overrides)
                for idx, overrides in points
            ]
            records = [f.result() for f in futures]
    else:
        records = [_run_point(scenario, idx, overrides) for idx, overrides in points]

    records.sort(key=lambda rec: rec["point"]["index"])
    report = Report(
        scenario=scenario.name,
        provenance={
            "tool": "masscap",
            "version": __version__,
            "dimension": scenario.dimension,
            "numerics": scenario.numerics.as_dict(),
            "checks": list(scenario.checks),
        },
        records=records,
        wall_time_s=time.perf_counter() - started,
    )
    failed = report.failed_assertions
    if failed:
        summary = "; ".join(f"point {i}: {chk}: {name}" for i, chk, name in failed[:5])
        raise CheckFailure(f"{len(failed)} assertion(s) failed: {summary}", report=report)
    return report


# ---------------------------------------------------------------------------
# Serialization
# ---------------------------------------------------------------------------


def _json_scalar(value) -> str:
    if value is None:
        return "null"
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, int):
        return str(value)
    if isinstance(value, float):
        if not np.isfinite(value):
            return "null"
        return format(value + 0.0, ".17g")
    if isinstance(value, str):
        out = value.replace("\\", "\\\\").replace('"', '\\"')
        return f'"{out}"'
    raise TypeError(f"cannot serialize {type(value).__name__}")


def _json_render(obj, indent: int) -> str:
    pad = "  " * indent
    inner = "  " * (indent + 1)
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        rows = [f'{inner}{_json_scalar(str(k))}: {_json_render(v, indent + 1)}' for k, v in obj.items()]
        return "{\n" + ",\n".join(rows) + f"\n{pad}}}"
    if isinstance(obj, (list, tuple)):
        if not obj:
            return "[]"
        rows = [f"{inner}{_json_render(v, indent + 1)}" for v in obj]
        return "[\n" + ",\n".join(rows) + f"\n{pad}]"
    return _json_scalar(obj)


def to_canonical_json(obj) -> str:
    """Deterministic JSON: insertion key order, floats at 17 significant
    digits, non-finite numbers as null."""
    return _json_render(obj, 0) + "\n"


def _csv_cell(value) -> str:
    if value is None:
        return ""
    if isinstance(value, float):
        return format(value + 0.0, ".17g")
    return str(value)


def _emit_csv(report: Report) -> str:
    lines = [CSV_HEADER]
    for record in report.records:
        crit = None
        for check in ("Theorem1", "Theorem2", "Corollary1"):
            if check in record["checks"]:
                payload = record["checks"][check]["record"]
                if "verdict" in payload:
                    crit = payload
                    break
        point = record["point"]
        if crit is None:
            crit = {}
        row = [
            report.scenario,
            str(report.provenance["dimension"]),
            _csv_cell(point.get("mass")),
            _csv_cell(point.get("boundary_r0")),
            _csv_cell(crit.get("capacity")),
            _csv_cell(crit.get("mass")),
            _csv_cell(crit.get("Lambda")),
            _csv_cell(crit.get("c")),
            _csv_cell(crit.get("alpha")),
            _csv_cell(crit.get("rhs_thm1")),
            _csv_cell(crit.get("equality_gap")),
            crit.get("verdict", ""),
        ]
        lines.append(",".join(row))
    return "\n".join(lines) + "\n"


def _emit_text(report: Report) -> str:
    lines = [f"scenario: {report.scenario}"]
    for record in report.records:
        point = record["point"]
        for check, payload in record["checks"].items():
            ok = all(a["passed"] for a in payload["assertions"])
            status = "PASS" if ok else "FAIL"
            verdict = payload["record"].get("verdict", "")
            suffix = f" verdict={verdict}" if verdict else ""
            lines.append(
                f"point {point['index']} (r0={point['boundary_r0']:g}) {check}: {status}{suffix}"
            )
            for a in payload["assertions"]:
                if not a["passed"]:
                    lines.append(f"  FAILED {a['name']}: {a['detail']}")
    lines.append(f"wall time: {report.wall_time_s:.3f} s")
    return "\n".join(lines) + "\n"


def emit(report: Report, format: str = "json") -> bytes:
    """Serialize a report deterministically (json/csv exclude wall time)."""
    if format == "json":
        return to_canonical_json(report.data_section()).encode()
    if format == "csv":
        return _emit_csv(report).encode()
    if format == "text":
        return _emit_text(report).encode()
    raise ValueError(f"unknown format {format!r}")
