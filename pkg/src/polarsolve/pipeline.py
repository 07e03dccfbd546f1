"""End-to-end solving, from hypothesis checks to the serialized report."""

from __future__ import annotations

import json
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Sequence

from .circuit import expand_circuit, parse_circuit
from .groebner import groebner, krull_dimension, multivariate_gcd
from .polar import (
    CoordinateChange,
    DegreeReport,
    MinorSelection,
    PolarSystem,
    SystemInput,
    bezout_report,
    build_coordinate_change,
    cauchy_binet_D,
    enumerate_charts,
    jacobian,
    polar_system,
    transform_system,
)
from .ratpoly import MultiPoly, UniPoly, parse_poly
from .realroots import RealSolutionSet, real_points
from .zerodim import (
    InconsistentCharts,
    NotZeroDimensional,
    SeparationError,
    UnivariateRepresentation,
    ZeroDimIdeal,
    candidate_forms,
    combine_charts,
    localize,
    quotient_basis,
    univariate_representation,
    verify_localization,
    verify_membership,
)

VERIFIED, FAILED, UNCHECKED = "verified", "failed", "unchecked"
DEFAULT_EPS = Fraction(1, 1000)


class InputError(ValueError):
    pass


class RetryLimitExceeded(RuntimeError):
    def __init__(self, message: str, diagnostics: list[str]):
        super().__init__(message)
        self.diagnostics = diagnostics


class HypothesisFailure(RuntimeError):
    pass


class ArithmeticBug(AssertionError):
    """An exact certificate that must hold by construction did not."""


@dataclass(frozen=True)
class JobConfig:
    input_path: str | None = None
    coords: str = "random"
    seed: int = 0
    retry_limit: int = 5
    eps: Fraction = DEFAULT_EPS
    chart_filter: MinorSelection | None = None
    output_format: str = "json"
    workers: int = 1
    assert_compact: bool = False
    strict: bool = False

    def __post_init__(self):
        if self.coords not in ("identity", "random"):
            raise ValueError(f"coords must be 'identity' or 'random', got {self.coords!r}")
        if self.retry_limit < 1:
            raise ValueError("retry_limit must be at least 1")
        object.__setattr__(self, "eps", Fraction(self.eps))
        if self.eps <= 0:
            raise ValueError("eps must be positive")
        if self.output_format not in ("json", "text"):
            raise ValueError(f"unknown output format {self.output_format!r}")
        if self.workers < 1:
            raise ValueError("workers must be at least 1")


# ---------------------------------------------------------------- input

def system_from_dict(data: dict, base: Path | None = None, degree_cap: int = 64) -> SystemInput:
    if "circuit" in data:
        path = Path(data["circuit"])
        if base is not None and not path.is_absolute():
            path = base / path
        try:
            circ = parse_circuit(path.read_text(), data.get("n"))
        except OSError as exc:
            raise InputError(f"cannot read circuit file {path}: {exc}") from exc
        polys = expand_circuit(circ, degree_cap)
        return SystemInput(circ.nvars, data.get("p", len(polys)), polys)
    try:
        n, p, texts = data["n"], data["p"], data["polynomials"]
    except KeyError as exc:
        raise InputError(f"input is missing the field {exc}") from exc
    return SystemInput(n, p, [parse_poly(t, n) for t in texts])


def load_input(path: str | Path) -> SystemInput:
    path = Path(path)
    try:
        data = json.loads(path.read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise InputError(f"cannot read {path}: {exc}") from exc
    return system_from_dict(data, path.parent)


# ----------------------------------------------------------- hypotheses

@dataclass
class HypothesisReport:
    regular_sequence: str = UNCHECKED
    radical_intermediate_ideals: list[str] = field(default_factory=list)
    smooth_on_reals: str = UNCHECKED
    generic_position: str = "deferred"
    compactness: str = "asserted-by-user"
    details: list[str] = field(default_factory=list)

    @property
    def any_failed(self) -> bool:
        return FAILED in (self.regular_sequence, self.smooth_on_reals,
                          *self.radical_intermediate_ideals)

    def as_dict(self) -> dict:
        return {
            "regular_sequence": self.regular_sequence,
            "radical_intermediate_ideals": list(self.radical_intermediate_ideals),
            "smooth_on_reals": self.smooth_on_reals,
            "generic_position": self.generic_position,
            "compactness": self.compactness,
            "details": list(self.details),
        }


def _squarefree_status(f: MultiPoly) -> str:
    g = f
    for j in range(1, f.nvars + 1):
        if g.is_constant():
            break
        g = multivariate_gcd(g, f.diff(j))
    return VERIFIED if g.is_constant() else FAILED


def _real_points_of(gens: Sequence[MultiPoly], n: int) -> RealSolutionSet | None:
    ideal = ZeroDimIdeal(tuple(gens), n, n)
    ring = quotient_basis(ideal)
    for form in candidate_forms(n):
        try:
            return real_points(univariate_representation(ideal, form, ring))
        except SeparationError:
            continue
    return None


def check_hypotheses(s: SystemInput) -> HypothesisReport:
    """Best-effort checks; never raises on mathematical grounds."""
    rep = HypothesisReport()
    # (i) each f_k cuts the dimension by exactly one
    status = VERIFIED
    for k in range(1, s.p + 1):
        dim = krull_dimension(groebner(s.polys[:k]))
        if dim != s.n - k:
            status = FAILED
            rep.details.append(f"dim V(f1..f{k}) = {dim}, expected {s.n - k}")
            break
    rep.regular_sequence = status
    # (ii) radicality: squarefreeness settles k = 1
    first = _squarefree_status(s.polys[0])
    if first == FAILED:
        rep.details.append("f1 is not squarefree")
    rep.radical_intermediate_ideals = [first] + [UNCHECKED] * (s.p - 1)
    # (iv) no real point of V(f) where the Jacobian drops rank
    gens = list(s.polys) + [cauchy_binet_D(s)]
    gb = groebner(gens)
    dim = krull_dimension(gb) if gb else s.n
    if dim == -1:
        rep.smooth_on_reals = VERIFIED
    elif dim == 0:
        sols = _real_points_of(gb, s.n)
        if sols is None:
            rep.details.append("singular locus: no separating form among the candidates")
        elif sols.empty_certificate:
            rep.smooth_on_reals = VERIFIED
        else:
            rep.smooth_on_reals = FAILED
            rep.details.append(f"{len(sols.points)} real singular point(s)")
    else:
        rep.details.append(f"singular locus has dimension {dim}; smoothness unchecked")
    return rep


# ---------------------------------------------------------------- solve

@dataclass
class ChartResult:
    chart: MinorSelection
    form_index: int
    representation: UnivariateRepresentation
    quotient_dimension: int


def solve_chart(s: SystemInput, chart: MinorSelection, start: int = 0) -> ChartResult:
    """Representation of one chart with the first separating candidate from ``start``."""
    ps = polar_system(s, chart, s.n - s.p)
    ideal = localize(ps)
    ring = quotient_basis(ideal)
    forms = candidate_forms(s.n)
    for idx in range(start, len(forms)):
        try:
            rep = univariate_representation(ideal, forms[idx], ring)
        except SeparationError:
            continue
        _certify_chart(ps, rep)
        return ChartResult(chart, idx, rep, ring.dimension)
    raise SeparationError(f"no candidate linear form separates chart {chart}")


def _solve_chart_task(args):
    return solve_chart(*args)


def _certify_chart(ps: PolarSystem, rep: UnivariateRepresentation):
    if not verify_membership(rep, ps.equations):
        raise ArithmeticBug(f"chart {ps.chart}: equations do not vanish on the representation")
    if not verify_localization(rep, ps.localization_g):
        raise ArithmeticBug(f"chart {ps.chart}: localization vanishes at a solution")


def active_charts(s: SystemInput, chart_filter: MinorSelection | None = None) -> list[MinorSelection]:
    if chart_filter is not None:
        return [chart_filter]
    return [c for c in enumerate_charts(s.n, s.p)
            if polar_system(s, c, s.n - s.p).preserves_flag]


def _run_charts(s: SystemInput, charts, workers: int) -> list[ChartResult]:
    tasks = [(s, c, 0) for c in charts]
    if workers > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_solve_chart_task, tasks))
    else:
        results = [_solve_chart_task(t) for t in tasks]
    # every chart must use the same separating form before combining
    while True:
        target = max(r.form_index for r in results)
        if all(r.form_index == target or r.representation.is_empty for r in results):
            break
        results = [r if r.form_index == target or r.representation.is_empty
                   else solve_chart(s, r.chart, target) for r in results]
    form = candidate_forms(s.n)[target]
    return [r if r.form_index == target else
            ChartResult(r.chart, target, UnivariateRepresentation.empty(s.n, form),
                        r.quotient_dimension) for r in results]


def back_map(rep: UnivariateRepresentation, change: CoordinateChange) -> UnivariateRepresentation:
    """Parametrization in original coordinates: ``P = A * p~`` reduced mod ``q``."""
    if change.is_identity:
        return rep
    A = change.matrix_A
    params = []
    for r in range(change.n):
        acc = UniPoly()
        for c in range(change.n):
            if A[r, c]:
                acc = acc + rep.params[c] * A[r, c]
        params.append(acc % rep.q if rep.q.degree() > 0 else acc)
    return UnivariateRepresentation(rep.q, tuple(params), rep.separating_form)


@dataclass
class RunReport:
    system: SystemInput
    hypothesis: HypothesisReport
    representation: UnivariateRepresentation
    solutions: RealSolutionSet
    charts_used: int
    retries: int
    seed: int | None
    degrees: DegreeReport
    degree_bounds_hold: dict
    complete: bool
    compact_asserted: bool
    chart_degrees: dict = field(default_factory=dict)
    timings: dict = field(default_factory=dict)

    @property
    def empty(self) -> bool:
        return self.solutions.empty_certificate


def solve(cfg: JobConfig, system: SystemInput | None = None) -> RunReport:
    timings: dict[str, float] = {}
    t0 = time.perf_counter()
    s = system if system is not None else load_input(cfg.input_path)
    timings["load"] = time.perf_counter() - t0

    t0 = time.perf_counter()
    hyp = check_hypotheses(s)
    timings["hypotheses"] = time.perf_counter() - t0
    if cfg.strict and hyp.any_failed:
        raise HypothesisFailure("; ".join(hyp.details) or "hypothesis check failed")

    diagnostics: list[str] = []
    t0 = time.perf_counter()
    for attempt in range(cfg.retry_limit):
        if attempt == 0 and cfg.coords == "identity":
            seed = None
        else:
            seed = cfg.seed + attempt
        change = build_coordinate_change(s.n, s.p, seed)
        st = transform_system(s, change)
        try:
            charts = active_charts(st, cfg.chart_filter)
            results = _run_charts(st, charts, cfg.workers)
            local = combine_charts([r.representation for r in results])
        except (NotZeroDimensional, SeparationError, InconsistentCharts) as exc:
            label = "identity" if seed is None else f"seed {seed}"
            diagnostics.append(f"attempt {attempt} ({label}): {type(exc).__name__}: {exc}")
            continue
        break
    else:
        raise RetryLimitExceeded(f"no generic coordinates found in {cfg.retry_limit} attempt(s)",
                                 diagnostics)
    timings["charts"] = time.perf_counter() - t0
    hyp.generic_position = "verified-a-posteriori"
    hyp.details.extend(diagnostics)

    t0 = time.perf_counter()
    rep = back_map(local, change)
    if not verify_membership(rep, s.polys):
        raise ArithmeticBug("input polynomials do not vanish on the back-mapped representation")
    timings["certificate"] = time.perf_counter() - t0

    t0 = time.perf_counter()
    sols = real_points(rep, cfg.eps)
    timings["real_roots"] = time.perf_counter() - t0

    degrees = bezout_report(st, jac=jacobian(st))
    bounds = {"D_n_minus_p": rep.degree <= degrees.bezout_D_top,
              "crude": rep.degree <= degrees.crude_bound}
    complete = cfg.chart_filter is None and not hyp.any_failed
    return RunReport(
        system=s, hypothesis=hyp, representation=rep, solutions=sols,
        charts_used=len(results), retries=attempt, seed=seed, degrees=degrees,
        degree_bounds_hold=bounds, complete=complete, compact_asserted=cfg.assert_compact,
        chart_degrees={str(r.chart): r.representation.degree for r in results},
        timings=timings,
    )


# --------------------------------------------------------------- output

def rat(x) -> str:
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


def _coeffs(p: UniPoly) -> list[str]:
    return [rat(c) for c in p.coeffs]


def report_dict(r: RunReport) -> dict:
    rep = r.representation
    return {
        "empty": r.empty,
        "complete": r.complete,
        "empty_conclusion": (
            None if not r.empty else
            "S0 is empty" if r.compact_asserted and r.complete else
            "S0 is empty provided the hypotheses hold"),
        "n": r.system.n,
        "p": r.system.p,
        "q": _coeffs(rep.q),
        "params": [_coeffs(pk) for pk in rep.params],
        "separating_form": [rat(c) for c in rep.separating_form],
        "points": [{"interval": [rat(a) for a in pt.root_interval],
                    "thom": list(pt.thom_code),
                    "box": [[rat(lo), rat(hi)] for lo, hi in pt.box()]}
                   for pt in r.solutions.points],
        "hypotheses": r.hypothesis.as_dict(),
        "compactness_acknowledged": r.compact_asserted,
        "degrees": {**r.degrees.as_dict(), "deg_q": rep.degree,
                    "bounds_hold": dict(r.degree_bounds_hold)},
        "charts_used": r.charts_used,
        "chart_degrees": dict(r.chart_degrees),
        "membership_certificate": True,
        "seed": r.seed,
        "retries": r.retries,
    }


def _fmt_float(x: Fraction) -> str:
    return f"{float(x):.6g}"


def report_text(r: RunReport) -> str:
    rep = r.representation
    lines = [f"system: n={r.system.n}, p={r.system.p}"]
    lines += [f"  f{k} = {f}" for k, f in enumerate(r.system.polys, start=1)]
    hyp = r.hypothesis
    lines.append(f"hypotheses: regular sequence {hyp.regular_sequence}, radical "
                 f"{'/'.join(hyp.radical_intermediate_ideals)}, smooth on reals "
                 f"{hyp.smooth_on_reals}, generic position {hyp.generic_position}")
    lines += [f"  note: {d}" for d in hyp.details]
    coords = "identity" if r.seed is None else f"random (seed {r.seed})"
    lines.append(f"coordinates: {coords}, retries {r.retries}, charts {r.charts_used}")
    lines.append(f"q(T) = {rep.q}   (degree {rep.degree})")
    for k, pk in enumerate(rep.params, start=1):
        lines.append(f"  X{k} = {pk}")
    d = r.degrees
    lines.append(f"degree bounds: D*c = {d.bezout_D_top}, crude = {d.crude_bound}, "
                 f"hold = {all(r.degree_bounds_hold.values())}")
    if r.empty:
        lines.append("no real solutions: " + report_dict(r)["empty_conclusion"])
    else:
        lines.append(f"{len(r.solutions.points)} real point(s):")
        for pt in r.solutions.points:
            box = ", ".join(f"[{_fmt_float(lo)}, {_fmt_float(hi)}]" for lo, hi in pt.box())
            lines.append(f"  thom {list(pt.thom_code)}  box {box}")
    return "\n".join(lines) + "\n"


def emit_report(r: RunReport, fmt: str = "json") -> str:
    if fmt == "json":
        return json.dumps(report_dict(r), indent=2, sort_keys=True) + "\n"
    if fmt == "text":
        return report_text(r)
    raise ValueError(f"unknown format {fmt!r}")
