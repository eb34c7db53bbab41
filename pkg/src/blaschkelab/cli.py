"""Scenario-driven command line: load TOML configurations, run verification
suites, and emit machine-readable reports.

Configs hold an array of [[scenario]] tables.  Complex numbers are written
as [re, im] pairs (a bare number means a real), angles are radians.  Every
run writes at most two files into --out-dir: <subcommand>_report.json with
the full result objects and <subcommand>_summary.csv with one line per
check (columns scenario, mode, lhs, rhs, ratio, pass).  Output bytes are a
pure function of the config file and the seed: no timestamps, no ordering
ambiguity, floats rendered by repr.

Exit codes: 0 when every check passed, 2 when at least one failed, 3 when a
scenario was rejected by a hypothesis gate, 4 on unreadable config, schema
violations, or report I/O failures.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, fields as dataclass_fields, is_dataclass, replace
from typing import Callable, Optional, Union

import numpy as np

try:
    import tomllib
except ModuleNotFoundError:
    import tomli as tomllib

from .errors import BlaschkeLabError, ConfigError, ScenarioRejectedError
from .funcs import (
    AnalyticFunctionSpec,
    GrowthBound,
    make_blaschke_product,
    make_constant,
    make_growth_function,
    multiply,
)
from .green import FieldSpec, green_identity_report
from .lemmas import (
    continuity_probe,
    halfdisc_sign,
    limit_sum_check,
    remark_change_of_variables,
    substitution_check,
    substitution_check_torus,
    zf17_bound,
)
from .nevan import (
    VERIFICATION_MODES,
    TheoremScenario,
    norm_p_positive,
    norm_p_zero,
    norm_p_zero_mixed,
    threshold_comparison,
    verify_theorem,
)
from .quad import QuadratureConfig, geometric_s_grid
from .weights import (
    ClosedArcSet,
    MixedWeightSpec,
    RationalWeightSpec,
    eval_R_modulus,
    eval_mixed,
)
from .zeros import Region, locate_zeros

__all__ = ["Scenario", "build_function", "build_weight", "load_config", "main"]

SCHEMA_VERSION = 1

# one self-contained sentence per check, embedded verbatim in every report
# row so a report can be read without the config or the code at hand
STATEMENTS = {
    "thm_2CF6": (
        "sum over zeros of (1-|a|^2)^{p+1} |R(a)|^2 is at most c times the "
        "sup over dilations s of the area integral of "
        "(1-|z|^2)^{p-1} |R(sz)|^2 log+|f(sz)|"
    ),
    "cor_FN5": (
        "sum over zeros of (1-|a|^2)^{p+1} |R~(a)| is at most c times the "
        "sup over dilations of the norm integral, where R~ raises each "
        "exponent below -p/2 to -p/2 plus kappa"
    ),
    "thm_FP10": (
        "for p = 0 the sum of (1-|a|^2) |R(a)|^2 is at most c times the "
        "boundary log+ integral plus the gamma-weighted area integral, "
        "each supped over dilations"
    ),
    "cor_NF14": (
        "for p = 0 the sum of (1-|a|^2) |R~(a)| with negative exponents "
        "clamped to zero is at most c times the p = 0 norm"
    ),
    "thm_NF7_p0": (
        "for p = 0 the sum of (1-|a|^2) |R'(a)| with exponents "
        "(q_j - 1 + eps) clamped at zero is at most c times the growth "
        "constant of f"
    ),
    "thm_NF7_ppos": (
        "for p > 0 the sum of (1-|a|^2)^{1+p+eps} |R~(a)| with exponents "
        "q_j - 1 repaired above -p/2 is at most c times the growth "
        "constant of f"
    ),
    "mixed_ppos": (
        "for p > 0 the sum of (1-|a|^2)^{1+p} |R(a)|^2 h(a)^q is at most "
        "c times the sup over dilations of the mixed-weight norm integral"
    ),
    "mixed_p0": (
        "for p = 0 the sum of (1-|a|^2) |R(a)|^2 h(a)^q is at most c times "
        "the boundary part plus the gamma-over-h area part of the mixed "
        "norm"
    ),
    "mixed_linfty": (
        "the sum of (1-|a|^2)^{power} |R~(a)| d(a,E)^{(q-alpha+eps)+} is "
        "at most c times the growth or sup-norm constant of f"
    ),
    "zeros": (
        "the argument-principle search certifies exactly the zeros of f in "
        "the region, each located to tolerance"
    ),
    "norm": "the dilation-sup norm integral of the scenario converges",
    "green_identity": (
        "the weighted zero sum equals the area integral of log|f_s| "
        "against the field Laplacian plus the p = 0 boundary term, up to "
        "quadrature error"
    ),
    "substitution_disc": (
        "the (1-|z|^2)^{p-1+delta} weighted log- integral is at most "
        "(1-u^2)^delta u^{-2} times the log- piece plus c(delta,u) times "
        "the log+ piece"
    ),
    "substitution_torus": (
        "for every s <= t0 the (1-|z|^2)^{delta-1} weighted log- integral "
        "is at most c(delta,u) times the boundary log+ sup plus "
        "(1/2delta)(1-u^2)^delta times the boundary log- sup"
    ),
    "halfdisc": (
        "Re(conj(z)(z - eta)) <= 0 exactly when z lies in the closed disc "
        "of radius 1/2 centred at eta/2"
    ),
    "continuity": (
        "the boundary integral of phi log-|f| varies continuously with the "
        "dilation radius: max adjacent jumps shrink under grid refinement"
    ),
    "zf17": (
        "the area integral of (1-|z|^2)^{p-1} over the product of "
        "reciprocal distances to boundary points is finite"
    ),
    "limit_sum": (
        "partial zero sums over growing radii are nondecreasing, the "
        "dilated zero sets match (1/s) Z(f) inside D(0,s), and the full "
        "sum obeys the dilation-sup bound"
    ),
    "remark_change_of_variables": (
        "for p >= 1 the sup over dilations of the norm integral is at most "
        "(1-delta)^{-2} times the undilated integral"
    ),
}


@dataclass(frozen=True)
class Scenario:
    """One config entry: a test function, a weight, the statement
    parameters, and the modes to check."""

    name: str
    function: AnalyticFunctionSpec
    weight: Union[RationalWeightSpec, MixedWeightSpec]
    modes: tuple[str, ...]
    p: float
    delta: float
    epsilon: float
    kappa: float
    alpha_E: Optional[float]
    s_values: tuple[float, ...]
    region_radius: float
    seed: int
    cfg: QuadratureConfig
    lemma_params: dict


def _as_complex(value, where: str) -> complex:
    if isinstance(value, (int, float)) and not isinstance(value, bool):
        return complex(value)
    if (
        isinstance(value, list)
        and len(value) == 2
        and all(isinstance(v, (int, float)) and not isinstance(v, bool) for v in value)
    ):
        return complex(value[0], value[1])
    raise ConfigError(f"{where}: expected a number or [re, im] pair, got {value!r}")


def _as_float(value, where: str) -> float:
    if isinstance(value, (int, float)) and not isinstance(value, bool):
        return float(value)
    raise ConfigError(f"{where}: expected a number, got {value!r}")


def _check_keys(table: dict, allowed: set, where: str) -> None:
    extra = set(table) - allowed
    if extra:
        raise ConfigError(f"{where}: unknown keys {sorted(extra)}")


def build_function(table: dict, where: str = "function") -> AnalyticFunctionSpec:
    """Construct a test function from its config table."""
    if not isinstance(table, dict) or "kind" not in table:
        raise ConfigError(f"{where}: expected a table with a 'kind' key")
    kind = table["kind"]
    try:
        if kind == "constant":
            _check_keys(table, {"kind", "value"}, where)
            return make_constant(_as_complex(table.get("value", 1.0), f"{where}.value"))
        if kind == "blaschke":
            _check_keys(table, {"kind", "zeros", "multiplicities", "normalize"}, where)
            zs = [_as_complex(z, f"{where}.zeros") for z in table.get("zeros", [])]
            ms = table.get("multiplicities", [1] * len(zs))
            if len(ms) != len(zs) or not all(isinstance(m, int) and m >= 1 for m in ms):
                raise ConfigError(f"{where}.multiplicities: need one integer >= 1 per zero")
            return make_blaschke_product(
                list(zip(zs, ms)), normalize=bool(table.get("normalize", True))
            )
        if kind == "growth":
            _check_keys(table, {"kind", "D", "p", "points", "exponents", "zeta"}, where)
            pts = [_as_complex(z, f"{where}.points") for z in table.get("points", [])]
            qs = [_as_float(q, f"{where}.exponents") for q in table.get("exponents", [])]
            if len(pts) != len(qs):
                raise ConfigError(f"{where}: points and exponents must pair up")
            bound = GrowthBound(
                D=_as_float(table.get("D", 1.0), f"{where}.D"),
                p=_as_float(table.get("p", 0.0), f"{where}.p"),
                singular_points=tuple(zip(pts, qs)),
                zeta=_as_complex(table.get("zeta", 1.0), f"{where}.zeta"),
            )
            return make_growth_function(bound)
        if kind == "product":
            _check_keys(table, {"kind", "factors", "renormalize"}, where)
            factors = table.get("factors", [])
            if len(factors) < 2:
                raise ConfigError(f"{where}.factors: need at least two factor tables")
            built = [
                build_function(t, f"{where}.factors[{i}]") for i, t in enumerate(factors)
            ]
            out = built[0]
            for g in built[1:]:
                out = multiply(out, g, renormalize=bool(table.get("renormalize", False)))
            return out
    except ConfigError:
        raise
    except BlaschkeLabError as exc:
        raise ConfigError(f"{where}: {exc}") from exc
    raise ConfigError(f"{where}.kind: unknown function kind {kind!r}")


def build_weight(table: dict, where: str = "weight") -> Union[RationalWeightSpec, MixedWeightSpec]:
    """Construct a weight from its config table."""
    if not isinstance(table, dict) or "kind" not in table:
        raise ConfigError(f"{where}: expected a table with a 'kind' key")
    kind = table["kind"]
    try:
        pts = tuple(_as_complex(z, f"{where}.points") for z in table.get("points", []))
        qs = tuple(_as_float(q, f"{where}.exponents") for q in table.get("exponents", []))
        if len(pts) != len(qs):
            raise ConfigError(f"{where}: points and exponents must pair up")
        rational = RationalWeightSpec(points=pts, exponents=qs)
        if kind == "rational":
            _check_keys(table, {"kind", "points", "exponents"}, where)
            return rational
        if kind == "mixed":
            _check_keys(table, {"kind", "points", "exponents", "arcs", "q_dist"}, where)
            arcs = []
            for arc in table.get("arcs", []):
                if not (isinstance(arc, list) and len(arc) == 2):
                    raise ConfigError(f"{where}.arcs: each arc is a [lo, hi] pair of radians")
                arcs.append((_as_float(arc[0], f"{where}.arcs"), _as_float(arc[1], f"{where}.arcs")))
            return MixedWeightSpec(
                rational=rational,
                closed_set=ClosedArcSet(arcs=tuple(arcs)),
                q_dist=_as_float(table.get("q_dist", 1.0), f"{where}.q_dist"),
            )
    except ConfigError:
        raise
    except BlaschkeLabError as exc:
        raise ConfigError(f"{where}: {exc}") from exc
    raise ConfigError(f"{where}.kind: unknown weight kind {kind!r}")


_SCENARIO_KEYS = {
    "name", "modes", "p", "delta", "epsilon", "kappa", "alpha_E", "s_values",
    "region_radius", "seed", "function", "weight", "quadrature", "lemma",
}
_QUAD_KEYS = {"rel_tol", "abs_tol", "max_cells"}
_LEMMA_KEYS = {
    "delta_exp", "u", "s", "t0", "continuity_t", "continuity_resolution",
    "halfdisc_samples", "zf17_p",
}


def _build_scenario(table: dict, index: int, overrides) -> Scenario:
    where = f"scenario[{index}]"
    if not isinstance(table, dict):
        raise ConfigError(f"{where}: expected a table")
    _check_keys(table, _SCENARIO_KEYS, where)
    if "name" not in table or not isinstance(table["name"], str) or not table["name"]:
        raise ConfigError(f"{where}: a nonempty string 'name' is required")
    if "p" not in table:
        raise ConfigError(f"{where}: the exponent 'p' is required")
    if "function" not in table or "weight" not in table:
        raise ConfigError(f"{where}: 'function' and 'weight' tables are required")

    modes = table.get("modes", [])
    if not isinstance(modes, list) or not all(isinstance(m, str) for m in modes):
        raise ConfigError(f"{where}.modes: expected a list of mode names")
    bad = [m for m in modes if m not in VERIFICATION_MODES]
    if bad:
        raise ConfigError(
            f"{where}.modes: unknown modes {bad}; valid modes are {list(VERIFICATION_MODES)}"
        )

    quad = table.get("quadrature", {})
    if not isinstance(quad, dict):
        raise ConfigError(f"{where}.quadrature: expected a table")
    _check_keys(quad, _QUAD_KEYS, f"{where}.quadrature")
    cfg = QuadratureConfig(
        rel_tol=_as_float(quad.get("rel_tol", 1e-6), f"{where}.quadrature.rel_tol"),
        abs_tol=_as_float(quad.get("abs_tol", 1e-9), f"{where}.quadrature.abs_tol"),
        max_cells=int(quad.get("max_cells", 2_000_000)),
    )
    if overrides.rel_tol is not None:
        cfg = replace(cfg, rel_tol=overrides.rel_tol)
    if overrides.max_cells is not None:
        cfg = replace(cfg, max_cells=overrides.max_cells)

    lemma = table.get("lemma", {})
    if not isinstance(lemma, dict):
        raise ConfigError(f"{where}.lemma: expected a table")
    _check_keys(lemma, _LEMMA_KEYS, f"{where}.lemma")

    s_values = tuple(
        _as_float(s, f"{where}.s_values") for s in table.get("s_values", [0.7, 0.9])
    )
    if any(not (0.0 < s < 1.0) for s in s_values):
        raise ConfigError(f"{where}.s_values: dilations must lie in (0, 1)")

    alpha_E = table.get("alpha_E")
    seed = table.get("seed", 0)
    if overrides.seed is not None:
        seed = overrides.seed
    if not isinstance(seed, int):
        raise ConfigError(f"{where}.seed: expected an integer")

    return Scenario(
        name=table["name"],
        function=build_function(table["function"], f"{where}.function"),
        weight=build_weight(table["weight"], f"{where}.weight"),
        modes=tuple(modes),
        p=_as_float(table["p"], f"{where}.p"),
        delta=_as_float(table.get("delta", 0.5), f"{where}.delta"),
        epsilon=_as_float(table.get("epsilon", 0.1), f"{where}.epsilon"),
        kappa=_as_float(table.get("kappa", 0.01), f"{where}.kappa"),
        alpha_E=None if alpha_E is None else _as_float(alpha_E, f"{where}.alpha_E"),
        s_values=s_values,
        region_radius=_as_float(table.get("region_radius", 0.85), f"{where}.region_radius"),
        seed=seed,
        cfg=cfg,
        lemma_params=dict(lemma),
    )


def load_config(path: str, overrides) -> list[Scenario]:
    """Read and validate a scenario config; raises ConfigError on any
    schema problem."""
    try:
        with open(path, "rb") as fh:
            raw = tomllib.load(fh)
    except OSError as exc:
        raise ConfigError(f"cannot read {path}: {exc}") from exc
    except tomllib.TOMLDecodeError as exc:
        raise ConfigError(f"cannot parse {path}: {exc}") from exc
    _check_keys(raw, {"scenario"}, "top level")
    tables = raw.get("scenario", [])
    if not isinstance(tables, list):
        raise ConfigError("top level: 'scenario' must be an array of tables")
    scenarios = [_build_scenario(t, i, overrides) for i, t in enumerate(tables)]
    names = [sc.name for sc in scenarios]
    if len(set(names)) != len(names):
        raise ConfigError("scenario names must be unique")
    return scenarios


def _phi_of(weight) -> Callable:
    if isinstance(weight, MixedWeightSpec):
        return lambda z: eval_mixed(weight, z)
    return lambda z: eval_R_modulus(weight, z, power=2.0)


def _rational_of(weight) -> RationalWeightSpec:
    return weight.rational if isinstance(weight, MixedWeightSpec) else weight


def _row(scenario: str, mode: str, lhs, rhs, ratio, passed: bool, details: dict) -> dict:
    return {
        "scenario": scenario,
        "mode": mode,
        "statement": STATEMENTS.get(mode, ""),
        "lhs": lhs,
        "rhs": rhs,
        "ratio": ratio,
        "pass": bool(passed),
        "details": details,
    }


def _report_row(sc: Scenario, report) -> dict:
    details = {"constant_used": report.constant_used, "diagnostics": report.diagnostics}
    return _row(
        sc.name, report.theorem_id, report.lhs, report.rhs, report.ratio,
        report.passed, details,
    )


def _s_grid_for(sc: Scenario, overrides) -> Optional[tuple[float, ...]]:
    if overrides.s_grid_size is None:
        return None
    return geometric_s_grid(delta=sc.delta, size=overrides.s_grid_size)


def _run_verify(sc: Scenario, overrides) -> list[dict]:
    rows = []
    for mode in sc.modes:
        ts = TheoremScenario(
            mode=mode,
            f=sc.function,
            weight=sc.weight,
            p=sc.p,
            name=sc.name,
            delta=sc.delta,
            epsilon=sc.epsilon,
            kappa=sc.kappa,
            alpha_E=sc.alpha_E,
            s_grid=_s_grid_for(sc, overrides),
            region_radius=sc.region_radius,
        )
        rows.append(_report_row(sc, verify_theorem(ts, cfg=sc.cfg)))
    return rows


def _run_zeros(sc: Scenario, overrides) -> list[dict]:
    region = Region.disc(0.0 + 0.0j, sc.region_radius)
    zset = locate_zeros(sc.function, region, use_known=False)
    known = sc.function.known_zeros
    match = True
    if known is not None:
        inside = sorted(
            ((a, m) for a, m in known if region.contains(a)),
            key=lambda t: (t[0].real, t[0].imag),
        )
        match = len(inside) == len(zset.zeros) and all(
            abs(ga - ea) <= 1e-6 and gm == em
            for (ga, gm), (ea, em) in zip(zset.zeros, inside)
        )
    expected = (
        float(sum(m for a, m in known if region.contains(a)))
        if known is not None
        else float(zset.total_multiplicity)
    )
    lhs = float(zset.total_multiplicity)
    passed = not zset.unresolved and match
    details = {
        "zeros": zset.zeros,
        "certified_count": zset.certified_count,
        "unresolved_cells": len(zset.unresolved),
        "matches_known": match,
    }
    ratio = lhs / expected if expected > 0 else (0.0 if lhs == 0.0 else math.inf)
    return [_row(sc.name, "zeros", lhs, expected, ratio, passed, details)]


def _run_norm(sc: Scenario, overrides) -> list[dict]:
    grid = _s_grid_for(sc, overrides)
    if sc.p > 0:
        est = norm_p_positive(
            sc.function, _phi_of(sc.weight), sc.p, delta=sc.delta, s_grid=grid, cfg=sc.cfg
        )
    elif isinstance(sc.weight, MixedWeightSpec):
        est = norm_p_zero_mixed(sc.function, sc.weight, delta=sc.delta, s_grid=grid, cfg=sc.cfg)
    else:
        est = norm_p_zero(sc.function, sc.weight, delta=sc.delta, s_grid=grid, cfg=sc.cfg)
    details = {"per_s": est.per_s, "parts": est.parts, "converged": est.converged}
    return [_row(sc.name, "norm", est.value, math.inf, 0.0, est.converged, details)]


def _run_green(sc: Scenario, overrides) -> list[dict]:
    rows = []
    for s in sc.s_values:
        field = FieldSpec(weight=sc.weight, p=sc.p, s=s)
        rep = green_identity_report(sc.function, field, cfg=sc.cfg)
        lhs = abs(rep.residual)
        rhs = 1e-3 * (1.0 + abs(rep.integral_side))
        details = {
            "s": s,
            "zero_side": rep.zero_side,
            "integral_side": rep.integral_side,
            "boundary_plus": rep.boundary_plus,
            "boundary_minus": rep.boundary_minus,
            "quadrature_error": rep.quadrature_error,
            "zero_count": rep.zero_count,
        }
        ratio = lhs / rhs if rhs > 0 else 0.0
        rows.append(_row(sc.name, "green_identity", lhs, rhs, ratio, lhs <= rhs, details))
    return rows


def _run_lemmas(sc: Scenario, overrides) -> list[dict]:
    lp = sc.lemma_params
    rational = _rational_of(sc.weight)
    delta_exp = float(lp.get("delta_exp", 1.0))
    u = float(lp.get("u", 0.9))
    rows = []

    # the closed-form c(delta, u) rests on an envelope lower bound that only
    # holds when every exponent is nonnegative; with a negative exponent the
    # stated constant is too small and the inequality fails outright, so the
    # substitution check is scheduled only in its provable regime
    if not rational.exponents or min(rational.exponents) >= 0.0:
        if sc.p > 0:
            rep = substitution_check(
                sc.function, rational, sc.p, delta_exp, u,
                float(lp.get("s", 0.9)), cfg=sc.cfg,
            )
        else:
            rep = substitution_check_torus(
                sc.function, rational, delta_exp, u, float(lp.get("t0", 0.9)),
                cfg=sc.cfg,
            )
        rows.append(_report_row(sc, rep))

    rng = np.random.default_rng(sc.seed)
    n = int(lp.get("halfdisc_samples", 10000))
    violations = 0
    band = 0
    for _ in range(n):
        z = math.sqrt(rng.random()) * 0.999 * np.exp(2j * math.pi * rng.random())
        eta = np.exp(2j * math.pi * rng.random())
        if abs(abs(z - eta / 2.0) - 0.5) <= 1e-12:
            band += 1
            continue
        sign_flag, member_flag = halfdisc_sign(complex(z), complex(eta))
        violations += sign_flag != member_flag
    rows.append(
        _row(
            sc.name, "halfdisc", float(violations), 0.0, 0.0, violations == 0,
            {"samples": n, "boundary_band": band},
        )
    )

    table = continuity_probe(
        sc.function,
        _phi_of(sc.weight),
        float(lp.get("continuity_t", 0.8)),
        resolution=int(lp.get("continuity_resolution", 32)),
        cfg=sc.cfg,
    )
    worst = max(table.ratios) if table.ratios else 0.0
    rows.append(
        _row(
            sc.name, "continuity", worst, 0.6, worst / 0.6, worst <= 0.6,
            {"levels": table.levels, "ratios": table.ratios},
        )
    )

    if rational.points:
        p_eff = float(lp.get("zf17_p", sc.p if sc.p > 0 else 0.5))
        res = zf17_bound(rational.points, p_eff, cfg=sc.cfg)
        ok = res.converged and math.isfinite(res.value)
        rows.append(
            _row(
                sc.name, "zf17", res.value, math.inf, 0.0, ok,
                {"p": p_eff, "error_estimate": res.error_estimate, "cells": res.cells_used},
            )
        )

    rows.append(
        _report_row(
            sc,
            limit_sum_check(
                sc.function, _phi_of(sc.weight), sc.p, delta=sc.delta, cfg=sc.cfg,
                region_radius=sc.region_radius,
            ),
        )
    )

    if sc.p >= 1:
        rows.append(
            _report_row(
                sc,
                remark_change_of_variables(
                    sc.function, _phi_of(sc.weight), sc.p, cfg=sc.cfg, delta=sc.delta,
                    s_grid=_s_grid_for(sc, overrides),
                ),
            )
        )
    return rows


_RUNNERS = {
    "verify": _run_verify,
    "zeros": _run_zeros,
    "norm": _run_norm,
    "green": _run_green,
    "lemmas": _run_lemmas,
}


def _run_all(scenarios: list[Scenario], runner, overrides, jobs: int) -> list[dict]:
    def one(sc: Scenario) -> list[dict]:
        try:
            return runner(sc, overrides)
        except ScenarioRejectedError:
            raise
        except BlaschkeLabError as exc:
            return [
                _row(sc.name, "error", math.nan, math.nan, math.nan, False,
                     {"error": str(exc), "type": type(exc).__name__})
            ]

    if jobs > 1 and len(scenarios) > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            chunks = list(pool.map(one, scenarios))
    else:
        chunks = [one(sc) for sc in scenarios]
    return [row for chunk in chunks for row in chunk]


def _jsonable(x):
    """Recursive conversion to JSON-safe data: dataclasses to dicts,
    complex to [re, im], non-finite floats to strings, callables dropped to
    a marker."""
    if isinstance(x, AnalyticFunctionSpec):
        return {
            "family": x.family,
            "normalization": x.normalization,
            "modulus_bound": x.modulus_bound,
            "growth_constant": x.growth_constant,
            "known_zeros": _jsonable(x.known_zeros),
        }
    if is_dataclass(x) and not isinstance(x, type):
        return {f.name: _jsonable(getattr(x, f.name)) for f in dataclass_fields(x)}
    if isinstance(x, bool) or isinstance(x, np.bool_):
        return bool(x)
    if isinstance(x, (int, np.integer)):
        return int(x)
    if isinstance(x, (float, np.floating)):
        v = float(x)
        return v if math.isfinite(v) else str(v)
    if isinstance(x, (complex, np.complexfloating)):
        return [float(x.real), float(x.imag)]
    if isinstance(x, np.ndarray):
        return [_jsonable(v) for v in x.tolist()]
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if x is None or isinstance(x, str):
        return x
    if callable(x):
        return "<callable>"
    return str(x)


def _csv_cell(value) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return repr(value)
    return str(value)


def _write_reports(
    rows: list[dict], out_dir: str, fmt: str, subcommand: str, config_name: str,
    seed: Optional[int],
) -> list[str]:
    os.makedirs(out_dir, exist_ok=True)
    written = []
    if fmt in ("json", "both"):
        payload = {
            "schema_version": SCHEMA_VERSION,
            "subcommand": subcommand,
            "config": config_name,
            "seed": seed,
            "results": _jsonable(rows),
        }
        path = os.path.join(out_dir, f"{subcommand}_report.json")
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            json.dump(payload, fh, indent=2, sort_keys=True, allow_nan=False)
            fh.write("\n")
        written.append(path)
    if fmt in ("csv", "both"):
        path = os.path.join(out_dir, f"{subcommand}_summary.csv")
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write("scenario,mode,lhs,rhs,ratio,pass\n")
            for r in rows:
                cells = [r["scenario"], r["mode"], _csv_cell(float(r["lhs"])),
                         _csv_cell(float(r["rhs"])), _csv_cell(float(r["ratio"])),
                         _csv_cell(r["pass"])]
                fh.write(",".join(cells) + "\n")
        written.append(path)
    return written


def _calibrate(scenarios: list[Scenario], overrides, out_dir: str) -> str:
    """Run every scenario mode with the constant pinned to 1, collect the
    raw lhs/denominator ratios, and freeze 1.5 times the worst ratio of
    each mode as its calibrated constant."""
    ratios: dict[str, list[float]] = {}
    for sc in scenarios:
        for mode in sc.modes:
            ts = TheoremScenario(
                mode=mode, f=sc.function, weight=sc.weight, p=sc.p, name=sc.name,
                delta=sc.delta, epsilon=sc.epsilon, kappa=sc.kappa, alpha_E=sc.alpha_E,
                s_grid=_s_grid_for(sc, overrides), region_radius=sc.region_radius,
            )
            rep = verify_theorem(ts, cfg=sc.cfg, constant=1.0)
            if math.isfinite(rep.ratio):
                ratios.setdefault(mode, []).append(rep.ratio)
    os.makedirs(out_dir, exist_ok=True)
    path = os.path.join(out_dir, "calibrated_constants.toml")
    lines = [
        "# frozen verification constants: 1.5 times the worst lhs/denominator",
        "# ratio observed on the bundled calibration scenarios",
        "schema_version = 1",
    ]
    for mode in sorted(ratios):
        worst = max(ratios[mode])
        lines += [
            "",
            f"[{mode}]",
            f"constant_used = {1.5 * worst!r}",
            f"max_ratio = {worst!r}",
            f"samples = {len(ratios[mode])}",
        ]
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write("\n".join(lines) + "\n")
    return path


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="blaschkelab",
        description="numerical checks for weighted zero-sum bounds on the unit disc",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    runs = {
        "verify": "run every scenario's verification modes",
        "zeros": "zero location only",
        "norm": "norm estimation only",
        "green": "identity residuals at the scenario dilations",
        "lemmas": "the supporting-lemma suite",
        "calibrate": "re-derive the frozen constants from calibration scenarios",
    }
    for name, help_text in runs.items():
        p = sub.add_parser(name, help=help_text)
        p.add_argument("config", help="TOML scenario file")
        p.add_argument("--rel-tol", type=float, default=None, help="override quadrature rel_tol")
        p.add_argument("--max-cells", type=int, default=None, help="override quadrature cell budget")
        p.add_argument("--s-grid-size", type=int, default=None, help="dilation grid size")
        p.add_argument("--out-dir", default=".", help="directory for report files")
        p.add_argument("--seed", type=int, default=None, help="override every scenario seed")
        p.add_argument("--format", choices=("json", "csv", "both"), default="both")
        p.add_argument("--jobs", type=int, default=1, help="concurrent scenarios")

    ct = sub.add_parser("compare-thresholds", help="print which exponent regime wins")
    ct.add_argument("--p", type=float, required=True)
    ct.add_argument("--q", type=float, required=True)
    return parser


def main(argv: Optional[list] = None) -> int:
    args = _build_parser().parse_args(argv)

    if args.command == "compare-thresholds":
        try:
            print(threshold_comparison(args.p, args.q))
        except ValueError as exc:
            print(f"invalid parameters: {exc}", file=sys.stderr)
            return 4
        return 0

    try:
        scenarios = load_config(args.config, args)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 4

    try:
        if args.command == "calibrate":
            path = _calibrate(scenarios, args, args.out_dir)
            print(path)
            return 0
        rows = _run_all(scenarios, _RUNNERS[args.command], args, args.jobs)
    except ScenarioRejectedError as exc:
        print(f"scenario rejected: {exc}", file=sys.stderr)
        return 3

    try:
        for path in _write_reports(
            rows, args.out_dir, args.format, args.command,
            os.path.basename(args.config), args.seed,
        ):
            print(path)
    except OSError as exc:
        print(f"report error: {exc}", file=sys.stderr)
        return 4
    return 0 if all(r["pass"] for r in rows) else 2


if __name__ == "__main__":
    raise SystemExit(main())
