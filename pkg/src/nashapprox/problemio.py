"""Problem files in, result documents out.

A problem file is JSON::

    {"mode": "theorem" | "variety",
     "x_vars": ["x"], "y_vars": ["u", "v"],
     "Q": ["u*v - 1"]                      # theorem mode
          or {"base_vars": .., "fiber_vars": .., "declared_dim": .., "generators": [..]},
     "jet": {"u": <jet JSON>, "v": <jet JSON>}   # or a list in component order
     "declared_dim": 2}                    # optional

In theorem mode the jets are the components ``y = f(x)``; in variety mode
they are the ambient coordinates of the variety, as functions of ``x_vars``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path
from typing import Any

from .core import ApproxConfig, ApproxResult, approximate_into_variety, approximate_solution, ApproxProblem
from .elim import ElimError, VarietySpec
from .jet import Jet, JetError
from .poly import MultiPoly, PolyError, parse_poly

__all__ = ["ProblemSpec", "ProblemError", "load_problem", "parse_problem", "result_to_json", "run_problem"]


class ProblemError(ValueError):
    """The problem document is malformed."""


@dataclass
class ProblemSpec:
    mode: str
    x_vars: list
    y_vars: list
    generators: list
    variety: VarietySpec | None
    jets: list
    declared_dim: int | None

    @property
    def order(self) -> int:
        return self.jets[0].order

    def with_order(self, order: int) -> "ProblemSpec":
        if any(j.order < order for j in self.jets):
            raise ProblemError(f"jets are given only to order {min(j.order for j in self.jets)} < {order}")
        return ProblemSpec(self.mode, self.x_vars, self.y_vars, self.generators, self.variety,
                           [j.with_order(order) for j in self.jets], self.declared_dim)

    def describe(self) -> dict:
        names = self.x_vars + self.y_vars if self.mode == "theorem" else list(self.variety.names)
        return {
            "mode": self.mode,
            "source_vars": self.x_vars,
            "components": self.y_vars if self.mode == "theorem" else list(self.variety.names),
            "generators": [g.to_text(names) for g in self.generators],
            "declared_dim": self.declared_dim,
            "jet_order": self.order,
        }


def _names(data: dict, key: str) -> list[str]:
    val = data.get(key, [])
    if not isinstance(val, list) or not all(isinstance(v, str) for v in val):
        raise ProblemError(f"'{key}' must be a list of variable names")
    return list(val)


def _jets(data: Any, names: list[str], prec: int, zero_tol: float) -> list[Jet]:
    if isinstance(data, dict):
        missing = [n for n in names if n not in data]
        if missing:
            raise ProblemError(f"missing jet components: {missing}")
        items = [data[n] for n in names]
    elif isinstance(data, list):
        if len(data) != len(names):
            raise ProblemError(f"expected {len(names)} jet components, got {len(data)}")
        items = data
    else:
        raise ProblemError("'jet' must be an object or a list")
    return [Jet.from_json(it, prec, zero_tol) for it in items]


def parse_problem(data: dict, cfg: ApproxConfig = ApproxConfig()) -> ProblemSpec:
    if not isinstance(data, dict):
        raise ProblemError("problem must be a JSON object")
    mode = data.get("mode", "theorem")
    if mode not in ("theorem", "variety"):
        raise ProblemError(f"unknown mode {mode!r}")
    x_vars = _names(data, "x_vars")
    if not x_vars:
        raise ProblemError("at least one source variable is required")
    dim = data.get("declared_dim")
    if dim is not None and not isinstance(dim, int):
        raise ProblemError("'declared_dim' must be an integer")
    try:
        if mode == "theorem":
            y_vars = _names(data, "y_vars")
            Q = data.get("Q", [])
            if not isinstance(Q, list):
                raise ProblemError("theorem mode expects 'Q' as a list of polynomials")
            names = x_vars + y_vars
            gens = [parse_poly(t, names) for t in Q]
            jets = _jets(data.get("jet"), y_vars, cfg.precision, cfg.zero_tol)
            variety = None
        else:
            Q = data.get("Q")
            if not isinstance(Q, dict):
                raise ProblemError("variety mode expects 'Q' as a VarietySpec object")
            variety = VarietySpec.from_json(Q)
            if dim is not None and dim != variety.m:
                variety = variety.with_dim(dim)
            dim = variety.m
            y_vars = []
            gens = list(variety.generators)
            jets = _jets(data.get("jet"), list(variety.names), cfg.precision, cfg.zero_tol)
    except (PolyError, JetError, ElimError) as exc:
        raise ProblemError(str(exc)) from exc
    if not jets:
        raise ProblemError("no jet components given")
    for j in jets:
        if j.nvars != len(x_vars):
            raise ProblemError("every jet must be a function of the source variables")
        if j.order != jets[0].order:
            raise ProblemError("jet components must share one order")
    return ProblemSpec(mode, x_vars, y_vars, gens, variety, jets, dim)


def load_problem(path: str | Path, cfg: ApproxConfig = ApproxConfig()) -> ProblemSpec:
    try:
        data = json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise ProblemError(f"cannot read problem file: {exc}") from exc
    return parse_problem(data, cfg)


def run_problem(spec: ProblemSpec, nu_list, cfg: ApproxConfig) -> ApproxResult:
    if spec.mode == "theorem":
        return approximate_solution(spec.generators, spec.x_vars, spec.y_vars, spec.jets, nu_list, cfg, spec.declared_dim)
    res = approximate_into_variety(ApproxProblem(spec.variety, tuple(spec.jets), tuple(nu_list), cfg))
    res.source_names = tuple(spec.x_vars)
    return res


def result_to_json(result: ApproxResult, include_timings: bool = False) -> dict:
    diag = {k: v for k, v in result.diagnostics.items() if k != "timings" or include_timings}
    return {
        "components": list(result.names),
        "source_vars": list(result.source_names),
        "nu_list": list(result.nu_list),
        "approximations": {
            str(nu): [fn.to_json(result.source_names, "z") for fn in result.functions[nu]] for nu in result.nu_list
        },
        "diagnostics": diag,
        "trace": list(result.trace),
    }


def problem_document(mode: str, x_vars, y_vars, Q, jets, declared_dim: int | None = None) -> dict:
    """Build a problem JSON document from polynomials (text or MultiPoly) and jets."""
    names = list(x_vars) + list(y_vars)
    if mode == "theorem":
        q = [g.to_text(names) if isinstance(g, MultiPoly) else str(g) for g in Q]
        jet = {n: j.to_json() for n, j in zip(y_vars, jets)}
    else:
        q = Q.to_json() if isinstance(Q, VarietySpec) else Q
        comp = list(Q.names) if isinstance(Q, VarietySpec) else list(Q["base_vars"]) + list(Q.get("fiber_vars", []))
        jet = {n: j.to_json() for n, j in zip(comp, jets)}
    doc = {"mode": mode, "x_vars": list(x_vars), "y_vars": list(y_vars), "Q": q, "jet": jet}
    if declared_dim is not None:
        doc["declared_dim"] = declared_dim
    return doc
