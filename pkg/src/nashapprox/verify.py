"""Independent re-check of an approximation result from its raw jets and polynomials.

Nothing here reads the verdict-like fields of the pipeline diagnostics; every
number is recomputed by fresh jet evaluation.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .core import ApproxConfig, ApproxResult, NashFunction
from .jet import Jet, JetError, eval_poly, invert_unit
from .solvers import TougeronConfig, polydisc_samples, tougeron_correct

__all__ = ["Report", "verify_result", "convergence_table", "monotone_non_increasing", "branch_defect", "lift_branch", "lifted_generator_residual"]

# relative slack so that exact ties survive rounding in the last bits
_TIE = 1e-9


def monotone_non_increasing(values: Sequence[float], abs_slack: float = 1e-15) -> bool:
    return all(b <= a * (1 + _TIE) + abs_slack for a, b in zip(values, values[1:]))


def convergence_table(result: ApproxResult, reference: Sequence[Jet], radius: float = 0.5) -> list[dict]:
    """Per ``nu``: max coefficient error and weighted polydisc norm of ``output - reference`` per component."""
    reference = list(reference)
    rows = []
    for nu in result.nu_list:
        funcs = result.functions[nu]
        if len(funcs) != len(reference):
            raise ValueError("reference and output have different numbers of components")
        errs, norms = [], []
        for fn, ref in zip(funcs, reference):
            if fn.branch_jet.nvars != ref.nvars:
                raise ValueError("reference and output live in different source spaces")
            order = min(fn.valid_order, ref.order)
            diff = fn.branch_jet.with_order(order) - ref.with_order(order)
            errs.append(float(diff.max_abs()))
            norms.append(float(diff.weighted_norm(radius)))
        rows.append({"nu": nu, "max_error": errs, "weighted_norm": norms})
    return rows


def _shift_down(j: Jet, k: int, order: int) -> Jet:
    return Jet(1, order, {(e[0] - k,): c for e, c in j.coeffs.items() if e[0] >= k}, j.prec, j.zero_tol)


def lift_branch(fn: NashFunction, order: int, tol: float) -> Jet | None:
    """The exact root of the annihilator through the branch jet, to ``order``.

    With ``e`` the order to which ``A_z`` vanishes along the branch, the jet
    is padded to ``order + e`` and corrected by the Tougeron fixed point with
    ``c = A(alpha) / A_z(alpha)^2``.  One source variable only; ``None`` when
    the branch is too short to determine the root (``K < 2e``).  Raises
    :class:`JetError` when the jet is not an approximate root at all.
    """
    j = fn.branch_jet
    K = fn.valid_order
    if j.nvars != 1:
        return None
    A = fn.annihilator.to_multi()
    x = Jet.var(0, 1, K, j.prec, j.zero_tol)
    dz = eval_poly(A.diff(1), [x, j.with_order(K)])
    e = min((k[0] for k, c in dz.coeffs.items() if abs(c) > tol), default=K + 1)
    if K < 2 * e:
        return None
    O = order + e
    x = Jet.var(0, 1, O, j.prec, j.zero_tol)
    alpha = j.with_order(K).with_order(O)
    val = eval_poly(A, [x, alpha])
    low = max((float(abs(c)) for k, c in val.coeffs.items() if k[0] < 2 * e), default=0.0)
    if low > tol:
        raise JetError(f"branch jet is not an approximate root (defect {low:.3e})")
    unit = _shift_down(eval_poly(A.diff(1), [x, alpha]), e, O - 2 * e)
    c = (_shift_down(val, 2 * e, O - 2 * e) * invert_unit(unit) ** 2).with_order(O)
    coeffs = [Jet.from_poly(p.drop_vars([0]), O, j.prec, j.zero_tol) for p in fn.annihilator.coeffs]
    res = tougeron_correct(coeffs, alpha, c, TougeronConfig(hypothesis_tol=1.0, samples=0))
    return res.b.with_order(order)


def branch_defect(fn: NashFunction, tol: float) -> float | None:
    """Distance from the branch jet to the exact root of its annihilator that it determines.

    When ``A_z`` vanishes to order ``e`` along the branch, a change of the
    coefficient of ``x^k`` moves ``A(x, f)`` only at order ``k + e``, so the
    top ``e`` coefficients escape the plain residual; comparing with the
    lifted root covers them.
    """
    try:
        b = lift_branch(fn, fn.valid_order, tol)
    except JetError:
        return float("inf")
    if b is None:
        return None
    return float((b - fn.branch_jet.with_order(fn.valid_order)).max_abs())


def lifted_generator_residual(result: ApproxResult, funcs, tol: float) -> float | None:
    """Generators on the branches extended past every annihilator's x-degree.

    The outputs are exact algebraic functions, so the generators must vanish
    on them to any order, not only to the jet order.
    """
    reach = max(f.valid_order + f.annihilator.to_multi().degree(0) + f.degree for f in funcs)
    try:
        lifted = [lift_branch(f, reach, tol) for f in funcs]
    except JetError:
        return float("inf")
    if any(b is None for b in lifted):
        return None
    if result.graph:
        ref = lifted[0]
        lifted = [Jet.var(0, 1, reach, ref.prec, ref.zero_tol)] + lifted
    return max((float(eval_poly(g, lifted).max_abs()) for g in result.check_generators), default=0.0)


def _graph_args(result: ApproxResult, funcs) -> list[Jet]:
    order = min(f.valid_order for f in funcs)
    outs = [f.branch_jet.with_order(order) for f in funcs]
    if not result.graph:
        return outs
    ref = outs[0]
    xs = [Jet.var(i, ref.nvars, order, ref.prec, ref.zero_tol) for i in range(ref.nvars)]
    return xs + outs


def _sup(jet: Jet, pts) -> float:
    return max(float(abs(jet(p))) for p in pts)


@dataclass
class Report:
    nu_list: list
    rows: list
    convergence: list
    checks: dict
    tolerance: float
    timings: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(self.checks.values())

    def to_json(self, include_timings: bool = False) -> dict:
        out = {
            "passed": self.passed,
            "tolerance": self.tolerance,
            "checks": dict(self.checks),
            "nu_list": list(self.nu_list),
            "rows": self.rows,
            "convergence": self.convergence,
        }
        if include_timings:
            out["timings"] = self.timings
        return out

    def render_text(self) -> str:
        lines = [f"{'nu':>4} {'generators':>12} {'annihilators':>13} {'key-id':>10} {'bound-margin':>13} {'max-error':>11}  degrees"]
        conv = {row["nu"]: row for row in self.convergence}
        for row in self.rows:
            nu = row["nu"]
            err = max(conv[nu]["max_error"]) if nu in conv and conv[nu]["max_error"] else float("nan")
            margin = row["bound_margin"]
            lines.append(
                f"{nu:>4} {row['generator_residual']:>12.3e} {max(row['annihilator_residuals'], default=0.0):>13.3e} "
                f"{row['key_identity_residual']:>10.3e} {margin:>13.3e} {err:>11.3e}  {row['degrees']}"
            )
        for name, ok in self.checks.items():
            lines.append(f"{'PASS' if ok else 'FAIL'}  {name}")
        return "\n".join(lines)


def verify_result(result: ApproxResult, cfg: ApproxConfig = ApproxConfig(), reference: Sequence[Jet] | None = None) -> Report:
    """Recompute residuals, bounds, convergence and degree stability for every ``nu``."""
    tol = cfg.tolerance
    rows = []
    gen_ok = ann_ok = key_ok = bound_ok = branch_ok = lifted_ok = True
    lift_tol = 2.0 ** (-cfg.precision / 2)
    degrees = []
    for nu in result.nu_list:
        funcs = result.functions[nu]
        args = _graph_args(result, funcs)
        gen = max((float(eval_poly(g, args).max_abs()) for g in result.check_generators), default=0.0)
        anns = [fn.residual() for fn in funcs]
        branches = [branch_defect(fn, lift_tol) for fn in funcs]
        lifted = lifted_generator_residual(result, funcs, lift_tol)
        row = {
            "nu": nu,
            "generator_residual": gen,
            "annihilator_residuals": anns,
            "branch_defects": branches,
            "lifted_generator_residual": lifted,
            "degrees": [fn.degree for fn in funcs],
            "key_identity_residual": 0.0,
            "bound_lhs": 0.0,
            "bound_rhs": 0.0,
            "bound_margin": 0.0,
        }
        art = result.artifacts.get(nu)
        if art is not None:
            P = art["P_L"].to_multi()
            dP = P.diff(art["P_L"].var_index)
            f, fbar, R, ft = art["f"], art["fbar"], art["R"], art["ftilde"]
            dval = eval_poly(dP, list(f) + [fbar])
            key = eval_poly(P, list(f) + [fbar]) - R * dval * dval
            row["key_identity_residual"] = float(key.max_abs())
            pts = polydisc_samples(fbar.nvars, cfg.radius, cfg.samples, cfg.seed + 1)
            lhs = _sup(ft - fbar, pts)
            rhs = 2 * _sup(R * dval, pts)
            row.update(bound_lhs=lhs, bound_rhs=rhs, bound_margin=rhs - lhs)
            key_ok &= row["key_identity_residual"] <= tol
            bound_ok &= lhs <= rhs
        gen_ok &= gen <= tol
        ann_ok &= all(a <= tol for a in anns)
        branch_ok &= all(b is None or b <= tol for b in branches)
        lifted_ok &= lifted is None or lifted <= tol
        degrees.append(row["degrees"])
        rows.append(row)
    ref = result.solution_jet if reference is None else reference
    conv = convergence_table(result, ref, cfg.radius)
    ncomp = len(conv[0]["max_error"]) if conv else 0
    monotone = all(monotone_non_increasing([r["max_error"][k] for r in conv]) for k in range(ncomp))
    checks = {
        "generator_residuals": gen_ok,
        "annihilator_residuals": ann_ok,
        "branch_consistency": branch_ok,
        "lifted_generator_residuals": lifted_ok,
        "key_identity": key_ok,
        "tougeron_bound": bound_ok,
        "convergence_monotone": monotone,
        "degree_stability": all(d == degrees[0] for d in degrees),
    }
    timings = dict(result.diagnostics.get("timings", {}))
    return Report(list(result.nu_list), rows, conv, checks, tol, timings)
