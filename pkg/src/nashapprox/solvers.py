"""Root correction and Newton iteration on jets."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .jet import Jet, JetError, eval_poly, invert_unit
from .poly import MultiPoly

__all__ = [
    "TougeronConfig",
    "TougeronResult",
    "ContractionError",
    "NewtonError",
    "tougeron_correct",
    "newton_solve",
    "select_square_subsystem",
    "jet_linear_solve",
    "polydisc_samples",
    "horner",
]


class ContractionError(JetError):
    """The fixed-point iteration for the correction did not contract."""


class NewtonError(JetError):
    """Singular Jacobian or non-convergence in :func:`newton_solve`."""


@dataclass(frozen=True)
class TougeronConfig:
    radius: float = 0.5
    bound: float = 1e6
    tolerance: float = 1e-12
    max_iterations: int = 200
    hypothesis_tol: float = 1e-9
    samples: int = 100
    seed: int = 0

    def __post_init__(self):
        if not (self.radius > 0 and self.bound > 0 and self.tolerance > 0):
            raise ValueError("radius, bound and tolerance must be positive")


@dataclass
class TougeronResult:
    b: Jet
    iterations: int
    residual: float
    hypothesis_residual: float
    contraction_estimate: float
    bound_lhs: float
    bound_rhs: float
    bound_ok: bool
    history: list = field(default_factory=list)


def horner(coeffs: Sequence[Jet], z: Jet) -> Jet:
    """Evaluate ``sum coeffs[i] z^(deg-i)`` (coefficients highest first)."""
    acc = coeffs[0]
    for c in coeffs[1:]:
        acc = acc * z + c
    return acc


def _derivative(coeffs: Sequence[Jet]) -> list[Jet]:
    d = len(coeffs) - 1
    return [c * (d - i) for i, c in enumerate(coeffs[:-1])]


def polydisc_samples(nvars: int, radius: float, count: int, seed: int = 0) -> np.ndarray:
    """Points of the closed polydisc: ``count`` random ones plus the distinguished-boundary axes."""
    rng = np.random.default_rng(seed)
    rad = radius * np.sqrt(rng.random((count, nvars)))
    ang = 2 * np.pi * rng.random((count, nvars))
    pts = rad * np.exp(1j * ang)
    ring = radius * np.exp(2j * np.pi * np.arange(16) / 16)
    torus = np.repeat(ring[:, None], nvars, axis=1)
    return np.vstack([pts, torus])


def tougeron_correct(A: Sequence[Jet], alpha: Jet, c: Jet, cfg: TougeronConfig = TougeronConfig()) -> TougeronResult:
    """Turn an approximate root ``alpha`` of ``A`` into a root ``b`` near it.

    ``A`` is a polynomial in ``z`` given by jet coefficients (highest first)
    satisfying ``A(alpha) = c * A'(alpha)^2``.  With ``b = alpha + eps * A'(alpha)``
    the equation ``A(b) = 0`` becomes the fixed point
    ``eps = -c - sum_{k>=2} q_k eps^k``, ``q_k = A^(k)(alpha) A'(alpha)^(k-2) / k!``.
    """
    A = list(A)
    if not A:
        raise JetError("empty polynomial")
    deg = len(A) - 1
    derivs = [A]
    for _ in range(deg):
        derivs.append(_derivative(derivs[-1]))
    vals = [horner(p, alpha) for p in derivs]
    a1 = vals[1] if deg >= 1 else alpha * 0
    hyp = float((vals[0] - c * a1 * a1).max_abs())
    if hyp > cfg.hypothesis_tol:
        raise JetError(f"hypothesis A(alpha) = c*A'(alpha)^2 violated (residual {hyp:.3e})")
    q = {}
    for k in range(2, deg + 1):
        q[k] = vals[k] * (a1 ** (k - 2)) * (1 / math.factorial(k))
    r = cfg.radius
    c_norm = float(c.weighted_norm(r))
    rho = 2 * c_norm
    estimate = sum(k * float(qk.weighted_norm(r)) * rho ** (k - 1) for k, qk in q.items())

    eps = -c
    history = []
    prev_delta = math.inf
    stalled = 0
    for it in range(1, cfg.max_iterations + 1):
        acc = -c
        power = eps
        for k in range(2, deg + 1):
            power = power * eps
            acc = acc - q[k] * power
        delta = float((acc - eps).max_abs())
        history.append(delta)
        eps = acc
        if not math.isfinite(delta) or delta > cfg.bound:
            raise ContractionError(f"correction diverged at iteration {it} (step {delta:.3e})")
        if delta < cfg.tolerance:
            break
        stalled = stalled + 1 if delta >= prev_delta else 0
        if stalled >= 5:
            raise ContractionError(f"correction step stopped decreasing at iteration {it}")
        prev_delta = delta
    else:
        raise ContractionError(f"no convergence after {cfg.max_iterations} iterations")

    b = alpha + eps * a1
    residual = float(horner(A, b).max_abs())

    pts = polydisc_samples(alpha.nvars, r, cfg.samples, cfg.seed)
    diff = b - alpha
    ca1 = c * a1
    lhs = max(float(abs(diff(p))) for p in pts) if alpha.nvars else float(abs(diff.constant()))
    rhs_pt = max(float(abs(ca1(p))) for p in pts) if alpha.nvars else float(abs(ca1.constant()))
    rhs = 2 * rhs_pt
    return TougeronResult(
        b=b,
        iterations=len(history),
        residual=residual,
        hypothesis_residual=hyp,
        contraction_estimate=estimate,
        bound_lhs=lhs,
        bound_rhs=rhs,
        bound_ok=lhs <= rhs,
        history=history,
    )


# ---------------------------------------------------------------------------
# Newton iteration


def jet_linear_solve(M: list[list[Jet]], rhs: list[Jet], tol: float = 1e-12) -> list[Jet]:
    """Solve ``M x = rhs`` over jets by elimination with unit pivots (largest constant term)."""
    n = len(M)
    a = [row[:] + [b] for row, b in zip(M, rhs)]
    for col in range(n):
        piv = max(range(col, n), key=lambda r: abs(a[r][col].constant()))
        if abs(a[piv][col].constant()) <= tol:
            raise NewtonError("singular Jacobian at the base point")
        a[col], a[piv] = a[piv], a[col]
        inv = invert_unit(a[col][col], tol)
        a[col] = [x * inv for x in a[col]]
        for r in range(n):
            if r != col and not a[r][col].is_zero():
                f = a[r][col]
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
    return [row[n] for row in a]


def select_square_subsystem(jac0: np.ndarray, tol: float = 1e-12) -> list[int]:
    """Rows of a tall Jacobian chosen by Gaussian elimination with full pivoting."""
    a = np.array(jac0, dtype=complex)
    neq, nunk = a.shape
    rows = list(range(neq))
    cols = list(range(nunk))
    chosen = []
    for _ in range(nunk):
        sub = np.abs(a[np.ix_(rows, cols)])
        if sub.size == 0 or sub.max() <= tol:
            raise NewtonError("singular Jacobian at the base point")
        i, j = np.unravel_index(np.argmax(sub), sub.shape)
        r, c = rows[i], cols[j]
        chosen.append(r)
        for rr in rows:
            if rr != r:
                a[rr] -= a[rr, c] / a[r, c] * a[r]
        rows.remove(r)
        cols.remove(c)
    return sorted(chosen)


def newton_solve(
    system: Sequence[MultiPoly],
    params: Sequence[Jet],
    initial: Sequence[Jet],
    tol: float = 1e-12,
    max_iterations: int = 60,
) -> list[Jet]:
    """Jet solution of ``system(params, unknowns) = 0`` starting from ``initial``.

    Each equation is a polynomial in ``len(params) + len(initial)`` variables,
    parameters first.  When there are more equations than unknowns the square
    subsystem with the best-conditioned Jacobian at the base point is used;
    the remaining equations are only checked.
    """
    k, u = len(params), len(initial)
    if u == 0:
        return []
    for p in system:
        if p.nvars != k + u:
            raise NewtonError("equation ring does not match params + unknowns")
    if len(system) < u:
        raise NewtonError("underdetermined system")
    jac_polys = [[p.diff(k + j) for j in range(u)] for p in system]
    v = list(initial)

    def jac_at(vals):
        return [[eval_poly(jp, vals) for jp in row] for row in jac_polys]

    args = list(params) + v
    J = jac_at(args)
    J0 = np.array([[complex(x.constant()) for x in row] for row in J])
    rows = select_square_subsystem(J0, tol) if len(system) > u else list(range(u))
    dets = abs(np.linalg.det(J0[rows]))
    if dets <= tol:
        raise NewtonError("singular Jacobian at the base point")
    for _ in range(max_iterations):
        args = list(params) + v
        F = [eval_poly(system[r], args) for r in rows]
        res = max(float(f.max_abs()) for f in F)
        if res < tol:
            return v
        J = jac_at(args)
        delta = jet_linear_solve([J[r] for r in rows], [-f for f in F], tol)
        v = [a + b for a, b in zip(v, delta)]
    args = list(params) + v
    res = max(float(eval_poly(system[r], args).max_abs()) for r in rows)
    if res < tol:
        return v
    raise NewtonError(f"Newton iteration did not converge (residual {res:.3e})")
