"""Nash approximation of a holomorphic solution jet of a polynomial system.

The pipeline for a jet ``F`` lying on a variety ``V``:

1. put ``V`` in proper position over ``m`` base coordinates and pick a
   separating form ``L`` on the fiber, giving the optimal polynomial ``P_L``
   (descending into ``V ∩ {R_L = 0}`` while the discriminant vanishes on ``F``);
2. Weierstrass-divide the base jets and ``L∘F`` by ``W^2`` where ``W`` is the
   Weierstrass polynomial of ``dP_L/dz`` along ``F``;
3. approximate the division coefficients, which solve the T-system, in one
   variable fewer (constants when ``n = 1``);
4. rebuild candidates from truncated quotients, correct the extra coordinate
   onto ``{P_L = 0}`` and lift to the fibers by Newton iteration;
5. annihilate every output coordinate by a unitary polynomial.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .closure import annihilator_from, eliminate_algebraic
from .elim import ElimError, VarietySpec, linear_form_poly, optimal_polynomial, zero_dim_radical
from .genericity import (
    ChangeRecord,
    GenericityError,
    choose_linear_form,
    find_proper_position,
    find_regular_direction,
)
from .groebner import MonomialOrder, groebner_basis, ideal_dimension
from .jet import Jet, JetError, JetPoly, eval_poly, invert_unit
from .poly import MultiPoly, PolyError, UniOverPoly, discriminant, resultant, substitute_linear
from .solvers import NewtonError, TougeronConfig, newton_solve, tougeron_correct
from .tsystem import TSystem, build_T_system
from .weierstrass import weierstrass_divide, weierstrass_prepare

__all__ = [
    "ApproxConfig",
    "ApproxProblem",
    "ApproxResult",
    "NashFunction",
    "PipelineError",
    "AdmissionError",
    "approximate_solution",
    "approximate_into_variety",
    "reduce_to_hypersurface",
    "prepare_division_data",
    "recurse_or_base",
    "assemble_candidates",
    "correct_and_lift",
    "compute_annihilators",
    "krull_dimension",
]


class PipelineError(RuntimeError):
    """A stage of the approximation pipeline failed; ``trace`` lists the stages reached."""

    def __init__(self, stage: str, message: str, trace: Sequence[str] = ()):
        super().__init__(f"[{stage}] {message}")
        self.stage = stage
        self.trace = list(trace)


class AdmissionError(PipelineError):
    """The input jet does not lie on the variety, or the input is malformed."""


@dataclass(frozen=True)
class ApproxConfig:
    precision: int = 128
    admission_tol: float = 1e-9
    tolerance: float = 1e-9
    tougeron_tol: float = 1e-12
    zero_tol: float = 1e-30
    seed: int = 0
    max_tries: int = 40
    max_depth: int = 4
    radius: float = 0.5
    samples: int = 100
    squarefree: bool = True

    def tougeron(self) -> TougeronConfig:
        return TougeronConfig(
            radius=self.radius,
            tolerance=self.tougeron_tol,
            hypothesis_tol=self.admission_tol,
            samples=self.samples,
            seed=self.seed,
        )

    def to_json(self) -> dict:
        return {k: getattr(self, k) for k in self.__dataclass_fields__}


@dataclass
class NashFunction:
    """A jet paired with a unitary polynomial over ``C[x]`` that vanishes on it."""

    annihilator: UniOverPoly
    branch_jet: Jet
    valid_order: int

    @property
    def degree(self) -> int:
        return self.annihilator.degree

    def residual(self) -> float:
        j = self.branch_jet
        xs = [Jet.var(i, j.nvars, j.order, j.prec, j.zero_tol) for i in range(j.nvars)]
        val = eval_poly(self.annihilator.to_multi(), xs + [j])
        return float(val.with_order(self.valid_order).max_abs())

    def to_json(self, x_names: Sequence[str], z_name: str = "z") -> dict:
        return {
            "annihilator": self.annihilator.to_multi().to_text(list(x_names) + [z_name]),
            "degree": self.degree,
            "valid_order": self.valid_order,
            "branch_jet": self.branch_jet.to_json(),
        }


@dataclass
class ApproxProblem:
    variety: VarietySpec
    solution_jet: tuple
    nu_list: tuple
    config: ApproxConfig = field(default_factory=ApproxConfig)
    fixed: tuple = ()

    def __post_init__(self):
        self.solution_jet = tuple(self.solution_jet)
        self.nu_list = tuple(int(v) for v in self.nu_list)
        self.fixed = tuple(self.fixed)


@dataclass
class ApproxResult:
    """Per-``nu`` Nash functions for each output coordinate plus diagnostics.

    ``check_generators`` must vanish on ``source coordinates + outputs`` when
    ``graph`` is set, and on the outputs alone otherwise.
    """

    names: tuple
    source_names: tuple
    nu_list: tuple
    functions: dict
    solution_jet: tuple
    check_generators: tuple
    graph: bool
    diagnostics: dict
    trace: list
    artifacts: dict = field(default_factory=dict)


def _var_jets(n: int, order: int, cfg: ApproxConfig) -> list[Jet]:
    return [Jet.var(i, n, order, cfg.precision, cfg.zero_tol) for i in range(n)]


def _zero_jet(ref: Jet) -> Jet:
    return Jet.zero(ref.nvars, ref.order, ref.prec, ref.zero_tol)


def _combine(row, jets: Sequence[Jet]) -> Jet:
    acc = _zero_jet(jets[0])
    for c, j in zip(row, jets):
        if c:
            acc = acc + j * Fraction(c)
    return acc


def _matmul(A, B):
    return [[sum((A[i][k] * B[k][j] for k in range(len(B))), Fraction(0)) for j in range(len(B[0]))] for i in range(len(A))]


def krull_dimension(gens: Sequence[MultiPoly], nvars: int) -> int:
    gens = [g for g in gens if g]
    if not gens:
        return nvars
    return ideal_dimension(groebner_basis(gens, MonomialOrder.grevlex()))


def _admit(V: VarietySpec, jets: Sequence[Jet], cfg: ApproxConfig, trace: list) -> float:
    if len(jets) != V.nvars:
        raise AdmissionError("admission", f"expected {V.nvars} jet components, got {len(jets)}", trace)
    if not jets:
        raise AdmissionError("admission", "empty solution jet", trace)
    ref = jets[0]
    if ref.nvars < 1:
        raise AdmissionError("admission", "the solution jet needs at least one source variable", trace)
    for j in jets:
        if j.nvars != ref.nvars or j.order != ref.order:
            raise AdmissionError("admission", "jet components differ in variables or order", trace)
    worst = 0.0
    for g in V.generators:
        worst = max(worst, float(eval_poly(g, list(jets)).max_abs()))
    if worst > cfg.admission_tol:
        raise AdmissionError("admission", f"jet misses the variety (residual {worst:.3e})", trace)
    return worst


# ---------------------------------------------------------------------------
# stage 1: hypersurface reduction


@dataclass
class Hypersurface:
    variety: VarietySpec
    matrix: list
    changes: list
    L: list
    P_L: UniOverPoly
    R_L: MultiPoly
    base: list
    ftilde: Jet
    fibers: list
    descents: list

    @property
    def m(self) -> int:
        return self.variety.m

    @property
    def s(self) -> int:
        return self.variety.s


def reduce_to_hypersurface(V: VarietySpec, jets: Sequence[Jet], cfg: ApproxConfig, fixed=(), trace=None) -> Hypersurface:
    trace = [] if trace is None else trace
    N = V.nvars
    total = [[Fraction(int(i == j)) for j in range(N)] for i in range(N)]
    current = V
    cur_jets = list(jets)
    changes: list[ChangeRecord] = []
    descents = []
    while True:
        try:
            rec, W = find_proper_position(current, cfg.seed, cfg.max_tries, fixed)
        except GenericityError as exc:
            if not fixed:
                raise PipelineError("proper-position", str(exc), trace) from exc
            trace.append("proper-position: fixed source block failed, retrying unrestricted")
            try:
                rec, W = find_proper_position(current, cfg.seed, cfg.max_tries)
            except GenericityError as exc2:
                raise PipelineError("proper-position", str(exc2), trace) from exc2
        changes.append(rec)
        total = _matmul(total, [[Fraction(x) for x in r] for r in rec.matrix])
        cur_jets = rec.new_coordinates(cur_jets)
        m = W.m
        trace.append(f"proper-position: m={m} s={W.s} attempts={rec.attempts}")
        if W.s == 0:
            L = []
            P_L = UniOverPoly(m, [MultiPoly.const(1, m + 1), MultiPoly.zero(m + 1)])
        else:
            try:
                L = choose_linear_form(W, cfg.seed, max_tries=20)
                P_L = optimal_polynomial(W, L)
            except ElimError as exc:
                raise PipelineError("linear-form", str(exc), trace) from exc
        R_L = discriminant(P_L)
        base = cur_jets[:m]
        if R_L.is_constant():
            vanishes = False
        else:
            val = eval_poly(R_L, base + [_zero_jet(cur_jets[0])])
            vanishes = float(val.max_abs()) <= cfg.admission_tol
        trace.append(f"optimal-polynomial: L={L} deg={P_L.degree} discriminant-vanishes={vanishes}")
        if not vanishes:
            break
        if m == 0:
            raise PipelineError("descent", "dimension exhausted: declared_dim is inconsistent", trace)
        extra = R_L.drop_vars(list(range(m))).remap(list(range(m)), N)
        descents.append({"m": m, "discriminant": R_L.to_text(list(W.names[:m]) + ["z"])})
        current = VarietySpec(W.names, W.generators + (extra,), m - 1)
        fixed = tuple(i for i in fixed if i < m - 1)
        trace.append(f"descent: m {m} -> {m - 1}")
    fibers = cur_jets[m:]
    ftilde = _combine(L, fibers) if L else _zero_jet(cur_jets[0])
    return Hypersurface(W, total, changes, L, P_L, R_L, base, ftilde, fibers, descents)


# ---------------------------------------------------------------------------
# stage 2: division data


@dataclass
class DivisionData:
    source_change: ChangeRecord
    d: int
    unit: Jet
    W: JetPoly | None
    H: list
    r: list
    Ht: Jet
    rt: JetPoly | None
    g: list
    base: list
    ftilde: Jet
    fibers: list
    valid_order: int


def _coefficient_jets(p: JetPoly | None, count: int, ref: Jet) -> list[Jet]:
    if p is None:
        return []
    cs = list(p.coeffs)
    while len(cs) < count:
        cs.insert(0, Jet.zero(ref.nvars - 1, ref.order, ref.prec, ref.zero_tol))
    return cs


def prepare_division_data(hyp: Hypersurface, cfg: ApproxConfig, trace=None) -> DivisionData:
    trace = [] if trace is None else trace
    m = hyp.m
    dP = hyp.P_L.to_multi().diff(m)
    u = eval_poly(dP, hyp.base + [hyp.ftilde])
    if float(u.max_abs()) <= cfg.admission_tol:
        raise PipelineError("division", "dP_L/dz vanishes along the jet (inconsistent with the descent exit)", trace)
    try:
        src, u2, d = find_regular_direction(u, cfg.seed, cfg.max_tries)
    except (GenericityError, JetError) as exc:
        raise PipelineError("division", str(exc), trace) from exc
    base, ftilde, fibers = hyp.base, hyp.ftilde, hyp.fibers
    if not src.is_identity:
        M = src.matrix
        base = [j.linear_change(M) for j in base]
        ftilde = ftilde.linear_change(M)
        fibers = [j.linear_change(M) for j in fibers]
    D = u.order
    trace.append(f"division: d={d} source-change-identity={src.is_identity}")
    if d == 0:
        return DivisionData(src, 0, u2, None, list(base), [], ftilde, None, [], base, ftilde, fibers, D)
    if D < 2 * d + 2:
        raise PipelineError("division", f"order budget too small: D={D} < 2d+2={2 * d + 2}", trace)
    prep = weierstrass_prepare(u2)
    divs = [weierstrass_divide(j, prep.W, 2) for j in base]
    dt = weierstrass_divide(ftilde, prep.W, 2)
    valid = D - 2 * d
    g = list(prep.W.coeffs[1:])
    for dv in divs:
        g += _coefficient_jets(dv.r, 2 * d, u)
    g += _coefficient_jets(dt.r, 2 * d, u)
    g = [j.with_order(valid) for j in g]
    return DivisionData(
        src, d, prep.unit, prep.W, [dv.H for dv in divs], [dv.r for dv in divs], dt.H, dt.r, g, base, ftilde, fibers, valid
    )


# ---------------------------------------------------------------------------
# stage 3: recursion on the coefficient system


def _solve_linear(eqs: Sequence[MultiPoly]) -> tuple[dict, list]:
    """Repeatedly solve equations of the form ``c*t + q`` with ``q`` free of ``t``.

    Returns ``{t: expression in the unsolved variables}`` and the leftover equations.
    """
    eqs = [e for e in eqs if e]
    solved: dict[int, MultiPoly] = {}
    progress = True
    while progress:
        progress = False
        for idx, e in enumerate(eqs):
            for t in sorted(e.variables(), reverse=True):
                if e.degree(t) != 1:
                    continue
                c = e.leading_coeff_in(t)
                if not c.is_constant():
                    continue
                q = (e - c * MultiPoly.var(t, e.nvars)).scale(-c.constant_term().inverse())
                solved = {k: v.substitute(t, q) for k, v in solved.items()}
                solved[t] = q
                eqs = [o.substitute(t, q) for j, o in enumerate(eqs) if j != idx]
                eqs = [o for o in eqs if o]
                progress = True
                break
            if progress:
                break
    return solved, eqs


def recurse_or_base(T: TSystem, g: Sequence[Jet], nu_list, cfg: ApproxConfig, depth: int = 0, trace=None):
    """Nash approximations of the coefficient jets ``g``; returns ``(functions per nu, sub-result or None)``.

    Equations linear in one unknown with constant coefficient are solved by
    substitution first; only the leftover system is handed to the recursion.
    """
    trace = [] if trace is None else trace
    res = T.residuals(g)
    worst = max(res) if res else 0.0
    if worst > cfg.admission_tol:
        raise AdmissionError("recursion", f"coefficient jets miss the T-system (residual {worst:.3e})", trace)
    n1 = g[0].nvars
    if n1 == 0:
        funcs = []
        for j in g:
            c = j.to_poly().constant_term()
            ann = UniOverPoly(0, [MultiPoly.const(1, 1), MultiPoly.const(-c, 1)])
            funcs.append(NashFunction(ann, j, j.order))
        trace.append("recursion: base case, constant coefficients")
        return {nu: tuple(funcs) for nu in nu_list}, None
    if depth + 1 > cfg.max_depth:
        raise PipelineError("recursion", f"maximum recursion depth {cfg.max_depth} exceeded", trace)
    K = len(T.coefficient_names)
    solved, eqs = _solve_linear(T.equations)
    keep = [k for k in range(K) if k not in solved]
    eqs_k = [e.drop_vars(keep) for e in eqs]
    dim = krull_dimension(eqs_k, len(keep))
    trace.append(
        f"recursion: depth {depth + 1}, {K} coefficients, {len(solved)} solved linearly, declared_dim={dim} of {len(keep)}"
    )
    sub = None
    if keep:
        VT = VarietySpec(tuple(T.coefficient_names[k] for k in keep), tuple(eqs_k), dim)
        sub = approximate_into_variety(ApproxProblem(VT, tuple(g[k] for k in keep), tuple(nu_list), cfg), depth + 1)
        trace.extend("  " + t for t in sub.trace)
    out = {}
    ring = n1 + 1 + K
    for nu in nu_list:
        funcs: list = [None] * K
        rels = []
        for pos, k in enumerate(keep):
            fn = sub.functions[nu][pos]
            funcs[k] = fn
            rels.append((n1 + 1 + k, fn.annihilator.to_multi().remap(list(range(n1)) + [n1 + 1 + k], ring)))
        order = min((funcs[j].valid_order for j in keep), default=g[0].order)
        args = [funcs[j].branch_jet for j in keep]
        for k, q in solved.items():
            qk = q.drop_vars(keep)
            ref = g[k]
            if args:
                jet = eval_poly(qk, args)
            else:
                jet = Jet.const(qk.constant_term(), n1, order, ref.prec, ref.zero_tol)
            Q = MultiPoly.var(n1, ring) - q.remap([n1 + 1 + j for j in range(K)], ring)
            Q = eliminate_algebraic(Q, rels)
            U = annihilator_from(Q, n1, list(range(n1 + 1)), cfg.squarefree)
            funcs[k] = NashFunction(U, jet, order)
        out[nu] = tuple(funcs)
    return out, sub


# ---------------------------------------------------------------------------
# stage 4: candidates, correction, lifting


@dataclass
class Candidates:
    f: list
    fbar: Jet
    R: Jet
    key_identity: float
    g: list


def _assemble_xn(coeffs: Sequence[Jet], xn: Jet, leading_one: bool) -> Jet:
    acc = Jet.const(1, xn.nvars, xn.order, xn.prec, xn.zero_tol) if leading_one else _zero_jet(xn)
    for c in coeffs:
        acc = acc * xn + c
    return acc


def _embed_g(g: Sequence[Jet], n: int, order: int) -> list[Jet]:
    return [j.embed(list(range(n - 1)), n).with_order(order) for j in g]


def assemble_candidates(div: DivisionData, T: TSystem | None, P_L: UniOverPoly, g_nu: Sequence[Jet], nu: int, order: int) -> Candidates:
    m = len(div.base)
    P = P_L.to_multi()
    dP = P.diff(m)
    deg = min(nu, div.valid_order)
    H = [h.truncate(deg).with_order(order) for h in div.H]
    Ht = div.Ht.truncate(deg).with_order(order)
    if div.d == 0:
        f, fbar = H, Ht
        args = f + [fbar]
        R = eval_poly(P, args) * invert_unit(eval_poly(dP, args)) ** 2
        gj = []
    else:
        n = Ht.nvars
        d = div.d
        xn = Jet.var(n - 1, n, order, Ht.prec, Ht.zero_tol)
        gj = _embed_g(g_nu, n, order)
        a = gj[:d]
        W = _assemble_xn(a, xn, True)
        W2 = W * W
        f = []
        for i in range(m):
            b = gj[d + 2 * d * i : d + 2 * d * (i + 1)]
            f.append(H[i] * W2 + _assemble_xn(b, xn, False))
        c = gj[d + 2 * d * m :]
        fbar = Ht * W2 + _assemble_xn(c, xn, False)
        sargs = [xn] + gj + H + [Ht]
        Wt = eval_poly(T.Wtilde, sargs)
        Wb = eval_poly(T.Wbar, sargs)
        R = Wt * invert_unit(Wb) ** 2
        args = f + [fbar]
    key = float((eval_poly(P, args) - R * eval_poly(dP, args) ** 2).max_abs())
    return Candidates(f, fbar, R, key, gj)


def correct_and_lift(hyp: Hypersurface, cand: Candidates, fibers: Sequence[Jet], cfg: ApproxConfig):
    """Tougeron-correct the extra coordinate onto ``{P_L = 0}`` and Newton-lift the fibers."""
    m = hyp.m
    zero = _zero_jet(cand.fbar)
    A = [eval_poly(c, cand.f + [zero]) for c in hyp.P_L.coeffs]
    tr = tougeron_correct(A, cand.fbar, cand.R, cfg.tougeron())
    ft = tr.b
    s = hyp.s
    if s == 0:
        return ft, [], tr
    Vn = hyp.variety
    N = Vn.nvars
    ring = m + 1 + s
    index = list(range(m)) + [m + 1 + k for k in range(s)]
    system = [g.remap(index, ring) for g in Vn.generators]
    Lpoly = linear_form_poly(hyp.L, Vn).remap(index, ring)
    system.append(Lpoly - MultiPoly.var(m, ring))
    init = [j.with_order(ft.order) for j in fibers]
    try:
        G = newton_solve(system, list(cand.f) + [ft], init, tol=cfg.tougeron_tol)
    except NewtonError:
        # a finite fiber may carry multiplicity; its radical has the same points
        R = zero_dim_radical(Vn.generators) if m == 0 else None
        if R is None:
            raise
        system = [g.remap(index, ring) for g in R.generators] + [system[-1]]
        G = newton_solve(system, list(cand.f) + [ft], init, tol=cfg.tougeron_tol)
    return ft, G, tr


# ---------------------------------------------------------------------------
# stage 5: annihilators


def _base_relations(div: DivisionData, g_funcs, nu: int, n: int) -> list[MultiPoly]:
    """Unitary ``A_i(x, z)`` vanishing at ``z = f_i^nu`` for each base coordinate."""
    m = len(div.base)
    deg = min(nu, div.valid_order)
    Hpolys = [h.truncate(deg).to_poly() for h in div.H]
    if div.d == 0:
        ring = n + 1
        z = MultiPoly.var(n, ring)
        return [z - h.remap(list(range(n)), ring) for h in Hpolys]
    d = div.d
    K = len(g_funcs)
    ring = n + 1 + K
    xn = MultiPoly.var(n - 1, ring)
    z = MultiPoly.var(n, ring)
    t = [MultiPoly.var(n + 1 + k, ring) for k in range(K)]

    def in_xn(coeffs, leading_one):
        acc = MultiPoly.const(1 if leading_one else 0, ring)
        for c in coeffs:
            acc = acc * xn + c
        return acc

    W = in_xn(t[:d], True)
    W2 = W * W
    # relation of t_k in (x_1..x_{n-1}, t_k)
    rels = []
    for k, fn in enumerate(g_funcs):
        ann = fn.annihilator.to_multi()
        rels.append((n + 1 + k, ann.remap(list(range(n - 1)) + [n + 1 + k], ring)))
    out = []
    for i in range(m):
        b = t[d + 2 * d * i : d + 2 * d * (i + 1)]
        expr = Hpolys[i].remap(list(range(n)), ring) * W2 + in_xn(b, False)
        Q = z - expr
        used = Q.variables()
        Q = eliminate_algebraic(Q, [r for r in rels if r[0] in used])
        out.append(Q.drop_vars(list(range(n + 1))))
    return out


def compute_annihilators(hyp: Hypersurface, div: DivisionData, g_funcs, nu: int, jets_new: Sequence[Jet], cfg: ApproxConfig, cache: dict):
    """One :class:`NashFunction` per original ambient coordinate."""
    n = jets_new[0].nvars
    m, N = hyp.m, hyp.variety.nvars
    base_rel = _base_relations(div, g_funcs, nu, n)
    ring = n + 1 + m
    z = n
    ys = [n + 1 + k for k in range(m)]
    rels = [(ys[k], A.remap(list(range(n)) + [ys[k]], ring)) for k, A in enumerate(base_rel)]
    Minv_src = [[Fraction(x) for x in r] for r in div.source_change.inverse]
    old_jets = [_combine(row, jets_new) for row in hyp.matrix]
    out = []
    for i, row in enumerate(hyp.matrix):
        beta, phi = row[:m], row[m:]
        shift = MultiPoly.zero(m + 1)
        for k, c in enumerate(beta):
            if c:
                shift = shift + MultiPoly.var(k, m + 1) * c
        zvar = MultiPoly.var(m, m + 1)
        if any(phi):
            key = tuple(phi)
            if key not in cache:
                cache[key] = optimal_polynomial(hyp.variety, list(phi), check_proper=False).to_multi()
            P = cache[key]
            subs = [MultiPoly.var(k, m + 1) for k in range(m)] + [zvar - shift]
            Pz = P.compose(subs)
        else:
            Pz = zvar - shift
        Q = Pz.remap(ys + [z], ring)
        Q = eliminate_algebraic(Q, rels)
        U = annihilator_from(Q, z, list(range(n + 1)), cfg.squarefree)
        jet = old_jets[i]
        if not div.source_change.is_identity:
            big = [r + [Fraction(0)] for r in Minv_src] + [[Fraction(0)] * n + [Fraction(1)]]
            U = UniOverPoly.from_multi(substitute_linear(U.to_multi(), big), n)
            jet = jet.linear_change(Minv_src)
        out.append(NashFunction(U, jet, jet.order))
    return tuple(out)


# ---------------------------------------------------------------------------
# drivers


def approximate_into_variety(problem: ApproxProblem, depth: int = 0) -> ApproxResult:
    cfg = problem.config
    V = problem.variety
    jets = list(problem.solution_jet)
    trace: list[str] = []
    timings: dict[str, float] = {}
    clock = time.perf_counter()

    def lap(name):
        nonlocal clock
        now = time.perf_counter()
        timings[name] = timings.get(name, 0.0) + now - clock
        clock = now

    admission = _admit(V, jets, cfg, trace)
    lap("admission")
    try:
        hyp = reduce_to_hypersurface(V, jets, cfg, problem.fixed, trace)
        lap("reduce")
        div = prepare_division_data(hyp, cfg, trace)
        lap("division")
        T = None
        g_funcs = {nu: () for nu in problem.nu_list}
        n = jets[0].nvars
        order = jets[0].order
        if div.d > 0:
            T = build_T_system(hyp.P_L, hyp.m, div.d)
            g_funcs, _sub = recurse_or_base(T, div.g, problem.nu_list, cfg, depth, trace)
            if n > 1:
                order = min(order, div.valid_order)
                trace.append(f"working order lowered to {order}")
        lap("recursion")
        per_nu = {}
        functions = {}
        artifacts = {}
        ann_cache: dict = {}
        for nu in problem.nu_list:
            g_nu = [fn.branch_jet for fn in g_funcs[nu]]
            if n > 1 and g_nu:
                order = min(order, min(fn.valid_order for fn in g_funcs[nu]))
            cand = assemble_candidates(div, T, hyp.P_L, g_nu, nu, order)
            lap("assemble")
            fibers = [j.with_order(order) for j in div.fibers]
            ft, G, tr = correct_and_lift(hyp, cand, fibers, cfg)
            lap("correct")
            jets_new = list(cand.f) + list(G)
            funcs = compute_annihilators(hyp, div, g_funcs[nu], nu, jets_new, cfg, ann_cache)
            lap("annihilators")
            functions[nu] = funcs
            artifacts[nu] = {"P_L": hyp.P_L, "f": list(cand.f), "fbar": cand.fbar, "R": cand.R, "ftilde": ft}
            per_nu[nu] = {
                "key_identity_residual": cand.key_identity,
                "defect_norm": float(cand.R.max_abs()),
                "tougeron": {
                    "iterations": tr.iterations,
                    "residual": tr.residual,
                    "hypothesis_residual": tr.hypothesis_residual,
                    "contraction_estimate": tr.contraction_estimate,
                    "bound_lhs": tr.bound_lhs,
                    "bound_rhs": tr.bound_rhs,
                    "bound_ok": tr.bound_ok,
                },
                "correction_size": float((ft - cand.fbar).max_abs()),
                "degrees": [f.degree for f in funcs],
            }
    except (ElimError, PolyError, JetError) as exc:
        if isinstance(exc, PipelineError):
            raise
        raise PipelineError("pipeline", f"{type(exc).__name__}: {exc}", trace) from exc
    diagnostics = {
        "admission_residual": admission,
        "m": hyp.m,
        "s": hyp.s,
        "d": div.d,
        "linear_form": [str(c) for c in hyp.L],
        "P_L": hyp.P_L.to_multi().to_text([f"y{k + 1}" for k in range(hyp.m)] + ["z"]),
        "changes": [c.to_json() for c in hyp.changes] + [div.source_change.to_json()],
        "descents": hyp.descents,
        "depth": depth,
        "per_nu": per_nu,
        "timings": timings,
    }
    return ApproxResult(
        names=V.names,
        source_names=tuple(f"x{i + 1}" for i in range(jets[0].nvars)),
        nu_list=problem.nu_list,
        functions=functions,
        solution_jet=tuple(jets),
        check_generators=V.generators,
        graph=False,
        diagnostics=diagnostics,
        trace=trace,
        artifacts=artifacts,
    )


def _is_coordinate(fn: NashFunction, i: int, n: int) -> bool:
    target = MultiPoly.var(n, n + 1) - MultiPoly.var(i, n + 1)
    return fn.degree == 1 and fn.annihilator.to_multi() == target


def _invert_graph(res: ApproxResult, n: int, cfg: ApproxConfig, trace: list):
    """Re-parametrize outputs whose source part is not exactly the identity (one variable only)."""
    for nu, funcs in res.functions.items():
        xs = funcs[:n]
        if all(_is_coordinate(f, i, n) for i, f in enumerate(xs)):
            continue
        if n != 1 or xs[0].degree != 1:
            raise PipelineError("graph", "source block of the output is not the identity", trace)
        p = (MultiPoly.var(1, 2) - xs[0].annihilator.to_multi()).drop_vars([0])
        x = xs[0].branch_jet
        xj = Jet.var(0, 1, x.order, x.prec, x.zero_tol)
        try:
            (h,) = newton_solve([p.remap([1], 2) - MultiPoly.var(0, 2)], [xj], [xj], tol=cfg.tougeron_tol)
        except NewtonError as exc:
            raise PipelineError("graph", f"inverting the source map failed: {exc}", trace) from exc
        rel = p.remap([2], 3) - MultiPoly.var(0, 3)
        new = list(xs)
        for f in funcs[n:]:
            A = f.annihilator.to_multi().remap([2, 1], 3)
            U = annihilator_from(resultant(rel, A, 2), 1, [0, 1], cfg.squarefree)
            jet = eval_poly(f.branch_jet.to_poly(), [h])
            new.append(NashFunction(U, jet, f.valid_order))
        res.functions[nu] = tuple(new)
        trace.append(f"graph: source map inverted for nu={nu}")


def approximate_solution(
    Q: Sequence[MultiPoly],
    x_names: Sequence[str],
    y_names: Sequence[str],
    f_jets: Sequence[Jet],
    nu_list: Sequence[int],
    cfg: ApproxConfig = ApproxConfig(),
    declared_dim: int | None = None,
) -> ApproxResult:
    """Nash approximations ``y = f^nu(x)`` of a holomorphic solution ``y = f(x)`` of ``Q(x, y) = 0``."""
    n, k = len(x_names), len(y_names)
    names = tuple(x_names) + tuple(y_names)
    f_jets = list(f_jets)
    if len(f_jets) != k:
        raise AdmissionError("admission", f"expected {k} jet components, got {len(f_jets)}")
    if any(j.nvars != n for j in f_jets):
        raise AdmissionError("admission", "jets must be functions of the source variables")
    if any(int(nu) < 1 for nu in nu_list):
        raise AdmissionError("admission", "graph mode needs nu >= 1 (degree-0 truncation erases the source coordinates)")
    gens = [g for g in Q if g]
    dim = krull_dimension(gens, n + k) if declared_dim is None else declared_dim
    if dim < n:
        raise AdmissionError("admission", f"declared_dim {dim} is below the source dimension {n}")
    try:
        V = VarietySpec(names, tuple(gens), dim)
    except ElimError as exc:
        raise AdmissionError("admission", str(exc)) from exc
    order = f_jets[0].order if f_jets else 0
    jets = _var_jets(n, order, cfg) + f_jets
    res = approximate_into_variety(ApproxProblem(V, tuple(jets), tuple(nu_list), cfg, tuple(range(n))))
    _invert_graph(res, n, cfg, res.trace)
    res.functions = {nu: funcs[n:] for nu, funcs in res.functions.items()}
    res.names = tuple(y_names)
    res.source_names = tuple(x_names)
    res.solution_jet = tuple(f_jets)
    res.check_generators = tuple(gens)
    res.graph = True
    res.diagnostics["declared_dim"] = dim
    return res
