"""Seeded "generic" choices, each validated by an explicit certificate and retried on failure.

Every coordinate change is recorded as ``old = M @ new`` with ``M`` an
integer matrix, so polynomials transform by :func:`substitute_linear` with
``M`` and jets (values of coordinates) transform by ``M^-1``.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .elim import ElimError, VarietySpec, generic_fiber_count, optimal_polynomial, properness_check
from .jet import Jet, JetError
from .poly import PolyError, rational_inverse, substitute_linear
from .weierstrass import xn_regular_order

__all__ = [
    "ChangeRecord",
    "GenericityError",
    "find_proper_position",
    "choose_linear_form",
    "form_separates",
    "find_regular_direction",
    "apply_change_to_variety",
    "identity",
]


class GenericityError(ElimError):
    """A randomized genericity search ran out of attempts."""

    def __init__(self, message, failures=None):
        super().__init__(message)
        self.failures = failures or []


def identity(n: int) -> list[list[int]]:
    return [[int(i == j) for j in range(n)] for i in range(n)]


@dataclass(frozen=True)
class ChangeRecord:
    matrix: tuple[tuple[int, ...], ...]
    inverse: tuple[tuple[Fraction, ...], ...]
    scope: str
    seed_used: int
    attempts: int

    @classmethod
    def make(cls, M, scope: str, seed: int, attempts: int) -> "ChangeRecord":
        inv = rational_inverse(M)
        return cls(tuple(tuple(int(x) for x in r) for r in M), tuple(tuple(r) for r in inv), scope, seed, attempts)

    @property
    def is_identity(self) -> bool:
        return [list(r) for r in self.matrix] == identity(len(self.matrix))

    def new_coordinates(self, values: Sequence) -> list:
        """Map old coordinate values (jets or numbers) to new ones: ``M^-1 @ values``."""
        return _apply(self.inverse, values)

    def old_coordinates(self, values: Sequence) -> list:
        return _apply(self.matrix, values)

    def to_json(self) -> dict:
        return {
            "scope": self.scope,
            "matrix": [list(r) for r in self.matrix],
            "inverse": [[str(x) for x in r] for r in self.inverse],
            "seed_used": self.seed_used,
            "attempts": self.attempts,
        }


def _apply(mat, values):
    out = []
    for row in mat:
        acc = None
        for c, v in zip(row, values):
            if c:
                t = v * c
                acc = t if acc is None else acc + t
        out.append(acc if acc is not None else values[0] * 0)
    return out


def apply_change_to_variety(V: VarietySpec, M) -> VarietySpec:
    return V.with_generators([substitute_linear(g, M) for g in V.generators])


def _det_nonzero(M) -> bool:
    try:
        rational_inverse(M)
        return True
    except PolyError:
        return False


def _ambient_candidates(n: int, m: int, fixed: Sequence[int], rng: random.Random, max_tries: int):
    yield identity(n)
    movable = [i for i in range(m) if i not in fixed]
    for c in (1, -1):
        for i in movable:
            for j in range(m, n):
                M = identity(n)
                M[i][j] = c
                yield M
    half = max_tries // 2
    k = 0
    while True:
        width = 3 if k < half else 9
        M = [[rng.randint(-width, width) for _ in range(n)] for _ in range(n)]
        for i in fixed:
            M[i] = [int(i == j) for j in range(n)]
        k += 1
        if _det_nonzero(M):
            yield M


def find_proper_position(V: VarietySpec, seed: int = 0, max_tries: int = 40, fixed: Sequence[int] = ()):
    """Linear change of ambient coordinates making projection onto the base proper.

    ``fixed`` lists base coordinates that must be left untouched (their rows
    of ``M`` stay the identity).  Identity and elementary shears are tried
    before random integer matrices.
    """
    rng = random.Random(seed)
    failures = []
    for attempt, M in enumerate(_ambient_candidates(V.nvars, V.m, fixed, rng, max_tries), start=1):
        if attempt > max_tries:
            break
        W = apply_change_to_variety(V, M)
        cert = properness_check(W)
        if cert:
            return ChangeRecord.make(M, "ambient", seed, attempt), W
        failures.append({"matrix": M, "failing_var": cert.failing_var})
    raise GenericityError(f"no proper position found in {max_tries} attempts", failures)


def _form_candidates(s: int, rng: random.Random):
    for k in range(s):
        yield [int(j == k) for j in range(s)]
    while True:
        L = [rng.randint(-3, 3) for _ in range(s)]
        if any(L):
            yield L


def form_separates(V: VarietySpec, L: Sequence, fiber_count: int) -> tuple[bool, int]:
    """Whether ``deg_z P_L`` reaches the generic fiber count; also returns that degree."""
    deg = optimal_polynomial(V, L).degree
    return deg == fiber_count, deg


def choose_linear_form(V: VarietySpec, seed: int = 0, max_tries: int = 20, fiber_count: int | None = None):
    """Linear form on the fiber variables separating generic fibers.

    Accepts ``L`` once ``deg_z P_L`` equals the generic fiber count.
    """
    if V.s == 0:
        return []
    count = generic_fiber_count(V, seed) if fiber_count is None else fiber_count
    rng = random.Random(seed)
    rejected = []
    for attempt, L in enumerate(_form_candidates(V.s, rng), start=1):
        if attempt > max_tries:
            break
        ok, deg = form_separates(V, L, count)
        if ok:
            return L
        rejected.append({"form": L, "degree": deg, "fiber_count": count})
    raise GenericityError(f"no separating linear form in {max_tries} attempts", rejected)


def _source_candidates(n: int, rng: random.Random, max_tries: int):
    yield identity(n)
    for c in (1, -1, 2):
        for i in range(n - 1):
            M = identity(n)
            M[i][n - 1] = c
            yield M
    half = max_tries // 2
    k = 0
    while True:
        width = 3 if k < half else 9
        M = [[rng.randint(-width, width) for _ in range(n)] for _ in range(n)]
        k += 1
        if _det_nonzero(M):
            yield M


def find_regular_direction(u: Jet, seed: int = 0, max_tries: int = 20):
    """Linear change of the source variables making ``u`` regular in ``x_n`` of minimal order.

    Returns ``(ChangeRecord, transformed jet, d)``.  The search stops early
    once ``d`` equals the total-degree valuation of ``u``, which no change
    can beat.
    """
    if u.is_zero():
        raise JetError("cannot find a regular direction for the zero jet")
    n = u.nvars
    target = u.valuation()
    rng = random.Random(seed)
    best = None
    for attempt, M in enumerate(_source_candidates(n, rng, max_tries), start=1):
        if attempt > max_tries:
            break
        v = u if attempt == 1 else u.linear_change(M)
        try:
            d = xn_regular_order(v)
        except JetError:
            continue
        if best is None or d < best[2]:
            best = (ChangeRecord.make(M, "source", seed, attempt), v, d)
        if d == target:
            break
    if best is None:
        raise GenericityError(f"no x_n-regular direction in {max_tries} attempts")
    return best
