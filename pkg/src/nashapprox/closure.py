"""Annihilators of polynomial expressions in algebraic functions.

If ``t`` satisfies a unitary ``A(x, t) = 0`` and ``z`` satisfies a unitary
``Q(x, t, z) = 0``, then ``res_t(A, Q)`` is unitary in ``z`` over ``C[x]``
and vanishes at ``z``.  Repeating this over several ``t`` gives the ring
closure used to annihilate sums, products and compositions of Nash functions.
"""

from __future__ import annotations

from typing import Sequence

from .elim import ElimError
from .poly import MultiPoly, PolyError, UniOverPoly, resultant, squarefree_part

__all__ = ["eliminate_algebraic", "monic_in", "annihilator_from"]


def eliminate_algebraic(Q: MultiPoly, eliminations: Sequence[tuple[int, MultiPoly]]) -> MultiPoly:
    """Remove each variable ``t`` from ``Q`` using its unitary relation ``A`` (same ring).

    Degree-one relations ``t - p`` are applied by substitution.
    """
    for t, A in eliminations:
        if Q.degree(t) <= 0:
            continue
        if not A.is_monic_in(t):
            raise ElimError("relation is not unitary in the eliminated variable")
        if A.degree(t) == 1:
            p = -(A - MultiPoly.var(t, A.nvars))
            Q = Q.substitute(t, p)
        else:
            Q = resultant(A, Q, t)
    return Q


def monic_in(Q: MultiPoly, z: int) -> MultiPoly:
    lc = Q.leading_coeff_in(z)
    if not lc.is_constant() or not lc:
        raise ElimError("eliminant is not unitary in the dependent variable")
    return Q.scale(lc.constant_term().inverse())


def annihilator_from(Q: MultiPoly, z: int, keep: Sequence[int], squarefree: bool = True) -> UniOverPoly:
    """Monic (optionally squarefree) annihilator in the variables ``keep`` with ``z`` among them."""
    if not Q:
        raise ElimError("eliminant vanished identically")
    extra = Q.variables() - set(keep)
    if extra:
        raise ElimError("eliminant still involves auxiliary variables")
    keep = list(keep)
    P = monic_in(Q, z).drop_vars(keep)
    zi = keep.index(z)
    U = UniOverPoly.from_multi(P, zi)
    if squarefree and U.degree > 1:
        try:
            U = squarefree_part(U)
        except PolyError:
            pass
    return U
