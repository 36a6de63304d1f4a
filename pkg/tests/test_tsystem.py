import random
from fractions import Fraction

import pytest

from nashapprox.closure import annihilator_from, eliminate_algebraic, monic_in
from nashapprox.elim import ElimError
from nashapprox.gaussrat import GaussRat
from nashapprox.poly import MultiPoly, PolyError, UniOverPoly, parse_poly
from nashapprox.tsystem import build_T_system


def P_L(text, names):
    return UniOverPoly.from_multi(parse_poly(text, names), len(names) - 1)


def test_square_root_system_by_hand():
    T = build_T_system(P_L("z^2 - y", ["y", "z"]), m=1, d=1)
    names = list(T.symbols)
    want = ["-2*a1*c0^2 + 2*c0*c1 - b1_0", "-a1^2*c0^2 + c1^2 - b1_1", "-2*a1*c0 + 2*c1"]
    assert [t.to_text(names) for t in T.T] == [parse_poly(w, names).to_text(names) for w in want]
    assert T.coefficient_names == ["a1", "b1_0", "b1_1", "c0", "c1"]
    assert all(not p for p in T.identity_defects())


def random_unitary(rng, m, deg):
    N = m + 1
    terms = {(0,) * m + (deg,): GaussRat(1)}
    for _ in range(4):
        e = tuple(rng.randint(0, 2) for _ in range(m)) + (rng.randint(0, deg - 1),)
        terms[e] = GaussRat(Fraction(rng.randint(-3, 3)))
    return UniOverPoly.from_multi(MultiPoly(N, terms), m)


@pytest.mark.parametrize("seed", range(5))
def test_identities_hold_exactly(seed):
    rng = random.Random(seed)
    m, d = rng.choice([(1, 1), (1, 2), (2, 1)])
    T = build_T_system(random_unitary(rng, m, rng.randint(2, 3)), m, d)
    assert len(T.T) == 3 * d
    assert all(not p for p in T.identity_defects())
    assert all(t.variables() <= set(T.coefficient_index) for t in T.T)


def test_layout():
    T = build_T_system(P_L("z^2 - y1*y2", ["y1", "y2", "z"]), m=2, d=2)
    assert T.symbols[0] == "xn" and T.symbols[-1] == "St"
    assert [T.symbols[i] for i in T.b_index(1)] == ["b2_0", "b2_1", "b2_2", "b2_3"]
    assert [T.symbols[i] for i in T.S_index] == ["S1", "S2"]
    assert len(T.coefficient_index) == 3 * 2 + 2 * 2 * 2


def test_rejects_bad_input():
    with pytest.raises(PolyError):
        build_T_system(P_L("z^2 - y", ["y", "z"]), m=1, d=0)
    with pytest.raises(PolyError):
        build_T_system(P_L("y*z^2 - 1", ["y", "z"]), m=1, d=1)


def test_sum_of_square_roots():
    names = ["x", "t", "z"]
    A = parse_poly("t^2 - x", names)
    Q = parse_poly("(z - t)^2 - (1 + x)", names)
    R = eliminate_algebraic(Q, [(1, A)])
    assert R == parse_poly("z^4 - 2*(2*x + 1)*z^2 + 1", names)
    U = annihilator_from(R, 2, [0, 2])
    assert U.to_multi() == parse_poly("z^4 - 2*(2*x + 1)*z^2 + 1", ["x", "z"])


def test_linear_relation_substitutes():
    names = ["x", "t", "z"]
    R = eliminate_algebraic(parse_poly("z - t^2", names), [(1, parse_poly("t - x - 1", names))])
    assert R == parse_poly("z - (x + 1)^2", names)


def test_non_unitary_eliminant_is_rejected():
    # z = 1/t with t^2 = 1 + x gives (1 + x) z^2 - 1, not unitary over C[x]
    names = ["x", "t", "z"]
    R = eliminate_algebraic(parse_poly("t*z - 1", names), [(1, parse_poly("t^2 - 1 - x", names))])
    assert R == parse_poly("1 - (1 + x)*z^2", names)
    with pytest.raises(ElimError):
        annihilator_from(R, 2, [0, 2])


def test_monic_scaling_and_leftover_variables():
    names = ["x", "t", "z"]
    assert monic_in(parse_poly("3*z^2 - x", names), 2) == parse_poly("z^2 - 1/3*x", names)
    with pytest.raises(ElimError):
        annihilator_from(parse_poly("z - t", names), 2, [0, 2])
