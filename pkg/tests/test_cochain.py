import itertools
import random
from fractions import Fraction

import pytest
import sympy
from hypothesis import given, strategies as st

from lierinehart.cochain import (Cochain, CohomologyClass, EvenClassPolynomial, NotCocycleError,
                                 ce_differential, char_ring_dim, class_coordinates, class_equal,
                                 cohomology_window, coordinate_form, exp_class, is_cocycle,
                                 is_exact_in_window, random_cochain, random_cocycle, wedge,
                                 wedge_power)
from lierinehart.lralg import UnsupportedGradingError, make_standard_algebra

from conftest import BUILTINS
from test_lralg import sl2_like

seeds = st.integers(0, 10 ** 6)


def koszul_betti(n, D):
    """Betti numbers of the torus window, straight from the Koszul description.

    On ``x^w theta_I`` the differential is wedging with ``sum_i w_i theta_i``,
    so each weight is a finite complex on the exterior algebra.
    """
    betti = [0] * (n + 1)
    subsets = {p: list(itertools.combinations(range(n), p)) for p in range(n + 2)}
    for w in itertools.product(range(-D, D + 1), repeat=n):
        ranks = []
        for p in range(n + 1):
            rows, cols = subsets[p + 1], subsets[p]
            M = sympy.zeros(max(len(rows), 1), max(len(cols), 1))
            for r, I in enumerate(rows):
                for k, i in enumerate(I):
                    J = I[:k] + I[k + 1:]
                    M[r, cols.index(J)] += (-1) ** k * w[i]
            ranks.append(M.rank() if rows and cols else 0)
        for p in range(n + 1):
            betti[p] += len(subsets[p]) - ranks[p] - (ranks[p - 1] if p else 0)
    return betti


@pytest.mark.parametrize("n,D", [(1, 3), (2, 2), (2, 3), (3, 1)])
def test_torus_betti_matches_koszul_oracle(n, D):
    P = make_standard_algebra("torus", n)
    ours = [cohomology_window(P, p, D).dimension for p in range(n + 1)]
    assert ours == koszul_betti(n, D)


def test_torus_betti_numbers():
    T2, T3 = make_standard_algebra("torus", 2), make_standard_algebra("torus", 3)
    for D in (4, 5):
        assert [cohomology_window(T2, p, D).dimension for p in range(3)] == [1, 2, 1]
    assert [cohomology_window(T3, p, 2).dimension for p in range(4)] == [1, 3, 3, 1]


def test_affine_and_point_betti_numbers():
    A2 = make_standard_algebra("affine", 2)
    assert [cohomology_window(A2, p, 3).dimension for p in range(3)] == [1, 0, 0]
    P3 = make_standard_algebra("point-abelian", 3)
    assert [cohomology_window(P3, p, 0).dimension for p in range(4)] == [1, 3, 3, 1]


def test_nonabelian_cohomology():
    # Q[x] with d/dx, x d/dx: de Rham of the line twisted by the 2d Lie algebra
    P = sl2_like()
    dims = [cohomology_window(P, p, 3).dimension for p in range(3)]
    assert dims[0] == 1
    assert sum((-1) ** p * d for p, d in enumerate(dims)) == dims[0] - dims[1] + dims[2]


def test_ungradable_presentation_raises():
    from lierinehart.arith import Ring
    from lierinehart.lralg import LieRinehart
    P = LieRinehart(Ring(["x"], False), 1, [["1 + x"]])
    with pytest.raises(UnsupportedGradingError):
        cohomology_window(P, 1, 2)


@pytest.mark.parametrize("kind,n", BUILTINS)
@given(seed=seeds, p=st.integers(0, 3))
def test_d_squared_is_zero(kind, n, seed, p):
    P = make_standard_algebra(kind, n)
    if p > P.rank:
        return
    omega = random_cochain(P, p, random.Random(seed))
    assert ce_differential(ce_differential(omega)).is_zero()


@pytest.mark.parametrize("kind,n", [("torus", 3), ("affine", 2), ("point-abelian", 3)])
@given(seed=seeds, p=st.integers(0, 2), q=st.integers(0, 2))
def test_leibniz_rule_for_wedge(kind, n, seed, p, q):
    P = make_standard_algebra(kind, n)
    rng = random.Random(seed)
    a, b = random_cochain(P, p, rng), random_cochain(P, q, rng)
    lhs = ce_differential(wedge(a, b))
    rhs = wedge(ce_differential(a), b) + (-1) ** p * wedge(a, ce_differential(b))
    assert lhs == rhs


@given(seed=seeds, p=st.integers(0, 3), q=st.integers(0, 3))
def test_wedge_is_graded_commutative_and_associative(seed, p, q):
    P = make_standard_algebra("torus", 3)
    rng = random.Random(seed)
    a, b, c = (random_cochain(P, k, rng) for k in (p, q, 1))
    assert wedge(a, b) == (-1) ** (p * q) * wedge(b, a)
    assert wedge(wedge(a, b), c) == wedge(a, wedge(b, c))


def test_wedge_of_coordinate_forms():
    P = make_standard_algebra("point-abelian", 3)
    t1, t2 = coordinate_form(P, (0,)), coordinate_form(P, (1,))
    assert wedge(t1, t2) == coordinate_form(P, (0, 1))
    assert wedge(t2, t1) == coordinate_form(P, (0, 1), -1)
    assert wedge(t1, t1).is_zero()


def test_values_are_alternating():
    P = make_standard_algebra("torus", 2)
    f = coordinate_form(P, (0, 1), 3)
    assert f.value((1, 0)) == -3
    assert f.value((0, 0)) == 0


def test_json_round_trip(f_tor):
    data = {"degree": 2, "values": {"1,2": "x*y^-1 - 2"}}
    c = Cochain.from_json(f_tor.P, data)
    assert c.to_json() == {"degree": 2, "values": {"1,2": "-2 + x*y^-1"}}
    assert Cochain.from_json(f_tor.P, c.to_json()) == c
    with pytest.raises(ValueError):
        Cochain.from_json(f_tor.P, {"degree": 2, "values": {"1,3": "1"}})


@given(seed=seeds)
def test_coboundaries_are_exact_in_the_window(seed):
    P = make_standard_algebra("torus", 2)
    rng = random.Random(seed)
    eta = random_cochain(P, 1, rng)
    assert is_exact_in_window(ce_differential(eta), 2)


@given(seed=seeds)
def test_class_equal_modulo_coboundaries(seed):
    P = make_standard_algebra("torus", 2)
    rng = random.Random(seed)
    f = coordinate_form(P, (0, 1), Fraction(rng.randint(1, 9), 4))
    g = f + ce_differential(random_cochain(P, 1, rng))
    assert class_equal(f, g, 2)
    assert not class_equal(f, 2 * f, 2)


def test_class_equal_requires_cocycles():
    P = make_standard_algebra("torus", 3)
    bad = coordinate_form(P, (0, 1), P.ring.gen(2))
    assert not is_cocycle(bad)
    with pytest.raises(NotCocycleError):
        class_equal(bad, bad)
    with pytest.raises(NotCocycleError):
        CohomologyClass(bad)


def test_class_outside_window_is_not_detected_as_exact(f_tor):
    x = f_tor.P.ring.gen(0)
    g = coordinate_form(f_tor.P, (0, 1), x ** 5)
    assert not is_exact_in_window(g, 4)
    assert is_exact_in_window(g, 5)


def test_class_coordinates(f_tor):
    assert class_coordinates(3 * f_tor, 2) == [3]
    x = f_tor.P.ring.gen(0)
    assert class_coordinates(coordinate_form(f_tor.P, (0, 1), x), 2) == [0]


@given(seed=seeds)
def test_random_cocycles_are_cocycles(seed):
    for kind, n in [("torus", 3), ("affine", 2), ("point-abelian", 3)]:
        P = make_standard_algebra(kind, n)
        assert is_cocycle(random_cocycle(P, random.Random(seed)))


@given(a=st.fractions(-3, 3, max_denominator=3), b=st.fractions(-3, 3, max_denominator=3))
def test_exp_is_additive(a, b):
    P = make_standard_algebra("point-abelian", 4)
    x = coordinate_form(P, (0, 1), a) + coordinate_form(P, (2, 3), 1)
    y = coordinate_form(P, (0, 2), b) + coordinate_form(P, (1, 3), a)
    assert exp_class(x) * exp_class(y) == exp_class(x + y)


def test_exp_components():
    P = make_standard_algebra("point-abelian", 4)
    x = coordinate_form(P, (0, 1)) + coordinate_form(P, (2, 3))
    e = exp_class(x)
    assert e[0] == Cochain.constant(P, 1)
    assert e[1] == x
    assert e[2] == wedge_power(x, 2) / 2
    assert e[2] == coordinate_form(P, (0, 1, 2, 3))


def test_even_class_polynomial_is_truncated(f_tor):
    e = exp_class(f_tor)
    assert len(e) == 2
    assert e * e == exp_class(2 * f_tor)
    assert EvenClassPolynomial.scalar(f_tor.P, 2) * e == 2 * e


def test_char_ring_dimension(f_tor):
    assert char_ring_dim(f_tor.P, [f_tor]).dimension == 1
    P3 = make_standard_algebra("point-abelian", 3)
    basis = [coordinate_form(P3, I) for I in itertools.combinations(range(3), 2)]
    assert char_ring_dim(P3, basis).dimension == 3
    with pytest.raises(NotCocycleError):
        T3 = make_standard_algebra("torus", 3)
        char_ring_dim(T3, [coordinate_form(T3, (0, 1), T3.ring.gen(2))])


def test_threaded_window_matches_serial(monkeypatch):
    from lierinehart import cochain
    P = make_standard_algebra("torus", 3)
    cochain._pieces.cache_clear()
    serial = [cohomology_window(P, p, 2).to_json() for p in range(4)]
    monkeypatch.setenv("WORKBENCH_THREADS", "4")
    cochain._pieces.cache_clear()
    threaded = [cohomology_window(P, p, 2).to_json() for p in range(4)]
    cochain._pieces.cache_clear()
    assert threaded == serial
