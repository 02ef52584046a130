import pytest

from conftest import random_poly

from isojet.errors import (ConstantTermNotAllowed, NotAUnit, SpecMismatch)
from isojet.parsing import make_ring, parse_poly
from isojet.trunc import (PolySystem, TruncPoly, compose, ideal_span,
                          monomials, ring_arith, taylor_shift, unit_ops)


def P(text, spec, truncate=False):
    return parse_poly(text, spec, truncate=truncate)


def test_monomial_basis_size():
    from math import comb
    for nvars in (1, 2, 3):
        for beta in (0, 1, 2, 4):
            assert len(monomials(nvars, beta)) == comb(nvars + beta, nvars)


def test_truncation_kills_products():
    s = make_ring("Q", nvars=1, beta=1)
    assert (P("x", s) * P("x", s)).is_zero()


def test_difference_of_squares():
    s = make_ring("Q", nvars=2, beta=2)
    assert P("(x+y)*(x-y)", s) == P("x^2-y^2", s)


def test_frobenius_square():
    s = make_ring("F2", nvars=2, beta=2)
    assert P("(x+y)^2", s) == P("x^2+y^2", s)


def test_spec_mismatch():
    a = P("x", make_ring("Q", nvars=1, beta=2))
    b = P("x", make_ring("Q", nvars=1, beta=3))
    with pytest.raises(SpecMismatch):
        a + b


def test_derivative_examples():
    s = make_ring("Q", nvars=2, beta=3)
    assert P("x^2+y^3", s).derivative(0) == P("2*x", s)
    sf = make_ring("F2", nvars=1, beta=2)
    assert P("x^2", sf).derivative(0).is_zero()
    w = make_ring("F2", nvars=3, beta=3)
    assert P("x^2+y^2*z", w).derivative(2) == P("y^2", w)


def test_leibniz_random(rng):
    for field_text in ("Q", "F3"):
        for _ in range(40):
            s = make_ring(field_text, nvars=2, beta=3)
            f, g = random_poly(rng, s), random_poly(rng, s)
            for j in range(2):
                lhs = (f * g).derivative(j)
                rhs = f.derivative(j) * g + f * g.derivative(j)
                diff = lhs - rhs
                # compare only below the degree lost to differentiation
                assert all(sum(e) >= s.beta for e in diff.coeffs)


def test_compose_examples():
    s = make_ring("Q", nvars=2, beta=3)
    assert compose(P("x^2", s), [P("x+y", s), P("y", s)]) \
        == P("x^2+2*x*y+y^2", s)
    s1 = make_ring("Q", nvars=1, beta=3)
    assert compose(P("x", s1), [P("x+x^4", s1, truncate=True)]) == P("x", s1)
    w = make_ring("F2", nvars=3, beta=3)
    assert compose(P("x^2+y^2*z", w), [P("x+y", w), P("y", w), P("z", w)]) \
        == P("x^2+y^2+y^2*z", w)


def test_compose_rejects_constant_terms():
    s = make_ring("Q", nvars=1, beta=2)
    with pytest.raises(ConstantTermNotAllowed):
        compose(P("x", s), [P("x+1", s)])


def test_compose_associativity_random(rng):
    for _ in range(40):
        s = make_ring("F3", nvars=2, beta=3)
        f = random_poly(rng, s)
        phi = [random_poly(rng, s, zero_const=True) for _ in range(2)]
        psi = [random_poly(rng, s, zero_const=True) for _ in range(2)]
        comp = [compose(p, psi) for p in phi]
        assert compose(compose(f, phi), psi) == compose(f, comp)


def test_taylor_shift_examples():
    w = make_ring("F2", nvars=3, beta=3)
    f = PolySystem(w, [P("x^2+y^2*z", w)])
    shifted = taylor_shift(f, [w.field.zero, w.field.zero, w.field.one])
    assert shifted.entries[0] == P("x^2+y^2*z+y^2", w)

    sq = make_ring("Q", nvars=1, beta=2)
    g = PolySystem(sq, [P("x^2", sq)])
    assert taylor_shift(g, [sq.field.one]).entries[0] == P("x^2+2*x+1", sq)
    assert taylor_shift(g, [sq.field.zero]) == g


def test_taylor_shift_is_additive(rng):
    s = make_ring("Q", nvars=2, beta=4)
    for _ in range(25):
        f = PolySystem(s, [random_poly(rng, s)])
        a = [s.field.sample(rng) for _ in range(2)]
        b = [s.field.sample(rng) for _ in range(2)]
        ab = [x + y for x, y in zip(a, b)]
        assert taylor_shift(taylor_shift(f, a), b) == taylor_shift(f, ab)


def test_ideal_span_examples():
    s = make_ring("Q", nvars=1, beta=2)
    assert ideal_span(PolySystem(s, [P("x", s)])).dim == 2
    assert ideal_span(PolySystem(s, [P("0", s)])).dim == 0
    s2 = make_ring("Q", nvars=2, beta=3)
    assert ideal_span(PolySystem(s2, [P("x^2+y^3", s2)])).dim == 3


def test_ideal_span_maximal_ideal_gap():
    from isojet.linalg import Subspace
    s = make_ring("Q", nvars=2, beta=3)
    f = PolySystem(s, [P("x^2+y^3", s), P("x^2", s)])
    plain = ideal_span(f)
    maximal = ideal_span(f, maximal_ideal=True)
    assert plain.contains(maximal)
    # the gap is the rank of the generators modulo the maximal-ideal span
    gap_space = maximal
    rank_mod = 0
    for g in f.entries:
        bigger = gap_space.sum(Subspace.from_vectors(
            s.field, s.dim, [g.coefficient_vector()]))
        if bigger.dim > gap_space.dim:
            rank_mod += 1
            gap_space = bigger
    assert plain.dim - maximal.dim == rank_mod


def test_unit_ops():
    s = make_ring("Q", nvars=1, beta=3)
    assert unit_ops(P("1+x", s), "invert") == P("1-x+x^2-x^3", s)
    assert unit_ops(P("x", s), "is_unit") is False
    assert unit_ops(P("2", s), "invert") == P("1/2", s)
    with pytest.raises(NotAUnit):
        unit_ops(P("x", s), "invert")


def test_unit_inverse_random(rng):
    for field_text in ("Q", "F5"):
        s = make_ring(field_text, nvars=2, beta=3)
        one = TruncPoly.const(s, s.field.one)
        for _ in range(30):
            u = random_poly(rng, s, unit=True)
            assert u * u.invert_unit() == one


def test_ring_arith_dispatch(rng):
    s = make_ring("Q", nvars=1, beta=2)
    a, b = P("1+x", s), P("x", s)
    assert ring_arith(a, b, "add") == P("1+2*x", s)
    assert ring_arith(a, b, "sub") == P("1", s)
    assert ring_arith(a, b, "mul") == P("x+x^2", s)
    assert ring_arith(a, s.field.from_int(3), "scale") == P("3+3*x", s)


def test_mul_associative_random(rng):
    s = make_ring("F2", nvars=2, beta=4)
    for _ in range(40):
        f, g, h = (random_poly(rng, s) for _ in range(3))
        assert (f * g) * h == f * (g * h)
        assert f * g == g * f


def test_system_requires_consistent_spec():
    s = make_ring("Q", nvars=2, beta=2)
    s2 = make_ring("Q", nvars=2, beta=3)
    with pytest.raises(SpecMismatch):
        PolySystem(s, [P("x", s), P("y", s2)])
