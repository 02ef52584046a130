"""Shared deterministic random generators for the property suites."""

import random

import pytest

from isojet.contact import ContactElement
from isojet.linalg import Matrix
from isojet.trunc import PolySystem, TruncPoly


def random_poly(rng, spec, zero_const=False, unit=False, density=0.45):
    coeffs = {}
    for e in spec.monomials():
        if zero_const and sum(e) == 0:
            continue
        if rng.random() < density:
            c = spec.field.sample(rng)
            if not c.is_zero():
                coeffs[e] = c
    p = TruncPoly(spec, coeffs)
    if unit and p.constant_term.is_zero():
        p = p + TruncPoly.const(spec, spec.field.one)
    return p


def random_system(rng, spec, n):
    return PolySystem(spec, [random_poly(rng, spec) for _ in range(n)])


def random_substitution(rng, spec):
    """Origin-fixing coordinate images with invertible linear part."""
    while True:
        phi = [random_poly(rng, spec, zero_const=True)
               for _ in range(spec.nvars)]
        rows = [[ph.derivative(k).constant_term for k in range(spec.nvars)]
                for ph in phi]
        if Matrix(spec.field, rows).is_invertible():
            return tuple(phi)


def random_contact_element(rng, spec, n):
    while True:
        M = [[random_poly(rng, spec) for _ in range(n)] for _ in range(n)]
        M0 = Matrix(spec.field,
                    [[entry.constant_term for entry in row] for row in M])
        if M0.is_invertible():
            break
    return ContactElement(spec, M, random_substitution(rng, spec))


def random_matrix(rng, field, nrows, ncols):
    return Matrix(field, [[field.sample(rng) for _ in range(ncols)]
                          for _ in range(nrows)])


@pytest.fixture
def rng():
    return random.Random(20260808)
