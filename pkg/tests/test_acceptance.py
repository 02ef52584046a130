"""Acceptance gate: one test per criterion, exact arithmetic throughout.

Run with ``pytest tests/test_acceptance.py -v -s`` to see the one-line
PASS/FAIL stamp per criterion next to its measured runtime.

Criterion 7 ships in two parts.  The drafted expectation that the char-2
solvable-direction space of x^2 + y^2*z is {0} turned out to be
mathematically unattainable: in characteristic 2 both d/dx and d/dy are
exact logarithmic derivations (both partials vanish identically), so that
space is two-dimensional at every truncation.  The expectation is kept as
a deliberately failing test rather than silently corrected; the pathology
the contrast is actually after is asserted in the passing half: the
z-direction, tangent to the isosingular axis, admits no logarithmic
derivation while the recentered fingerprints agree.
"""

import random
import time
from fractions import Fraction

from conftest import (random_contact_element, random_matrix, random_poly,
                      random_system)

from isojet.contact import (ContactElement, act, group_mul, invert,
                            mather_complement, verify_equivalence_witness)
from isojet.derlog import (Derivation, LogInfeasible,
                           inseparability_certificate, solvable_directions,
                           solve_log_derivation, straighten_and_split)
from isojet.fields import Field, pth_root
from isojet.hs import Exhausted, HSDerivation, hs_search, hs_verify
from isojet.isoscan import brute_force_equiv, classify, enumerate_points
from isojet.linalg import Matrix
from isojet.parsing import make_ring, parse_poly, parse_system
from isojet.tangent import fingerprint, quartic_j_invariant, tangent_cone
from isojet.trunc import (PolySystem, TruncPoly, compose, ideal_span,
                          taylor_shift)

SEED = 20260808


def stamp(label, t0, limit):
    elapsed = time.time() - t0
    print(f"\nACCEPTANCE {label}: PASS ({elapsed:.2f}s, target < {limit}s)")
    assert elapsed < limit


def slide(spec, s):
    one = TruncPoly.const(spec, spec.field.one)
    x = TruncPoly.variable(spec, 0)
    y = TruncPoly.variable(spec, 1)
    z = TruncPoly.variable(spec, 2)
    return ContactElement(spec, ((one,),), (x + y.scale(s), y, z))


def test_acceptance_01_whitney_umbrella_witness():
    t0 = time.time()
    spec = make_ring("F2", nvars=3, beta=3)
    f = parse_system(["x^2+y^2*z"], spec)
    zero = [spec.field.zero] * 3
    axis = [spec.field.zero, spec.field.zero, spec.field.one]
    assert verify_equivalence_witness(f, zero, axis,
                                      slide(spec, spec.field.one))

    spec7 = make_ring("F7", nvars=3, beta=8)
    f7 = parse_system(["x^7+y^7*z"], spec7)
    F7 = spec7.field
    for t in F7.elements():
        s = pth_root(t)
        assert s ** 7 == t
        assert verify_equivalence_witness(
            f7, [F7.zero] * 3, [F7.zero, F7.zero, t], slide(spec7, s))
    stamp("1 whitney umbrella equivalence witness", t0, 1)


def test_acceptance_02_cusp_deformation_inseparability():
    t0 = time.time()
    spec = make_ring("F2", nvars=3, beta=5)
    field = spec.field
    f = parse_system(["x^2+y^3+z*y^2"], spec)
    axis = [field.zero, field.zero, field.one]
    witness = slide(spec, field.one)
    assert verify_equivalence_witness(f, [field.zero] * 3, axis, witness)
    for beta_work in (3, 4, 5):
        out = solve_log_derivation(f, axis, beta_work)
        assert isinstance(out, LogInfeasible)
        cert = inseparability_certificate(f, axis, witness, beta_work)
        assert cert.beta_work == beta_work
        assert [str(c) for c in cert.direction] == ["0", "0", "1"]
    stamp("2 cusp-deformation inseparability", t0, 5)


def test_acceptance_03_no_regular_hs_derivation():
    t0 = time.time()
    spec = make_ring("F2", nvars=3, beta=3)
    f = parse_system(["x^2+y^2*z"], spec)

    out = hs_search(f, r=2, beta_work=2, mode="regular")
    assert isinstance(out, Exhausted)
    rerun = hs_search(f, r=2, beta_work=2, mode="regular")
    assert isinstance(rerun, Exhausted) and rerun.nodes == out.nodes

    # the level-1 and level-2 constraints appear as violation residues:
    # t^1 carries y^2 * z1 and t^2 carries x1^2 + y^2*z2 + y1^2*z
    def D(*levels):
        return HSDerivation(spec, len(levels),
                            [[parse_poly(t, spec) for t in lvl]
                             for lvl in levels])

    ok, v = hs_verify(f, D(("0", "0", "1")), 2)
    assert not ok and v.order == 1
    assert v.residue == parse_poly("y^2", spec).truncated(2)

    ok, v = hs_verify(f, D(("0", "1", "0"), ("0", "0", "0")), 2)
    assert not ok and v.order == 2
    assert v.residue == parse_poly("z", spec).truncated(2)

    ok, v = hs_verify(f, D(("1", "0", "0"), ("0", "0", "0")), 2)
    assert not ok and v.order == 2
    assert v.residue == parse_poly("1", spec).truncated(2)

    ok, v = hs_verify(f, D(("0", "0", "0"), ("0", "0", "1")), 2)
    assert not ok and v.order == 2
    assert v.residue == parse_poly("y^2", spec).truncated(2)

    print(f"\n         search-tree nodes: {out.nodes}")
    stamp("3 no regular Hasse-Schmidt derivation (exhausted)", t0, 60)


def test_acceptance_04_char0_splitting():
    t0 = time.time()
    spec = make_ring("Q", nvars=3, beta=4)
    f = parse_system(["(x+z^2)^2+y^2"], spec)
    d = Derivation(spec,
                   [parse_poly("-2*z", spec), parse_poly("0", spec),
                    parse_poly("1", spec)],
                   [[parse_poly("0", spec)]])
    res = straighten_and_split(f, d)
    target = parse_system(["x^2+y^2"], spec)
    # residual equals x^2+y^2 up to the (here trivial) unit multiplier
    assert res.residual.entries[0] == target.entries[0]
    lower = spec.beta - 1
    assert ideal_span(res.residual, beta=lower) \
        == ideal_span(PolySystem(spec, [compose(
            f.entries[0], list(res.psi), allow_constant_term=True)]),
            beta=lower)
    stamp("4 characteristic-0 splitting", t0, 1)


def _hand_j_of_cross_ratio(roots):
    """Independent oracle: cross-ratio and j over plain Fractions.

    roots are four distinct points of P^1(Q) given as Fractions or None
    for the point at infinity.
    """
    z1, z2, z3, z4 = roots
    if z1 is None:
        lam = (z2 - z4) / (z2 - z3)
    elif z2 is None:
        lam = (z1 - z3) / (z1 - z4)
    elif z3 is None:
        lam = (z2 - z4) / (z1 - z4)
    elif z4 is None:
        lam = (z1 - z3) / (z2 - z3)
    else:
        lam = ((z1 - z3) * (z2 - z4)) / ((z2 - z3) * (z1 - z4))
    return Fraction(256) * (lam * lam - lam + 1) ** 3 \
        / (lam * lam * (lam - 1) ** 2)


def test_acceptance_05_cross_ratio_rigidity():
    t0 = time.time()
    spec = make_ring("Q", nvars=3, beta=5)
    field = spec.field
    f = parse_system(["x*y*(x+y)*(x+z*y)"], spec)

    values = {}
    for a in (2, 3):
        pt = [field.zero, field.zero, field.from_int(a)]
        cone = tangent_cone(taylor_shift(f, pt).entries[0])
        assert cone == parse_poly(f"x*y*(x+y)*(x+{a}*y)", spec)
        values[a] = quartic_j_invariant(cone)
        # independent hand evaluation: the lines x, y, x+y, x+ay meet P^1
        # in 0, infinity, -1, -a; j(cross ratio) over plain Fractions
        hand = _hand_j_of_cross_ratio(
            [Fraction(0), None, Fraction(-1), Fraction(-a)])
        assert values[a] == field.scalar(hand)

    assert str(values[2]) == "1728"
    assert str(values[3]) == "21952/9"
    assert values[2] != values[3]
    stamp("5 cross-ratio rigidity (1728 vs 21952/9)", t0, 1)


def test_acceptance_06_iso_scan_char2_umbrella():
    t0 = time.time()
    spec = make_ring("F2", nvars=3, beta=3)
    f = parse_system(["x^2+y^2*z"], spec)
    points = enumerate_points(f)
    assert len(points) == 4
    report = classify(f, points)
    classes = [[tuple(str(c) for c in report.entries[i].point) for i in cls]
               for cls in report.classes]
    assert classes == [
        [("0", "0", "0"), ("0", "0", "1")],
        [("0", "1", "0"), ("1", "1", "1")],
    ]
    flags = {tuple(str(c) for c in e.point): e.smooth
             for e in report.entries}
    assert not flags[("0", "0", "0")] and not flags[("0", "0", "1")]
    assert flags[("0", "1", "0")] and flags[("1", "1", "1")]
    stamp("6 iso-scan of the char-2 umbrella", t0, 1)


def test_acceptance_07_separable_vs_inseparable_contrast():
    t0 = time.time()
    spec7 = make_ring("F7", nvars=3, beta=3)
    f7 = parse_system(["x^2+y^2*z"], spec7)
    F7 = spec7.field
    assert solvable_directions(f7, 3).dim == 0
    fp7_origin = fingerprint(f7)
    fp7_axis = fingerprint(taylor_shift(f7, [F7.zero, F7.zero, F7.one]))
    assert fp7_origin != fp7_axis

    spec2 = make_ring("F2", nvars=3, beta=3)
    f2 = parse_system(["x^2+y^2*z"], spec2)
    F2 = spec2.field
    fp2_origin = fingerprint(f2)
    fp2_axis = fingerprint(taylor_shift(f2, [F2.zero, F2.zero, F2.one]))
    assert fp2_origin == fp2_axis
    # the pathology: the axis direction is tangent to the isosingular locus
    # yet admits no logarithmic derivation at this truncation
    space = solvable_directions(f2, 3)
    assert not space.contains_vector([F2.zero, F2.zero, F2.one])
    assert isinstance(solve_log_derivation(
        f2, [F2.zero, F2.zero, F2.one], 3), LogInfeasible)
    stamp("7 separable-vs-inseparable contrast", t0, 5)


def test_acceptance_07_char2_literal_zero_space():
    """Drafted expectation kept verbatim; fails by correct mathematics.

    In characteristic 2 both partial derivatives of x^2 + y^2 z vanish
    identically, so d/dx and d/dy satisfy d(f) = 0 in (f) exactly and the
    solvable-direction space is span{(1,0,0), (0,1,0)}, never {0}.
    """
    spec2 = make_ring("F2", nvars=3, beta=3)
    f2 = parse_system(["x^2+y^2*z"], spec2)
    space = solvable_directions(f2, 3)
    print("\nACCEPTANCE 7(literal char-2 clause): FAIL by correct "
          f"mathematics; space has dimension {space.dim}, basis "
          f"{[[str(c) for c in row] for row in space.basis]}")
    assert space.dim == 0, (
        "d/dx and d/dy are exact logarithmic derivations of x^2+y^2*z in "
        "characteristic 2 (both partials vanish identically), so the "
        "solvable-direction space is 2-dimensional, not {0}")


def test_acceptance_08_property_suites():
    t0 = time.time()
    rng = random.Random(SEED)

    # contact group left-action law, 500 cases
    for k in range(500):
        field_text = "F3" if k % 2 == 0 else "Q"
        n = 1 + (k % 2)
        s = make_ring(field_text, nvars=2, beta=2 + (k % 2))
        f = random_system(rng, s, n)
        g1 = random_contact_element(rng, s, n)
        g2 = random_contact_element(rng, s, n)
        assert act(group_mul(g2, g1), f) == act(g2, act(g1, f))
    print(f"\n         left-action law: 500 cases ({time.time()-t0:.1f}s)")

    # inversion is two-sided, 500 cases
    t1 = time.time()
    for k in range(500):
        field_text = "F3" if k % 2 == 0 else "Q"
        n = 1 + (k % 2)
        s = make_ring(field_text, nvars=2, beta=2)
        g = random_contact_element(rng, s, n)
        ident = ContactElement.identity(s, n)
        h = invert(g)
        assert group_mul(h, g) == ident and group_mul(g, h) == ident
    print(f"         inversion: 500 cases ({time.time()-t1:.1f}s)")

    # Mather determinant nonvanishing, 1000 cases per field
    t1 = time.time()
    for field in (Field(0), Field(2), Field(5)):
        ident = {n: Matrix.identity(field, n) for n in (1, 2, 3)}
        for k in range(1000):
            n = 1 + (k % 3)
            A = random_matrix(rng, field, n, n)
            B = random_matrix(rng, field, n, n)
            C = mather_complement(A, B)
            assert not (C * (ident[n] - A * B) + B).det().is_zero()
    print(f"         Mather complement: 3000 cases ({time.time()-t1:.1f}s)")

    # fingerprint contact-invariance, 500 cases
    t1 = time.time()
    for k in range(500):
        field_text = "F3" if k % 2 == 0 else "Q"
        n = 1 + (k % 2)
        s = make_ring(field_text, nvars=2, beta=3)
        f = random_system(rng, s, n)
        g = random_contact_element(rng, s, n)
        assert fingerprint(act(g, f)) == fingerprint(f)
    print(f"         fingerprint invariance: 500 cases "
          f"({time.time()-t1:.1f}s)")

    # composition associativity, 500 cases
    t1 = time.time()
    for k in range(500):
        field_text = "F3" if k % 2 == 0 else "Q"
        s = make_ring(field_text, nvars=2, beta=3)
        f = random_poly(rng, s)
        phi = [random_poly(rng, s, zero_const=True) for _ in range(2)]
        psi = [random_poly(rng, s, zero_const=True) for _ in range(2)]
        assert compose(compose(f, phi), psi) \
            == compose(f, [compose(p, psi) for p in phi])
    print(f"         compose associativity: 500 cases "
          f"({time.time()-t1:.1f}s)")

    # solvable directions form a subspace: sums and scalings stay feasible
    t1 = time.time()
    checked = 0
    while checked < 500:
        s = make_ring("F3", nvars=2, beta=3)
        f = PolySystem(s, [random_poly(rng, s, zero_const=True)])
        space = solvable_directions(f, 3)
        assert space.contains_vector([s.field.zero] * 2)
        if space.dim == 0:
            checked += 1
            continue
        u = [s.field.zero] * 2
        w = [s.field.zero] * 2
        for row in space.basis:
            cu, cw = s.field.sample(rng), s.field.sample(rng)
            u = [a + cu * b for a, b in zip(u, row)]
            w = [a + cw * b for a, b in zip(w, row)]
        lam = s.field.sample(rng)
        for v in (u, w, [a + b for a, b in zip(u, w)],
                  [lam * a for a in u]):
            assert space.contains_vector(v)
            assert isinstance(solve_log_derivation(f, v, 3), Derivation)
        checked += 1
    print(f"         solvable-direction closure: 500 cases "
          f"({time.time()-t1:.1f}s)")

    # exhaustive tiny-scale soundness: orbit equality refines fingerprints
    t1 = time.time()
    import itertools
    s = make_ring("F2", nvars=1, beta=2)
    monos = s.monomials()
    jets = [PolySystem(s, [TruncPoly(
        s, {e: c for e, c in zip(monos, combo) if not c.is_zero()})])
        for combo in itertools.product(list(s.field.elements()),
                                       repeat=len(monos))]
    pairs = 0
    for f in jets:
        for g in jets:
            if brute_force_equiv(f, g):
                assert fingerprint(f) == fingerprint(g)
            pairs += 1
    print(f"         brute-force vs fingerprint: {pairs} pairs "
          f"({time.time()-t1:.1f}s)")

    stamp("8 property suites", t0, 300)
