"""Regression pins for the coefficient-appearance analysis that keeps the
order-by-order search finite.

The bounds must be sound overapproximations: a coefficient the analysis
declares unreadable must have zero influence on every constraint, which the
brute-force cross-validation in test_hs checks globally.  Here the exact
bounds for the char-2 umbrella are frozen, since the search's node count and
completeness argument depend on them.
"""

from isojet.hs import _max_readable_degree
from isojet.parsing import make_ring, parse_system


def bounds(f, beta_work, r, i, k_lo, k_hi):
    return [
        _max_readable_degree(f, beta_work, r, i, j, k_lo, k_hi)
        for j in range(f.spec.nvars)
    ]


def test_whitney_char2_level1_kept():
    s = make_ring("F2", nvars=3, beta=3)
    f = parse_system(["x^2+y^2*z"], s)
    # readable anywhere in t^1..t^2: x-image up to degree 1 (via squares),
    # y-image constants (via y^2 z), z-image constants (via t^1)
    assert bounds(f, 2, 2, 1, 1, 2) == [1, 0, 0]


def test_whitney_char2_level1_downstream():
    s = make_ring("F2", nvars=3, beta=3)
    f = parse_system(["x^2+y^2*z"], s)
    # readable strictly below: z-image never reappears before t^3
    assert bounds(f, 2, 2, 1, 2, 2) == [1, 0, -1]


def test_whitney_char2_level2_kept():
    s = make_ring("F2", nvars=3, beta=3)
    f = parse_system(["x^2+y^2*z"], s)
    # at t^2 only the constant z-image can contribute (y^2 * z2); the x- and
    # y-images appear first at t^4 through their squares
    assert bounds(f, 2, 2, 2, 2, 2) == [-1, -1, 0]


def test_odd_char_keeps_cross_terms():
    # over F_3 the binomial 2*x*x1 survives; the image coefficient of degree
    # a rides on x * x^a, so a is capped by beta_work - 1
    s = make_ring("F3", nvars=1, beta=2)
    f = parse_system(["x^2"], s)
    assert bounds(f, 2, 1, 1, 1, 1) == [1]
    s3 = make_ring("F3", nvars=1, beta=3)
    f3 = parse_system(["x^2"], s3)
    assert bounds(f3, 3, 1, 1, 1, 1) == [2]


def test_char2_kills_cross_terms():
    s = make_ring("F2", nvars=1, beta=2)
    f = parse_system(["x^2"], s)
    # 2*x*x1 = 0, and the square x1^2 only reaches t^2 > r
    assert bounds(f, 2, 1, 1, 1, 1) == [-1]
    # with r = 2 the square comes into range
    assert bounds(f, 2, 2, 1, 1, 2) == [1]
