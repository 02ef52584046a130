"""Orbit tangent spaces, contact-invariant fingerprints, and the
j-invariant of four-line tangent cones.

The tangent space at f of the contact orbit is the image of the group's
tangent space at the identity: matrix directions contribute x^a * E_ij * f,
substitution directions contribute x^a * df/dx_j with |a| >= 1 (origin-fixing
automorphisms have no constant direction).
"""

from __future__ import annotations

from .errors import (PreconditionFailed, RepeatedRoots, RootsNotInField,
                     ZeroInput)
from .linalg import Subspace, rref
from .trunc import TruncPoly


def orbit_tangent_space(system):
    """Subspace of O^n spanned by the differential of the orbit map."""
    spec = system.spec
    n = system.n
    dim = spec.dim
    zero_vec = [spec.field.zero] * (n * dim)
    vectors = []

    def slotted(i, poly):
        vec = list(zero_vec)
        pv = poly.coefficient_vector()
        vec[i * dim:(i + 1) * dim] = pv
        return vec

    for e in spec.monomials():
        d = sum(e)
        mono = TruncPoly.monomial(spec, e)
        # matrix directions: x^a E_ij applied to f
        for j, f in enumerate(system.entries):
            ordf = f.order()
            if ordf is None or d + ordf > spec.beta:
                continue
            prod = mono * f
            for i in range(n):
                vectors.append(slotted(i, prod))
        # substitution directions: x^a * (df_1/dx_j, ..., df_n/dx_j), |a| >= 1
        if d >= 1:
            for j in range(spec.nvars):
                vec = list(zero_vec)
                any_nonzero = False
                for i, f in enumerate(system.entries):
                    part = mono * f.derivative(j)
                    if part.is_zero():
                        continue
                    any_nonzero = True
                    pv = part.coefficient_vector()
                    for k, c in enumerate(pv):
                        if not c.is_zero():
                            vec[i * dim + k] = c
                if any_nonzero:
                    vectors.append(vec)
    return Subspace.from_vectors(spec.field, n * dim, vectors)


class Fingerprint:
    """Contact-invariant data of a jet: orders, Hilbert vector, codimension.

    Equality (the classification key) uses only invariant fields: the base
    field, beta, n, the minimal order, the Hilbert vector, and the total
    codimension.  The per-component order vector is carried as data only;
    mixing components with a unit matrix can change it when n >= 2.
    """

    __slots__ = ("field", "beta", "n", "orders", "min_order", "hilbert",
                 "codim")

    def __init__(self, field, beta, n, orders, hilbert, codim):
        self.field = field
        self.beta = beta
        self.n = n
        self.orders = tuple(orders)
        finite = [o for o in self.orders if o is not None]
        self.min_order = min(finite) if finite else None
        self.hilbert = tuple(hilbert)
        self.codim = codim

    def key(self):
        return (self.field.key(), self.beta, self.n, self.min_order,
                self.hilbert, self.codim)

    def __eq__(self, other):
        return isinstance(other, Fingerprint) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        return (f"Fingerprint(orders={self.orders}, hilbert={self.hilbert}, "
                f"codim={self.codim})")

    def to_json(self):
        return {
            "field": self.field.to_string(),
            "beta": self.beta,
            "n": self.n,
            "orders": list(self.orders),
            "min_order": self.min_order,
            "hilbert": list(self.hilbert),
            "codim": self.codim,
        }


def fingerprint(system):
    """Fingerprint of a system from its orbit tangent space.

    h_d is the dimension of the degree-<=d part of O^n modulo the tangent
    space, with everything of order > d killed as well:

        h_d = dim F_d - dim T + dim(T meet G_{d+1}),

    where F_d spans the monomials of degree <= d and G_{d+1} those of degree
    > d.  This is the reading stable under the differential of the group
    action, which preserves the order filtration G but not the span F.  The
    intersection dimensions fall out of one echelon form taken in
    coordinates sorted by ascending monomial degree: the rows with pivot
    degree >= d+1 are exactly a basis of T meet G_{d+1}.
    """
    spec = system.spec
    n = system.n
    dim = spec.dim
    T = orbit_tangent_space(system)

    monos = spec.monomials()
    coord_deg = [sum(monos[k]) for k in range(dim)] * n
    order_perm = sorted(range(n * dim), key=lambda c: (coord_deg[c], c))
    permuted = [[row[c] for c in order_perm] for row in T.basis]
    _, pivots = rref(permuted, spec.field)
    pivot_degrees = [coord_deg[order_perm[p]] for p in pivots]

    counts = [0] * (spec.beta + 1)
    for e in monos:
        counts[sum(e)] += 1
    dim_filtration = []
    running = 0
    for d in range(spec.beta + 1):
        running += counts[d]
        dim_filtration.append(n * running)

    hilbert = []
    for d in range(spec.beta + 1):
        deep = sum(1 for pd in pivot_degrees if pd >= d + 1)
        hilbert.append(dim_filtration[d] - T.dim + deep)

    codim = n * dim - T.dim
    return Fingerprint(spec.field, spec.beta, n, system.orders(), hilbert,
                       codim)


def tangent_cone(f):
    """Homogeneous part of lowest degree."""
    if f.is_zero():
        raise ZeroInput("tangent cone of the zero element")
    return f.graded_part(f.order())


def _univariate_roots_with_multiplicity(coeffs, field):
    """Roots in the field of a dense univariate polynomial, with
    multiplicities; also returns the leftover degree not split off."""
    def trim(c):
        c = list(c)
        while c and c[-1].is_zero():
            c.pop()
        return c

    def divide_out(c, root):
        # synthetic division by (t - root); returns quotient and remainder
        n = len(c) - 1
        b = [field.zero] * n
        b[n - 1] = c[n]
        for i in range(n - 1, 0, -1):
            b[i - 1] = c[i] + root * b[i]
        rem = c[0] + root * b[0]
        return b, rem

    coeffs = trim(coeffs)
    roots = []
    if not coeffs:
        return roots, 0

    if field.p != 0:
        candidates = list(field.elements())
    else:
        # rational root search on the primitive integer model
        from math import gcd
        denom = 1
        for c in coeffs:
            denom = denom * c.value.denominator // gcd(
                denom, c.value.denominator)
        ints = [int(c.value * denom) for c in coeffs]
        g = 0
        for v in ints:
            g = gcd(g, v)
        if g:
            ints = [v // g for v in ints]
        lead = ints[-1]
        # strip t = 0 roots before reading the trailing coefficient
        low = next(i for i, v in enumerate(ints) if v != 0)
        tail = abs(ints[low])
        def divisors(n):
            n = abs(n)
            out = [d for d in range(1, n + 1) if n % d == 0]
            return out
        candidates = [field.zero] if low else []
        seen = set()
        for pnum in divisors(tail):
            for qden in divisors(lead):
                for sign in (1, -1):
                    cand = field.from_fraction(sign * pnum, qden)
                    if cand.value in seen:
                        continue
                    seen.add(cand.value)
                    candidates.append(cand)

    work = list(coeffs)
    for cand in candidates:
        if len(work) <= 1:
            break
        mult = 0
        while len(work) > 1:
            quotient, rem = divide_out(work, cand)
            if not rem.is_zero():
                break
            work = trim(quotient) or [field.zero]
            mult += 1
        if mult:
            roots.append((cand, mult))
    leftover = max(0, len(trim(work)) - 1)
    return roots, leftover


def _cross_ratio(z1, z2, z3, z4, field):
    """Cross ratio of four distinct points of P^1 = k + {infinity=None}."""
    if z1 is None:
        return (z2 - z4) / (z2 - z3)
    if z2 is None:
        return (z1 - z3) / (z1 - z4)
    if z3 is None:
        return (z2 - z4) / (z1 - z4)
    if z4 is None:
        return (z1 - z3) / (z2 - z3)
    return ((z1 - z3) * (z2 - z4)) / ((z2 - z3) * (z1 - z4))


def quartic_j_invariant(q):
    """Ordering-free invariant j = 256 (l^2-l+1)^3 / (l^2 (l-1)^2) of the
    cross-ratio l of the four root lines of a binary quartic.

    The input must be homogeneous of degree 4 and involve at most two of the
    ring variables; the four roots must be distinct and lie in P^1 over the
    base field.
    """
    if q.is_zero():
        raise ZeroInput("zero form has no roots")
    spec = q.spec
    field = spec.field
    if q.order() != 4 or q.degree() != 4:
        raise PreconditionFailed("input is not homogeneous of degree 4")
    support = q.support_vars()
    if len(support) > 2:
        raise PreconditionFailed("form involves more than two variables")
    v1 = support[0] if support else 0
    if len(support) == 2:
        v2 = support[1]
    else:
        v2 = next((j for j in range(spec.nvars) if j != v1), None)

    # dense coefficients a_k of v1^k v2^(4-k)
    a = [field.zero] * 5
    for e, c in q.coeffs.items():
        a[e[v1]] = c

    # roots (v1 : v2): finite t with p(t)=0 for p(t)=q(t,1), plus infinity
    # with multiplicity 4 - deg p
    roots, leftover = _univariate_roots_with_multiplicity(a, field)
    points = [(r, m) for r, m in roots]
    deg_p = 4 - next(i for i in range(5) if not a[4 - i].is_zero())
    inf_mult = 4 - deg_p
    if inf_mult:
        points.append((None, inf_mult))

    total = sum(m for _, m in points)
    if total + leftover != 4:
        raise PreconditionFailed("root bookkeeping failed")
    if any(m > 1 for _, m in points):
        raise RepeatedRoots("the four lines are not distinct")
    if total < 4:
        raise RootsNotInField(
            f"roots do not all lie in {field.to_string()}")

    zs = sorted((z for z, _ in points),
                key=lambda z: (0,) if z is None else (1,) + z.sort_key())
    lam = _cross_ratio(zs[0], zs[1], zs[2], zs[3], field)
    one = field.one
    num = field.from_int(256) * (lam * lam - lam + one) ** 3
    den = (lam * lam) * (lam - one) ** 2
    return num / den
