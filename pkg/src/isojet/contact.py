"""The truncated contact group and its action on polynomial systems.

An element is a pair (M, phi): an invertible n x n matrix over the jet ring
and a ring automorphism given by N coordinate images.  The action is
f |-> M * (f o phi); the product is the unique convention making this a left
action.  Inversion proceeds degree by degree, exactly.
"""

from __future__ import annotations

from .errors import (NotAUnit, PointNotOnVariety, PreconditionFailed,
                     SingularJacobian, SpecMismatch)
from .linalg import Matrix
from .trunc import PolySystem, TruncPoly, compose, taylor_shift


# -- matrices over the jet ring ----------------------------------------------

def ring_identity_matrix(spec, n):
    one = TruncPoly.const(spec, spec.field.one)
    zero = TruncPoly.zero(spec)
    return tuple(tuple(one if i == j else zero for j in range(n))
                 for i in range(n))


def ring_mat_mul(A, B):
    n = len(A)
    m = len(B[0])
    inner = len(B)
    out = []
    for i in range(n):
        row = []
        for j in range(m):
            acc = TruncPoly.zero(A[0][0].spec)
            for k in range(inner):
                acc = acc + A[i][k] * B[k][j]
            row.append(acc)
        out.append(tuple(row))
    return tuple(out)


def ring_mat_vec(A, v):
    out = []
    for row in A:
        acc = TruncPoly.zero(row[0].spec)
        for a, x in zip(row, v):
            acc = acc + a * x
        out.append(acc)
    return tuple(out)


def ring_mat_compose(M, phis):
    return tuple(tuple(compose(entry, phis) for entry in row) for row in M)


def constant_part(M, field):
    return Matrix(field, [[entry.constant_term for entry in row]
                          for row in M])


def scalar_matrix_to_ring(A, spec):
    return tuple(tuple(TruncPoly.const(spec, a) for a in row)
                 for row in A.rows)


def ring_mat_inverse(M):
    """Inverse of a ring matrix with invertible constant part (Neumann sum)."""
    spec = M[0][0].spec
    n = len(M)
    M0 = constant_part(M, spec.field)
    try:
        M0_inv = M0.inverse()
    except Exception as exc:
        raise NotAUnit("matrix constant part is not invertible") from exc
    M0_inv_ring = scalar_matrix_to_ring(M0_inv, spec)
    ident = ring_identity_matrix(spec, n)
    # M = M0 (I - E) with E entries in the maximal ideal
    E = _ring_mat_sub(ident, ring_mat_mul(M0_inv_ring, M))
    acc = ident
    power = ident
    for _ in range(spec.beta):
        power = ring_mat_mul(power, E)
        if all(entry.is_zero() for row in power for entry in row):
            break
        acc = _ring_mat_add(acc, power)
    return ring_mat_mul(acc, M0_inv_ring)


def _ring_mat_add(A, B):
    return tuple(tuple(a + b for a, b in zip(ra, rb))
                 for ra, rb in zip(A, B))


def _ring_mat_sub(A, B):
    return tuple(tuple(a - b for a, b in zip(ra, rb))
                 for ra, rb in zip(A, B))


# -- group elements -----------------------------------------------------------

def identity_substitution(spec):
    return tuple(TruncPoly.variable(spec, j) for j in range(spec.nvars))


def jacobian_at_zero(phis, spec):
    rows = []
    for i in range(len(phis)):
        rows.append([phis[i].derivative(j).constant_term
                     for j in range(spec.nvars)])
    return Matrix(spec.field, rows)


class ContactElement:
    """Pair (M, phi) with M a unit matrix and phi an origin-fixing
    automorphism with invertible Jacobian at the origin."""

    __slots__ = ("spec", "n", "M", "phi")

    def __init__(self, spec, M, phi, validate=True):
        self.spec = spec
        self.M = tuple(tuple(row) for row in M)
        self.phi = tuple(phi)
        self.n = len(self.M)
        if validate:
            self.validate()

    @classmethod
    def identity(cls, spec, n):
        return cls(spec, ring_identity_matrix(spec, n),
                   identity_substitution(spec), validate=False)

    def validate(self):
        if len(self.phi) != self.spec.nvars:
            raise SpecMismatch("need one coordinate image per variable")
        for row in self.M:
            if len(row) != self.n:
                raise SpecMismatch("matrix part must be square")
            for entry in row:
                if entry.spec != self.spec:
                    raise SpecMismatch("matrix entry in a different ring")
        for ph in self.phi:
            if ph.spec != self.spec:
                raise SpecMismatch("substitution in a different ring")
            if not ph.constant_term.is_zero():
                raise SingularJacobian("automorphism must fix the origin")
        if not constant_part(self.M, self.spec.field).is_invertible():
            raise NotAUnit("det M(0) = 0")
        if self.spec.beta >= 1 and not jacobian_at_zero(
                self.phi, self.spec).is_invertible():
            raise SingularJacobian("det of the Jacobian at 0 vanishes")

    def is_identity(self):
        return self == ContactElement.identity(self.spec, self.n)

    def __eq__(self, other):
        return (isinstance(other, ContactElement)
                and self.spec == other.spec and self.n == other.n
                and self.M == other.M and self.phi == other.phi)

    def __repr__(self):
        return (f"ContactElement(n={self.n}, "
                f"phi=({', '.join(str(p) for p in self.phi)}))")


def act(g, f):
    """The orbit map value M * (f o phi)."""
    if f.spec != g.spec:
        raise SpecMismatch("system and group element in different rings")
    if f.n != g.n:
        raise SpecMismatch("system size differs from matrix size")
    composed = [compose(entry, g.phi) for entry in f.entries]
    return PolySystem(f.spec, ring_mat_vec(g.M, composed))


def group_mul(g2, g1):
    """Product with act(group_mul(g2, g1), f) = act(g2, act(g1, f))."""
    if g1.spec != g2.spec or g1.n != g2.n:
        raise SpecMismatch("group elements do not match")
    M = ring_mat_mul(g2.M, ring_mat_compose(g1.M, g2.phi))
    phi = tuple(compose(p, g2.phi) for p in g1.phi)
    return ContactElement(g1.spec, M, phi, validate=False)


def invert_automorphism(phis, spec):
    """Compositional inverse psi with phi(psi) = identity, degree by degree."""
    L = jacobian_at_zero(phis, spec)
    if not L.is_invertible():
        raise SingularJacobian("det of the Jacobian at 0 vanishes")
    L_inv = L.inverse()
    xs = identity_substitution(spec)
    psi = [TruncPoly.zero(spec) for _ in range(spec.nvars)]
    for j in range(spec.nvars):
        for k in range(spec.nvars):
            c = L_inv[j, k]
            if not c.is_zero():
                psi[j] = psi[j] + xs[k].scale(c)
    for d in range(2, spec.beta + 1):
        err = [compose(ph, psi) - x for ph, x in zip(phis, xs)]
        err_d = [e.graded_part(d) for e in err]
        if all(e.is_zero() for e in err_d):
            continue
        for j in range(spec.nvars):
            corr = TruncPoly.zero(spec)
            for k in range(spec.nvars):
                c = L_inv[j, k]
                if not c.is_zero():
                    corr = corr + err_d[k].scale(c)
            psi[j] = psi[j] - corr
    # exactness check: phi o psi must be the identity in this ring
    for ph, x in zip(phis, xs):
        if compose(ph, psi) != x:
            raise SingularJacobian("inversion failed to converge")
    return tuple(psi)


def invert(g):
    """Group inverse h with group_mul(h, g) = group_mul(g, h) = identity."""
    if not constant_part(g.M, g.spec.field).is_invertible():
        raise NotAUnit("det M(0) = 0")
    psi = invert_automorphism(g.phi, g.spec)
    M_inv = ring_mat_inverse(ring_mat_compose(g.M, psi))
    return ContactElement(g.spec, M_inv, psi, validate=False)


# -- Mather's trick ------------------------------------------------------------

def mather_complement(A, B):
    """A constant C with C(1 - AB) + B invertible, built constructively.

    Choose e_1..e_r with Be_i independent, complete the kernel of B to a
    basis, complete {Be_i} by e'_j, and let C send e_i -> 0 (i <= r),
    e_i -> e'_i (i > r).  The determinant is verified before returning.
    """
    field = A.field
    n = A.nrows
    if A.ncols != n or B.nrows != n or B.ncols != n:
        raise SpecMismatch("matrices must be square of equal size")

    def greedy_extend(current, candidates):
        from .linalg import Subspace
        chosen = list(current)
        for cand in candidates:
            space = Subspace.from_vectors(field, n, chosen)
            if not space.contains_vector(cand):
                chosen.append(cand)
        return chosen

    ident = Matrix.identity(field, n)
    unit_vectors = [ident.column(j) for j in range(n)]

    # e_1..e_r: standard vectors with independent images under B
    e_head = []
    images = []
    from .linalg import Subspace
    for u in unit_vectors:
        img = B * u
        space = Subspace.from_vectors(field, n, images)
        if not space.contains_vector(img):
            e_head.append(u)
            images.append(img)
    r = len(e_head)

    # e_{r+1}..e_n: a basis of ker B
    from .linalg import solve_linear, LinearSolution
    sol = solve_linear(B, [field.zero] * n)
    assert isinstance(sol, LinearSolution)
    e_tail = sol.kernel_vectors
    if len(e_tail) != n - r:
        raise PreconditionFailed("rank computation inconsistent")

    # e'_{r+1}..e'_n: complete {Be_i} to a basis of k^n
    completion = greedy_extend(images, unit_vectors)
    e_prime = completion[r:]
    if len(e_prime) != n - r:
        raise PreconditionFailed("completion failed")

    E = Matrix(field, [[col[i] for col in e_head + e_tail]
                       for i in range(n)])
    targets = [[field.zero] * n for _ in range(r)] + e_prime
    T = Matrix(field, [[targets[j][i] for j in range(n)] for i in range(n)])
    C = T * E.inverse()

    check = C * (ident - A * B) + B
    if check.det().is_zero():
        raise PreconditionFailed("complement construction failed")
    return C


def witness_from_cofactors(f, a, A, B, phi):
    """Upgrade mutual cofactor identities to an invertible witness.

    Given ring matrices with A*(f o phi) = f(x+a) and B*f(x+a) = f o phi,
    returns (D, phi) with D = C(1-AB)+B a unit matrix and
    D * f(x+a) = f o phi exactly in the jet ring.
    """
    spec = f.spec
    shifted = taylor_shift(f, a)
    composed = [compose(entry, phi) for entry in f.entries]
    lhs_a = ring_mat_vec(A, composed)
    if list(lhs_a) != list(shifted.entries):
        raise PreconditionFailed("A*(f o phi) != f(x+a)",
                                 identity="A*(f o phi) = f(x+a)")
    lhs_b = ring_mat_vec(B, shifted.entries)
    if list(lhs_b) != list(composed):
        raise PreconditionFailed("B*f(x+a) != f o phi",
                                 identity="B*f(x+a) = f o phi")

    C = mather_complement(constant_part(A, spec.field),
                          constant_part(B, spec.field))
    n = f.n
    C_ring = scalar_matrix_to_ring(C, spec)
    ident = ring_identity_matrix(spec, n)
    D = _ring_mat_add(
        ring_mat_mul(C_ring, _ring_mat_sub(ident, ring_mat_mul(A, B))), B)
    if not constant_part(D, spec.field).is_invertible():
        raise PreconditionFailed("constructed matrix is not a unit")
    if list(ring_mat_vec(D, shifted.entries)) != list(composed):
        raise PreconditionFailed("constructed matrix fails D*f(x+a) = f o phi")
    return ContactElement(spec, D, phi)


def verify_equivalence_witness(f, a1, a2, g):
    """True iff g carries the jet of f at a1 to the jet at a2 exactly."""
    spec = f.spec
    a1 = [spec.field.scalar(c) for c in a1]
    a2 = [spec.field.scalar(c) for c in a2]
    for label, pt in (("a1", a1), ("a2", a2)):
        if any(not v.is_zero() for v in f.eval_at(pt)):
            raise PointNotOnVariety(f"point {label} does not lie on V(f)")
    return act(g, taylor_shift(f, a1)) == taylor_shift(f, a2)
