"""Logarithmic derivations tangent to an ideal, solvable directions,
inseparability certificates, and constructive smooth-factor splitting in
characteristic 0.

A derivation d = sum g_j d/dx_j is attached to a system f through a
multiplier matrix H with d(f_i) = sum_l H_il f_l; at truncation order
beta_work the identity is enforced modulo (x)^{beta_work}, one degree being
lost to differentiation.
"""

from __future__ import annotations

from .contact import verify_equivalence_witness
from .errors import (CharPNotSupported, DerivationFeasible, DimensionMismatch,
                     NotRegular, PreconditionFailed, SpecMismatch,
                     StraightenFailed, WitnessInvalid)
from .linalg import Infeasible, Matrix, Subspace, solve_linear
from .trunc import PolySystem, TruncPoly, compose, ideal_span


class Derivation:
    """Coefficients g_1..g_N plus the n x n multiplier matrix H."""

    __slots__ = ("spec", "coeffs", "multiplier")

    def __init__(self, spec, coeffs, multiplier):
        self.spec = spec
        self.coeffs = tuple(coeffs)
        self.multiplier = tuple(tuple(row) for row in multiplier)
        if len(self.coeffs) != spec.nvars:
            raise DimensionMismatch("need one coefficient per variable")

    def direction(self):
        return [g.constant_term for g in self.coeffs]

    def apply(self, f):
        """d(f) = sum g_j * df/dx_j."""
        acc = TruncPoly.zero(self.spec)
        for j, g in enumerate(self.coeffs):
            acc = acc + g * f.derivative(j)
        return acc

    def is_regular(self):
        return any(not c.is_zero() for c in self.direction())

    def residuals(self, system):
        """d(f_i) - sum_l H_il f_l for each i (untruncated in the ring)."""
        out = []
        for i, f in enumerate(system.entries):
            r = self.apply(f)
            for l, g in enumerate(system.entries):
                r = r - self.multiplier[i][l] * g
            out.append(r)
        return out

    def is_attached(self, system, beta_work):
        """Attachment identity holds exactly in O_{N, beta_work - 1}."""
        return all(r.is_zero() or r.order() >= beta_work
                   for r in self.residuals(system))

    def to_json(self):
        return {
            "g": [str(g) for g in self.coeffs],
            "H": [[str(h) for h in row] for row in self.multiplier],
        }


class LogInfeasible:
    """Definitive refutation at the stated truncation, with an exact
    left-null certificate row for the linear system."""

    __slots__ = ("certificate", "beta_work")

    def __init__(self, certificate, beta_work):
        self.certificate = certificate
        self.beta_work = beta_work


def _unknown_monomials(spec, beta_work):
    return [e for e in spec.monomials() if sum(e) <= beta_work - 1]


def _row_monomials(spec, beta_work):
    return [e for e in spec.monomials() if sum(e) <= beta_work - 1]


def _log_derivation_matrix(system, beta_work, include_direction):
    """Rows: (equation index, monomial of degree < beta_work).  Columns:
    [direction v (optional)] + coefficients of g_1..g_N + entries of H.

    Cell values express the coefficient extraction of
    sum_j g_j df_i/dx_j - sum_l H_il f_l.
    """
    spec = system.spec
    field = spec.field
    n = system.n
    if beta_work > spec.beta:
        raise PreconditionFailed("beta_work exceeds the ring truncation")
    if beta_work < 1:
        raise PreconditionFailed("beta_work must be >= 1")

    unknown_monos = _unknown_monomials(spec, beta_work)
    row_monos = _row_monomials(spec, beta_work)
    row_index = {(i, e): r for r, (i, e) in enumerate(
        (i, e) for i in range(n) for e in row_monos)}
    nrows = len(row_index)

    partials = [[f.derivative(j) for j in range(spec.nvars)]
                for f in system.entries]

    columns = []

    def column_for(polys_by_eq):
        col = [field.zero] * nrows
        for i, poly in enumerate(polys_by_eq):
            for e, c in poly.coeffs.items():
                r = row_index.get((i, e))
                if r is not None:
                    col[r] = col[r] + c
        return col

    if include_direction:
        for j in range(spec.nvars):
            columns.append(column_for([partials[i][j] for i in range(n)]))

    # non-constant coefficients of the g_j; the constants are the direction
    g_cols = []
    for j in range(spec.nvars):
        for e in unknown_monos:
            if sum(e) == 0:
                continue
            mono = TruncPoly.monomial(spec, e)
            g_cols.append((j, e))
            columns.append(column_for([mono * partials[i][j]
                                       for i in range(n)]))

    h_cols = []
    for i in range(n):
        for l in range(n):
            for e in unknown_monos:
                mono = TruncPoly.monomial(spec, e)
                h_cols.append((i, l, e))
                col = [field.zero] * nrows
                prod = mono * system.entries[l]
                for ee, c in prod.coeffs.items():
                    r = row_index.get((i, ee))
                    if r is not None:
                        col[r] = col[r] - c
                columns.append(col)

    A = Matrix(field, [[columns[c][r] for c in range(len(columns))]
                       for r in range(nrows)])
    return A, g_cols, h_cols, unknown_monos


def solve_log_derivation(system, v, beta_work):
    """Derivation with direction v tangent to (f) at truncation beta_work,
    or LogInfeasible with an independently checkable certificate.

    Unknowns are the non-constant coefficients of the g_j (the constants are
    pinned to v) and all coefficients of H up to degree beta_work - 1; the
    identity sum_j g_j df_i/dx_j = sum_l H_il f_l is enforced modulo
    (x)^{beta_work}.
    """
    spec = system.spec
    field = spec.field
    v = [field.scalar(c) for c in v]
    if len(v) != spec.nvars:
        raise DimensionMismatch("direction has wrong length")

    A, g_cols, h_cols, unknown_monos = _log_derivation_matrix(
        system, beta_work, include_direction=True)

    nvars = spec.nvars
    # move the fixed direction columns to the right-hand side
    rhs = [field.zero] * A.nrows
    for j in range(nvars):
        if v[j].is_zero():
            continue
        for r in range(A.nrows):
            rhs[r] = rhs[r] - v[j] * A.rows[r][j]
    reduced = Matrix(field, [row[nvars:] for row in A.rows])

    sol = solve_linear(reduced, rhs)
    if isinstance(sol, Infeasible):
        return LogInfeasible(sol.certificate, beta_work)

    gs = []
    for j in range(nvars):
        poly = TruncPoly.const(spec, v[j])
        for idx, (jj, e) in enumerate(g_cols):
            if jj != j:
                continue
            c = sol.x[idx]
            if not c.is_zero():
                poly = poly + TruncPoly.monomial(spec, e, c)
        gs.append(poly)

    n = system.n
    H = [[TruncPoly.zero(spec) for _ in range(n)] for _ in range(n)]
    offset = len(g_cols)
    for idx, (i, l, e) in enumerate(h_cols):
        c = sol.x[offset + idx]
        if not c.is_zero():
            H[i][l] = H[i][l] + TruncPoly.monomial(spec, e, c)

    d = Derivation(spec, gs, H)
    if not d.is_attached(system, beta_work):
        raise PreconditionFailed("solver returned a non-attached derivation")
    return d


def solvable_directions(system, beta_work):
    """Subspace {v : solve_log_derivation(system, v, beta_work) is feasible}.

    The joint constraint set is linear in (v, g, H); the direction space is
    the projection of the homogeneous kernel onto the v block.
    """
    spec = system.spec
    A, _, _, _ = _log_derivation_matrix(system, beta_work,
                                        include_direction=True)
    sol = solve_linear(A, [spec.field.zero] * A.nrows)
    assert not isinstance(sol, Infeasible)
    kernel = Subspace.from_vectors(spec.field, A.ncols, sol.kernel_vectors)
    return kernel.project(list(range(spec.nvars)))


class InsepCertificate:
    """Witnessed jet equivalence along a direction for which no logarithmic
    derivation exists at the stated truncation: the orbit map cannot be
    separable there."""

    __slots__ = ("system", "point", "witness", "direction", "infeasible",
                 "beta_work")

    def __init__(self, system, point, witness, direction, infeasible,
                 beta_work):
        self.system = system
        self.point = point
        self.witness = witness
        self.direction = direction
        self.infeasible = infeasible
        self.beta_work = beta_work


def inseparability_certificate(system, a, g, beta_work):
    """Combine an equivalence witness for the jet at a with the
    infeasibility of the log-derivation system in the a-direction."""
    spec = system.spec
    a = [spec.field.scalar(c) for c in a]
    if all(c.is_zero() for c in a):
        raise PreconditionFailed("the point must differ from the origin")
    if not verify_equivalence_witness(system, [spec.field.zero] * spec.nvars,
                                      a, g):
        raise WitnessInvalid("witness fails to carry the origin jet to the "
                             "jet at the point")
    lead = next(c for c in a if not c.is_zero())
    v = [c / lead for c in a]
    result = solve_log_derivation(system, v, beta_work)
    if isinstance(result, Derivation):
        raise DerivationFeasible(
            "a logarithmic derivation exists in this direction at the "
            "stated truncation; no certificate", derivation=result.to_json())
    return InsepCertificate(system, a, g, v, result, beta_work)


class SplitResult:
    """Outcome of straightening a regular derivation: the substitution psi,
    the straightened variable, unit multipliers, and the residual system
    free of that variable."""

    __slots__ = ("psi", "var_index", "multipliers", "residual")

    def __init__(self, psi, var_index, multipliers, residual):
        self.psi = psi
        self.var_index = var_index
        self.multipliers = multipliers
        self.residual = residual


def _integrate(poly, j):
    """Antiderivative in x_j with zero x_j-free part (characteristic 0)."""
    spec = poly.spec
    out = TruncPoly.zero(spec)
    for e, c in poly.coeffs.items():
        if sum(e) + 1 > spec.beta:
            continue
        ne = tuple(v + 1 if idx == j else v for idx, v in enumerate(e))
        out = out + TruncPoly.monomial(spec, ne,
                                       c / spec.field.from_int(e[j] + 1))
    return out


def straighten_and_split(system, d):
    """Flow-box a regular derivation and peel the straightened variable.

    The substitution psi solves d psi_k / d x_j = g_k o psi with identity
    data on {x_j = 0}, so that d/dx_j becomes logarithmic for (f o psi); an
    exact multiplier ODE then turns the generators into x_j-free ones, up to
    the precision lost to differentiation.
    """
    spec = system.spec
    field = spec.field
    if field.p != 0:
        raise CharPNotSupported(
            "splitting via ordinary derivations is refused in positive "
            "characteristic; use the Hasse-Schmidt search instead")
    if d.spec != spec:
        raise SpecMismatch("derivation in a different ring")
    direction = d.direction()
    j = next((idx for idx, c in enumerate(direction) if not c.is_zero()),
             None)
    if j is None:
        raise NotRegular("all coefficients vanish at the origin")
    if not d.is_attached(system, spec.beta):
        raise PreconditionFailed("derivation is not attached to the system")

    # normalize so the j-th coefficient is 1
    unit_inv = d.coeffs[j].invert_unit()
    gs = [g * unit_inv for g in d.coeffs]
    H = [[h * unit_inv for h in row] for row in d.multiplier]

    # flow: psi_k = init_k + integral_j(g_k o psi), init = identity off x_j
    init = [TruncPoly.zero(spec) if k == j else TruncPoly.variable(spec, k)
            for k in range(spec.nvars)]
    psi = list(init)
    for _ in range(spec.beta + 1):
        psi = [init_k + _integrate(compose(g, psi), j)
               for init_k, g in zip(init, gs)]

    # the flow equation must hold to the available precision
    for k in range(spec.nvars):
        err = psi[k].derivative(j) - compose(gs[k], psi)
        if not (err.is_zero() or err.order() >= spec.beta - 1):
            raise StraightenFailed("flow construction failed",
                                   degree=err.order())

    composed = PolySystem(spec, [compose(f, psi) for f in system.entries])
    H_t = [[compose(h, psi) for h in row] for row in H]

    # multipliers: dU/dx_j = -U * H_t, U(0) = I, solved degree by degree
    n = system.n
    one = TruncPoly.const(spec, field.one)
    zero = TruncPoly.zero(spec)
    U = [[one if i == k else zero for k in range(n)] for i in range(n)]
    for m in range(spec.beta):
        prod = [[sum((U[i][k] * H_t[k][l] for k in range(n)), start=zero)
                 for l in range(n)] for i in range(n)]
        for i in range(n):
            for l in range(n):
                part = prod[i][l].graded_part(m)
                if not part.is_zero():
                    U[i][l] = U[i][l] - _integrate(part, j)

    residual = []
    for i in range(n):
        acc = zero
        for l in range(n):
            acc = acc + U[i][l] * composed.entries[l]
        residual.append(acc)
    residual = PolySystem(spec, residual)

    # x_j-freeness up to degree beta - 1
    for f in residual.entries:
        dep = f.derivative(j)
        if not (dep.is_zero() or dep.order() >= spec.beta - 1):
            raise StraightenFailed("residual still depends on the "
                                   "straightened variable",
                                   degree=dep.order())

    # ideal spans agree one degree down
    lower = spec.beta - 1
    if lower >= 0:
        span_res = ideal_span(residual, beta=lower)
        span_comp = ideal_span(composed, beta=lower)
        if span_res != span_comp:
            raise StraightenFailed("ideal span mismatch after splitting")

    return SplitResult(tuple(psi), j, tuple(tuple(r) for r in U), residual)
