"""Hasse-Schmidt derivation search at finite t-order and x-truncation.

A candidate is a coordinate map D(x_j) = x_j + sum_{1<=i<=r} d_i(x_j) t^i,
extended multiplicatively; it is tangent to (f) at truncation beta_work when
every t-coefficient of order 1..r of f_l(D(x)) lies in the span of monomial
multiples of the f_i modulo (x)^{beta_work+1}.

The search works order by order: given levels < i, the t^i constraints are
affine-linear in the level-i images.  Two existence-preserving reductions
keep the enumeration finite: coefficients that provably cannot appear in any
constraint (a symbolic appearance analysis aware of vanishing multinomial
coefficients mod p) are pinned to zero, and each level's affine solution set
is enumerated only through its projection onto the coordinates that deeper
levels can read, plus the level-1 constant terms which decide regularity.
"""

from __future__ import annotations

from math import factorial

from .errors import FieldNotFinite, PreconditionFailed, SpecMismatch
from .linalg import Infeasible, Matrix, Subspace, solve_linear
from .trunc import TruncPoly, ideal_span


# -- truncated t-series with ring coefficients --------------------------------

class TSeries:
    __slots__ = ("spec", "r", "parts")

    def __init__(self, spec, r, parts):
        self.spec = spec
        self.r = r
        self.parts = list(parts) + [TruncPoly.zero(spec)] * (r + 1 - len(parts))

    @classmethod
    def const(cls, spec, r, poly):
        return cls(spec, r, [poly])

    def __add__(self, other):
        return TSeries(self.spec, self.r,
                       [a + b for a, b in zip(self.parts, other.parts)])

    def __mul__(self, other):
        zero = TruncPoly.zero(self.spec)
        out = [zero] * (self.r + 1)
        for i, a in enumerate(self.parts):
            if a.is_zero():
                continue
            for k in range(self.r + 1 - i):
                b = other.parts[k]
                if b.is_zero():
                    continue
                out[i + k] = out[i + k] + a * b
        return TSeries(self.spec, self.r, out)

    def __pow__(self, n):
        result = TSeries.const(self.spec, self.r,
                               TruncPoly.const(self.spec, self.spec.field.one))
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result


def expand_entry(f, coord_series):
    """f(D(x_1), ..., D(x_N)) as a t-series, term by term."""
    spec = f.spec
    r = coord_series[0].r
    one = TSeries.const(spec, r, TruncPoly.const(spec, spec.field.one))
    powers = [[one] for _ in coord_series]

    def power(j, k):
        cache = powers[j]
        while len(cache) <= k:
            cache.append(cache[-1] * coord_series[j])
        return cache[k]

    total = TSeries(spec, r, [])
    for e, c in sorted(f.coeffs.items()):
        term = TSeries.const(spec, r, TruncPoly.const(spec, c))
        for j, k in enumerate(e):
            if k:
                term = term * power(j, k)
        total = total + term
    return total


class HSDerivation:
    """Level images d_i(x_j) for 1 <= i <= r (d_0 is the identity)."""

    __slots__ = ("spec", "r", "images")

    def __init__(self, spec, r, images):
        images = tuple(tuple(level) for level in images)
        if len(images) != r:
            raise SpecMismatch("need one image tuple per t-order")
        for level in images:
            if len(level) != spec.nvars:
                raise SpecMismatch("need one image per variable")
            for poly in level:
                if poly.spec != spec:
                    raise SpecMismatch("image in a different ring")
        self.spec = spec
        self.r = r
        self.images = images

    def coordinate_series(self):
        return [TSeries(self.spec, self.r,
                        [TruncPoly.variable(self.spec, j)]
                        + [self.images[i][j] for i in range(self.r)])
                for j in range(self.spec.nvars)]

    def truncated(self, r2):
        if not 1 <= r2 <= self.r:
            raise SpecMismatch("truncation order out of range")
        return HSDerivation(self.spec, r2, self.images[:r2])

    def level_constants(self, i):
        """Constant terms of the level-i images (i is 1-based)."""
        return [poly.constant_term for poly in self.images[i - 1]]

    def is_regular(self):
        """Level-1 regularity: some d_1(x_j) has a unit constant term."""
        return any(not c.is_zero() for c in self.level_constants(1))

    def regularity_report(self):
        report = []
        for i in range(1, self.r + 1):
            consts = self.level_constants(i)
            report.append({
                "level": i,
                "unit_constant_vars": [self.spec.names[j]
                                       for j, c in enumerate(consts)
                                       if not c.is_zero()],
            })
        return report

    def to_json(self):
        return {
            "r": self.r,
            "images": [[str(p) for p in level] for level in self.images],
            "regularity": self.regularity_report(),
        }


class HSViolation:
    __slots__ = ("entry", "order", "residue")

    def __init__(self, entry, order, residue):
        self.entry = entry
        self.order = order
        self.residue = residue

    def to_json(self):
        return {"entry": self.entry, "order": self.order,
                "residue": str(self.residue)}


def hs_verify(system, D, beta_work):
    """Check D against the system; returns (ok, first violation or None)."""
    spec = system.spec
    if D.spec != spec:
        raise SpecMismatch("derivation in a different ring")
    if beta_work > spec.beta:
        raise PreconditionFailed("beta_work exceeds the ring truncation")
    low_spec = spec.with_beta(beta_work)
    span = ideal_span(system, beta=beta_work)
    series = [expand_entry(f, D.coordinate_series())
              for f in system.entries]
    for l, ts in enumerate(series):
        for order in range(1, D.r + 1):
            vec = ts.parts[order].in_spec(low_spec).coefficient_vector()
            if not span.contains_vector(vec):
                residue = TruncPoly.from_vector(low_spec, span.reduce(vec))
                return False, HSViolation(l, order, residue)
    return True, None


class Exhausted:
    """Complete negative verdict for the declared search space, with the
    deterministic number of materialized candidates."""

    __slots__ = ("nodes",)

    def __init__(self, nodes):
        self.nodes = nodes


# -- appearance analysis -------------------------------------------------------

def _slot_patterns(mu, t_budget, r):
    """Distributions of mu picks of one slot into base picks and level
    groups; yields (t_used, base_count, denominator)."""
    out = []

    def rec(remaining, min_m, min_s, t_used, denom):
        out.append((t_used, remaining, denom))
        for m in range(min_m, r + 1):
            s_lo = min_s if m == min_m else 1
            for s in range(s_lo, remaining + 1):
                t_new = t_used + s * m
                if t_new > t_budget:
                    break
                rec(remaining - s, m, s, t_new, denom * factorial(s))

    rec(mu, 1, 1, 0, 1)
    return out


def _term_max_degree(gamma, j, i, p, beta_work, k_lo, k_hi, r):
    """Largest x-degree of a level-i coefficient of d_i(x_j) that can appear
    in some t^k coefficient, k in [k_lo, k_hi], of the expansion of the
    monomial x^gamma; -1 when none can."""
    slots = [(jj, mu) for jj, mu in enumerate(gamma) if mu > 0]
    other_profiles = []
    for jj, mu in slots:
        if jj == j:
            continue
        profiles = [(t, b) for t, b, denom in _slot_patterns(mu, k_hi, r)
                    if p == 0 or (factorial(mu) // (factorial(b) * denom)) % p]
        other_profiles.append(profiles)

    mu_j = dict(slots)[j]
    best = -1
    for s0 in range(1, mu_j + 1):
        if s0 * i > k_hi:
            break
        for t_rest_j, b_j, denom_j in _slot_patterns(mu_j - s0,
                                                     k_hi - s0 * i, r):
            mult = factorial(mu_j) // (factorial(s0) * factorial(b_j)
                                       * denom_j)
            if p != 0 and mult % p == 0:
                continue

            def rec(idx, t_acc, b_acc):
                nonlocal best
                if t_acc > k_hi:
                    return
                if idx == len(other_profiles):
                    if t_acc < k_lo:
                        return
                    a = (beta_work - b_acc) // s0
                    if a >= 0:
                        best = max(best, a)
                    return
                for t_s, b_s in other_profiles[idx]:
                    rec(idx + 1, t_acc + t_s, b_acc + b_s)

            rec(0, s0 * i + t_rest_j, b_j)
    return best


def _max_readable_degree(system, beta_work, r, i, j, k_lo, k_hi):
    """Sound bound: x-degrees of d_i(x_j) coefficients above this value can
    never appear in any t^k constraint with k in [k_lo, k_hi]."""
    if k_lo > k_hi:
        return -1
    p = system.spec.field.p
    best = -1
    for f in system.entries:
        for gamma in f.coeffs:
            if gamma[j] == 0:
                continue
            best = max(best, _term_max_degree(gamma, j, i, p, beta_work,
                                              k_lo, k_hi, r))
    return min(best, beta_work) if best >= 0 else -1


# -- order-by-order search ------------------------------------------------------

def hs_search(system, r, beta_work, mode="any"):
    """Search for an HS derivation tangent to (f); returns a witness or
    Exhausted.  mode="regular" additionally requires a unit constant term
    among the level-1 images (the levelwise report on any witness exposes
    higher levels).

    The verdict is complete for images d_i(x_j) ranging over the full jet
    ring at beta_work: truncating any formal witness to x-degree <= beta_work
    preserves every constraint mod (x)^{beta_work+1}.
    """
    spec = system.spec
    field = spec.field
    if field.p == 0:
        raise FieldNotFinite("search requires a finite field; "
                             "over Q only verification is offered")
    if mode not in ("any", "regular"):
        raise PreconditionFailed(f"unknown mode {mode!r}")
    if r < 1:
        raise PreconditionFailed("t-order must be >= 1")
    if beta_work > spec.beta:
        raise PreconditionFailed("beta_work exceeds the ring truncation")

    low_spec = spec.with_beta(beta_work)
    span = ideal_span(system, beta=beta_work)
    span_basis = [list(v) for v in span.basis]
    dim_low = low_spec.dim
    n = system.n
    field_elements = list(field.elements())

    kept = {}
    downstream = {}
    for i in range(1, r + 1):
        for j in range(spec.nvars):
            kd = _max_readable_degree(system, beta_work, r, i, j, i, r)
            dd = _max_readable_degree(system, beta_work, r, i, j, i + 1, r)
            if mode == "regular" and i == 1:
                kd = max(kd, 0)
                dd = max(dd, 0)
            kept[(i, j)] = kd
            downstream[(i, j)] = dd

    def unknowns_at(i):
        return [(j, e) for j in range(spec.nvars)
                for e in spec.monomials() if sum(e) <= kept[(i, j)]]

    def images_from(values, unknowns):
        polys = [TruncPoly.zero(spec) for _ in range(spec.nvars)]
        for (j, e), c in zip(unknowns, values):
            if not c.is_zero():
                polys[j] = polys[j] + TruncPoly.monomial(spec, e, c)
        return tuple(polys)

    def t_parts(levels, i):
        """t^i coefficients of every f_l under the partial candidate."""
        zero_level = tuple(TruncPoly.zero(spec) for _ in range(spec.nvars))
        padded = list(levels) + [zero_level] * (r - len(levels))
        D = HSDerivation(spec, r, padded)
        series = D.coordinate_series()
        return [expand_entry(f, series).parts[i] for f in system.entries]

    def low_vector(poly):
        return poly.in_spec(low_spec).coefficient_vector()

    nodes = 0
    found = None

    def descend(levels):
        nonlocal nodes, found
        i = len(levels) + 1
        if i > r:
            candidate = HSDerivation(spec, r, levels)
            ok, _ = hs_verify(system, candidate, beta_work)
            if not ok:
                raise PreconditionFailed("search produced a non-witness")
            found = candidate
            return True

        unknowns = unknowns_at(i)
        zero_level = tuple(TruncPoly.zero(spec) for _ in range(spec.nvars))
        base = t_parts(list(levels) + [zero_level], i)
        base_vecs = [low_vector(p) for p in base]

        columns = []
        for (j, e) in unknowns:
            probe_level = images_from([field.one], [(j, e)])
            probed = t_parts(list(levels) + [probe_level], i)
            col = []
            for l in range(n):
                col.extend(a - b for a, b in zip(low_vector(probed[l]),
                                                 base_vecs[l]))
            columns.append(col)

        nrows = n * dim_low
        ncols = len(unknowns) + n * len(span_basis)
        rows = []
        for rr in range(nrows):
            row = [columns[c][rr] for c in range(len(unknowns))]
            l_block = rr // dim_low
            coord = rr % dim_low
            for lb in range(n):
                for bb in range(len(span_basis)):
                    if lb == l_block:
                        row.append(-span_basis[bb][coord])
                    else:
                        row.append(field.zero)
            rows.append(row)
        A = Matrix(field, rows) if nrows else Matrix(field, [[]])
        rhs = []
        for l in range(n):
            rhs.extend(-c for c in base_vecs[l])

        sol = solve_linear(A, rhs) if nrows else None
        if isinstance(sol, Infeasible):
            return False

        nd = len(unknowns)
        read_idx = [k for k, (j, e) in enumerate(unknowns)
                    if sum(e) <= downstream[(i, j)]]

        def lift_and_go(full_values):
            nonlocal nodes
            nodes += 1
            level = images_from(full_values[:nd], unknowns)
            if (mode == "regular" and i == 1
                    and all(p.constant_term.is_zero() for p in level)):
                return False
            return descend(list(levels) + [level])

        if sol is None:
            return lift_and_go([])

        if not read_idx:
            return lift_and_go(sol.x)

        proj_part = [sol.x[k] for k in read_idx]
        proj_kernel_vecs = [[kv[k] for k in read_idx]
                            for kv in sol.kernel_vectors]
        proj = Subspace.from_vectors(field, len(read_idx), proj_kernel_vecs)
        if proj.dim == 0:
            return lift_and_go(sol.x)

        proj_matrix = Matrix(field,
                             [[kv[k] for kv in sol.kernel_vectors]
                              for k in read_idx])

        def points():
            basis = [list(v) for v in proj.basis]
            k = len(basis)
            def rec(prefix):
                if len(prefix) == k:
                    yield list(prefix)
                    return
                for c in field_elements:
                    yield from rec(prefix + [c])
            for combo in rec([]):
                y = list(proj_part)
                for c, v in zip(combo, basis):
                    if not c.is_zero():
                        y = [a + c * b for a, b in zip(y, v)]
                yield y

        for y in points():
            target = [a - b for a, b in zip(y, proj_part)]
            lift = solve_linear(proj_matrix, target)
            if isinstance(lift, Infeasible):
                raise PreconditionFailed("projection lift failed")
            full = list(sol.x)
            for c, kv in zip(lift.x, sol.kernel_vectors):
                if not c.is_zero():
                    full = [a + c * b for a, b in zip(full, kv)]
            if lift_and_go(full):
                return True
        return False

    if descend([]):
        return found
    return Exhausted(nodes)
