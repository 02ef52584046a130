"""Truncated polynomial rings k[x_1..x_N]/(x)^{beta+1}.

Elements are sparse exponent-vector maps with Scalar coefficients; the monomial
basis carries a fixed graded order (total degree, then lexicographic with
x_1 > x_2 > ...) which also fixes the coordinates of every Subspace computed
out of this module.  Truncation discards, never rounds: all identities are
exact in the stated jet ring.
"""

from __future__ import annotations

from functools import lru_cache

from .errors import (ConstantTermNotAllowed, DimensionMismatch, NotAUnit,
                     SpecMismatch)
from .linalg import Subspace


@lru_cache(maxsize=None)
def monomials(nvars, beta):
    """All exponent vectors of total degree <= beta in graded order."""
    def exps_of_degree(n, d):
        if n == 1:
            yield (d,)
            return
        for first in range(d, -1, -1):
            for rest in exps_of_degree(n - 1, d - first):
                yield (first,) + rest

    out = []
    for d in range(beta + 1):
        out.extend(exps_of_degree(nvars, d))
    return tuple(out)


@lru_cache(maxsize=None)
def monomial_index(nvars, beta):
    return {e: i for i, e in enumerate(monomials(nvars, beta))}


def default_names(nvars):
    if nvars <= 4:
        return tuple("xyzw"[:nvars])
    return tuple(f"x{i + 1}" for i in range(nvars))


class RingSpec:
    """Shape of a jet ring: variable count, truncation order, base field."""

    __slots__ = ("nvars", "beta", "field", "names")

    def __init__(self, nvars, beta, field, names=None):
        if nvars < 1:
            raise SpecMismatch("need at least one variable")
        if beta < 0:
            raise SpecMismatch("truncation order must be >= 0")
        names = tuple(names) if names else default_names(nvars)
        if len(names) != nvars or len(set(names)) != nvars:
            raise SpecMismatch("need distinct names, one per variable")
        if field.m > 1 and "g" in names:
            raise SpecMismatch("'g' is reserved for the field generator")
        self.nvars = nvars
        self.beta = beta
        self.field = field
        self.names = names

    @property
    def dim(self):
        return len(self.monomials())

    def monomials(self):
        return monomials(self.nvars, self.beta)

    def index(self):
        return monomial_index(self.nvars, self.beta)

    def key(self):
        return (self.nvars, self.beta, self.field.key(), self.names)

    def __eq__(self, other):
        return isinstance(other, RingSpec) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        return (f"RingSpec(N={self.nvars}, beta={self.beta}, "
                f"field={self.field.to_string()})")

    def with_beta(self, beta):
        return RingSpec(self.nvars, beta, self.field, self.names)


def _display_key(item):
    exps, _ = item
    return (-sum(exps), tuple(-e for e in exps))


class TruncPoly:
    """Element of a jet ring; coefficients map exponent tuples to Scalars."""

    __slots__ = ("spec", "coeffs")

    def __init__(self, spec, coeffs):
        self.spec = spec
        self.coeffs = {e: c for e, c in coeffs.items() if not c.is_zero()}

    # -- constructors ---------------------------------------------------------

    @classmethod
    def zero(cls, spec):
        return cls(spec, {})

    @classmethod
    def const(cls, spec, scalar):
        scalar = spec.field.scalar(scalar)
        return cls(spec, {(0,) * spec.nvars: scalar})

    @classmethod
    def variable(cls, spec, j):
        if not 0 <= j < spec.nvars:
            raise DimensionMismatch("variable index out of range")
        if spec.beta < 1:
            return cls.zero(spec)
        e = tuple(1 if i == j else 0 for i in range(spec.nvars))
        return cls(spec, {e: spec.field.one})

    @classmethod
    def monomial(cls, spec, exps, scalar=None):
        exps = tuple(exps)
        if sum(exps) > spec.beta:
            return cls.zero(spec)
        c = spec.field.one if scalar is None else spec.field.scalar(scalar)
        return cls(spec, {exps: c})

    # -- structure ------------------------------------------------------------

    def is_zero(self):
        return not self.coeffs

    def order(self):
        """Minimal total degree of a term, or None for the zero element."""
        if not self.coeffs:
            return None
        return min(sum(e) for e in self.coeffs)

    def degree(self):
        if not self.coeffs:
            return None
        return max(sum(e) for e in self.coeffs)

    @property
    def constant_term(self):
        return self.coeffs.get((0,) * self.spec.nvars, self.spec.field.zero)

    def coefficient(self, exps):
        return self.coeffs.get(tuple(exps), self.spec.field.zero)

    def support_vars(self):
        used = set()
        for e in self.coeffs:
            for j, k in enumerate(e):
                if k:
                    used.add(j)
        return sorted(used)

    def graded_part(self, d):
        return TruncPoly(self.spec,
                         {e: c for e, c in self.coeffs.items()
                          if sum(e) == d})

    def truncated(self, beta):
        """Image in the ring with the (smaller or equal) truncation order."""
        spec = self.spec.with_beta(beta)
        return TruncPoly(spec, {e: c for e, c in self.coeffs.items()
                                if sum(e) <= beta})

    def in_spec(self, spec):
        if (spec.nvars, spec.field, spec.names) != (
                self.spec.nvars, self.spec.field, self.spec.names):
            raise SpecMismatch("incompatible ring spec")
        return TruncPoly(spec, {e: c for e, c in self.coeffs.items()
                                if sum(e) <= spec.beta})

    # -- arithmetic -----------------------------------------------------------

    def _conform(self, other):
        if not isinstance(other, TruncPoly):
            raise SpecMismatch("expected a ring element")
        if other.spec != self.spec:
            raise SpecMismatch("elements of different rings")

    def __add__(self, other):
        self._conform(other)
        out = dict(self.coeffs)
        for e, c in other.coeffs.items():
            s = out.get(e)
            out[e] = c if s is None else s + c
        return TruncPoly(self.spec, out)

    def __neg__(self):
        return TruncPoly(self.spec, {e: -c for e, c in self.coeffs.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if not isinstance(other, TruncPoly):
            return self.scale(other)
        self._conform(other)
        beta = self.spec.beta
        out = {}
        for e1, c1 in self.coeffs.items():
            d1 = sum(e1)
            for e2, c2 in other.coeffs.items():
                if d1 + sum(e2) > beta:
                    continue
                e = tuple(a + b for a, b in zip(e1, e2))
                s = out.get(e)
                prod = c1 * c2
                out[e] = prod if s is None else s + prod
        return TruncPoly(self.spec, out)

    def __rmul__(self, other):
        return self.scale(other)

    def scale(self, scalar):
        scalar = self.spec.field.scalar(scalar)
        return TruncPoly(self.spec,
                         {e: scalar * c for e, c in self.coeffs.items()})

    def __pow__(self, n):
        if n < 0:
            return self.invert_unit() ** (-n)
        result = TruncPoly.const(self.spec, self.spec.field.one)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other):
        return (isinstance(other, TruncPoly) and self.spec == other.spec
                and self.coeffs == other.coeffs)

    def __hash__(self):
        return hash((self.spec.key(), tuple(sorted(self.coeffs.items()))))

    # -- calculus -------------------------------------------------------------

    def derivative(self, j):
        """Formal partial derivative with respect to the j-th variable.

        Information above degree beta-1 of the derivative is absent; callers
        must budget the truncation order accordingly.
        """
        if not 0 <= j < self.spec.nvars:
            raise DimensionMismatch("variable index out of range")
        out = {}
        for e, c in self.coeffs.items():
            if e[j] == 0:
                continue
            factor = self.spec.field.from_int(e[j])
            if factor.is_zero():
                continue
            ne = tuple(v - 1 if i == j else v for i, v in enumerate(e))
            out[ne] = out.get(ne, self.spec.field.zero) + factor * c
        return TruncPoly(self.spec, out)

    def eval_at(self, point):
        """Value at a point of k^N.  Meaningful for exact polynomials."""
        if len(point) != self.spec.nvars:
            raise DimensionMismatch("point has wrong length")
        total = self.spec.field.zero
        for e, c in self.coeffs.items():
            term = c
            for a, k in zip(point, e):
                if k:
                    term = term * a ** k
            total = total + term
        return total

    # -- units ----------------------------------------------------------------

    def is_unit(self):
        return not self.constant_term.is_zero()

    def invert_unit(self):
        """Multiplicative inverse via the finite geometric series."""
        c = self.constant_term
        if c.is_zero():
            raise NotAUnit("constant term vanishes")
        cinv = c.inverse()
        w = self.scale(cinv) - TruncPoly.const(self.spec, self.spec.field.one)
        acc = TruncPoly.const(self.spec, self.spec.field.one)
        term = acc
        for _ in range(self.spec.beta):
            term = -(term * w)
            if term.is_zero():
                break
            acc = acc + term
        return acc.scale(cinv)

    # -- coordinates ----------------------------------------------------------

    def coefficient_vector(self):
        """Coordinates with respect to the spec's monomial basis."""
        zero = self.spec.field.zero
        vec = [zero] * self.spec.dim
        idx = self.spec.index()
        for e, c in self.coeffs.items():
            vec[idx[e]] = c
        return vec

    @classmethod
    def from_vector(cls, spec, vec):
        basis = spec.monomials()
        if len(vec) != len(basis):
            raise DimensionMismatch("vector length != ring dimension")
        return cls(spec, {e: c for e, c in zip(basis, vec) if not c.is_zero()})

    # -- printing -------------------------------------------------------------

    def __repr__(self):
        return f"TruncPoly({self})"

    def __str__(self):
        if not self.coeffs:
            return "0"
        items = sorted(self.coeffs.items(), key=_display_key)
        parts = []
        for e, c in items:
            mono = "*".join(
                (self.spec.names[j] if k == 1 else f"{self.spec.names[j]}^{k}")
                for j, k in enumerate(e) if k)
            cs = str(c)
            if not mono:
                term = cs
            elif cs == "1":
                term = mono
            elif cs == "-1" and self.spec.field.p == 0:
                term = f"-{mono}"
            else:
                if "+" in cs or (cs.count("-") > (1 if cs.startswith("-") else 0)):
                    cs = f"({cs})"
                term = f"{cs}*{mono}"
            parts.append(term)
        text = parts[0]
        for term in parts[1:]:
            if term.startswith("-"):
                text += " - " + term[1:]
            else:
                text += " + " + term
        return text


def ring_arith(a, b, op):
    """Dispatch form of ring arithmetic (scale takes a Scalar as b)."""
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "scale":
        return a.scale(b)
    raise SpecMismatch(f"unknown op {op!r}")


def compose(f, phis, allow_constant_term=False):
    """Substitution f(phi_1, ..., phi_N), truncated at beta.

    Each phi_i must vanish at the origin so that truncation is well defined;
    exact polynomial substitutions (Taylor shifts) pass the explicit flag.
    """
    spec = f.spec
    if len(phis) != spec.nvars:
        raise DimensionMismatch("need one substitution per variable")
    for ph in phis:
        if ph.spec != spec:
            raise SpecMismatch("substitution in a different ring")
        if not allow_constant_term and not ph.constant_term.is_zero():
            raise ConstantTermNotAllowed(
                "substitution has a constant term; pass allow_constant_term "
                "only for exact polynomial shifts")
    one = TruncPoly.const(spec, spec.field.one)
    powers = [[one] for _ in range(spec.nvars)]

    def power(j, k):
        cache = powers[j]
        while len(cache) <= k:
            cache.append(cache[-1] * phis[j])
        return cache[k]

    total = TruncPoly.zero(spec)
    for e, c in sorted(f.coeffs.items()):
        term = TruncPoly.const(spec, c)
        for j, k in enumerate(e):
            if k:
                term = term * power(j, k)
        total = total + term
    return total


class PolySystem:
    """A tuple (f_1, ..., f_n) of elements of one jet ring."""

    __slots__ = ("spec", "entries")

    def __init__(self, spec, entries):
        entries = tuple(entries)
        if not entries:
            raise SpecMismatch("a system needs at least one entry")
        for f in entries:
            if f.spec != spec:
                raise SpecMismatch("entries of different rings")
        self.spec = spec
        self.entries = entries

    @property
    def n(self):
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)

    def __getitem__(self, i):
        return self.entries[i]

    def __eq__(self, other):
        return (isinstance(other, PolySystem) and self.spec == other.spec
                and self.entries == other.entries)

    def __repr__(self):
        return "PolySystem(" + "; ".join(str(f) for f in self.entries) + ")"

    def orders(self):
        return tuple(f.order() for f in self.entries)

    def max_degree(self):
        degs = [f.degree() for f in self.entries if f.degree() is not None]
        return max(degs) if degs else 0

    def in_spec(self, spec):
        return PolySystem(spec, [f.in_spec(spec) for f in self.entries])

    def eval_at(self, point):
        return [f.eval_at(point) for f in self.entries]

    def jacobian(self):
        """n x N matrix of ring elements d f_i / d x_j."""
        return [[f.derivative(j) for j in range(self.spec.nvars)]
                for f in self.entries]

    def jacobian_at(self, point):
        from .linalg import Matrix
        rows = [[df.eval_at(point) for df in row] for row in self.jacobian()]
        return Matrix(self.spec.field, rows)


def taylor_shift(system, point):
    """Recenter: each f_i(x + a), exact for exact polynomial entries."""
    spec = system.spec
    if len(point) != spec.nvars:
        raise DimensionMismatch("shift point has wrong length")
    point = [spec.field.scalar(a) for a in point]
    phis = [TruncPoly.variable(spec, j) + TruncPoly.const(spec, a)
            for j, a in enumerate(point)]
    return PolySystem(spec, [compose(f, phis, allow_constant_term=True)
                             for f in system.entries])


def ideal_span(system, maximal_ideal=False, beta=None):
    """k-linear span of monomial multiples x^a * f_i inside the jet ring.

    With ``maximal_ideal`` only multipliers with |a| >= 1 are used.  Passing
    ``beta`` computes the span inside the smaller ring O_{N,beta}; this is the
    truncation-faithful rendering of membership in (f) + (x)^{beta+1}.
    """
    spec = system.spec if beta is None else system.spec.with_beta(beta)
    entries = (system.entries if beta is None
               else [f.in_spec(spec) for f in system.entries])
    lo = 1 if maximal_ideal else 0
    vectors = []
    for f in entries:
        ordf = f.order()
        if ordf is None:
            continue
        for e in spec.monomials():
            d = sum(e)
            if d < lo or d + ordf > spec.beta:
                continue
            vectors.append((TruncPoly.monomial(spec, e) * f)
                           .coefficient_vector())
    return Subspace.from_vectors(spec.field, spec.dim, vectors)


def unit_ops(f, op):
    """Dispatch form: is_unit -> bool, invert -> TruncPoly."""
    if op == "is_unit":
        return f.is_unit()
    if op == "invert":
        return f.invert_unit()
    raise SpecMismatch(f"unknown op {op!r}")
