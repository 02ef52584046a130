"""Desk-scale isosingular scans: enumerate points of V(f), classify them by
contact fingerprints of the recentered jets, and decide jet equivalence in
three confidence tiers.

Distinct fingerprints refute equivalence soundly; equal fingerprints only
mark candidates, because truncation-level positives cannot be promoted to
formal equivalence.  A tiny-scale exhaustive orbit search provides the
independent oracle tier.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import product

from .contact import ContactElement, act, verify_equivalence_witness
from .errors import (DomainTooLarge, FieldNotFinite, PointNotOnVariety,
                     SearchSpaceTooLarge, SpecMismatch)
from .linalg import Matrix
from .tangent import fingerprint, quartic_j_invariant, tangent_cone
from .trunc import PolySystem, TruncPoly, taylor_shift
from . import errors


DEFAULT_DOMAIN_CAP = 10 ** 6


def enumerate_points(system, domain=None, cap=DEFAULT_DOMAIN_CAP):
    """All points of the domain where every entry vanishes.

    ``domain`` is None for all of F_q^N, or a dict
    {"low": Fraction, "high": Fraction, "max_denominator": int} for a
    rational box.  Points come back in canonical sorted order.
    """
    spec = system.spec
    field = spec.field
    if domain is None:
        if field.p == 0:
            raise FieldNotFinite("full-space scans need a finite field; "
                                 "give a rational box over Q")
        count = field.order ** spec.nvars
        if count > cap:
            raise DomainTooLarge(f"{count} candidate points exceed the cap "
                                 f"{cap}")
        axis = list(field.elements())
    else:
        low = Fraction(domain["low"])
        high = Fraction(domain["high"])
        max_den = int(domain.get("max_denominator", 1))
        values = set()
        for den in range(1, max_den + 1):
            num = -(-low.numerator * den // low.denominator)  # ceil(low*den)
            while Fraction(num, den) <= high:
                values.add(Fraction(num, den))
                num += 1
        axis = [field.scalar(v) for v in sorted(values)]
        count = len(axis) ** spec.nvars
        if count > cap:
            raise DomainTooLarge(f"{count} candidate points exceed the cap "
                                 f"{cap}")

    points = []
    for combo in product(axis, repeat=spec.nvars):
        if all(v.is_zero() for v in system.eval_at(list(combo))):
            points.append(tuple(combo))
    points.sort(key=lambda pt: tuple(c.sort_key() for c in pt))
    return points


class ScanEntry:
    __slots__ = ("point", "fingerprint", "smooth", "jacobian_rank",
                 "j_invariant", "j_note")

    def __init__(self, point, fp, smooth, jacobian_rank, j_invariant, j_note):
        self.point = point
        self.fingerprint = fp
        self.smooth = smooth
        self.jacobian_rank = jacobian_rank
        self.j_invariant = j_invariant
        self.j_note = j_note

    def to_json(self):
        return {
            "point": [str(c) for c in self.point],
            "fingerprint": self.fingerprint.to_json(),
            "smooth": self.smooth,
            "jacobian_rank": self.jacobian_rank,
            "j_invariant": None if self.j_invariant is None
            else str(self.j_invariant),
            "j_note": self.j_note,
        }


class ScanReport:
    __slots__ = ("system", "entries", "classes")

    def __init__(self, system, entries, classes):
        self.system = system
        self.entries = entries
        self.classes = classes

    def to_json(self):
        return {
            "field": self.system.spec.field.to_string(),
            "beta": self.system.spec.beta,
            "f": [str(f) for f in self.system.entries],
            "points": [e.to_json() for e in self.entries],
            "classes": [
                {
                    "points": [[str(c) for c in self.entries[i].point]
                               for i in cls],
                    "indices": list(cls),
                    "smooth": self.entries[cls[0]].smooth,
                    "fingerprint": self.entries[cls[0]].fingerprint.to_json(),
                    "j_invariants": sorted({
                        str(self.entries[i].j_invariant) for i in cls
                        if self.entries[i].j_invariant is not None}),
                }
                for cls in self.classes
            ],
        }


def _quartic_annotation(shifted):
    """j-invariant of the lowest-degree part when it is a binary quartic."""
    if shifted.n != 1 or shifted.entries[0].is_zero():
        return None, None
    cone = tangent_cone(shifted.entries[0])
    if cone.order() != 4 or len(cone.support_vars()) > 2:
        return None, None
    try:
        return quartic_j_invariant(cone), None
    except errors.RepeatedRoots:
        return None, "repeated-roots"
    except errors.RootsNotInField:
        return None, "roots-not-in-field"


def classify(system, points):
    """Per-point fingerprints of the recentered jets, the partition into
    fingerprint classes, and complete-intersection smoothness flags."""
    n = system.n
    entries = []
    for pt in points:
        pt = tuple(system.spec.field.scalar(c) for c in pt)
        if any(not v.is_zero() for v in system.eval_at(list(pt))):
            raise PointNotOnVariety(
                "point (" + ", ".join(str(c) for c in pt)
                + ") does not lie on V(f)")
        shifted = taylor_shift(system, list(pt))
        fp = fingerprint(shifted)
        rank = system.jacobian_at(list(pt)).rank()
        jinv, jnote = _quartic_annotation(shifted)
        entries.append(ScanEntry(pt, fp, rank == n, rank, jinv, jnote))

    class_map = {}
    for idx, entry in enumerate(entries):
        class_map.setdefault(entry.fingerprint.key(), []).append(idx)
    classes = sorted(class_map.values(), key=lambda idxs: idxs[0])
    return ScanReport(system, entries, classes)


# -- tiny-scale exhaustive oracle ------------------------------------------------

BRUTE_LIMITS = {"nvars": 2, "n": 1, "beta": 2, "q": 3}


def iterate_group(spec):
    """All valid n = 1 group elements at tiny scale, in a fixed
    deterministic order: unit polynomials times origin-fixing substitutions
    with invertible linear part."""
    field = spec.field
    elements = list(field.elements())
    nonzero = [c for c in elements if not c.is_zero()]
    nonconst = [e for e in spec.monomials() if sum(e) >= 1]
    const = (0,) * spec.nvars

    substitutions = []
    if spec.beta == 0:
        # the automorphism part is trivial on a degree-0 jet ring
        substitutions.append(tuple(TruncPoly.zero(spec)
                                   for _ in range(spec.nvars)))
    for flat in product(elements, repeat=len(nonconst) * spec.nvars):
        if spec.beta == 0:
            break
        phis = []
        for j in range(spec.nvars):
            chunk = flat[j * len(nonconst):(j + 1) * len(nonconst)]
            phis.append(TruncPoly(spec, {e: c for e, c in zip(nonconst, chunk)
                                         if not c.is_zero()}))
        rows = [[ph.derivative(k).constant_term for k in range(spec.nvars)]
                for ph in phis]
        if Matrix(field, rows).is_invertible():
            substitutions.append(tuple(phis))

    for m_combo in product(nonzero, *([elements] * len(nonconst))):
        M_poly = TruncPoly(spec, {e: c for e, c in
                                  zip((const,) + tuple(nonconst), m_combo)
                                  if not c.is_zero()})
        for phis in substitutions:
            yield ContactElement(spec, ((M_poly,),), phis, validate=False)


def brute_force_equiv(f, g):
    """Exhaustive orbit membership test at tiny scale.

    True iff some group element carries the jet f to the jet g; enforced
    caps keep the enumeration finite (N <= 2, n = 1, beta <= 2, q <= 3).
    """
    spec = f.spec
    if g.spec != spec or g.n != f.n:
        raise SpecMismatch("jets live in different rings")
    field = spec.field
    if field.p == 0:
        raise SearchSpaceTooLarge("exhaustive search needs a finite field")
    if (spec.nvars > BRUTE_LIMITS["nvars"] or f.n > BRUTE_LIMITS["n"]
            or spec.beta > BRUTE_LIMITS["beta"]
            or field.order > BRUTE_LIMITS["q"]):
        raise SearchSpaceTooLarge(
            "exhaustive enumeration is capped at N <= 2, n = 1, beta <= 2, "
            "q <= 3")
    for el in iterate_group(spec):
        if act(el, f) == g:
            return True
    return False


# -- tiered equivalence decision --------------------------------------------------

class EquivDecision:
    """tier: 'witnessed' | 'exhaustive' | 'candidate' | 'inequivalent'
    | 'witness-invalid'."""

    __slots__ = ("tier", "equivalent", "witness", "fingerprints", "beta")

    def __init__(self, tier, equivalent, witness, fingerprints, beta):
        self.tier = tier
        self.equivalent = equivalent
        self.witness = witness
        self.fingerprints = fingerprints
        self.beta = beta


def decide_equivalence(system, a1, a2, witness=None):
    """Tiered decision for gamma(a2) in the orbit of gamma(a1).

    Negative answers (distinct fingerprints, or an exhausted tiny-scale
    search) are definitive at the stated beta; positive answers report their
    evidence tier.
    """
    spec = system.spec
    if witness is not None:
        ok = verify_equivalence_witness(system, a1, a2, witness)
        tier = "witnessed" if ok else "witness-invalid"
        return EquivDecision(tier, ok, witness if ok else None, None,
                             spec.beta)

    f1 = taylor_shift(system, [spec.field.scalar(c) for c in a1])
    f2 = taylor_shift(system, [spec.field.scalar(c) for c in a2])
    fp1, fp2 = fingerprint(f1), fingerprint(f2)
    pair = (fp1, fp2)
    if fp1 != fp2:
        return EquivDecision("inequivalent", False, None, pair, spec.beta)
    try:
        equal = brute_force_equiv(f1, f2)
        tier = "exhaustive" if equal else "inequivalent"
        return EquivDecision(tier, equal, None, pair, spec.beta)
    except SearchSpaceTooLarge:
        return EquivDecision("candidate", None, None, pair, spec.beta)
