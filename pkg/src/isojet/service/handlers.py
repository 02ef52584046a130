"""Handler functions: one per command, pydantic request in, pydantic
response out.  The FastAPI app and the CLI both call these; domain errors
propagate as IsojetError for the caller to translate."""

from __future__ import annotations

from fractions import Fraction

from .. import demos
from ..contact import ContactElement, act, invert
from ..derlog import (Derivation, LogInfeasible, inseparability_certificate,
                      solve_log_derivation, solvable_directions,
                      straighten_and_split)
from ..errors import (DerivationFeasible, ParseError, RepeatedRoots,
                      RootsNotInField, WitnessInvalid)
from ..hs import Exhausted, HSDerivation, hs_search, hs_verify
from ..isoscan import classify, decide_equivalence, enumerate_points
from ..linalg import Matrix
from ..parsing import (make_ring, parse_field, parse_point, parse_poly,
                       parse_scalar, parse_system, parse_vars)
from ..tangent import fingerprint, orbit_tangent_space, quartic_j_invariant
from . import models as M


def _ring_from(req, f_texts=None):
    nvars, names = parse_vars(req.vars)
    beta = req.beta
    if nvars is None and f_texts:
        raise ParseError("--vars is required")
    if beta is None and f_texts is not None:
        # heuristic default: twice the maximal total degree of the input
        probe = make_ring(req.field, nvars=nvars, beta=64, names=names)
        degs = [parse_poly(t, probe, truncate=False).degree() or 0
                for t in f_texts]
        beta = 2 * max(degs) if degs else 2
    return make_ring(req.field, nvars=nvars, beta=beta, names=names)


def _element_from(body, spec, n, truncate=False):
    Mrows = tuple(tuple(parse_poly(t, spec, truncate=truncate) for t in row)
                  for row in body.M)
    phi = tuple(parse_poly(t, spec, truncate=truncate) for t in body.phi)
    return ContactElement(spec, Mrows, phi)


def _element_body(el):
    return M.ContactElementBody(
        M=[[str(entry) for entry in row] for row in el.M],
        phi=[str(p) for p in el.phi])


def _fingerprint_body(fp):
    return M.FingerprintBody(**fp.to_json())


def _derivation_from(body, spec, truncate=False):
    g = [parse_poly(t, spec, truncate=truncate) for t in body.g]
    H = [[parse_poly(t, spec, truncate=truncate) for t in row]
         for row in body.H]
    return Derivation(spec, g, H)


def ring_eval(req: M.RingEvalRequest) -> M.RingEvalResponse:
    spec = _ring_from(req, f_texts=[req.expr])
    poly = parse_poly(req.expr, spec, truncate=req.truncate)
    return M.RingEvalResponse(poly=str(poly), order=poly.order(),
                              degree=poly.degree(),
                              field=spec.field.to_string(),
                              vars=list(spec.names), beta=spec.beta)


def do_act(req: M.ActRequest) -> M.ActResponse:
    spec = _ring_from(req, f_texts=req.f)
    system = parse_system(req.f, spec, truncate=req.truncate)
    el = _element_from(req.element, spec, system.n, truncate=req.truncate)
    moved = act(el, system)
    return M.ActResponse(result=[str(f) for f in moved.entries],
                         field=spec.field.to_string(), beta=spec.beta)


def do_invert(req: M.InvertRequest) -> M.InvertResponse:
    spec = _ring_from(req, f_texts=req.element.phi)
    el = _element_from(req.element, spec, len(req.element.M),
                       truncate=req.truncate)
    inv = invert(el)
    return M.InvertResponse(element=_element_body(inv),
                            field=spec.field.to_string(), beta=spec.beta)


def do_mather(req: M.MatherRequest) -> M.MatherResponse:
    from ..contact import mather_complement
    field = parse_field(req.field)
    A = Matrix(field, [[parse_scalar(t, field) for t in row]
                       for row in req.A])
    B = Matrix(field, [[parse_scalar(t, field) for t in row]
                       for row in req.B])
    C = mather_complement(A, B)
    ident = Matrix.identity(field, A.nrows)
    D = C * (ident - A * B) + B
    return M.MatherResponse(C=[[str(c) for c in row] for row in C.rows],
                            D=[[str(c) for c in row] for row in D.rows],
                            det_D=str(D.det()))


def equiv_check(req: M.EquivCheckRequest) -> M.EquivCheckResponse:
    spec = _ring_from(req, f_texts=req.f)
    system = parse_system(req.f, spec, truncate=req.truncate)
    a1 = parse_point(req.a1, spec.field)
    a2 = parse_point(req.a2, spec.field)
    witness = None
    if req.witness is not None:
        witness = _element_from(req.witness, spec, system.n,
                                truncate=req.truncate)
    decision = decide_equivalence(system, a1, a2, witness=witness)
    return M.EquivCheckResponse(
        tier=decision.tier, equivalent=decision.equivalent,
        beta=decision.beta,
        witness=_element_body(decision.witness) if decision.witness else None,
        fingerprints=[_fingerprint_body(fp) for fp in decision.fingerprints]
        if decision.fingerprints else None)


def orbit_tangent(req: M.SystemRequest) -> M.OrbitTangentResponse:
    spec = _ring_from(req, f_texts=req.f)
    system = parse_system(req.f, spec, truncate=req.truncate)
    T = orbit_tangent_space(system)
    return M.OrbitTangentResponse(dim=T.dim, codim=T.ambient - T.dim,
                                  ambient=T.ambient,
                                  field=spec.field.to_string(),
                                  beta=spec.beta)


def do_fingerprint(req: M.SystemRequest) -> M.FingerprintResponse:
    spec = _ring_from(req, f_texts=req.f)
    system = parse_system(req.f, spec, truncate=req.truncate)
    return M.FingerprintResponse(**fingerprint(system).to_json())


def do_jinv(req: M.JinvRequest) -> M.JinvResponse:
    spec = _ring_from(req, f_texts=[req.q])
    q = parse_poly(req.q, spec, truncate=req.truncate)
    try:
        j = quartic_j_invariant(q)
    except RepeatedRoots as exc:
        return M.JinvResponse(ok=False, reason=exc.code)
    except RootsNotInField as exc:
        return M.JinvResponse(ok=False, reason=exc.code)
    return M.JinvResponse(ok=True, j=str(j))


def log_der(req: M.LogDerRequest) -> M.LogDerResponse:
    spec = _ring_from(req, f_texts=req.f)
    system = parse_system(req.f, spec, truncate=req.truncate)
    v = parse_point(req.v, spec.field)
    result = solve_log_derivation(system, v, req.beta_work)
    if isinstance(result, LogInfeasible):
        return M.LogDerResponse(
            feasible=False,
            certificate=M.CertificateBody(
                left_null_vector=[str(c) for c in result.certificate],
                beta_work=result.beta_work),
            beta_work=req.beta_work, field=spec.field.to_string())
    return M.LogDerResponse(feasible=True,
                            derivation=M.DerivationBody(**result.to_json()),
                            beta_work=req.beta_work,
                            field=spec.field.to_string())


def solvable_dirs(req: M.SolvableDirsRequest) -> M.SolvableDirsResponse:
    spec = _ring_from(req, f_texts=req.f)
    system = parse_system(req.f, spec, truncate=req.truncate)
    space = solvable_directions(system, req.beta_work)
    return M.SolvableDirsResponse(
        dim=space.dim,
        basis=[[str(c) for c in row] for row in space.basis],
        beta_work=req.beta_work, field=spec.field.to_string())


def insep_cert(req: M.InsepCertRequest) -> M.InsepCertResponse:
    spec = _ring_from(req, f_texts=req.f)
    system = parse_system(req.f, spec, truncate=req.truncate)
    a = parse_point(req.a, spec.field)
    witness = _element_from(req.witness, spec, system.n,
                            truncate=req.truncate)
    try:
        cert = inseparability_certificate(system, a, witness, req.beta_work)
    except WitnessInvalid as exc:
        return M.InsepCertResponse(issued=False, reason=exc.code)
    except DerivationFeasible as exc:
        deriv = exc.details.get("derivation")
        return M.InsepCertResponse(
            issued=False, reason=exc.code,
            derivation=M.DerivationBody(**deriv) if deriv else None)
    return M.InsepCertResponse(
        issued=True,
        f=[str(f) for f in system.entries],
        field=spec.field.to_string(), beta=spec.beta,
        beta_work=cert.beta_work,
        point=[str(c) for c in cert.point],
        direction=[str(c) for c in cert.direction],
        witness=_element_body(cert.witness),
        infeasibility=M.CertificateBody(
            left_null_vector=[str(c) for c in cert.infeasible.certificate],
            beta_work=cert.infeasible.beta_work))


def do_split(req: M.SplitRequest) -> M.SplitResponse:
    spec = _ring_from(req, f_texts=req.f)
    system = parse_system(req.f, spec, truncate=req.truncate)
    d = _derivation_from(req.d, spec, truncate=req.truncate)
    result = straighten_and_split(system, d)
    return M.SplitResponse(
        psi=[str(p) for p in result.psi],
        var_index=result.var_index,
        var=spec.names[result.var_index],
        residual=[str(f) for f in result.residual.entries],
        multipliers=[[str(u) for u in row] for row in result.multipliers],
        field=spec.field.to_string(), beta=spec.beta)


def do_hs_search(req: M.HsSearchRequest) -> M.HsSearchResponse:
    spec = _ring_from(req, f_texts=req.f)
    system = parse_system(req.f, spec, truncate=req.truncate)
    result = hs_search(system, req.r, req.beta_work, mode=req.mode)
    if isinstance(result, Exhausted):
        return M.HsSearchResponse(result="exhausted", nodes=result.nodes,
                                  r=req.r, beta=req.beta_work,
                                  field=spec.field.to_string())
    return M.HsSearchResponse(
        result="found",
        witness=M.HsWitnessBody(**result.to_json()),
        nodes=None, r=req.r, beta=req.beta_work,
        field=spec.field.to_string())


def do_hs_verify(req: M.HsVerifyRequest) -> M.HsVerifyResponse:
    spec = _ring_from(req, f_texts=req.f)
    system = parse_system(req.f, spec, truncate=req.truncate)
    images = [[parse_poly(t, spec, truncate=req.truncate) for t in level]
              for level in req.images]
    D = HSDerivation(spec, len(images), images)
    ok, violation = hs_verify(system, D, req.beta_work)
    return M.HsVerifyResponse(
        ok=ok,
        violation=M.HsViolationBody(**violation.to_json())
        if violation else None,
        beta_work=req.beta_work)


def iso_scan(req: M.IsoScanRequest) -> M.IsoScanResponse:
    spec = _ring_from(req, f_texts=req.f)
    system = parse_system(req.f, spec, truncate=req.truncate)
    domain = None
    if req.domain is not None:
        domain = {"low": Fraction(req.domain.low),
                  "high": Fraction(req.domain.high),
                  "max_denominator": req.domain.max_denominator}
    points = enumerate_points(system, domain=domain, cap=req.cap)
    report = classify(system, points)
    body = report.to_json()
    return M.IsoScanResponse(**body)


def demo(req: M.DemoRequest) -> M.DemoResponse:
    return M.DemoResponse(name=req.name, sections=demos.run(req.name))


#: command name -> (request model, handler)
COMMANDS = {
    "ring-eval": (M.RingEvalRequest, ring_eval),
    "act": (M.ActRequest, do_act),
    "invert": (M.InvertRequest, do_invert),
    "mather": (M.MatherRequest, do_mather),
    "equiv-check": (M.EquivCheckRequest, equiv_check),
    "orbit-tangent": (M.SystemRequest, orbit_tangent),
    "fingerprint": (M.SystemRequest, do_fingerprint),
    "jinv": (M.JinvRequest, do_jinv),
    "log-der": (M.LogDerRequest, log_der),
    "solvable-dirs": (M.SolvableDirsRequest, solvable_dirs),
    "insep-cert": (M.InsepCertRequest, insep_cert),
    "split": (M.SplitRequest, do_split),
    "hs-search": (M.HsSearchRequest, do_hs_search),
    "hs-verify": (M.HsVerifyRequest, do_hs_verify),
    "iso-scan": (M.IsoScanRequest, iso_scan),
    "demo": (M.DemoRequest, demo),
}
