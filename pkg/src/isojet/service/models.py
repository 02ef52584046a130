"""Request/response schemas for the isojet service.

Every payload is strings-in / strings-out: field specs, scalars, and
polynomials use the text syntax of the parsing module, so responses are
byte-identical across runs.
"""

from __future__ import annotations

from pydantic import BaseModel, Field as PField


class RingRequest(BaseModel):
    """Common shape: base field, variables (count or name list), beta."""
    field: str = "Q"
    vars: int | str | list[str] | None = None
    beta: int | None = None
    truncate: bool = False


class ContactElementBody(BaseModel):
    M: list[list[str]]
    phi: list[str]


class DerivationBody(BaseModel):
    g: list[str]
    H: list[list[str]]


class ErrorBody(BaseModel):
    code: str
    message: str
    position: int | None = None


# -- ring-eval ----------------------------------------------------------------

class RingEvalRequest(RingRequest):
    expr: str


class RingEvalResponse(BaseModel):
    poly: str
    order: int | None
    degree: int | None
    field: str
    vars: list[str]
    beta: int


# -- act ------------------------------------------------------------------------

class ActRequest(RingRequest):
    f: list[str]
    element: ContactElementBody


class ActResponse(BaseModel):
    result: list[str]
    field: str
    beta: int


# -- invert ----------------------------------------------------------------------

class InvertRequest(RingRequest):
    element: ContactElementBody


class InvertResponse(BaseModel):
    element: ContactElementBody
    field: str
    beta: int


# -- mather ------------------------------------------------------------------------

class MatherRequest(BaseModel):
    field: str = "Q"
    A: list[list[str]]
    B: list[list[str]]


class MatherResponse(BaseModel):
    C: list[list[str]]
    D: list[list[str]] = PField(description="C(1-AB)+B")
    det_D: str


# -- equiv-check ---------------------------------------------------------------------

class EquivCheckRequest(RingRequest):
    f: list[str]
    a1: list[str]
    a2: list[str]
    witness: ContactElementBody | None = None


class FingerprintBody(BaseModel):
    field: str
    beta: int
    n: int
    orders: list[int | None]
    min_order: int | None
    hilbert: list[int]
    codim: int


class EquivCheckResponse(BaseModel):
    tier: str
    equivalent: bool | None
    beta: int
    witness: ContactElementBody | None = None
    fingerprints: list[FingerprintBody] | None = None


# -- orbit-tangent / fingerprint ---------------------------------------------------

class SystemRequest(RingRequest):
    f: list[str]


class OrbitTangentResponse(BaseModel):
    dim: int
    codim: int
    ambient: int
    field: str
    beta: int


class FingerprintResponse(FingerprintBody):
    pass


# -- jinv ----------------------------------------------------------------------------

class JinvRequest(RingRequest):
    q: str


class JinvResponse(BaseModel):
    ok: bool
    j: str | None = None
    reason: str | None = None


# -- log-der / solvable-dirs ---------------------------------------------------------

class LogDerRequest(SystemRequest):
    v: list[str]
    beta_work: int


class CertificateBody(BaseModel):
    left_null_vector: list[str]
    beta_work: int


class LogDerResponse(BaseModel):
    feasible: bool
    derivation: DerivationBody | None = None
    certificate: CertificateBody | None = None
    beta_work: int
    field: str


class SolvableDirsRequest(SystemRequest):
    beta_work: int


class SolvableDirsResponse(BaseModel):
    dim: int
    basis: list[list[str]]
    beta_work: int
    field: str


# -- insep-cert ------------------------------------------------------------------------

class InsepCertRequest(SystemRequest):
    a: list[str]
    witness: ContactElementBody
    beta_work: int


class InsepCertResponse(BaseModel):
    issued: bool
    reason: str | None = None
    f: list[str] | None = None
    field: str | None = None
    beta: int | None = None
    beta_work: int | None = None
    point: list[str] | None = None
    direction: list[str] | None = None
    witness: ContactElementBody | None = None
    infeasibility: CertificateBody | None = None
    derivation: DerivationBody | None = None


# -- split -------------------------------------------------------------------------------

class SplitRequest(SystemRequest):
    d: DerivationBody


class SplitResponse(BaseModel):
    psi: list[str]
    var_index: int
    var: str
    residual: list[str]
    multipliers: list[list[str]]
    field: str
    beta: int


# -- hs ----------------------------------------------------------------------------------

class HsSearchRequest(SystemRequest):
    r: int
    beta_work: int
    mode: str = "any"


class HsWitnessBody(BaseModel):
    r: int
    images: list[list[str]]
    regularity: list[dict]


class HsSearchResponse(BaseModel):
    result: str
    witness: HsWitnessBody | None = None
    nodes: int | None = None
    r: int
    beta: int
    field: str


class HsVerifyRequest(SystemRequest):
    images: list[list[str]]
    beta_work: int


class HsViolationBody(BaseModel):
    entry: int
    order: int
    residue: str


class HsVerifyResponse(BaseModel):
    ok: bool
    violation: HsViolationBody | None = None
    beta_work: int


# -- iso-scan ------------------------------------------------------------------------------

class DomainBody(BaseModel):
    low: str = "-2"
    high: str = "2"
    max_denominator: int = 1


class IsoScanRequest(SystemRequest):
    domain: DomainBody | None = None
    cap: int = 10 ** 6


class ScanPointBody(BaseModel):
    point: list[str]
    fingerprint: FingerprintBody
    smooth: bool
    jacobian_rank: int
    j_invariant: str | None = None
    j_note: str | None = None


class ScanClassBody(BaseModel):
    points: list[list[str]]
    indices: list[int]
    smooth: bool
    fingerprint: FingerprintBody
    j_invariants: list[str]


class IsoScanResponse(BaseModel):
    field: str
    beta: int
    f: list[str]
    points: list[ScanPointBody]
    classes: list[ScanClassBody]


# -- demo ----------------------------------------------------------------------------------

class DemoRequest(BaseModel):
    name: str


class DemoResponse(BaseModel):
    name: str
    sections: dict
