"""Request/response models for the HTTP service.

Exact rationals travel as "num/den" strings; f*-vectors as integer
arrays; polynomial coefficients ascending by power.
"""

from __future__ import annotations

from typing import Annotated, List, Optional

from pydantic import BaseModel, Field

NonNegInt = Annotated[int, Field(ge=0)]
PosInt = Annotated[int, Field(ge=1)]
KappaIndex = Annotated[int, Field(ge=1)]


class PsiRequest(BaseModel):
    genus: NonNegInt
    d: List[NonNegInt] = Field(default_factory=list,
                               description="literal insertion exponents")


class PsiResponse(BaseModel):
    command: str
    genus: int
    d: List[int]
    value: str


class KappaRequest(BaseModel):
    genus: NonNegInt
    kappa: List[KappaIndex] = Field(min_length=1)
    d: List[NonNegInt] = Field(default_factory=list)


class KappaResponse(BaseModel):
    command: str
    genus: int
    kappa: List[int]
    d: List[int]
    value: str


class DVectorRequest(BaseModel):
    d: List[NonNegInt] = Field(default_factory=list)


class LPolyResponse(BaseModel):
    command: str
    d: List[int]
    coefficients: List[str]
    rendered: str
    fstar: List[int]
    m: int
    C: int
    lead: int
    gcd: int


class FStarResponse(BaseModel):
    command: str
    d: List[int]
    fstar: List[int]
    m: int
    gcd: int
    verdict: str
    negative_index: Optional[int] = None


class ScanRequest(BaseModel):
    max_total: NonNegInt
    max_parts: NonNegInt


class ScanRecord(BaseModel):
    d: List[int]
    coefficients: List[str]
    rendered: str
    fstar: List[int]
    m: int
    C: int
    lead: int
    gcd: int


class ScanResponse(BaseModel):
    command: str
    max_total: int
    max_parts: int
    count: int
    records: List[ScanRecord]


class CountRequest(BaseModel):
    fixture: str
    g: PosInt


class CountResponse(BaseModel):
    command: str
    fixture: str
    g: int
    count: int
    multiplier: int
    d: List[int]
    m: int
    lvalue: int


class InterpolateRequest(BaseModel):
    fixture: str


class InterpolateResponse(BaseModel):
    command: str
    fixture: str
    dim: int
    counts: List[int]
    coefficients: List[str]
    rendered: str


class VerifyRequest(BaseModel):
    fixture: str
    gmax: PosInt = 6


class VerifyResponse(BaseModel):
    command: str
    fixture: str
    gmax: int
    fstar: List[int]
    verified_dilates: int
    d: List[int]
    multiplier: int


class CachePathRequest(BaseModel):
    path: Optional[str] = Field(
        default=None, description="cache file; falls back to PSI_EHRHART_CACHE")


class CacheResponse(BaseModel):
    path: str
    entries: int


class HealthResponse(BaseModel):
    status: str
    version: str


class FixturesResponse(BaseModel):
    fixtures: List[str]
