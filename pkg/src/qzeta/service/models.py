"""Request/response schemas.

Field order is fixed deliberately: serialized records are meant to be
byte-identical across runs for identical requests (wall_time_ms excepted),
so downstream diffing of experiment logs just works.
"""

from __future__ import annotations

from typing import Literal, Optional

from pydantic import BaseModel, Field, model_validator

Method = Literal["direct", "continued", "closed", "em-qform"]
Accumulator = Literal["standard", "double-double"]


class EvalRequest(BaseModel):
    s_re: float
    s_im: float = 0.0
    q: float = Field(gt=0.0, lt=1.0)
    method: Method = "continued"
    t_offset: Optional[int] = Field(default=None, ge=0)
    terms: Optional[int] = Field(default=None, ge=1)
    tol: float = Field(default=1e-12, ge=1e-15)
    max_terms: int = Field(default=2_000_000, ge=1)
    pole_guard: float = Field(default=1e-8, ge=1e-12)
    accumulator: Accumulator = "standard"

    @model_validator(mode="after")
    def _check_modes(self):
        if self.terms is not None and self.method != "continued":
            raise ValueError("exact-term mode requires method='continued'")
        return self


class PoleInfo(BaseModel):
    kind: str
    a: int
    b: int
    base_re: float
    base_im: float
    delta_re: float
    delta_im: float
    distance: Optional[float] = None


class ResultRecord(BaseModel):
    s_re: float
    s_im: float
    q: float
    method: Method
    t_offset: Optional[int] = None
    terms: Optional[int] = None
    tol: float
    accumulator: Accumulator
    value_re: Optional[float] = None
    value_im: Optional[float] = None
    err: Optional[float] = None
    terms_used: Optional[int] = None
    converged: Optional[bool] = None
    pole_warnings: list[PoleInfo] = Field(default_factory=list)
    error: Optional[str] = None
    wall_time_ms: float = 0.0


CSV_COLUMNS = ["s_re", "s_im", "q", "method", "terms",
               "value_re", "value_im", "err", "time_ms"]


class SweepRequest(BaseModel):
    s_re: float
    s_im: float = 0.0
    q_grid: list[float] = Field(min_length=1)
    method: Method = "continued"
    tol: float = Field(default=1e-12, ge=1e-15)
    pole_guard: float = Field(default=1e-8, ge=1e-12)
    accumulator: Accumulator = "standard"
    extrapolate: bool = False
    order: int = Field(default=4, ge=1)


class ExtrapolationInfo(BaseModel):
    limit_re: float
    limit_im: float
    order: int
    residual: float
    reference_re: Optional[float] = None
    reference_im: Optional[float] = None
    abs_error: Optional[float] = None


class SweepResponse(BaseModel):
    records: list[ResultRecord]
    extrapolation: Optional[ExtrapolationInfo] = None


class ReproduceRequest(BaseModel):
    ids: list[str] = Field(default_factory=lambda: ["all"])
    accumulator: Literal["standard", "double-double", "both"] = "both"


class ReproduceRecord(BaseModel):
    example_id: str
    s_re: float
    s_im: float
    q: float
    stated_terms: int
    summed_terms: int
    accumulator: Accumulator
    value_re: float
    value_im: float
    printed_re: float
    printed_im: float
    abs_err_re: float
    abs_err_im: float
    tol: float
    tol_kind: Literal["abs", "rel"]
    within_tol: bool
    wall_time_ms: float = 0.0


class ReproduceResponse(BaseModel):
    records: list[ReproduceRecord]
    all_within_tol: bool


class VerifyRequest(BaseModel):
    suite: Literal["identities", "limits", "em", "all"] = "all"
    tol_overrides: dict[str, float] = Field(default_factory=dict)


class CheckInfo(BaseModel):
    name: str
    metric: float
    threshold: float
    passed: bool
    note: str = ""


class VerifyResponse(BaseModel):
    suite: str
    checks: list[CheckInfo]
    all_passed: bool


class BernResponse(BaseModel):
    k: int
    numerator: str
    denominator: str
    value: float


class QBernResponse(BaseModel):
    m: int
    q: float
    value: float


class PoleSetResponse(BaseModel):
    q: float
    poles: list[PoleInfo]


class ErrorPayload(BaseModel):
    error: str
    detail: str = ""
    pole: Optional[PoleInfo] = None
