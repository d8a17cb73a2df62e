"""FastAPI application wrapping the numerical core.

Domain errors are reported as structured payloads: pole refusals return
HTTP 400 with ``error = "pole_proximity"`` and the offending lattice point,
non-convergence returns ``error = "non_convergence"``; the CLI maps these
onto its exit codes.
"""

from __future__ import annotations

import time

from fastapi import FastAPI
from fastapi.responses import JSONResponse

from .. import __version__
from ..bernoulli import bernoulli_number
from ..kernel import QParam, richardson_extrapolate
from ..classical import zeta_em
from ..euler_lab import zeta_q_em_form
from ..qbernoulli import q_bernoulli
from ..qzeta import (EvalPolicy, NonConvergenceError, PoleDescriptor,
                     PoleProximityError, f_q_continued, f_q_direct, pole_set,
                     zeta_q, zeta_q_nonpositive)
from ..reproductions import EXAMPLE_IDS, run_reproduction
from ..verification import run_suite
from . import models as m


def _pole_info(p: PoleDescriptor, distance: float | None = None) -> m.PoleInfo:
    return m.PoleInfo(kind=p.kind, a=p.a, b=p.b,
                      base_re=p.base.real, base_im=p.base.imag,
                      delta_re=p.delta.real, delta_im=p.delta.imag,
                      distance=distance)


def _error_response(status: int, payload: m.ErrorPayload) -> JSONResponse:
    return JSONResponse(status_code=status,
                        content=payload.model_dump(exclude_none=True))


def _evaluate(req: m.EvalRequest) -> m.ResultRecord:
    s = complex(req.s_re, req.s_im)
    qp = QParam(req.q)
    policy = EvalPolicy(tol=req.tol, max_terms=req.max_terms,
                        pole_guard=req.pole_guard, accumulator=req.accumulator)
    rec = m.ResultRecord(s_re=req.s_re, s_im=req.s_im, q=req.q,
                         method=req.method, t_offset=req.t_offset,
                         terms=req.terms, tol=req.tol,
                         accumulator=req.accumulator)
    t0 = time.perf_counter()
    if req.method == "closed":
        mm = round(-req.s_re)
        if mm < 0 or abs(s - (-mm)) > 1e-6:
            raise ValueError("method 'closed' needs s at a non-positive integer")
        v = zeta_q_nonpositive(mm, qp)
        result = None
        value = complex(v)
        err, used, conv = abs(v) * 1e-15, mm + 2, True
    elif req.method == "em-qform":
        value = zeta_q_em_form(s, qp, tol=req.tol)
        err, used, conv = req.tol, 0, True
    elif req.method == "direct":
        result = f_q_direct(s, s - 1.0 - (req.t_offset or 0), qp, policy)
        value, err, used, conv = (result.value, result.err_estimate,
                                  result.terms_used, result.converged)
    else:
        if req.t_offset:
            result = f_q_continued(s, s - 1.0 - req.t_offset, qp, policy,
                                   n_terms=req.terms)
        else:
            result = zeta_q(s, qp, policy, n_terms=req.terms)
        value, err, used, conv = (result.value, result.err_estimate,
                                  result.terms_used, result.converged)
    rec = rec.model_copy(update=dict(
        value_re=value.real, value_im=value.imag, err=err,
        terms_used=used, converged=conv,
        wall_time_ms=(time.perf_counter() - t0) * 1e3))
    return rec


def create_app() -> FastAPI:
    app = FastAPI(title="qzeta", version=__version__)

    @app.get("/healthz")
    def healthz():
        return {"status": "ok", "version": __version__}

    @app.post("/eval", response_model=m.ResultRecord)
    def eval_point(req: m.EvalRequest):
        try:
            return _evaluate(req)
        except PoleProximityError as exc:
            return _error_response(400, m.ErrorPayload(
                error="pole_proximity", detail=str(exc),
                pole=_pole_info(exc.pole, exc.distance)))
        except NonConvergenceError as exc:
            return _error_response(400, m.ErrorPayload(
                error="non_convergence", detail=str(exc)))
        except (ValueError, ArithmeticError) as exc:
            return _error_response(422, m.ErrorPayload(
                error="invalid_request", detail=str(exc)))

    @app.post("/sweep", response_model=m.SweepResponse)
    def sweep(req: m.SweepRequest):
        records = []
        samples = []
        for qv in req.q_grid:
            point = m.EvalRequest(s_re=req.s_re, s_im=req.s_im, q=qv,
                                  method=req.method, tol=req.tol,
                                  pole_guard=req.pole_guard,
                                  accumulator=req.accumulator)
            try:
                rec = _evaluate(point)
                samples.append((1.0 - qv, complex(rec.value_re, rec.value_im)))
            except PoleProximityError as exc:
                rec = m.ResultRecord(
                    s_re=req.s_re, s_im=req.s_im, q=qv, method=req.method,
                    tol=req.tol, accumulator=req.accumulator,
                    error="pole_proximity",
                    pole_warnings=[_pole_info(exc.pole, exc.distance)])
            except (NonConvergenceError, ValueError, ArithmeticError) as exc:
                rec = m.ResultRecord(
                    s_re=req.s_re, s_im=req.s_im, q=qv, method=req.method,
                    tol=req.tol, accumulator=req.accumulator, error=str(exc))
            records.append(rec)
        extra = None
        if req.extrapolate and len(samples) >= req.order + 1:
            ext = richardson_extrapolate(samples, req.order)
            s = complex(req.s_re, req.s_im)
            info = dict(limit_re=ext.limit.real, limit_im=ext.limit.imag,
                        order=ext.order, residual=ext.residual)
            if abs(s - 1.0) > 1e-10:
                ref = zeta_em(s)
                info.update(reference_re=ref.real, reference_im=ref.imag,
                            abs_error=abs(ext.limit - ref))
            extra = m.ExtrapolationInfo(**info)
        return m.SweepResponse(records=records, extrapolation=extra)

    @app.post("/reproduce", response_model=m.ReproduceResponse)
    def reproduce(req: m.ReproduceRequest):
        ids = list(EXAMPLE_IDS) if "all" in req.ids else list(req.ids)
        unknown = [i for i in ids if i not in EXAMPLE_IDS]
        if unknown:
            return _error_response(422, m.ErrorPayload(
                error="invalid_request",
                detail=f"unknown example ids {unknown}; known: {EXAMPLE_IDS}"))
        accs = (["standard", "double-double"] if req.accumulator == "both"
                else [req.accumulator])
        records = []
        for example_id in ids:
            for acc in accs:
                exp, value, wall_ms, ok = run_reproduction(example_id, acc)
                records.append(m.ReproduceRecord(
                    example_id=example_id, s_re=exp.s.real, s_im=exp.s.imag,
                    q=exp.q, stated_terms=exp.stated_terms,
                    summed_terms=exp.summed_terms, accumulator=acc,
                    value_re=value.real, value_im=value.imag,
                    printed_re=exp.printed.real, printed_im=exp.printed.imag,
                    abs_err_re=abs(value.real - exp.printed.real),
                    abs_err_im=abs(value.imag - exp.printed.imag),
                    tol=exp.tol, tol_kind=exp.tol_kind, within_tol=ok,
                    wall_time_ms=wall_ms))
        # a run passes if any accumulator lands within tolerance
        by_id: dict[str, bool] = {}
        for rec in records:
            by_id[rec.example_id] = by_id.get(rec.example_id, False) or rec.within_tol
        return m.ReproduceResponse(records=records,
                                   all_within_tol=all(by_id.values()))

    @app.post("/verify", response_model=m.VerifyResponse)
    def verify(req: m.VerifyRequest):
        checks = run_suite(req.suite, req.tol_overrides or None)
        infos = [m.CheckInfo(name=c.name, metric=c.metric,
                             threshold=c.threshold, passed=c.passed,
                             note=c.note) for c in checks]
        return m.VerifyResponse(suite=req.suite, checks=infos,
                                all_passed=all(c.passed for c in infos))

    @app.get("/bern/{k}", response_model=m.BernResponse)
    def bern(k: int):
        try:
            b = bernoulli_number(k)
        except ValueError as exc:
            return _error_response(422, m.ErrorPayload(
                error="invalid_request", detail=str(exc)))
        return m.BernResponse(k=k, numerator=str(b.numerator),
                              denominator=str(b.denominator), value=float(b))

    @app.get("/qbern/{mm}", response_model=m.QBernResponse)
    def qbern(mm: int, q: float):
        try:
            v = q_bernoulli(mm, QParam(q))
        except ValueError as exc:
            return _error_response(422, m.ErrorPayload(
                error="invalid_request", detail=str(exc)))
        return m.QBernResponse(m=mm, q=q, value=v)

    @app.get("/poles", response_model=m.PoleSetResponse)
    def poles(q: float, re_min: float, re_max: float,
              im_min: float, im_max: float):
        try:
            ps = pole_set(QParam(q), (re_min, re_max, im_min, im_max))
        except ValueError as exc:
            return _error_response(422, m.ErrorPayload(
                error="invalid_request", detail=str(exc)))
        return m.PoleSetResponse(q=q, poles=[_pole_info(p) for p in ps])

    return app
