"""Command-line frontend.

The CLI is a thin client of the HTTP service: by default it mounts the
FastAPI app in-process through an ASGI transport (no server needed), and
``--base-url`` points it at a running instance instead.  Results stream as
one JSON object per line or as fixed-column CSV.

Exit codes: 0 ok, 1 verification failure, 2 pole proximity,
3 non-convergence, 64 usage error.
"""

from __future__ import annotations

import csv
import json
import re
import sys

import click
import httpx

EXIT_VERIFY_FAIL = 1
EXIT_POLE = 2
EXIT_NONCONV = 3
EXIT_USAGE = 64

_NUM = r"[0-9]+(?:\.[0-9]*)?(?:[eE][+-]?[0-9]+)?"
_COMPLEX_RE = re.compile(
    rf"^(?P<re>[+-]?{_NUM})?(?P<im>[+-]{_NUM})?(?P<i>i)?$")


def parse_complex(text: str) -> complex:
    """Strict parser for 'a', 'a+bi', 'a-bi' with decimal components."""
    raw = text.strip()
    mt = _COMPLEX_RE.match(raw)
    if not mt or not raw:
        raise click.UsageError(f"cannot parse complex literal {text!r}")
    re_part, im_part, tail = mt.group("re"), mt.group("im"), mt.group("i")
    if tail == "i":
        if im_part is not None:
            return complex(float(re_part) if re_part else 0.0, float(im_part))
        if re_part is None:
            raise click.UsageError(
                f"imaginary part needs explicit digits in {text!r}")
        return complex(0.0, float(re_part))
    if im_part is not None or re_part is None:
        raise click.UsageError(f"cannot parse complex literal {text!r}")
    return complex(float(re_part), 0.0)


def _request(base_url: str | None, method: str, path: str,
             json_body: dict | None = None,
             params: dict | None = None) -> httpx.Response:
    if base_url:
        with httpx.Client(base_url=base_url, timeout=None) as client:
            return client.request(method, path, json=json_body, params=params)

    import asyncio

    from .service import create_app

    async def go():
        transport = httpx.ASGITransport(app=create_app())
        async with httpx.AsyncClient(transport=transport, timeout=None,
                                     base_url="http://qzeta.local") as client:
            return await client.request(method, path, json=json_body,
                                        params=params)

    return asyncio.run(go())


def _post(ctx, path: str, payload: dict) -> dict:
    return _handle(_request(ctx.obj.get("base_url"), "POST", path,
                            json_body=payload))


def _get(ctx, path: str, params: dict | None = None) -> dict:
    return _handle(_request(ctx.obj.get("base_url"), "GET", path,
                            params=params))


def _handle(resp: httpx.Response) -> dict:
    body = resp.json()
    if resp.status_code == 200:
        return body
    sys.stderr.write(json.dumps(body, sort_keys=True) + "\n")
    code = {"pole_proximity": EXIT_POLE,
            "non_convergence": EXIT_NONCONV}.get(body.get("error"), EXIT_USAGE)
    sys.exit(code)


def _emit_records(records: list[dict], as_json: bool, as_csv: bool):
    if as_csv:
        from .service.models import CSV_COLUMNS

        writer = csv.writer(sys.stdout)
        writer.writerow(CSV_COLUMNS)
        for rec in records:
            writer.writerow([rec.get("s_re"), rec.get("s_im"), rec.get("q"),
                             rec.get("method"), rec.get("terms"),
                             rec.get("value_re"), rec.get("value_im"),
                             rec.get("err"), rec.get("wall_time_ms")])
    elif as_json:
        for rec in records:
            sys.stdout.write(json.dumps(rec) + "\n")
    else:
        for rec in records:
            if rec.get("error"):
                click.echo(f"s=({rec['s_re']}, {rec['s_im']}) q={rec['q']}  "
                           f"ERROR {rec['error']}")
            else:
                click.echo(
                    f"s=({rec['s_re']}, {rec['s_im']}) q={rec['q']} "
                    f"[{rec['method']}]  value = {rec['value_re']:+.15g} "
                    f"{rec['value_im']:+.15g}i  err<={rec['err']:.2e}  "
                    f"terms={rec['terms_used']}  {rec['wall_time_ms']:.1f} ms")


@click.group()
@click.option("--base-url", default=None, metavar="URL",
              help="Talk to a running service instead of in-process.")
@click.pass_context
def cli(ctx, base_url):
    """q-zeta numerical laboratory."""
    ctx.ensure_object(dict)
    ctx.obj["base_url"] = base_url


@cli.command("eval")
@click.option("--s", "s_text", required=True, metavar="A+BI",
              help="Evaluation point, e.g. '0.5' or '0.5+14.1347i'.")
@click.option("--q", type=float, required=True)
@click.option("--method", type=click.Choice(["direct", "continued", "closed",
                                             "em-qform"]), default="continued")
@click.option("--t-offset", type=int, default=None)
@click.option("--terms", type=int, default=None,
              help="Exact-term mode: sum exactly this many terms.")
@click.option("--tol", type=float, default=1e-12)
@click.option("--max-terms", type=int, default=2_000_000)
@click.option("--accumulator", type=click.Choice(["standard", "double-double"]),
              default="standard")
@click.option("--json", "as_json", is_flag=True)
@click.option("--csv", "as_csv", is_flag=True)
@click.pass_context
def eval_cmd(ctx, s_text, q, method, t_offset, terms, tol, max_terms,
             accumulator, as_json, as_csv):
    """Evaluate zeta_q (or a related form) at a single point."""
    s = parse_complex(s_text)
    rec = _post(ctx, "/eval", dict(
        s_re=s.real, s_im=s.imag, q=q, method=method, t_offset=t_offset,
        terms=terms, tol=tol, max_terms=max_terms, accumulator=accumulator))
    _emit_records([rec], as_json, as_csv)


@cli.command("sweep")
@click.option("--s", "s_text", required=True, metavar="A+BI")
@click.option("--q-grid", required=True, metavar="Q1,Q2,...",
              help="Comma-separated q values in (0,1).")
@click.option("--method", type=click.Choice(["direct", "continued",
                                             "em-qform"]), default="continued")
@click.option("--tol", type=float, default=1e-12)
@click.option("--pole-guard", type=float, default=1e-8)
@click.option("--accumulator", type=click.Choice(["standard", "double-double"]),
              default="standard")
@click.option("--extrapolate/--no-extrapolate", default=False)
@click.option("--order", type=int, default=4)
@click.option("--json", "as_json", is_flag=True)
@click.option("--csv", "as_csv", is_flag=True)
@click.pass_context
def sweep_cmd(ctx, s_text, q_grid, method, tol, pole_guard, accumulator,
              extrapolate, order, as_json, as_csv):
    """Evaluate over a q grid, optionally extrapolating to q -> 1."""
    s = parse_complex(s_text)
    try:
        grid = [float(x) for x in q_grid.split(",") if x.strip()]
    except ValueError:
        raise click.UsageError(f"bad q grid {q_grid!r}")
    if not grid:
        raise click.UsageError("empty q grid")
    body = _post(ctx, "/sweep", dict(
        s_re=s.real, s_im=s.imag, q_grid=grid, method=method, tol=tol,
        pole_guard=pole_guard, accumulator=accumulator,
        extrapolate=extrapolate, order=order))
    _emit_records(body["records"], as_json, as_csv)
    ext = body.get("extrapolation")
    if ext:
        if as_json:
            sys.stdout.write(json.dumps({"extrapolation": ext}) + "\n")
        elif not as_csv:
            line = (f"extrapolated: {ext['limit_re']:+.12g} "
                    f"{ext['limit_im']:+.12g}i  residual={ext['residual']:.2e}")
            if ext.get("abs_error") is not None:
                line += (f"  reference={ext['reference_re']:+.12g} "
                         f"{ext['reference_im']:+.12g}i  "
                         f"|diff|={ext['abs_error']:.2e}")
            click.echo(line)


@cli.command("reproduce")
@click.option("--id", "example_id", default="all",
              help="Example id (zhalf-1e5, zhalf-1e7, zero1-1e5, zero1-1e6, "
                   "zero2-2e6, zero2-5e6) or 'all'.")
@click.option("--accumulator", type=click.Choice(["standard", "double-double",
                                                  "both"]), default="both")
@click.option("--json", "as_json", is_flag=True)
@click.option("--csv", "as_csv", is_flag=True)
@click.pass_context
def reproduce_cmd(ctx, example_id, accumulator, as_json, as_csv):
    """Re-run the published partial-sum experiments and compare digits."""
    body = _post(ctx, "/reproduce", dict(ids=[example_id],
                                         accumulator=accumulator))
    records = body["records"]
    if as_csv:
        writer = csv.writer(sys.stdout)
        writer.writerow(["example_id", "accumulator", "value_re", "value_im",
                         "printed_re", "printed_im", "abs_err_re",
                         "abs_err_im", "within_tol", "time_ms"])
        for r in records:
            writer.writerow([r["example_id"], r["accumulator"], r["value_re"],
                             r["value_im"], r["printed_re"], r["printed_im"],
                             r["abs_err_re"], r["abs_err_im"],
                             r["within_tol"], r["wall_time_ms"]])
    elif as_json:
        for r in records:
            sys.stdout.write(json.dumps(r) + "\n")
    else:
        for r in records:
            mark = "ok " if r["within_tol"] else "MISS"
            click.echo(
                f"{mark} {r['example_id']:<10} [{r['accumulator']:<13}] "
                f"computed {r['value_re']:+.12g} {r['value_im']:+.12g}i  "
                f"printed {r['printed_re']:+.12g} {r['printed_im']:+.12g}i  "
                f"({r['wall_time_ms']:.0f} ms)")
    if not body["all_within_tol"]:
        sys.exit(EXIT_VERIFY_FAIL)


@cli.command("bern")
@click.option("--k", type=int, required=True)
@click.option("--json", "as_json", is_flag=True)
@click.pass_context
def bern_cmd(ctx, k, as_json):
    """Exact Bernoulli number B_k (B_1 = +1/2 convention)."""
    body = _get(ctx, f"/bern/{k}")
    if as_json:
        sys.stdout.write(json.dumps(body) + "\n")
    else:
        click.echo(f"B_{k} = {body['numerator']}/{body['denominator']}"
                   f" = {body['value']:.15g}")


@cli.command("qbern")
@click.option("--m", "m_idx", type=int, required=True)
@click.option("--q", type=float, required=True)
@click.option("--json", "as_json", is_flag=True)
@click.pass_context
def qbern_cmd(ctx, m_idx, q, as_json):
    """q-Bernoulli number B_m(q) = -m zeta_q(1-m)."""
    body = _get(ctx, f"/qbern/{m_idx}", {"q": q})
    if as_json:
        sys.stdout.write(json.dumps(body) + "\n")
    else:
        click.echo(f"B_{m_idx}(q={q}) = {body['value']:.15g}")


@cli.command("verify")
@click.option("--suite", type=click.Choice(["identities", "limits", "em",
                                            "all"]), default="all")
@click.option("--tol-override", "overrides", multiple=True,
              metavar="PREFIX=TOL",
              help="Override thresholds for checks whose name starts with PREFIX.")
@click.option("--json", "as_json", is_flag=True)
@click.pass_context
def verify_cmd(ctx, suite, overrides, as_json):
    """Run a verification suite; exit 1 if any check fails."""
    parsed = {}
    for item in overrides:
        if "=" not in item:
            raise click.UsageError(f"bad --tol-override {item!r}")
        key, val = item.rsplit("=", 1)
        try:
            parsed[key] = float(val)
        except ValueError:
            raise click.UsageError(f"bad tolerance in {item!r}")
    body = _post(ctx, "/verify", dict(suite=suite, tol_overrides=parsed))
    if as_json:
        for c in body["checks"]:
            sys.stdout.write(json.dumps(c) + "\n")
    else:
        for c in body["checks"]:
            mark = "PASS" if c["passed"] else "FAIL"
            note = f"  ({c['note']})" if c["note"] else ""
            click.echo(f"{mark} {c['name']:<44} {c['metric']:.3e} "
                       f"< {c['threshold']:.1e}{note}")
        n_ok = sum(c["passed"] for c in body["checks"])
        click.echo(f"{n_ok}/{len(body['checks'])} checks passed")
    if not body["all_passed"]:
        sys.exit(EXIT_VERIFY_FAIL)


@cli.command("serve")
@click.option("--host", default="127.0.0.1")
@click.option("--port", type=int, default=8000)
def serve_cmd(host, port):
    """Run the HTTP service."""
    import uvicorn

    from .service import create_app

    uvicorn.run(create_app(), host=host, port=port)


def main():
    try:
        cli(standalone_mode=False)
    except click.UsageError as exc:
        exc.show()
        sys.exit(EXIT_USAGE)
    except click.ClickException as exc:
        exc.show()
        sys.exit(exc.exit_code)
    except click.exceptions.Abort:
        sys.exit(EXIT_USAGE)
    except click.exceptions.Exit as exc:
        sys.exit(exc.exit_code)


if __name__ == "__main__":
    main()
