"""Command-line front end: series emission, verification driver, golden
suite, and the relation search.  Exit codes: 0 success, 1 verification
failure, 2 usage error."""

from __future__ import annotations

import json
import sys

import click

from .golden import golden_report
from .mirror import integrality_report, mirror_data
from .relations import (relation_search, verify_duality, verify_eq_fourth,
                        verify_eq_schwarzian, verify_eq_second)
from .series import Q, LogSeries, series_from_record, series_to_record
from .wronskian import IndeterminateWronskian, wronskian
from .yukawa import (evaluate_F0_at, instanton_numbers, prepotential,
                     verify_pandharipande, verify_yukawa_identity,
                     yukawa_coupling)
from .mirror import verify_hodge_identity


def _render_text(data, indent=0):
    pad = "  " * indent
    lines = []
    if isinstance(data, dict):
        for k in data:
            v = data[k]
            if isinstance(v, (dict, list)):
                lines.append(f"{pad}{k}:")
                lines.extend(_render_text(v, indent + 1))
            else:
                lines.append(f"{pad}{k}: {v}")
    elif isinstance(data, list):
        for v in data:
            if isinstance(v, (dict, list)):
                lines.extend(_render_text(v, indent + 1))
                lines.append(pad + "-")
            else:
                lines.append(f"{pad}- {v}")
    else:
        lines.append(f"{pad}{data}")
    return lines


def _emit(data, fmt, out):
    if fmt == "json":
        text = json.dumps(data, indent=2, sort_keys=True)
    else:
        text = "\n".join(_render_text(data))
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    else:
        click.echo(text)


def _common(fn):
    fn = click.option("--format", "fmt", type=click.Choice(["json", "text"]),
                      default="text", show_default=True)(fn)
    fn = click.option("--out", type=click.Path(dir_okay=False),
                      default=None, help="Write the report to a file.")(fn)
    return fn


def _check_order(order, minimum=8):
    if order < minimum:
        raise click.UsageError(f"--order must be at least {minimum}")


@click.group()
def main():
    """Exact mirror-map and Yukawa-coupling computations."""


@main.command()
@click.option("--s", "s", type=int, default=5, show_default=True)
@click.option("--order", type=int, default=64, show_default=True)
@click.option("--emit", type=click.Choice(["z_of_q", "q_of_z", "f0_tilde"]),
              default="z_of_q", show_default=True)
@_common
def mirror(s, order, emit, fmt, out):
    """Emit one series of the mirror-map bundle for the given s."""
    if s < 3:
        raise click.UsageError("--s must be at least 3")
    _check_order(order)
    md = mirror_data(s, order)
    _emit({"s": s, "series": emit,
           **series_to_record(getattr(md, emit).truncate(order))}, fmt, out)


@main.command()
@click.option("--order", type=int, default=24, show_default=True)
@_common
def yukawa(order, fmt, out):
    """Emit the Yukawa coupling K(q)."""
    _check_order(order)
    _emit(series_to_record(yukawa_coupling(order)), fmt, out)


@main.command()
@click.option("--count", type=int, default=10, show_default=True)
@_common
def instantons(count, fmt, out):
    """Emit the instanton numbers n_1..n_count."""
    if count < 1:
        raise click.UsageError("--count must be positive")
    table = instanton_numbers(yukawa_coupling(count + 2), count)
    _emit({"n": [str(x) for x in table.n],
           "N": [str(x) for x in table.N]}, fmt, out)


@main.command("prepotential")
@click.option("--order", type=int, default=16, show_default=True)
@_common
def prepotential_cmd(order, fmt, out):
    """Emit the prepotential as a polynomial in t with q-series parts."""
    _check_order(order)
    F = prepotential(order)
    _emit({"t_powers": [series_to_record(F.term(k))
                        for k in range(F.t_degree + 1)]}, fmt, out)


@main.command("eval-f0")
@click.option("--t", "t_value", type=float, required=True)
@click.option("--order", type=int, default=12, show_default=True)
@_common
def eval_f0(t_value, order, fmt, out):
    """Evaluate the cubic Eisenstein-style potential at a real t < 0."""
    _check_order(order)
    try:
        value = evaluate_F0_at(t_value, order)
    except ValueError as exc:
        raise click.UsageError(str(exc))
    _emit({"t": format(t_value, ".17g"),
           "value": format(value, ".17g")}, fmt, out)


@main.command("wronskian")
@click.option("--input", "path", type=click.Path(exists=True, dir_okay=False),
              required=True, help="File with a list of series records.")
@_common
def wronskian_cmd(path, fmt, out):
    """Wronskian determinant of the series in the input file."""
    with open(path, encoding="utf-8") as fh:
        payload = json.load(fh)
    records = payload["series"] if isinstance(payload, dict) else payload
    if not records:
        raise click.UsageError("input contains no series")
    fs = [series_from_record(rec) for rec in records]
    try:
        w = wronskian(fs)
    except IndeterminateWronskian as exc:
        _emit({"status": "indeterminate", "detail": str(exc)}, fmt, out)
        sys.exit(1)
    if isinstance(w, LogSeries):
        try:
            data = series_to_record(w.power_part())
        except ValueError:
            data = {"parts": [series_to_record(p) for p in w.parts]}
    else:
        data = series_to_record(w)
    _emit(data, fmt, out)


@main.command("search-relation")
@click.option("--mode", type=click.Choice(["p1", "p2"]), default="p2",
              show_default=True)
@click.option("--weight-bound", type=int, default=12, show_default=True)
@click.option("--order", type=int, default=40, show_default=True)
@click.option("--trials", type=int, default=2, show_default=True)
@click.option("--seed", type=int, default=0, show_default=True)
@_common
def search_relation(mode, weight_bound, order, trials, seed, fmt, out):
    """Scan quasi-weight strata for an identically-vanishing relation."""
    _check_order(order, 16)
    result = relation_search(mode=mode, weight_bound=weight_bound,
                             order=order, trials=trials, seed=seed)
    _emit(result.summary(), fmt, out)
    if not (result.found and result.verified_fresh and result.verified_dual):
        sys.exit(1)


@main.command()
@click.option("--order", type=int, default=24, show_default=True)
@_common
def golden(order, fmt, out):
    """Compare computed series against the embedded golden tables."""
    _check_order(order, 24)
    report = golden_report(order)
    _emit({"items": report}, fmt, out)
    if any(item["status"] == "fail" for item in report):
        sys.exit(1)


@main.group()
def verify():
    """Verification drivers; exit 1 on any nonzero residual."""


def _finish_residuals(name, order, residuals, fmt, out, extra=None):
    ok = all(r.is_zero() for r in residuals)
    data = {"check": name, "order": order, "pass": ok}
    if extra:
        data.update(extra)
    _emit(data, fmt, out)
    if not ok:
        sys.exit(1)


@verify.command()
@click.option("--s", "s", type=click.Choice(["3", "4"]), required=True)
@click.option("--order", type=int, default=24, show_default=True)
@_common
def eq9(s, order, fmt, out):
    """Schwarzian equation for the modular cases."""
    _check_order(order)
    _finish_residuals("eq9", order, [verify_eq_schwarzian(int(s), order)],
                      fmt, out, {"s": int(s)})


@verify.command()
@click.option("--order", type=int, default=24, show_default=True)
@_common
def eq16(order, fmt, out):
    """Second-order coupled equation for z(q) and K(q)."""
    _check_order(order)
    _finish_residuals("eq16", order, [verify_eq_second(order)], fmt, out)


@verify.command()
@click.option("--order", type=int, default=24, show_default=True)
@_common
def eq25(order, fmt, out):
    """Fourth-order coupled equation for z(q) and K(q)."""
    _check_order(order)
    _finish_residuals("eq25", order, [verify_eq_fourth(order)], fmt, out)


@verify.command()
@click.option("--s", "s", type=click.Choice(["3", "4"]), required=True)
@click.option("--order", type=int, default=32, show_default=True)
@_common
def hodge(s, order, fmt, out):
    """Square-of-f0 identity for the modular cases."""
    _check_order(order)
    _finish_residuals("hodge", order, [verify_hodge_identity(int(s), order)],
                      fmt, out, {"s": int(s)})


@verify.command()
@click.option("--order", type=int, default=32, show_default=True)
@_common
def eq19(order, fmt, out):
    """Defining identity of the Yukawa coupling."""
    _check_order(order)
    _finish_residuals("eq19", order, [verify_yukawa_identity(order)],
                      fmt, out)


@verify.command()
@click.option("--order", type=int, default=20, show_default=True)
@_common
def pandharipande(order, fmt, out):
    """d^2/dt^2 (1/K) d^2/dt^2 t_j = 0 for j = 0..3."""
    _check_order(order)
    _finish_residuals("pandharipande", order, verify_pandharipande(order),
                      fmt, out)


@verify.command()
@click.option("--order", type=int, default=20, show_default=True)
@_common
def duality(order, fmt, out):
    """A2 = B2 and A4 = B4 on the actual mirror-map data."""
    _check_order(order)
    _finish_residuals("duality", order, list(verify_duality(order)),
                      fmt, out)


@verify.command()
@click.option("--order", type=int, default=100, show_default=True)
@_common
def integrality(order, fmt, out):
    """Integer coefficients of the mirror maps and K/5."""
    _check_order(order)
    slack = order + 2
    items = []
    for s in (3, 4, 5):
        md = mirror_data(s, slack)
        q_over_z = md.q_of_z.shift(-1)
        for name, f in (("z_of_q", md.z_of_q), ("q_of_z/z", q_over_z),
                        ("f0_tilde", md.f0_tilde)):
            rep = integrality_report(f, order)
            items.append({"item": f"s{s}.{name}", **rep})
    k5 = yukawa_coupling(slack) * Q(1, 5)
    items.append({"item": "K/5", **integrality_report(k5, order)})
    ok = all(item["pass"] for item in items)
    _emit({"check": "integrality", "order": order, "pass": ok,
           "items": items}, fmt, out)
    if not ok:
        sys.exit(1)


@verify.command("all")
@click.option("--order", type=int, default=24, show_default=True)
@_common
def verify_all(order, fmt, out):
    """Run every verification plus the golden suite."""
    _check_order(order)
    checks = []

    def run(name, residuals):
        checks.append({"check": name,
                       "pass": all(r.is_zero() for r in residuals)})

    run("hodge s=3", [verify_hodge_identity(3, order)])
    run("hodge s=4", [verify_hodge_identity(4, order)])
    run("eq9 s=3", [verify_eq_schwarzian(3, order)])
    run("eq9 s=4", [verify_eq_schwarzian(4, order)])
    run("eq19", [verify_yukawa_identity(order)])
    run("eq16", [verify_eq_second(order)])
    run("eq25", [verify_eq_fourth(order)])
    run("pandharipande", verify_pandharipande(min(order, 20)))
    run("duality", list(verify_duality(min(order, 20))))
    g_items = golden_report(order)
    checks.append({"check": "golden",
                   "pass": all(i["status"] != "fail" for i in g_items)})
    slack = order + 2
    intact = True
    for s in (3, 4, 5):
        md = mirror_data(s, slack)
        for f in (md.z_of_q, md.q_of_z.shift(-1), md.f0_tilde):
            intact = intact and integrality_report(f, order)["pass"]
    intact = intact and integrality_report(
        yukawa_coupling(slack) * Q(1, 5), order)["pass"]
    checks.append({"check": "integrality", "pass": intact})
    ok = all(c["pass"] for c in checks)
    _emit({"check": "all", "order": order, "pass": ok, "checks": checks},
          fmt, out)
    if not ok:
        sys.exit(1)


if __name__ == "__main__":
    main()
