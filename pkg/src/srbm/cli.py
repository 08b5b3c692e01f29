"""Command-line front end.

Subcommands: moments (exact walk-enumeration moments with on-disk cache),
limit-moments (series coefficients of the limiting laws), density (curve
export as CSV plus a rendered PNG), simulate (Monte Carlo comparison) and
verify (cross-check suites).

Exit codes: 0 success, 1 verification failure, 2 usage error, 3 internal
invariant breach.
"""

from __future__ import annotations

import json
import sys
from fractions import Fraction
from pathlib import Path

import click
import numpy as np

from . import cache, limits, montecarlo, verify
from .polyalg import (DomainError, InvariantError, eval_moment,
                      limit_d_infinity, to_c_form)
from .walks import enumerate_tree_walks

ORDER_CAPS = {"adjacency": 18, "laplacian": 10, "diag-block": 8}

MODELS = click.Choice(sorted(ORDER_CAPS))


def _fail_invariant(exc):
    click.echo(f"internal invariant breach: {exc}", err=True)
    sys.exit(3)


def _parse_rational(text, name):
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise click.UsageError(f"{name} must be a rational number, got {text!r}")


def _estimate_walks(model, order):
    """Crude enumeration-size estimate by geometric extrapolation from the
    last two cheap orders."""
    if model == "diag-block":
        probe = [4, 5]
    elif model == "adjacency":
        probe = [8, 10]
    else:
        probe = [5, 6]
    if model == "diag-block":
        from .walks import set_partitions
        counts = [sum(1 for _ in set_partitions(s)) for s in probe]
        step = 1
    else:
        counts = [sum(1 for _ in enumerate_tree_walks(model, n))
                  for n in probe]
        step = probe[1] - probe[0]
    ratio = counts[1] / counts[0]
    est = counts[1] * ratio ** ((order - probe[1]) / step)
    return int(est)


def _get_moment(model, order, max_order, cache_dir, use_cache):
    cap = max_order if max_order is not None else ORDER_CAPS[model]
    if order > cap:
        est = _estimate_walks(model, order)
        raise click.UsageError(
            f"order {order} exceeds the {model} cap {ORDER_CAPS[model]}; "
            f"estimated ~{est} walks to enumerate. "
            "Pass --max-order to override.")
    return cache.cached_moment(model, order, cache_dir, bypass=not use_cache)


@click.group()
def main():
    """Exact spectral moments of sparse random block matrices."""


@main.command()
@click.option("--model", type=MODELS, required=True)
@click.option("--order", type=int, required=True)
@click.option("--t", "t_val", default=None, help="rational t for evaluation")
@click.option("--d", "d_val", default=None, help="rational d >= 1 for evaluation")
@click.option("--format", "fmt", type=click.Choice(["text", "json"]),
              default="text")
@click.option("--c-form", is_flag=True,
              help="also print a best-effort c-display (non-canonical)")
@click.option("--max-order", type=int, default=None,
              help="override the default order cap")
@click.option("--cache-dir", type=click.Path(), default=None)
@click.option("--cache/--no-cache", "use_cache", default=True)
def moments(model, order, t_val, d_val, fmt, c_form, max_order, cache_dir,
            use_cache):
    """Exact spectral moment as a canonical polynomial in t over rational
    functions of d, optionally evaluated at rational t, d."""
    if order < 0:
        raise click.UsageError("order must be non-negative")
    try:
        poly = _get_moment(model, order, max_order, cache_dir, use_cache)
    except InvariantError as exc:
        _fail_invariant(exc)
    if (t_val is None) != (d_val is None):
        raise click.UsageError("--t and --d must be given together")
    if t_val is not None:
        t = _parse_rational(t_val, "--t")
        d = _parse_rational(d_val, "--d")
        try:
            val = eval_moment(poly, t, d)
        except DomainError as exc:
            raise click.UsageError(str(exc))
        if fmt == "json":
            click.echo(json.dumps({"model": model, "order": order,
                                   "t": str(t), "d": str(d),
                                   "value": str(val),
                                   "value_float": float(val)}))
        else:
            click.echo(f"{val}")
        return
    if fmt == "json":
        out = {"model": model, "order": order, "moment": poly.to_json()}
        if c_form:
            out["c_form"] = to_c_form(poly)
            out["c_form_canonical"] = False
        click.echo(json.dumps(out))
    else:
        click.echo(repr(poly))
        if c_form:
            disp = to_c_form(poly)
            click.echo(f"c-form (non-canonical display): {disp}")


@main.command("limit-moments")
@click.option("--model", type=click.Choice(["adjacency", "laplacian",
                                            "diag-block"]), required=True)
@click.option("--order", type=int, required=True)
@click.option("--t", "t_val", default=None)
def limit_moments(model, order, t_val):
    """Moment of the d -> infinity limiting law as a polynomial in t."""
    if order < 0:
        raise click.UsageError("order must be non-negative")
    if model == "adjacency":
        coeffs = limits.em_moment_series(order).coeffs[order]
    elif model == "laplacian":
        coeffs = limits.mp_moment_series(order).coeffs[order]
    else:
        coeffs = limits.narayana(order) if order >= 1 else (Fraction(1),)
    if t_val is not None:
        t = _parse_rational(t_val, "--t")
        click.echo(f"{limits.tpoly_eval(coeffs, t)}")
        return
    terms = [f"{c} t^{k}" for k, c in enumerate(coeffs) if c]
    click.echo(" + ".join(terms) if terms else "0")


def _parse_grid(spec):
    try:
        lo, hi, n = spec.split(":")
        lo, hi, n = float(lo), float(hi), int(n)
    except ValueError:
        raise click.UsageError("--grid must be lo:hi:n")
    if not (hi > lo and n >= 2):
        raise click.UsageError("--grid requires hi > lo and n >= 2")
    return lo, hi, n


@main.command()
@click.option("--law", type=click.Choice(["em", "mp", "pastur-block",
                                          "shifted-semicircle", "semicircle"]),
              required=True)
@click.option("--t", "t_val", type=float, required=True)
@click.option("--grid", "grid_spec", default="-8:12:4001", show_default=True,
              help="lo:hi:n")
@click.option("--eps", type=float, default=1e-6, show_default=True,
              help="Stieltjes smearing (em and mp only)")
@click.option("--out", type=click.Path(), required=True, help="CSV path")
@click.option("--plot/--no-plot", default=True,
              help="render a PNG next to the CSV")
def density(law, t_val, grid_spec, eps, out, plot):
    """Spectral density curve: CSV of (lambda, rho) plus a rendered figure."""
    lo, hi, n = _parse_grid(grid_spec)
    t = t_val
    if t <= 0:
        raise click.UsageError("--t must be positive")
    try:
        if law == "em":
            grid = limits.stieltjes_grid(lo, hi, n, refine_at=(0.0,), eps=eps)
            curve = limits.density_from_resolvent("em", t, grid, eps)
        elif law == "mp":
            a, b = limits.mp_support(t)
            grid = limits.stieltjes_grid(lo, hi, n, refine_at=(0.0, a, b),
                                         eps=eps)
            curve = limits.density_from_resolvent("mp", t, grid, eps)
        else:
            grid = np.linspace(lo, hi, n)
            if law == "pastur-block":
                vals = limits.pastur_block_density(grid, t)
                atom = limits.pastur_block_atom(t)
            elif law == "shifted-semicircle":
                vals = limits.shifted_semicircle_density(grid, t)
                atom = 0.0
            else:
                vals = limits.semicircle_density(grid, t)
                atom = 0.0
            curve = limits.DensityCurve(grid=grid, values=vals, model=law,
                                        t=t, method="closed-form",
                                        atom_at_zero=atom)
    except InvariantError as exc:
        _fail_invariant(exc)
    except DomainError as exc:
        raise click.UsageError(str(exc))
    curve.to_csv(out)
    click.echo(f"wrote {out} (integral {curve.integral():.6f}, "
               f"atom at 0: {curve.atom_at_zero:.6f})")
    if plot:
        png = str(Path(out).with_suffix(".png"))
        _render_curve(curve, png)
        click.echo(f"wrote {png}")


def _render_curve(curve, png, histogram=None):
    import matplotlib
    matplotlib.use("Agg")
    import matplotlib.pyplot as plt
    fig, ax = plt.subplots(figsize=(7, 4.5))
    if histogram is not None:
        centers, dens = histogram
        width = centers[1] - centers[0] if len(centers) > 1 else 1.0
        ax.bar(centers, dens, width=width, alpha=0.4, label="empirical")
    ax.plot(curve.grid, curve.values, lw=1.2,
            label=f"{curve.model} ({curve.method})")
    if curve.atom_at_zero:
        ax.axvline(0.0, color="k", ls=":", lw=1,
                   label=f"atom at 0, mass {curve.atom_at_zero:.3f}")
    ax.set_xlabel("lambda")
    ax.set_ylabel("rho")
    ax.set_title(f"{curve.model}, t = {curve.t}")
    ax.legend()
    fig.tight_layout()
    fig.savefig(png, dpi=130)
    plt.close(fig)


@main.command()
@click.option("--model", type=click.Choice(["adjacency", "laplacian"]),
              required=True)
@click.option("--n", "n_blocks", type=int, required=True)
@click.option("--d", type=int, required=True)
@click.option("--z", "z_conn", type=float, required=True)
@click.option("--samples", type=int, default=100, show_default=True)
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--orders", default="1,2", show_default=True,
              help="comma-separated moment orders")
@click.option("--histogram", "hist_bins", type=int, default=None,
              help="also emit an eigenvalue histogram with this many bins")
@click.option("--out", type=click.Path(), default=None,
              help="write the JSON report here (default: stdout)")
def simulate(model, n_blocks, d, z_conn, samples, seed, orders, hist_bins,
             out):
    """Monte Carlo moments against the exact values, with z-scores."""
    try:
        order_list = [int(x) for x in orders.split(",") if x.strip()]
    except ValueError:
        raise click.UsageError("--orders must be comma-separated integers")
    if model == "adjacency":
        order_list = [k for k in order_list if k % 2 == 0] or order_list
    try:
        params = montecarlo.EnsembleParams(N=n_blocks, d=d, Z=z_conn,
                                           samples=samples, seed=seed)
        report = montecarlo.run_comparison(params, model, order_list)
    except InvariantError as exc:
        _fail_invariant(exc)
    except DomainError as exc:
        raise click.UsageError(str(exc))
    text = report.to_json()
    if out:
        Path(out).write_text(text)
        click.echo(f"wrote {out}")
    else:
        click.echo(text)
    if hist_bins:
        centers, dens = montecarlo.empirical_density(params, model,
                                                     bins=hist_bins)
        base = Path(out).with_suffix("") if out else Path(f"{model}-hist")
        csv_path = str(base) + "-hist.csv"
        arr = np.column_stack([centers, dens])
        np.savetxt(csv_path, arr, delimiter=",",
                   header="bin_center,density", comments="# ")
        click.echo(f"wrote {csv_path}")
        t = params.t
        grid = np.linspace(centers[0], centers[-1], 2001)
        if model == "laplacian":
            curve = limits.DensityCurve(
                grid=grid, values=limits.mp_density(grid, t), model="mp",
                t=t, method="closed-form", atom_at_zero=limits.mp_atom(t))
        else:
            eps = 1e-6
            g = limits.stieltjes_grid(centers[0], centers[-1], 2001,
                                      refine_at=(0.0,), eps=eps)
            curve = limits.density_from_resolvent("em", t, g, eps)
        png = str(base) + "-hist.png"
        _render_curve(curve, png, histogram=(centers, dens))
        click.echo(f"wrote {png}")
    bad = [r for r in report.records
           if "z_score" in r and abs(r["z_score"]) > 4]
    sys.exit(1 if bad else 0)


@main.command("verify")
@click.option("--suite", type=click.Choice(["tables", "limits", "d1",
                                            "narayana", "prop1", "all"]),
              default="all", show_default=True)
@click.option("--fast", is_flag=True,
              help="skip the slowest table orders")
@click.option("--cache-dir", type=click.Path(), default=None)
@click.option("--cache/--no-cache", "use_cache", default=True)
def verify_cmd(suite, fast, cache_dir, use_cache):
    """Run cross-verification suites and print a pass/fail table."""
    try:
        results = verify.run_suite(suite, fast=fast, cache_dir=cache_dir,
                                   bypass_cache=not use_cache)
    except InvariantError as exc:
        _fail_invariant(exc)
    width = max(len(name) for name, _, _ in results)
    failures = 0
    for name, ok, detail in results:
        status = "PASS" if ok else "FAIL"
        line = f"{name:<{width}}  {status}"
        if not ok:
            line += f"  {detail}"
            failures += 1
        click.echo(line)
    click.echo(f"{len(results) - failures}/{len(results)} checks passed")
    sys.exit(1 if failures else 0)


if __name__ == "__main__":
    main()
