"""Cross-verification suites shared by the CLI and the acceptance tests.

Each suite returns a list of (name, ok, detail) tuples.  A detail string is
always filled in on failure with both sides of the comparison; it is never
silently patched.
"""

from __future__ import annotations

from fractions import Fraction

from . import limits, tables
from .averager import diag_block_moment, moment, walk_contribution
from .cache import cached_moment
from .polyalg import eval_moment, limit_d_infinity, substitute_c_form
from .walks import (catalan_number, count_noncrossing, enumerate_tree_walks,
                    has_abab, narayana_number)

__all__ = ["suite_tables", "suite_limits", "suite_d1", "suite_narayana",
           "run_suite", "SUITES"]

_SPOT_DS = (1, 2, 3, 5, 10)


def _table_check(model, order, published, computed):
    expected = substitute_c_form(published)
    if computed == expected:
        return (f"{model} order {order}", True, "exact match")
    lines = [f"computed {computed!r}", f"published {expected!r}"]
    for d in _SPOT_DS:
        lines.append(f"d={d}: computed {eval_moment(computed, 1, d)} "
                     f"vs published {eval_moment(expected, 1, d)}")
    return (f"{model} order {order}", False, "; ".join(lines))


def suite_tables(fast=False, cache_dir=None, bypass_cache=False):
    """Computed moments against the published c-form tables, exact."""
    results = []
    adj_orders = range(2, 15, 2) if fast else range(2, 19, 2)
    lap_orders = range(1, 9) if fast else range(1, 11)
    for n in adj_orders:
        m = cached_moment("adjacency", n, cache_dir, bypass_cache)
        results.append(_table_check("adjacency", n, tables.ADJACENCY[n], m))
    for n in lap_orders:
        m = cached_moment("laplacian", n, cache_dir, bypass_cache)
        results.append(_table_check("laplacian", n, tables.LAPLACIAN[n], m))
    for s in range(1, 6):
        m = cached_moment("diag-block", s, cache_dir, bypass_cache)
        results.append(_table_check("diag-block", s, tables.DIAG_BLOCK[s], m))
    return results


def suite_limits(adj_max=12, lap_max=8, cache_dir=None, bypass_cache=False):
    """d -> infinity limits against the series solutions and the densities
    against their moment series."""
    results = []
    em = limits.em_moment_series(adj_max)
    mp = limits.mp_moment_series(lap_max)
    for n in range(2, adj_max + 1, 2):
        lim = limit_d_infinity(cached_moment("adjacency", n,
                                             cache_dir, bypass_cache))
        ser = {i: c for i, c in enumerate(em.coeffs[n]) if c}
        ok = lim == ser
        results.append((f"em series order {n}", ok,
                        "match" if ok else f"{lim} vs {ser}"))
    for n in range(1, lap_max + 1):
        lim = limit_d_infinity(cached_moment("laplacian", n,
                                             cache_dir, bypass_cache))
        ser = {i: c for i, c in enumerate(mp.coeffs[n]) if c}
        ok = lim == ser
        results.append((f"mp series order {n}", ok,
                        "match" if ok else f"{lim} vs {ser}"))
    for model in ("adjacency", "laplacian"):
        ok = limits.narayana_consistency(8, model)
        results.append((f"narayana consistency {model}", ok,
                        "match" if ok else "series identity failed"))
    for t in (0.5, 1.0, 2.0):
        for name, dens, atom, support in (
                ("mp", limits.mp_density, limits.mp_atom, limits.mp_support),
                ("pastur-block", limits.pastur_block_density,
                 limits.pastur_block_atom, limits.pastur_block_support)):
            a, b = support(t)
            mass = limits.bulk_moment(dens, a, b, 0, (t,)) + atom(t)
            ok = abs(mass - 1.0) < 1e-9
            results.append((f"{name} normalization t={t}", ok,
                            f"total mass {mass}"))
    return results


def suite_d1(max_order=8, cache_dir=None, bypass_cache=False):
    """d = 1 collapse: every c_m = 1, every walk contributes t^E, and the
    diagonal block matches the Poisson moments."""
    results = []
    for model, orders in (("adjacency", range(2, max_order + 1, 2)),
                          ("laplacian", range(1, max_order + 1))):
        ok = True
        detail = "every walk gives t^E"
        for n in orders:
            for w in enumerate_tree_walks(model, n):
                contrib = walk_contribution(w)
                val = eval_moment(contrib, Fraction(1), 1)
                if val != w.sign * w.multiplicity:
                    ok = False
                    detail = f"{model} n={n} word {w.letters}: {val}"
                    break
            if not ok:
                break
        results.append((f"d=1 per-walk {model}", ok, detail))
    for s in range(1, max_order + 1):
        m = cached_moment("diag-block", s, cache_dir, bypass_cache)
        got = eval_moment(m, Fraction(2), 1)
        want = limits.poisson_moment(s, Fraction(2))
        ok = got == want
        results.append((f"diag-block d=1 Poisson s={s}", ok,
                        "match" if ok else f"{got} vs {want}"))
        lim = limit_d_infinity(m)
        nar = {j: Fraction(c) for j, c in enumerate(limits.narayana(s))
               if c}
        ok = lim == nar
        results.append((f"diag-block limit Narayana s={s}", ok,
                        "match" if ok else f"{lim} vs {nar}"))
    return results


def suite_narayana():
    """Brute-force noncrossing counts and Catalan row sums."""
    results = []
    for s in range(1, 9):
        counts = count_noncrossing(s)
        expected = {j: narayana_number(s, j) for j in range(1, s + 1)
                    if narayana_number(s, j)}
        ok = counts == expected
        results.append((f"noncrossing s={s}", ok,
                        "match" if ok else f"{counts} vs {expected}"))
    for s in range(1, 21):
        total = sum(narayana_number(s, j) for j in range(1, s + 1))
        ok = total == catalan_number(s)
        results.append((f"catalan row sum s={s}", ok,
                        "match" if ok else f"{total} vs {catalan_number(s)}"))
    return results


def suite_prop1(max_order=10):
    """Per-walk d -> infinity limit: t^E for noncrossing words, 0 for
    abab-containing words."""
    results = []
    for model, orders in (("adjacency", range(2, max_order + 1, 2)),
                          ("laplacian", range(1, min(max_order, 7) + 1))):
        ok = True
        detail = "noncrossing -> t^E, abab -> 0"
        for n in orders:
            for w in enumerate_tree_walks(model, n):
                lim = limit_d_infinity(walk_contribution(w))
                if has_abab(w):
                    if lim:
                        ok = False
                elif lim != {w.edge_count:
                             Fraction(w.sign * w.multiplicity)}:
                    ok = False
                if not ok:
                    detail = f"{model} n={n} word {w.letters}: {lim}"
                    break
            if not ok:
                break
        results.append((f"per-walk limit {model}", ok, detail))
    return results


SUITES = {
    "tables": suite_tables,
    "limits": suite_limits,
    "d1": suite_d1,
    "narayana": suite_narayana,
    "prop1": suite_prop1,
}


def run_suite(name, fast=False, cache_dir=None, bypass_cache=False):
    """Run one named suite, or every suite for name == 'all'."""
    cache_kw = {"cache_dir": cache_dir, "bypass_cache": bypass_cache}
    runners = {
        "tables": lambda: suite_tables(fast=fast, **cache_kw),
        "limits": lambda: suite_limits(**cache_kw),
        "d1": lambda: suite_d1(**cache_kw),
        "narayana": suite_narayana,
        "prop1": suite_prop1,
    }
    if name == "all":
        out = []
        for fn in runners.values():
            out.extend(fn())
        return out
    if name not in runners:
        raise KeyError(f"unknown suite {name!r}")
    return runners[name]()
