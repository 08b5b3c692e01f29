"""Exact averaging of projector-product traces over random unit vectors.

Each closed tree walk maps to a cyclic product of rank-one projectors.  Its
ensemble average is computed by iterated vector extraction: a vector appearing
with total degree 2m across the scalar-product symbols is integrated out via
the multinomial extraction formula, introducing a factor c_m/d.  Two cheap
reductions are applied first, at the level of the cyclic projector word:
idempotency (adjacent equal projectors collapse) and the single-occurrence
rule (a projector appearing once averages to a bare 1/d).  Only the crossing
cores that survive these reductions need the general machinery; their values
are memoized under rotation/reflection/relabeling.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction

from .polyalg import (DomainError, InvariantError, MomentPoly, RatFunc,
                      c_over_d)
from .walks import EdgeWord, enumerate_tree_walks, set_partitions

__all__ = [
    "SPPoly",
    "trace_to_sp",
    "average_vector",
    "single_occurrence_reduce",
    "walk_contribution",
    "moment",
    "diag_block_moment",
    "reduce_cyclic",
    "canonical_core",
]

_ONE = RatFunc.const(1)


@dataclass(frozen=True)
class SPPoly:
    """Polynomial in scalar-product symbols s_{ij} = (a_i . a_j), i < j.

    ``terms`` maps a monomial (sorted tuple of ((i, j), exponent)) to a
    RatFunc coefficient.  ``live`` is the set of vector ids not yet averaged
    out; s_{ii} never appears (unit vectors).
    """
    terms: dict
    live: frozenset

    @classmethod
    def constant(cls, coeff, live=()):
        coeff = coeff if isinstance(coeff, RatFunc) else RatFunc.const(coeff)
        return cls({(): coeff}, frozenset(live))

    def constant_value(self):
        if self.live or set(self.terms) - {()}:
            raise InvariantError("SPPoly is not a constant")
        return self.terms.get((), RatFunc.const(0))


def _cyclic_collapse(seq):
    """Collapse adjacent equal projectors, including across the wrap-around."""
    out = []
    for x in seq:
        if out and out[-1] == x:
            continue
        out.append(x)
    while len(out) > 1 and out[0] == out[-1]:
        out.pop()
    return out


def reduce_cyclic(seq):
    """Reduce a cyclic projector-id word by idempotency and the
    single-occurrence rule.  Returns (k, core) with the accumulated power of
    1/d and the surviving core word (empty tuple when fully reduced, i.e. the
    word collapses to a single projector with <tr X> = 1)."""
    ids = _cyclic_collapse(seq)
    inv_d = 0
    while len(ids) > 1:
        counts = Counter(ids)
        single = next((x for x in ids if counts[x] == 1), None)
        if single is None:
            break
        inv_d += 1
        ids.remove(single)
        ids = _cyclic_collapse(ids)
    if len(ids) <= 1:
        return inv_d, ()
    return inv_d, tuple(ids)


def canonical_core(core):
    """Canonical representative of a cyclic word under rotation, reflection
    and relabeling (ids renamed in first-occurrence order)."""
    def relabel(seq):
        names = {}
        out = []
        for x in seq:
            if x not in names:
                names[x] = len(names)
            out.append(names[x])
        return tuple(out)

    n = len(core)
    best = None
    for base in (core, core[::-1]):
        for r in range(n):
            cand = relabel(base[r:] + base[:r])
            if best is None or cand < best:
                best = cand
    return best


def trace_to_sp(word) -> SPPoly:
    """Expand <tr of the cyclic projector product> into one s-monomial.

    Diagonal letters contribute their projector once (X^2 = X), and adjacent
    equal projectors collapse before symbols are emitted.  A single surviving
    projector means tr X, which averages to 1."""
    if isinstance(word, EdgeWord):
        seq = word.edge_sequence()
    else:
        seq = tuple(word)
    ids = _cyclic_collapse(seq)
    if len(ids) <= 1:
        return SPPoly.constant(_ONE)
    mono = Counter()
    for i, a in enumerate(ids):
        b = ids[(i + 1) % len(ids)]
        mono[(min(a, b), max(a, b))] += 1
    key = tuple(sorted(mono.items()))
    return SPPoly({key: _ONE}, frozenset(ids))


def _extract_assignments(kdeg):
    """Enumerate multinomial terms of (p.p)^m hitting the target t-monomial.

    ``kdeg`` maps partner vector -> exponent k_u (sum = 2m).  Yields pairs
    (cross, coeff) where ``cross`` maps symbol pairs (u, w) -> exponent and
    ``coeff`` is the integer multinomial weight m!/(prod e!) * 2^(sum cross).
    """
    partners = sorted(kdeg)
    m = sum(kdeg.values()) // 2
    pairs = [(partners[i], partners[j])
             for i in range(len(partners)) for j in range(i + 1, len(partners))]

    results = []

    def rec(idx, remaining, cross):
        if idx == len(pairs):
            diag = {}
            ok = True
            for u, r in remaining.items():
                if r < 0 or r % 2:
                    ok = False
                    break
                diag[u] = r // 2
            if not ok:
                return
            coeff = math.factorial(m)
            for e in diag.values():
                coeff //= math.factorial(e)
            tot_cross = 0
            for e in cross.values():
                coeff //= math.factorial(e)
                tot_cross += e
            results.append((dict(cross), coeff * 2 ** tot_cross))
            return
        u, w = pairs[idx]
        cap = min(remaining[u], remaining[w])
        for e in range(cap + 1):
            if e:
                cross[(u, w)] = e
                remaining[u] -= e
                remaining[w] -= e
            rec(idx + 1, remaining, cross)
            if e:
                remaining[u] += e
                remaining[w] += e
        cross.pop((u, w), None)

    rec(0, dict(kdeg), {})
    return results


def average_vector(p: SPPoly, v) -> SPPoly:
    """Average out the random unit vector ``v`` via the extraction formula.

    Every monomial's v-dependent part (a_1.v)^{k_1}...(a_r.v)^{k_r} with
    sum k = 2m is replaced by (k_1!...k_r!/(2m)!) (c_m/d) times the
    extraction of t_1^{k_1}...t_r^{k_r} from (p.p)^m, p = sum t_i a_i."""
    if v not in p.live:
        raise DomainError(f"vector {v} is not live")
    new_terms = {}

    def add(mono, coeff):
        prev = new_terms.get(mono)
        new_terms[mono] = coeff if prev is None else prev + coeff
    for mono, coeff in p.terms.items():
        kdeg = {}
        rest = []
        for (a, b), e in mono:
            if a == v:
                kdeg[b] = kdeg.get(b, 0) + e
            elif b == v:
                kdeg[a] = kdeg.get(a, 0) + e
            else:
                rest.append(((a, b), e))
        if not kdeg:
            add(tuple(rest), coeff)
            continue
        total = sum(kdeg.values())
        if total % 2:
            raise InvariantError("odd vector degree in a trace monomial")
        m = total // 2
        pref = Fraction(1)
        for k in kdeg.values():
            pref *= math.factorial(k)
        pref /= math.factorial(2 * m)
        base = coeff * RatFunc.const(pref) * c_over_d(m)
        for cross, weight in _extract_assignments(kdeg):
            merged = Counter(dict(rest))
            for uw, e in cross.items():
                merged[uw] += e
            add(tuple(sorted(merged.items())), base * weight)
    new_terms = {k: c for k, c in new_terms.items() if not c.is_zero()}
    if not new_terms:
        new_terms = {(): RatFunc.const(0)}
    return SPPoly(new_terms, p.live - {v})


def single_occurrence_reduce(p: SPPoly) -> SPPoly:
    """Shortcut averaging of vectors whose projector appears once in the
    trace: each contributes a bare 1/d, contracting its two neighbors.  Such a
    vector has total degree exactly 2 in every monomial where it appears; the
    general extraction formula with m = 1 realizes exactly that contraction,
    so it is reused here."""
    while True:
        candidate = None
        for v in sorted(p.live):
            degrees = set()
            for mono, _ in p.terms.items():
                deg = sum(e for (a, b), e in mono if v in (a, b))
                degrees.add(deg)
            if degrees <= {0, 2} and 2 in degrees:
                candidate = v
                break
        if candidate is None:
            return p
        p = average_vector(p, candidate)


_core_cache = {}


def _residual_value(core) -> RatFunc:
    """Full average of a canonical crossing core; memoized."""
    val = _core_cache.get(core)
    if val is not None:
        return val
    p = trace_to_sp(core)
    while p.live:
        # fewest distinct partner symbols first, ties broken by lowest id
        partner_count = {}
        for mono in p.terms:
            for (a, b), _ in mono:
                partner_count.setdefault(a, set()).add(b)
                partner_count.setdefault(b, set()).add(a)
        v = min(p.live,
                key=lambda u: (len(partner_count.get(u, ())), u))
        p = average_vector(p, v)
    val = p.constant_value()
    _core_cache[core] = val
    return val


def _classify(seq):
    """Reduce a projector word; returns (inv_d, canonical core or ())."""
    inv_d, core = reduce_cyclic(seq)
    if not core:
        return inv_d, ()
    return inv_d, canonical_core(core)


def _assemble(edge_count, inv_d, core) -> RatFunc:
    """sign-free walk value: d^(E-1) * <tr product> with Z^E = (t d)^E folded
    into the explicit d powers; the t^E factor is attached by the caller."""
    val = _residual_value(core) if core else _ONE
    r = val * RatFunc.d_power(edge_count - 1 - inv_d)
    if not r.d_valuation_is_zero():
        raise InvariantError(
            "residual explicit d-power after averaging is nonzero")
    return r


def walk_contribution(word: EdgeWord) -> MomentPoly:
    """Exact moment contribution of one EdgeWord:
    sign * multiplicity * Z^E * <tr prod X> / d with Z = t d."""
    if not word.letters:
        return MomentPoly.one()
    inv_d, core = _classify(word.edge_sequence())
    r = _assemble(word.edge_count, inv_d, core)
    return MomentPoly({word.edge_count: word.sign * word.multiplicity * r})


def moment(model, n) -> MomentPoly:
    """Spectral moment of order n as a canonical MomentPoly.

    Streams the walk enumeration, grouping words by (E, reduction class) so
    the exact rational arithmetic runs once per class."""
    if n < 0:
        raise DomainError(f"moment order must be non-negative, got {n}")
    if n == 0:
        return MomentPoly.one()
    groups = Counter()
    for w in enumerate_tree_walks(model, n):
        inv_d, core = _classify(w.edge_sequence())
        groups[(w.edge_count, inv_d, core, w.sign)] += w.multiplicity
    out = {}
    for (E, inv_d, core, sign), count in groups.items():
        r = _assemble(E, inv_d, core) * (sign * count)
        out[E] = out.get(E, RatFunc.const(0)) + r
    return MomentPoly(out)


def diag_block_moment(s) -> MomentPoly:
    """Moment m_s of a diagonal Laplacian block: (1/d) <tr (sum alpha X)^s>,
    summed over set partitions of the s positions (one distinct projector per
    part, weight Z^parts)."""
    if s < 1:
        raise DomainError(f"diag_block_moment requires s >= 1, got {s}")
    groups = Counter()
    for rgs in set_partitions(s):
        parts = max(rgs) + 1
        inv_d, core = _classify(rgs)
        groups[(parts, inv_d, core)] += 1
    out = {}
    for (parts, inv_d, core), count in groups.items():
        r = _assemble(parts, inv_d, core) * count
        out[parts] = out.get(parts, RatFunc.const(0)) + r
    return MomentPoly(out)
