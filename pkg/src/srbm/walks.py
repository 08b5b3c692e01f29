"""Enumeration of closed tree walks contributing to the N -> infinity moments.

Walks are generated depth-first with on-the-fly canonical labeling: vertices
are named in first-visit order and edges in first-use order, so each
isomorphism class of labeled walks is produced exactly once.  A step between
two already-visited vertices not joined by an existing walk edge would close a
cycle in a connected graph and is pruned; every emitted word therefore
satisfies V = E + 1.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from typing import Iterator

from .polyalg import DomainError

__all__ = [
    "Step",
    "EdgeWord",
    "CycleError",
    "enumerate_tree_walks",
    "canonical_word",
    "has_abab",
    "count_noncrossing",
    "narayana_number",
    "catalan_number",
    "set_partitions",
    "edgewords_to_json",
    "edgewords_from_json",
]

ADJACENCY = "adjacency"
LAPLACIAN = "laplacian"


class CycleError(ValueError):
    """Raised when a raw walk's edge set contains a cycle."""


@dataclass(frozen=True)
class Step:
    """One move of a raw walk.

    An off-diagonal step moves the current vertex to ``target``.  A diagonal
    step keeps the current vertex and names the auxiliary vertex of the
    diagonal block term in ``target``.
    """
    kind: str  # "off" | "diag"
    target: int


@dataclass(frozen=True)
class EdgeWord:
    """Canonical record of one closed tree walk.

    ``letters`` is the cyclic sequence of (edge-id, diagonal-flag) pairs with
    edge ids assigned in first-use order.
    """
    letters: tuple
    sign: int
    vertex_count: int
    edge_count: int
    multiplicity: int = 1

    def __post_init__(self):
        if self.vertex_count != self.edge_count + 1:
            raise CycleError("edge set is not a tree (V != E + 1)")

    def edge_sequence(self):
        """Projector ids in walk order (diagonal flags dropped)."""
        return tuple(e for e, _ in self.letters)


def enumerate_tree_walks(model, n) -> Iterator[EdgeWord]:
    """Yield every closed n-step walk on trees rooted at vertex 0, in
    canonical labeled form.  Each distinct labeled word appears exactly once
    (multiplicity 1), since canonical labeling is applied during generation."""
    if model not in (ADJACENCY, LAPLACIAN):
        raise DomainError(f"unknown model {model!r}")
    if n < 0:
        raise DomainError(f"walk length must be non-negative, got {n}")
    if n == 0:
        yield EdgeWord((), 1, 1, 0)
        return
    if model == ADJACENCY:
        yield from _enumerate_adjacency(n)
    else:
        yield from _enumerate_laplacian(n)


def _enumerate_adjacency(n):
    if n % 2:
        return
    word = []
    incident = [[]]            # vertex -> list of (neighbor, edge_id)
    depth = [0]                # tree distance to the root

    def rec(cur, left):
        if left == 0:
            if cur == 0:
                yield EdgeWord(tuple((e, False) for e in word), 1,
                               len(incident), len(incident) - 1)
            return
        dep = depth[cur]
        if dep > left or (left - dep) % 2:
            return
        for nbr, eid in incident[cur]:
            word.append(eid)
            yield from rec(nbr, left - 1)
            word.pop()
        if dep + 2 <= left:
            eid = len(incident) - 1
            v = len(incident)
            incident.append([(cur, eid)])
            incident[cur].append((v, eid))
            depth.append(dep + 1)
            word.append(eid)
            yield from rec(v, left - 1)
            word.pop()
            depth.pop()
            incident[cur].pop()
            incident.pop()

    yield from rec(0, n)


def _enumerate_laplacian(n):
    word = []                  # list of (edge_id, diag_flag)
    incident = [[]]
    depth = [0]
    off_count = [0]

    def rec(cur, left):
        if left == 0:
            if cur == 0:
                sign = -1 if off_count[0] % 2 else 1
                yield EdgeWord(tuple(word), sign,
                               len(incident), len(incident) - 1)
            return
        dep = depth[cur]
        if dep > left:
            return
        # off-diagonal traversal of an existing edge
        for nbr, eid in incident[cur]:
            word.append((eid, False))
            off_count[0] += 1
            yield from rec(nbr, left - 1)
            off_count[0] -= 1
            word.pop()
        # diagonal step with an existing incident edge
        for _, eid in incident[cur]:
            word.append((eid, True))
            yield from rec(cur, left - 1)
            word.pop()
        # steps creating a fresh pendant edge
        eid = len(incident) - 1
        v = len(incident)
        incident.append([(cur, eid)])
        incident[cur].append((v, eid))
        depth.append(dep + 1)
        if dep + 2 <= left:  # off-diagonal move to a new vertex
            word.append((eid, False))
            off_count[0] += 1
            yield from rec(v, left - 1)
            off_count[0] -= 1
            word.pop()
        # diagonal step with a new pendant edge
        word.append((eid, True))
        yield from rec(cur, left - 1)
        word.pop()
        depth.pop()
        incident[cur].pop()
        incident.pop()

    yield from rec(0, n)


def canonical_word(steps, start=None) -> EdgeWord:
    """Relabel a raw walk (sequence of Step) into its canonical EdgeWord.

    Vertices are renamed in first-visit order and edges in first-use order,
    so any vertex-permuted copy of a walk yields the identical EdgeWord.
    ``start`` is the walk's root label; when omitted it is inferred from the
    last off-diagonal step (a closed walk ends where it began).  Raises
    CycleError if the edge set is not a tree, ValueError if the walk does not
    close."""
    steps = list(steps)
    if start is None:
        offs = [s for s in steps if s.kind != "diag"]
        if offs:
            start = offs[-1].target
        else:
            start = "__root__"  # purely diagonal walk: root label is arbitrary

    vmap = {start: 0}
    emap = {}
    letters = []
    off = 0
    cur_raw = start
    for step in steps:
        if step.target == cur_raw:
            raise ValueError("step target equals current vertex")
        fresh = step.target not in vmap
        if fresh:
            vmap[step.target] = len(vmap)
        cur, tgt = vmap[cur_raw], vmap[step.target]
        key = (min(cur, tgt), max(cur, tgt))
        if key not in emap:
            if not fresh:
                # both endpoints were already visited, hence already connected
                # through earlier walk edges: this edge closes a cycle
                raise CycleError("walk edge set contains a cycle")
            emap[key] = len(emap)
        eid = emap[key]
        if step.kind == "diag":
            letters.append((eid, True))
        else:
            letters.append((eid, False))
            off += 1
            cur_raw = step.target
    if letters and vmap[cur_raw] != 0:
        raise ValueError("walk does not return to the root")
    sign = -1 if off % 2 else 1
    return EdgeWord(tuple(letters), sign, len(vmap), len(emap))


def has_abab(word) -> bool:
    """True iff the projector sequence contains positions a,b,a,b with a != b.

    Accepts an EdgeWord or a bare sequence of edge ids; diagonal flags are
    ignored (a diagonal letter is one occurrence of its edge id)."""
    if isinstance(word, EdgeWord):
        seq = word.edge_sequence()
    else:
        seq = tuple(word)
    counts = {}
    for x in seq:
        counts[x] = counts.get(x, 0) + 1
    repeated = [x for x, c in counts.items() if c >= 2]
    if len(repeated) < 2:
        return False
    for a in repeated:
        for b in repeated:
            if a == b:
                continue
            # scan for subsequence a, b, a, b
            state = 0
            want = (a, b, a, b)
            for x in seq:
                if x == want[state]:
                    state += 1
                    if state == 4:
                        return True
    return False


def narayana_number(s, j):
    """N(s, j) = (1/s) C(s, j) C(s, j-1)."""
    if j < 1 or j > s:
        return 0
    return math.comb(s, j) * math.comb(s, j - 1) // s


def catalan_number(n):
    return math.comb(2 * n, n) // (n + 1)


def set_partitions(s):
    """Yield set partitions of {0..s-1} as restricted-growth strings."""
    rgs = [0] * s

    def rec(i, maxval):
        if i == s:
            yield tuple(rgs)
            return
        for v in range(maxval + 2):
            rgs[i] = v
            yield from rec(i + 1, max(maxval, v))

    yield from rec(1, 0) if s > 1 else iter([(0,)] if s == 1 else [()])


def count_noncrossing(s):
    """Brute-force count of noncrossing set partitions of an s-set grouped by
    part count; equals the Narayana numbers N(s, j)."""
    if s < 1:
        raise DomainError(f"count_noncrossing requires s >= 1, got {s}")
    counts = {}
    for rgs in set_partitions(s):
        if has_abab(rgs):
            continue
        parts = max(rgs) + 1
        counts[parts] = counts.get(parts, 0) + 1
    return counts


def edgewords_to_json(words):
    return json.dumps([
        {"letters": [[e, int(f)] for e, f in w.letters], "sign": w.sign,
         "vertices": w.vertex_count, "edges": w.edge_count,
         "multiplicity": w.multiplicity}
        for w in words
    ])


def edgewords_from_json(text):
    return [
        EdgeWord(tuple((e, bool(f)) for e, f in obj["letters"]), obj["sign"],
                 obj["vertices"], obj["edges"], obj["multiplicity"])
        for obj in json.loads(text)
    ]
