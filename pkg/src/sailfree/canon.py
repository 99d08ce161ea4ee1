"""Canonical labeling and isomorphism testing for triple systems.

The canonical form is the lexicographically minimal sorted edge list over
all vertex relabelings, found by branch and bound over label assignments.
Labels 0, 1, 2, ... are assigned to original vertices one at a time; a
partial assignment is scored by an optimistic completion:

* an edge with all three vertices labeled contributes its final image;
* an edge with labeled vertices p < q (or p, or none) contributes the
  smallest image any completion could give it, (p, q, depth),
  (p, depth, depth+1) or (depth, depth+1, depth+2), since every
  unassigned vertex receives a label >= depth.

Raising multiset elements never lowers the sorted list, so the scored
list is a true lower bound and pruning on it is exact.  Labels 0..2 are
only ever seeded with the vertices of an edge: when the system has any
edge at all, the minimal list starts with (0,1,2), and an assignment
whose first three labels are independent cannot reach it.

Triples are packed into ints (a<<12 | b<<6 | c, valid for n <= 64) so
list comparison and sorting stay cheap.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import permutations
from typing import Optional

from .core import LinearTripleSystem, Triple


def _pack(a: int, b: int, c: int) -> int:
    return (a << 12) | (b << 6) | c


def _unpack(x: int) -> Triple:
    return Triple(x >> 12, (x >> 6) & 63, x & 63)


def _min_labeling(n: int, edges: tuple[Triple, ...]) -> tuple[list[int], list[int]]:
    """Minimal packed edge list and one labeling (original -> new) achieving it."""
    m = len(edges)
    if m == 0:
        return [], list(range(n))
    label = [-1] * n
    best: Optional[list[int]] = None
    best_label: Optional[list[int]] = None
    everts = [tuple(e) for e in edges]

    def scored(depth: int) -> list[int]:
        out = []
        add = out.append
        for (a, b, c) in everts:
            la, lb, lc = label[a], label[b], label[c]
            if la > lb:
                la, lb = lb, la
            if lb > lc:
                lb, lc = lc, lb
                if la > lb:
                    la, lb = lb, la
            # now la <= lb <= lc; unassigned (-1) labels sorted to the front
            if la >= 0:
                add((la << 12) | (lb << 6) | lc)
            elif lb >= 0:
                add((lb << 12) | (lc << 6) | depth)
            elif lc >= 0:
                add((lc << 12) | (depth << 6) | depth + 1)
            else:
                add((depth << 12) | ((depth + 1) << 6) | depth + 2)
        out.sort()
        return out

    def dfs(depth: int) -> None:
        nonlocal best, best_label
        if depth == n:
            cur = scored(depth)
            if best is None or cur < best:
                best = cur
                best_label = label[:]
            return
        options = []
        for v in range(n):
            if label[v] == -1:
                label[v] = depth
                lb = scored(depth + 1)
                label[v] = -1
                if best is None or lb < best:
                    options.append((lb, v))
        options.sort()
        for lb, v in options:
            if best is not None and lb >= best:
                break
            label[v] = depth
            dfs(depth + 1)
            label[v] = -1

    for e in edges:
        for (u, v, w) in permutations(e):
            label[u], label[v], label[w] = 0, 1, 2
            if best is None or scored(3) < best:
                dfs(3)
            label[u] = label[v] = label[w] = -1
    return best, best_label


@dataclass(frozen=True)
class CanonicalForm:
    """Relabeling-invariant representative: equal forms iff isomorphic systems."""

    n: int
    edges: tuple[Triple, ...]
    labeling: tuple[int, ...] = field(compare=False, repr=False)

    def to_bytes(self) -> bytes:
        """Stable encoding: n as one byte, then each sorted triple as 3 bytes."""
        return bytes([self.n]) + b"".join(bytes(e) for e in self.edges)

    def system(self) -> LinearTripleSystem:
        return LinearTripleSystem(self.n, self.edges)


def canonical_form(system: LinearTripleSystem) -> CanonicalForm:
    packed, labeling = _min_labeling(system.n, system.edges)
    return CanonicalForm(system.n, tuple(_unpack(x) for x in packed), tuple(labeling))


def is_isomorphic(h1: LinearTripleSystem, h2: LinearTripleSystem) -> bool:
    if h1.n != h2.n or h1.m != h2.m:
        return False
    if sorted(h1.degrees()) != sorted(h2.degrees()):
        return False
    return canonical_form(h1) == canonical_form(h2)


def isomorphism(h1: LinearTripleSystem, h2: LinearTripleSystem) -> Optional[tuple[int, ...]]:
    """A vertex bijection carrying the edges of h1 onto the edges of h2, or None."""
    if h1.n != h2.n or h1.m != h2.m or sorted(h1.degrees()) != sorted(h2.degrees()):
        return None
    f1 = canonical_form(h1)
    f2 = canonical_form(h2)
    if f1 != f2:
        return None
    inv2 = [0] * h2.n
    for v, lab in enumerate(f2.labeling):
        inv2[lab] = v
    return tuple(inv2[f1.labeling[v]] for v in range(h1.n))
