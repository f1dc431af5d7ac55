"""Canonical forms for small integer-weighted, vertex-colored digraphs.

Serialization of (weights, colors) under a vertex order p is the layer
sequence

    layer_m = (colors[p[m]],
               (weights[p[m]][p[j]] for j < m),
               (weights[p[j]][p[m]] for j < m))

and the canonical form is the lexicographic minimum of that sequence over
all n! orders.  Layer-by-layer growth means a depth-first search over
partial orders can prune as soon as a prefix exceeds the incumbent, and a
tie between two complete orders is exactly a color-preserving automorphism,
which in turn lets the search skip symmetric branches at the root.

Everything is exact integer work on plain tuples.  Callers keep n small
(tens of vertices); colors are arbitrary ints.
"""

from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class CanonResult:
    order: tuple[int, ...]  # order[m] = input vertex placed at canonical position m
    key: bytes
    automorphisms: tuple[tuple[int, ...], ...] | None = None


def serialize(weights, colors, order):
    """Layer sequence of the graph under the given vertex order."""
    return tuple(
        (
            colors[order[m]],
            tuple(weights[order[m]][order[j]] for j in range(m)),
            tuple(weights[order[j]][order[m]] for j in range(m)),
        )
        for m in range(len(order))
    )


def canonical_form(weights, colors, with_automorphisms: bool = False) -> CanonResult:
    """Lexicographically minimal serialization, reached order, and (optionally)
    the full color-preserving automorphism group.

    Automorphisms are returned as tuples a with a[v] = image of vertex v.
    Root-level orbit pruning is disabled when they are requested, so every
    tied leaf is visited and the group comes back complete.
    """
    n = len(colors)
    W = tuple(tuple(int(x) for x in row) for row in weights)
    if len(W) != n or any(len(row) != n for row in W):
        raise ValueError("weight matrix shape does not match color count")
    cols = tuple(colors)
    if n == 0:
        auts = ((),) if with_automorphisms else None
        return CanonResult((), repr(()).encode(), auts)

    best_layers: list | None = None
    best_order: list[int] | None = None
    ties: list[tuple[int, ...]] = []

    # union-find over vertices; ties merge true automorphism orbits
    parent = list(range(n))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    order: list[int] = []
    used = [False] * n
    stack: list[tuple] = []

    def layer(v: int, m: int) -> tuple:
        return (
            cols[v],
            tuple(W[v][order[j]] for j in range(m)),
            tuple(W[order[j]][v] for j in range(m)),
        )

    def descend(m: int) -> None:
        nonlocal best_layers, best_order
        if m == n:
            if best_layers is None or stack < best_layers:
                best_layers = list(stack)
                best_order = list(order)
                ties.clear()
                ties.append(tuple(order))
            elif stack == best_layers:
                ties.append(tuple(order))
                for k in range(n):
                    a, b = find(best_order[k]), find(order[k])
                    if a != b:
                        parent[a] = b
            return
        cands = sorted((layer(v, m), v) for v in range(n) if not used[v])
        branched_roots: list[int] = []
        for lay, v in cands:
            # prune against the incumbent; candidates are sorted, so the
            # first strictly-larger layer ends the whole level
            if best_layers is not None and stack == best_layers[:m] and lay > best_layers[m]:
                break
            if m == 0 and not with_automorphisms:
                r = find(v)
                if any(find(w) == r for w in branched_roots):
                    continue
                branched_roots.append(v)
            order.append(v)
            used[v] = True
            stack.append(lay)
            descend(m + 1)
            order.pop()
            used[v] = False
            stack.pop()

    descend(0)
    assert best_order is not None
    key = repr(tuple(best_layers)).encode()
    auts = None
    if with_automorphisms:
        seen = set()
        for p in ties:
            a = [0] * n
            for k in range(n):
                a[best_order[k]] = p[k]
            seen.add(tuple(a))
        auts = tuple(sorted(seen))
    return CanonResult(tuple(best_order), key, auts)
