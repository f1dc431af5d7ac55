"""Foldings: ordered partitions of quiver nodes into groups, mutated a
whole group at a time.

A folding stays usable only while no reachable quiver carries an arrow
between two nodes of one group; validate_folding hunts for the shortest
word breaking that, enumerate_folded_class counts quivers up to
group-aware isomorphism, and classify_folding decides whether the folded
exchange matrix exists, is skew-symmetrizable, and commutes with group
mutation over the whole class.

Group-aware isomorphism allows relabeling nodes and permuting groups
(frozen status preserved on both levels).  It is decided on an augmented
graph: one extra vertex per group, joined to its members, colored apart
from the real nodes so the two layers can never mix.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm

from . import canon, qcore
from .errors import (
    FoldingBroken,
    FrozenGroup,
    IntraGroupArrow,
    NotAnAutomorphism,
    NotAPartition,
)
from .qcore import Quiver


@dataclass(frozen=True, repr=False)
class FoldedQuiver:
    quiver: Quiver
    groups: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        groups = tuple(tuple(sorted(int(v) for v in g)) for g in self.groups)
        object.__setattr__(self, "groups", groups)
        seen = set()
        for g in groups:
            if not g:
                raise NotAPartition("empty group")
            for v in g:
                if v < 0 or v >= self.quiver.n or v in seen:
                    raise NotAPartition(f"node {v} missing, repeated, or out of range")
                seen.add(v)
        if len(seen) != self.quiver.n:
            raise NotAPartition("groups do not cover all nodes")
        for gi, g in enumerate(groups):
            flags = {v in self.quiver.frozen for v in g}
            if len(flags) > 1:
                raise ValueError(f"group {gi} mixes frozen and unfrozen nodes")

    @property
    def k(self) -> int:
        return len(self.groups)

    @property
    def frozen_groups(self) -> frozenset[int]:
        return frozenset(
            gi for gi, g in enumerate(self.groups) if g[0] in self.quiver.frozen
        )

    def group_of(self, node: int) -> int:
        for gi, g in enumerate(self.groups):
            if node in g:
                return gi
        raise IndexError(node)

    def __repr__(self):
        return f"FoldedQuiver({self.quiver!r}, groups={[list(g) for g in self.groups]})"


def intra_group_arrows(fq: FoldedQuiver):
    """All (group, i, j) with an arrow i -> j inside one group."""
    out = []
    b = fq.quiver.b
    for gi, g in enumerate(fq.groups):
        for i in g:
            for j in g:
                if b[i][j] > 0:
                    out.append((gi, i, j))
    return out


def make_folding(q: Quiver, groups) -> FoldedQuiver:
    """Partition check plus no intra-group arrows at the base quiver."""
    fq = FoldedQuiver(q, tuple(tuple(g) for g in groups))
    bad = intra_group_arrows(fq)
    if bad:
        gi, i, j = bad[0]
        raise IntraGroupArrow(f"arrow {i}->{j} inside group {gi}")
    return fq


def fold_by_automorphism(q: Quiver, sigma) -> FoldedQuiver:
    """Groups = orbits of the cyclic group generated by sigma, ordered by
    smallest member."""
    sigma = tuple(int(v) for v in sigma)
    if sorted(sigma) != list(range(q.n)):
        raise NotAnAutomorphism("not a permutation of the nodes")
    for i in range(q.n):
        for j in range(q.n):
            if q.b[sigma[i]][sigma[j]] != q.b[i][j]:
                raise NotAnAutomorphism(
                    f"arrow weight at ({i},{j}) not preserved"
                )
    if {sigma[v] for v in q.frozen} != set(q.frozen):
        raise NotAnAutomorphism("frozen set not preserved")
    seen = set()
    groups = []
    for v in range(q.n):
        if v in seen:
            continue
        orbit = [v]
        seen.add(v)
        w = sigma[v]
        while w != v:
            orbit.append(w)
            seen.add(w)
            w = sigma[w]
        groups.append(tuple(sorted(orbit)))
    return make_folding(q, groups)


def group_mutate(fq: FoldedQuiver, g: int) -> FoldedQuiver:
    """Mutate every node of group g in turn.  With no arrows inside g the
    result does not depend on the order, because mutating one member never
    touches arrows at a non-adjacent member."""
    if not 0 <= g < fq.k:
        raise IndexError(f"group {g} out of range")
    if g in fq.frozen_groups:
        raise FrozenGroup(f"group {g} is frozen")
    members = fq.groups[g]
    b = fq.quiver.b
    for i in members:
        for j in members:
            if b[i][j] > 0:
                raise IntraGroupArrow(f"arrow {i}->{j} inside mutated group {g}")
    q = fq.quiver
    for i in members:
        q = qcore.mutate(q, i)
    return FoldedQuiver(q, fq.groups)


# -- group-aware canonical form ----------------------------------------------

_REAL, _AUX_FROZEN, _AUX_FREE, _AUX_FIXED0 = 0, 1, 2, 3


def canonical_key(fq: FoldedQuiver, fixed_groups: bool = False) -> bytes:
    """Key invariant under node relabelings that permute groups (sizes and
    frozen status preserved).  With fixed_groups=True each group keeps its
    identity, so only within-group relabelings remain."""
    n = fq.quiver.n
    k = fq.k
    size = n + k
    W = [[0] * size for _ in range(size)]
    b = fq.quiver.b
    for i in range(n):
        Wi = W[i]
        for j in range(n):
            Wi[j] = b[i][j]
    frozen_groups = fq.frozen_groups
    colors = [_REAL] * n + [0] * k
    for gi, g in enumerate(fq.groups):
        for v in g:
            W[v][n + gi] = 1
        if fixed_groups:
            colors[n + gi] = _AUX_FIXED0 + gi
        else:
            colors[n + gi] = _AUX_FROZEN if gi in frozen_groups else _AUX_FREE
    return canon.canonical_form(W, colors).key


# -- validity ----------------------------------------------------------------


@dataclass(frozen=True)
class FoldingVerdict:
    status: str  # "valid" | "valid_up_to" | "invalid"
    witness: tuple[int, ...] | None = None
    class_size: int | None = None
    depth: int | None = None

    def __bool__(self):
        return self.status == "valid"


def validate_folding(fq: FoldedQuiver, depth_cap: int = 64, size_cap: int = 100_000) -> FoldingVerdict:
    """Breadth-first search for an intra-group arrow anywhere in the folded
    class.  Witnesses are shortest words, ties broken by group index."""
    if intra_group_arrows(fq):
        return FoldingVerdict("invalid", witness=())
    movable = [g for g in range(fq.k) if g not in fq.frozen_groups]
    seen = {canonical_key(fq)}
    frontier = [(fq, ())]
    depth = 0
    while frontier:
        if depth >= depth_cap:
            return FoldingVerdict("valid_up_to", depth=depth)
        nxt = []
        for cur, word in frontier:
            for g in movable:
                child = group_mutate(cur, g)
                if intra_group_arrows(child):
                    return FoldingVerdict("invalid", witness=word + (g,))
                key = canonical_key(child)
                if key in seen:
                    continue
                if len(seen) >= size_cap:
                    return FoldingVerdict("valid_up_to", depth=depth)
                seen.add(key)
                nxt.append((child, word + (g,)))
        frontier = nxt
        depth += 1
    return FoldingVerdict("valid", class_size=len(seen))


@dataclass(frozen=True)
class FoldedClassEnumeration:
    keys: frozenset[bytes]
    exhausted: bool
    representatives: tuple[FoldedQuiver, ...]
    quiver_keys: frozenset[bytes]

    @property
    def size(self) -> int:
        return len(self.keys)

    @property
    def quiver_class_size(self) -> int:
        """Distinct underlying quivers up to plain isomorphism.

        Grouping-aware classes can collide once the groups are forgotten, so
        this is at most `size`; it is the count reported for a folded class.
        """
        return len(self.quiver_keys)


def enumerate_folded_class(fq: FoldedQuiver, cap: int = 1_000_000, jobs=None) -> FoldedClassEnumeration:
    """BFS closure under group mutation, deduplicated by group-aware key.

    Raises FoldingBroken with the witness word if the folding ever breaks;
    a cap stop is reported through exhausted=False.
    """
    if cap < 1:
        raise ValueError("cap must be at least 1")
    bad = intra_group_arrows(fq)
    if bad:
        raise FoldingBroken((), "intra-group arrow at the base quiver")
    movable = [g for g in range(fq.k) if g not in fq.frozen_groups]
    seen: dict[bytes, FoldedQuiver] = {canonical_key(fq): fq}
    frontier = [(fq, ())]
    exhausted = True
    while frontier and exhausted:
        nxt = []
        for cur, word in frontier:
            for g in movable:
                child = group_mutate(cur, g)
                if intra_group_arrows(child):
                    raise FoldingBroken(word + (g,))
                key = canonical_key(child)
                if key in seen:
                    continue
                if len(seen) >= cap:
                    exhausted = False
                    break
                seen[key] = child
                nxt.append((child, word + (g,)))
            if not exhausted:
                break
        frontier = nxt
    reps = tuple(seen[k] for k in sorted(seen))
    quiver_keys = frozenset(qcore.canonical(r.quiver) for r in reps)
    return FoldedClassEnumeration(frozenset(seen), exhausted, reps, quiver_keys)


# -- classification ----------------------------------------------------------


def folded_matrix(fq: FoldedQuiver):
    """k-by-k exchange matrix of the folded quiver: entry (g,h) is the total
    arrow weight from group g into one node of group h, required to be the
    same for every choice of that node.  Returns None when it is not."""
    b = fq.quiver.b
    k = fq.k
    B = [[0] * k for _ in range(k)]
    for gi, g in enumerate(fq.groups):
        for hi, h in enumerate(fq.groups):
            vals = {sum(b[i][j] for i in g) for j in h}
            if len(vals) > 1:
                return None
            B[gi][hi] = vals.pop()
    return tuple(tuple(row) for row in B)


def _matrix_mutate(B, k: int):
    n = len(B)
    out = [[0] * n for _ in range(n)]
    for i in range(n):
        bik = B[i][k]
        for j in range(n):
            if i == k or j == k:
                out[i][j] = -B[i][j]
            else:
                p = bik * B[k][j]
                if p > 0:
                    out[i][j] = B[i][j] + (p if bik > 0 else -p)
                else:
                    out[i][j] = B[i][j]
    return tuple(tuple(row) for row in out)


def skew_symmetrizer(B):
    """Smallest positive integer diagonal d with d_g B[g][h] = -d_h B[h][g],
    or None when no positive symmetrizer exists."""
    k = len(B)
    for g in range(k):
        if B[g][g] != 0:
            return None
        for h in range(g):
            x, y = B[g][h], B[h][g]
            if (x == 0) != (y == 0):
                return None
            if x and (x > 0) == (y > 0):
                return None
    d: list[Fraction | None] = [None] * k
    for root in range(k):
        if d[root] is not None:
            continue
        d[root] = Fraction(1)
        stack = [root]
        while stack:
            g = stack.pop()
            for h in range(k):
                if B[g][h] == 0:
                    continue
                want = d[g] * Fraction(B[g][h], -B[h][g])
                if d[h] is None:
                    d[h] = want
                    stack.append(h)
                elif d[h] != want:
                    return None
    scale = lcm(*(x.denominator for x in d)) if k else 1
    ints = [int(x * scale) for x in d]
    g = 0
    for v in ints:
        g = gcd(g, v)
    return tuple(v // (g or 1) for v in ints)


@dataclass(frozen=True)
class Classification:
    kind: str  # "standard" | "special" | "unknown"
    folded_b: tuple | None = None
    symmetrizer: tuple | None = None
    witness: tuple | None = None  # (word, reason) when special
    class_size: int | None = None


def classify_folding(fq: FoldedQuiver, cap: int = 1_000_000, jobs=None) -> Classification:
    """Standard needs, at every reachable folded quiver: a well-defined
    folded matrix, a positive skew-symmetrizer, and agreement between
    matrix mutation and group mutation.  Any failure anywhere makes the
    folding special; the base is not enough to decide."""
    base_b = folded_matrix(fq)
    if base_b is None:
        return Classification("special", witness=((), "folded matrix entry depends on the representative node"))
    base_symm = skew_symmetrizer(base_b)
    if base_symm is None:
        return Classification("special", folded_b=base_b, witness=((), "no positive symmetrizer"))
    movable = [g for g in range(fq.k) if g not in fq.frozen_groups]
    seen = {canonical_key(fq)}
    frontier = [(fq, (), base_b)]
    while frontier:
        nxt = []
        for cur, word, B in frontier:
            for g in movable:
                child = group_mutate(cur, g)
                if intra_group_arrows(child):
                    raise FoldingBroken(word + (g,))
                child_b = folded_matrix(child)
                cword = word + (g,)
                if child_b is None:
                    return Classification(
                        "special", folded_b=base_b,
                        witness=(cword, "folded matrix entry depends on the representative node"),
                    )
                if _matrix_mutate(B, g) != child_b:
                    return Classification(
                        "special", folded_b=base_b,
                        witness=(cword, "matrix mutation disagrees with group mutation"),
                    )
                if skew_symmetrizer(child_b) is None:
                    return Classification(
                        "special", folded_b=base_b,
                        witness=(cword, "no positive symmetrizer"),
                    )
                key = canonical_key(child)
                if key in seen:
                    continue
                if len(seen) >= cap:
                    return Classification("unknown", folded_b=base_b, class_size=len(seen))
                seen.add(key)
                nxt.append((child, cword, child_b))
        frontier = nxt
    return Classification(
        "standard", folded_b=base_b, symmetrizer=base_symm, class_size=len(seen)
    )


# -- serialization -----------------------------------------------------------


def folded_to_json(fq: FoldedQuiver) -> str:
    data = json.loads(qcore.to_json(fq.quiver))
    data["groups"] = [list(g) for g in fq.groups]
    data["frozen_groups"] = sorted(fq.frozen_groups)
    return json.dumps(data)


def folded_from_json(source) -> FoldedQuiver:
    data = json.loads(source) if isinstance(source, (str, bytes)) else source
    q = qcore.from_json({k: v for k, v in data.items() if k in ("n", "b", "arrows", "frozen")})
    fq = FoldedQuiver(q, tuple(tuple(g) for g in data["groups"]))
    declared = set(data.get("frozen_groups", ()))
    if declared != set(fq.frozen_groups):
        raise ValueError("frozen_groups inconsistent with the quiver's frozen nodes")
    return fq
