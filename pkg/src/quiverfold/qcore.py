"""Quivers as skew-symmetric integer matrices, with mutation and
mutation-class enumeration.

Convention: b[i][j] > 0 means b[i][j] arrows i -> j.  Frozen nodes keep
their arrows but are never mutated, and isomorphism respects frozen
status.  All values are immutable; every operation returns a new Quiver.
"""

from __future__ import annotations

import json
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

from . import canon
from .errors import FrozenNodeMutation


@dataclass(frozen=True, repr=False)
class Quiver:
    n: int
    b: tuple[tuple[int, ...], ...]
    frozen: frozenset[int] = frozenset()

    def __post_init__(self):
        if self.n < 0:
            raise ValueError("node count must be nonnegative")
        b = tuple(tuple(int(x) for x in row) for row in self.b)
        object.__setattr__(self, "b", b)
        if len(b) != self.n or any(len(row) != self.n for row in b):
            raise ValueError("matrix shape does not match node count")
        for i in range(self.n):
            if b[i][i] != 0:
                raise ValueError(f"nonzero diagonal entry at node {i}")
            for j in range(i):
                if b[i][j] != -b[j][i]:
                    raise ValueError(f"matrix not skew-symmetric at ({i},{j})")
        frozen = frozenset(int(v) for v in self.frozen)
        object.__setattr__(self, "frozen", frozen)
        if any(v < 0 or v >= self.n for v in frozen):
            raise ValueError("frozen node out of range")

    def arrows(self):
        """Yield (i, j, multiplicity) for every positive entry."""
        for i in range(self.n):
            for j in range(self.n):
                if self.b[i][j] > 0:
                    yield i, j, self.b[i][j]

    def __repr__(self):
        arrows = [(i, j) if m == 1 else (i, j, m) for i, j, m in self.arrows()]
        fr = f", frozen={sorted(self.frozen)}" if self.frozen else ""
        return f"Quiver(n={self.n}, arrows={arrows}{fr})"


def from_matrix(rows, frozen=()) -> Quiver:
    rows = tuple(tuple(int(x) for x in row) for row in rows)
    return Quiver(len(rows), rows, frozenset(frozen))


def from_arrows(n: int, arrows, frozen=()) -> Quiver:
    """Build from (i, j) or (i, j, multiplicity) entries, accumulating
    and cancelling opposite arrows."""
    b = [[0] * n for _ in range(n)]
    for a in arrows:
        if len(a) == 2:
            i, j = a
            m = 1
        else:
            i, j, m = a
        if i == j:
            raise ValueError(f"self arrow at node {i}")
        b[i][j] += m
        b[j][i] -= m
    return Quiver(n, tuple(tuple(row) for row in b), frozenset(frozen))


def relabel(q: Quiver, sigma) -> Quiver:
    """Apply the node permutation sigma (old index -> new index)."""
    sigma = tuple(sigma)
    b = [[0] * q.n for _ in range(q.n)]
    for i in range(q.n):
        for j in range(q.n):
            b[sigma[i]][sigma[j]] = q.b[i][j]
    return Quiver(q.n, tuple(tuple(row) for row in b), frozenset(sigma[v] for v in q.frozen))


def mutate(q: Quiver, k: int) -> Quiver:
    if not 0 <= k < q.n:
        raise IndexError(f"node {k} out of range for n={q.n}")
    if k in q.frozen:
        raise FrozenNodeMutation(f"node {k} is frozen")
    b = q.b
    n = q.n
    new = [[0] * n for _ in range(n)]
    for i in range(n):
        bik = b[i][k]
        row = b[i]
        out = new[i]
        for j in range(n):
            if i == k or j == k:
                out[j] = -row[j]
            else:
                p = bik * b[k][j]
                if p > 0:
                    out[j] = row[j] + (p if bik > 0 else -p)
                else:
                    out[j] = row[j]
    return Quiver(n, tuple(tuple(row) for row in new), q.frozen)


def _colors(q: Quiver) -> tuple[int, ...]:
    return tuple(1 if i in q.frozen else 0 for i in range(q.n))


def canonical(q: Quiver) -> bytes:
    """Key equal across exactly the quivers isomorphic to q (frozen status
    preserved)."""
    return canon.canonical_form(q.b, _colors(q)).key


def automorphisms(q: Quiver) -> tuple[tuple[int, ...], ...]:
    """Full automorphism group as permutation tuples a, a[v] = image of v."""
    return canon.canonical_form(q.b, _colors(q), with_automorphisms=True).automorphisms


def resolve_jobs(jobs=None) -> int:
    if jobs is None:
        jobs = os.environ.get("QUIVERFOLD_JOBS", "1")
    return max(1, int(jobs))


def _batch_keys(quivers, jobs: int, cache: dict) -> list[bytes]:
    missing = [q for q in quivers if q not in cache]
    if missing:
        if jobs > 1 and len(missing) > 1:
            with ThreadPoolExecutor(max_workers=jobs) as pool:
                keys = list(pool.map(canonical, missing))
        else:
            keys = [canonical(q) for q in missing]
        cache.update(zip(missing, keys))
    return [cache[q] for q in quivers]


@dataclass(frozen=True)
class ClassEnumeration:
    keys: frozenset[bytes]
    exhausted: bool
    representatives: tuple[Quiver, ...]  # sorted by key, one per class

    @property
    def size(self) -> int:
        return len(self.keys)


def enumerate_class(q: Quiver, cap: int = 100_000, jobs=None) -> ClassEnumeration:
    """Breadth-first closure of {q} under mutation at unfrozen nodes,
    deduplicated by canonical key.

    Stops once `cap` classes have been found; `exhausted` reports whether
    the closure completed.  Output is identical for any jobs count.
    """
    if cap < 1:
        raise ValueError("cap must be at least 1")
    jobs = resolve_jobs(jobs)
    movable = [k for k in range(q.n) if k not in q.frozen]
    cache: dict[Quiver, bytes] = {}
    seen: dict[bytes, Quiver] = {_batch_keys([q], jobs, cache)[0]: q}
    frontier = [q]
    exhausted = True
    while frontier and exhausted:
        neighbors = [mutate(cur, k) for cur in frontier for k in movable]
        keys = _batch_keys(neighbors, jobs, cache)
        frontier = []
        for nb, key in zip(neighbors, keys):
            if key in seen:
                continue
            if len(seen) >= cap:
                exhausted = False
                break
            seen[key] = nb
            frontier.append(nb)
    reps = tuple(seen[k] for k in sorted(seen))
    return ClassEnumeration(frozenset(seen), exhausted, reps)


@dataclass(frozen=True)
class EquivalenceProbe:
    verdict: str  # "yes" | "no" | "unknown"
    explored: tuple[int, int]  # classes seen on each side when the probe stopped

    def __bool__(self):
        return self.verdict == "yes"


def is_mutation_equivalent(q1: Quiver, q2: Quiver, cap: int = 100_000, jobs=None) -> EquivalenceProbe:
    """Bidirectional search meeting on canonical keys.

    "no" needs one side's class exhausted without a meet; hitting `cap`
    on both sides gives "unknown".
    """
    if q1.n != q2.n:
        raise ValueError("node counts differ")
    if len(q1.frozen) != len(q2.frozen):
        # frozen count is invariant under both mutation and isomorphism
        return EquivalenceProbe("no", (0, 0))
    jobs = resolve_jobs(jobs)
    cache: dict[Quiver, bytes] = {}
    k1, k2 = _batch_keys([q1, q2], jobs, cache)
    if k1 == k2:
        return EquivalenceProbe("yes", (1, 1))
    sides = [
        {"seen": {k1}, "frontier": [q1],
         "movable": [k for k in range(q1.n) if k not in q1.frozen], "capped": False},
        {"seen": {k2}, "frontier": [q2],
         "movable": [k for k in range(q2.n) if k not in q2.frozen], "capped": False},
    ]

    def counts():
        return (len(sides[0]["seen"]), len(sides[1]["seen"]))

    while True:
        live = [s for s in sides if s["frontier"]]
        if not live:
            return EquivalenceProbe("unknown", counts())
        side = min(live, key=lambda s: len(s["seen"]))
        other = sides[1] if side is sides[0] else sides[0]
        neighbors = [mutate(cur, k) for cur in side["frontier"] for k in side["movable"]]
        keys = _batch_keys(neighbors, jobs, cache)
        side["frontier"] = []
        for nb, key in zip(neighbors, keys):
            if key in side["seen"]:
                continue
            if key in other["seen"]:
                return EquivalenceProbe("yes", counts())
            if len(side["seen"]) >= cap:
                side["capped"] = True
                side["frontier"] = []
                break
            side["seen"].add(key)
            side["frontier"].append(nb)
        if not side["frontier"] and not side["capped"]:
            # level added nothing: this side's class is fully enumerated
            # and the other side's quiver never appeared in it
            return EquivalenceProbe("no", counts())


def to_json(q: Quiver) -> str:
    return json.dumps({"n": q.n, "b": [list(row) for row in q.b], "frozen": sorted(q.frozen)})


def from_json(source) -> Quiver:
    """Accepts the dict form, a JSON string, or an arrows-list variant
    {"n": ..., "arrows": [[i,j] | [i,j,mult]], "frozen": [...]}."""
    data = json.loads(source) if isinstance(source, (str, bytes)) else source
    frozen = frozenset(data.get("frozen", ()))
    if "arrows" in data:
        return from_arrows(data["n"], data["arrows"], frozen)
    return Quiver(data["n"], tuple(tuple(row) for row in data["b"]), frozen)
