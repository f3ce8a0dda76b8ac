"""Disjunctive representation (one skeleton, many output functions) and a
unifier closed on it.

A feature structure is stored as its machine plus the list of its resolvant
output functions.  Unifying two such representations merges the machines
root to root (congruence closure over shared attributes) and keeps the
species assignments of the merged machine whose restrictions to each input
are among that input's assignments.  Merged states carry a *set* of type
constraints rather than one joined type, so no type joins are needed.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from types import MappingProxyType
from typing import Mapping, Union

from .errors import SignatureError, StructureError
from .fstruct import FeatureStructure, shortest_paths
from .resolve import ResolvantSet, res_refined, search_assignments
from .signature import Signature

__all__ = [
    "ConstrainedSkeleton",
    "UnionFind",
    "merge_skeletons",
    "merge_with_maps",
    "resolve_constrained",
    "unify_representations",
    "unify",
    "equivalent",
]


@dataclass(frozen=True, eq=False)
class ConstrainedSkeleton:
    """A connected deterministic machine whose states carry nonempty sets of
    required types."""

    states: tuple[str, ...]
    root: str
    delta: Mapping[tuple[str, str], str]
    constraints: Mapping[str, tuple[str, ...]]

    def __post_init__(self):
        object.__setattr__(self, "states", tuple(self.states))
        object.__setattr__(self, "delta", MappingProxyType(dict(self.delta)))
        object.__setattr__(
            self, "constraints", MappingProxyType({q: tuple(self.constraints[q]) for q in self.states})
        )
        succ: dict[str, dict[str, str]] = {q: {} for q in self.states}
        for (q, a), q2 in self.delta.items():
            if q not in succ or q2 not in succ:
                raise StructureError(f"edge ({q}, {a}) -> {q2} uses an unknown state")
            succ[q][a] = q2
        object.__setattr__(self, "_succ", succ)
        if self.root not in succ:
            raise StructureError(f"root {self.root!r} is not a state")
        for q in self.states:
            if not self.constraints[q]:
                raise StructureError(f"state {q!r} has an empty constraint set")
        if len(shortest_paths(self)) != len(self.states):
            raise StructureError("constrained skeleton is not connected")

    def successors(self, q: str) -> Mapping[str, str]:
        return self._succ[q]

    def with_choice(self, choice: Mapping[str, str]) -> FeatureStructure:
        """A plain feature structure taking one type per state from its constraints."""
        for q in self.states:
            if choice[q] not in self.constraints[q]:
                raise ValueError(f"{choice[q]!r} is not a constraint of state {q!r}")
        return FeatureStructure(self.states, self.root, self.delta, choice)

    @classmethod
    def from_feature_structure(cls, f: FeatureStructure) -> ConstrainedSkeleton:
        return cls(f.states, f.root, f.delta, {q: (f.theta[q],) for q in f.states})


Skeleton = Union[FeatureStructure, ConstrainedSkeleton]


class UnionFind:
    """Disjoint sets with path compression; the older root wins ties so that
    representatives are deterministic."""

    def __init__(self, elements):
        self.parent = {e: e for e in elements}
        self.rank = dict.fromkeys(self.parent, 0)

    def find(self, x):
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, x, y):
        """Merge the classes of ``x`` and ``y``; return ``(kept, absorbed)``
        representatives, or ``None`` if already merged."""
        rx, ry = self.find(x), self.find(y)
        if rx == ry:
            return None
        if self.rank[rx] < self.rank[ry]:
            rx, ry = ry, rx
        self.parent[ry] = rx
        if self.rank[rx] == self.rank[ry]:
            self.rank[rx] += 1
        return rx, ry


def _constraints(sk: Skeleton) -> Mapping[str, tuple[str, ...]]:
    if isinstance(sk, ConstrainedSkeleton):
        return sk.constraints
    return {q: (sk.theta[q],) for q in sk.states}


def merge_with_maps(
    s1: Skeleton, s2: Skeleton
) -> tuple[ConstrainedSkeleton, dict[str, str], dict[str, str]]:
    """Merge two skeletons root to root.

    Returns the merged skeleton and the maps sending each input state to its
    merged state.  Merged states are named after their first member from
    ``s1``, else from ``s2`` (suffixed with ``-2`` on a clash).
    """
    left = [(0, q) for q in s1.states]
    right = [(1, q) for q in s2.states]
    uf = UnionFind(left + right)
    out: dict[tuple[int, str], dict[str, tuple[int, str]]] = {}
    for side, sk in ((0, s1), (1, s2)):
        for q in sk.states:
            out[(side, q)] = {a: (side, q2) for a, q2 in sk.successors(q).items()}

    pending = [((0, s1.root), (1, s2.root))]
    while pending:
        x, y = pending.pop()
        merged = uf.union(x, y)
        if merged is None:
            continue
        kept, absorbed = merged
        kept_out = out[kept]
        for a, t in out.pop(absorbed).items():
            if a in kept_out:
                pending.append((kept_out[a], t))
            else:
                kept_out[a] = t

    members: dict[tuple[int, str], list[tuple[int, str]]] = {}
    for node in left + right:
        members.setdefault(uf.find(node), []).append(node)

    names: dict[tuple[int, str], str] = {}
    used: set[str] = set()
    for node in left + right:
        rep = uf.find(node)
        if rep in names:
            continue
        name = node[1]
        while name in used:
            name += "-2"
        used.add(name)
        names[rep] = name

    c1, c2 = _constraints(s1), _constraints(s2)
    states, delta, constraints = [], {}, {}
    for rep, name in names.items():
        states.append(name)
        collected = []
        for side, q in members[rep]:
            for t in (c1 if side == 0 else c2)[q]:
                if t not in collected:
                    collected.append(t)
        constraints[name] = tuple(collected)
        for a, t in out[rep].items():
            delta[(name, a)] = names[uf.find(t)]

    cs = ConstrainedSkeleton(tuple(states), names[uf.find((0, s1.root))], delta, constraints)
    h1 = {q: names[uf.find((0, q))] for q in s1.states}
    h2 = {q: names[uf.find((1, q))] for q in s2.states}
    return cs, h1, h2


def merge_skeletons(s1: Skeleton, s2: Skeleton) -> ConstrainedSkeleton:
    return merge_with_maps(s1, s2)[0]


def resolve_constrained(cs: Skeleton, sig: Signature) -> ResolvantSet:
    """Well-typed species assignments satisfying every constraint of every state."""
    if isinstance(cs, FeatureStructure):
        cs = ConstrainedSkeleton.from_feature_structure(cs)
    domains = {}
    for q in cs.states:
        allowed = set(sig.species)
        for t in cs.constraints[q]:
            allowed &= set(sig.species_at_least(t))
        domains[q] = [s for s in sig.species if s in allowed]
    return ResolvantSet(cs, tuple(search_assignments(cs.states, cs.delta, domains, sig)), sig)


def unify_representations(
    r1: ResolvantSet, r2: ResolvantSet, sig: Signature | None = None
) -> ResolvantSet:
    sig = sig if sig is not None else r1.signature
    if r1.signature != sig or r2.signature != sig:
        raise SignatureError("cannot unify representations over different signatures")
    cs, h1, h2 = merge_with_maps(r1.skeleton, r2.skeleton)
    allowed1 = set(r1.keys())
    allowed2 = set(r2.keys())
    s1, s2 = r1.skeleton.states, r2.skeleton.states
    kept = tuple(
        rho for rho in resolve_constrained(cs, sig)
        if tuple(rho[h1[q]] for q in s1) in allowed1 and tuple(rho[h2[q]] for q in s2) in allowed2
    )
    return ResolvantSet(cs, kept, sig)


def unify(f1: Skeleton, f2: Skeleton, sig: Signature) -> ResolvantSet:
    """Resolve both inputs and unify the resulting representations."""
    return unify_representations(_resolve_any(f1, sig), _resolve_any(f2, sig), sig)


def _resolve_any(sk: Skeleton, sig: Signature) -> ResolvantSet:
    if isinstance(sk, ConstrainedSkeleton):
        return resolve_constrained(sk, sig)
    return res_refined(sk, sig)


def equivalent(a: ResolvantSet, b: ResolvantSet) -> bool:
    """Same representation up to renaming states: isomorphic skeletons, equal
    constraint sets, and a bijection between assignment sets."""
    ska, skb = a.skeleton, b.skeleton
    if len(ska.states) != len(skb.states) or len(ska.delta) != len(skb.delta):
        return False
    iso = {ska.root: skb.root}
    queue = deque([ska.root])
    while queue:
        q = queue.popleft()
        sa, sb = ska.successors(q), skb.successors(iso[q])
        if sa.keys() != sb.keys():
            return False
        for attr, q2 in sa.items():
            if q2 in iso:
                if iso[q2] != sb[attr]:
                    return False
            else:
                iso[q2] = sb[attr]
                queue.append(q2)
    if len(set(iso.values())) != len(iso):
        return False
    ca, cb = _constraints(ska), _constraints(skb)
    if any(set(ca[q]) != set(cb[iso[q]]) for q in ska.states):
        return False
    mapped = {tuple(rho[q] for q in ska.states) for rho in a.assignments}
    other = {tuple(rho[iso[q]] for q in ska.states) for rho in b.assignments}
    return mapped == other and len(a) == len(b)
