"""Resolvant enumeration and satisfiability.

Two routes compute the same list of resolvants:

* :func:`res_naive` generates every total species assignment and filters it
  with the well-typing test (:func:`test1`) and the refinement test
  (:func:`test2`).  It is exponential in the number of states and guarded by
  a candidate bound.
* :func:`res_refined` runs a backtracking search over per-state species
  domains, keeping every edge arc consistent after each choice.

Both return assignments in ascending lexicographic order: states in
declaration order, species in signature declaration order.  A feature
structure is satisfiable exactly when it has a resolvant (:func:`sat`).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Iterator, Mapping, Sequence

from .errors import SizeGuardError, TfsError
from .fstruct import FeatureStructure, ResolvedFeatureStructure, format_feature_structure
from .signature import Signature, check_rational

__all__ = [
    "ResolvantSet",
    "gen",
    "test1",
    "test2",
    "res_naive",
    "res_refined",
    "iter_resolvants",
    "search_assignments",
    "sat",
    "DEFAULT_NAIVE_BOUND",
]

DEFAULT_NAIVE_BOUND = 10**7

Assignment = Mapping[str, str]


@dataclass(frozen=True)
class ResolvantSet:
    """A skeleton together with the species assignments that resolve it.

    ``skeleton`` is a :class:`FeatureStructure` or, for unification results,
    a :class:`~tfs.unify.ConstrainedSkeleton`; only its ``states``, ``root``
    and ``delta`` are used here.
    """

    skeleton: object
    assignments: tuple[Assignment, ...]
    signature: Signature

    def __len__(self) -> int:
        return len(self.assignments)

    def __iter__(self) -> Iterator[Assignment]:
        return iter(self.assignments)

    def __bool__(self) -> bool:
        return bool(self.assignments)

    def keys(self) -> list[tuple[str, ...]]:
        """Assignments as species tuples in state order."""
        states = self.skeleton.states
        return [tuple(rho[q] for q in states) for rho in self.assignments]

    def resolvants(self) -> list[ResolvedFeatureStructure]:
        sk = self.skeleton
        return [ResolvedFeatureStructure(sk.states, sk.root, sk.delta, rho) for rho in self.assignments]

    def format(self) -> str:
        """Resolvants in the fs grammar separated by ``---``, then a count line."""
        blocks = [format_feature_structure(r) for r in self.resolvants()]
        return "---\n".join(blocks) + f"resolvants: {len(blocks)}\n"


def gen(states: Sequence[str], sig: Signature) -> Iterator[dict[str, str]]:
    """All total maps from ``states`` to species, lexicographically."""
    states = tuple(states)
    for combo in itertools.product(sig.species, repeat=len(states)):
        yield dict(zip(states, combo))


def test1(delta: Mapping[tuple[str, str], str], rho: Assignment, sig: Signature) -> bool:
    """Every edge is appropriate for its source and lands on a compatible output."""
    for (q, a), q2 in delta.items():
        v = sig.app(rho[q], a)
        if v is None or not sig.sub(v, rho[q2]):
            return False
    return True


def test2(theta: Assignment, rho: Assignment, sig: Signature) -> bool:
    """``theta`` subsumes ``rho`` pointwise."""
    return all(sig.sub(t, rho[q]) for q, t in theta.items())


def res_naive(
    f: FeatureStructure, sig: Signature, bound: int | None = DEFAULT_NAIVE_BOUND
) -> ResolvantSet:
    candidates = len(sig.species) ** len(f.states)
    if bound is not None and candidates > bound:
        raise SizeGuardError(
            f"{len(sig.species)}^{len(f.states)} = {candidates} candidates exceeds bound {bound}"
        )
    found = tuple(
        rho for rho in gen(f.states, sig)
        if test1(f.delta, rho, sig) and test2(f.theta, rho, sig)
    )
    return ResolvantSet(f, found, sig)


def res_refined(f: FeatureStructure, sig: Signature) -> ResolvantSet:
    return ResolvantSet(f, tuple(iter_resolvants(f, sig)), sig)


def iter_resolvants(f: FeatureStructure, sig: Signature) -> Iterator[dict[str, str]]:
    """Lazily yield the resolvant assignments of ``f`` in lexicographic order."""
    domains = {q: sig.species_at_least(f.theta[q]) for q in f.states}
    return search_assignments(f.states, f.delta, domains, sig)


def sat(f: FeatureStructure, sig: Signature) -> bool:
    if not check_rational(sig):  # cannot happen for a finite signature
        raise TfsError("signature is not rational")
    return next(iter_resolvants(f, sig), None) is not None


# refined search over species bitmasks


def search_assignments(
    states: Sequence[str],
    delta: Mapping[tuple[str, str], str],
    domains: Mapping[str, Iterable[str]],
    sig: Signature,
) -> Iterator[dict[str, str]]:
    """Species assignments drawn from ``domains`` that pass the well-typing
    test on ``delta``, in lexicographic order.

    Domains are bitmasks over species indices.  Arc consistency is enforced
    over all edges before the search and after every choice, so values are
    only removed when no completion can use them.
    """
    species = sig.species
    index = {s: i for i, s in enumerate(species)}
    states = tuple(states)
    pos = {q: i for i, q in enumerate(states)}

    # compat[a][i]: mask of species j with approp(species[i], a) subsuming species[j]
    compat: dict[str, list[int]] = {}
    for a in {a for (_, a) in delta}:
        row = []
        for s in species:
            v = sig.app(s, a)
            row.append(0 if v is None else _mask(index[t] for t in sig.species_at_least(v)))
        compat[a] = row

    edges = [(pos[q], compat[a], pos[q2]) for (q, a), q2 in delta.items()]
    incident: list[list[int]] = [[] for _ in states]
    for e, (src, _, dst) in enumerate(edges):
        incident[src].append(e)
        if dst != src:
            incident[dst].append(e)

    dom = [_mask(index[s] for s in domains[q]) for q in states]
    if not _propagate(dom, edges, incident, range(len(edges))):
        return
    yield from _backtrack(dom, 0, edges, incident, states, species)


def _mask(indices: Iterable[int]) -> int:
    m = 0
    for i in indices:
        m |= 1 << i
    return m


def _bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def _propagate(dom: list[int], edges, incident, pending: Iterable[int]) -> bool:
    """AC-3 over the edge constraints; False on a domain wipe-out."""
    queue = list(pending)
    queued = set(queue)
    while queue:
        e = queue.pop()
        queued.discard(e)
        src, row, dst = edges[e]
        changed = []
        if src == dst:
            keep = 0
            for i in _bits(dom[src]):
                if row[i] >> i & 1:
                    keep |= 1 << i
            if keep != dom[src]:
                dom[src] = keep
                changed.append(src)
        else:
            keep = 0
            reach = 0
            for i in _bits(dom[src]):
                hit = row[i] & dom[dst]
                if hit:
                    keep |= 1 << i
                    reach |= hit
            if keep != dom[src]:
                dom[src] = keep
                changed.append(src)
            if reach != dom[dst]:
                dom[dst] = reach
                changed.append(dst)
        for q in changed:
            if not dom[q]:
                return False
            for e2 in incident[q]:
                if e2 != e and e2 not in queued:
                    queued.add(e2)
                    queue.append(e2)
    return True


def _backtrack(dom, k, edges, incident, states, species) -> Iterator[dict[str, str]]:
    if k == len(states):
        yield {q: species[(d.bit_length() - 1)] for q, d in zip(states, dom)}
        return
    for i in _bits(dom[k]):
        if dom[k] == 1 << i:
            yield from _backtrack(dom, k + 1, edges, incident, states, species)
            continue
        trial = list(dom)
        trial[k] = 1 << i
        if _propagate(trial, edges, incident, incident[k]):
            yield from _backtrack(trial, k + 1, edges, incident, states, species)
