"""Morphs represented by finite, totally well-typed species machines.

A morph is the path-level abstraction of a connected machine whose outputs
are species and whose edges exist exactly where appropriateness is defined.
Only morphs with a finite quotient machine are handled; :func:`induced_morph`
recovers the path-level sets up to a length bound.
"""

from __future__ import annotations

from collections import deque
from typing import Mapping

from .fstruct import FeatureStructure, format_feature_structure
from .signature import Signature

__all__ = [
    "MorphAutomaton",
    "check_morph",
    "morph_violations",
    "witness",
    "homomorphism",
    "approximates",
    "morph_to_interpretation",
    "induced_morph",
    "format_morph",
]


class MorphAutomaton(FeatureStructure):
    """A machine read as a morph; ``nodes`` and ``labels`` alias the
    underlying states and outputs."""

    @property
    def nodes(self) -> tuple[str, ...]:
        return self.states

    @property
    def labels(self) -> Mapping[str, str]:
        return self.theta


def morph_violations(m: FeatureStructure, sig: Signature) -> list[str]:
    """Human-readable reasons ``m`` fails total well-typing (empty if none)."""
    problems = []
    for (q, a) in m.delta:
        if not sig.has_attr(a):
            problems.append(f"edge ({q}, {a}): unknown attribute")
    for q in m.states:
        label = m.output[q]
        if not sig.is_species(label):
            problems.append(f"node {q}: {label} is not a species")
            continue
        succ = m.successors(q)
        for a in sig.attrs:
            v = sig.approp.get((label, a))
            target = succ.get(a)
            if v is None and target is not None:
                problems.append(f"node {q}: {a} is not appropriate for {label}")
            elif v is not None and target is None:
                problems.append(f"node {q}: missing {a} edge required by {label}")
            elif v is not None and not sig.sub(v, m.output[target]):
                problems.append(f"node {q}: {a} leads to {m.output[target]}, not refining {v}")
    return problems


def check_morph(m: FeatureStructure, sig: Signature) -> bool:
    return not morph_violations(m, sig)


def witness(r: FeatureStructure, sig: Signature) -> MorphAutomaton:
    """Close a resolved feature structure into a morph machine it approximates.

    Every missing appropriate edge is sent to a shared node for the first
    species (in declaration order) refining the appropriate value; those
    shared nodes are closed the same way.  At most one node per species is
    added.
    """
    states = list(r.states)
    labels = dict(r.output)
    delta = dict(r.delta)
    taken = set(states)
    canonical: dict[str, str] = {}

    def node_for(species: str) -> str:
        if species not in canonical:
            name = f"sp-{species}"
            while name in taken:
                name += "-"
            taken.add(name)
            canonical[species] = name
            states.append(name)
            labels[name] = species
            work.append(name)
        return canonical[species]

    work = deque(states)
    while work:
        q = work.popleft()
        for a in sig.attrs:
            v = sig.approp.get((labels[q], a))
            if v is not None and (q, a) not in delta:
                delta[(q, a)] = node_for(sig.species_at_least(v)[0])
    return MorphAutomaton(tuple(states), r.root, delta, labels)


def homomorphism(f: FeatureStructure, m: FeatureStructure, sig: Signature) -> dict[str, str] | None:
    """The root-preserving map from ``f``'s states to ``m``'s nodes that
    respects edges and refines outputs, or ``None``.  Unique when it exists."""
    h = {f.root: m.root}
    queue = deque([f.root])
    while queue:
        q = queue.popleft()
        node = h[q]
        if not sig.sub(f.output[q], m.output[node]):
            return None
        succ_m = m.successors(node)
        for a, q2 in f.successors(q).items():
            target = succ_m.get(a)
            if target is None:
                return None
            if q2 in h:
                if h[q2] != target:
                    return None
            else:
                h[q2] = target
                queue.append(q2)
    return h


def approximates(f: FeatureStructure, m: FeatureStructure, sig: Signature) -> bool:
    return homomorphism(f, m, sig) is not None


def morph_to_interpretation(m: FeatureStructure, sig: Signature | None = None):
    """Read the machine as a finite interpretation; the root is the designated
    object.  Validated against ``sig`` when one is given."""
    from .interp import FiniteInterpretation, validate_interpretation

    attrs = list(sig.attrs) if sig is not None else list(dict.fromkeys(a for (_, a) in m.delta))
    attr_fun = {a: {} for a in attrs}
    for (q, a), q2 in m.delta.items():
        attr_fun.setdefault(a, {})[q] = q2
    interp = FiniteInterpretation(m.states, dict(m.output), attr_fun)
    if sig is not None:
        validate_interpretation(interp, sig)
    return interp


def induced_morph(m: FeatureStructure, max_len: int):
    """Path-level view of ``m`` restricted to paths of length <= ``max_len``.

    Returns ``(paths, equivalent, label)``: the defined paths, the set of
    path pairs reaching the same node, and the output reached by each path.
    """
    reached: dict[tuple[str, ...], str] = {(): m.root}
    frontier = [()]
    for _ in range(max_len):
        nxt = []
        for p in frontier:
            for a, q2 in m.successors(reached[p]).items():
                reached[p + (a,)] = q2
                nxt.append(p + (a,))
        frontier = nxt
    paths = frozenset(reached)
    equivalent = frozenset(
        (p1, p2) for p1, q1 in reached.items() for p2, q2 in reached.items() if q1 == q2
    )
    label = {p: m.output[q] for p, q in reached.items()}
    return paths, equivalent, label


def format_morph(m: FeatureStructure) -> str:
    return format_feature_structure(m)
