"""Feature structures as rooted, connected, deterministic Moore machines."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from types import MappingProxyType
from typing import Mapping, Sequence, TypeVar

from ._lines import expect_arity, tokenize, valid_ident
from .errors import ParseError, StructureError, UnknownSymbolError
from .signature import Signature

__all__ = [
    "FeatureStructure",
    "ResolvedFeatureStructure",
    "parse_feature_structure",
    "format_feature_structure",
    "run",
    "shortest_paths",
    "is_well_typed",
    "is_resolvant_of",
    "forget",
    "resolved",
    "isomorphic",
]

Path = Sequence[str]
M = TypeVar("M", bound="FeatureStructure")


@dataclass(frozen=True, eq=False)
class FeatureStructure:
    """``states`` in declaration order, ``root``, partial transition map
    ``delta[(state, attr)] -> state`` and total output map ``theta``.

    Construction checks the structural conditions (membership, totality of
    ``theta``, connectivity).  Checks that need a signature live in
    :meth:`check_symbols`.
    """

    states: tuple[str, ...]
    root: str
    delta: Mapping[tuple[str, str], str]
    theta: Mapping[str, str]

    def __post_init__(self):
        states = tuple(self.states)
        object.__setattr__(self, "states", states)
        object.__setattr__(self, "delta", MappingProxyType(dict(self.delta)))
        object.__setattr__(self, "theta", MappingProxyType({q: self.theta[q] for q in states if q in self.theta}))
        if not states:
            raise StructureError("a feature structure has at least one state")
        if len(set(states)) != len(states):
            raise StructureError("duplicate state name")
        for q in states:
            if not valid_ident(q):
                raise StructureError(f"invalid state name {q!r}")
        members = set(states)
        if self.root not in members:
            raise StructureError(f"root {self.root!r} is not a state")
        missing = [q for q in states if q not in self.theta]
        if missing:
            raise StructureError(f"no output for state(s) {', '.join(missing)}")
        succ: dict[str, dict[str, str]] = {q: {} for q in states}
        for (q, a), q2 in self.delta.items():
            if q not in members or q2 not in members:
                raise StructureError(f"edge ({q}, {a}) -> {q2} uses an unknown state")
            succ[q][a] = q2
        object.__setattr__(self, "_succ", succ)
        reached = set(shortest_paths(self))
        unreachable = [q for q in states if q not in reached]
        if unreachable:
            raise StructureError(f"unreachable state(s) from root: {', '.join(unreachable)}")

    @property
    def output(self) -> Mapping[str, str]:
        return self.theta

    def successors(self, q: str) -> Mapping[str, str]:
        return self._succ[q]

    def check_symbols(self, sig: Signature) -> None:
        for q in self.states:
            if not sig.has_type(self.theta[q]):
                raise UnknownSymbolError(f"unknown type {self.theta[q]!r} at state {q!r}")
        for (q, a) in self.delta:
            if not sig.has_attr(a):
                raise UnknownSymbolError(f"unknown attribute {a!r} on edge from {q!r}")

    def with_outputs(self, outputs: Mapping[str, str], cls: type[M] | None = None) -> M:
        """Same skeleton, different output map."""
        return (cls or type(self))(self.states, self.root, self.delta, outputs)

    def same_skeleton(self, other: FeatureStructure) -> bool:
        return (
            self.states == other.states
            and self.root == other.root
            and dict(self.delta) == dict(other.delta)
        )

    def _key(self):
        return (self.states, self.root, frozenset(self.delta.items()), tuple(self.theta[q] for q in self.states))

    def __eq__(self, other):
        if not isinstance(other, FeatureStructure):
            return NotImplemented
        return type(self) is type(other) and self._key() == other._key()

    def __hash__(self):
        return hash(self._key())

    def __str__(self):
        return format_feature_structure(self)


class ResolvedFeatureStructure(FeatureStructure):
    """A feature structure whose outputs are species.

    The species and well-typing conditions depend on a signature; use
    :func:`resolved` to build a checked instance or :func:`is_well_typed`.
    """

    @property
    def rho(self) -> Mapping[str, str]:
        return self.theta


def run(fs: FeatureStructure, path: Path, sig: Signature | None = None) -> str | None:
    """State reached by following ``path`` from the root, or ``None``."""
    if sig is not None:
        for a in path:
            sig.require_attr(a)
    q = fs.root
    for a in path:
        q = fs.successors(q).get(a)
        if q is None:
            return None
    return q


def shortest_paths(fs: FeatureStructure) -> dict[str, tuple[str, ...]]:
    """BFS access path for each reachable state, in discovery order."""
    paths = {fs.root: ()}
    queue = deque([fs.root])
    while queue:
        q = queue.popleft()
        for a, q2 in fs.successors(q).items():
            if q2 not in paths:
                paths[q2] = paths[q] + (a,)
                queue.append(q2)
    return paths


def is_well_typed(fs: FeatureStructure, sig: Signature) -> bool:
    """Outputs are species and every edge respects appropriateness."""
    out = fs.output
    if not all(sig.is_species(out[q]) for q in fs.states):
        return False
    for (q, a), q2 in fs.delta.items():
        v = sig.approp.get((out[q], a))
        if v is None or not sig.sub(v, out[q2]):
            return False
    return True


def is_resolvant_of(r: FeatureStructure, f: FeatureStructure, sig: Signature) -> bool:
    if not r.same_skeleton(f):
        return False
    try:
        if not all(sig.sub(f.theta[q], r.theta[q]) for q in f.states):
            return False
    except UnknownSymbolError:
        return False
    return is_well_typed(r, sig)


def forget(r: FeatureStructure) -> FeatureStructure:
    """View any machine as a plain feature structure (species are types)."""
    return FeatureStructure(r.states, r.root, r.delta, r.theta)


def resolved(fs: FeatureStructure, rho: Mapping[str, str], sig: Signature) -> ResolvedFeatureStructure:
    """``fs``'s skeleton with species outputs ``rho``; raises if ill-typed."""
    r = fs.with_outputs(rho, ResolvedFeatureStructure)
    r.check_symbols(sig)
    if not is_well_typed(r, sig):
        raise StructureError("outputs are not species or violate appropriateness")
    return r


def isomorphic(a: FeatureStructure, b: FeatureStructure) -> bool:
    """Root-preserving isomorphism of two connected deterministic machines."""
    if len(a.states) != len(b.states) or len(a.delta) != len(b.delta):
        return False
    fwd = {a.root: b.root}
    queue = deque([a.root])
    while queue:
        q = queue.popleft()
        p = fwd[q]
        if a.output[q] != b.output[p]:
            return False
        sa, sb = a.successors(q), b.successors(p)
        if sa.keys() != sb.keys():
            return False
        for attr, q2 in sa.items():
            p2 = sb[attr]
            if q2 in fwd:
                if fwd[q2] != p2:
                    return False
            else:
                fwd[q2] = p2
                queue.append(q2)
    return len(set(fwd.values())) == len(fwd)


def parse_feature_structure(
    text: str, sig: Signature, cls: type[M] = FeatureStructure
) -> M:
    """Parse ``root``/``node``/``edge`` lines into a validated machine."""
    root = None
    states: list[str] = []
    theta: dict[str, str] = {}
    delta: dict[tuple[str, str], str] = {}
    edge_tokens = []

    for tokens in tokenize(text):
        head = tokens[0]
        if head.text == "root":
            expect_arity(tokens, 2, "root <state>")
            if root is not None:
                raise ParseError("root declared twice", head.line, head.column)
            root = tokens[1].text
        elif head.text == "node":
            expect_arity(tokens, 3, "node <state> <type>")
            q, t = tokens[1], tokens[2]
            if q.text in theta:
                raise ParseError(f"duplicate node {q.text!r}", q.line, q.column)
            if not sig.has_type(t.text):
                raise ParseError(f"unknown type {t.text!r}", t.line, t.column)
            states.append(q.text)
            theta[q.text] = t.text
        elif head.text == "edge":
            expect_arity(tokens, 4, "edge <state> <attr> <state>")
            q, a, q2 = tokens[1:]
            if not sig.has_attr(a.text):
                raise ParseError(f"unknown attribute {a.text!r}", a.line, a.column)
            if (q.text, a.text) in delta:
                raise ParseError(f"duplicate edge ({q.text}, {a.text})", head.line, head.column)
            delta[(q.text, a.text)] = q2.text
            edge_tokens.append(tokens)
        else:
            raise ParseError(f"unknown directive {head.text!r}", head.line, head.column)

    if root is None:
        raise ParseError("missing root declaration")
    if root not in theta:
        raise ParseError(f"root {root!r} has no node line")
    for tokens in edge_tokens:
        for tok in (tokens[1], tokens[3]):
            if tok.text not in theta:
                raise ParseError(f"undeclared state {tok.text!r}", tok.line, tok.column)
    return cls(tuple(states), root, delta, theta)


def format_feature_structure(fs: FeatureStructure) -> str:
    lines = [f"root {fs.root}"]
    lines.extend(f"node {q} {fs.output[q]}" for q in fs.states)
    for q in fs.states:
        lines.extend(f"edge {q} {a} {q2}" for a, q2 in fs.successors(q).items())
    return "\n".join(lines) + "\n"
