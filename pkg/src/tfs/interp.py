"""Finite interpretations: objects with species and partial attribute functions.

These are the semantic models feature structures are evaluated against.
:func:`truth_of` decides truth exactly through the abstraction of an object;
:func:`truth_bounded` checks the path conditions directly up to a length
bound and serves as an independent cross-check.
"""

from __future__ import annotations

from collections import defaultdict, deque
from dataclasses import dataclass, field
from typing import Mapping, Sequence

from ._lines import expect_arity, tokenize
from .errors import InterpretationError, ParseError, UnknownSymbolError
from .fstruct import FeatureStructure
from .morph import MorphAutomaton, approximates
from .signature import Signature

__all__ = [
    "FiniteInterpretation",
    "parse_interpretation",
    "format_interpretation",
    "validate_interpretation",
    "path_eval",
    "abstraction",
    "truth_of",
    "truth_bounded",
]


@dataclass(frozen=True, eq=False)
class FiniteInterpretation:
    universe: tuple[str, ...]
    species_of: Mapping[str, str]
    attr_fun: Mapping[str, Mapping[str, str]] = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "universe", tuple(self.universe))
        if len(set(self.universe)) != len(self.universe):
            raise InterpretationError("duplicate object in universe")
        for u in self.universe:
            if u not in self.species_of:
                raise InterpretationError(f"object {u!r} has no species", obj=u)
        members = set(self.universe)
        for a, fn in self.attr_fun.items():
            for u, v in fn.items():
                if u not in members or v not in members:
                    raise InterpretationError(f"{a}({u}) = {v} uses an unknown object", obj=u, attr=a)

    def value(self, a: str, u: str) -> str | None:
        fn = self.attr_fun.get(a)
        return None if fn is None else fn.get(u)

    def require_object(self, u: str) -> None:
        if u not in self.species_of:
            raise UnknownSymbolError(f"unknown object {u!r}")


def validate_interpretation(i: FiniteInterpretation, sig: Signature) -> None:
    """Raise :class:`InterpretationError` naming the first offending (object, attr)."""
    for a in i.attr_fun:
        if not sig.has_attr(a):
            raise InterpretationError(f"unknown attribute {a!r}", attr=a)
    for u in i.universe:
        s = i.species_of[u]
        if not sig.is_species(s):
            raise InterpretationError(f"object {u}: {s} is not a species", obj=u)
    for u in i.universe:
        s = i.species_of[u]
        for a in sig.attrs:
            v = sig.approp.get((s, a))
            target = i.value(a, u)
            if target is None:
                if v is not None:
                    raise InterpretationError(
                        f"{a}({u}) must be defined since approp({s}, {a}) = {v}", obj=u, attr=a
                    )
            elif v is None:
                raise InterpretationError(
                    f"{a}({u}) is defined but {a} is not appropriate for {s}", obj=u, attr=a
                )
            elif not sig.sub(v, i.species_of[target]):
                raise InterpretationError(
                    f"{a}({u}) = {target} of species {i.species_of[target]}, which {v} does not subsume",
                    obj=u,
                    attr=a,
                )


def parse_interpretation(text: str, sig: Signature) -> FiniteInterpretation:
    """Parse ``obj <id> <species>`` and ``val <obj> <attr> <obj>`` lines."""
    universe: list[str] = []
    species_of: dict[str, str] = {}
    attr_fun: dict[str, dict[str, str]] = {a: {} for a in sig.attrs}
    vals = []
    for tokens in tokenize(text):
        head = tokens[0]
        if head.text == "obj":
            expect_arity(tokens, 3, "obj <id> <species>")
            u, s = tokens[1], tokens[2]
            if u.text in species_of:
                raise ParseError(f"duplicate object {u.text!r}", u.line, u.column)
            if not sig.has_type(s.text):
                raise ParseError(f"unknown type {s.text!r}", s.line, s.column)
            if not sig.is_species(s.text):
                raise ParseError(f"{s.text} is not a species", s.line, s.column)
            universe.append(u.text)
            species_of[u.text] = s.text
        elif head.text == "val":
            expect_arity(tokens, 4, "val <obj> <attr> <obj>")
            u, a, v = tokens[1:]
            if not sig.has_attr(a.text):
                raise ParseError(f"unknown attribute {a.text!r}", a.line, a.column)
            if u.text in attr_fun[a.text]:
                raise ParseError(f"duplicate value for {a.text}({u.text})", head.line, head.column)
            attr_fun[a.text][u.text] = v.text
            vals.append(tokens)
        else:
            raise ParseError(f"unknown directive {head.text!r}", head.line, head.column)
    for tokens in vals:
        for tok in (tokens[1], tokens[3]):
            if tok.text not in species_of:
                raise ParseError(f"undeclared object {tok.text!r}", tok.line, tok.column)
    interp = FiniteInterpretation(tuple(universe), species_of, attr_fun)
    validate_interpretation(interp, sig)
    return interp


def format_interpretation(i: FiniteInterpretation) -> str:
    lines = [f"obj {u} {i.species_of[u]}" for u in i.universe]
    for u in i.universe:
        for a, fn in i.attr_fun.items():
            if u in fn:
                lines.append(f"val {u} {a} {fn[u]}")
    return "\n".join(lines) + "\n"


def path_eval(i: FiniteInterpretation, u: str, path: Sequence[str]) -> str | None:
    """Apply the attribute functions along ``path`` starting at ``u``."""
    i.require_object(u)
    for a in path:
        u = i.value(a, u)
        if u is None:
            return None
    return u


def abstraction(i: FiniteInterpretation, u: str) -> MorphAutomaton:
    """The machine of objects reachable from ``u``, rooted at ``u``."""
    i.require_object(u)
    order = [u]
    seen = {u}
    delta = {}
    queue = deque([u])
    while queue:
        x = queue.popleft()
        for a, fn in i.attr_fun.items():
            y = fn.get(x)
            if y is None:
                continue
            delta[(x, a)] = y
            if y not in seen:
                seen.add(y)
                order.append(y)
                queue.append(y)
    return MorphAutomaton(tuple(order), u, delta, {x: i.species_of[x] for x in order})


def truth_of(f: FeatureStructure, i: FiniteInterpretation, u: str, sig: Signature) -> bool:
    return approximates(f, abstraction(i, u), sig)


def truth_bounded(
    f: FeatureStructure, i: FiniteInterpretation, u: str, depth: int, sig: Signature
) -> bool:
    """Check the truth conditions on every path of length <= ``depth``.

    For each path that runs to some state of ``f``, its value at ``u`` must be
    defined, all paths running to the same state must reach the same object,
    and the state's type must subsume that object's species.
    """
    i.require_object(u)
    reached: dict[str, set[str | None]] = defaultdict(set)
    layer = [((), f.root)]
    for length in range(depth + 1):
        for path, q in layer:
            reached[q].add(path_eval(i, u, path))
        if length == depth:
            break
        layer = [(path + (a,), q2) for path, q in layer for a, q2 in f.successors(q).items()]
    for q, objs in reached.items():
        if None in objs or len(objs) != 1:
            return False
        (obj,) = objs
        if not sig.sub(f.theta[q], i.species_of[obj]):
            return False
    return True
