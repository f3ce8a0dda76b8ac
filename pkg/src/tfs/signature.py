"""Finite type signatures: subsumption order, species, appropriateness.

Subsumption is read "general before specific": ``sub(sig, t1, t2)`` holds when
``t1`` is at least as general as ``t2``.  Species are the maximal types of the
order, i.e. the most specific ones.  A signature file declares refinement
edges (a child refines its parents) and the order is their reflexive and
transitive closure.

Everything is validated on construction, so a :class:`Signature` instance
always satisfies the partial-order and appropriateness-monotonicity
conditions.
"""

from __future__ import annotations

from types import MappingProxyType
from typing import Iterable, Mapping

from ._lines import Token, expect_arity, tokenize, valid_ident
from .errors import MonotonicityError, ParseError, SignatureError, UnknownSymbolError

__all__ = [
    "Signature",
    "parse_signature",
    "format_signature",
    "transitive_closure",
    "sub",
    "app",
    "species_at_least",
    "check_rational",
]


def transitive_closure(
    elements: Iterable[str], pairs: Iterable[tuple[str, str]]
) -> dict[str, frozenset[str]]:
    """Reflexive-transitive closure of ``pairs``.

    Returns a map from each element to the set of elements it reaches.
    """
    elements = list(elements)
    succ: dict[str, list[str]] = {e: [] for e in elements}
    for a, b in pairs:
        succ[a].append(b)
    closed = {}
    for start in elements:
        seen = {start}
        stack = [start]
        while stack:
            for nxt in succ[stack.pop()]:
                if nxt not in seen:
                    seen.add(nxt)
                    stack.append(nxt)
        closed[start] = frozenset(seen)
    return closed


class Signature:
    """An immutable, validated finite signature.

    ``refinements`` are pairs ``(general, specific)``; they need not be closed.
    ``approp`` maps ``(type, attr)`` to a type.  Declaration order of
    ``types`` fixes the order of :attr:`species`, which is used wherever a
    canonical species must be chosen.
    """

    __slots__ = ("types", "attrs", "species", "approp", "_above", "_type_set", "_attr_set")

    def __init__(
        self,
        types: Iterable[str],
        attrs: Iterable[str] = (),
        refinements: Iterable[tuple[str, str]] = (),
        approp: Mapping[tuple[str, str], str] | None = None,
    ):
        types = tuple(types)
        attrs = tuple(attrs)
        _check_names("type", types)
        _check_names("attribute", attrs)
        type_set = frozenset(types)
        attr_set = frozenset(attrs)

        refinements = list(refinements)
        for general, specific in refinements:
            for t in (general, specific):
                if t not in type_set:
                    raise UnknownSymbolError(f"unknown type {t!r} in refinement")
        above = transitive_closure(types, refinements)
        for t in types:
            for u in above[t]:
                if u != t and t in above[u]:
                    raise SignatureError(f"refinement cycle between {t!r} and {u!r}")

        table: dict[tuple[str, str], str] = {}
        for (t, a), v in (approp or {}).items():
            if t not in type_set or v not in type_set:
                raise UnknownSymbolError(f"unknown type in approp({t}, {a}) = {v}")
            if a not in attr_set:
                raise UnknownSymbolError(f"unknown attribute {a!r} in approp({t}, {a})")
            table[(t, a)] = v

        set_ = object.__setattr__
        set_(self, "types", types)
        set_(self, "attrs", attrs)
        set_(self, "_type_set", type_set)
        set_(self, "_attr_set", attr_set)
        set_(self, "_above", above)
        set_(self, "species", tuple(t for t in types if above[t] == {t}))
        set_(self, "approp", MappingProxyType(table))
        self._check_monotone()

    def __setattr__(self, name, value):
        raise AttributeError("Signature is immutable")

    def _check_monotone(self) -> None:
        for t in self.types:
            for a in self.attrs:
                v = self.approp.get((t, a))
                if v is None:
                    continue
                for t2 in self.types:
                    if t2 == t or t2 not in self._above[t]:
                        continue
                    v2 = self.approp.get((t2, a))
                    if v2 is None:
                        raise MonotonicityError(t, t2, a, f"approp({t2}, {a}) is undefined")
                    if v2 not in self._above[v]:
                        raise MonotonicityError(
                            t, t2, a, f"approp({t}, {a}) = {v} does not subsume approp({t2}, {a}) = {v2}"
                        )

    # lookups

    def has_type(self, t: str) -> bool:
        return t in self._type_set

    def has_attr(self, a: str) -> bool:
        return a in self._attr_set

    def require_type(self, t: str) -> None:
        if t not in self._type_set:
            raise UnknownSymbolError(f"unknown type {t!r}")

    def require_attr(self, a: str) -> None:
        if a not in self._attr_set:
            raise UnknownSymbolError(f"unknown attribute {a!r}")

    def sub(self, t1: str, t2: str) -> bool:
        self.require_type(t1)
        self.require_type(t2)
        return t2 in self._above[t1]

    def app(self, t: str, a: str) -> str | None:
        self.require_type(t)
        self.require_attr(a)
        return self.approp.get((t, a))

    def above(self, t: str) -> frozenset[str]:
        """All types ``t`` subsumes (including ``t``)."""
        self.require_type(t)
        return self._above[t]

    def species_at_least(self, t: str) -> tuple[str, ...]:
        above = self.above(t)
        return tuple(s for s in self.species if s in above)

    def is_species(self, t: str) -> bool:
        return t in self._type_set and self._above[t] == {t}

    def order_pairs(self) -> frozenset[tuple[str, str]]:
        return frozenset((t, u) for t in self.types for u in self._above[t])

    def _key(self):
        return (self.types, self.attrs, self.order_pairs(), frozenset(self.approp.items()))

    def __eq__(self, other):
        if not isinstance(other, Signature):
            return NotImplemented
        return self is other or self._key() == other._key()

    def __hash__(self):
        return hash(self._key())

    def __repr__(self):
        return f"Signature(types={list(self.types)}, species={list(self.species)}, attrs={list(self.attrs)})"


def _check_names(kind: str, names: tuple[str, ...]) -> None:
    seen = set()
    for n in names:
        if not valid_ident(n):
            raise SignatureError(f"invalid {kind} name {n!r}")
        if n in seen:
            raise SignatureError(f"duplicate {kind} {n!r}")
        seen.add(n)


# module-level aliases mirroring the method surface


def sub(sig: Signature, t1: str, t2: str) -> bool:
    return sig.sub(t1, t2)


def app(sig: Signature, t: str, a: str) -> str | None:
    return sig.app(t, a)


def species_at_least(sig: Signature, t: str) -> tuple[str, ...]:
    return sig.species_at_least(t)


def check_rational(sig: Signature) -> bool:
    """Every appropriate value of a species can be refined to some species.

    Always true for a finite order, but checked explicitly.
    """
    for s in sig.species:
        for a in sig.attrs:
            v = sig.approp.get((s, a))
            if v is not None and not sig.species_at_least(v):
                return False
    return True


def parse_signature(text: str) -> Signature:
    """Parse the line-based signature format.

    Directives::

        type <name> [refines <parent> ...]
        attr <name>
        approp <type> <attr> <type>
    """
    types: list[str] = []
    attrs: list[str] = []
    refinements: list[tuple[str, str]] = []
    approp: dict[tuple[str, str], str] = {}
    declared_types: set[str] = set()
    declared_attrs: set[str] = set()

    def known_type(tok: Token) -> str:
        if tok.text not in declared_types:
            raise ParseError(f"undeclared type {tok.text!r}", tok.line, tok.column)
        return tok.text

    for tokens in tokenize(text):
        head = tokens[0]
        if head.text == "type":
            if len(tokens) == 2:
                pass
            elif len(tokens) >= 4 and tokens[2].text == "refines":
                pass
            else:
                expect_arity(tokens, 2, "type <name> [refines <name> ...]")
            name = tokens[1]
            if name.text in declared_types:
                raise ParseError(f"duplicate type {name.text!r}", name.line, name.column)
            parents = [known_type(tok) for tok in tokens[3:]]
            declared_types.add(name.text)
            types.append(name.text)
            refinements.extend((p, name.text) for p in parents)
        elif head.text == "attr":
            expect_arity(tokens, 2, "attr <name>")
            name = tokens[1]
            if name.text in declared_attrs:
                raise ParseError(f"duplicate attribute {name.text!r}", name.line, name.column)
            declared_attrs.add(name.text)
            attrs.append(name.text)
        elif head.text == "approp":
            expect_arity(tokens, 4, "approp <type> <attr> <type>")
            t = known_type(tokens[1])
            a = tokens[2]
            if a.text not in declared_attrs:
                raise ParseError(f"undeclared attribute {a.text!r}", a.line, a.column)
            v = known_type(tokens[3])
            if (t, a.text) in approp:
                raise ParseError(f"duplicate approp entry for ({t}, {a.text})", head.line, head.column)
            approp[(t, a.text)] = v
        else:
            raise ParseError(f"unknown directive {head.text!r}", head.line, head.column)

    if not types:
        raise ParseError("signature declares no types")
    return Signature(types, attrs, refinements, approp)


def format_signature(sig: Signature) -> str:
    """Serialize with immediate-parent refinement edges (the Hasse diagram)."""
    lines = []
    for t in sig.types:
        parents = [
            u for u in sig.types
            if u != t and sig.sub(u, t)
            and not any(w not in (u, t) and sig.sub(u, w) and sig.sub(w, t) for w in sig.types)
        ]
        lines.append(f"type {t}" + (f" refines {' '.join(parents)}" if parents else ""))
    lines.extend(f"attr {a}" for a in sig.attrs)
    lines.extend(f"approp {t} {a} {v}" for (t, a), v in sig.approp.items())
    return "\n".join(lines) + "\n"
