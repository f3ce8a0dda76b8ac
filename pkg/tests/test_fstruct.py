import pytest
from hypothesis import given, settings

from generators import random_feature_structure, random_resolved_instance, random_signature, rngs
from tfs import (
    FeatureStructure,
    ParseError,
    ResolvedFeatureStructure,
    StructureError,
    UnknownSymbolError,
    forget,
    format_feature_structure,
    is_resolvant_of,
    isomorphic,
    parse_feature_structure,
    resolved,
    run,
)
from tfs.fstruct import shortest_paths


def test_single_node(f1):
    assert f1.states == ("q0",)
    assert f1.root == "q0"
    assert dict(f1.delta) == {}
    assert dict(f1.theta) == {"q0": "t"}


def test_self_loop(f2):
    assert dict(f2.delta) == {("q0", "f"): "q0"}


def test_unreachable_state_named(sig_a):
    with pytest.raises(StructureError, match="q1"):
        parse_feature_structure("root q0\nnode q0 t\nnode q1 a\n", sig_a)


@pytest.mark.parametrize(
    "text",
    [
        "node q0 t\n",
        "root q0\n",
        "root q0\nroot q0\nnode q0 t\n",
        "root q0\nnode q0 zz\n",
        "root q0\nnode q0 t\nedge q0 g q0\n",
        "root q0\nnode q0 t\nedge q0 f q0\nedge q0 f q0\n",
        "root q0\nnode q0 t\nnode q0 a\n",
        "root q0\nnode q0 t\nedge q0 f q9\n",
        "root q0\nnode q0\n",
    ],
)
def test_parse_errors(sig_a, text):
    with pytest.raises(ParseError):
        parse_feature_structure(text, sig_a)


def test_run(f1, f2, sig_a):
    assert run(f2, ()) == "q0"
    assert run(f2, ("f", "f", "f")) == "q0"
    assert run(f1, ("f",)) is None
    with pytest.raises(UnknownSymbolError):
        run(f1, ("g",), sig_a)


def test_resolvant_of(f1, f2, sig_a):
    assert is_resolvant_of(f2.with_outputs({"q0": "a"}, ResolvedFeatureStructure), f2, sig_a)
    assert not is_resolvant_of(f2.with_outputs({"q0": "b"}, ResolvedFeatureStructure), f2, sig_a)
    assert not is_resolvant_of(f1.with_outputs({"q0": "a"}, ResolvedFeatureStructure), f2, sig_a)


def test_resolved_constructor_checks(f2, sig_a):
    r = resolved(f2, {"q0": "a"}, sig_a)
    assert r.rho == {"q0": "a"}
    with pytest.raises(StructureError):
        resolved(f2, {"q0": "b"}, sig_a)
    with pytest.raises(StructureError):
        resolved(f2, {"q0": "t"}, sig_a)


def test_format_round_trip(sig_a):
    text = "root r\nnode r t\nnode x a\nedge r f x\nedge x f x\n"
    fs = parse_feature_structure(text, sig_a)
    assert format_feature_structure(fs) == text
    assert parse_feature_structure(format_feature_structure(fs), sig_a) == fs


def test_structural_validation():
    with pytest.raises(StructureError):
        FeatureStructure((), "q", {}, {})
    with pytest.raises(StructureError):
        FeatureStructure(("q",), "p", {}, {"q": "t"})
    with pytest.raises(StructureError):
        FeatureStructure(("q",), "q", {}, {})


def test_isomorphic_ignores_names(sig_a):
    a = parse_feature_structure("root x\nnode x t\nnode y a\nedge x f y\n", sig_a)
    b = parse_feature_structure("root m\nnode n a\nnode m t\nedge m f n\n", sig_a)
    c = parse_feature_structure("root m\nnode n b\nnode m t\nedge m f n\n", sig_a)
    assert isomorphic(a, b)
    assert not isomorphic(a, c)


@settings(max_examples=200, deadline=None)
@given(rngs())
def test_run_properties(rnd):
    sig = random_signature(rnd, min_attrs=1)
    fs = random_feature_structure(rnd, sig)
    # every state reachable by a path shorter than the number of states
    paths = shortest_paths(fs)
    assert set(paths) == set(fs.states)
    for q, p in paths.items():
        assert len(p) < len(fs.states)
        assert run(fs, p, sig) == q
    # prefix monotonicity over all paths of length <= 3
    frontier = [()]
    for _ in range(3):
        frontier = [p + (a,) for p in frontier for a in sig.attrs]
        for p in frontier:
            if run(fs, p) is not None:
                for k in range(len(p)):
                    assert run(fs, p[:k]) is not None


@settings(max_examples=100, deadline=None)
@given(rngs())
def test_forget_of_resolved_is_resolvant(rnd):
    sig = random_signature(rnd, min_attrs=1, approp_p=0.7)
    fs = random_resolved_instance(rnd, sig, rnd.randint(1, 5), keep_p=1.0)
    r = fs.with_outputs(fs.theta, ResolvedFeatureStructure)
    assert is_resolvant_of(r, forget(r), sig)
    assert isinstance(forget(r), FeatureStructure)
