import itertools

from hypothesis import given, settings

from generators import random_feature_structure, random_signature, rngs
from tfs import (
    MorphAutomaton,
    abstraction,
    approximates,
    check_morph,
    forget,
    isomorphic,
    morph_to_interpretation,
    parse_feature_structure,
    res_refined,
    resolved,
    witness,
)
from tfs.interp import validate_interpretation
from tfs.morph import homomorphism, induced_morph, morph_violations


def morph(sig, text):
    return parse_feature_structure(text, sig, MorphAutomaton)


def test_check_morph_examples(sig_a):
    assert check_morph(morph(sig_a, "root n\nnode n a\nedge n f n\n"), sig_a)
    assert not check_morph(morph(sig_a, "root n\nnode n a\n"), sig_a)
    assert check_morph(morph(sig_a, "root n\nnode n b\n"), sig_a)


def test_check_morph_reasons(sig_a):
    assert morph_violations(morph(sig_a, "root n\nnode n a\n"), sig_a) == [
        "node n: missing f edge required by a"
    ]
    assert not check_morph(morph(sig_a, "root n\nnode n t\n"), sig_a)
    assert not check_morph(morph(sig_a, "root n\nnode n a\nnode m b\nedge n f m\n"), sig_a)
    assert not check_morph(morph(sig_a, "root n\nnode n b\nedge n f n\n"), sig_a)


def test_witness_already_total(f2, sig_a):
    r = resolved(f2, {"q0": "a"}, sig_a)
    m = witness(r, sig_a)
    assert m.nodes == ("q0",)
    assert dict(m.delta) == {("q0", "f"): "q0"}
    assert dict(m.labels) == {"q0": "a"}


def test_witness_adds_canonical_node(f1, sig_a):
    m = witness(resolved(f1, {"q0": "a"}, sig_a), sig_a)
    assert m.nodes == ("q0", "sp-a")
    assert dict(m.delta) == {("q0", "f"): "sp-a", ("sp-a", "f"): "sp-a"}
    assert dict(m.labels) == {"q0": "a", "sp-a": "a"}
    assert check_morph(m, sig_a)


def test_witness_nothing_to_close(f1, sig_a):
    m = witness(resolved(f1, {"q0": "b"}, sig_a), sig_a)
    assert m.nodes == ("q0",) and not m.delta and m.labels["q0"] == "b"


def test_canonical_name_avoids_clash(sig_a):
    fs = parse_feature_structure("root sp-a\nnode sp-a t\n", sig_a)
    m = witness(resolved(fs, {"sp-a": "a"}, sig_a), sig_a)
    assert m.nodes == ("sp-a", "sp-a-")


def test_approximates_examples(f1, f2, f3, sig_a):
    m2 = witness(resolved(f2, {"q0": "a"}, sig_a), sig_a)
    assert approximates(f2, m2, sig_a)
    assert not approximates(f3, m2, sig_a)
    m1 = witness(resolved(f1, {"q0": "a"}, sig_a), sig_a)
    assert approximates(f1, m1, sig_a)
    assert homomorphism(f1, m1, sig_a) == {"q0": "q0"}


def test_approximates_needs_consistent_edges(sig_a):
    # two f-paths converge in the structure but not in the machine
    m = morph(sig_a, "root n\nnode n a\nnode k a\nedge n f k\nedge k f k\n")
    fs = parse_feature_structure("root q\nnode q t\nedge q f q\n", sig_a)
    assert not approximates(fs, m, sig_a)
    assert approximates(parse_feature_structure("root q\nnode q t\nnode r a\nedge q f r\nedge r f r\n", sig_a), m, sig_a)


def test_morph_to_interpretation(f2, sig_a):
    m = witness(resolved(f2, {"q0": "a"}, sig_a), sig_a)
    i = morph_to_interpretation(m, sig_a)
    assert i.universe == ("q0",)
    assert dict(i.species_of) == {"q0": "a"}
    assert dict(i.attr_fun["f"]) == {"q0": "q0"}
    single = morph(sig_a, "root n\nnode n b\n")
    i = morph_to_interpretation(single, sig_a)
    assert i.universe == ("n",) and not i.attr_fun["f"]


def test_round_trip_small_machines(sig_a):
    texts = [
        "root n\nnode n a\nedge n f n\n",
        "root n\nnode n b\n",
        "root n\nnode n a\nnode k a\nedge n f k\nedge k f k\n",
        "root n\nnode n a\nnode k a\nnode j a\nedge n f k\nedge k f j\nedge j f n\n",
    ]
    for text in texts:
        m = morph(sig_a, text)
        assert isomorphic(abstraction(morph_to_interpretation(m, sig_a), m.root), m)


@settings(max_examples=200, deadline=None)
@given(rngs())
def test_witness_properties(rnd):
    sig = random_signature(rnd, min_attrs=1, approp_p=0.6)
    fs = random_feature_structure(rnd, sig, max_states=5)
    for r in res_refined(fs, sig).resolvants()[:4]:
        m = witness(r, sig)
        assert check_morph(m, sig)
        assert approximates(forget(r), m, sig)
        assert approximates(fs, m, sig)
        assert len(m.nodes) <= len(r.states) + len(sig.species)
        # the machine read as a feature structure approximates itself
        assert approximates(m, m, sig)
        i = morph_to_interpretation(m, sig)
        validate_interpretation(i, sig)
        assert isomorphic(abstraction(i, m.root), m)


@settings(max_examples=100, deadline=None)
@given(rngs())
def test_homomorphism_is_unique(rnd):
    sig = random_signature(rnd, min_attrs=1, approp_p=0.6)
    fs = random_feature_structure(rnd, sig, max_states=4)
    for r in res_refined(fs, sig).resolvants()[:2]:
        m = witness(r, sig)
        h = homomorphism(fs, m, sig)
        assert h is not None
        # brute force over every map: only h is an edge- and root-preserving refinement
        found = []
        for image in itertools.product(m.nodes, repeat=len(fs.states)):
            g = dict(zip(fs.states, image))
            if g[fs.root] != m.root:
                continue
            if all(m.successors(g[q]).get(a) == g[q2] for (q, a), q2 in fs.delta.items()) and all(
                sig.sub(fs.theta[q], m.labels[g[q]]) for q in fs.states
            ):
                found.append(g)
        assert found == [h]


@settings(max_examples=100, deadline=None)
@given(rngs())
def test_isomorphic_machines_induce_same_path_sets(rnd):
    sig = random_signature(rnd, max_species=2, min_attrs=1, max_attrs=2, approp_p=0.6)
    fs = random_feature_structure(rnd, sig, max_states=1)
    rs = res_refined(fs, sig).resolvants()
    if not rs:
        return
    m = witness(rs[0], sig)
    assert len(m.nodes) <= 3
    # rename every node and shuffle declaration order
    rename = {q: f"n{k}" for k, q in enumerate(rnd.sample(m.nodes, len(m.nodes)))}
    order = rnd.sample(m.nodes, len(m.nodes))
    if m.root in order:
        order.remove(m.root)
    renamed = MorphAutomaton(
        tuple(rename[q] for q in [m.root, *order]),
        rename[m.root],
        {(rename[q], a): rename[q2] for (q, a), q2 in m.delta.items()},
        {rename[q]: m.labels[q] for q in m.nodes},
    )
    assert isomorphic(m, renamed)
    bound = 2 * len(m.nodes)
    assert induced_morph(m, bound) == induced_morph(renamed, bound)
