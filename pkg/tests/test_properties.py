"""Randomized structure properties; the exhaustive suites live next to their
modules, these shake out the generic paths with hypothesis."""

from __future__ import annotations

import itertools

from hypothesis import given, settings
from hypothesis import strategies as st

from dislat import (
    adjunct_representation,
    canonical_code,
    classify,
    connectivity_report,
    elaborate,
    lattice_of_tree,
    non_ancestor_graph,
    parse,
    recognize,
    serialize,
    tree_of_lattice,
    zero_divisor_graph,
)
from dislat.treeiso import RootedTree


@st.composite
def rooted_trees(draw, max_nodes: int = 9) -> RootedTree:
    n = draw(st.integers(min_value=1, max_value=max_nodes))
    parents: dict[str, str | None] = {"t0": None}
    for i in range(1, n):
        parents[f"t{i}"] = f"t{draw(st.integers(min_value=0, max_value=i - 1))}"
    return RootedTree.from_parents(parents)


@st.composite
def adjunct_exprs(draw):
    """Random lower dismantlable adjunct expressions."""
    base_len = draw(st.integers(min_value=2, max_value=5))
    names = iter(f"e{i}" for i in range(40))
    base = ("0", *(next(names) for _ in range(base_len)))
    expr_src = ["chain " + " ".join(base) + ";"]
    # candidate hinges: anything at distance >= 2 above the bottom
    hingeable = list(base[2:])
    for _ in range(draw(st.integers(min_value=0, max_value=4))):
        hinge = draw(st.sampled_from(hingeable))
        chain = [next(names) for _ in range(draw(st.integers(min_value=1, max_value=3)))]
        expr_src.append(f"adjoin (0, {hinge}): " + " ".join(chain) + ";")
        hingeable.extend(chain[1:])  # chain tops stay atoms' covers; interiors gain height
    return parse("lattice t { " + " ".join(expr_src) + " }")


@given(rooted_trees())
@settings(max_examples=120, deadline=None)
def test_tree_lattice_round_trip(tree):
    lat = lattice_of_tree(tree)
    assert tree_of_lattice(lat).parent_map() == tree.parent_map()


@given(rooted_trees(), st.randoms())
@settings(max_examples=80, deadline=None)
def test_canonical_code_relabel_invariant(tree, rng):
    labels = list(tree.node_labels())
    shuffled = labels[:]
    rng.shuffle(shuffled)
    relabeled = tree.relabeled(dict(zip(labels, shuffled)))
    assert canonical_code(relabeled) == canonical_code(tree)


@given(rooted_trees())
@settings(max_examples=80, deadline=None)
def test_recognize_round_trips_non_ancestor_graphs(tree):
    graph = non_ancestor_graph(tree)
    back = recognize(graph)
    assert back is not None
    assert non_ancestor_graph(back) == graph


@given(adjunct_exprs())
@settings(max_examples=100, deadline=None)
def test_parse_serialize_identity(expr):
    assert parse(serialize(expr)) == expr


@given(adjunct_exprs())
@settings(max_examples=60, deadline=None)
def test_representation_round_trip(expr):
    lat = elaborate(expr)
    assert elaborate(adjunct_representation(lat)) == lat


@given(adjunct_exprs())
@settings(max_examples=60, deadline=None)
def test_zdg_connected_with_small_diameter(expr):
    lat = elaborate(expr)
    graph = zero_divisor_graph(lat)
    if graph.n:
        report = connectivity_report(graph)
        assert report["connected"] and report["diameter"] <= 3


@given(adjunct_exprs())
@settings(max_examples=60, deadline=None)
def test_meet_zero_iff_incomparable(expr):
    lat = elaborate(expr)
    bottom = lat.bottom_label
    for x, y in itertools.combinations(lat.labels, 2):
        if bottom in (x, y):
            continue
        assert (lat.meet(x, y) == bottom) == lat.incomparable(x, y)


@given(adjunct_exprs())
@settings(max_examples=60, deadline=None)
def test_adjunct_elements_sit_above_two_atoms(expr):
    lat = elaborate(expr)
    cls = classify(lat)
    for b in cls.adjunct_elements:
        assert sum(1 for p in cls.atoms if lat.leq(p, b)) >= 2
