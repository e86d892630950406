import random

import pytest
from hypothesis import given, settings, strategies as st

from stringnet.surfaces import (
    PLCWComplex, SurfaceError, dual_graph, move_m1, move_m2, parse_surface_spec,
    random_coarsening, random_refinement, split_cell, standard_surface, subdivide_edge,
    surface_from_json, surface_to_json,
)

SPECS = ["sphere(2)", "sphere(3)", "equator_sphere(2)", "equator_sphere(4)", "torus_square", "genus(2)", "genus(3)"]


def rename(cx, mapping):
    edges = {mapping.get(e, e): v for e, v in cx.edges.items()}
    cells = [[(mapping.get(e, e), s) for e, s in c] for c in cx.cells]
    return PLCWComplex(cx.vertices, edges, cells, cx.name)


@pytest.mark.parametrize("spec,chi", [("torus_square", 0), ("sphere(2)", 2), ("genus(2)", -2), ("genus(3)", -4), ("sphere(5)", 2)])
def test_euler_characteristic(spec, chi):
    assert parse_surface_spec(spec).euler_characteristic() == chi


@pytest.mark.parametrize("spec", SPECS)
def test_closed_and_valid(spec):
    cx = parse_surface_spec(spec)
    cx.validate(closed=True)
    for e, o in cx.occurrences().items():
        assert len(o) == 2


def test_dual_graph_examples():
    t = dual_graph(standard_surface("torus_square"))
    assert len(t.darts) == 1 and t.valence(0) == 4
    g2 = dual_graph(standard_surface("genus", 2))
    assert len(g2.darts) == 1 and g2.valence(0) == 8
    for k in (2, 3, 5):
        d = dual_graph(standard_surface("equator_sphere", k))
        assert len(d.darts) == 2
        assert len(d.edge_darts) == k
        for e, ((c1, _), (c2, _)) in d.edge_darts.items():
            assert {c1, c2} == {0, 1}


@pytest.mark.parametrize("spec", SPECS)
def test_dual_graph_counts(spec):
    cx = parse_surface_spec(spec)
    d = dual_graph(cx)
    assert len(d.edge_darts) == len(cx.edges)
    assert len(d.darts) == len(cx.cells)


def test_subdivide_then_m1_restores_torus():
    cx = standard_surface("torus_square")
    fine = subdivide_edge(cx, "a")
    back = move_m1(fine, "q0")
    assert rename(back, {"a_0": "a"}) == cx


def test_m2_on_equator_sphere():
    cx = standard_surface("equator_sphere", 2)
    e = sorted(cx.edges)[0]
    out = move_m2(cx, e)
    assert out.euler_characteristic() == 2
    assert len(out.cells) == len(cx.cells) - 1 and len(out.edges) == len(cx.edges) - 1


def test_split_then_m2_restores_cell_count():
    cx = standard_surface("torus_square")
    sp = split_cell(cx, 0, 0, 2)
    assert len(sp.cells) == 2
    back = move_m2(sp, "f0")
    assert len(back.cells) == 1 and back.euler_characteristic() == 0


@settings(max_examples=15, deadline=None)
@given(st.sampled_from(["torus_square", "genus(2)", "sphere(3)"]), st.integers(0, 2**32))
def test_random_moves_preserve_euler(spec, seed):
    rng = random.Random(seed)
    cx = parse_surface_spec(spec)
    chi = cx.euler_characteristic()
    for _ in range(10):
        cx, _ = random_refinement(cx, rng)
        cx.validate(closed=True)
        assert cx.euler_characteristic() == chi
    for _ in range(15):
        nxt, mv = random_coarsening(cx, rng)
        if mv is None:
            break
        cx = nxt
        cx.validate(closed=True)
        assert cx.euler_characteristic() == chi


@pytest.mark.parametrize("spec", SPECS)
def test_json_round_trip(spec):
    cx = parse_surface_spec(spec)
    obj = surface_to_json(cx)
    assert surface_from_json(obj) == cx
    assert surface_to_json(surface_from_json(obj)) == obj


def test_rejects_edge_used_three_times():
    with pytest.raises(SurfaceError):
        PLCWComplex(["v"], {"a": ("v", "v")}, [[("a", 1)], [("a", -1)], [("a", 1)]]).validate(closed=True)


def test_rejects_edge_used_once_in_closed_mode():
    with pytest.raises(SurfaceError):
        PLCWComplex(["v"], {"a": ("v", "v"), "b": ("v", "v")}, [[("a", 1), ("b", 1), ("a", -1)]]).validate(closed=True)


@pytest.mark.parametrize("text", ["klein", "sphere(x)", "genus(2", ""])
def test_bad_specs(text):
    with pytest.raises(SurfaceError):
        parse_surface_spec(text)
