import random

import pytest
from hypothesis import given, settings, strategies as st

from stringnet.category import BUILTINS, builtin, total_dim_squared
from stringnet.graph import (
    EmbeddedGraph, GraphSum, MultiColorGraph, cut_annulus, edge_crossing_identity_check,
    evaluate, expand_colors, graph_from_json, graph_to_json, insert_regular_loop,
    merge_vertices, random_planar_graph, resolve_cable,
)
from stringnet.homspaces import HomVector, identity_vector, pairing, rotate, trees
from stringnet.morphisms import Mor, Obj
from test_morphisms import random_mor


def scalar(v):
    assert v.labels == ()
    return v.data.get((), 0)


@pytest.mark.parametrize("name", BUILTINS)
def test_loop_is_dimension(name):
    cat = builtin(name)
    for x in range(cat.rank):
        g = EmbeddedGraph(cat)
        g.add_loop({x: cat.field.one})
        assert scalar(evaluate(g)) == cat.qdim[x]


def test_empty_graph_is_one():
    cat = builtin("fibonacci")
    assert scalar(evaluate(EmbeddedGraph(cat))) == 1


def test_single_vertex_is_its_color():
    cat = builtin("ising")
    s = cat.lookup("sigma")
    rng = random.Random(2)
    w = (s, s, s, s)
    v = HomVector(cat, w, {t: cat.field(rng.randint(1, 5)) for t in trees(cat, w)})
    g = EmbeddedGraph(cat)
    g.boundary = list(g.add_vertex(v))
    assert evaluate(g) == v


@pytest.mark.parametrize("name,i", [("fibonacci", "tau"), ("ising", "psi")])
def test_tadpole_vanishes(name, i):
    cat = builtin(name)
    i = cat.lookup(i)
    rng = random.Random(0)
    # closed blob B in <i, a, a*> hanging off a vertex C in <i*, y, z>
    a = next(a for a in range(cat.rank) if trees(cat, (i, a, cat.dual[a])))
    yz = next((y, z) for y in range(cat.rank) for z in range(cat.rank) if trees(cat, (cat.dual[i], y, z)))
    g = EmbeddedGraph(cat)
    wb = (i, a, cat.dual[a])
    db = g.add_vertex(HomVector(cat, wb, {t: cat.field(rng.randint(1, 3)) for t in trees(cat, wb)}))
    g.connect(db[1], db[2])
    wc = (cat.dual[i],) + yz
    dc = g.add_vertex(HomVector(cat, wc, {t: cat.field(rng.randint(1, 3)) for t in trees(cat, wc)}))
    g.connect(db[0], dc[0])
    g.boundary = [dc[1], dc[2]]
    assert evaluate(g.validate()).is_zero()


@pytest.mark.parametrize("name", BUILTINS)
def test_regular_circle(name):
    cat = builtin(name)
    D2 = total_dim_squared(cat)
    once = insert_regular_loop(EmbeddedGraph(cat))
    assert scalar(evaluate(once)) == D2
    twice = GraphSum([(c * c2, h2) for c, h in once.terms for c2, h2 in insert_regular_loop(h).terms])
    assert scalar(evaluate(twice)) / D2 == scalar(evaluate(once))


def test_expand_simple_colors_is_identity():
    cat = builtin("fibonacci")
    g = random_planar_graph(cat, random.Random(4), n_ops=4)
    summands = {d: [g.color[d]] for d in g.color}
    fam = {v: {(0,) * len(ds): g.vec[v]} for v, ds in g.rot.items()}
    gs = expand_colors(MultiColorGraph(cat, g.rot, summands, g.pair, fam, g.boundary, g.loops))
    assert len(gs.terms) == 1 and evaluate(gs) == evaluate(g)


def test_expand_unit_plus_unit_edge():
    cat = builtin("vec_z2")
    F = cat.field
    a = [F(2), F(3)]
    b = [F(5), F(7)]
    one = HomVector.basis_vector(cat, (0,), trees(cat, (0,))[0])
    rot = {0: [0], 1: [1]}
    fam = {0: {(0,): one * a[0], (1,): one * a[1]}, 1: {(0,): one * b[0], (1,): one * b[1]}}
    mg = MultiColorGraph(cat, rot, {0: [0, 0], 1: [0, 0]}, {0: 1, 1: 0}, fam, [])
    gs = expand_colors(mg)
    assert len(gs.terms) == 2
    assert scalar(evaluate(gs)) == a[0] * b[0] + a[1] * b[1]


def test_merge_two_univalent_vertices_is_pairing():
    cat = builtin("ising")
    u = cat.unit
    v1 = HomVector(cat, (u,), {trees(cat, (u,))[0]: cat.field(3)})
    v2 = HomVector(cat, (u,), {trees(cat, (u,))[0]: cat.field(-2)})
    g = EmbeddedGraph(cat)
    d1, d2 = g.add_vertex(v1)[0], g.add_vertex(v2)[0]
    g.connect(d1, d2)
    h = merge_vertices(g, (d1, d2))
    assert len(h.rot) == 1
    assert scalar(evaluate(h)) == pairing(v1, v2) == scalar(evaluate(g))


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 2**32))
def test_merge_then_evaluate_fibonacci(seed):
    cat = builtin("fibonacci")
    rng = random.Random(seed)
    g = random_planar_graph(cat, rng, n_ops=rng.randint(1, 3))
    inner = [d for d in g.pair if g.vertex_of()[d] != g.vertex_of()[g.pair[d]]]
    if not inner:
        return
    d = rng.choice(inner)
    h = merge_vertices(g, (d, g.pair[d]))
    assert evaluate(h) == evaluate(g)


@pytest.mark.parametrize("name", BUILTINS)
def test_isotopy_invariance(name):
    """Random contraction orders and rotated boundary starts give the same vector."""
    cat = builtin(name)
    rng = random.Random(hash(name) % 1000)
    for _ in range(50):
        g = random_planar_graph(cat, rng, n_ops=rng.randint(2, 6))
        ref = evaluate(g)
        assert evaluate(g, random.Random(rng.random())) == ref
        if g.boundary:
            h = g.copy()
            h.boundary = g.boundary[1:] + g.boundary[:1]
            assert rotate(evaluate(h)) == ref


def resolvable_cables(g, size):
    for v, ds in g.rot.items():
        for k in range(len(ds)):
            cab = [ds[(k + j) % len(ds)] for j in range(size)]
            if len(set(cab)) == size and all(d in g.pair for d in cab):
                ends = {g.vertex_of()[g.pair[d]] for d in cab}
                if v not in ends:
                    yield cab


@pytest.mark.parametrize("name", BUILTINS)
def test_resolution_of_identity(name):
    cat = builtin(name)
    rng = random.Random(3)
    checked = 0
    for _ in range(60):
        g = random_planar_graph(cat, rng, n_ops=rng.randint(3, 7))
        for size in (1, 2, 3):
            cab = next(resolvable_cables(g, size), None)
            if cab is not None:
                assert evaluate(resolve_cable(g, cab, None)) == evaluate(g)
                checked += 1
    assert checked >= 10


@pytest.mark.parametrize("name", ["fibonacci", "ising"])
def test_nested_strands_match_resolved_cable(name):
    """Two nested arcs (disconnected) evaluate like their connected resolution."""
    cat = builtin(name)
    x = cat.rank - 1
    g = EmbeddedGraph(cat)
    A, C, B, D = (g.add_vertex(identity_vector(cat, x)) for _ in range(4))
    g.connect(A[1], C[0])
    g.connect(B[1], D[0])
    g.boundary = [A[0], B[0], D[1], C[1]]
    ref = evaluate(g.validate())
    assert not ref.is_zero()
    assert evaluate(resolve_cable(g, [B[1], A[1]], None)) == ref
    assert evaluate(resolve_cable(g, [C[0], D[0]], None)) == ref


def test_edge_crossing_identity_examples():
    cat = builtin("fibonacci")
    t = cat.lookup("tau")
    T = Obj.simple(cat, t)
    ok, lhs, rhs = edge_crossing_identity_check(T, T, Mor.identity(T), t)
    assert ok and lhs and lhs == {(0, 0): 1 / cat.qdim[t]}
    ok, lhs, rhs = edge_crossing_identity_check(T, T, Mor.zero(T, T), t)
    assert ok and lhs == rhs == {}


def test_edge_crossing_twenty_random_instances():
    rng = random.Random(17)
    done = 0
    while done < 20:
        cat = builtin(BUILTINS[done % len(BUILTINS)])
        V = Obj.word(cat, tuple(rng.randrange(cat.rank) for _ in range(2)))
        W = Obj.word(cat, tuple(rng.randrange(cat.rank) for _ in range(2)))
        i = rng.randrange(cat.rank)
        Phi = random_mor(cat, V, W, rng)
        ok, lhs, rhs = edge_crossing_identity_check(V, W, Phi, i)
        assert ok
        done += 1


@pytest.mark.parametrize("name", BUILTINS)
def test_json_round_trip(name):
    cat = builtin(name)
    rng = random.Random(8)
    for _ in range(10):
        g = random_planar_graph(cat, rng, n_ops=5)
        obj = graph_to_json(g)
        again = graph_from_json(cat, obj)
        assert graph_to_json(again) == obj
        assert evaluate(again) == evaluate(g)


def test_annulus_cut_of_core_loop():
    cat = builtin("fibonacci")
    t = cat.lookup("tau")
    g = EmbeddedGraph(cat, ambient="annulus")
    d = g.add_vertex(identity_vector(cat, t))
    g.connect(d[0], d[1])
    g.cut = [d[1]]
    pieces = cut_annulus(g.validate())
    assert set(pieces) == {t}
    v = evaluate(pieces[t])
    assert len(v.labels) == 2 and not v.is_zero()
