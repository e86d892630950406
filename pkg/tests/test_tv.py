"""Turaev-Viro state spaces, plaquette projectors and move invariance."""

import random

import pytest
from hypothesis import given, settings, strategies as st

from stringnet.category import builtin
from stringnet.scalars import identity_matrix, mat_mul, mat_rank
from stringnet.surfaces import (
    parse_surface_spec,
    random_coarsening,
    random_refinement,
    standard_surface,
    subdivide_edge,
)
from stringnet.tv import (
    CapExceeded,
    b_p_matrix,
    build_state_space,
    projector_set,
    trace,
    tv_dimension,
    tv_report,
    verify_move_invariance,
)

CATS = ["vec_z2", "vec_z3", "fibonacci", "ising"]


@pytest.fixture(scope="module", params=CATS)
def cat(request):
    return builtin(request.param)


def test_state_space_dims():
    # dimension of the unprojected edge/vertex space on the square torus
    assert build_state_space(builtin("vec_z2"), parse_surface_spec("torus_square")).dim == 4
    assert build_state_space(builtin("fibonacci"), parse_surface_spec("torus_square")).dim == 5
    assert build_state_space(builtin("fibonacci"), parse_surface_spec("sphere(2)")).dim == 1


@pytest.mark.parametrize("surf", ["sphere(2)", "sphere(3)", "torus_square"])
def test_projectors_idempotent_commuting(cat, surf):
    P = projector_set(build_state_space(cat, parse_surface_spec(surf)))
    for p, B in P.B.items():
        assert mat_mul(B, B) == B
        # for an idempotent, trace equals rank
        assert trace(B) == mat_rank(B)
    for p in P.B:
        for q in P.B:
            assert P.commute(p, q)
    assert P.check()


@pytest.mark.parametrize("n", [2, 3, 4])
def test_sphere_is_one_dimensional(cat, n):
    assert tv_dimension(cat, standard_surface("sphere", n)) == 1


def test_torus_dimensions():
    expect = {"vec_z2": 4, "vec_z3": 9, "fibonacci": 4, "ising": 9}
    for name, d in expect.items():
        assert tv_dimension(builtin(name), parse_surface_spec("torus_square")) == d


def test_genus_two_vec_z2():
    assert tv_dimension(builtin("vec_z2"), parse_surface_spec("genus(2)")) == 16


def test_product_order_irrelevant():
    S = build_state_space(builtin("fibonacci"), parse_surface_spec("torus_square"))
    P = projector_set(S)
    vs = list(P.B)
    ranks = set()
    for seed in range(3):
        order = vs[:]
        random.Random(seed).shuffle(order)
        M = identity_matrix(S.dim, S.cat.field)
        for p in order:
            M = mat_mul(M, P.B[p])
        ranks.add(mat_rank(M))
    assert ranks == {4}


def test_report_fields():
    rep = tv_report(builtin("vec_z2"), parse_surface_spec("torus_square"), surface="torus_square")
    assert rep["dim_ZTV"] == 4 and rep["dim_HTV"] == 4
    assert rep["surface"] == "torus_square"


def test_cap_enforced():
    with pytest.raises(CapExceeded):
        build_state_space(builtin("ising"), parse_surface_spec("torus_square"), cap=3)


def test_weak_moves_fibonacci_torus():
    cx = standard_surface("torus_square")
    ok, rec = verify_move_invariance(builtin("fibonacci"), cx,
                                     [("subdivide", "a"), ("m1", "q0"), ("subdivide", "b"), ("split", 0, 0, 3)])
    assert ok
    assert all(r["dim_after"] == 4 for r in rec)


def test_strong_moves_fibonacci_torus():
    # subdivision then M1 at the new vertex: pi s = id and s pi = B_q
    cx = standard_surface("torus_square")
    ok, rec = verify_move_invariance(builtin("fibonacci"), cx,
                                     [("subdivide", "a"), ("m1", "q0")], strong=True)
    assert ok
    assert [r["transport"] for r in rec] == [True, True]


def test_strong_moves_ising_sphere():
    cx = standard_surface("sphere", 2)
    ok, rec = verify_move_invariance(builtin("ising"), cx,
                                     [("subdivide", "e0"), ("split", 0, 0, 1), ("m2", "f0")], strong=True)
    assert ok and rec[0]["transport"]


def test_sliding_past_vertex(cat):
    """A loop carried by B_q slides past a degree-2 vertex.

    On the subdivided torus the merge map intertwines every remaining B_p,
    which is the surface-level form of pushing the omega loop across the
    inserted vertex.
    """
    cx = standard_surface("torus_square")
    ok, rec = verify_move_invariance(cat, cx, [("subdivide", "b")], strong=True)
    assert ok and rec[0]["transport"] is True


def test_subdivided_vertex_projector_nontrivial():
    cx = parse_surface_spec("torus_square")
    fine = subdivide_edge(cx, "a")
    S = build_state_space(builtin("fibonacci"), fine)
    v = next(x for x in fine.vertices if x not in cx.vertices)
    B = b_p_matrix(S, v)
    assert 0 < mat_rank(B) < S.dim


@settings(max_examples=5, deadline=None)
@given(seed=st.integers(0, 10**6), name=st.sampled_from(["vec_z2", "fibonacci"]),
       surf=st.sampled_from(["sphere(2)", "torus_square"]))
def test_random_move_sequences(seed, name, surf):
    rng = random.Random(seed)
    cx = cur = parse_surface_spec(surf)
    moves = []
    for step in range(4):
        nxt, mv = (random_refinement if step < 2 else random_coarsening)(cur, rng)
        if mv is None:
            break
        moves.append(mv)
        cur = nxt
    ok, rec = verify_move_invariance(builtin(name), cx, moves)
    assert ok, rec
