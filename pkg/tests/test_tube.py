"""Tube algebra, Drinfeld center, induction and punctured spheres."""

import cmath
import functools

import pytest
from hypothesis import given, settings, strategies as st

from oracles import block_count_by_eigenvalues
from stringnet.category import builtin, total_dim_squared
from stringnet.tube import (
    TubeAlgebra,
    check_p_y,
    compute_center,
    graph_engine_agrees,
    hom_z_dim,
    induction,
    punctured_sphere_dim,
    unit_center_object,
    verify_adjunction_triangle,
)

CATS = ["vec_z2", "vec_z3", "fibonacci", "ising"]


@functools.lru_cache(maxsize=None)
def center(name):
    return compute_center(builtin(name))


@functools.lru_cache(maxsize=None)
def tube(name):
    return TubeAlgebra(builtin(name))


@pytest.mark.parametrize("name,dim", [("vec_z2", 4), ("vec_z3", 9), ("fibonacci", 7), ("ising", 12)])
def test_tube_dimension(name, dim):
    # sum over i, j of dim Hom(k i, j k) summed over k
    assert tube(name).dim == dim


@pytest.mark.parametrize("name", CATS)
def test_tube_unit_and_associativity(name):
    T = tube(name)
    u = T.unit
    for n in range(T.dim):
        assert T.mul(u, T.e(n)) == T.e(n) == T.mul(T.e(n), u)
    assert T.is_associative()


@pytest.mark.parametrize("name", CATS)
def test_tube_basis_roundtrip(name):
    T = tube(name)
    one = T.cat.field.one
    for n in range(T.dim):
        assert T.coords_of(*T.basis[n][:3], T.T(n)) == {n: one}


@pytest.mark.parametrize("name", CATS)
def test_product_matches_stacked_annuli(name):
    # the graph engine on the cut rectangle reproduces every structure constant
    assert graph_engine_agrees(tube(name))


@pytest.mark.parametrize("name,count", [("vec_z2", 4), ("vec_z3", 9), ("fibonacci", 4), ("ising", 9)])
def test_center_size_matches_eigen_oracle(name, count):
    C = center(name)
    assert len(C.simples) == count
    T = C.tube
    blocks, zdim = block_count_by_eigenvalues(T.struct, T.cat.field, seed=3)
    assert blocks == zdim == count


@pytest.mark.parametrize("name", CATS)
def test_half_braidings_valid(name):
    for Y in center(name).simples:
        assert Y.hb.invertible()
        assert Y.hb.unit_ok()
        assert Y.hb.hexagon_ok()


@pytest.mark.parametrize("name", CATS)
def test_global_dimension(name):
    C = center(name)
    assert C.dim_squared() == total_dim_squared(C.cat) ** 2


def test_toric_code_labels_and_twists():
    C = center("vec_z2")
    K = C.cat.field
    assert [Y.label for Y in C.simples] == ["1", "e", "m", "f"]
    assert [Y.twist for Y in C.simples] == [K.one, K.one, K.one, -K.one]
    assert all(Y.qdim == K.one for Y in C.simples)
    assert [Y.underlying_names(C.cat) for Y in C.simples] == [{"0": 1}, {"0": 1}, {"1": 1}, {"1": 1}]


def test_fibonacci_center_twists():
    C = center("fibonacci")
    K = C.cat.field
    tw = sorted((round(cmath.phase(complex(K.embed(Y.twist))) / cmath.pi * 5) for Y in C.simples))
    # theta in {1, 1, e^(4 pi i/5), e^(-4 pi i/5)}
    assert tw == [-4, 0, 0, 4]
    phi = (1 + 5 ** 0.5) / 2
    dims = sorted(float(K.embed(Y.qdim).real) for Y in C.simples)
    assert dims == pytest.approx([1, phi, phi, phi ** 2])


def test_ising_center_twists():
    # twists of Ising x conj(Ising): products theta_a conj(theta_b)
    C = center("ising")
    K = C.cat.field
    th = [1, cmath.exp(1j * cmath.pi / 8), -1]
    expect = sorted(cmath.phase(a * b.conjugate()) for a in th for b in th)
    got = sorted(cmath.phase(complex(K.embed(Y.twist))) for Y in C.simples)
    assert got == pytest.approx(expect, abs=1e-9)


@pytest.mark.parametrize("name", CATS)
def test_duals_pair_perfectly(name):
    C = center(name)
    seen = set()
    for Y in C.simples:
        Yd = C.dual_of(Y)
        assert C.dual_of(Yd) is Y
        seen.add(Yd.label)
    assert len(seen) == len(C.simples)


@pytest.mark.parametrize("name", ["vec_z2", "fibonacci", "ising"])
def test_induction_adjunction(name):
    C = center(name)
    for V in range(C.cat.rank):
        assert induction(C, V).ok


@pytest.mark.parametrize("name", ["vec_z2", "fibonacci", "ising"])
def test_p_y_projectors(name):
    C = center(name)
    for Y in C.simples:
        assert check_p_y(C, Y) == (True, True, True, True)


@pytest.mark.parametrize("name", ["vec_z2", "fibonacci", "ising"])
def test_adjunction_triangle(name):
    C = center(name)
    for V in range(C.cat.rank):
        for W in range(C.cat.rank):
            ok, n_src, n_mid = verify_adjunction_triangle(C, V, W)
            assert ok and n_src == n_mid


@pytest.mark.parametrize("name", CATS)
def test_punctured_sphere_one_and_two_points(name):
    C = center(name)
    for Y in C.simples:
        r, hz = punctured_sphere_dim(C, [Y], crosscheck=True)
        assert r == hz == (1 if Y is C.unit_object() else 0)
        r, hz = punctured_sphere_dim(C, [Y, C.dual_of(Y)], crosscheck=True)
        assert r == hz == 1


def test_toric_code_three_points():
    C = center("vec_z2")
    assert punctured_sphere_dim(C, ["e", "m", "f"], crosscheck=True) == (1, 1)
    assert punctured_sphere_dim(C, ["e", "m", "m"], crosscheck=True) == (0, 0)


def test_fibonacci_three_points():
    # three tau#1 points: N_{tt}^{t} = 1 in the chiral copy
    C = center("fibonacci")
    assert punctured_sphere_dim(C, ["tau#1"] * 3, crosscheck=True) == (1, 1)


def test_unit_object_is_trivial():
    C = center("fibonacci")
    U = unit_center_object(C.cat)
    assert hom_z_dim(U, C.unit_object().hb) == 1
    assert all(hom_z_dim(U, Y.hb) == 0 for Y in C.simples[1:])


@settings(max_examples=10, deadline=None)
@given(labels=st.lists(st.sampled_from(["1", "e", "m", "f"]), min_size=1, max_size=4))
def test_toric_code_fusion_rule(labels):
    # Z2 x Z2 fusion: nonzero iff the product of the charges is trivial
    C = center("vec_z2")
    vec = {"1": (0, 0), "e": (1, 0), "m": (0, 1), "f": (1, 1)}
    tot = [sum(vec[x][k] for x in labels) % 2 for k in range(2)]
    expect = 1 if tot == [0, 0] else 0
    assert punctured_sphere_dim(C, labels, crosscheck=True) == (expect, expect)
