import copy
import itertools
import json
from importlib import resources

import pytest

from stringnet.category import (
    BUILTINS, CategoryFormatError, builtin, category_from_json, category_to_json,
    total_dim_squared, validate,
)
from stringnet.scalars import parse_scalar


def raw(name):
    text = resources.files("stringnet").joinpath(f"data/{name}.json").read_text(encoding="utf-8")
    return json.loads(text)


@pytest.mark.parametrize("name", BUILTINS)
def test_builtins_validate(name):
    rep = validate(builtin(name))
    assert rep.ok, [c.name for c in rep.failures]


def test_vec_z2_basic():
    cat = builtin("vec_z2")
    assert cat.rank == 2 and all(d == 1 for d in cat.qdim)


def test_ising_has_three_simples_and_positive_fs():
    cat = builtin("ising")
    assert cat.rank == 3
    assert cat.fs_indicator[cat.lookup("sigma")] == 1


def test_fibonacci_f_matrix():
    cat = builtin("fibonacci")
    t = cat.lookup("tau")
    F = cat.field
    phi = parse_scalar("(1+sqrt(5))/2", F)
    es, fs = cat.F_block(t, t, t, t)
    assert es == fs == [cat.unit, t]
    block = [[cat.F6(t, t, t, t, e, f) for f in fs] for e in es]
    expect = [[1 / phi, 1 / cat.sqrt_qdim[t]], [1 / cat.sqrt_qdim[t], -1 / phi]]
    assert block == expect


@pytest.mark.parametrize("name,expect", [("vec_z2", "2"), ("fibonacci", "(5+sqrt(5))/2"), ("ising", "4")])
def test_total_dim_squared(name, expect):
    cat = builtin(name)
    assert total_dim_squared(cat) == parse_scalar(expect, cat.field)


def test_fibonacci_total_dim_is_phi_plus_two():
    cat = builtin("fibonacci")
    phi = cat.qdim[cat.lookup("tau")]
    assert total_dim_squared(cat) == phi + 2 == 1 + phi * phi


def test_flipped_f_sign_fails_pentagon_with_witness():
    obj = raw("fibonacci")
    for entry in obj["F"]:
        if entry[:6] == ["tau"] * 4 + ["tau", "tau"]:
            entry[-1] = "-(" + entry[-1] + ")"
    rep = validate(category_from_json(obj))
    bad = {c.name: c for c in rep.failures}
    assert "pentagon" in bad and bad["pentagon"].witness


def test_wrong_dimension_fails():
    obj = raw("fibonacci")
    obj["qdim"]["tau"] = "1"
    obj["sqrt_qdim"]["tau"] = "1"
    rep = validate(category_from_json(obj))
    assert not rep.ok
    assert any("dim" in c.name for c in rep.failures)


def test_json_round_trip():
    for name in BUILTINS:
        cat = builtin(name)
        again = category_from_json(category_to_json(cat))
        assert category_to_json(again) == category_to_json(cat)


@pytest.mark.parametrize("mutate", [
    lambda o: o.pop("fusion"),
    lambda o: o.__setitem__("format", "sfc-0"),
    lambda o: o["dual"].__setitem__("tau", "nope"),
    lambda o: o["qdim"].__setitem__("tau", "1+"),
])
def test_malformed_files_raise(mutate):
    obj = copy.deepcopy(raw("fibonacci"))
    mutate(obj)
    with pytest.raises((CategoryFormatError, ValueError)):
        category_from_json(obj)


@pytest.mark.parametrize("name", BUILTINS)
def test_fusion_associative_and_dual_symmetric(name):
    cat = builtin(name)
    R = range(cat.rank)
    d = cat.dual
    for i, j, k in itertools.product(R, R, R):
        assert cat.N(i, j, k) == cat.N(d[j], d[i], d[k])
    for i, j, l, m in itertools.product(R, R, R, R):
        lhs = sum(cat.N(i, j, k) * cat.N(k, l, m) for k in R)
        rhs = sum(cat.N(j, l, k) * cat.N(i, k, m) for k in R)
        assert lhs == rhs


@pytest.mark.parametrize("name", BUILTINS)
def test_dimension_data(name):
    cat = builtin(name)
    d = cat.dual
    assert cat.qdim[cat.unit] == 1 and cat.sqrt_qdim[cat.unit] == 1
    for i in range(cat.rank):
        assert d[d[i]] == i
        assert cat.sqrt_qdim[i] ** 2 == cat.qdim[i]
        assert cat.sqrt_qdim[i] == cat.sqrt_qdim[d[i]]
        for j in range(cat.rank):
            rhs = sum((cat.N(i, j, k) * cat.qdim[k] for k in range(cat.rank)), cat.field.zero)
            assert cat.qdim[i] * cat.qdim[j] == rhs
    assert total_dim_squared(cat) != 0
