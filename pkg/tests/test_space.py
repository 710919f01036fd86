import json
import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from fourpoint import space as sp
from fourpoint.quad import check_additive, min_hyperbolicity_delta

import oracles


def test_two_point_space():
    s = sp.new_space(["a", "b"], [[0, 1], [1, 0]])
    assert s.n == 2
    assert s.labels == ("a", "b")
    assert sp.is_metric(s)


@pytest.mark.parametrize(
    "mat, exc, pair",
    [
        ([[0, 1], [2, 0]], sp.NonSymmetric, ("a", "b")),
        ([[0, 0], [0, 0]], sp.NonpositiveOffDiagonal, ("a", "b")),
        ([[1, 1], [1, 0]], sp.NonzeroDiagonal, ("a", "a")),
        ([[0, -1], [-1, 0]], sp.NegativeEntry, ("a", "b")),
    ],
)
def test_axiom_errors_name_the_pair(mat, exc, pair):
    with pytest.raises(exc) as info:
        sp.new_space(["a", "b"], mat)
    assert info.value.pair == pair
    assert "a" in str(info.value)


def test_shape_and_label_errors():
    with pytest.raises(sp.SpaceError):
        sp.new_space(["a", "b", "c"], [[0, 1], [1, 0]])
    with pytest.raises(sp.SpaceError):
        sp.new_space(["a", "a"], [[0, 1], [1, 0]])


def test_space_is_immutable():
    s = sp.new_space("ab", [[0, 1], [1, 0]])
    with pytest.raises(ValueError):
        s.dist[0, 1] = 5


def test_triangle_failure():
    s = sp.new_space("xyz", [[0, 1, 3], [1, 0, 1], [3, 1, 0]])
    assert not sp.is_metric(s)


def test_ultrametric_examples():
    eq = sp.new_space("xyz", [[0, 1, 1], [1, 0, 1], [1, 1, 0]])
    assert sp.is_ultrametric(eq)
    s = sp.new_space("xyz", [[0, 1, 1], [1, 0, 2], [1, 2, 0]])
    assert not sp.is_ultrametric(s)
    assert sp.is_metric(s)


def test_square_lp(square):
    d = square.dist
    r2 = math.sqrt(2)
    assert d[0, 1] == pytest.approx(r2, abs=1e-15)
    assert d[0, 2] == 2.0 and d[1, 3] == 2.0
    assert np.allclose(d[[0, 1, 2, 3], [1, 2, 3, 0]], r2, atol=1e-15, rtol=0)


def test_line_lp():
    assert sp.from_points_lp([0.0, 1.0], p=3).dist.tolist() == [[0, 1], [1, 0]]
    s = sp.from_points_lp([0.0, 0.5, 1.0], p=1)
    assert s.dist[0, 1] == 0.5 and s.dist[1, 2] == 0.5 and s.dist[0, 2] == 1.0


def test_duplicate_point():
    with pytest.raises(sp.DuplicatePoint):
        sp.from_points_lp([(0, 0), (1, 1), (0, 0)])


def test_star_tree(star):
    i = {lab: k for k, lab in enumerate(star.labels)}
    assert star.dist[i["a"], i["b"]] == 2.0
    assert star.dist[i["a"], i["c"]] == 1.0
    leaves = sp.gen_tree_metric([("c", "a", 1.0), ("c", "b", 1.0), ("c", "d", 1.0)], leaves_only=True)
    assert leaves.labels == ("a", "b", "d")
    assert np.all(leaves.dist[~np.eye(3, dtype=bool)] == 2.0)


def test_single_edge_tree():
    s = sp.gen_tree_metric([("u", "v", 2.5)])
    assert s.dist.tolist() == [[0, 2.5], [2.5, 0]]


@pytest.mark.parametrize(
    "edges",
    [
        [("a", "b", 1), ("b", "c", 1), ("c", "a", 1)],
        [("a", "b", 1), ("c", "d", 1)],
        [("a", "b", 0)],
        [],
    ],
)
def test_not_a_tree(edges):
    with pytest.raises(sp.NotATree):
        sp.gen_tree_metric(edges)


def test_generators_are_deterministic():
    assert sp.gen_random_metric(6, 42) == sp.gen_random_metric(6, 42)
    assert sp.gen_random_ultrametric(6, 42) == sp.gen_random_ultrametric(6, 42)
    assert sp.gen_random_tree_metric(8, 3) == sp.gen_random_tree_metric(8, 3)
    assert sp.gen_random_metric(6, 42) != sp.gen_random_metric(6, 43)


@pytest.mark.parametrize("seed", range(20))
def test_generated_spaces_against_brute_force(seed):
    n = 3 + seed % 6
    m = sp.gen_random_metric(n, seed)
    u = sp.gen_random_ultrametric(n, seed)
    t = sp.gen_random_tree_metric(n, seed)
    assert oracles.is_metric(m) and sp.is_metric(m)
    assert oracles.is_ultrametric(u) and sp.is_ultrametric(u)
    assert oracles.is_metric(t)
    for s in (m, u, t):
        if sp.is_ultrametric(s):
            assert check_additive(s).passed
        if check_additive(s).passed:
            assert sp.is_metric(s)
    assert check_additive(t).passed


def test_snowflake_and_scale():
    s = sp.new_space("ab", [[0, 4], [4, 0]])
    assert sp.snowflake(s, 0.5).dist.tolist() == [[0, 2], [2, 0]]
    assert sp.snowflake(s, 1) == s
    assert sp.scale(s, 0.25).dist.tolist() == [[0, 1], [1, 0]]
    with pytest.raises(sp.AlphaOutOfRange):
        sp.snowflake(s, 1.5)
    with pytest.raises(sp.AlphaOutOfRange):
        sp.snowflake(s, 0)
    with pytest.raises(sp.NonpositiveScale):
        sp.scale(s, 0)


@pytest.mark.parametrize("seed", range(10))
def test_snowflake_of_metric_is_metric(seed):
    pts = sp.gen_random_points(5, 2, seed)
    s = sp.from_points_lp(pts)
    for a in (0.1, 0.5, 0.9, 1.0):
        assert oracles.is_metric(sp.snowflake(s, a))


@pytest.mark.parametrize("seed", range(10))
def test_scaling_delta_star(seed):
    s = sp.gen_random_metric(6, seed)
    lam = 0.1 + seed
    assert min_hyperbolicity_delta(sp.scale(s, lam)) == pytest.approx(lam * min_hyperbolicity_delta(s), rel=1e-12)


def test_transforms_commute_with_relabel():
    s = sp.gen_random_metric(5, 1)
    perm = [2, 0, 4, 1, 3]
    assert sp.snowflake(sp.relabel(s, perm), 0.5) == sp.relabel(sp.snowflake(s, 0.5), perm)
    assert sp.scale(sp.relabel(s, perm), 3.0) == sp.relabel(sp.scale(s, 3.0), perm)


def test_relabel_places_points():
    s = sp.gen_random_metric(4, 0)
    r = sp.relabel(s, [3, 0, 1, 2])
    assert r.labels[3] == s.labels[0]
    assert r.dist[3, 0] == s.dist[0, 1]


def test_json_round_trip_is_lossless():
    s = sp.from_points_lp(sp.gen_random_points(7, 3, 5))
    back = sp.from_json(sp.to_json(s))
    assert back == s
    text = json.loads(sp.to_json(s))
    assert set(text) == {"labels", "matrix"}


def test_csv_round_trip_and_strictness(tmp_path):
    s = sp.gen_random_metric(4, 2)
    assert sp.from_csv(sp.to_csv(s)) == s
    no_header = sp.from_csv("0,1\n1,0\n")
    assert no_header.labels == ("p0", "p1")
    with pytest.raises(sp.SpaceError, match="ragged"):
        sp.from_csv("a,b\n0,1\n1\n")
    with pytest.raises(sp.SpaceError):
        sp.from_csv("a,b\n0,x\n1,0\n")
    with pytest.raises(sp.SpaceError):
        sp.from_csv("0,1,2\n1,0,1\n")
    p = tmp_path / "s.csv"
    sp.save_space(s, p)
    assert sp.load_space(p) == s
    q = tmp_path / "s.json"
    sp.save_space(s, q)
    assert sp.load_space(q) == s


def test_json_rejects_bad_input():
    with pytest.raises(sp.SpaceError):
        sp.from_json('{"labels": ["a"]}')
    with pytest.raises(sp.SpaceError):
        sp.from_json('{"labels": ["a", "b"], "matrix": [[0, "1"], [1, 0]]}')
    with pytest.raises(sp.SpaceError):
        sp.from_json("not json")


@settings(max_examples=50, deadline=None)
@given(st.lists(st.floats(0.01, 100), min_size=6, max_size=6))
def test_constructed_space_invariants(vals):
    d = np.zeros((4, 4))
    d[np.triu_indices(4, 1)] = vals
    d = d + d.T
    s = sp.new_space("abcd", d)
    assert np.array_equal(s.dist, s.dist.T)
    assert np.all(np.diag(s.dist) == 0)
    assert np.all(s.dist[~np.eye(4, dtype=bool)] > 0)
