import pytest

import arcpath

PENDANT = [(0, 7), (6, 13), (12, 19), (18, 1), (2, 4), (3, 5), (14, 16), (15, 17)]


def test_triangle():
    f = arcpath.ArcFamily(12, [(0, 5), (4, 9), (8, 1)])
    assert len(f) == 3
    assert f.edges() == [(0, 1), (0, 2), (1, 2)]
    assert arcpath.covers_circle(f)
    assert arcpath.minimal_cover(f) == [0, 1, 2]
    assert arcpath.longest_path_length(f) == 3


def test_pendant_verify():
    f = arcpath.ArcFamily(24, PENDANT)
    r = arcpath.verify(f, paranoid=True)
    assert r["ok"]
    assert r["branch"] == "proper_trace"
    assert r["witness"] == 2
    assert r["common_vertices"] == [0, 2, 4, 5, 6, 7]
    assert r["flags"]["kb1"] is True
    assert r["extremal"] == [4, 5, 0, 1, 2, 6, 7]


def test_canonicalize():
    f = arcpath.ArcFamily(24, PENDANT)
    run = arcpath.canonicalize(f, [4, 5, 0, 1, 2, 6, 7], paranoid=True)
    assert run["ok"]
    assert sorted(run["result"]) == [0, 1, 2, 4, 5, 6, 7]


def test_round_trip():
    f = arcpath.generate(6, seed=5, require_cover=True)
    g, chains = arcpath.parse_instance(f.to_text() + "chain 0\n")
    assert g == f
    assert chains == [[0]]


def test_enumerate_and_hunt():
    r = arcpath.enumerate_longest(arcpath.ArcFamily(12, [(0, 3), (2, 5), (4, 7)]))
    assert r["paths"] == [[0, 1, 2]]
    ok, first = arcpath.hunt(50, max_arcs=7, seed=3)
    assert ok
    assert "trials=50" in first
    assert arcpath.hunt(50, max_arcs=7, seed=3)[1] == first


def test_errors():
    with pytest.raises(arcpath.ArcpathError):
        arcpath.ArcFamily(12, [(1, 5), (5, 8)])
    with pytest.raises(ValueError):
        arcpath.parse_instance("circle 10\narc 3\n")
    with pytest.raises(arcpath.ArcpathError):
        arcpath.minimal_cover(arcpath.ArcFamily(12, [(0, 5), (4, 9)]))
