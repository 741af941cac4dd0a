import itertools
import json

import pytest
from hypothesis import given, settings, strategies as st

from clusteraut.quiver import Quiver, classify_type, mutate_quiver
from clusteraut.seeds import explore
from clusteraut.surface import (
    ClosedOncePunctured,
    ExcludedSurface,
    InvalidTriangulation,
    TaggedArc,
    Triangulation,
    annulus_std,
    compatible,
    coordinate_flip,
    disc_tagged_arcs,
    figure2_left,
    figure2_right,
    iota,
    make_surface,
    once_punctured_torus,
    polygon_fan,
    polygon_triangulation_count,
    punctured_disc_std,
    twice_punctured_disc_std,
)


def all_bases():
    return [
        polygon_fan(5),
        polygon_fan(7),
        punctured_disc_std(3),
        punctured_disc_std(5),
        twice_punctured_disc_std(3),
        annulus_std(2, 1),
        annulus_std(2, 2),
        figure2_right(),
        figure2_left(),
    ]


def test_surface_families_and_exclusions():
    assert make_surface(0, [6], 0).family == "polygon"
    assert make_surface(0, [4], 1).family == "once-punctured disc"
    assert make_surface(0, [4], 2).family == "twice-punctured disc"
    assert make_surface(0, [3, 2], 0).family == "annulus"
    assert make_surface(1, [], 1).family == "other"
    assert make_surface(0, [5], 0).rank == 2
    assert make_surface(0, [4], 1).rank == 4
    assert make_surface(0, [2, 1], 0).rank == 3
    assert make_surface(1, [], 1).rank == 3
    for args in [(0, [], 3), (0, [3], 0), (0, [1], 1), (0, [0], 0), (-1, [], 2)]:
        with pytest.raises(ExcludedSurface):
            make_surface(*args)


@pytest.mark.parametrize("t", all_bases(), ids=lambda t: t.surface.family)
def test_constructors_validate_and_have_the_right_rank(t):
    t.validate()
    assert t.n == t.surface.rank
    b = t.b_matrix().b
    assert all(b[i][j] == -b[j][i] for i in range(t.n) for j in range(t.n))


@pytest.mark.parametrize("t", all_bases(), ids=lambda t: t.surface.family)
def test_flip_matches_mutation_and_is_an_involution(t):
    for k in range(t.n):
        f = t.flip(k)
        f.validate()
        assert f.b_matrix() == mutate_quiver(t.b_matrix(), k)
        assert f.flip(k).same_as(t)


@settings(max_examples=40, deadline=None)
@given(st.lists(st.integers(0, 5), max_size=25), st.sampled_from(["pd", "tpd", "ann", "fig"]))
def test_random_flips_keep_small_entries(word, which):
    t = {
        "pd": punctured_disc_std(4),
        "tpd": twice_punctured_disc_std(3),
        "ann": annulus_std(3, 2),
        "fig": figure2_right(),
    }[which]
    q = t.b_matrix()
    for k in word:
        k %= t.n
        t = t.flip(k)
        q = mutate_quiver(q, k)
        assert t.b_matrix() == q
        assert all(v in (-2, -1, 0, 1, 2) for row in q.b for v in row)


def test_types_of_standard_triangulations():
    assert classify_type(polygon_fan(7).b_matrix()).name == "A4"
    assert classify_type(punctured_disc_std(5).b_matrix()).name == "D5"
    assert classify_type(annulus_std(2, 1).b_matrix()).kind == "Euclidean"
    torus = once_punctured_torus().b_matrix()
    assert sorted(abs(torus.b[i][j]) for i in range(3) for j in range(i + 1, 3)) == [2, 2, 2]


def test_figure2_pair_differs_by_one_flip():
    right, left = figure2_right(), figure2_left()
    assert right.self_folded() == [(5, 0, "z")]
    assert left.self_folded() == []
    diff = [k for k in range(6) if right.flip(k).same_as(left)]
    assert diff == [5]


def test_tag_toggle():
    t = punctured_disc_std(4)
    u = t.tag_toggle("z")
    assert u.notched == {"z"} and u.tag_toggle("z").same_as(t)
    assert u.b_matrix() == t.b_matrix()
    folded = t.flip(t.n - 1)
    assert folded.tag_toggle("z").b_matrix() == folded.b_matrix()
    with pytest.raises(ValueError):
        t.tag_toggle("w")
    with pytest.raises(ClosedOncePunctured):
        once_punctured_torus().tag_toggle("z")
    for k in range(3):
        assert not once_punctured_torus().flip(k).self_folded()


def test_json_round_trip_and_validation():
    for t in all_bases():
        u = Triangulation.from_json(json.loads(t.dumps()))
        assert u.same_as(t) and u.b_matrix() == t.b_matrix()
    bad = {"triangles": [[1, 2, "a"], [1, 3, "b"]]}
    with pytest.raises(InvalidTriangulation):
        Triangulation.from_json(bad)


def test_isomorphisms_respect_tags():
    t = punctured_disc_std(4)
    assert t.find_isomorphism(t) is not None
    assert t.find_isomorphism(t.tag_toggle("z")) is None


def maximal_compatible_sets(arcs, size, c, punctured):
    ok = {(a, b): compatible(a, b, c, punctured) for a in arcs for b in arcs}
    out = []

    def grow(chosen, start):
        if len(chosen) == size:
            out.append(tuple(chosen))
            return
        for k in range(start, len(arcs)):
            a = arcs[k]
            if all(ok[a, b] for b in chosen):
                grow(chosen + [a], k + 1)

    grow([], 0)
    return out


@pytest.mark.parametrize("c,count", [(3, 14), (4, 50), (5, 182)])
def test_tagged_arc_clusters_of_punctured_disc(c, count):
    arcs = disc_tagged_arcs(c, True)
    assert len(arcs) == c * c
    assert len(maximal_compatible_sets(arcs, c, c, True)) == count
    assert len(explore(punctured_disc_std(c).b_matrix()).nodes) == count


@pytest.mark.parametrize("m", [5, 6, 7])
def test_polygon_triangulation_counts(m):
    arcs = disc_tagged_arcs(m, False)
    sets = maximal_compatible_sets(arcs, m - 3, m, False)
    assert len(sets) == polygon_triangulation_count(m)
    assert len(explore(polygon_fan(m).b_matrix()).nodes) == polygon_triangulation_count(m)
    assert [polygon_triangulation_count(k) for k in (4, 5, 6, 7)] == [2, 5, 14, 42]


def test_tagged_arc_rules():
    plain, notched = TaggedArc("radius", 0), TaggedArc("radius", 0, -1, True)
    other_notched = TaggedArc("radius", 2, -1, True)
    assert compatible(plain, notched, 4)
    assert not compatible(TaggedArc("radius", 1), other_notched, 4)
    assert compatible(notched, other_notched, 4)
    assert iota(TaggedArc("loop", 1)) == TaggedArc("radius", 1, -1, True)
    assert iota(plain) == plain
    chord = TaggedArc("chord", 0, 2)
    assert not compatible(chord, TaggedArc("radius", 1), 4)
    assert compatible(chord, TaggedArc("radius", 3), 4)


def test_coordinate_flip_is_an_involution():
    c = 4
    start = [TaggedArc("chord", 0, 2), TaggedArc("chord", 0, 3), TaggedArc("radius", 0), TaggedArc("radius", 3)]
    assert len(maximal_compatible_sets(start, 4, c, True)) == 1
    for k in range(c):
        once = coordinate_flip(start, k, c)
        assert once != start
        assert coordinate_flip(once, k, c) == start
