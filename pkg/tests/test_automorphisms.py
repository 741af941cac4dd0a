import itertools

import pytest

from clusteraut.automorphisms import (
    DIRECT,
    INVERSE,
    NoQuiverIso,
    NotACluster,
    NotAnAutomorphism,
    aut_group,
    automorphism_from_word,
    check_cluster_automorphism,
    compose,
    compose_by_substitution,
    find_automorphisms_bounded,
    from_quiver_anti_automorphism,
    from_quiver_automorphism,
    identity,
    invert,
    opposite_mutation_equivalent,
    oracle_check,
    powers,
    reduce_word,
)
from clusteraut.exact_arith import parse_ratfn
from clusteraut.quiver import (
    Quiver,
    a_tilde_anti_automorphism,
    a_tilde_standard,
    linear_a,
    mutate_quiver,
    opposite,
    quiver_automorphisms,
)
from clusteraut.seeds import Incomplete, explore, seed_along, initial_seed

A3_SINK = Quiver.from_arrows(3, [(1, 0), (1, 2)])
D4 = Quiver.from_arrows(4, [(0, 2), (1, 2), (2, 3)])
D4_STAR = Quiver.from_arrows(4, [(1, 0), (2, 0), (3, 0)])


def test_reduce_word_cancels_repeats():
    assert reduce_word([0, 1, 1, 0, 2]) == (2,)
    assert reduce_word([]) == ()


@pytest.mark.parametrize("q", [linear_a(2), linear_a(3), A3_SINK])
def test_certificate_agrees_with_substitution_oracle(q):
    """Every bijection onto every cluster: the quiver test and the cluster-by-cluster test agree."""
    g = explore(q)
    for node in g.nodes.values():
        for perm in itertools.permutations(range(q.n)):
            images = [node.cluster[p] for p in perm]
            try:
                check_cluster_automorphism(g, images)
                certified = True
            except NoQuiverIso:
                certified = False
            assert certified == oracle_check(g, images)


def test_not_a_cluster_and_incomplete():
    g = explore(linear_a(3))
    with pytest.raises(NotACluster):
        check_cluster_automorphism(g, [parse_ratfn(t, 3) for t in ("x1", "x2", "x1 + x3")])
    with pytest.raises(NotACluster):
        check_cluster_automorphism(g, [parse_ratfn(t, 3) for t in ("x1", "x1", "x3")])
    markov = Quiver.from_arrows(3, [(0, 2, 2), (1, 0, 2), (2, 1, 2)])
    part = explore(markov, node_cap=10)
    with pytest.raises(Incomplete):
        check_cluster_automorphism(part, [parse_ratfn(t, 3) for t in ("x1", "x2", "x1 + x3")])
    with pytest.raises(Incomplete):
        oracle_check(part, [parse_ratfn(t, 3) for t in ("x1", "x2", "x3")])


def test_identity_is_direct():
    g = explore(linear_a(3))
    f = check_cluster_automorphism(g, [parse_ratfn(t, 3) for t in ("x1", "x2", "x3")])
    assert f.direction == DIRECT and f.is_identity() and f.certificate == (0, 1, 2)


@pytest.mark.parametrize("q", [linear_a(3), D4])
def test_group_structure_invariants(q):
    grp = aut_group(explore(q))
    t = grp.table
    direct = set(grp.direct)
    grp.group.check_axioms()
    assert len(set(grp.image_keys)) == grp.order
    for a in range(grp.order):
        for b in range(grp.order):
            assert (t[a][b] in direct) == ((a in direct) == (b in direct))
    for f in direct:
        for g in range(grp.order):
            assert t[t[g][f]][grp.group.inverse(g)] in direct
    assert grp.index == 2


def test_word_form_composition_matches_table_and_substitution():
    grp = aut_group(explore(linear_a(3)))
    els = grp.elements
    for a, b in itertools.product(range(grp.order), repeat=2):
        c = compose(els[a], els[b])
        assert c.image_strings() == grp.image_keys[grp.table[a][b]]
        assert tuple(map(str, compose_by_substitution(els[a], els[b]))) == c.image_strings()
        c.verify()
    for f in els:
        assert compose(f, invert(f)).is_identity()
        assert compose(invert(f), f).is_identity()


def test_powers_match_repeated_composition():
    f = aut_group(explore(linear_a(4))).elements[1]
    ps = powers(f, 8)
    out = identity(f.quiver)
    for k, p in enumerate(ps, start=1):
        out = compose(out, f)
        assert p == out == f**k
    assert f ** -1 == invert(f)


def test_quiver_automorphisms_give_s3_in_d4():
    auts = quiver_automorphisms(D4_STAR)
    els = [from_quiver_automorphism(D4_STAR, s) for s in auts]
    assert len({e.image_strings() for e in els}) == 6
    assert all(e.direction == DIRECT for e in els)
    index = {tuple(s): e for s, e in zip(auts, els)}
    for s, t in itertools.product(auts, repeat=2):
        st = tuple(s[t[i]] for i in range(4))
        assert compose(index[tuple(s)], index[tuple(t)]) == index[st]
    grp = aut_group(explore(D4_STAR))
    assert {grp.index_of(e) for e in els} <= set(grp.direct)


def test_anti_automorphism_of_a_tilde_is_inverse():
    q = a_tilde_standard(2, 1)
    f = from_quiver_anti_automorphism(q, a_tilde_anti_automorphism(2, 1))
    assert f.direction == INVERSE
    f.verify()
    assert from_quiver_automorphism(q, a_tilde_anti_automorphism(2, 1)).direction == INVERSE
    with pytest.raises(NotAnAutomorphism):
        from_quiver_anti_automorphism(q, (0, 1, 2))
    with pytest.raises(NotAnAutomorphism):
        from_quiver_automorphism(linear_a(3), (1, 0, 2))


def test_bounded_search_recovers_finite_group():
    q = linear_a(3)
    grp = aut_group(explore(q))
    found = find_automorphisms_bounded(q, 10)
    assert {f.image_strings() for f in found} == set(grp.image_keys)
    shallow = find_automorphisms_bounded(q, 0)
    assert sorted(f.perm for f in shallow) == [(0, 1, 2), (2, 1, 0)]
    assert all(not f.word for f in shallow)


def test_word_with_no_quiver_match():
    with pytest.raises(NoQuiverIso):
        automorphism_from_word(linear_a(3), [0])


def test_opposite_search():
    for q in (linear_a(3), D4, Quiver.from_arrows(5, [(0, 1), (2, 1), (2, 3), (1, 4)])):
        res = opposite_mutation_equivalent(q)
        assert res.found
        r = q
        for k in res.word:
            r = mutate_quiver(r, k)
        qop = opposite(q)
        assert all(r.b[res.isomorphism[i]][res.isomorphism[j]] == qop.b[i][j] for i in range(q.n) for j in range(q.n))
    empty = Quiver.empty(3)
    res = opposite_mutation_equivalent(empty)
    assert res.found and res.word == ()
    rigid = Quiver.from_arrows(3, [(0, 2, 3), (0, 1, 1), (1, 2, 2)])
    assert not opposite_mutation_equivalent(rigid, node_cap=3000).found


def test_target_seed_is_replay_of_word():
    f = automorphism_from_word(A3_SINK, [1])
    assert f.target_seed().key() == seed_along(initial_seed(A3_SINK), [1]).key()
    assert f.describe()["direction"] == "inverse"
