from math import comb

import pytest
import sympy

from clusteraut.exact_arith import parse_ratfn
from clusteraut.quiver import Quiver, linear_a, mutate_quiver
from clusteraut.seeds import (
    ExchangeGraph,
    Incomplete,
    Unreachable,
    cluster_variables,
    explore,
    find_flip_path,
    initial_seed,
    is_cluster,
    is_cluster_variable,
    path_with_frame,
    seed_along,
)


def catalan(k):
    return comb(2 * k, k) // (k + 1)


def d_quiver(n):
    return Quiver.from_arrows(n, [(0, 2), (1, 2)] + [(k, k + 1) for k in range(2, n - 1)])


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5])
def test_type_a_counts(n):
    g = explore(linear_a(n))
    assert g.complete
    assert len(g.nodes) == catalan(n + 1)
    assert len(g.variable_keys()) == n * (n + 3) // 2


@pytest.mark.parametrize("n", [4, 5])
def test_type_d_counts(n):
    g = explore(d_quiver(n))
    assert len(g.nodes) == (3 * n - 2) * comb(2 * n - 2, n - 1) // n
    assert len(g.variable_keys()) == n * n


def test_counts_do_not_depend_on_orientation():
    assert len(explore(linear_a(4)).nodes) == len(explore(Quiver.from_arrows(4, [(0, 1), (2, 1), (2, 3)])).nodes)


def sympy_exploration(q):
    """Independent enumeration with sympy expressions and frozenset clusters."""
    syms = sympy.symbols(f"x1:{q.n + 1}")
    start = (tuple(syms), q)
    seen = {frozenset(syms)}
    stack = [start]
    while stack:
        cluster, b = stack.pop()
        for k in range(q.n):
            pos = sympy.prod([cluster[j] ** b.b[k][j] for j in range(q.n) if b.b[k][j] > 0])
            neg = sympy.prod([cluster[j] ** -b.b[k][j] for j in range(q.n) if b.b[k][j] < 0])
            new = sympy.factor(sympy.cancel((pos + neg) / cluster[k]))
            c2 = cluster[:k] + (new,) + cluster[k + 1 :]
            key = frozenset(c2)
            if key not in seen:
                seen.add(key)
                stack.append((c2, mutate_quiver(b, k)))
    return seen, syms


@pytest.mark.parametrize("q", [linear_a(3), Quiver.from_arrows(3, [(1, 0), (1, 2)]), linear_a(4)])
def test_exploration_matches_sympy_oracle(q):
    oracle, syms = sympy_exploration(q)
    g = explore(q)
    assert len(g.nodes) == len(oracle)
    names = {f"x{i + 1}": s for i, s in enumerate(syms)}
    ours = {sympy.factor(sympy.sympify(k.replace("^", "**"), locals=names)) for k in g.variable_keys()}
    theirs = set().union(*oracle)
    assert {sympy.simplify(a) for a in ours} == {sympy.simplify(a) for a in theirs}


def test_paths_replay_to_the_stored_representative():
    g = explore(d_quiver(4))
    s0 = initial_seed(g.quiver)
    for key, node in g.nodes.items():
        word, sigma = path_with_frame(g, g.initial_key, key)
        assert word == find_flip_path(g, g.initial_key, key)
        seed = seed_along(s0, word)
        assert seed.key() == key
        for i in range(g.n):
            assert seed.cluster[i] == node.cluster[sigma[i]]
        assert seed.quiver.relabel(sigma) == node.quiver


def test_edges_are_mutations():
    g = explore(linear_a(3))
    for (key, k), (key2, perm) in g.edges.items():
        m = g.nodes[key].mutate(k)
        assert m.key() == key2
        assert all(m.cluster[j] == g.nodes[key2].cluster[perm[j]] for j in range(g.n))


def test_json_round_trip():
    g = explore(linear_a(3))
    h = ExchangeGraph.loads(g.dumps())
    assert h.dumps() == g.dumps()
    assert h.complete and len(h.nodes) == 14


def test_incomplete_graph_refuses_negative_answers():
    markov = Quiver.from_arrows(3, [(0, 2, 2), (1, 0, 2), (2, 1, 2)])
    g = explore(markov, node_cap=50)
    assert not g.complete
    assert is_cluster_variable(g, "x1")
    with pytest.raises(Incomplete):
        is_cluster_variable(g, parse_ratfn("x1 + 1", 3))
    with pytest.raises(Incomplete):
        is_cluster(g, ["x1", "x2", "x1 + x3"])
    full = explore(linear_a(2))
    assert is_cluster_variable(full, parse_ratfn("x1 + 1", 2)) is False
    assert is_cluster(full, ["x1", "x2"])


def test_unreachable_and_caps():
    g = explore(linear_a(2))
    with pytest.raises(Unreachable):
        find_flip_path(g, g.initial_key, "no such node")
    with pytest.raises(ValueError):
        explore(linear_a(2), node_cap=0)


def test_variables_are_sorted_and_unique():
    vs = cluster_variables(explore(linear_a(3)))
    strs = [str(v) for v in vs]
    assert strs == sorted(set(strs))
