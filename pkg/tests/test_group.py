import itertools

import pytest
from hypothesis import given, settings, strategies as st

from besica import CapacityError, DomainError, free_abelian, free_group, parse_group
from besica.errors import SpecSyntaxError


@pytest.mark.parametrize("group,n,gamma", [
    ("Z2:vn", 2, 13), ("Z2:vn", 10, 221), ("Z2:moore", 3, 49), ("F2", 2, 17), ("F2", 8, 13121),
    ("F2", 10, 118097), ("Z1", 5, 11), ("Z3:vn", 2, 25), ("F3", 2, 37),
])
def test_growth_values(group, n, gamma):
    assert parse_group(group).growth(n) == gamma


@pytest.mark.parametrize("group", ["Z1", "Z2:vn", "Z2:moore", "Z3:vn", "F2", "F3"])
def test_closed_form_matches_bfs(group):
    G = parse_group(group)
    for n in range(6):
        assert len(G.ball(n).elements) == G.projected_size(n) == G.growth(n)


def test_explicit_generators():
    G = parse_group("Z2:1,0;0,1;1,1")
    assert G.growth(1) == 7
    assert G.word_length((2, 2)) == 2
    assert G.word_length((1, -1)) == 2
    assert G.describe() == "Z2:1,0;0,1;1,1"


def test_non_generating_set_rejected():
    with pytest.raises(DomainError):
        free_abelian(2, [(2, 0), (0, 1)])


def test_free_group_reduction():
    F = free_group(2)
    a, A = F.parse_element("a"), F.parse_element("A")
    assert F.mul(a, A) == ()
    assert F.format_element(F.mul(F.parse_element("ab"), F.parse_element("Ba"))) == "aa"
    with pytest.raises(DomainError):
        F.check((1, -1))


def test_element_wrapper_and_mixing():
    F = free_group(2)
    x = F.element(F.parse_element("ab"))
    assert (x * ~x).form == ()
    assert x.length() == 2
    Z = free_abelian(2)
    with pytest.raises(DomainError):
        x * Z.element((1, 0))


def test_parse_errors():
    with pytest.raises(SpecSyntaxError):
        parse_group("Q2")
    with pytest.raises(SpecSyntaxError):
        free_abelian(2).parse_element("1;2")
    with pytest.raises(DomainError):
        free_group(2).parse_element("c")


def test_ball_order_and_spheres():
    G = free_abelian(2)
    t = G.ball(2)
    assert t.elements[0] == (0, 0)
    assert [t.radius_of(g) for g in t.elements] == sorted(t.radius_of(g) for g in t.elements)
    assert len(t.sphere(2)) == 8
    # the element list is a snapshot; later growth of the cache does not leak in
    els = G.ball(1).elements
    G.ball(5)
    assert len(els) == 5


def test_capacity_cap():
    G = free_group(2, cap=1000)
    with pytest.raises(CapacityError):
        G.ball(8)
    assert G.growth(8) == 13121


def test_closure_matches_brute_force():
    for G in (free_abelian(2), free_group(2)):
        for n in range(4):
            X = G.ball(n).as_set()
            E = G.ball(1).elements
            brute = {g for g in G.ball(n + 2).elements if any(G.mul(g, e) in X for e in E)}
            assert G.closure_plus(X, E) == brute
            assert G.closure_plus(X, E) == G.ball(n + 1).as_set()


def test_roundtrip_format_parse():
    for G in (free_abelian(3), free_group(3)):
        for g in G.ball(3).elements:
            assert G.parse_element(G.format_element(g)) == g


def words(k, max_len=6):
    letters = [x for i in range(1, k + 1) for x in (i, -i)]
    return st.lists(st.sampled_from(letters), max_size=max_len).map(lambda w: free_group(k).product(*[(x,) for x in w]))


vecs = st.tuples(st.integers(-50, 50), st.integers(-50, 50))


@settings(max_examples=200, deadline=None)
@given(words(2), words(2), words(2))
def test_free_group_axioms(a, b, c):
    F = free_group(2)
    assert F.mul(F.mul(a, b), c) == F.mul(a, F.mul(b, c))
    assert F.mul(a, F.inv(a)) == F.identity == F.mul(F.inv(a), a)
    assert F.mul(a, F.identity) == a
    assert F.word_length(a) == len(a)
    assert F.word_length(F.mul(a, b)) <= F.word_length(a) + F.word_length(b)


@settings(max_examples=200, deadline=None)
@given(vecs, vecs, vecs)
def test_zd_axioms(a, b, c):
    for G in (free_abelian(2), free_abelian(2, "moore")):
        assert G.mul(G.mul(a, b), c) == G.mul(a, G.mul(b, c))
        assert G.mul(a, b) == G.mul(b, a)
        assert G.mul(a, G.inv(a)) == G.identity
        assert G.word_length(G.mul(a, b)) <= G.word_length(a) + G.word_length(b)


def test_word_length_matches_ball_radius():
    for G in (free_abelian(2), free_abelian(2, "moore"), free_group(2)):
        t = G.ball(4)
        for g in t.elements:
            assert G.word_length(g) == t.radius_of(g)


def test_all_reduced_words_enumerated():
    F = free_group(2)
    letters = [1, -1, 2, -2]
    reduced = {w for n in range(4) for w in itertools.product(letters, repeat=n)
               if all(w[i] != -w[i + 1] for i in range(len(w) - 1))}
    assert F.ball(3).as_set() == reduced
