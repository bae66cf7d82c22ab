import itertools
import random
from collections import Counter

import pytest
from hypothesis import given, settings, strategies as st

from hopfpi1.groups import (FiniteAbelianGroup, FiniteGroup, GroupHom, Partition,
                            abelian_groups_of_order, characters, cyclic, diagram_limit,
                            direct_product, epimorphisms, homomorphisms, quotient,
                            stable_partitions, subgroup_generated, subgroups)
from hopfpi1.intmat import smith_normal_form, subgroup_invariants
from hopfpi1.scalars import parse_field


def C(*m):
    return FiniteAbelianGroup(list(m))


def test_cyclic_basics():
    assert cyclic(1).order == 1
    G4 = cyclic(4)
    assert G4.inverse[1] == 3 and G4.labels[3] == "t^3"
    assert Counter(cyclic(6).element_order(a) for a in range(6)) == Counter([1, 6, 3, 2, 3, 6])
    with pytest.raises(ValueError):
        cyclic(0)


def test_cayley_table_validation():
    with pytest.raises(ValueError):
        FiniteGroup([[0, 1], [1, 1]])  # no inverse for element 1


def test_direct_product_klein():
    V = direct_product(cyclic(2), cyclic(2))
    assert V.order == 4 and V.is_abelian()
    assert all(V.element_order(a) <= 2 for a in V.elements())
    A, _ = V.as_abelian()
    assert A.invariant_factors() == (2, 2)


def test_group_json_round_trip():
    G = direct_product(cyclic(2), cyclic(3))
    assert FiniteGroup.from_json(G.to_json()) == G


def test_characters_counts():
    Q = parse_field("Q")
    assert sorted(str(c.values[0]) for c in characters(C(2), Q)) == ["-1", "1"]
    assert len(characters(C(4), Q)) == 2
    assert len(characters(C(4), parse_field("Q(z4)"))) == 4


@pytest.mark.parametrize("name", ["Q", "Q(z4)", "Q(z12)", "F5", "F7"])
@pytest.mark.parametrize("moduli", [(2,), (4,), (2, 2), (3,), (6,), (2, 4)])
def test_full_character_group_iff_root_of_exponent(name, moduli):
    from hopfpi1.scalars import primitive_root_of_unity
    F = parse_field(name)
    G = C(*moduli)
    chars = characters(G, F)
    full = primitive_root_of_unity(F, G.exponent()) is not None
    assert (len(chars) == G.order) == full
    for ch in chars:  # homomorphism property
        for a, b in itertools.product(G.elements(), repeat=2):
            assert ch.value(G.add(a, b), F) == ch.value(a, F) * ch.value(b, F)


def test_epimorphisms_examples():
    assert len(epimorphisms(C(4), C(2))) == 1
    assert epimorphisms(C(2), C(3)) == []
    assert len(epimorphisms(C(2, 2), C(2))) == 3
    assert len(epimorphisms(C(5), C(5))) == 4


def test_epimorphism_orders_divide():
    groups = [G for n in range(1, 9) for G in abelian_groups_of_order(n)]
    for G, H in itertools.product(groups, repeat=2):
        if epimorphisms(G, H):
            assert G.order % H.order == 0


def test_homomorphisms_brute_force():
    G, H = C(2, 4), C(4)
    # oracle: functions on elements that respect addition
    count = 0
    for imgs in itertools.product(H.elements(), repeat=G.order):
        f = dict(zip(G.elements(), imgs))
        if all(f[G.add(a, b)] == H.add(f[a], f[b]) for a in G.elements() for b in G.elements()):
            count += 1
    assert len(homomorphisms(G, H)) == count


def test_subgroup_generated():
    r = subgroup_generated(C(6), [(2,)])
    assert r.group.order == 3 and not r.is_whole
    assert subgroup_generated(C(5), [(3,)]).is_whole
    assert subgroup_generated(C(2, 2), [(1, 0)]).group.order == 2
    r = subgroup_generated(C(2, 4), [(1, 2), (0, 2)])
    assert set(r.inclusion.image()) == set(r.elements)


def test_subgroups_of_klein_and_c8():
    assert len(subgroups(C(2, 2))) == 5
    assert [len(s) for s in subgroups(C(8))] == [1, 2, 4, 8]


def test_quotient():
    Q, proj = quotient(C(2, 4), [(1, 2)])
    assert Q.invariant_factors() == (4,)
    assert proj.is_surjective()
    assert proj((1, 2)) == Q.zero


def test_limit_examples():
    assert diagram_limit([C(4)], []).invariant_factors == (4,)
    epi = epimorphisms(C(4), C(2))[0]
    lim = diagram_limit([C(4), C(2)], [(0, 1, epi)], method="brute")
    assert lim.invariant_factors == (4,) and len(lim.elements) == 4
    assert diagram_limit([C(2), C(3)], []).invariant_factors == (6,)
    assert diagram_limit([], []).invariant_factors == ()


def test_limit_rejects_mismatched_edge():
    hom = GroupHom.identity(C(2))
    with pytest.raises(ValueError):
        diagram_limit([C(3)], [(0, 0, hom)])


def test_limit_isomorphic_to_universal_node():
    # V = C2 x C4 with one chosen epimorphism to each quotient-like node
    V = C(2, 4)
    others = [C(4), C(2), C(2, 2)]
    nodes = [V] + others
    edges = [(0, 0, GroupHom.identity(V))]
    for i, H in enumerate(others, start=1):
        edges.append((0, i, epimorphisms(V, H)[0]))
    assert diagram_limit(nodes, edges).invariant_factors == (2, 4)


def test_limit_with_s_to_s3_automorphism():
    # two C4 nodes joined by s -> s^3 both ways: compatible pairs (g, 3g)
    G = C(4)
    s3 = GroupHom(G, G, ((3,),))
    edges = [(0, 1, s3), (1, 0, s3), (0, 0, GroupHom.identity(G)), (1, 1, GroupHom.identity(G))]
    lim = diagram_limit([G, G], edges, method="brute")
    assert lim.invariant_factors == (4,)
    assert all(b == ((3 * a[0]) % 4,) for a, b in lim.elements)


@st.composite
def diagrams(draw):
    pool = [C(2), C(3), C(4), C(6), C(2, 2), C(2, 4), C(1) if False else C()]
    k = draw(st.integers(1, 4))
    nodes = [draw(st.sampled_from(pool)) for _ in range(k)]
    edges = []
    for _ in range(draw(st.integers(0, 5))):
        s, t = draw(st.integers(0, k - 1)), draw(st.integers(0, k - 1))
        homs = homomorphisms(nodes[s], nodes[t])
        edges.append((s, t, homs[draw(st.integers(0, len(homs) - 1))]))
    return nodes, edges


@settings(max_examples=120, deadline=None)
@given(diagrams())
def test_limit_brute_matches_congruence(d):
    nodes, edges = d
    a = diagram_limit(nodes, edges, method="brute")
    b = diagram_limit(nodes, edges, method="congruence")
    assert a.invariant_factors == b.invariant_factors


def test_stable_partitions_small():
    P3 = stable_partitions(3)
    assert len(P3) == 2
    assert Partition.of([[0], [1, 2]]) in P3
    P4 = stable_partitions(4)
    assert Partition.of([[0], [2], [1, 3]]) in P4
    assert Partition.of([[0], [1, 2, 3]]) in P4


def test_stable_partitions_c5_list():
    expected = {
        Partition.of([[0], [1], [2], [3], [4]]),
        Partition.of([[0], [1, 4], [2, 3]]),          # A
        Partition.of([[0], [1, 2, 3, 4]]),            # B
        Partition.of([[0], [1], [2, 3], [4]]),        # C
        Partition.of([[0], [2], [4, 1], [3]]),        # C' (generator t^2)
        Partition.of([[0], [1, 2], [3, 4]]),          # D
        Partition.of([[0], [2, 4], [1, 3]]),          # D'
    }
    assert set(stable_partitions(5)) == expected


@pytest.mark.parametrize("n", range(1, 9))
def test_stable_partition_invariants(n):
    parts = stable_partitions(n)
    assert len(parts) == len(set(parts))
    for P in parts:
        assert (0,) in P.blocks
        assert P.universe() == set(range(n))
        inv = {tuple(sorted((-x) % n for x in b)) for b in P.blocks}
        assert inv == set(P.blocks)
    assert parts[0].is_finest()


def _brute_invariants(gens, moduli):
    G = FiniteAbelianGroup(moduli)
    return subgroup_generated(G, gens).group.invariant_factors()


@settings(max_examples=200, deadline=None)
@given(st.lists(st.sampled_from([2, 3, 4, 6, 8, 9]), min_size=1, max_size=3), st.data())
def test_subgroup_invariants_vs_closure(moduli, data):
    gens = data.draw(st.lists(st.tuples(*[st.integers(0, m - 1) for m in moduli]), max_size=3))
    got = tuple(x for x in subgroup_invariants([list(g) for g in gens], moduli) if x > 1)
    assert got == _brute_invariants(gens, moduli)


def test_smith_normal_form_divisibility():
    rng = random.Random(7)
    for _ in range(50):
        a = [[rng.randint(-9, 9) for _ in range(3)] for _ in range(4)]
        D, P, Q = smith_normal_form(a)
        # P a Q == D
        PA = [[sum(P[i][k] * a[k][j] for k in range(4)) for j in range(3)] for i in range(4)]
        PAQ = [[sum(PA[i][k] * Q[k][j] for k in range(3)) for j in range(3)] for i in range(4)]
        assert PAQ == D
        diag = [abs(D[i][i]) for i in range(3)]
        for x, y in zip(diag, diag[1:]):
            assert (y == 0) or (x != 0 and y % x == 0)
        assert all(D[i][j] == 0 for i in range(4) for j in range(3) if i != j)


def test_group_serialization():
    G = C(4, 2)
    assert G.to_json() == {"invariant_factors": [2, 4]}
    assert FiniteAbelianGroup.from_json(G.to_json()).is_isomorphic(G)
    assert str(C()) == "0" and str(C(2, 4)) == "C2 x C4"
