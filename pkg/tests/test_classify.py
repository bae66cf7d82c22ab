import pytest

from conftest import run_of
from hopfpi1.classify import (DESK_BOUND, brute_force_hopf_gradings, classify_hopf_gradings,
                              enumerate_hopf_gradings, enumerate_taft_gradings,
                              equivalent_gradings, ergodic_block_structures)
from hopfpi1.groups import Partition
from hopfpi1.gradings import is_hopf_grading_direct, verify_grading, walk_degree_subgroup
from hopfpi1.scalars import parse_field, primitive_root_of_unity


def groups_of(field, n):
    return sorted(str(eg.group) for eg in run_of(field, n).gradings)


def test_singleton_block(Q):
    (bs,) = ergodic_block_structures(Q, (0,))
    assert bs.group.is_trivial()


def test_c3_block_over_q(Q):
    (bs,) = ergodic_block_structures(Q, (1, 2))
    assert bs.group.moduli == (2,)
    assert bs.units[(1,)] == {1: Q.one, 2: -Q.one}  # delta_t - delta_t2


def test_size_four_block_over_q(Q):
    structs = ergodic_block_structures(Q, (1, 2, 3, 4))
    assert len(structs) == 6
    assert all(bs.group.invariant_factors() == (2, 2) for bs in structs)


def test_size_four_block_with_i():
    K = parse_field("Q(z4)")
    structs = ergodic_block_structures(K, (1, 2, 3, 4))
    by_group = {}
    for bs in structs:
        by_group.setdefault(bs.group.invariant_factors(), []).append(bs)
    assert len(by_group[(4,)]) == 6 and len(by_group[(2, 2)]) == 6
    assert all(bs.check(K) for bs in structs)


def _lines(structs, field):
    out = set()
    for bs in structs:
        lines = []
        for s, v in bs.units.items():
            first = v[min(v)]
            lines.append(tuple((u, (c / first).sort_key()) for u, c in sorted(v.items())))
        out.add(frozenset(lines))
    return out


@pytest.mark.parametrize("field,block", [("Q", (1, 2, 3, 4)), ("Q(z12)", (1, 2, 3)),
                                         ("Q(z12)", (1, 2, 3, 4)), ("F5", (1, 2, 3, 4))])
def test_normalization_point_does_not_matter(field, block):
    F = parse_field(field)
    base = _lines(ergodic_block_structures(F, block), F)
    for u0 in block[1:]:
        assert _lines(ergodic_block_structures(F, block, u0), F) == base


def test_enumeration_examples():
    assert groups_of("Q", 2) == ["0"]
    assert groups_of("F2", 3) == ["0"]
    assert groups_of("Q(z12)", 5) == ["0", "C2", "C4", "C4"]


@pytest.mark.parametrize("n", [3, 4, 6])
def test_exactly_one_nontrivial(n):
    # k^{C3} over Q, k^{C4} over Q, k^{C6} with a sixth root of unity
    field = "Q(z12)" if n == 6 else "Q"
    assert len(run_of(field, n).gradings) == 2


def test_c5_partitions_of_gradings(Q12):
    gr = run_of("Q(z12)", 5).gradings
    A = Partition.of([[0], [1, 4], [2, 3]])
    B = Partition.of([[0], [1, 2, 3, 4]])
    assert [(str(g.group), g.partition) for g in gr[1:]] == [("C2", A), ("C4", B), ("C4", B)]


def test_c5_c4_gradings_are_the_two_signs_of_i(Q12):
    i = primitive_root_of_unity(Q12, 4)
    xs = set()
    for eg in run_of("Q(z12)", 5).gradings:
        if str(eg.group) == "C4":
            X = eg.grading
            gen = next(b for b, s in zip(X.basis, X.degrees) if s == (1,))
            xs.add(gen[2] / gen[1])
    assert xs == {i, -i}


def test_emitted_gradings_invariants():
    for field, n in [("Q", 5), ("Q(z12)", 6), ("Q(z12)", 7)]:
        for eg in run_of(field, n).gradings:
            X = eg.grading
            assert verify_grading(X).ok
            assert walk_degree_subgroup(X).connected
            assert is_hopf_grading_direct(X).ok


def test_n_out_of_bound(Q):
    with pytest.raises(ValueError):
        enumerate_hopf_gradings(Q, 1)
    with pytest.raises(ValueError):
        enumerate_hopf_gradings(Q, DESK_BOUND + 1)


def test_deterministic_order(Q12):
    a = [g.grading.to_json() for g in enumerate_hopf_gradings(Q12, 5)]
    b = [g.grading.to_json() for g in enumerate_hopf_gradings(Q12, 5)]
    assert a == b


def test_enumerated_json_has_provenance(Q12):
    data = run_of("Q(z12)", 5).gradings[2].to_json()
    assert data["provenance"]["partition"] == [[0], [1, 2, 3, 4]]
    assert data["provenance"]["block_groups"] == [[4]]


def test_taft_moduli():
    q3 = primitive_root_of_unity(parse_field("Q(z3)"), 3)
    assert sorted({r.m for r in enumerate_taft_gradings(3, q3, 5)}) == [1, 2, 4, 5]
    q2 = parse_field("Q")(-1)
    assert sorted({r.m for r in enumerate_taft_gradings(2, q2, 3)}) == [1, 3]


def test_taft_non_coprime_fail_connectedness():
    q3 = primitive_root_of_unity(parse_field("Q(z3)"), 3)
    passed, failed = enumerate_taft_gradings(3, q3, 6, include_failures=True)
    assert {r.m for r in failed} == {3, 6}
    assert all(not r.connected for r in failed)
    assert all(r.hopf for r in failed)


@pytest.mark.parametrize("field", ["Q", "Q(z12)", "F3", "F5", "Q(z4)"])
@pytest.mark.parametrize("n", [2, 3, 4])
def test_brute_force_oracle_agrees(field, n):
    F = parse_field(field)
    pipeline = [g.grading for g in enumerate_hopf_gradings(F, n)]
    oracle = brute_force_hopf_gradings(F, n)
    for X in oracle:
        assert any(equivalent_gradings(X, Y) for Y in pipeline)
    for Y in pipeline:
        assert any(equivalent_gradings(X, Y) for X in oracle)


def test_duality_cross_check_counts():
    run = classify_hopf_gradings(parse_field("Q(z12)"), 6)
    assert run.candidates and not run.disagreements
