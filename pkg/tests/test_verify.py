import json
from math import comb, gcd

import pytest

from groupsums import (
    AbelianGroup,
    BudgetExceededError,
    GroupSubset,
    REFUTED,
    VACUOUS,
    VERIFIED,
    Verdict,
    critical_number,
    naive_subset_sums,
    pair_cover,
    parse_group_spec,
    search_lemma2_counterexamples,
    sigma,
    sweep,
    verify_pair_cover_threshold,
    verify_subset_sum_bound,
    verify_three_fold_cover,
)

from property_checks import check_jobs_determinism, check_monotonicity


# -- pair-cover threshold -------------------------------------------------------


def test_threshold_z5():
    v = verify_pair_cover_threshold(parse_group_spec("Z5"))
    assert v.status == VERIFIED
    assert v.params["threshold_size"] == 3
    assert v.checked == 4


def test_threshold_z6():
    v = verify_pair_cover_threshold(parse_group_spec("Z6"))
    assert v.status == VERIFIED
    assert v.params["threshold_size"] == 4
    assert v.checked == 5


def test_threshold_vacuous_on_elementary_two_groups():
    v = verify_pair_cover_threshold(parse_group_spec("Z2^2"))
    assert v.status == VACUOUS
    assert v.params["threshold_size"] == 4
    assert v.checked == 0 and v.witnesses == []
    # vacuity is decided without enumeration, so the budget is irrelevant
    big = verify_pair_cover_threshold(parse_group_spec("Z2^8"))
    assert big.status == VACUOUS


def test_threshold_sweep_small_orders_never_refuted():
    for v in sweep("prop3.2", range(1, 17)):
        assert v.status in (VERIFIED, VACUOUS), v.group


# -- lemma-2 counterexample search ------------------------------------------------


FROZEN_LEMMA2 = {
    4: (3, {"1": 3}),
    6: (6, {"1": 4, "2": 2}),
    8: (20, {"1": 20}),
    10: (42, {"1": 36, "2": 6}),
    12: (105, {"1": 98, "2": 7}),
    14: (244, {"1": 232, "2": 12}),
}


def test_lemma2_m6_full_witness_list():
    v = search_lemma2_counterexamples(6)
    assert v.status == REFUTED
    assert v.checked == 10
    assert v.params["violations"] == 6
    assert v.params["deficiency_histogram"] == {"1": 4, "2": 2}
    assert v.witnesses == [[1, 2, 3], [1, 3, 4], [1, 2, 5], [2, 3, 5], [1, 4, 5], [3, 4, 5]]


def test_lemma2_m7_verified():
    v = search_lemma2_counterexamples(7)
    assert v.status == VERIFIED
    assert v.checked == 15
    assert v.params["violations"] == 0
    assert v.witnesses == []


def test_lemma2_m10_two_missing_witness():
    v = search_lemma2_counterexamples(10)
    assert v.status == REFUTED
    assert [1, 2, 5, 6, 7] in v.witnesses
    missing = pair_cover(GroupSubset.from_indices(parse_group_spec("Z10"), [1, 2, 5, 6, 7])).complement()
    assert missing.indices() == (0, 4)


@pytest.mark.parametrize("m", sorted(FROZEN_LEMMA2))
def test_lemma2_frozen_counts(m):
    v = search_lemma2_counterexamples(m)
    violations, hist = FROZEN_LEMMA2[m]
    assert v.status == REFUTED
    assert v.checked == comb(m - 1, m // 2)
    assert v.params["violations"] == violations
    assert v.params["deficiency_histogram"] == hist


@pytest.mark.parametrize("m", [5, 7, 9, 11, 13])
def test_lemma2_odd_agrees_with_threshold_verifier(m):
    a = search_lemma2_counterexamples(m)
    b = verify_pair_cover_threshold(AbelianGroup.cyclic(m))
    assert a.status == b.status == VERIFIED
    assert a.checked == b.checked
    assert a.params["subset_size"] == b.params["threshold_size"]


def test_lemma2_witnesses_are_genuine():
    G = parse_group_spec("Z12")
    v = search_lemma2_counterexamples(12)
    for w in v.witnesses:
        A = GroupSubset.from_indices(G, w)
        assert 2 * A.cardinality >= 12
        assert 0 not in A
        cover = A | naive_subset_sums(A, 2)
        assert cover.bits != G.full_mask


def test_lemma2_deficiency_reps_survive_a_small_cap():
    v = search_lemma2_counterexamples(10, witness_cap=2)
    assert len(v.witnesses) == 2
    assert [1, 2, 3, 4, 5] in v.witnesses
    assert [1, 2, 5, 6, 7] in v.witnesses


def test_lemma2_deficiency_witnesses_across_even_orders():
    from groupsums import even_counterexample, two_mod_four_counterexample

    for m in range(4, 21, 2):
        v = search_lemma2_counterexamples(m)
        G = AbelianGroup.cyclic(m)
        deficiencies = {
            m - pair_cover(GroupSubset.from_indices(G, w)).cardinality for w in v.witnesses
        }
        # the half-interval counterexample is the colex-first violation, so a
        # one-missing witness is always reported
        assert list(even_counterexample(m)[1].indices()) in v.witnesses
        assert 1 in deficiencies
        if m % 4 == 2:
            assert 2 in deficiencies
            assert list(two_mod_four_counterexample(m)[1].indices()) in v.witnesses


def test_lemma2_first_only_mode():
    v = search_lemma2_counterexamples(14, exhaustive=False)
    assert v.status == REFUTED
    assert v.checked == 1
    assert v.witnesses == [[1, 2, 3, 4, 5, 6, 7]]
    assert v.params["exhaustive"] is False
    ok = search_lemma2_counterexamples(13, exhaustive=False)
    assert ok.status == VERIFIED
    assert ok.checked == comb(12, 7)


def test_lemma2_rejects_tiny_m():
    with pytest.raises(ValueError):
        search_lemma2_counterexamples(2)


def test_lemma2_budget():
    with pytest.raises(BudgetExceededError):
        search_lemma2_counterexamples(30)
    raised = search_lemma2_counterexamples(26, budget=26, exhaustive=False)
    assert raised.status == REFUTED


# -- subset-sum bound ---------------------------------------------------------------


def test_bound_z6_residual_case():
    v = verify_subset_sum_bound(parse_group_spec("Z6"))
    assert v.status == VERIFIED
    assert v.checked == 1  # only {1,2,3,4,5} has size >= 5


def test_bound_z9_candidate_count():
    v = verify_subset_sum_bound(parse_group_spec("Z9"))
    assert v.status == VERIFIED
    assert v.checked == 93
    assert v.params == {"min_size": 5, "violations": 0, "equality_count": 0}


FROZEN_EQUALITY_COUNTS = {
    "Z10": 0,
    "Z11": 10,
    "Z12": 5,
    "Z13": 12,
    "Z14": 9,
    "Z15": 18,
    "Z16": 10,
    "Z2xZ6": 3,
    "Z2xZ4": 0,
    "Z2^3": 0,
    "Z3^2": 0,
}

FROZEN_CANDIDATES = {"Z12": 1486, "Z13": 3302, "Z14": 7099, "Z15": 14913, "Z16": 30827}


@pytest.mark.parametrize("spec", sorted(FROZEN_EQUALITY_COUNTS))
def test_bound_frozen_equality_counts(spec):
    G = parse_group_spec(spec)
    v = verify_subset_sum_bound(G)
    assert v.status == VERIFIED
    assert v.params["violations"] == 0
    assert v.params["equality_count"] == FROZEN_EQUALITY_COUNTS[spec]
    if spec in FROZEN_CANDIDATES:
        assert v.checked == FROZEN_CANDIDATES[spec]


def test_bound_z15_equality_witnesses():
    v = verify_subset_sum_bound(parse_group_spec("Z15"), witness_cap=32)
    expected = [
        [3, 4, 7, 8, 11], [1, 3, 6, 9, 12], [2, 3, 6, 9, 12], [3, 4, 6, 9, 12],
        [3, 5, 6, 9, 12], [3, 6, 7, 9, 12], [3, 6, 8, 9, 12], [3, 6, 9, 10, 12],
        [4, 7, 8, 11, 12], [3, 6, 9, 11, 12], [2, 4, 6, 11, 13], [2, 4, 9, 11, 13],
        [3, 6, 9, 12, 13], [1, 6, 7, 8, 14], [1, 7, 8, 9, 14], [3, 6, 9, 12, 14],
        [1, 2, 3, 13, 14], [1, 2, 12, 13, 14],
    ]
    assert v.witnesses == expected


def test_bound_equality_witnesses_are_genuine():
    for spec in ("Z11", "Z15", "Z2xZ6"):
        G = parse_group_spec(spec)
        v = verify_subset_sum_bound(G)
        for w in v.witnesses:
            A = GroupSubset.from_indices(G, w)
            assert naive_subset_sums(A).cardinality == 2 * A.cardinality < G.order


def test_bound_budget():
    with pytest.raises(BudgetExceededError):
        verify_subset_sum_bound(AbelianGroup.cyclic(25))
    with pytest.raises(ValueError):
        verify_subset_sum_bound(parse_group_spec("Z9"), 0)


def test_bound_small_min_size_exploration():
    # below the stated regime nothing is asserted by the statement, but the
    # sweep itself must still run and count candidates correctly
    v = verify_subset_sum_bound(parse_group_spec("Z7"), 1)
    assert v.checked == (1 << 6) - 1


# -- critical number -------------------------------------------------------------------


THEOREM5_VALUES = [
    ("Z4", 3), ("Z6", 4), ("Z8", 5), ("Z2^2", 3), ("Z2xZ4", 5),
    ("Z2^3", 4), ("Z10", 5), ("Z12", 6), ("Z2xZ6", 6), ("Z14", 7),
]


@pytest.mark.parametrize("spec,expected", THEOREM5_VALUES)
def test_critical_number_known_values(spec, expected):
    G = parse_group_spec(spec)
    c, v = critical_number(G)
    assert c == expected
    assert v.status == VERIFIED
    assert v.params["critical_number"] == expected
    assert v.params["matches_known"] is True
    assert v.checked == sum(comb(G.order - 1, s) for s in range(1, c + 1))


def test_critical_number_witness_fails_at_previous_size():
    for spec in ("Z6", "Z8", "Z2xZ4", "Z10"):
        G = parse_group_spec(spec)
        c, v = critical_number(G)
        (w,) = v.witnesses
        A = GroupSubset.from_indices(G, w)
        assert A.cardinality == c - 1
        assert naive_subset_sums(A).bits != G.full_mask


def test_critical_number_odd_order_has_no_known_value():
    c, v = critical_number(parse_group_spec("Z9"))
    assert v.params["known_value"] is None
    assert v.params["matches_known"] is None
    assert v.status == VERIFIED


def test_critical_number_upward_closure():
    from itertools import combinations

    for spec in ("Z6", "Z8", "Z2xZ4"):
        G = parse_group_spec(spec)
        c, _ = critical_number(G)
        full = G.full_mask
        for size in (c, c + 1):
            for combo in combinations(range(1, G.order), size):
                assert sigma(GroupSubset.from_indices(G, combo)).bits == full
        assert any(
            sigma(GroupSubset.from_indices(G, combo)).bits != full
            for combo in combinations(range(1, G.order), c - 1)
        )


def test_critical_number_rejects_tiny_groups():
    with pytest.raises(ValueError):
        critical_number(parse_group_spec("Z2"))


# -- three-fold cover -----------------------------------------------------------------


def test_three_fold_cover_counts():
    for m, count in [(12, 792), (14, 3003), (16, 11440)]:
        v = verify_three_fold_cover(m)
        assert v.status == VERIFIED
        assert v.checked == count == comb(m, m // 2 + 1)
        assert v.params["violations"] == 0


def test_three_fold_cover_preconditions():
    for bad in (11, 13, 10, 0):
        with pytest.raises(ValueError):
            verify_three_fold_cover(bad)
    with pytest.raises(BudgetExceededError):
        verify_three_fold_cover(26)


# -- shared verifier machinery ----------------------------------------------------------


def test_monotonicity_licenses_minimal_size_checks():
    check_monotonicity(trials=100)


def test_jobs_determinism():
    check_jobs_determinism()


def test_symmetry_reduction_matches_unreduced():
    for m in (6, 7, 8, 9, 10, 11, 12, 13):
        plain = search_lemma2_counterexamples(m)
        reduced = search_lemma2_counterexamples(m, symmetry=True)
        assert plain.status == reduced.status
        assert plain.params["violations"] == reduced.params["violations"]
        if plain.status == REFUTED:
            assert plain.params["deficiency_histogram"] == reduced.params["deficiency_histogram"]
        assert reduced.params["expansion_factor"] == sum(1 for u in range(1, m) if gcd(u, m) == 1)
        assert reduced.params["orbit_reps_found"] <= plain.params["violations"]
    plain = verify_three_fold_cover(12)
    reduced = verify_three_fold_cover(12, symmetry=True)
    assert plain.status == reduced.status == VERIFIED


def test_symmetry_rejected_for_noncyclic():
    with pytest.raises(ValueError):
        verify_pair_cover_threshold(parse_group_spec("Z2xZ4"), symmetry=True)


def test_symmetry_certificates_are_jobs_independent():
    a = search_lemma2_counterexamples(10, symmetry=True, jobs=1)
    b = search_lemma2_counterexamples(10, symmetry=True, jobs=3)
    assert a.core() == b.core()


def test_symmetry_witnesses_are_orbit_minima():
    v = search_lemma2_counterexamples(8, symmetry=True)
    perms = [tuple(u * i % 8 for i in range(8)) for u in (1, 3, 5, 7)]
    for w in v.witnesses:
        mask = sum(1 << i for i in w)
        images = []
        for p in perms:
            img = 0
            for i in w:
                img |= 1 << p[i]
            images.append(img)
        assert mask == min(images)


def test_sweep_unknown_statement():
    with pytest.raises(ValueError):
        sweep("thm2", range(3, 5))


def test_sweep_skips_out_of_domain_orders():
    vs = sweep("thm4", range(4, 17))
    assert [v.group for v in vs] == ["Z12", "Z14", "Z16"]
    vs = sweep("lemma2-search", range(4, 21, 2))
    assert all(v.status == REFUTED for v in vs)


def test_sweep_thm5_example_orders():
    vs = sweep("thm5", [4, 6, 8, 10, 12])
    got = {(v.group, v.params["critical_number"]) for v in vs}
    assert ("Z4", 3) in got and ("Z8", 5) in got and ("Z12", 6) in got
    assert all(v.params["matches_known"] in (True, None) for v in vs)


def test_sweep_cyclic_only():
    vs = sweep("thm1", [8], cyclic_only=True)
    assert [v.group for v in vs] == ["Z8"]


# -- certificates --------------------------------------------------------------------


def test_verdict_json_round_trip():
    v = search_lemma2_counterexamples(6)
    again = Verdict.from_json(v.to_json())
    assert again == v
    assert json.loads(v.to_json())["statement"] == "lemma2-search"


def test_verdict_schema_keys():
    v = verify_pair_cover_threshold(parse_group_spec("Z5"))
    assert set(v.to_dict()) == {
        "statement", "group", "params", "status", "checked",
        "witnesses", "elapsed_ms", "toolchain_version",
    }
    assert v.toolchain_version
