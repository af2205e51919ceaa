import itertools

import pytest

from naplespf import (
    ParkingPreference,
    SizeLimitExceeded,
    UnknownProperty,
    count_perm_invariant_fast,
    find_counterexample,
    find_monotone_window_violation,
    is_k_naples,
    iter_preferences,
    rank_to_pref,
    sweep,
    verify_sweep,
)
from naplespf.sweeps import PROPERTIES, TRUE_PROPERTIES


class TestCounting:
    def test_classical_counts(self):
        assert sweep(3, 0).counts["parking_function"] == 16
        assert sweep(1, 0).counts["parking_function"] == 1
        assert sweep(2, 1).counts["k_naples"] == 4

    def test_window_one_failures(self):
        report = sweep(3, 1)
        assert report.counts["k_naples"] == 24
        failures = {
            tup
            for tup in iter_preferences(3)
            if not is_k_naples(ParkingPreference(tup), 1)
        }
        assert failures == {(2, 3, 3), (3, 2, 3), (3, 3, 3)}

    def test_report_fields(self):
        report = sweep(3, 1, shards=2)
        assert report.n == 3 and report.k == 1
        assert report.total == 27
        assert report.shards == 2
        assert report.elapsed >= 0

    def test_requested_predicates_only(self):
        report = sweep(3, 1, predicates=("parking_function",))
        assert set(report.counts) == {"parking_function"}

    def test_unknown_predicate(self):
        with pytest.raises(ValueError):
            sweep(3, 1, predicates=("bogus",))

    @pytest.mark.parametrize("n", [2, 3, 4, 5])
    def test_count_relations(self, n):
        previous = None
        for k in range(n + 1):
            counts = sweep(n, k).counts
            assert counts["parking_function"] <= counts["k_naples"]
            assert counts["perm_invariant"] <= counts["k_naples"]
            assert counts["complete_k_naples"] <= counts["complete"]
            if k == 0:
                assert counts["k_naples"] == counts["parking_function"]
                assert counts["perm_invariant"] == counts["parking_function"]
            if previous is not None:
                assert counts["k_naples"] >= previous
            previous = counts["k_naples"]

    def test_shard_independence(self):
        reports = [sweep(5, 2, shards=w) for w in (1, 2, 3, 5, 8)]
        assert all(r.counts == reports[0].counts for r in reports)

    def test_size_caps(self):
        with pytest.raises(SizeLimitExceeded):
            sweep(9, 0)
        with pytest.raises(SizeLimitExceeded):
            sweep(10, 0, allow_large=True)

    def test_argument_validation(self):
        with pytest.raises(ValueError):
            sweep(0, 0)
        with pytest.raises(ValueError):
            sweep(3, 4)
        with pytest.raises(ValueError):
            sweep(3, -1)
        with pytest.raises(ValueError):
            sweep(3, 1, shards=0)

    def test_verify_flag_passes_clean(self):
        report = sweep(3, 1, verify=True)
        assert report.counts["k_naples"] == 24


class TestPermInvariantFast:
    @pytest.mark.parametrize("n", [1, 2, 3, 4, 5])
    def test_matches_sweep(self, n):
        for k in range(n + 1):
            fast = count_perm_invariant_fast(n, k)
            assert fast == sweep(n, k).counts["perm_invariant"]

    def test_small_values(self):
        assert count_perm_invariant_fast(1, 1) == 1
        assert count_perm_invariant_fast(2, 1) == 4

    def test_class_counting(self):
        # n=2, k=1: classes {1,1}, {1,2}, {2,2} are all invariant
        assert count_perm_invariant_fast(2, 1, by_class=True) == 3
        classes = count_perm_invariant_fast(4, 2, by_class=True)
        sequences = count_perm_invariant_fast(4, 2)
        assert classes <= sequences

    def test_class_count_matches_enumeration(self):
        for n in range(1, 5):
            for k in range(n + 1):
                expected = sum(
                    1
                    for rep in itertools.combinations_with_replacement(
                        range(1, n + 1), n
                    )
                    if all(
                        is_k_naples(ParkingPreference(p), k)
                        for p in {
                            ParkingPreference(t)
                            for t in itertools.permutations(rep)
                        }
                    )
                )
                assert count_perm_invariant_fast(n, k, by_class=True) == expected


class TestOdometer:
    def test_rank_round_trip(self):
        for n in (1, 2, 3, 4):
            for rank, tup in enumerate(iter_preferences(n)):
                assert rank_to_pref(n, rank) == tup

    def test_order_is_lexicographic(self):
        seq = list(iter_preferences(3))
        assert seq == sorted(seq)
        assert seq[0] == (1, 1, 1)
        assert seq[-1] == (3, 3, 3)


class TestFalsification:
    def test_true_property_has_no_counterexample(self):
        assert (
            find_counterexample(3, 3, "necessary_excess_bound_is_necessary") is None
        )

    def test_deliberately_false_property(self):
        ce = find_counterexample(3, 1, "excess_bound_is_sufficient")
        assert ce is not None
        assert ce.pref.prefs == (2, 3, 3)
        assert ce.n == 3 and ce.k == 1

    def test_trivial_length(self):
        for name in TRUE_PROPERTIES:
            assert find_counterexample(1, 1, name) is None

    def test_unknown_property(self):
        with pytest.raises(UnknownProperty):
            find_counterexample(2, 1, "not_a_property")

    def test_registry_is_documented(self):
        for prop in PROPERTIES.values():
            assert prop.doc
        assert "excess_bound_is_sufficient" not in TRUE_PROPERTIES


class TestVerifySweep:
    @pytest.mark.parametrize("n", [1, 2, 3, 4])
    def test_all_invariants_hold(self, n):
        assert verify_sweep(n) is None

    def test_subset_of_properties(self):
        assert verify_sweep(3, properties=("easy_characterization",)) is None

    def test_unknown_property(self):
        with pytest.raises(UnknownProperty):
            verify_sweep(2, properties=("bogus",))

    def test_finds_planted_counterexample(self):
        ce = verify_sweep(3, ks=(1,), properties=("excess_bound_is_sufficient",))
        assert ce is not None and ce.pref.prefs == (2, 3, 3)


class TestMonotoneWindows:
    def test_no_violation_exhaustive(self):
        assert find_monotone_window_violation(4) is None
