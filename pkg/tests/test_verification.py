import random

import pytest

import endo_split
import thompson_f
import verification
from verification import ProfileSizes

TINY = ProfileSizes(
    word_pairs=200, witnesses=10, kernel_instances=5,
    inner_instances=10, graph_window=4, assoc_len=2,
)


def test_random_relator_is_trivial(rng):
    for _ in range(20):
        assert thompson_f.is_trivial(verification.random_relator(rng, 6))


def test_random_word_pairs_agree_across_oracles(rng):
    for _ in range(50):
        u, v = verification.random_word_pair(rng, 10, 6)
        thompson_f.words_equal(u, v)


def test_random_word_pairs_stay_within_the_length_bound(rng):
    spliced = 0
    for _ in range(500):
        u, v = verification.random_word_pair(rng, 16, 8)
        assert u.length <= 16 and v.length <= 16
        spliced += thompson_f.words_equal(u, v)
    assert spliced > 0
    with pytest.raises(ValueError):
        verification.random_word_pair(rng, 7, 8)


def test_random_witness_alternates_families(rng):
    for trial in range(10):
        wit = verification.random_witness(rng, trial, 3)
        trivial_image = all(image.is_identity for image in wit.endo.images)
        assert trivial_image == bool(trial % 2)
        assert endo_split.relation_check(wit, 6)


def test_shift_witness_checks():
    assert verification.shift_witness_checks(6)


def test_split_result_holds_for_worked_instance():
    wit, kernel_word = verification.worked_inner_instance()
    result = endo_split.kernel_witness_to_splitting(wit, kernel_word)
    assert verification.split_result_holds(wit.endo, result)


@pytest.mark.parametrize("criterion", verification.CRITERIA)
def test_each_criterion_passes_at_tiny_scale(criterion):
    result = criterion(TINY, random.Random(0))
    assert result.passed, result.line()


def test_run_acceptance(monkeypatch):
    monkeypatch.setitem(verification.PROFILES, "tiny", TINY)
    results = verification.run_acceptance("tiny", seed=3)
    assert [r.number for r in results] == list(range(1, 10))
    assert all(r.passed for r in results)
    assert results[8].line() == "PASS [9] ball counts: classes at lengths 1, 2, 3: [5, 17, 53]"


def test_run_acceptance_is_reproducible(monkeypatch):
    monkeypatch.setitem(verification.PROFILES, "tiny", TINY)
    first = verification.run_acceptance("tiny", seed=11)
    second = verification.run_acceptance("tiny", seed=11)
    assert [r.detail for r in first] == [r.detail for r in second]


def test_run_acceptance_rejects_unknown_profile():
    with pytest.raises(ValueError):
        verification.run_acceptance("huge")
