import random

import pytest

import endo_split
from endo_split import ConjIdemWitness, EndoError, FreeEndo, WitnessError
from word_core import Word, conjugate, reduce


def x(*pairs):
    return reduce(pairs)


def a(*pairs):
    return reduce(pairs)


def test_free_endo_rejects_bad_input():
    with pytest.raises(EndoError):
        FreeEndo(2, (Word.generator(0), Word.generator(2)))
    with pytest.raises(EndoError):
        FreeEndo(2, (Word.generator(0),))
    with pytest.raises(EndoError):
        FreeEndo(0, ())


def test_apply_and_compose(swap, retraction):
    assert endo_split.apply(swap, x((0, 2), (1, -1))) == x((1, 2), (0, -1))
    assert endo_split.compose(swap, swap) == endo_split.identity_endo(2)
    assert endo_split.compose(retraction, retraction) == retraction
    assert endo_split.apply(retraction, x((1, 1), (0, -2))) == Word.identity()


def test_power(swap):
    assert endo_split.power(swap, 0) == endo_split.identity_endo(2)
    assert endo_split.power(swap, 3) == swap
    with pytest.raises(EndoError):
        endo_split.power(swap, -1)


def test_check_conj_idem(inner_witness, w, swap, retraction):
    assert endo_split.check_conj_idem(inner_witness.endo, w)
    assert endo_split.check_conj_idem(retraction, Word.identity())
    assert not endo_split.check_conj_idem(swap, Word.identity())
    with pytest.raises(WitnessError):
        ConjIdemWitness(swap, Word.identity())


def test_x_sequence_is_constant_for_inner_witness(inner_witness, w):
    assert all(endo_split.x_sequence(inner_witness, i) == w for i in range(4))
    with pytest.raises(EndoError):
        endo_split.x_sequence(inner_witness, -1)


def test_conjugation_identity(inner_witness):
    assert endo_split.verify_conjugation_identity(inner_witness, 2, 1, 3)
    assert not endo_split.verify_conjugation_identity(inner_witness, 2, 1, 3, printed_exponent=True)
    assert endo_split.verify_conjugation_identity(inner_witness, 1, 0, 2, printed_exponent=True)


@pytest.mark.parametrize("m, i, k", [(1, 1, 1), (2, 0, 0)])
def test_conjugation_identity_preconditions(inner_witness, m, i, k):
    with pytest.raises(EndoError):
        endo_split.verify_conjugation_identity(inner_witness, m, i, k)


def test_make_idempotent_from_preimage(inner_witness, w):
    g = endo_split.make_idempotent_from_preimage(inner_witness, w)
    assert g == endo_split.identity_endo(2)
    with pytest.raises(EndoError):
        endo_split.make_idempotent_from_preimage(inner_witness, Word.identity())


def test_image_bootstrap(inner_witness, w):
    assert endo_split.image_bootstrap(inner_witness, 0, 1, w, 3)
    assert not endo_split.image_bootstrap(inner_witness, 0, 2, w, 3)
    with pytest.raises(EndoError):
        endo_split.image_bootstrap(inner_witness, 0, 1, w, 0)


def test_splitting_power_bumps_i(inner_witness, w):
    result = endo_split.splitting_power(inner_witness, 0, 1, w)
    assert result.power == 2
    assert result.conjugator == x((0, 1), (1, 1), (0, 1), (1, 1))
    assert result.idempotent == endo_split.identity_endo(2)


def test_splitting_power_without_bump(inner_witness, w):
    result = endo_split.splitting_power(inner_witness, 0, 1, w, bump=False)
    assert result.power == 1
    assert result.conjugator == w
    assert result.idempotent == endo_split.identity_endo(2)


def test_splitting_power_on_retraction(retraction):
    wit = ConjIdemWitness(retraction, Word.identity())
    result = endo_split.splitting_power(wit, 1, 1, Word.identity())
    assert result.power == 2
    assert result.idempotent == retraction


def test_splitting_power_rejects_false_witness(inner_witness):
    with pytest.raises(EndoError):
        endo_split.splitting_power(inner_witness, 0, 1, Word.identity())
    with pytest.raises(EndoError):
        endo_split.splitting_power(inner_witness, 0, 0, Word.identity())


def test_e_hom(inner_witness, w):
    assert endo_split.e_hom(inner_witness, a((0, 1), (1, -1))).is_identity
    assert endo_split.e_hom(inner_witness, a((2, 1))) == w
    assert endo_split.e_hom(inner_witness, Word.identity()).is_identity
    assert endo_split.relation_check(inner_witness, 3)


def test_kernel_witness_to_splitting_worked_instance(inner_witness, w):
    result = endo_split.kernel_witness_to_splitting(inner_witness, a((0, 1), (1, -1)))
    assert result.power == 1
    assert result.conjugator == w
    assert result.idempotent == endo_split.identity_endo(2)


@pytest.mark.parametrize("word", [
    a((0, 1)),
    a((2, 1)),
    a((0, 1), (0, -1)),
])
def test_kernel_witness_to_splitting_rejects(inner_witness, word):
    with pytest.raises(EndoError):
        endo_split.kernel_witness_to_splitting(inner_witness, word)


def test_find_kernel_witness(inner_witness):
    assert endo_split.find_kernel_witness(inner_witness, 2, 1) == a((0, 1), (1, -1))
    assert endo_split.find_kernel_witness(inner_witness, 1, 1) is None


def test_inner_search_certifies_rank_three():
    f = endo_split.inner_endo(3, x((1, 1), (2, 1)))
    found = endo_split.is_inner(f)
    assert found is not None
    assert endo_split.inner_endo(3, found) == f


def test_inner_search_negatives_are_definitive(swap):
    trivial = FreeEndo(3, (Word.identity(),) * 3)
    for f in (trivial, swap):
        verdict = endo_split.inner_search(f)
        assert verdict.conjugator is None
        assert verdict.definitive


def test_inner_search_respects_the_bound():
    conjugator = x((0, 5), (1, 1))
    f = endo_split.inner_endo(2, conjugator)
    verdict = endo_split.inner_search(f, 2)
    assert verdict.conjugator is None
    assert not verdict.definitive
    assert endo_split.inner_search(f, 8).conjugator == conjugator


def test_identity_is_inner_by_the_identity():
    assert endo_split.is_inner(endo_split.identity_endo(2)) == Word.identity()


def test_min_support_conjugator():
    target = conjugate(Word.generator(0), x((0, 2), (1, 1)))
    assert endo_split.min_support_conjugator(target, 0, x((0, 2), (1, 1)), 3) == x((1, 1))
    with pytest.raises(EndoError):
        endo_split.min_support_conjugator(target, 0, x((1, -1)), 3)


def test_recenter(swap):
    f = endo_split.inner_endo(2, x((1, 1)))
    assert endo_split.recenter(f, 0) == endo_split.identity_endo(2)
    with pytest.raises(EndoError):
        endo_split.recenter(swap, 0)
    with pytest.raises(EndoError):
        endo_split.recenter(f, 2)


def test_conjugates_every_test_word(swap, retraction):
    f = endo_split.inner_endo(2, x((0, 1), (1, -1)))
    words = [x((0, 1)), x((1, 1)), x((0, 1), (1, 1))]
    assert endo_split.conjugates_every_test_word(f, words)
    assert endo_split.conjugates_every_test_word(swap, [x((0, 1), (1, 1))])
    assert not endo_split.conjugates_every_test_word(swap, [x((0, 1))])
    assert not endo_split.conjugates_every_test_word(retraction, [x((1, 1))])


def test_random_retraction_is_idempotent(rng):
    for _ in range(20):
        g = endo_split.random_retraction(rng, 3, 4)
        assert endo_split.compose(g, g) == g


def test_random_witness_comes_with_preimage(rng):
    for _ in range(20):
        wit, c = endo_split.random_conj_idem_witness(rng, rng.randint(1, 3), 3)
        assert endo_split.apply(wit.endo, c) == wit.x0
        g = endo_split.make_idempotent_from_preimage(wit, c)
        assert endo_split.compose(g, g) == g


def test_random_kernel_elements_split(rng):
    for _ in range(10):
        wit, _ = endo_split.random_conj_idem_witness(rng, 2, 3)
        n = rng.choice((-2, -1, 1, 2))
        word = endo_split.random_kernel_element(rng, rng.choice((0, 1)), n, 3)
        assert sum(letter.exponent for letter in word.letters) == 0
        result = endo_split.kernel_witness_to_splitting(wit, word)
        g = result.idempotent
        assert endo_split.compose(g, g) == g


def test_random_kernel_element_rejects_bad_arguments(rng):
    with pytest.raises(EndoError):
        endo_split.random_kernel_element(rng, 2, 1, 3)
    with pytest.raises(EndoError):
        endo_split.random_kernel_element(rng, 0, 0, 3)


def test_witness_rejects_x0_outside_rank():
    with pytest.raises(EndoError) as excinfo:
        ConjIdemWitness(endo_split.identity_endo(2), x((0, 1), (5, -1)))
    assert str(excinfo.value) == "x0 uses x5 outside rank 2"


# =============================
# x0 outside the image of f
# =============================

ZERO = FreeEndo(2, (Word.identity(), Word.identity()))


@pytest.fixture
def zero_witness():
    return ConjIdemWitness(ZERO, x((0, 1), (1, 2)))


def test_zero_map_x_sequence_is_not_constant(zero_witness):
    assert endo_split.x_sequence(zero_witness, 0) == x((0, 1), (1, 2))
    assert all(endo_split.x_sequence(zero_witness, i).is_identity for i in range(1, 5))
    assert endo_split.relation_check(zero_witness, 6)


def test_zero_map_conjugation_identity(zero_witness):
    assert all(
        endo_split.verify_conjugation_identity(zero_witness, m, i, k)
        for i in range(5)
        for m in range(i + 1, 6)
        for k in range(1, 4)
    )


@pytest.mark.parametrize("word, expected_power", [
    (a((1, 1)), 2),
    (a((1, 2), (3, 1), (2, -1)), 4),
    (a((1, -1), (2, 1)), 2),
])
def test_zero_map_kernel_elements_split(zero_witness, word, expected_power):
    assert endo_split.e_hom(zero_witness, word).is_identity
    result = endo_split.kernel_witness_to_splitting(zero_witness, word)
    assert result.power == expected_power
    assert result.idempotent == ZERO


def test_zero_map_rejects_i_zero_kernel_candidates(zero_witness):
    with pytest.raises(EndoError):
        endo_split.kernel_witness_to_splitting(zero_witness, a((0, 1), (1, -1)))


def test_random_trivial_image_witnesses(rng):
    for _ in range(20):
        rank = rng.randint(1, 3)
        wit = endo_split.random_trivial_image_witness(rng, rank, 3)
        assert not wit.x0.is_identity
        assert all(image.is_identity for image in wit.endo.images)
        assert endo_split.relation_check(wit, 6)
        word = endo_split.random_kernel_element(rng, 1, rng.choice((-2, -1, 1, 2)), 3)
        g = endo_split.kernel_witness_to_splitting(wit, word).idempotent
        assert endo_split.compose(g, g) == g
    with pytest.raises(EndoError):
        endo_split.random_trivial_image_witness(rng, 2, 0)


@pytest.mark.parametrize("seed", range(3))
def test_random_witnesses_respect_the_relations(seed):
    rng = random.Random(seed)
    for _ in range(20):
        wit, _ = endo_split.random_conj_idem_witness(rng, rng.randint(1, 3), 3)
        assert endo_split.relation_check(wit, 6)
