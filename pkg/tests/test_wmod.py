import random

import pytest

from whitmod.coeff import SYMBOLIC, PsiSpec, Scalar, ZPoly
from whitmod.liecore import bracket, d
from whitmod.orders import EMPTY, Partition, Triple, triple_prec
from whitmod.wmod import (
    BasisMonomial,
    ModuleVector,
    ZeroVector,
    act,
    act_word,
    basis_vector,
    degree_of,
    in_filtration,
    is_whittaker,
    straighten_word,
    w_vector,
)

S1, S2, S3 = (Scalar.generator(j) for j in (1, 2, 3))
PSI123 = PsiSpec.of(1, 2, 3)


def test_basis_vector_shape():
    v = basis_vector([(0, 1)], [(0, 2)], k=1, r=2, coeff=3)
    ((mono, c),) = list(v.terms())
    assert mono == BasisMonomial(Partition([(0, 1)]), Partition([(0, 2)]), 1, 2)
    assert c == Scalar.rational(3)
    with pytest.raises(ValueError):
        basis_vector(k=-1)
    with pytest.raises(ValueError):
        basis_vector(r=-2)


def test_vector_arithmetic():
    w = w_vector()
    v = basis_vector([(0, 1)])
    assert (w + v) - v == w
    assert w - w == ModuleVector()
    assert not (w - w)
    assert len(w + v) == 2
    assert 2 * v == v + v
    assert -v == v * -1
    assert (S1 * w).coeff(next(iter(w.terms()))[0]) == S1


def test_positive_generators_on_w():
    w = w_vector()
    assert act(d(1, (0, 1)), w) == S1 * w
    assert act(d(2, (0, 1)), w) == S2 * w
    assert act(d(2, (0, 2)), w) == S3 * w
    # every other positive generator kills w
    assert not act(d(1, (0, 2)), w)
    assert not act(d(1, (0, 3)), w)
    assert not act(d(2, (0, 3)), w)
    assert not act(d(1, (1, -1)), w)
    assert not act(d(2, (2, 0)), w)


def test_zero_component_type_rejected():
    from whitmod.coeff import SingularPsi

    with pytest.raises(SingularPsi):
        PsiSpec.of(1, 0, 3)


def test_h_and_z_build_monomials():
    w = w_vector()
    z = d(1, (0, 0))
    h2 = d(2, (0, 0))
    assert act(z, w) == basis_vector(r=1)
    assert act(z, act(z, w)) == basis_vector(r=2)
    assert act(h2, w) == basis_vector(k=1)
    # canonical order puts h before z, so acting with z first still lands
    # on the same straightened monomial
    assert act(h2, act(z, w)) == act_word([(2, (0, 0)), (1, (0, 0))], w)
    assert act(h2, act(z, w)).coeff(BasisMonomial(EMPTY, EMPTY, 1, 1)) == Scalar.rational(1)


def test_z_shift_through_negative_factor():
    # z x = x z - x for x = d1((-1, 0)): shifting z past a factor of
    # weight (-1, 0) costs one lower-order copy
    lam = Partition([(1, 0)])
    x = d(1, (-1, 0))
    # x z w is already normally ordered, so no correction appears
    assert act(x, basis_vector(r=1)) == basis_vector(lam, r=1)
    # z x w needs the swap and picks one up
    assert straighten_word([(1, (0, 0)), (1, (-1, 0))]) == basis_vector(lam, r=1) - basis_vector(lam)
    assert act(d(1, (0, 0)), basis_vector(lam)) == basis_vector(lam, r=1) - basis_vector(lam)


def test_act_is_linear():
    v = basis_vector([(0, 1)]) + 2 * w_vector()
    x = d(1, (0, 1))
    assert act(x, v) == act(x, basis_vector([(0, 1)])) + 2 * act(x, w_vector())


def test_action_respects_bracket():
    rng = random.Random(0xACE)
    pool = [(1, (0, 1)), (2, (0, 2)), (1, (-1, 0)), (2, (0, -1)), (1, (0, 0)), (2, (0, 0)), (2, (1, -1))]
    for _ in range(30):
        (i, a), (j, b) = rng.sample(pool, 2)
        word = [rng.choice(pool) for _ in range(rng.randint(0, 2))]
        v = act_word(word, w_vector())
        x, y = d(i, a), d(j, b)
        lhs = act(x, act(y, v)) - act(y, act(x, v))
        assert lhs == act(bracket(x, y), v), (i, a, j, b, word)


def test_act_word_order():
    w = w_vector()
    word = [(2, (0, -1)), (1, (0, 1))]
    # rightmost factor applies first
    assert act_word(word, w) == act(d(2, (0, -1)), act(d(1, (0, 1)), w))


def test_specialize_commutes_with_act():
    v = act_word([(1, (-1, 2)), (2, (0, -2))], w_vector())
    x = d(2, (0, 2))
    assert act(x, v, SYMBOLIC).specialize(PSI123) == act(x, v.specialize(PSI123), PSI123)


def test_degree_of():
    lam = Partition([(0, 1)])
    v = basis_vector(lam, r=2) + 3 * basis_vector(lam) + basis_vector(r=5)
    top, poly = degree_of(v)
    assert top == Triple(lam, EMPTY, 0)
    assert poly == ZPoly([Scalar.rational(3), Scalar.rational(0), Scalar.rational(1)])
    with pytest.raises(ZeroVector):
        degree_of(ModuleVector())


def test_in_filtration():
    lam = Partition([(0, 1)])
    v = w_vector() + basis_vector(r=3)
    assert in_filtration(v, Triple(lam, EMPTY, 0))
    assert not in_filtration(basis_vector(lam), Triple(lam, EMPTY, 0))
    assert in_filtration(ModuleVector(), Triple(EMPTY, EMPTY, 0))


def test_is_whittaker():
    w = w_vector()
    assert is_whittaker(w)
    assert is_whittaker(w, PSI123)
    check = is_whittaker(basis_vector([(0, 1)]))
    assert not check
    i, alpha, defect = check.witness
    assert defect
    assert is_whittaker(5 * w, PSI123)


def test_z_powers_of_w_are_whittaker():
    # every type-supported generator has first weight component zero, so
    # the z-shift d_i(alpha) z^r = (z - a1)^r d_i(alpha) is invisible on
    # z^r w and the whole line C[z] w consists of Whittaker vectors
    for r in range(4):
        assert is_whittaker(basis_vector(r=r))
        assert is_whittaker(basis_vector(r=r), PSI123)


def test_hw_is_not_whittaker():
    # [d1((0,1)), h2] = -d1((0,1)) leaves a -s1 w defect on h2 w
    check = is_whittaker(basis_vector(k=1))
    assert not check
    i, alpha, defect = check.witness
    assert (i, alpha) == (1, (0, 1))
    assert defect == -(S1 * w_vector())


def test_monomial_json_round_trip():
    mono = BasisMonomial(Partition([(0, 1), (1, -2)]), Partition([(0, 2)]), 2, 1)
    assert BasisMonomial.from_json(mono.to_json()) == mono


def test_vector_json_round_trip():
    v = act_word([(1, (-1, 2)), (2, (0, -2))], w_vector()) + S3 * w_vector()
    assert ModuleVector.from_json(v.to_json()) == v


def test_nonzero_vectors_have_comparable_triples():
    rng = random.Random(0x88)
    pool = [(1, (-1, 0)), (2, (0, -1)), (2, (0, 0)), (1, (0, 0)), (1, (0, 1))]
    for _ in range(20):
        word = [rng.choice(pool) for _ in range(rng.randint(1, 4))]
        v = act_word(word, w_vector())
        if not v:
            continue
        top, poly = degree_of(v)
        assert poly.degree is not None
        for t in v.support_triples():
            assert t == top or triple_prec(t, top)
