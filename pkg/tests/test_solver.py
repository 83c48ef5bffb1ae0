import random
from fractions import Fraction

import pytest

from whitmod.coeff import SYMBOLIC, PsiSpec, Scalar, SingularPsi, ZPoly
from whitmod.liecore import d
from whitmod.orders import EMPTY, Partition, Triple, TRIPLE_MIN
from whitmod.solver import (
    RULES,
    HypothesisViolated,
    LemmaInstance,
    ReductionTranscript,
    Truncation,
    quotient_act,
    quotient_project,
    random_instance,
    reduce_to_whittaker,
    simplicity_probe,
    submodule_generator,
    verify_lemma,
    whittaker_space,
)
from whitmod.wmod import ZeroVector, act, act_word, basis_vector, is_whittaker, w_vector

S1, S2, S3 = (Scalar.generator(j) for j in (1, 2, 3))
PSI123 = PsiSpec.of(1, 2, 3)
SMALL = Truncation((0, 2), [(0, 1), (0, 2)], kmax=1, rmax=2)
SUBMOD = Truncation((0, 3), [(0, 1), (0, 2)], kmax=2, rmax=6)


def zminus(a):
    return basis_vector(r=1) - a * w_vector()


# ---------------------------------------------------------------------------
# truncations


def test_truncation_validation():
    with pytest.raises(ValueError):
        Truncation((0, 2), [(0, 0)], 1, 1)
    with pytest.raises(ValueError):
        Truncation((0, 2), [(-1, 1)], 1, 1)
    with pytest.raises(ValueError):
        Truncation((0, 2), [(0, 1)], -1, 0)
    # a cap allowing positive first components needs an entry-count bound
    with pytest.raises(ValueError):
        Truncation((1, 0), [(0, 1), (1, -1)], 1, 1)
    Truncation((1, 0), [(0, 1), (1, -1)], 1, 1, lmax=3)


def test_truncation_basis():
    monos = SMALL.basis()
    assert len(monos) == len(set(monos))
    for mono in monos:
        assert SMALL.contains(mono)
        assert mono.k <= 1 and mono.r <= 2
    lams = {mono.lam for mono in monos}
    assert Partition([(0, 1), (0, 1)]) in lams
    assert Partition([(0, 2)]) in lams
    # weight cap is lexicographic on the combined sum
    assert all(
        (mono.lam.weight_sum()[1] + mono.mu.weight_sum()[1]) <= 2 for mono in monos
    )
    assert not SMALL.contains_vector(basis_vector([(0, 3)]))
    assert SMALL.contains_vector(basis_vector([(0, 1)], [(0, 1)], k=1, r=2))


def test_truncation_box_restricts_to_zero_first():
    # no pool entry carries a positive first component, so the defect of
    # any (a1 > 0) operator vanishes identically and the box drops them
    assert all(a[0] == 0 for a in SMALL.induced_box())
    wide = Truncation((1, 2), [(0, 1), (1, -1)], 1, 1, lmax=2)
    assert any(a[0] > 0 for a in wide.induced_box())


def test_truncation_json_round_trip():
    assert Truncation.from_json(SMALL.to_json()) == SMALL
    wide = Truncation((1, 2), [(0, 1), (1, -1)], 1, 1, lmax=2)
    assert Truncation.from_json(wide.to_json()) == wide


# ---------------------------------------------------------------------------
# the truncated space of Whittaker vectors


def test_whittaker_space_is_the_z_line():
    space = whittaker_space(SMALL, PSI123)
    assert len(space) == SMALL.rmax + 1
    for v in space:
        assert is_whittaker(v, PSI123)
        for mono, _ in v.terms():
            assert mono.lam == EMPTY and mono.mu == EMPTY and mono.k == 0


def test_whittaker_space_thread_count_invisible():
    assert whittaker_space(SMALL, PSI123) == whittaker_space(SMALL, PSI123, threads=3)


def test_whittaker_space_needs_specialized_type():
    with pytest.raises(SingularPsi):
        whittaker_space(SMALL, SYMBOLIC)


# ---------------------------------------------------------------------------
# reduction


def test_reduce_whittaker_vector_is_a_fixed_point():
    poly, transcript = reduce_to_whittaker(zminus(2))
    assert len(transcript) == 0
    assert poly == ZPoly([Scalar.rational(-2), Scalar.rational(1)])


def test_reduce_single_lambda_entry():
    # one (0,1) entry falls to rule 3.10 with coefficient -1 * psi1
    poly, transcript = reduce_to_whittaker(basis_vector([(0, 1)]))
    assert poly == ZPoly([-S1])
    (step,) = transcript.steps
    assert step.rule == "3.10"
    assert (step.i, step.alpha) == (2, (0, 2))
    assert step.degree_after == TRIPLE_MIN


def test_reduce_single_mu_entry():
    # one (0,1) entry in mu falls to rule 3.8.2 with coefficient -4 * psi3
    poly, transcript = reduce_to_whittaker(basis_vector(mu=[(0, 1)]))
    assert poly == ZPoly([Scalar.rational(-4) * S3])
    (step,) = transcript.steps
    assert step.rule == "3.8.2"
    assert (step.i, step.alpha) == (2, (0, 3))


def test_reduce_h_power():
    # h2 w falls to rule 3.7 in a single exponent-1 application
    poly, transcript = reduce_to_whittaker(basis_vector(k=1))
    assert poly == ZPoly([Scalar.rational(-2) * S3])
    (step,) = transcript.steps
    assert step.rule == "3.7" and step.exponent == 1
    # h2^2 w uses one exponent-2 application
    poly2, transcript2 = reduce_to_whittaker(basis_vector(k=2))
    (step2,) = transcript2.steps
    assert step2.exponent == 2
    assert poly2 == ZPoly([Scalar.rational(8) * S3 * S3])


def test_reduce_rejects_zero():
    with pytest.raises(ZeroVector):
        reduce_to_whittaker(w_vector() - w_vector())


WORD_POOL = [
    (1, (0, -1)),
    (1, (0, -2)),
    (1, (-1, 1)),
    (2, (0, -1)),
    (2, (0, -2)),
    (2, (-1, 0)),
    (2, (0, 0)),
    (1, (0, 0)),
]


def test_reduce_random_words_terminate_and_replay():
    rng = random.Random(0xBEEF)
    for trial in range(15):
        word = [rng.choice(WORD_POOL) for _ in range(rng.randint(1, 4))]
        v = act_word(word, w_vector(), PSI123)
        if not v:
            continue
        poly, transcript = reduce_to_whittaker(v, PSI123)
        assert poly.degree is not None, (trial, word)
        expected = sum(
            (c * basis_vector(r=r) for r, c in enumerate(poly.coeffs) if c),
            w_vector() - w_vector(),
        )
        assert transcript.replay(v, PSI123) == expected, (trial, word)


def test_reduce_symbolic_word():
    v = act_word([(1, (0, -2)), (2, (-1, 0))], w_vector())
    poly, transcript = reduce_to_whittaker(v)
    assert poly.degree is not None
    assert transcript.replay(v) == sum(
        (c * basis_vector(r=r) for r, c in enumerate(poly.coeffs) if c),
        w_vector() - w_vector(),
    )


def test_transcript_json():
    _, transcript = reduce_to_whittaker(basis_vector([(0, 1)], k=1))
    data = transcript.to_json()
    assert len(data["steps"]) == len(transcript)
    for entry in data["steps"]:
        assert {"rule", "op", "psi", "exponent", "degree_after"} <= set(entry)


# ---------------------------------------------------------------------------
# the quotient where z acts by a


def test_quotient_project():
    assert quotient_project(zminus(2), 2) == w_vector() - w_vector()
    assert quotient_project(zminus(2), 3) == w_vector()
    v = basis_vector([(0, 1)], r=2)
    assert quotient_project(v, Fraction(1, 2)) == Fraction(1, 4) * basis_vector([(0, 1)])


def test_quotient_act_matches_projected_action():
    v = basis_vector([(0, 1)], r=1)
    x = d(2, (0, -1))
    a = 2
    direct = quotient_act(x, v, a, PSI123)
    assert direct == quotient_project(act(x, quotient_project(v, a), PSI123), a)
    for mono, _ in direct.terms():
        assert mono.r == 0


def test_simplicity_probe_values():
    assert simplicity_probe(basis_vector([(0, 1)]), 2, PSI123) == Scalar.rational(-1)
    assert simplicity_probe(basis_vector(k=1), 2, PSI123) == Scalar.rational(-6)
    with pytest.raises(ZeroVector):
        simplicity_probe(zminus(2), 2, PSI123)
    with pytest.raises(SingularPsi):
        simplicity_probe(w_vector(), 2, SYMBOLIC)


def test_simplicity_probe_random_nonzero():
    rng = random.Random(0x51)
    for _ in range(10):
        word = [rng.choice(WORD_POOL) for _ in range(rng.randint(1, 3))]
        v = act_word(word, w_vector(), PSI123)
        if not quotient_project(v, 2):
            continue
        assert simplicity_probe(v, 2, PSI123)


# ---------------------------------------------------------------------------
# submodule generators


def test_submodule_generator_principal():
    g = submodule_generator([zminus(2)], SUBMOD, PSI123)
    assert g == ZPoly([Scalar.rational(-2), Scalar.rational(1)])


def test_submodule_generator_coprime_pair():
    g = submodule_generator([zminus(1), zminus(2)], SUBMOD, PSI123)
    assert g == ZPoly([Scalar.rational(1)])


def test_submodule_generator_sees_through_operators():
    moved = act(d(1, (0, -1)), zminus(2), PSI123)
    g = submodule_generator([moved], SUBMOD, PSI123)
    assert g == ZPoly([Scalar.rational(-2), Scalar.rational(1)])


def test_submodule_generator_discovers_smaller_ideal():
    # h2 (z - 2) w - w generates everything even though its own reduction
    # polynomial is not constant; the span pass must find the improvement
    gen = act(d(2, (0, 0)), zminus(2), PSI123) - w_vector()
    g = submodule_generator([gen], SUBMOD, PSI123)
    assert g == ZPoly([Scalar.rational(1)])


def test_submodule_generator_guards():
    with pytest.raises(SingularPsi):
        submodule_generator([w_vector()], SUBMOD, SYMBOLIC)
    with pytest.raises(ValueError):
        submodule_generator([], SUBMOD, PSI123)
    with pytest.raises(ZeroVector):
        submodule_generator([w_vector() - w_vector()], SUBMOD, PSI123)


# ---------------------------------------------------------------------------
# the congruence rule registry


def test_rule_registry_idents():
    assert set(RULES) == {"3.5", "3.7", "3.8.1", "3.8.2", "3.9", "3.10", "3.11.1", "3.11.2", "3.11.3"}


def test_instance_hypothesis_checks():
    with pytest.raises(HypothesisViolated):
        LemmaInstance("3.7", w_vector())  # k = 0
    with pytest.raises(HypothesisViolated):
        LemmaInstance("3.8.1", basis_vector(mu=[(0, 1)]))  # mu min not positive-first
    with pytest.raises(HypothesisViolated):
        LemmaInstance("3.10", basis_vector([(0, 1)]) + basis_vector(k=1))
    with pytest.raises(ValueError):
        LemmaInstance("9.99", w_vector())
    with pytest.raises(HypothesisViolated):
        LemmaInstance("3.5", w_vector() + basis_vector(k=1), omega_index=0)
    with pytest.raises(ValueError):
        LemmaInstance("3.7", basis_vector(k=1), omega_index=1)


def test_every_rule_verifies_on_random_instances():
    rng = random.Random(0xF1D0)
    for ident in sorted(RULES):
        for _ in range(6):
            inst = random_instance(ident, rng)
            report = verify_lemma(inst)
            assert report.passed, (ident, report)
            assert report.filtration_ok


def test_every_rule_verifies_specialized():
    rng = random.Random(0x1234)
    for ident in sorted(RULES):
        inst = random_instance(ident, rng)
        report = verify_lemma(inst, PSI123)
        assert report.passed, (ident, report)


def test_errata_reported():
    rng = random.Random(0xE44)
    assert RULES["3.8.1"].errata and RULES["3.11.2"].errata and RULES["3.11.3"].errata
    report = verify_lemma(random_instance("3.8.1", rng))
    assert report.errata
    report = verify_lemma(random_instance("3.11.2", rng))
    assert report.passed and report.errata


def test_stated_mode_flags_the_two_bad_rules():
    rng = random.Random(0x0DD)
    # 3.11.2: the printed coefficient is not even evaluable
    report = verify_lemma(random_instance("3.11.2", rng), stated=True)
    assert not report.match and report.printed is None
    assert any("not evaluable" in e for e in report.errata)
    # 3.11.3: the printed coefficient picks the wrong type generator, so
    # the residual against it sits at the target triple itself
    report = verify_lemma(random_instance("3.11.3", rng), stated=True)
    assert not report.match
    assert not report.filtration_ok
    # 3.8.1's statement is fine (only its derivation display is off)
    report = verify_lemma(random_instance("3.8.1", rng), stated=True)
    assert report.passed


def test_omega_rule_has_zero_leading_term():
    rng = random.Random(0x3A)
    for omega_index in (0, 1, 2):
        inst = random_instance("3.5", rng)
        inst = LemmaInstance("3.5", inst.uw, omega_index=omega_index)
        report = verify_lemma(inst)
        assert report.passed
        assert not report.computed  # the defect drops strictly below the degree


def test_verify_report_json():
    rng = random.Random(0x77)
    report = verify_lemma(random_instance("3.7", rng))
    data = report.to_json()
    assert data["lemma"] == "3.7"
    assert data["match"] is True and data["filtration_ok"] is True
    assert "instance" in data and data["instance"]["lemma"] == "3.7"
