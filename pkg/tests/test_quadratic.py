from fractions import Fraction

import pytest
from hypothesis import given, settings

from lenssurgery.modular import canonical_k
from lenssurgery.quadratic import (
    BranchUnavailable,
    QuadraticRelation,
    UnknotBranch,
    all_relations,
    associated_relation,
    integrality_check,
    is_minimal,
    is_stable,
    n_prime,
    n_sequences,
    reduced_k2,
    tau_decompose,
    underline_involution,
)
from strategies import coprime_pairs


def test_relation_43_12():
    rel = associated_relation(43, 12)
    assert (rel.a, rel.eps1, rel.eps2) == (2, 1, 1)
    assert rel.holds(43, 12)
    found = {(r.a, r.eps1, r.eps2) for r in all_relations(43, 12, 5)}
    assert (5, 1, -1) in found
    assert is_minimal(43, 12, rel)


def test_decomposition_191_15():
    dec = tau_decompose(191, 15)
    assert (dec.a, dec.n, dec.tau, dec.q2) == (22, 26, 0, -73)
    assert not is_stable(dec)


def test_relation_text():
    assert str(QuadraticRelation(2, 1, -1, 7)) == "2k1^2 + k1 - 1 = 0 (n=7)"
    assert QuadraticRelation(1, 1, 1, 1).branch == "VII-VIII"


def test_unknot_branch():
    with pytest.raises(UnknotBranch):
        associated_relation(9, 1)
    with pytest.raises(UnknotBranch):
        associated_relation(9, 8)


def test_reduced_k2():
    assert reduced_k2(22, 5) == 9
    assert reduced_k2(43, 12) == 18


def test_n_sequences_106_19():
    dec = tau_decompose(106, 19)
    assert (dec.a, dec.eps1, dec.eps2, dec.n, dec.tau) == (2, 1, 1, 7, 2)
    assert n_sequences(dec, 1) == (1, 4)
    assert n_prime(dec) == 3
    assert integrality_check(dec)


def test_branch_unavailable():
    dec = tau_decompose(22, 5)
    assert dec.d == 2
    with pytest.raises(BranchUnavailable):
        n_sequences(dec, 1)


def test_involution_chain():
    assert underline_involution(191, 15) == (102, 11)
    assert underline_involution(102, 11) == (87, 10)
    assert underline_involution(106, 19) == (71, 16)
    assert underline_involution(71, 16) == (106, 19)


@given(coprime_pairs(600))
@settings(max_examples=200, deadline=None)
def test_decomposition_identities(pair):
    p, k = pair
    k1 = canonical_k(p, k)
    if k1 == 1:
        return
    dec = tau_decompose(p, k1)
    assert k1 == dec.n * dec.tau + dec.gamma_prime
    assert dec.p_from_tau() == p
    assert 0 <= dec.gamma < 2 * dec.a * dec.n
    assert dec.alpha == dec.gamma_prime + dec.eps1 * dec.eps2 + Fraction(dec.a, abs(dec.q2))
    assert is_minimal(p, k1, dec.relation)


@given(coprime_pairs(600))
@settings(max_examples=200, deadline=None)
def test_stable_involution_preserves_relation(pair):
    p, k = pair
    k1 = canonical_k(p, k)
    if k1 == 1:
        return
    dec = tau_decompose(p, k1)
    if dec.tau < 2:
        return
    img = underline_involution(p, k1, dec)
    assert QuadraticRelation(dec.a, -dec.eps1, dec.eps2, dec.n).holds(*img)
    if dec.a >= 2:
        assert associated_relation(*img) == QuadraticRelation(dec.a, -dec.eps1, dec.eps2, dec.n)
