"""Symbols, blow-up relations, relation matrices, signed quotient."""

from fractions import Fraction
from functools import lru_cache
from random import Random

import hypothesis
import hypothesis.strategies as strat
import pytest

from birmod import (TWO_TORSION, FormalSum, QZ, SparseMat, blowup_relation,
                    canonicalize, enumerate_symbols, minus_canonicalize,
                    minus_reduce, rank_q, relation_matrix, relation_rows,
                    sum_from_json, symbol_from_json, symbol_from_lattice)


def S(*entries):
    return canonicalize(Fraction(e) for e in entries)


def qz_entries(max_den=12):
    return strat.integers(min_value=1, max_value=max_den).flatmap(
        lambda q: strat.integers(min_value=0, max_value=q - 1).map(
            lambda p: QZ(p, q)))


def symbols(max_arity=3):
    return strat.lists(qz_entries(), min_size=1, max_size=max_arity).map(
        canonicalize)


def acceptable_symbols(max_arity=3):
    return symbols(max_arity).filter(lambda s: s.is_acceptable)


def euler_phi(N):
    return sum(1 for j in range(1, N + 1) if Fraction(j, N).denominator == N)


def test_canonical_form_examples():
    assert S("1/2", "1/3") == S("1/3", "1/2")
    assert tuple(S("2/3", "0", "7/6")) == (QZ(0), QZ(1, 6), QZ(2, 3))
    assert S("1/2").arity == 1
    assert S("1/6", "1/4").modulus == 12
    assert S("0", "0").modulus == 1 and not S("0", "0").is_acceptable
    with pytest.raises(ValueError):
        canonicalize([])


def test_in_module_checks_exact_modulus():
    assert S("1/2", "1/3").in_module(6)
    assert not S("1/2", "1/3").in_module(12)
    assert not S("1/2").in_module(6)


def test_json_round_trip():
    s = S("1/2", "2/3")
    assert symbol_from_json(s.to_json()) == s
    fs = FormalSum({S("1/3"): 2, S("1/2"): -1})
    assert sum_from_json(fs.to_json()) == fs
    rq = fs.to_rational().scale(Fraction(1, 2))
    assert sum_from_json(rq.to_json()) == rq and rq.rational


def test_lattice_constructor_rejects_trivial():
    assert symbol_from_lattice([Fraction(1, 2), Fraction(3, 2)]) == S("1/2", "1/2")
    with pytest.raises(ValueError):
        symbol_from_lattice([0, 1, 2])


def test_enumeration_examples():
    assert enumerate_symbols(1, 4) == [S("1/4"), S("3/4")]
    assert enumerate_symbols(2, 2) == [S("0", "1/2"), S("1/2", "1/2")]
    assert len(enumerate_symbols(2, 4)) == 7
    with pytest.raises(ValueError):
        enumerate_symbols(1, 1)
    with pytest.raises(ValueError):
        enumerate_symbols(0, 3)


@hypothesis.given(strat.integers(min_value=2, max_value=24))
def test_enumeration_arity_one_counts_units(N):
    assert len(enumerate_symbols(1, N)) == euler_phi(N)


@hypothesis.given(strat.integers(min_value=1, max_value=3),
                  strat.integers(min_value=2, max_value=8))
def test_enumeration_sorted_and_exact(n, N):
    syms = enumerate_symbols(n, N)
    assert syms == sorted(syms)
    assert len(set(syms)) == len(syms)
    for s in syms:
        assert s.arity == n and s.modulus == N


def test_formal_sum_modes():
    with pytest.raises(ValueError):
        FormalSum({S("1/2"): Fraction(1, 2)})
    ok = FormalSum({S("1/2"): Fraction(1, 2)}, rational=True)
    assert ok.terms[S("1/2")] == Fraction(1, 2)
    with pytest.raises(ValueError):
        FormalSum({S("1/2"): 1, S("1/2", "1/3"): 1})
    assert (ok - ok).is_zero()


def test_blowup_examples():
    assert blowup_relation((Fraction(1, 2), Fraction(1, 2)), 2) == \
        FormalSum({S("1/2", "1/2"): 1, S("0", "1/2"): -2})
    assert blowup_relation((Fraction(0), Fraction(1, 2)), 2) == \
        FormalSum({S("1/2", "1/2"): -1})
    assert blowup_relation((Fraction(1, 3), Fraction(1, 3)), 2) == \
        FormalSum({S("1/3", "1/3"): 1, S("0", "1/3"): -2})
    assert blowup_relation(
        (Fraction(1, 6), Fraction(1, 3), Fraction(1, 2)), 2, (0, 2)) == \
        FormalSum({S("1/6", "1/3", "1/2"): 1,
                   S("1/6", "1/3", "1/3"): -1,
                   S("1/3", "1/2", "2/3"): -1})


def test_blowup_guards():
    with pytest.raises(ValueError):
        blowup_relation((Fraction(1, 2),), 2)
    with pytest.raises(ValueError):
        blowup_relation((Fraction(0), Fraction(0)), 2)
    with pytest.raises(ValueError):
        blowup_relation((Fraction(1, 2), Fraction(1, 3)), 2, modulus=12)
    with pytest.raises(ValueError):
        blowup_relation((Fraction(1, 2), Fraction(1, 2)), 2, (0, 0))


@hypothesis.given(acceptable_symbols(), strat.data())
def test_blowup_terms_share_the_modulus(s, data):
    hypothesis.assume(s.arity >= 2)
    k = data.draw(strat.integers(min_value=2, max_value=s.arity))
    rel = blowup_relation(s, k)
    for t, _ in rel.items():
        assert t.modulus == s.modulus


def test_relation_rows_deduplicated():
    rows = relation_rows(2, 3)
    keys = [tuple(r.items()) for r in rows]
    assert len(keys) == len(set(keys))
    assert all(not r.is_zero() for r in rows)


def test_rank_examples():
    m = relation_matrix(1, 12)
    assert (len(m.basis), m.quotient_rank()) == (4, 4)
    assert relation_matrix(2, 2).quotient_rank() == 0
    assert relation_matrix(2, 5).quotient_rank() == 2
    m2 = relation_matrix(1, 2, minus=True)
    assert m2.quotient_rank() == 0
    assert m2.invariant_factors() == (2,)


def test_span_membership():
    m = relation_matrix(2, 3)
    for r in m.rows:
        assert m.contains(r)
    foreign = FormalSum.of(S("1/2", "1/2"))
    assert m.vectorize(foreign) is None and not m.contains(foreign)


@lru_cache(maxsize=None)
def _cached_relmat(n, N):
    m = relation_matrix(n, N)
    return m, rank_q(m.mat)


@hypothesis.settings(max_examples=25, deadline=None)
@hypothesis.given(strat.integers(min_value=1, max_value=3),
                  strat.integers(min_value=2, max_value=6),
                  strat.integers(min_value=0, max_value=10**6))
def test_rank_independent_of_row_order(n, N, seed):
    m, base = _cached_relmat(n, N)
    rows = [dict(r) for r in m.mat.rows]
    Random(seed).shuffle(rows)
    assert rank_q(SparseMat(rows, m.mat.ncols)) == base


def test_minus_canonicalize_examples():
    assert minus_canonicalize(S("1/3")) == (S("1/3"), 1)
    assert minus_canonicalize(S("2/3")) == (S("1/3"), -1)
    assert minus_canonicalize(S("1/2")) == (S("1/2"), TWO_TORSION)
    assert minus_canonicalize(S("3/5", "4/5")) == (S("1/5", "2/5"), 1)
    assert minus_canonicalize(S("0", "1/2")) == (S("0", "1/2"), TWO_TORSION)


@hypothesis.given(symbols())
def test_minus_canonicalize_is_idempotent_and_negation_flips(s):
    rep, sign = minus_canonicalize(s)
    again, sign2 = minus_canonicalize(rep)
    assert again == rep and sign2 in (1, TWO_TORSION)
    # negating every entry multiplies the class by (-1)^arity
    neg, nsign = minus_canonicalize(canonicalize(-a for a in s))
    assert neg == rep
    if sign == TWO_TORSION:
        assert nsign == TWO_TORSION
    else:
        assert nsign == (sign if s.arity % 2 == 0 else -sign)


@hypothesis.given(symbols())
def test_minus_reduce_kills_negation_differences(s):
    neg = canonicalize(-a for a in s)
    fs = FormalSum.of(s).to_rational() - \
        FormalSum.of(neg).to_rational().scale((-1) ** s.arity)
    assert minus_reduce(fs).is_zero()
