import json
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from besica import (Constant, Disks, DomainError, HalfLine, IntervalAsym, PeriodicZd, PrefixIndicator,
                    SeededRandom, besicovitch_exact_periodic, besicovitch_profile, free_abelian, free_group,
                    hamming, weyl_profile)
from besica.metrics import comparison_constants, generator_comparison_rows, translation_bound_rows

F = free_group(2)
Z = free_abelian(1)
Z2 = free_abelian(2)


def test_free_group_hamming_closed_form():
    c1, c2 = Constant(F, 0), PrefixIndicator(F, "a")
    prof = besicovitch_profile(c1, c2, Disks(F), 8)
    for row in prof.rows:
        assert row.H == (3 ** row.n - 1) // 2
        assert row.ratio == Fraction(2 * 3 ** row.n - 2, 4 * (2 * 3 ** row.n - 1))


def test_free_group_translate_tends_to_three_quarters():
    a = F.parse_element("a")
    prof = besicovitch_profile(Constant(F, 0).translate(a), PrefixIndicator(F, "a").translate(a), Disks(F), 10, 3)
    assert abs(prof.limsup_estimate - Fraction(3, 4)) < Fraction(1, 10_000)


def test_half_line_sequences():
    c1, c2 = Constant(Z, 0), HalfLine(Z)
    sym = besicovitch_profile(c1, c2, Disks(Z), 50, 5)
    assert sym.rows[10].ratio == Fraction(10, 21)
    asym = besicovitch_profile(c1, c2, IntervalAsym(Z, "pow2"), 20)
    assert asym.limsup_estimate == Fraction(20, 2 ** 20 + 21)


def test_periodic_exact():
    zero = PeriodicZd(Z2, (1, 1), [0])
    checker = PeriodicZd(Z2, (2, 2), [0, 1, 1, 0])
    stripes = PeriodicZd(Z2, (3, 1), [1, 0, 0])
    assert besicovitch_exact_periodic(zero, checker) == Fraction(1, 2)
    assert besicovitch_exact_periodic(zero, stripes) == Fraction(1, 3)
    prof = besicovitch_profile(zero, checker, Disks(Z2), 6)
    assert prof.exact == Fraction(1, 2)


def test_weyl_half_line_reaches_one():
    N = 10
    prof = weyl_profile(Constant(Z, 0), HalfLine(Z), Disks(Z), N, [(x,) for x in range(-3 * N, 3 * N + 1)])
    assert prof.lower_bound
    assert prof.limsup_estimate == 1


def test_weyl_window_needs_identity():
    with pytest.raises(DomainError):
        weyl_profile(Constant(Z, 0), HalfLine(Z), Disks(Z), 3, [(1,)])


def test_mismatched_inputs():
    with pytest.raises(DomainError):
        hamming(Constant(Z, 0), Constant(Z2, 0), [(0,)])
    with pytest.raises(DomainError):
        hamming(Constant(Z, 0, 2), Constant(Z, 0, 3), [(0,)])
    with pytest.raises(DomainError):
        besicovitch_profile(Constant(Z, 0), HalfLine(Z), Disks(Z), 3, tail=9)


def test_serialization():
    prof = besicovitch_profile(Constant(Z, 0), HalfLine(Z), Disks(Z), 3)
    lines = prof.to_csv().splitlines()
    assert lines[0] == "n,H,size,ratio_num,ratio_den"
    assert lines[2] == "1,1,3,1,3"
    d = json.loads(prof.to_json())
    assert d["limsup_estimate"] == {"num": 3, "den": 7, "decimal": d["limsup_estimate"]["decimal"]}


def test_translation_bound_rows_hold():
    E = Z2.ball(1).elements
    c1, c2 = SeededRandom(Z2, 1), SeededRandom(Z2, 2)
    for g in E:
        assert all(r.ok for r in translation_bound_rows(c1, c2, Disks(Z2), g, E, range(12)))


def test_comparison_constants():
    vn, moore = free_abelian(2, "vn"), free_abelian(2, "moore")
    beta, a1, a2, C = comparison_constants(vn, moore, range(1, 21))
    assert beta == 2
    assert comparison_constants(moore, vn, range(1, 21))[0] == 1
    rows, _ = generator_comparison_rows(Constant(vn, 0), PeriodicZd(vn, (2, 1), [1, 0]), vn, moore, range(1, 11))
    assert all(r.ok for r in rows)


triples = st.tuples(st.integers(0, 10_000), st.integers(0, 10_000), st.integers(0, 10_000))


@settings(max_examples=40, deadline=None)
@given(triples, st.integers(2, 4))
def test_pseudometric_axioms(seeds, q):
    c1, c2, c3 = (SeededRandom(Z2, s, q) for s in seeds)
    for n in range(6):
        X = Disks(Z2).member_set(n)
        assert hamming(c1, c2, X) == hamming(c2, c1, X)
        assert hamming(c1, c1, X) == 0
        assert hamming(c1, c3, X) <= hamming(c1, c2, X) + hamming(c2, c3, X)
    w = weyl_profile(c1, c2, Disks(Z2), 4, Z2.ball(1).elements)
    b = besicovitch_profile(c1, c2, Disks(Z2), 4)
    assert all(x.ratio >= y.ratio for x, y in zip(w.rows, b.rows))
