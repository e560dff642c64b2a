from fractions import Fraction

import pytest

from besica import (CapacityError, Disks, Explicit, IntervalAsym, amenability_report, boundary_size,
                    folner_ratio, free_abelian, free_group, inverse_seq, parse_sequence)
from besica.errors import SpecSyntaxError


@pytest.mark.parametrize("group,n,ratio", [
    (free_abelian(1), 10, Fraction(2, 21)),
    (free_group(2), 8, Fraction(26244, 13121)),
    (free_abelian(2), 10, Fraction(44, 221)),
])
def test_folner_ratio_values(group, n, ratio):
    assert folner_ratio(Disks(group), n, group.ball(1).elements) == ratio


def test_disk_fast_path_matches_generic():
    for G in (free_abelian(2), free_abelian(2, "moore"), free_group(2)):
        seq = Disks(G)
        for R in (1, 2):
            E = G.ball(R).elements
            for n in range(5):
                X = seq.member_set(n)
                assert boundary_size(seq, n, E) == len(G.boundary(X, E))


def test_increments_partition():
    for seq in (Disks(free_abelian(2)), Disks(free_group(2)), IntervalAsym(free_abelian(1), "pow2")):
        acc = set(seq.member_set(0))
        for n in range(1, 6):
            inc = set(seq.increment(n))
            assert not inc & acc
            acc |= inc
            assert acc == seq.member_set(n)
            assert len(acc) == seq.size(n)


def test_interval_schedules():
    Z = free_abelian(1)
    assert IntervalAsym(Z, "pow2").bounds(5) == (-5, 32)
    assert IntervalAsym(Z, "sym").bounds(5) == (-5, 5)
    assert IntervalAsym(Z, "mul3").bounds(4) == (-4, 12)
    assert parse_sequence("interval:mul3", Z).bounds(2) == (-2, 6)
    with pytest.raises(SpecSyntaxError):
        IntervalAsym(Z, "cube")
    with pytest.raises(CapacityError):
        IntervalAsym(free_abelian(1, cap=1000), "pow2").size(20)


def test_inverse_sequence():
    F = free_group(2)
    inv = inverse_seq(Disks(F))
    assert inv.member_set(3) == Disks(F).member_set(3)
    Z = free_abelian(1)
    ivl = inverse_seq(IntervalAsym(Z, "pow2"))
    assert ivl.member_set(2) == {(x,) for x in range(-4, 3)}


def test_explicit_horizon():
    Z = free_abelian(1)
    seq = Explicit(Z, [[(0,)], [(-1,), (0,), (1,)]])
    assert seq.size(1) == 3
    with pytest.raises(CapacityError):
        seq.member_set(2)


def test_amenability_verdicts():
    Z2, F = free_abelian(2), free_group(2)
    rep = amenability_report(Disks(Z2), Z2.ball(1).elements, range(1, 401))
    assert rep.verdict == "vanishing"
    assert rep.rows[-1][3] < Fraction(1, 50)
    rep = amenability_report(Disks(F), F.ball(1).elements, range(1, 13))
    assert rep.verdict == "bounded-away"
    assert rep.to_csv().splitlines()[0].startswith("n,")


def test_free_group_ratios_near_two():
    F = free_group(2)
    for n in range(8, 13):
        assert abs(folner_ratio(Disks(F), n, F.ball(1).elements) - 2) <= Fraction(1, 100)
