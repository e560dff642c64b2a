"""Acceptance criteria, each at its stated tolerance.

Every test records one PASS/FAIL line; the lines are repeated in the pytest
terminal summary under "acceptance criteria".
"""

import time
from fractions import Fraction

from besica import (Constant, Disks, HalfLine, IntervalAsym, PrefixIndicator, free_abelian, free_group,
                    greedy_net, net_density_bounds_check)
from besica.decide1d import eca_sweep
from besica.metrics import besicovitch_profile
from besica.sequences import folner_ratio
from besica.verify import main_point1, main_point2, suite_eca_sweep, suite_lipschitz, suite_pseudometric


def test_criterion_1_free_group_counterexample(report):
    t0 = time.perf_counter()
    F = free_group(2)
    a = F.parse_element("a")
    c1, c2 = Constant(F, 0), PrefixIndicator(F, "a")
    p = besicovitch_profile(c1, c2, Disks(F), 10, 3)
    q = besicovitch_profile(c1.translate(a), c2.translate(a), Disks(F), 10, 3)
    elapsed = time.perf_counter() - t0
    e1, e2 = p.limsup_estimate, q.limsup_estimate
    ok = abs(e1 - Fraction(1, 4)) <= Fraction(1, 10_000) and abs(e2 - Fraction(3, 4)) <= Fraction(1, 10_000) \
        and elapsed < 30
    report("1", ok, f"F2 estimates {float(e1):.6f} and {float(e2):.6f}, {elapsed:.1f}s")
    assert ok


def test_criterion_2_sequence_dependence(report):
    Z = free_abelian(1)
    c1, c2 = Constant(Z, 0), HalfLine(Z)
    sym = besicovitch_profile(c1, c2, Disks(Z), 50, 1).limsup_estimate
    asym = besicovitch_profile(c1, c2, IntervalAsym(Z, "pow2"), 20, 1).limsup_estimate
    ok = abs(sym - Fraction(1, 2)) <= Fraction(1, 100) and asym <= Fraction(2, 100_000)
    report("2", ok, f"[-n,n] estimate {float(sym):.6f}, [-n,2^n] estimate {float(asym):.3e}")
    assert ok


def test_criterion_3_lipschitz(report):
    t0 = time.perf_counter()
    checks = suite_lipschitz(seed=0, count=200, n_max=20)
    elapsed = time.perf_counter() - t0
    bad = [c.line() for c in checks if not c.ok]
    instances = sum(c.count for c in checks)
    ok = not bad and len(checks) == 400 and elapsed < 120
    report("3", ok, f"{len(checks)} pairs, {instances} inequalities, {len(bad)} violations, {elapsed:.1f}s")
    assert ok, bad[:5]


def _criterion_4_report():
    G = free_abelian(2)
    net = greedy_net(G, 2, G.ball(60).elements)
    return net, net_density_bounds_check(net, Disks(G), range(20, 41), Fraction(1, 100))


def test_criterion_4_density_bounds(report):
    net, rep = _criterion_4_report()
    rows = rep.applicable
    dens = [r.density for r in rows]
    ok = bool(rows) and rep.bounds_ok and net.packing_ok and net.covering_ok
    report("4a", ok, f"{len(net.centers)} centers, {len(rows)} applicable rows, densities in "
                     f"[{float(min(dens)):.4f}, {float(max(dens)):.4f}] vs [1/41-0.01, 1/13+0.01]")
    assert ok


def test_criterion_4_sandwich_as_stated(report):
    # The left side |U| |N cap X^{+U}| <= |X| is false at finite n for this net;
    # see the README. This test is expected to fail and is left failing.
    _, rep = _criterion_4_report()
    bad = [(r.n, r.sandwich) for r in rep.applicable if not r.sandwich_ok]
    report("4b", not bad, f"stated sandwich violated at n={[n for n, _ in bad]}")
    assert not bad, bad


def test_criterion_4_interior_sandwich(report):
    _, rep = _criterion_4_report()
    ok = bool(rep.applicable) and rep.interior_sandwich_ok
    report("4c", ok, f"interior-count sandwich on {len(rep.applicable)} rows")
    assert ok


def test_criterion_5_decisions(report):
    t0 = time.perf_counter()
    checks = suite_eca_sweep(max_len=6)
    elapsed = time.perf_counter() - t0
    bad = [c.line() for c in checks if not c.ok]
    ok = not bad and elapsed < 120
    report("5", ok, f"{len(checks)} checks over 256 rules, {len(bad)} failing, {elapsed:.1f}s")
    assert ok, bad


def test_criterion_6_planted_goe(report):
    rep, bound, is_goe, net = main_point1(seed=0, candidates=100, half_width=500, n_eval=400)
    worst = rep.min_estimate
    ok = is_goe and len(rep.entries) == 100 and worst >= bound - Fraction(1, 100)
    report("6", ok, f"{len(net.centers)} centers, min d_B over 100 candidates {float(worst):.4f} "
                    f">= 1/7 - 0.01")
    assert ok


def test_criterion_7_planted_me_pairs(report):
    results = main_point2(half_width=300)
    n_witness = sum(1 for r in eca_sweep() if r.witness is not None)
    bad = [code for code, same, counts_ok, me in results if not (same and counts_ok and me)]
    ok = len(results) == n_witness > 0 and not bad
    report("7", ok, f"{len(results)} rules with witnesses, failing {bad}")
    assert ok


def test_criterion_8_pseudometric(report):
    checks = suite_pseudometric(seed=0, count=100)
    bad = [c.line() for c in checks if not c.ok]
    ok = len(checks) == 100 and not bad
    report("8", ok, f"{len(checks)} triples, {sum(c.count for c in checks)} inequalities, {len(bad)} violations")
    assert ok, bad[:5]


def test_criterion_9_amenability(report):
    Z2, F = free_abelian(2), free_group(2)
    z = folner_ratio(Disks(Z2), 400, Z2.ball(1).elements)
    zs = [folner_ratio(Disks(Z2), n, Z2.ball(1).elements) for n in range(1, 401)]
    fs = [folner_ratio(Disks(F), n, F.ball(1).elements) for n in range(8, 13)]
    ok = z < Fraction(1, 50) and all(a > b for a, b in zip(zs, zs[1:])) \
        and all(Fraction(199, 100) <= f <= Fraction(201, 100) for f in fs)
    report("9", ok, f"Z2 ratio at n=400 {float(z):.5f}, F2 ratios n=8..12 in "
                    f"[{float(min(fs)):.5f}, {float(max(fs)):.5f}]")
    assert ok
