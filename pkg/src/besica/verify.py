"""Theorem-verification suites.

Each suite returns a list of :class:`Check` rows, one per checked instance.
Every row names the result it exercises and, on failure, the violating
instance.  The CLI prints these rows; the test suite asserts on them.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

from .automaton import (CellularAutomaton, apply, apply_window, b_surjectivity_probe, center_me_pair,
                        eca, goe_check, lipschitz_check, me_check, planted_goe_config, planted_me_pair)
from .config import Constant, HalfLine, Pattern, PeriodicZd, PrefixIndicator, Procedural, SeededRandom
from .decide1d import eca_sweep, preimage_count
from .group import Group, free_abelian, free_group
from .metrics import (besicovitch_exact_periodic, besicovitch_profile, generator_comparison_rows, hamming,
                      translation_bound_rows, weyl_profile)
from .nets import greedy_net, net_density_bounds_check, refine_net
from .sequences import Disks, IntervalAsym, amenability_report, folner_ratio

SUITES = ("pseudometric", "lipschitz", "invariance", "nets", "counterexamples", "main-theorem", "eca-sweep")


@dataclass
class Check:
    suite: str
    name: str
    anchor: str
    ok: bool
    detail: str = ""
    count: int = 1

    def line(self) -> str:
        status = "PASS" if self.ok else "FAIL"
        return f"{status} [{self.suite}] {self.name} ({self.anchor}) checked={self.count} {self.detail}".rstrip()


def _seed(seed: int, *parts: int) -> int:
    out = seed
    for p in parts:
        out = out * 1_000_003 + p
    return out


def sparse_flip(c, seed: int, density: int = 16):
    """``c`` with roughly one cell in ``density`` changed, chosen by a seeded stream."""
    mask = SeededRandom(c.group, seed, states=density)
    q = c.states
    return Procedural(c.group, lambda g: (c.eval(g) + 1) % q if mask.eval(g) == 0 else c.eval(g),
                      q, name=f"flip({seed})")


# -- pseudometric -----------------------------------------------------------------


def suite_pseudometric(seed: int = 0, count: int = 100, n_max: int = 12) -> list:
    """Symmetry and triangle inequality of ``H_{X_n}``, and Weyl rows dominating Besicovitch rows."""
    groups = [free_abelian(1), free_abelian(2), free_group(2)]
    caps = {0: n_max * 3, 1: n_max, 2: min(n_max, 6)}
    checks = []
    for i in range(count):
        gi = i % 3
        G = groups[gi]
        n_top = caps[gi]
        states = 2 + i % 3
        c1, c2, c3 = (SeededRandom(G, _seed(seed, i, j), states) for j in range(3))
        if i % 2:
            c2 = sparse_flip(c1, _seed(seed, i, 7))
        seq = Disks(G)
        bad = []
        n_ineq = 0
        for n in range(n_top + 1):
            X = seq.member_set(n)
            h12, h21 = hamming(c1, c2, X), hamming(c2, c1, X)
            h13, h23 = hamming(c1, c3, X), hamming(c2, c3, X)
            n_ineq += 4
            if h12 != h21:
                bad.append(f"n={n} symmetry {h12}!={h21}")
            if h13 > h12 + h23 or h12 > h13 + h23 or h23 > h12 + h13:
                bad.append(f"n={n} triangle")
        w_top = min(n_top, 4 if gi == 2 else 8)
        window = G.ball(2).elements
        weyl = weyl_profile(c1, c2, seq, w_top, window)
        besi = besicovitch_profile(c1, c2, seq, w_top)
        for w, b in zip(weyl.rows, besi.rows):
            n_ineq += 1
            if w.ratio < b.ratio:
                bad.append(f"n={w.n} weyl {w.ratio} < besicovitch {b.ratio}")
        checks.append(Check("pseudometric", f"{G.describe()} triple#{i} q={states}",
                            "pseudodistance axioms; d_W >= d_B", not bad, "; ".join(bad[:3]), n_ineq))
    return checks


# -- Lipschitz --------------------------------------------------------------------


def random_ca(G: Group, rng: random.Random, states: int = 2) -> CellularAutomaton:
    nbhd = G.ball(1).elements
    table = [rng.randrange(states) for _ in range(states ** len(nbhd))]
    return CellularAutomaton(G, states, nbhd, table)


def suite_lipschitz(seed: int = 0, count: int = 200, n_max: int = 20) -> list:
    """Exact per-``n`` inequalities of both Lipschitz bounds on Z^2 (Moore) and Z."""
    checks = []
    for G in (free_abelian(2, "moore"), free_abelian(1)):
        seq = Disks(G)
        for i in range(count):
            rng = random.Random(_seed(seed, G.rank, i))
            A = random_ca(G, rng) if G.rank == 2 else eca(rng.randrange(256))
            c1 = SeededRandom(G, _seed(seed, G.rank, i, 1))
            c2 = SeededRandom(G, _seed(seed, G.rank, i, 2)) if i % 2 == 0 else sparse_flip(c1, _seed(seed, i, 3))
            bad = []
            total = 0
            for mode in ("disks", "amenable"):
                rep = lipschitz_check(A, c1, c2, seq, range(n_max + 1), mode)
                total += len(rep.rows)
                bad += [f"{mode} n={n}" for n in rep.violations]
            checks.append(Check("lipschitz", f"{G.describe()} pair#{i} {A.name or 'random rule'}",
                                "Lipschitz theorem, L=gamma(r)^2 and L=1+|N|", not bad, "; ".join(bad[:3]), total))
    return checks


# -- invariance -------------------------------------------------------------------


def suite_invariance(seed: int = 0, count: int = 20, n_max: int = 20) -> list:
    checks = []
    G = free_abelian(2)
    seq = Disks(G)
    E = G.ball(1).elements
    for i in range(count):
        c1 = SeededRandom(G, _seed(seed, 11, i))
        c2 = SeededRandom(G, _seed(seed, 12, i)) if i % 2 == 0 else sparse_flip(c1, _seed(seed, 13, i))
        bad = []
        total = 0
        for g in E:
            rows = translation_bound_rows(c1, c2, seq, g, E, range(n_max + 1))
            total += len(rows)
            bad += [f"g={g} n={r.n}: {r.lhs} > {r.rhs}" for r in rows if not r.ok]
        checks.append(Check("invariance", f"Z2 translation pair#{i}", "translation invariance, amenable symmetric",
                            not bad, "; ".join(bad[:3]), total))

    # generator independence of the null class, both directions
    vn, moore = free_abelian(2, "vn"), free_abelian(2, "moore")
    zero = Constant(vn, 0)
    sparse = [
        ("x-axis", Procedural(vn, lambda g: 1 if g[1] == 0 else 0, name="x-axis")),
        ("diagonal", Procedural(vn, lambda g: 1 if g[0] == g[1] else 0, name="diagonal")),
        ("finite", Procedural(vn, lambda g: 1 if g in ((0, 0), (1, 2), (-3, 1), (2, -2)) else 0, name="finite")),
    ]
    for label, c in sparse:
        for S, Sp in ((vn, moore), (moore, vn)):
            rows, (beta, a1, a2, C) = generator_comparison_rows(zero, c, S, Sp, range(1, n_max + 1))
            bad = [f"n={r.n}: {r.lhs} > {r.rhs}" for r in rows if not r.ok]
            tail_ok = rows[-1].lhs < rows[len(rows) // 2].lhs or rows[-1].lhs == 0
            checks.append(Check("invariance", f"null class {label} {S.describe()}->{Sp.describe()}",
                                "generator independence, polynomial growth", not bad and tail_ok,
                                f"beta={beta} C={C} " + "; ".join(bad[:2]), len(rows)))
    for i in range(4):
        c1, c2 = SeededRandom(vn, _seed(seed, 21, i)), SeededRandom(vn, _seed(seed, 22, i))
        est = [besicovitch_profile(c1, c2, Disks(S), n_max, 3).limsup_estimate for S in (vn, moore)]
        checks.append(Check("invariance", f"positive class random pair#{i}", "generator independence",
                            all(e > Fraction(1, 4) for e in est), f"estimates={[float(e) for e in est]}"))

    # Weyl rows under a shift: the window g W' reproduces the shifted rows exactly,
    # and a window containing g W' dominates them
    w = 3
    for i in range(min(count, 6)):
        c1 = SeededRandom(G, _seed(seed, 31, i))
        c2 = sparse_flip(c1, _seed(seed, 32, i), 5)
        big = G.ball(w).elements
        small = G.ball(w - 1).elements
        full = weyl_profile(c1, c2, seq, 8, big)
        bad = []
        for g in E:
            moved = weyl_profile(c1.translate(g), c2.translate(g), seq, 8, small)
            exact = weyl_profile(c1, c2, seq, 8, [G._mul(g, s) for s in small])
            bad += [f"g={g} n={a.n} dominance" for a, b in zip(moved.rows, full.rows) if a.H > b.H]
            bad += [f"g={g} n={a.n} exact" for a, b in zip(moved.rows, exact.rows) if a.H != b.H]
        checks.append(Check("invariance", f"Weyl shift pair#{i}", "Weyl translation invariance", not bad,
                            "; ".join(bad[:3]), 9 * len(E)))

    rep = amenability_report(seq, E, range(1, 401))
    checks.append(Check("invariance", "Z2 disks Folner ratio", "amenable disks, polynomial growth",
                        rep.verdict == "vanishing", f"last={float(rep.rows[-1][3]):.5f}", len(rep.rows)))
    return checks


# -- nets -------------------------------------------------------------------------


def suite_nets(region_radius: int = 60, n_lo: int = 20, n_hi: int = 40, tol=Fraction(1, 100)) -> list:
    checks = []
    G = free_abelian(2)
    net = greedy_net(G, 2, G.ball(region_radius).elements)
    checks.append(Check("nets", "greedy (D2,D4)-net in D60", "net definition", bool(net.packing_ok and net.covering_ok),
                        f"centers={len(net.centers)}"))
    rep = net_density_bounds_check(net, Disks(G), range(n_lo, n_hi + 1), tol)
    lo, hi = rep.lower - rep.tol, rep.upper + rep.tol
    for row in rep.rows:
        if row.flagged:
            continue
        checks.append(Check("nets", f"density n={row.n}", "net density lemma bounds", lo <= row.density <= hi,
                            f"{row.density} in [{lo}, {hi}]"))
    for row in rep.applicable:
        lo_s, mid, hi_s = row.sandwich
        checks.append(Check("nets", f"sandwich n={row.n}", "net density lemma, proof sandwich as stated",
                            bool(row.sandwich_ok), f"{lo_s} <= {mid} <= {hi_s}"))
        checks.append(Check("nets", f"interior sandwich n={row.n}", "net density lemma, interior-count sandwich",
                            bool(row.interior_sandwich_ok), f"{row.interior} <= {mid} <= {hi_s}"))
    Z = free_abelian(1)
    znet = greedy_net(Z, 1, [(x,) for x in range(-200, 201)])
    refined = refine_net(znet, lambda x: (x[0] + 1,))
    checks.append(Check("nets", "Z phi-refinement x+1", "phi(N) is a ({1}, U^-1 W)-net",
                        bool(refined.packing_ok and refined.covering_ok), f"|W'|={len(refined.W)}"))
    return checks


# -- counterexamples --------------------------------------------------------------


def suite_counterexamples(f2_nmax: int = 10, z_nmax: int = 50, z_asym_nmax: int = 20) -> list:
    checks = []
    F = free_group(2)
    a = F.parse_element("a")
    c1, c2 = Constant(F, 0), PrefixIndicator(F, "a")
    p = besicovitch_profile(c1, c2, Disks(F), f2_nmax, 3)
    q = besicovitch_profile(c1.translate(a), c2.translate(a), Disks(F), f2_nmax, 3)
    tol = Fraction(1, 10_000)
    checks.append(Check("counterexamples", "F2 d_B(c1,c2)", "free-group translation counterexample",
                        abs(p.limsup_estimate - Fraction(1, 4)) <= tol, f"estimate={float(p.limsup_estimate):.8f}"))
    checks.append(Check("counterexamples", "F2 d_B(c1^a,c2^a)", "free-group translation counterexample",
                        abs(q.limsup_estimate - Fraction(3, 4)) <= tol, f"estimate={float(q.limsup_estimate):.8f}"))

    Z = free_abelian(1)
    zero, half = Constant(Z, 0), HalfLine(Z)
    sym = besicovitch_profile(zero, half, Disks(Z), z_nmax, 1)
    asym = besicovitch_profile(zero, half, IntervalAsym(Z, "pow2"), z_asym_nmax, 1)
    checks.append(Check("counterexamples", "Z [-n,n] d_B", "sequence dependence",
                        abs(sym.limsup_estimate - Fraction(1, 2)) <= Fraction(1, 2 * z_nmax),
                        f"estimate={float(sym.limsup_estimate):.6f}"))
    checks.append(Check("counterexamples", "Z [-n,2^n] d_B", "sequence dependence",
                        asym.limsup_estimate <= Fraction(2, 100_000), f"estimate={float(asym.limsup_estimate):.3e}"))

    # c_k agrees with c exactly on X_k: d_B(c_k, c) = 1 although c_k -> c in the product topology.
    # Rows are 1 - |X_k|/|X_n|, so the tail reaches 0.99 once |X_n| >= 100 |X_k|.
    c = SeededRandom(Z, 5)
    nc_max = 400
    for k in range(4):
        ck = Procedural(Z, lambda g, k=k: c.eval(g) if abs(g[0]) <= k else 1 - c.eval(g), name=f"c_{k}")
        prof = besicovitch_profile(ck, c, Disks(Z), nc_max, 1)
        rows_ok = all(r.ratio >= 1 - Fraction(2 * k + 1, r.size) for r in prof.rows)
        checks.append(Check("counterexamples", f"non-continuity c_{k}", "d_B not continuous in product topology",
                            rows_ok and prof.limsup_estimate >= Fraction(99, 100),
                            f"estimate={float(prof.limsup_estimate):.4f} n_max={nc_max}", len(prof.rows)))

    # GoE patching: c = F(c') with a GoE pattern written in is Besicovitch-close to F(c') yet not an image
    A = eca(110)
    word = [0, 1, 0, 1, 0]
    p_goe = Pattern({(i,): s for i, s in enumerate(word)})
    cprime = SeededRandom(Z, 9)
    Fc = apply(A, cprime)
    patched = Fc.overlay(p_goe)
    prof = besicovitch_profile(patched, Fc, Disks(Z), 100, 1)
    checks.append(Check("counterexamples", "GoE patching ECA 110", "B-surjective does not force preimage",
                        goe_check(A, p_goe) and prof.limsup_estimate <= Fraction(len(word), 201),
                        f"goe={goe_check(A, p_goe)} estimate={float(prof.limsup_estimate):.4f}"))

    # periodic exact route
    Z2 = free_abelian(2)
    checker = PeriodicZd(Z2, (2, 2), (0, 1, 1, 0))
    exact = besicovitch_exact_periodic(PeriodicZd(Z2, (1, 1), (0,)), checker)
    checks.append(Check("counterexamples", "Z2 zero vs checkerboard exact", "Besicovitch distance, periodic",
                        exact == Fraction(1, 2), f"exact={exact}"))
    return checks


# -- main theorem -----------------------------------------------------------------


def main_point1(seed: int = 0, candidates: int = 100, half_width: int = 500, n_eval: int = 400):
    """Planted GoE configuration for ECA 0 versus seeded candidate preimages."""
    Z = free_abelian(1)
    A = eca(0)
    p = Pattern({(-1,): 0, (0,): 1, (1,): 0})
    net = greedy_net(Z, 1, [(x,) for x in range(-half_width, half_width + 1)])
    c = planted_goe_config(p, net, 0)
    cands = [SeededRandom(Z, _seed(seed, 41, i)) for i in range(candidates)]
    report = b_surjectivity_probe(A, c, cands, Disks(Z), n_eval, 1)
    bound = Fraction(1, Z.growth(3))
    return report, bound, goe_check(A, p), net


def main_point2(half_width: int = 300):
    """Planted mutually erasable pairs for every ECA with a preinjectivity witness."""
    Z = free_abelian(1)
    out = []
    window = [(x,) for x in range(-half_width, half_width + 1)]
    for row in eca_sweep():
        if row.witness is None:
            continue
        A = eca(row.code)
        r = A.radius
        p1, p2, k = center_me_pair(Z, *row.witness)
        net = greedy_net(Z, k + 2 * r + 1, [(x,) for x in range(-half_width - 20, half_width + 21)])
        c1, c2 = planted_me_pair(p1, p2, net, 0, r)
        same = apply_window(A, c1, window) == apply_window(A, c2, window)
        centers = net.center_set
        prof = besicovitch_profile(c1, c2, Disks(Z), half_width)
        counts_ok = all(rw.H >= sum(1 for x in centers if abs(x[0]) <= rw.n) for rw in prof.rows)
        out.append((row.code, same, counts_ok, me_check(A, p1, p2)))
    return out


def suite_main_theorem(seed: int = 0, candidates: int = 100) -> list:
    checks = []
    report, bound, is_goe, net = main_point1(seed, candidates)
    worst = report.min_estimate
    checks.append(Check("main-theorem", "point 1: ECA 0 planted GoE", "(B)-surjective implies surjective",
                        is_goe and worst >= bound - Fraction(1, 100),
                        f"min over {len(report.entries)} candidates={float(worst):.4f} bound=1/7", len(report.entries)))
    refined = refine_net(net, lambda x: (x[0] + 1,))
    checks.append(Check("main-theorem", "point 1: phi(N) net", "phi(N) is a ({1}, D_3k)-net",
                        bool(refined.packing_ok and refined.covering_ok), f"|W'|={len(refined.W)}"))
    results = main_point2()
    bad = [code for code, same, counts_ok, me in results if not (same and counts_ok and me)]
    checks.append(Check("main-theorem", "point 2: planted m.e. pairs", "(B)-injective implies preinjective",
                        not bad, f"rules={len(results)} failing={bad[:5]}", len(results)))
    cands = conjecture_candidates()
    # informational only: the converse of point 2 is open, nothing is asserted about it
    checks.append(Check("main-theorem", "conjecture candidates", "preinjective but not injective ECA", True,
                        f"count={len(cands)} first={cands[:8]}", 256))
    return checks


# -- ECA sweep --------------------------------------------------------------------


def suite_eca_sweep(max_len: int = 6) -> list:
    rows = eca_sweep()
    checks = []
    expected = {204: True, 90: True, 30: True, 15: True, 0: False, 110: False}
    for code, want in expected.items():
        checks.append(Check("eca-sweep", f"ECA {code} surjective={want}", "GoE iff nonsurjective",
                            rows[code].surjective == want))
    mm = [r.code for r in rows if r.surjective != r.preinjective]
    checks.append(Check("eca-sweep", "surjective <=> preinjective", "Moore-Myhill on Z", not mm,
                        f"exceptions={mm}", len(rows)))
    sj = [r.code for r in rows if r.injective and not r.surjective]
    checks.append(Check("eca-sweep", "injective => surjective", "surjunctivity", not sj, f"exceptions={sj}", len(rows)))
    bal = [r.code for r in rows if r.surjective and not r.balanced]
    checks.append(Check("eca-sweep", "surjective => balanced", "balance condition", not bal, f"exceptions={bal}",
                        len(rows)))
    import itertools
    conservation = []
    for r in rows:
        A = eca(r.code)
        for L in range(1, max_len + 1):
            total = sum(preimage_count(A, w) for w in itertools.product((0, 1), repeat=L))
            if total != 2 ** (L + 2):
                conservation.append((r.code, L))
    checks.append(Check("eca-sweep", "preimage conservation", "sum_w count(w) = 2^(L+2)", not conservation,
                        f"exceptions={conservation[:5]}", len(rows) * max_len))
    witness_bad = [r.code for r in rows if r.witness is not None and not me_check(eca(r.code), *r.witness)]
    checks.append(Check("eca-sweep", "preinjectivity witnesses", "mutually erasable patterns", not witness_bad,
                        f"exceptions={witness_bad}", sum(1 for r in rows if r.witness)))
    return checks


def run_suite(name: str, seed: int = 0, **sizes) -> list:
    if name == "pseudometric":
        return suite_pseudometric(seed, **sizes)
    if name == "lipschitz":
        return suite_lipschitz(seed, **sizes)
    if name == "invariance":
        return suite_invariance(seed, **sizes)
    if name == "nets":
        return suite_nets(**sizes)
    if name == "counterexamples":
        return suite_counterexamples(**sizes)
    if name == "main-theorem":
        return suite_main_theorem(seed, **sizes)
    if name == "eca-sweep":
        return suite_eca_sweep(**sizes)
    raise KeyError(name)


def conjecture_candidates() -> list:
    """ECA codes that are preinjective but not injective: where B-injectivity and injectivity could separate."""
    return [r.code for r in eca_sweep() if r.preinjective and not r.injective]
