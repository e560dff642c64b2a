"""Cellular automata over the implemented groups.

The global map is lazy: ``apply(c)`` is a configuration whose value at ``g``
is the local rule applied to ``c(g n_1), ..., c(g n_m)``.  Rule tables are
flat tuples indexed by the mixed-radix code of the neighborhood states, the
first neighbor being the most significant digit.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from .config import Configuration, Constant, Pattern, check_states
from .errors import CapacityError, DomainError, SpecSyntaxError
from .group import Group, free_abelian
from .metrics import DistanceProfile, _hamming_rows, besicovitch_profile
from .nets import Net
from .sequences import Disks, ExhaustiveSequence, boundary_size

ENUM_CAP = 1 << 24
DIGITS = "0123456789abcdefghijklmnopqrstuvwxyz"


class CellularAutomaton:
    """``<Q, N, f>`` with ``f`` given as a lookup table."""

    def __init__(self, group: Group, states: int, neighborhood: Sequence, table: Sequence[int],
                 name: str | None = None):
        self.group = group
        self.states = check_states(states)
        nbhd = tuple(group.check(tuple(x)) for x in neighborhood)
        if not nbhd:
            raise DomainError("neighborhood must be nonempty")
        if len(set(nbhd)) != len(nbhd):
            raise DomainError("neighborhood has repeated elements")
        self.neighborhood = nbhd
        table = tuple(int(t) for t in table)
        if len(table) != states ** len(nbhd):
            raise DomainError(f"rule table needs {states ** len(nbhd)} entries, got {len(table)}")
        if any(not 0 <= t < states for t in table):
            raise DomainError("rule table entry outside alphabet")
        self.table = table
        self.radius = max(group.word_length(x) for x in nbhd)
        self.name = name

    def local(self, values: Sequence[int]) -> int:
        idx = 0
        q = self.states
        for v in values:
            idx = idx * q + v
        return self.table[idx]

    def cell(self, c: Configuration, g) -> int:
        """``F(c)(g) = f(c(g n_1), ..., c(g n_m))``."""
        mul, ev, q = self.group._mul, c.eval, self.states
        idx = 0
        for x in self.neighborhood:
            idx = idx * q + ev(mul(g, x))
        return self.table[idx]

    def apply(self, c: Configuration) -> "Image":
        return apply(self, c)

    def dependency(self, U: Iterable) -> frozenset:
        """Cells read when evaluating the image on ``U``: ``U N``."""
        mul = self.group._mul
        return frozenset(mul(u, x) for u in U for x in self.neighborhood)

    def describe(self) -> str:
        if self.name and self.name.startswith("eca:"):
            return self.name
        fmt = self.group.format_element
        return f"ca:{self.states}:" + ";".join(fmt(x) for x in self.neighborhood) + ":" + \
            "".join(DIGITS[t] for t in self.table)

    def __repr__(self):
        return f"CellularAutomaton({self.name or self.describe()})"


class Image(Configuration):
    """The configuration ``F_A(c)``, evaluated on demand."""

    def __init__(self, ca: CellularAutomaton, base: Configuration):
        self.ca, self.base = ca, base
        self.group, self.states = base.group, base.states

    def eval(self, g):
        return self.ca.cell(self.base, g)

    def __repr__(self):
        return f"Image({self.ca!r}, {self.base!r})"


def _check_compatible(A: CellularAutomaton, c: Configuration):
    if c.states != A.states:
        raise DomainError(f"alphabet mismatch: CA has {A.states} states, configuration {c.states}")
    if c.group != A.group:
        raise DomainError("configuration and CA live on different groups")


def apply(A: CellularAutomaton, c: Configuration) -> Configuration:
    _check_compatible(A, c)
    return Image(A, c)


def apply_window(A: CellularAutomaton, c: Configuration, U: Iterable) -> Pattern:
    _check_compatible(A, c)
    return Pattern({u: A.cell(c, u) for u in U})


def eca(code: int) -> CellularAutomaton:
    """Elementary CA with Wolfram code ``code`` on ``Z`` with neighborhood ``(-1, 0, 1)``."""
    if not 0 <= code <= 255:
        raise DomainError("Wolfram codes range over 0..255")
    table = [(code >> i) & 1 for i in range(8)]
    return CellularAutomaton(free_abelian(1), 2, [(-1,), (0,), (1,)], table, name=f"eca:{code}")


def identity_ca(group: Group, states: int = 2) -> CellularAutomaton:
    return CellularAutomaton(group, states, [group.identity], range(states), name="identity")


def constant_ca(group: Group, q: int, states: int = 2) -> CellularAutomaton:
    return CellularAutomaton(group, states, [group.identity], [q] * states, name=f"constant:{q}")


def parse_ca(text: str, group: Group | None = None) -> CellularAutomaton:
    """``eca:<code>`` or ``ca:<Q>:<n1>;<n2>;...:<table digits>``."""
    text = text.strip()
    if text.startswith("eca:"):
        return eca(int(text[4:]))
    if text.startswith("ca:"):
        try:
            _, q, nbhd, digits = text.split(":")
        except ValueError:
            raise SpecSyntaxError(f"bad CA spec {text!r}") from None
        if group is None:
            raise DomainError("a group is needed to parse a general CA spec")
        neighborhood = [group.parse_element(t) for t in nbhd.split(";")]
        return CellularAutomaton(group, int(q), neighborhood, [DIGITS.index(ch) for ch in digits])
    raise SpecSyntaxError(f"bad CA spec {text!r}")


# -- Lipschitz inequalities ----------------------------------------------------


@dataclass
class LipschitzRow:
    n: int
    lhs: Fraction
    rhs: Fraction

    @property
    def ok(self) -> bool:
        return self.lhs <= self.rhs


@dataclass
class LipschitzReport:
    mode: str
    L: int
    rows: list = field(default_factory=list)

    @property
    def violations(self) -> list:
        return [r.n for r in self.rows if not r.ok]

    @property
    def ok(self) -> bool:
        return not self.violations


def lipschitz_check(A: CellularAutomaton, c1: Configuration, c2: Configuration,
                    seq: ExhaustiveSequence, n_range: Iterable[int], mode: str = "disks") -> LipschitzReport:
    """Check the per-``n`` inequalities behind the Lipschitz bounds, exactly.

    ``disks``: ``H_n(Fc1,Fc2)/gamma(n) <= gamma(r)^2 H_{n+r}(c1,c2)/gamma(n+r)``.
    ``amenable``: ``H_{X_n}(Fc1,Fc2) <= |E| (H_{X_n}(c1,c2) + |boundary_E X_n|)``
    with ``E = N + {1}``.
    """
    ns = list(n_range)
    if not ns:
        return LipschitzReport(mode, 0)
    F1, F2 = apply(A, c1), apply(A, c2)
    image_rows = {row.n: row for row in _hamming_rows(F1, F2, seq, ns)}
    G = A.group
    if mode == "disks":
        if not isinstance(seq, Disks):
            raise DomainError("disks mode needs a disk sequence")
        r = max(seq.group.word_length(x) for x in A.neighborhood)
        gr = seq.group.growth(r)
        L = gr * gr
        base_rows = {row.n: row for row in _hamming_rows(c1, c2, seq, range(ns[0] + r, ns[-1] + r + 1))}
        rows = []
        for n in ns:
            img, pre = image_rows[n], base_rows[n + r]
            rows.append(LipschitzRow(n, Fraction(img.H, img.size), L * Fraction(pre.H, pre.size)))
        return LipschitzReport(mode, L, rows)
    if mode == "amenable":
        E = set(A.neighborhood) | {G.identity}
        base_rows = {row.n: row for row in _hamming_rows(c1, c2, seq, ns)}
        rows = []
        for n in ns:
            b = boundary_size(seq, n, E)
            rows.append(LipschitzRow(n, Fraction(image_rows[n].H), Fraction(len(E) * (base_rows[n].H + b))))
        return LipschitzReport(mode, 1 + len(A.neighborhood), rows)
    raise DomainError(f"unknown mode {mode!r}")


# -- finite pattern checks -----------------------------------------------------


def _ordered(group: Group, cells: Iterable) -> list:
    return sorted(cells, key=lambda g: (group.word_length(g), g))


def me_check(A: CellularAutomaton, p1: Pattern, p2: Pattern, cap: int = ENUM_CAP) -> bool:
    """Are ``p1`` and ``p2`` mutually erasable?

    Only cells of ``E^{+N}`` can see the support ``E``; their inputs lie in
    ``E^{+N} N``.  Every completion of that shell is enumerated and the two
    images compared on ``E^{+N}``.
    """
    E = p1.support
    if E != p2.support:
        raise DomainError("patterns must share their support")
    if p1 == p2:
        raise DomainError("patterns must differ")
    G = A.group
    affected = sorted(G.closure_plus(E, A.neighborhood))
    shell = sorted(A.dependency(affected) - E)
    if A.states ** len(shell) > cap:
        raise CapacityError(f"{A.states}^{len(shell)} completions exceed cap {cap}")
    mul, nbhd = G._mul, A.neighborhood
    reads = [[mul(a, x) for x in nbhd] for a in affected]
    v1, v2 = dict(p1.values), dict(p2.values)
    for assignment in itertools.product(range(A.states), repeat=len(shell)):
        for cell, q in zip(shell, assignment):
            v1[cell] = q
            v2[cell] = q
        for cells in reads:
            if A.local([v1[c] for c in cells]) != A.local([v2[c] for c in cells]):
                return False
    return True


def goe_check(A: CellularAutomaton, p: Pattern, cap: int = ENUM_CAP) -> bool:
    """Is ``p`` a Garden-of-Eden pattern?

    By locality, ``p`` occurs in some image iff some assignment on ``P N``
    (``P`` the support) produces ``p`` on ``P``; a backtracking search decides this.
    """
    G = A.group
    P = list(p.support)
    deps = _ordered(G, A.dependency(P))
    if A.states ** len(deps) > cap:
        raise CapacityError(f"{A.states}^{len(deps)} assignments exceed cap {cap}")
    pos = {g: i for i, g in enumerate(deps)}
    mul = G._mul
    checks: list = [[] for _ in deps]
    for s in P:
        reads = [pos[mul(s, x)] for x in A.neighborhood]
        checks[max(reads)].append((reads, p.values[s]))
    values = [0] * len(deps)

    def consistent(i):
        return all(A.local([values[j] for j in reads]) == want for reads, want in checks[i])

    # iterative depth-first search over deps in order
    i, choice = 0, [-1] * len(deps)
    while i >= 0:
        choice[i] += 1
        if choice[i] >= A.states:
            choice[i] = -1
            i -= 1
            continue
        values[i] = choice[i]
        if consistent(i):
            if i == len(deps) - 1:
                return False
            i += 1
    return True


def center_me_pair(group: Group, p1: Pattern, p2: Pattern, fill: int = 0) -> tuple[Pattern, Pattern, int]:
    """Translate a mutually erasable pair so that it differs at the identity and pad it to a disk.

    Extending both patterns by the same values keeps them mutually erasable.
    Returns the two patterns on ``D_k`` and ``k``.
    """
    diff = [g for g in p1.support if p1[g] != p2[g]]
    if not diff:
        raise DomainError("patterns do not differ")
    g0 = min(diff, key=lambda g: (group.word_length(g), g))
    shift = group._inv(g0)
    q1, q2 = p1.translate(group, shift), p2.translate(group, shift)
    k = max(group.word_length(g) for g in q1.support)
    disk = group.ball(k).elements
    return (Pattern({g: q1.values.get(g, fill) for g in disk}),
            Pattern({g: q2.values.get(g, fill) for g in disk}), k)


# -- planted configurations from the main theorem ------------------------------


def _plant(p: Pattern, net: Net) -> Pattern:
    G = net.group
    mul = G._mul
    out: dict = {}
    for x in net.centers:
        for d, q in p.values.items():
            cell = mul(x, d)
            if cell in out:
                raise DomainError(f"translates of the pattern overlap at {cell!r}")
            out[cell] = q
    return Pattern(out)


def planted_goe_config(p: Pattern, net: Net, q: int = 0, states: int = 2) -> Configuration:
    """``c(g) = p(x^{-1} g)`` when ``g`` lies in ``x D_k`` for a center ``x``, else ``q``."""
    return Constant(net.group, q, states).overlay(_plant(p, net))


def planted_me_pair(p1: Pattern, p2: Pattern, net: Net, q: int = 0, r: int | None = None,
                    states: int = 2) -> tuple[Configuration, Configuration]:
    """Plant ``p1`` (resp. ``p2``) at every center; the net must pack ``D_R`` with ``R = k + 2r + 1``."""
    if p1.support != p2.support:
        raise DomainError("patterns must share their support")
    G = net.group
    k = max(G.word_length(g) for g in p1.support)
    if r is not None and net.k is not None and net.k < k + 2 * r + 1:
        raise DomainError(f"net radius {net.k} below k + 2r + 1 = {k + 2 * r + 1}")
    base = Constant(G, q, states)
    return base.overlay(_plant(p1, net)), base.overlay(_plant(p2, net))


@dataclass
class ProbeReport:
    entries: list = field(default_factory=list)  # (candidate index, DistanceProfile)

    @property
    def estimates(self) -> list:
        return [prof.limsup_estimate for _, prof in self.entries]

    @property
    def min_estimate(self) -> Fraction | None:
        return min(self.estimates) if self.entries else None


def b_surjectivity_probe(A: CellularAutomaton, c: Configuration, candidates: Sequence[Configuration],
                         seq: ExhaustiveSequence, n_max: int, tail: int = 1) -> ProbeReport:
    """Besicovitch tail estimates of ``(c, F(c'))`` for each candidate ``c'``.

    This exhibits lower bounds for specific candidates; it does not decide
    Besicovitch surjectivity.
    """
    report = ProbeReport()
    for i, cand in enumerate(candidates):
        report.entries.append((i, besicovitch_profile(c, apply(A, cand), seq, n_max, tail)))
    return report
