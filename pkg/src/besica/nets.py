"""Constructive (U, W)-nets inside finite regions.

A net only makes sense globally in an infinite group; here it lives in a
finite ``region`` and covering is checked on ``core``, the part of the
region that keeps a collar of width ``radius(W)`` away from its edge.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Mapping

from .errors import DomainError
from .group import Group
from .sequences import ExhaustiveSequence


@dataclass
class Net:
    group: Group
    centers: list
    U: frozenset
    W: frozenset
    region: frozenset
    core: frozenset
    k: int | None = None
    packing_ok: bool | None = None
    covering_ok: bool | None = None

    @property
    def center_set(self) -> frozenset:
        return frozenset(self.centers)

    def to_json(self) -> str:
        fmt = self.group.format_element
        return json.dumps({
            "group": self.group.describe(),
            "k": self.k,
            "centers": [fmt(x) for x in self.centers],
            "U": sorted(fmt(x) for x in self.U),
            "W": sorted(fmt(x) for x in self.W),
            "region": sorted(fmt(x) for x in self.region),
        })

    @classmethod
    def from_json(cls, text: str) -> "Net":
        from .group import parse_group
        d = json.loads(text)
        G = parse_group(d["group"])
        parse = G.parse_element
        region = frozenset(parse(x) for x in d["region"])
        W = frozenset(parse(x) for x in d["W"])
        return cls(G, [parse(x) for x in d["centers"]], frozenset(parse(x) for x in d["U"]), W,
                   region, collar_core(G, region, W), d.get("k"))


@dataclass
class NetReport:
    packing_ok: bool
    covering_ok: bool
    violations: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.packing_ok and self.covering_ok


def collar_core(group: Group, region: frozenset, W: Iterable) -> frozenset:
    """Elements ``g`` of ``region`` whose whole disk ``g D_w`` stays in ``region``, ``w = radius(W)``."""
    w = max(group.word_length(x) for x in W)
    disk = group.ball(w).elements
    mul = group._mul
    return frozenset(g for g in region if all(mul(g, d) in region for d in disk))


def bfs_order(group: Group, elements: Iterable) -> list:
    elements = list(elements)
    if not elements:
        return []
    R = max(group.word_length(x) for x in elements)
    table = group.ball(R)
    return sorted(elements, key=table.position)


def greedy_net(group: Group, k: int, region: Iterable) -> Net:
    """Scan ``region`` in BFS order, keeping ``x`` when ``x D_k`` misses all earlier translates.

    Any rejected ``y`` has ``y D_k`` meeting some ``x D_k``, so ``y`` lies in
    ``x D_{2k}``: the result packs ``D_k`` and covers the region by ``D_{2k}``.
    """
    if k < 0:
        raise DomainError("radius must be nonnegative")
    region = frozenset(group.check(g) for g in region)
    U = group.ball(k).elements
    W = frozenset(group.ball(2 * k).elements)
    mul = group._mul
    occupied: set = set()
    centers = []
    for x in bfs_order(group, region):
        cells = [mul(x, u) for u in U]
        if occupied.isdisjoint(cells):
            occupied.update(cells)
            centers.append(x)
    net = Net(group, centers, frozenset(U), W, region, collar_core(group, region, W), k)
    verify_net(net)
    return net


def verify_net(net: Net) -> NetReport:
    """Exact packing check via an occupancy map, and covering check on the core."""
    G = net.group
    mul, inv = G._mul, G._inv
    violations = []
    owner: dict = {}
    for x in net.centers:
        for u in net.U:
            cell = mul(x, u)
            prev = owner.get(cell)
            if prev is not None:
                violations.append(("packing", prev, x, cell))
            else:
                owner[cell] = x
    packing_ok = not violations
    centers = net.center_set
    W_inv = [inv(w) for w in net.W]
    uncovered = [g for g in net.core if not any(mul(g, wi) in centers for wi in W_inv)]
    violations.extend(("covering", g) for g in uncovered)
    net.packing_ok, net.covering_ok = packing_ok, not uncovered
    return NetReport(packing_ok, not uncovered, violations)


def refine_net(net: Net, chooser: Callable | Mapping) -> Net:
    """Replace each center ``x`` by ``phi(x)`` in ``x U``; the result is a ``({1}, U^{-1} W)``-net."""
    G = net.group
    pick = chooser.__getitem__ if isinstance(chooser, Mapping) else chooser
    mul, inv = G._mul, G._inv
    new_centers = []
    for x in net.centers:
        y = G.check(pick(x))
        if mul(inv(x), y) not in net.U:
            raise DomainError(f"chosen point {y!r} is not in {x!r}U")
        new_centers.append(y)
    U_inv = [inv(u) for u in net.U]
    W2 = frozenset(mul(u, w) for u in U_inv for w in net.W)
    refined = Net(G, new_centers, frozenset([G.identity]), W2, net.region, net.core, net.k)
    verify_net(refined)
    return refined


@dataclass
class DensityRow:
    n: int
    count: int
    size: int
    flagged: bool
    # |U| |N cap X^{+U}|,  |X|,  |W| |N cap X^{+W}|; None on flagged rows
    sandwich: tuple | None = None
    # |U| |{x in N : xU inside X}|, the packing count that is a true lower side
    interior: int | None = None

    @property
    def density(self) -> Fraction:
        return Fraction(self.count, self.size)

    @property
    def sandwich_ok(self) -> bool | None:
        if self.sandwich is None:
            return None
        lo, mid, hi = self.sandwich
        return lo <= mid <= hi

    @property
    def covering_half_ok(self) -> bool | None:
        if self.sandwich is None:
            return None
        return self.sandwich[1] <= self.sandwich[2]

    @property
    def interior_sandwich_ok(self) -> bool | None:
        if self.sandwich is None:
            return None
        return self.interior <= self.sandwich[1] <= self.sandwich[2]


@dataclass
class DensityReport:
    rows: list
    lower: Fraction
    upper: Fraction
    tol: Fraction

    @property
    def bounds_ok(self) -> bool:
        lo, hi = self.lower - self.tol, self.upper + self.tol
        return all(lo <= r.density <= hi for r in self.rows if not r.flagged)

    @property
    def sandwich_ok(self) -> bool:
        return all(r.sandwich_ok for r in self.rows if not r.flagged)

    @property
    def interior_sandwich_ok(self) -> bool:
        return all(r.interior_sandwich_ok for r in self.rows if not r.flagged)

    @property
    def applicable(self) -> list:
        return [r for r in self.rows if not r.flagged]


def net_density_bounds_check(net: Net, seq: ExhaustiveSequence, n_range: Iterable[int],
                             tol=Fraction(1, 100)) -> DensityReport:
    """Density of the centers along ``seq`` against the bounds ``1/|W|`` and ``1/|U|``.

    A row is flagged as boundary-affected when ``X_n^{+W}`` or ``X_n^{+U}``
    leaves the region or ``X_n`` leaves the covered core.  Unflagged rows carry
    both the sandwich ``|U||N cap X^{+U}| <= |X| <= |W||N cap X^{+W}|`` and its
    variant counting only centers whose ``U``-translate lies inside ``X``.  The
    first inequality can fail at finite ``n``: a center just outside ``X``
    contributes all of ``|U|`` to the left side but only part of its translate
    to ``X``.
    """
    G = net.group
    centers = net.center_set
    rows = []
    for n in n_range:
        X = seq.member_set(n)
        count = len(centers & X)
        plus_U = G.closure_plus(X, net.U)
        plus_W = G.closure_plus(X, net.W)
        flagged = not (plus_W <= net.region and plus_U <= net.region and X <= net.core)
        sandwich = interior = None
        if not flagged:
            sandwich = (len(net.U) * len(centers & plus_U), len(X), len(net.W) * len(centers & plus_W))
            inside = sum(1 for x in centers & plus_U if all(G._mul(x, u) in X for u in net.U))
            interior = len(net.U) * inside
        rows.append(DensityRow(n, count, len(X), flagged, sandwich, interior))
    return DensityReport(rows, Fraction(1, len(net.W)), Fraction(1, len(net.U)), Fraction(tol))
