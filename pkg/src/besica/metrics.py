"""Hamming counts, Besicovitch and Weyl distance profiles, and density profiles.

Every ratio is a :class:`fractions.Fraction`.  A true ``limsup`` is not
computable, so profiles report the maximum ratio over an explicit tail window
and say so.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from math import lcm
from typing import Callable, Iterable

from .config import Configuration, PeriodicZd
from .errors import DomainError, UnsupportedInputError
from .sequences import Disks, ExhaustiveSequence


@dataclass(frozen=True)
class Row:
    n: int
    H: int
    size: int

    @property
    def ratio(self) -> Fraction:
        return Fraction(self.H, self.size)


@dataclass
class DistanceProfile:
    """Per-``n`` rows ``(n, H, |X_n|)`` plus a tail-window summary.

    ``limsup_estimate`` is the largest ratio among the last ``tail_window``
    rows.  ``exact`` holds a closed-form value when one is known.
    ``lower_bound`` marks Weyl profiles, whose sup over ``G`` was truncated.
    """

    rows: list = field(default_factory=list)
    tail_window: int = 1
    exact: Fraction | None = None
    kind: str = "besicovitch"
    lower_bound: bool = False

    @property
    def ratios(self) -> list:
        return [r.ratio for r in self.rows]

    @property
    def tail(self) -> list:
        return self.rows[-self.tail_window:]

    @property
    def limsup_estimate(self) -> Fraction:
        return max(r.ratio for r in self.tail)

    @property
    def liminf_estimate(self) -> Fraction:
        return min(r.ratio for r in self.tail)

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["n", "H", "size", "ratio_num", "ratio_den"])
        for r in self.rows:
            q = r.ratio
            w.writerow([r.n, r.H, r.size, q.numerator, q.denominator])
        return buf.getvalue()

    def to_dict(self) -> dict:
        return {
            "kind": self.kind,
            "rows": [{"n": r.n, "H": r.H, "size": r.size, "ratio": fraction_json(r.ratio)} for r in self.rows],
            "tail_window": self.tail_window,
            "limsup_estimate": fraction_json(self.limsup_estimate),
            "exact": None if self.exact is None else fraction_json(self.exact),
            "lower_bound": self.lower_bound,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)


def fraction_json(q: Fraction) -> dict:
    q = Fraction(q)
    return {"num": q.numerator, "den": q.denominator, "decimal": f"{float(q):.12g}"}


def _check_pair(c1: Configuration, c2: Configuration):
    if c1.states != c2.states:
        raise DomainError(f"alphabet mismatch: {c1.states} vs {c2.states} states")
    if c1.group != c2.group:
        raise DomainError("configurations live on different groups")


def hamming(c1: Configuration, c2: Configuration, U: Iterable) -> int:
    """``H_U(c1, c2)``: number of ``x`` in ``U`` with ``c1(x) != c2(x)``."""
    _check_pair(c1, c2)
    e1, e2 = c1.eval, c2.eval
    return sum(1 for x in U if e1(x) != e2(x))


def _hamming_rows(c1, c2, seq: ExhaustiveSequence, ns: Iterable[int]) -> list:
    ns = list(ns)
    rows = []
    contiguous = bool(ns) and ns == list(range(ns[0], ns[-1] + 1))
    if seq.monotone and contiguous:
        H = hamming(c1, c2, seq.member_set(ns[0]))
        rows.append(Row(ns[0], H, seq.size(ns[0])))
        for n in ns[1:]:
            H += hamming(c1, c2, seq.increment(n))
            rows.append(Row(n, H, seq.size(n)))
        return rows
    for n in ns:
        rows.append(Row(n, hamming(c1, c2, seq.member_set(n)), seq.size(n)))
    return rows


def besicovitch_profile(c1: Configuration, c2: Configuration, seq: ExhaustiveSequence,
                        n_max: int, tail: int = 1, n_min: int = 0) -> DistanceProfile:
    """Rows ``H_{X_n}(c1,c2)/|X_n|`` for ``n = n_min..n_max``."""
    if not 1 <= tail <= n_max - n_min + 1:
        raise DomainError("need 1 <= tail <= number of rows")
    _check_pair(c1, c2)
    rows = _hamming_rows(c1, c2, seq, range(n_min, n_max + 1))
    exact = None
    if isinstance(c1, PeriodicZd) and isinstance(c2, PeriodicZd) and isinstance(seq, Disks):
        exact = besicovitch_exact_periodic(c1, c2)
    return DistanceProfile(rows, tail, exact)


def besicovitch_exact_periodic(c1: Configuration, c2: Configuration) -> Fraction:
    """Mismatch fraction over a common fundamental domain of two periodic ``Z^d`` configurations.

    For periodic pairs the disk ratios converge to this value, so it is the
    Besicovitch distance itself.
    """
    if not (type(c1) is PeriodicZd and type(c2) is PeriodicZd):
        raise UnsupportedInputError("exact route needs two plain PeriodicZd configurations")
    _check_pair(c1, c2)
    periods = [lcm(a, b) for a, b in zip(c1.periods, c2.periods)]
    mismatches = 0
    volume = 0
    for g in product(*(range(p) for p in periods)):
        volume += 1
        if c1.eval(g) != c2.eval(g):
            mismatches += 1
    return Fraction(mismatches, volume)


def weyl_profile(c1: Configuration, c2: Configuration, seq: ExhaustiveSequence, n_max: int,
                 shift_window: Iterable, tail: int = 1, n_min: int = 0) -> DistanceProfile:
    """Rows ``max_{g in window} H_{X_n}(c1^g, c2^g)/|X_n|``.

    The window must contain the identity, so each row dominates the
    corresponding Besicovitch row.  Values are lower bounds on the Weyl
    distance because the sup over the whole group is truncated.
    """
    G = c1.group
    window = [G.check(g) for g in shift_window]
    if G.identity not in window:
        raise DomainError("shift window must contain the identity")
    if not 1 <= tail <= n_max - n_min + 1:
        raise DomainError("need 1 <= tail <= number of rows")
    _check_pair(c1, c2)
    e1, e2 = c1.eval, c2.eval
    mul = G._mul
    # the mismatch set over the union of translated windows, evaluated once
    cache: dict = {}

    def differs(x):
        v = cache.get(x)
        if v is None:
            v = cache[x] = e1(x) != e2(x)
        return v

    rows = []
    best = {g: 0 for g in window}
    monotone = seq.monotone
    for n in range(n_min, n_max + 1):
        # H_{X_n}(c1^g, c2^g) = H_{g X_n}(c1, c2)
        chunk = seq.increment(n) if monotone and n > n_min else seq.member_set(n)
        chunk = list(chunk)
        top = 0
        for g in window:
            h = sum(1 for x in chunk if differs(mul(g, x)))
            h = best[g] + h if monotone and n > n_min else h
            best[g] = h
            if h > top:
                top = h
        rows.append(Row(n, top, seq.size(n)))
    return DistanceProfile(rows, tail, None, kind="weyl", lower_bound=True)


def density_profile(A: Callable, seq: ExhaustiveSequence, n_range: Iterable[int],
                    tail: int | None = None) -> DistanceProfile:
    """Rows ``|A cap X_n| / |X_n|`` for a membership predicate ``A``.

    The tail max approximates the upper density, the tail min the lower one.
    """
    ns = list(n_range)
    rows = []
    for n in ns:
        X = seq.member_set(n)
        rows.append(Row(n, sum(1 for x in X if A(x)), len(X)))
    return DistanceProfile(rows, tail or max(1, len(rows) // 3), None, kind="density")


@dataclass
class InequalityRow:
    n: int
    lhs: Fraction
    rhs: Fraction

    @property
    def ok(self) -> bool:
        return self.lhs <= self.rhs


def translation_bound_rows(c1: Configuration, c2: Configuration, seq: ExhaustiveSequence, g,
                           E: Iterable, n_range: Iterable[int]) -> list:
    """Rows of ``|H_{X_n}(c1^g, c2^g) - H_{X_n}(c1, c2)| <= |boundary_E X_n^{-1}|``."""
    from .sequences import boundary_size, inverse_seq
    G = c1.group
    g = G.check(g)
    E = list(E)
    inv_seq = inverse_seq(seq)
    t1, t2 = c1.translate(g), c2.translate(g)
    ns = list(n_range)
    plain = _hamming_rows(c1, c2, seq, ns)
    moved = _hamming_rows(t1, t2, seq, ns)
    return [InequalityRow(n, Fraction(abs(b.H - a.H)), Fraction(boundary_size(inv_seq, n, E)))
            for n, a, b in zip(ns, plain, moved)]


def comparison_constants(S, S_prime, alpha_range: Iterable[int]) -> tuple:
    """Concrete constants for comparing disk densities under two generating sets of ``Z^d``.

    ``beta`` is the least radius with ``D_{1,S'}`` inside ``D_{beta,S}``;
    ``alpha1 = max gamma_S(n)/n^d`` and ``alpha2 = min gamma_{S'}(n)/n^d``
    over ``alpha_range``; the constant is ``alpha1 beta^d / alpha2``.
    """
    if S.family != "Z" or S_prime.family != "Z" or S.rank != S_prime.rank:
        raise DomainError("generator comparison is implemented for Z^d")
    d = S.rank
    ns = [n for n in alpha_range if n > 0]
    beta = max(S.word_length(s) for s in S_prime.steps)
    alpha1 = max(Fraction(S.growth(n), n ** d) for n in ns)
    alpha2 = min(Fraction(S_prime.growth(n), n ** d) for n in ns)
    return beta, alpha1, alpha2, alpha1 * beta ** d / alpha2


def generator_comparison_rows(c1: Configuration, c2: Configuration, S, S_prime,
                              n_range: Iterable[int]) -> tuple:
    """Rows of ``H_{n,S'}/gamma_{S'}(n) <= C H_{beta n,S}/gamma_S(beta n)``.

    ``c1``, ``c2`` are re-read on each group (same underlying ``Z^d``).
    Returns ``(rows, (beta, alpha1, alpha2, C))``.
    """
    from .sequences import Disks
    ns = [n for n in n_range if n > 0]
    consts = comparison_constants(S, S_prime, range(1, max(ns) + 1))
    beta, _, _, C = consts
    prime_rows = {r.n: r for r in _hamming_rows(c1, c2, Disks(S_prime), range(ns[0], ns[-1] + 1))}
    base_rows = {r.n: r for r in _hamming_rows(c1, c2, Disks(S), range(beta * ns[0], beta * ns[-1] + 1))}
    rows = []
    for n in ns:
        a, b = prime_rows[n], base_rows[beta * n]
        rows.append(InequalityRow(n, Fraction(a.H, a.size), C * Fraction(b.H, b.size)))
    return rows, consts
