"""Exhaustive sequences of finite sets, Følner ratios and amenability diagnostics."""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Sequence

from .errors import CapacityError, DomainError, SpecSyntaxError
from .group import Group


class ExhaustiveSequence:
    """A rule ``n -> X_n`` of finite subsets of a group.

    Subclasses implement ``_members``; ``increment`` returns ``X_n \\ X_{n-1}``
    and is what the distance profiles use to update Hamming counts.
    """

    group: Group
    monotone = True

    def member_set(self, n: int) -> frozenset:
        if n < 0:
            raise DomainError("sequence index must be nonnegative")
        cache = self.__dict__.setdefault("_member_cache", {})
        if n not in cache:
            if len(cache) >= 8:
                cache.pop(next(iter(cache)))
            cache[n] = frozenset(self._members(n))
        return cache[n]

    def _members(self, n: int) -> Iterable:
        raise NotImplementedError

    def size(self, n: int) -> int:
        return len(self.member_set(n))

    def increment(self, n: int) -> Iterable:
        if n == 0:
            return self.member_set(0)
        return self.member_set(n) - self.member_set(n - 1)

    def describe(self) -> str:
        return type(self).__name__


class Disks(ExhaustiveSequence):
    """``X_n = D_{n,S}`` for the group's generating set."""

    def __init__(self, group: Group):
        self.group = group

    def _members(self, n):
        return self.group.ball(n).elements

    def size(self, n):
        return self.group.growth(n)

    def increment(self, n):
        return self.group.ball(n).sphere(n)

    def ordered(self, n) -> list:
        return self.group.ball(n).elements

    def describe(self):
        return "disks"

    def __eq__(self, other):
        return isinstance(other, Disks) and other.group == self.group

    def __hash__(self):
        return hash(("disks", self.group))


SCHEDULES: dict[str, Callable[[int], int]] = {
    "sym": lambda n: n,
    "pow2": lambda n: 2 ** n,
}


class IntervalAsym(ExhaustiveSequence):
    """``X_n = [-n, b(n)]`` on ``Z`` for a nondecreasing schedule ``b`` with ``b(n) >= n``."""

    def __init__(self, group: Group, schedule="sym"):
        if group.family != "Z" or group.rank != 1:
            raise DomainError("interval sequences live on Z")
        self.group = group
        if isinstance(schedule, str):
            name = schedule
            if name in SCHEDULES:
                fn = SCHEDULES[name]
            elif name.startswith("mul"):
                k = int(name[3:])
                fn = lambda n, k=k: k * n
            else:
                raise SpecSyntaxError(f"unknown interval schedule {name!r}")
        else:
            name, fn = getattr(schedule, "__name__", "custom"), schedule
        self.schedule_name = name
        self.schedule = fn

    def bounds(self, n: int) -> tuple[int, int]:
        hi = self.schedule(n)
        if hi < -n:
            raise DomainError(f"empty interval at n={n}")
        if hi + n + 1 > self.group.cap:
            raise CapacityError(f"|X_{n}| = {hi + n + 1} exceeds cap {self.group.cap}")
        return -n, hi

    def _members(self, n):
        lo, hi = self.bounds(n)
        return [(x,) for x in range(lo, hi + 1)]

    def size(self, n):
        lo, hi = self.bounds(n)
        return hi - lo + 1

    def increment(self, n):
        lo, hi = self.bounds(n)
        if n == 0:
            return [(x,) for x in range(lo, hi + 1)]
        plo, phi = self.bounds(n - 1)
        if lo > plo or hi < phi:
            raise DomainError("schedule is not monotone")
        return [(x,) for x in range(lo, plo)] + [(x,) for x in range(phi + 1, hi + 1)]

    def describe(self):
        return f"interval:{self.schedule_name}"


class Explicit(ExhaustiveSequence):
    """A finite list of sets; indices beyond the list exceed the horizon."""

    def __init__(self, group: Group, sets: Sequence[Iterable]):
        self.group = group
        self.sets = [frozenset(group.check(x) for x in s) for s in sets]
        if not self.sets:
            raise DomainError("explicit sequence needs at least one set")
        self.monotone = all(a <= b for a, b in zip(self.sets, self.sets[1:]))

    def _members(self, n):
        if n >= len(self.sets):
            raise CapacityError(f"index {n} beyond explicit horizon {len(self.sets) - 1}")
        return self.sets[n]

    def describe(self):
        return f"explicit[{len(self.sets)}]"


class Inverse(ExhaustiveSequence):
    """Pointwise inverse ``X_n^{-1}`` of another sequence."""

    def __init__(self, base: ExhaustiveSequence):
        self.base = base
        self.group = base.group
        self.monotone = base.monotone

    def _members(self, n):
        return self.group.inverse_set(self.base.member_set(n))

    def size(self, n):
        return self.base.size(n)

    def increment(self, n):
        return [self.group._inv(x) for x in self.base.increment(n)]

    def describe(self):
        return f"inverse({self.base.describe()})"


def member_set(seq: ExhaustiveSequence, n: int) -> frozenset:
    return seq.member_set(n)


def inverse_seq(seq: ExhaustiveSequence) -> ExhaustiveSequence:
    """``X_n -> X_n^{-1}``.  Disks are symmetric and come back unchanged."""
    if isinstance(seq, Disks):
        return seq
    if isinstance(seq, Inverse):
        return seq.base
    if isinstance(seq, Explicit):
        return Explicit(seq.group, [seq.group.inverse_set(s) for s in seq.sets])
    return Inverse(seq)


def _disk_radius(group: Group, E: frozenset):
    """Return ``R`` if ``E`` is exactly ``D_R``, else ``None``."""
    R = max(group.word_length(e) for e in E)
    if len(E) == group.growth(R) and group.identity in E:
        return R
    return None


def boundary_size(seq: ExhaustiveSequence, n: int, E: Iterable) -> int:
    E = frozenset(seq.group.check(e) for e in E)
    if not E:
        raise DomainError("E must be nonempty")
    if isinstance(seq, Disks):
        R = _disk_radius(seq.group, E)
        if R is not None:
            # (D_n)^{+D_R} = D_{n+R}
            return seq.group.growth(n + R) - seq.group.growth(n)
    return len(seq.group.boundary(seq.member_set(n), E))


def folner_ratio(seq: ExhaustiveSequence, n: int, E: Iterable) -> Fraction:
    """``|boundary_E X_n| / |X_n|`` as an exact fraction."""
    return Fraction(boundary_size(seq, n, E), seq.size(n))


@dataclass
class AmenabilityReport:
    rows: list = field(default_factory=list)  # (n, |X_n|, |boundary|, ratio)
    verdict: str = "inconclusive"
    threshold: Fraction = Fraction(1, 50)

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["n", "size", "boundary", "ratio_num", "ratio_den", "ratio"])
        for n, size, b, r in self.rows:
            w.writerow([n, size, b, r.numerator, r.denominator, f"{float(r):.10g}"])
        return buf.getvalue()


def amenability_report(seq: ExhaustiveSequence, E: Iterable, n_range: Iterable[int],
                       threshold=Fraction(1, 50)) -> AmenabilityReport:
    """Empirical trend of Følner ratios over ``n_range``; never a proof of amenability.

    ``vanishing``: the last ratio is below ``threshold`` and the last third of
    the rows is non-increasing.  ``bounded-away``: every ratio in the last third
    is at least ``threshold``.  Sequences whose sets stop growing are
    ``inconclusive`` since they cannot be exhaustive.
    """
    E = list(E)
    threshold = Fraction(threshold)
    ns = list(n_range)
    if not ns:
        raise DomainError("empty n_range")
    rows = []
    for n in ns:
        size = seq.size(n)
        b = boundary_size(seq, n, E)
        rows.append((n, size, b, Fraction(b, size)))
    report = AmenabilityReport(rows, "inconclusive", threshold)
    sizes = [r[1] for r in rows]
    if len(rows) < 2 or sizes[-1] == sizes[0]:
        return report
    tail = [r[3] for r in rows[-max(2, len(rows) // 3):]]
    if tail[-1] < threshold and all(a >= b for a, b in zip(tail, tail[1:])):
        report.verdict = "vanishing"
    elif min(tail) >= threshold:
        report.verdict = "bounded-away"
    return report


def parse_sequence(text: str, group: Group) -> ExhaustiveSequence:
    """``disks``, ``interval:sym``, ``interval:pow2`` or ``interval:mulK``."""
    text = text.strip()
    if text in ("", "disks"):
        return Disks(group)
    kind, _, arg = text.partition(":")
    if kind == "interval":
        return IntervalAsym(group, arg or "sym")
    raise SpecSyntaxError(f"bad sequence spec {text!r}")
