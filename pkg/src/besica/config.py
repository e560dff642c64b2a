"""Configurations ``c : G -> Q`` given by finitary rules, and finite patterns.

A configuration is never materialised; it is a description that can be
evaluated at any group element.  Translation, the involution
``c^-(g) = c(g^{-1})`` and overlays wrap an existing description lazily.
States are the integers ``0 .. states-1``.
"""

from __future__ import annotations

import csv
import hashlib
import io
from typing import Callable, Iterable, Mapping

from .errors import DomainError, SpecSyntaxError
from .group import Group


def check_states(states: int) -> int:
    if not isinstance(states, int) or states < 2:
        raise DomainError(f"alphabet needs at least two states, got {states!r}")
    return states


class Pattern:
    """A finite assignment ``support -> state``."""

    __slots__ = ("values",)

    def __init__(self, values: Mapping | Iterable = ()):
        self.values = dict(values)

    @property
    def support(self) -> frozenset:
        return frozenset(self.values)

    def __getitem__(self, g):
        return self.values[g]

    def __len__(self):
        return len(self.values)

    def __eq__(self, other):
        return isinstance(other, Pattern) and self.values == other.values

    def __hash__(self):
        return hash(frozenset(self.values.items()))

    def __repr__(self):
        return f"Pattern({self.values!r})"

    def translate(self, group: Group, g) -> "Pattern":
        """The pattern moved to ``g``: its value at ``g*x`` is the old value at ``x``."""
        g = group.check(g)
        return Pattern({group._mul(g, x): q for x, q in self.values.items()})

    def to_csv(self, group: Group) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["element", "state"])
        for x, q in sorted(self.values.items(), key=lambda kv: (len(kv[0]), kv[0])):
            w.writerow([group.format_element(x), q])
        return buf.getvalue()

    @classmethod
    def from_csv(cls, group: Group, text: str) -> "Pattern":
        rows = list(csv.reader(io.StringIO(text)))
        if rows and rows[0] == ["element", "state"]:
            rows = rows[1:]
        return cls({group.parse_element(e): int(q) for e, q in rows if e or q})


class Configuration:
    """Base class: a total, deterministic map from group elements to states."""

    group: Group
    states: int

    def eval(self, g) -> int:
        raise NotImplementedError

    def __call__(self, g) -> int:
        return self.eval(g)

    def values(self, elements: Iterable) -> list:
        ev = self.eval
        return [ev(g) for g in elements]

    def translate(self, g) -> "Configuration":
        g = self.group.check(g)
        if g == self.group.identity:
            return self
        return Translated(self, g)

    def involute(self) -> "Configuration":
        return Involuted(self)

    def overlay(self, p: Pattern) -> "Configuration":
        if not len(p):
            return self
        return Overlay(self, p)

    def restrict(self, U: Iterable) -> Pattern:
        ev = self.eval
        return Pattern({u: ev(u) for u in U})

    def describe(self) -> str:
        return repr(self)


class Constant(Configuration):
    def __init__(self, group: Group, q: int = 0, states: int = 2):
        self.group, self.states = group, check_states(states)
        if not 0 <= q < states:
            raise DomainError(f"state {q} outside alphabet of size {states}")
        self.q = q

    def eval(self, g):
        return self.q

    def translate(self, g):
        self.group.check(g)
        return self

    def involute(self):
        return self

    def describe(self):
        return f"const:{self.q}"

    def __repr__(self):
        return f"Constant({self.q})"


class PeriodicZd(Configuration):
    """A periodic configuration on ``Z^d``.

    ``table`` lists the fundamental domain ``[0,p_1) x ... x [0,p_d)`` in
    row-major order (first axis slowest).
    """

    def __init__(self, group: Group, periods, table, states: int = 2):
        if group.family != "Z":
            raise DomainError("periodic configurations need Z^d")
        periods = tuple(int(p) for p in periods)
        if len(periods) != group.rank or any(p < 1 for p in periods):
            raise DomainError(f"need {group.rank} positive periods, got {periods!r}")
        table = tuple(int(t) for t in table)
        volume = 1
        for p in periods:
            volume *= p
        if len(table) != volume:
            raise DomainError(f"table has {len(table)} entries, fundamental domain has {volume}")
        self.group, self.states = group, check_states(states)
        if any(not 0 <= t < states for t in table):
            raise DomainError("table entry outside alphabet")
        self.periods, self.table = periods, table

    def cell(self, g) -> int:
        idx = 0
        for x, p in zip(g, self.periods):
            idx = idx * p + x % p
        return idx

    def eval(self, g):
        return self.table[self.cell(g)]

    def describe(self):
        return "periodic:" + "x".join(map(str, self.periods)) + ":" + "".join(map(str, self.table))

    def __repr__(self):
        return f"PeriodicZd({self.periods}, {self.table})"


class PrefixIndicator(Configuration):
    """On a free group: 1 exactly on reduced words beginning with ``letter``."""

    def __init__(self, group: Group, letter):
        if group.family != "F":
            raise DomainError("prefix indicators need a free group")
        if isinstance(letter, str):
            letter = group.parse_element(letter)
        letter = group.check(tuple(letter) if not isinstance(letter, int) else (letter,))
        if len(letter) != 1:
            raise DomainError("prefix must be a single letter")
        self.group, self.states = group, 2
        self.letter = letter[0]

    def eval(self, g):
        return 1 if g and g[0] == self.letter else 0

    def describe(self):
        return "prefix:" + self.group.format_element((self.letter,))

    def __repr__(self):
        return f"PrefixIndicator({self.group.format_element((self.letter,))})"


class HalfLine(Configuration):
    """On ``Z``: 1 exactly on the negative integers."""

    def __init__(self, group: Group):
        if group.family != "Z" or group.rank != 1:
            raise DomainError("half-line configuration lives on Z")
        self.group, self.states = group, 2

    def eval(self, g):
        return 1 if g[0] < 0 else 0

    def describe(self):
        return "halfline"

    def __repr__(self):
        return "HalfLine()"


class SeededRandom(Configuration):
    """Pseudorandom states keyed by (seed, canonical form).

    Each value is a keyed BLAKE2b digest of the element's serialized form, so
    it does not depend on evaluation order.
    """

    def __init__(self, group: Group, seed: int, states: int = 2):
        self.group, self.states = group, check_states(states)
        self.seed = int(seed)
        self._key = self.seed.to_bytes(16, "little", signed=True)
        self._memo: dict = {}

    def eval(self, g):
        v = self._memo.get(g)
        if v is None:
            data = ",".join(map(str, g)).encode()
            digest = hashlib.blake2b(data, digest_size=8, key=self._key).digest()
            v = int.from_bytes(digest, "little") % self.states
            self._memo[g] = v
        return v

    def describe(self):
        return f"random:{self.seed}"

    def __repr__(self):
        return f"SeededRandom({self.seed}, states={self.states})"


class Procedural(Configuration):
    """Wraps an arbitrary Python function ``g -> state`` (not serializable)."""

    def __init__(self, group: Group, fn: Callable, states: int = 2, name: str = "procedural"):
        self.group, self.states = group, check_states(states)
        self.fn, self.name = fn, name

    def eval(self, g):
        return self.fn(g)

    def __repr__(self):
        return f"Procedural({self.name})"


class Translated(Configuration):
    """``c^g(h) = c(g h)``."""

    def __init__(self, base: Configuration, g):
        self.base, self.g = base, g
        self.group, self.states = base.group, base.states

    def eval(self, h):
        return self.base.eval(self.group._mul(self.g, h))

    def translate(self, g):
        g = self.group.check(g)
        gg = self.group._mul(self.g, g)
        return self.base if gg == self.group.identity else Translated(self.base, gg)

    def describe(self):
        return f"{self.base.describe()}@{self.group.format_element(self.g)}"

    def __repr__(self):
        return f"Translated({self.base!r}, {self.g!r})"


class Involuted(Configuration):
    """``c^-(g) = c(g^{-1})``."""

    def __init__(self, base: Configuration):
        self.base = base
        self.group, self.states = base.group, base.states

    def eval(self, g):
        return self.base.eval(self.group._inv(g))

    def involute(self):
        return self.base

    def __repr__(self):
        return f"Involuted({self.base!r})"


class Overlay(Configuration):
    """``base`` with a finite pattern written over it."""

    def __init__(self, base: Configuration, pattern: Pattern):
        for g, q in pattern.values.items():
            base.group.check(g)
            if not 0 <= q < base.states:
                raise DomainError(f"pattern state {q} outside alphabet")
        self.base, self.pattern = base, pattern
        self.group, self.states = base.group, base.states
        self._values = pattern.values

    def eval(self, g):
        v = self._values.get(g)
        return self.base.eval(g) if v is None else v

    def overlay(self, p):
        if not len(p):
            return self
        merged = dict(self._values)
        merged.update(p.values)
        return Overlay(self.base, Pattern(merged))

    def __repr__(self):
        return f"Overlay({self.base!r}, {len(self._values)} cells)"


def translate(c: Configuration, g) -> Configuration:
    return c.translate(g)


def involute(c: Configuration) -> Configuration:
    return c.involute()


def overlay(c: Configuration, p: Pattern) -> Configuration:
    return c.overlay(p)


def restrict(c: Configuration, U: Iterable) -> Pattern:
    return c.restrict(U)


def parse_config(text: str, group: Group, states: int = 2) -> Configuration:
    """``const:Q``, ``halfline``, ``prefix:a``, ``random:SEED``, ``periodic:P1xP2:DIGITS``."""
    text = text.strip()
    kind, _, arg = text.partition(":")
    try:
        if kind == "const":
            return Constant(group, int(arg or 0), states)
        if kind == "halfline":
            return HalfLine(group)
        if kind == "prefix":
            return PrefixIndicator(group, arg or "a")
        if kind == "random":
            return SeededRandom(group, int(arg or 0), states)
        if kind == "periodic":
            periods, _, digits = arg.partition(":")
            return PeriodicZd(group, [int(p) for p in periods.split("x")], [int(d) for d in digits], states)
    except ValueError as exc:
        if isinstance(exc, DomainError):
            raise
        raise SpecSyntaxError(f"bad configuration spec {text!r}: {exc}") from None
    raise SpecSyntaxError(f"unknown configuration kind {kind!r}")
