"""Finitely generated groups with normal forms: free abelian groups Z^d and free groups F_k.

Elements are plain tuples in canonical form:

* ``Z^d``: a tuple of ``d`` integers;
* ``F_k``: a reduced word, stored as a tuple of nonzero integers where ``i``
  stands for the ``i``-th free generator and ``-i`` for its inverse.

Hot loops call the unchecked ``_mul``/``_inv``; the public ``mul``/``inv``
validate their operands.  :class:`Element` wraps a form together with its
group for operator syntax.
"""

from __future__ import annotations

import os
import string
from dataclasses import dataclass, field
from math import comb
from typing import Iterable, Sequence

from .errors import CapacityError, DomainError, SpecSyntaxError

Form = tuple

DEFAULT_CAP = 20_000_000
CAP_ENV = "BESICA_CAP"


def default_cap() -> int:
    value = os.environ.get(CAP_ENV)
    return int(value) if value else DEFAULT_CAP


class BallTable:
    """The disk ``D_n`` listed in breadth-first discovery order.

    Several tables may share the storage of one large BFS run; ``size`` marks
    the visible prefix.
    """

    __slots__ = ("group", "radius", "size", "_elements", "_radii", "gamma", "_index")

    def __init__(self, group, radius, elements, radii, gamma, index):
        self.group = group
        self.radius = radius
        self.gamma = tuple(gamma[: radius + 1])
        self.size = self.gamma[-1]
        self._elements = elements
        self._radii = radii
        self._index = index

    @property
    def elements(self) -> list:
        # always a copy: the shared list grows when a larger ball is requested
        return self._elements[: self.size]

    @property
    def radii(self) -> list:
        return self._radii[: self.size]

    def __len__(self) -> int:
        return self.size

    def __iter__(self):
        return iter(self._elements[: self.size])

    def __contains__(self, g) -> bool:
        return self.position(g) is not None

    def position(self, g):
        pos = self._index.get(g)
        if pos is None or pos >= self.size:
            return None
        return pos

    def radius_of(self, g):
        pos = self.position(g)
        return None if pos is None else self._radii[pos]

    def sphere(self, m: int) -> list:
        """Elements of word length exactly ``m``."""
        if not 0 <= m <= self.radius:
            raise DomainError(f"sphere radius {m} outside table radius {self.radius}")
        lo = self.gamma[m - 1] if m > 0 else 0
        return self._elements[lo: self.gamma[m]]

    def as_set(self) -> frozenset:
        return frozenset(self.elements)


class Group:
    """A finitely generated group ``Z^d`` or ``F_k`` with a fixed generating set.

    Use :func:`free_abelian` and :func:`free_group` rather than calling this
    directly.
    """

    def __init__(self, family: str, rank: int, generators: Sequence[Form], preset: str,
                 cap: int | None = None):
        if family not in ("Z", "F"):
            raise DomainError(f"unknown group family {family!r}")
        if rank < 1:
            raise DomainError("rank must be positive")
        self.family = family
        self.rank = rank
        self.preset = preset
        self.cap = default_cap() if cap is None else cap
        gens = tuple(tuple(s) for s in generators)
        if not gens:
            raise DomainError("generating set must be nonempty")
        for s in gens:
            self.check(s)
        self.generators = gens
        self.identity: Form = (0,) * rank if family == "Z" else ()
        steps = []
        for s in gens:
            for t in (s, self._inv(s)):
                if t != self.identity and t not in steps:
                    steps.append(t)
        if not steps:
            raise DomainError("generating set contains only the identity")
        self.steps: tuple = tuple(steps)
        self._table: BallTable | None = None
        if preset == "explicit":
            self._check_generates()

    # -- identity and equality -------------------------------------------------

    def _key(self):
        return (self.family, self.rank, self.generators)

    def __eq__(self, other):
        return isinstance(other, Group) and self._key() == other._key()

    def __hash__(self):
        return hash(self._key())

    def __repr__(self):
        return f"Group({self.describe()!r})"

    @property
    def is_abelian(self) -> bool:
        return self.family == "Z" or self.rank == 1

    # -- element arithmetic ----------------------------------------------------

    def check(self, a) -> Form:
        """Return the canonical form of ``a`` or raise :class:`DomainError`."""
        if isinstance(a, Element):
            if a.group != self:
                raise DomainError(f"element of {a.group.describe()} used in {self.describe()}")
            return a.form
        if not isinstance(a, tuple):
            raise DomainError(f"group elements are tuples, got {type(a).__name__}")
        if self.family == "Z":
            if len(a) != self.rank or not all(isinstance(x, int) for x in a):
                raise DomainError(f"{a!r} is not an element of Z^{self.rank}")
        else:
            for i, x in enumerate(a):
                if not isinstance(x, int) or x == 0 or abs(x) > self.rank:
                    raise DomainError(f"{a!r} is not a word over F_{self.rank}")
                if i and a[i - 1] == -x:
                    raise DomainError(f"{a!r} is not freely reduced")
        return a

    def _mul(self, a: Form, b: Form) -> Form:
        if self.family == "Z":
            return tuple([x + y for x, y in zip(a, b)])
        if not a:
            return b
        if not b:
            return a
        i, la, lb = 0, len(a), len(b)
        while i < la and i < lb and a[la - 1 - i] == -b[i]:
            i += 1
        return a[: la - i] + b[i:]

    def _inv(self, a: Form) -> Form:
        if self.family == "Z":
            return tuple([-x for x in a])
        return tuple([-x for x in reversed(a)])

    def mul(self, a, b) -> Form:
        return self._mul(self.check(a), self.check(b))

    def inv(self, a) -> Form:
        return self._inv(self.check(a))

    def product(self, *elements) -> Form:
        out = self.identity
        for e in elements:
            out = self._mul(out, self.check(e))
        return out

    def element(self, a) -> "Element":
        if isinstance(a, str):
            a = self.parse_element(a)
        return Element(self, self.check(a))

    # -- word metric -----------------------------------------------------------

    def word_length(self, a) -> int:
        a = self.check(a)
        if self.family == "Z":
            if self.preset == "vn":
                return sum(abs(x) for x in a)
            if self.preset == "moore":
                return max(abs(x) for x in a)
        elif self.preset == "free":
            return len(a)
        n = 0
        while True:
            table = self.ball(n)
            r = table.radius_of(a)
            if r is not None:
                return r
            n = 2 * n + 1

    def projected_size(self, n: int) -> int | None:
        """Closed-form ``|D_n|`` for the built-in generating sets, else ``None``."""
        if self.family == "Z":
            d = self.rank
            if self.preset == "vn":
                return sum(2 ** i * comb(d, i) * comb(n, i) for i in range(d + 1))
            if self.preset == "moore":
                return (2 * n + 1) ** d
            return None
        if self.preset == "free":
            k = self.rank
            return 1 + sum(2 * k * (2 * k - 1) ** (m - 1) for m in range(1, n + 1))
        return None

    def ball(self, n: int) -> BallTable:
        """Breadth-first enumeration of ``D_n``; steps are tried in ``self.steps`` order."""
        if n < 0:
            raise DomainError("radius must be nonnegative")
        table = self._table
        if table is not None and table.radius >= n:
            return BallTable(self, n, table._elements, table._radii, table.gamma, table._index)
        projected = self.projected_size(n)
        if projected is not None and projected > self.cap:
            raise CapacityError(f"|D_{n}| = {projected} exceeds cap {self.cap}")
        if table is None:
            elements, radii, index, gamma = [self.identity], [0], {self.identity: 0}, [1]
            frontier_lo = 0
        else:
            elements, radii, index, gamma = table._elements, table._radii, table._index, list(table.gamma)
            frontier_lo = gamma[-2] if len(gamma) > 1 else 0
        mul, steps = self._mul, self.steps
        for m in range(len(gamma), n + 1):
            hi = len(elements)
            for pos in range(frontier_lo, hi):
                x = elements[pos]
                for s in steps:
                    y = mul(x, s)
                    if y not in index:
                        index[y] = len(elements)
                        elements.append(y)
                        radii.append(m)
                if len(elements) > self.cap:
                    raise CapacityError(f"ball of radius {m} exceeds cap {self.cap}")
            frontier_lo = hi
            gamma.append(len(elements))
        self._table = BallTable(self, n, elements, radii, gamma, index)
        return self._table

    def growth(self, n: int) -> int:
        """``gamma_S(n) = |D_n|``.

        Built-in generating sets use the closed-form count when the ball is not
        already cached, so large radii stay cheap.
        """
        if n < 0:
            raise DomainError("radius must be nonnegative")
        if self._table is not None and self._table.radius >= n:
            return self._table.gamma[n]
        projected = self.projected_size(n)
        if projected is not None:
            return projected
        return len(self.ball(n))

    def generator_radius(self) -> int:
        return max(self.word_length(s) for s in self.generators)

    # -- set operations --------------------------------------------------------

    def closure_plus(self, X: Iterable, E: Iterable) -> frozenset:
        """``X^{+E} = {g : gE meets X} = X E^{-1}``."""
        E_inv = [self._inv(self.check(e)) for e in E]
        if not E_inv:
            raise DomainError("E must be nonempty")
        mul = self._mul
        return frozenset(mul(x, e) for x in X for e in E_inv)

    def boundary(self, X: Iterable, E: Iterable) -> frozenset:
        """``X^{+E} minus X``."""
        X = X if isinstance(X, (set, frozenset)) else frozenset(X)
        return self.closure_plus(X, E) - X

    def left_translate(self, g, X: Iterable) -> frozenset:
        g = self.check(g)
        return frozenset(self._mul(g, x) for x in X)

    def inverse_set(self, X: Iterable) -> frozenset:
        return frozenset(self._inv(x) for x in X)

    # -- text ------------------------------------------------------------------

    def format_element(self, a) -> str:
        a = self.check(a)
        if self.family == "Z":
            return ",".join(str(x) for x in a)
        if not a:
            return "1"
        letters = string.ascii_lowercase
        return "".join(letters[x - 1] if x > 0 else letters[-x - 1].upper() for x in a)

    def parse_element(self, text: str) -> Form:
        text = text.strip()
        if self.family == "Z":
            body = text.strip("()")
            try:
                form = tuple(int(t) for t in body.split(","))
            except ValueError:
                raise SpecSyntaxError(f"bad Z^{self.rank} element {text!r}") from None
            return self.check(form)
        if text in ("", "1", "e"):
            return ()
        word = ()
        for ch in text:
            if ch.islower():
                x = ord(ch) - ord("a") + 1
            elif ch.isupper():
                x = -(ord(ch) - ord("A") + 1)
            else:
                raise SpecSyntaxError(f"bad free-group word {text!r}")
            if abs(x) > self.rank:
                raise DomainError(f"letter {ch!r} outside F_{self.rank}")
            word = self._mul(word, (x,))
        return word

    def describe(self) -> str:
        head = f"{self.family}{self.rank}"
        if self.preset in ("vn", "moore"):
            return f"{head}:{self.preset}"
        if self.preset == "free":
            return head
        return head + ":" + ";".join(self.format_element(s) for s in self.generators)

    # -- internals -------------------------------------------------------------

    def _check_generates(self, max_radius: int = 64) -> None:
        if self.family == "Z":
            targets = []
            for i in range(self.rank):
                e = [0] * self.rank
                e[i] = 1
                targets.append(tuple(e))
        else:
            targets = [(i,) for i in range(1, self.rank + 1)]
            max_radius = min(max_radius, 8)
        missing = set(targets)
        seen = {self.identity}
        frontier = [self.identity]
        for _ in range(max_radius):
            nxt = []
            for x in frontier:
                for s in self.steps:
                    y = self._mul(x, s)
                    if y not in seen:
                        seen.add(y)
                        nxt.append(y)
            missing -= seen
            if not missing:
                return
            if len(seen) > min(self.cap, 2_000_000):
                break
            frontier = nxt
        raise DomainError(f"generating set {self.generators!r} does not generate within the search bound")


@dataclass(frozen=True)
class Element:
    """A group element bound to its group, supporting ``*`` and ``~``."""

    group: Group = field(compare=True)
    form: Form = field(compare=True)

    def __mul__(self, other: "Element") -> "Element":
        if not isinstance(other, Element):
            return NotImplemented
        if other.group != self.group:
            raise DomainError("cannot multiply elements of different groups")
        return Element(self.group, self.group._mul(self.form, other.form))

    def __invert__(self) -> "Element":
        return Element(self.group, self.group._inv(self.form))

    def inverse(self) -> "Element":
        return ~self

    def length(self) -> int:
        return self.group.word_length(self.form)

    def __repr__(self):
        return f"<{self.group.format_element(self.form)} in {self.group.describe()}>"


def free_abelian(d: int, generators="vn", cap: int | None = None) -> Group:
    """``Z^d`` with the von Neumann (``"vn"``), Moore (``"moore"``) or an explicit generating set."""
    if d < 1:
        raise DomainError("dimension must be positive")
    if isinstance(generators, str):
        if generators == "vn":
            gens = []
            for i in range(d):
                e = [0] * d
                e[i] = 1
                gens.append(tuple(e))
            return Group("Z", d, gens, "vn", cap)
        if generators == "moore":
            from itertools import product
            gens = [v for v in product((-1, 0, 1), repeat=d) if any(v)]
            return Group("Z", d, gens, "moore", cap)
        raise DomainError(f"unknown generating-set preset {generators!r}")
    return Group("Z", d, [tuple(g) for g in generators], "explicit", cap)


def free_group(k: int, generators=None, cap: int | None = None) -> Group:
    """The free group on ``k`` letters; by default generated by the letters themselves."""
    if k < 1:
        raise DomainError("rank must be positive")
    if generators is None:
        return Group("F", k, [(i,) for i in range(1, k + 1)], "free", cap)
    probe = Group("F", k, [(i,) for i in range(1, k + 1)], "free", cap)
    gens = [probe.parse_element(g) if isinstance(g, str) else probe.check(tuple(g)) for g in generators]
    return Group("F", k, gens, "explicit", cap)


def parse_group(text: str, cap: int | None = None) -> Group:
    """Parse ``Z2``, ``Z2:moore``, ``Z2:1,0;0,1;1,1``, ``F2`` or ``F2:a;ab``."""
    text = text.strip()
    head, _, tail = text.partition(":")
    if len(head) < 2 or head[0] not in "ZF" or not head[1:].isdigit():
        raise SpecSyntaxError(f"bad group descriptor {text!r}")
    family, rank = head[0], int(head[1:])
    tail = tail.strip()
    if family == "Z":
        if tail in ("", "vn"):
            return free_abelian(rank, "vn", cap)
        if tail == "moore":
            return free_abelian(rank, "moore", cap)
        probe = free_abelian(rank, "vn")
        return free_abelian(rank, [probe.parse_element(t) for t in tail.split(";")], cap)
    if tail in ("", "free"):
        return free_group(rank, None, cap)
    return free_group(rank, [t.strip() for t in tail.split(";")], cap)
