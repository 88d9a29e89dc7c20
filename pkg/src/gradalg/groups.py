"""Finite groups as Cayley tables, with subgroup, coset and tuple services.

Elements are dense indices 0..n-1; all products go through the table.
"""

from __future__ import annotations

import random
from math import gcd

from .errors import (ElementOutsideGroup, MismatchedParent, NoIdentity,
                     NotAssociative, NotLatinSquare, NotSubgroup)

FULL_ASSOC_CHECK_LIMIT = 64
_ASSOC_SAMPLES = 4096


class FiniteGroup:
    """A finite group given by its multiplication table."""

    def __init__(self, table, name: str = "G", cyclic_factors=None,
                 _validate: bool = True):
        self.table = tuple(tuple(row) for row in table)
        self.order = len(self.table)
        self.name = name
        self.cyclic_factors = tuple(cyclic_factors) if cyclic_factors else None
        if _validate:
            self._validate()
        self.identity = self._find_identity()
        self.inverses = self._find_inverses()
        self.abelian = all(self.table[a][b] == self.table[b][a]
                           for a in range(self.order)
                           for b in range(a + 1, self.order))

    # -- construction --------------------------------------------------------

    @classmethod
    def cyclic(cls, n: int) -> FiniteGroup:
        table = [[(a + b) % n for b in range(n)] for a in range(n)]
        return cls(table, name=f"Z{n}", cyclic_factors=(n,), _validate=False)

    @classmethod
    def product(cls, factors: list[FiniteGroup]) -> FiniteGroup:
        if not factors:
            raise ValueError("product needs at least one factor")
        sizes = [g.order for g in factors]
        n = 1
        for s in sizes:
            n *= s

        def decode(x):
            out = []
            for s in reversed(sizes):
                x, r = divmod(x, s)
                out.append(r)
            return list(reversed(out))

        def encode(parts):
            x = 0
            for s, p in zip(sizes, parts):
                x = x * s + p
            return x

        table = [[0] * n for _ in range(n)]
        for a in range(n):
            pa = decode(a)
            for b in range(n):
                pb = decode(b)
                table[a][b] = encode([g.table[x][y]
                                      for g, x, y in zip(factors, pa, pb)])
        name = "x".join(g.name for g in factors)
        cf = []
        for g in factors:
            cf.extend(g.cyclic_factors or (g.order,))
        return cls(table, name=name, cyclic_factors=cf, _validate=False)

    @classmethod
    def from_table(cls, table, name: str = "G") -> FiniteGroup:
        return cls(table, name=name)

    # -- validation --------------------------------------------------------

    def _validate(self):
        n = self.order
        idx = set(range(n))
        for i, row in enumerate(self.table):
            if len(row) != n or set(row) != idx:
                raise NotLatinSquare(f"row {i} is not a permutation of 0..{n - 1}")
        for j in range(n):
            if {row[j] for row in self.table} != idx:
                raise NotLatinSquare(f"column {j} is not a permutation of 0..{n - 1}")
        if n <= FULL_ASSOC_CHECK_LIMIT:
            triples = ((a, b, c) for a in range(n) for b in range(n)
                       for c in range(n))
        else:
            rng = random.Random(0)
            triples = ((rng.randrange(n), rng.randrange(n), rng.randrange(n))
                       for _ in range(_ASSOC_SAMPLES))
        t = self.table
        for a, b, c in triples:
            if t[t[a][b]][c] != t[a][t[b][c]]:
                raise NotAssociative(f"({a}*{b})*{c} != {a}*({b}*{c})")

    def _find_identity(self) -> int:
        for e in range(self.order):
            if all(self.table[e][x] == x and self.table[x][e] == x
                   for x in range(self.order)):
                return e
        raise NoIdentity("no two-sided identity element")

    def _find_inverses(self):
        inv = [None] * self.order
        e = self.identity
        for a in range(self.order):
            for b in range(self.order):
                if self.table[a][b] == e and self.table[b][a] == e:
                    inv[a] = b
                    break
            if inv[a] is None:
                raise NoIdentity(f"element {a} has no inverse")
        return tuple(inv)

    # -- queries --------------------------------------------------------

    def mul(self, a: int, b: int) -> int:
        return self.table[a][b]

    def inv(self, a: int) -> int:
        return self.inverses[a]

    def conjugate(self, g: int, h: int) -> int:
        """g * h * g^-1."""
        return self.table[self.table[g][h]][self.inverses[g]]

    def power(self, a: int, k: int) -> int:
        if k < 0:
            return self.power(self.inverses[a], -k)
        result = self.identity
        base = a
        while k:
            if k & 1:
                result = self.table[result][base]
            base = self.table[base][base]
            k >>= 1
        return result

    def element_order(self, a: int) -> int:
        k, x = 1, a
        while x != self.identity:
            x = self.table[x][a]
            k += 1
        return k

    def elements(self) -> range:
        return range(self.order)

    def check_element(self, a: int):
        if not (0 <= a < self.order):
            raise ElementOutsideGroup(f"{a} outside group of order {self.order}")

    # -- subgroups --------------------------------------------------------

    def subgroup(self, elements) -> Subgroup:
        return Subgroup(self, elements)

    def closure(self, generators) -> Subgroup:
        members = {self.identity}
        frontier = list(generators)
        for g in frontier:
            self.check_element(g)
        members.update(frontier)
        changed = True
        while changed:
            changed = False
            cur = list(members)
            for a in cur:
                for b in cur:
                    p = self.table[a][b]
                    if p not in members:
                        members.add(p)
                        changed = True
        return Subgroup(self, members, _validate=False)

    def full_subgroup(self) -> Subgroup:
        return Subgroup(self, range(self.order), _validate=False)

    def trivial_subgroup(self) -> Subgroup:
        return Subgroup(self, [self.identity], _validate=False)

    def all_subgroups(self, max_generators: int = 4) -> list[Subgroup]:
        """All subgroups, by closing generator sets (fine at table scale)."""
        from itertools import combinations
        found = {frozenset([self.identity])}
        frontier = [frozenset([self.identity])]
        while frontier:
            base = frontier.pop()
            for g in range(self.order):
                if g in base:
                    continue
                new = frozenset(self.closure(set(base) | {g}).members)
                if new not in found:
                    found.add(new)
                    frontier.append(new)
        subs = [Subgroup(self, m, _validate=False) for m in found]
        subs.sort(key=lambda s: (s.order, s.sorted_members))
        return subs

    def __repr__(self):
        return f"FiniteGroup({self.name}, order={self.order})"


class Subgroup:
    """A subgroup of a FiniteGroup, stored as its member set."""

    def __init__(self, parent: FiniteGroup, elements, _validate: bool = True):
        self.parent = parent
        self.members = frozenset(int(x) for x in elements)
        self.sorted_members = tuple(sorted(self.members))
        if _validate:
            self._validate()

    def _validate(self):
        g = self.parent
        for x in self.members:
            g.check_element(x)
        if g.identity not in self.members:
            raise NotSubgroup("missing identity")
        for a in self.members:
            if g.inverses[a] not in self.members:
                raise NotSubgroup(f"missing inverse of {a}")
            for b in self.members:
                if g.table[a][b] not in self.members:
                    raise NotSubgroup(f"not closed: {a}*{b}")

    @property
    def order(self) -> int:
        return len(self.members)

    def __contains__(self, x: int) -> bool:
        return x in self.members

    def __iter__(self):
        return iter(self.sorted_members)

    def __len__(self):
        return len(self.members)

    def __eq__(self, other):
        return (isinstance(other, Subgroup) and self.parent is other.parent
                and self.members == other.members)

    def __hash__(self):
        return hash((id(self.parent), self.members))

    def __repr__(self):
        return f"Subgroup({sorted(self.members)})"

    def is_abelian(self) -> bool:
        t = self.parent.table
        return all(t[a][b] == t[b][a] for a in self.members for b in self.members)

    def is_trivial(self) -> bool:
        return self.order == 1

    def same_parent(self, other: Subgroup):
        if self.parent is not other.parent:
            raise MismatchedParent("subgroups of different groups")

    # -- lattice operations ----------------------------------------------

    def intersection(self, other: Subgroup) -> Subgroup:
        self.same_parent(other)
        return Subgroup(self.parent, self.members & other.members,
                        _validate=False)

    def product_subgroup(self, other: Subgroup) -> Subgroup:
        """Subgroup generated by the set product (equals it when closed)."""
        self.same_parent(other)
        t = self.parent.table
        prod = {t[a][b] for a in self.members for b in other.members}
        return self.parent.closure(prod)

    def contains_subgroup(self, other: Subgroup) -> bool:
        self.same_parent(other)
        return other.members <= self.members

    # -- cosets and transversals -------------------------------------------

    def coset_rep(self, x: int) -> int:
        """Minimal index in the right coset H*x."""
        t = self.parent.table
        return min(t[h][x] for h in self.members)

    def right_cosets(self, within: Subgroup | None = None) -> list[tuple[int, ...]]:
        """Right cosets H*x inside `within` (default: the whole group).

        The identity's coset comes first, the rest ascend by representative.
        """
        ambient = within.sorted_members if within is not None else \
            range(self.parent.order)
        if within is not None and not within.contains_subgroup(self):
            raise NotSubgroup("cosets requested inside a non-superset")
        t = self.parent.table
        seen = set()
        cosets = []
        for x in ambient:
            if x in seen:
                continue
            coset = tuple(sorted(t[h][x] for h in self.members))
            seen.update(coset)
            cosets.append(coset)
        e = self.parent.identity
        cosets.sort(key=lambda c: (e not in c, c[0]))
        return cosets

    def transversal(self, within: Subgroup | None = None) -> GTuple:
        """Canonical transversal: minimal representative of each right coset."""
        reps = [c[0] for c in self.right_cosets(within)]
        return GTuple(self.parent, reps)


class GTuple:
    """An ordered tuple of group elements."""

    __slots__ = ("group", "entries")

    def __init__(self, group: FiniteGroup, entries):
        entries = tuple(int(x) for x in entries)
        if not entries:
            raise ValueError("tuple must be nonempty")
        for x in entries:
            group.check_element(x)
        object.__setattr__(self, "group", group)
        object.__setattr__(self, "entries", entries)

    def __setattr__(self, *args):
        raise AttributeError("GTuple is immutable")

    @classmethod
    def const(cls, group: FiniteGroup, length: int) -> GTuple:
        """The length-d tuple (e, ..., e)."""
        return cls(group, [group.identity] * length)

    def __len__(self):
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)

    def __getitem__(self, i):
        return self.entries[i]

    def __eq__(self, other):
        return (isinstance(other, GTuple) and self.group is other.group
                and self.entries == other.entries)

    def __hash__(self):
        return hash((id(self.group), self.entries))

    def __repr__(self):
        return f"GTuple{self.entries}"

    def same_parent(self, other):
        if self.group is not (other.group if isinstance(other, GTuple) else other.parent):
            raise MismatchedParent("tuples over different groups")

    def product(self, other: GTuple) -> GTuple:
        """Row-major pointwise product: entry (i,j) is self[i]*other[j]."""
        self.same_parent(other)
        t = self.group.table
        return GTuple(self.group,
                      [t[a][b] for a in self.entries for b in other.entries])

    def concat(self, other: GTuple) -> GTuple:
        self.same_parent(other)
        return GTuple(self.group, self.entries + other.entries)

    def shift(self, g: int) -> GTuple:
        """Left multiplication: (g*t_1, ..., g*t_n)."""
        self.group.check_element(g)
        t = self.group.table
        return GTuple(self.group, [t[g][x] for x in self.entries])

    def sub(self, indices) -> GTuple:
        return GTuple(self.group, [self.entries[i] for i in indices])

    def permute(self, sigma) -> GTuple:
        """Entries reordered as t[sigma(i)]."""
        return GTuple(self.group, [self.entries[sigma[i]]
                                   for i in range(len(self.entries))])


def build_group(spec: dict) -> FiniteGroup:
    """Build a group from its JSON specification."""
    kind = spec.get("kind")
    if kind == "cyclic":
        n = int(spec["n"])
        if n < 1:
            raise ValueError("cyclic group order must be positive")
        return FiniteGroup.cyclic(n)
    if kind == "product":
        return FiniteGroup.product([build_group(f) for f in spec["factors"]])
    if kind == "table":
        return FiniteGroup.from_table(spec["table"], name=spec.get("name", "G"))
    raise ValueError(f"unknown group kind: {kind!r}")


def group_to_json(group: FiniteGroup) -> dict:
    if group.cyclic_factors and len(group.cyclic_factors) == 1:
        return {"kind": "cyclic", "n": group.cyclic_factors[0]}
    if group.cyclic_factors:
        return {"kind": "product",
                "factors": [{"kind": "cyclic", "n": n}
                            for n in group.cyclic_factors]}
    return {"kind": "table", "table": [list(r) for r in group.table],
            "name": group.name}


def dihedral_table(n: int) -> list[list[int]]:
    """Cayley table of the dihedral group of order 2n; index = rot + n*flip."""
    def mul(a, b):
        ra, fa = a % n, a // n
        rb, fb = b % n, b // n
        rot = (ra + (rb if fa == 0 else -rb)) % n
        return rot + n * ((fa + fb) % 2)
    return [[mul(a, b) for b in range(2 * n)] for a in range(2 * n)]
