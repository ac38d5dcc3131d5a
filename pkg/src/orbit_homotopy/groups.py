"""Finite groups by multiplication table, subgroups, and orbit categories.

Elements are the indices 0..order-1 with 0 the identity.  Subgroups are
sorted element tuples, a family is a set of subgroups closed under
conjugation and under passing to subgroups, and the orbit category of a
family has one object per member H (thought of as the coset space G/H) with
hom sets given by canonical coset representatives.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import lru_cache

from .errors import InvalidInput


@dataclass(frozen=True)
class FiniteGroup:
    """A finite group presented by its full multiplication table.

    ``table[a][b]`` is the product a*b.  Index 0 must be the identity.
    ``names`` is display only and never affects equality of elements.
    """

    order: int
    table: tuple[tuple[int, ...], ...]
    names: tuple[str, ...] | None = None
    inverses: tuple[int, ...] = field(init=False)

    def __post_init__(self):
        n = self.order
        if n <= 0 or len(self.table) != n or any(len(r) != n for r in self.table):
            raise InvalidInput("multiplication table must be order x order")
        for row in self.table:
            for x in row:
                if not 0 <= x < n:
                    raise InvalidInput("table entry out of range")
        for a in range(n):
            if self.table[0][a] != a or self.table[a][0] != a:
                raise InvalidInput("element 0 must act as the identity")
        for a in range(n):
            if sorted(self.table[a]) != list(range(n)):
                raise InvalidInput("rows must be permutations")
            if sorted(self.table[b][a] for b in range(n)) != list(range(n)):
                raise InvalidInput("columns must be permutations")
        for a in range(n):
            for b in range(n):
                ab = self.table[a][b]
                for c in range(n):
                    if self.table[ab][c] != self.table[a][self.table[b][c]]:
                        raise InvalidInput(f"associativity fails at ({a},{b},{c})")
        inv = [None] * n
        for a in range(n):
            for b in range(n):
                if self.table[a][b] == 0:
                    inv[a] = b
                    break
        if any(i is None for i in inv):
            raise InvalidInput("missing inverse")
        object.__setattr__(self, "inverses", tuple(inv))
        if self.names is not None and len(self.names) != n:
            raise InvalidInput("names length mismatch")

    def mul(self, a: int, b: int) -> int:
        return self.table[a][b]

    def inv(self, a: int) -> int:
        return self.inverses[a]

    def conj(self, h: int, g: int) -> int:
        """g^-1 * h * g."""
        return self.mul(self.mul(self.inv(g), h), g)

    def element_order(self, a: int) -> int:
        x, n = a, 1
        while x != 0:
            x = self.mul(x, a)
            n += 1
        return n

    def name_of(self, a: int) -> str:
        return self.names[a] if self.names else str(a)

    def __eq__(self, other):
        return isinstance(other, FiniteGroup) and self.table == other.table

    def __hash__(self):
        return hash(self.table)

    def __repr__(self):
        return f"FiniteGroup(order={self.order})"

    # --- constructors -------------------------------------------------

    @staticmethod
    def from_table(table, names=None) -> "FiniteGroup":
        t = tuple(tuple(row) for row in table)
        return FiniteGroup(len(t), t, tuple(names) if names else None)

    @staticmethod
    def cyclic(n: int) -> "FiniteGroup":
        table = [[(a + b) % n for b in range(n)] for a in range(n)]
        return FiniteGroup.from_table(table, [f"r{k}" for k in range(n)])

    @staticmethod
    def trivial() -> "FiniteGroup":
        return FiniteGroup.cyclic(1)

    @staticmethod
    def from_permutations(degree: int, generators, names=None) -> "FiniteGroup":
        """Group generated by permutations of {0..degree-1}.

        Permutations are one-line tuples (image of each point).  Element 0 is
        the identity; remaining elements are ordered by discovery (breadth
        first over the given generators), which fixes the canonical element
        ordering of the group.
        """
        idperm = tuple(range(degree))
        gens = [tuple(g) for g in generators]
        for g in gens:
            if sorted(g) != list(range(degree)):
                raise InvalidInput(f"not a permutation: {g}")
        elems = [idperm]
        index = {idperm: 0}
        queue = [idperm]
        while queue:
            p = queue.pop(0)
            for g in gens:
                q = tuple(p[g[i]] for i in range(degree))
                if q not in index:
                    index[q] = len(elems)
                    elems.append(q)
                    queue.append(q)
        n = len(elems)
        table = [[0] * n for _ in range(n)]
        for a, pa in enumerate(elems):
            for b, pb in enumerate(elems):
                # right action convention: (a*b) moves points first by a, then by b
                q = tuple(pb[pa[i]] for i in range(degree))
                table[a][b] = index[q]
        if names is None:
            names = [_cycle_name(p) for p in elems]
        return FiniteGroup.from_table(table, names)

    @staticmethod
    def symmetric(n: int) -> "FiniteGroup":
        if n == 1:
            return FiniteGroup.trivial()
        swap = tuple([1, 0] + list(range(2, n)))
        cyc = tuple(list(range(1, n)) + [0])
        return FiniteGroup.from_permutations(n, [swap, cyc])

    @staticmethod
    def alternating(n: int) -> "FiniteGroup":
        if n <= 2:
            return FiniteGroup.trivial()
        three = tuple([1, 2, 0] + list(range(3, n)))
        if n == 3:
            gens = [three]
        elif n % 2:
            cyc = tuple(list(range(1, n)) + [0])
            gens = [three, cyc]
        else:
            cyc = tuple([0] + list(range(2, n)) + [1])
            gens = [three, cyc]
        return FiniteGroup.from_permutations(n, gens)

    @staticmethod
    def dihedral(n: int) -> "FiniteGroup":
        """Symmetries of the n-gon, order 2n (n >= 1)."""
        if n == 1:
            return FiniteGroup.cyclic(2)
        rot = tuple(list(range(1, n)) + [0])
        ref = tuple((n - i) % n for i in range(n))
        return FiniteGroup.from_permutations(n, [rot, ref])

    @staticmethod
    def direct_product(a: "FiniteGroup", b: "FiniteGroup") -> "FiniteGroup":
        n, m = a.order, b.order
        table = [[0] * (n * m) for _ in range(n * m)]
        for x1 in range(n):
            for y1 in range(m):
                for x2 in range(n):
                    for y2 in range(m):
                        table[x1 * m + y1][x2 * m + y2] = a.mul(x1, x2) * m + b.mul(y1, y2)
        names = None
        if a.names and b.names:
            names = [f"({a.names[x]},{b.names[y]})" for x in range(n) for y in range(m)]
        return FiniteGroup.from_table(table, names)


def _cycle_name(perm: tuple[int, ...]) -> str:
    seen = [False] * len(perm)
    parts = []
    for i in range(len(perm)):
        if seen[i] or perm[i] == i:
            seen[i] = True
            continue
        cyc = [i]
        seen[i] = True
        j = perm[i]
        while j != i:
            cyc.append(j)
            seen[j] = True
            j = perm[j]
        parts.append("(" + " ".join(str(x) for x in cyc) + ")")
    return "".join(parts) if parts else "e"


@dataclass(frozen=True, order=True)
class Subgroup:
    """Sorted tuple of element indices, always containing the identity."""

    elements: tuple[int, ...]

    def __post_init__(self):
        if not self.elements or self.elements[0] != 0:
            raise InvalidInput("a subgroup must contain the identity 0")
        if list(self.elements) != sorted(set(self.elements)):
            raise InvalidInput("subgroup elements must be sorted and distinct")

    @property
    def order(self) -> int:
        return len(self.elements)

    def __contains__(self, g: int) -> bool:
        return g in self.elements

    def label(self) -> str:
        return "G/" + ".".join(str(g) for g in self.elements)


def subgroup(group: FiniteGroup, elements) -> Subgroup:
    """Validated subgroup from an element collection."""
    elems = tuple(sorted(set(elements) | {0}))
    for a in elems:
        if not 0 <= a < group.order:
            raise InvalidInput(f"element {a} out of range")
        if group.inv(a) not in elems:
            raise InvalidInput(f"not closed under inverses at {a}")
        for b in elems:
            if group.mul(a, b) not in elems:
                raise InvalidInput(f"not closed under product at ({a},{b})")
    return Subgroup(elems)


def generated_subgroup(group: FiniteGroup, gens) -> Subgroup:
    elems = {0}
    frontier = [0]
    gens = list(gens)
    while frontier:
        x = frontier.pop()
        for g in gens:
            for y in (group.mul(x, g), group.mul(g, x)):
                if y not in elems:
                    elems.add(y)
                    frontier.append(y)
    return Subgroup(tuple(sorted(elems)))


def trivial_subgroup(group: FiniteGroup) -> Subgroup:
    return Subgroup((0,))


def full_subgroup(group: FiniteGroup) -> Subgroup:
    return Subgroup(tuple(range(group.order)))


@lru_cache(maxsize=None)
def enumerate_subgroups(group: FiniteGroup) -> tuple[Subgroup, ...]:
    """All subgroups, found by closing known subgroups under extra generators."""
    found = {trivial_subgroup(group)}
    frontier = [trivial_subgroup(group)]
    while frontier:
        h = frontier.pop()
        for g in range(1, group.order):
            if g in h:
                continue
            bigger = generated_subgroup(group, h.elements + (g,))
            if bigger not in found:
                found.add(bigger)
                frontier.append(bigger)
    return tuple(sorted(found, key=lambda s: (s.order, s.elements)))


def conjugate_subgroup(group: FiniteGroup, h: Subgroup, g: int) -> Subgroup:
    """The subgroup g^-1 H g."""
    return Subgroup(tuple(sorted(group.conj(x, g) for x in h.elements)))


@dataclass(frozen=True)
class SubgroupFamily:
    """Collection of subgroups closed under conjugation and subgroups."""

    group: FiniteGroup
    members: tuple[Subgroup, ...]

    def __post_init__(self):
        if list(self.members) != sorted(set(self.members), key=lambda s: (s.order, s.elements)):
            raise InvalidInput("family members must be canonically sorted")
        mset = set(self.members)
        for h in self.members:
            for g in range(self.group.order):
                if conjugate_subgroup(self.group, h, g) not in mset:
                    raise InvalidInput(f"family not closed under conjugation at {h.elements}")
        for h in self.members:
            for k in enumerate_subgroups_of(self.group, h):
                if k not in mset:
                    raise InvalidInput(f"family not closed under subgroups at {h.elements}")

    def __contains__(self, h: Subgroup) -> bool:
        return h in set(self.members)

    def __iter__(self):
        return iter(self.members)

    def __len__(self):
        return len(self.members)


def enumerate_subgroups_of(group: FiniteGroup, h: Subgroup) -> list[Subgroup]:
    """All subgroups of G contained in h (brute force within h)."""
    return [k for k in enumerate_subgroups(group) if set(k.elements) <= set(h.elements)]


def close_family(group: FiniteGroup, seed) -> SubgroupFamily:
    """Smallest family containing the seed subgroups.

    Closure alternates conjugation by every group element and passage to
    subgroups until stable.
    """
    members: set[Subgroup] = set()
    frontier = []
    for s in seed:
        h = s if isinstance(s, Subgroup) else subgroup(group, s)
        subgroup(group, h.elements)  # revalidate against this group
        if h not in members:
            members.add(h)
            frontier.append(h)
    if not frontier:
        raise InvalidInput("family seed must be nonempty")
    while frontier:
        h = frontier.pop()
        nxt = [conjugate_subgroup(group, h, g) for g in range(group.order)]
        nxt.extend(enumerate_subgroups_of(group, h))
        for k in nxt:
            if k not in members:
                members.add(k)
                frontier.append(k)
    return SubgroupFamily(group, tuple(sorted(members, key=lambda s: (s.order, s.elements))))


def all_subgroups_family(group: FiniteGroup) -> SubgroupFamily:
    return close_family(group, [full_subgroup(group)])


def left_cosets(group: FiniteGroup, h: Subgroup) -> list[tuple[int, ...]]:
    """Left cosets gH as sorted tuples, ordered by their minimal element."""
    seen = set()
    cosets = []
    for g in range(group.order):
        if g in seen:
            continue
        coset = tuple(sorted(group.mul(g, x) for x in h.elements))
        seen.update(coset)
        cosets.append(coset)
    return sorted(cosets, key=lambda c: c[0])


def coset_rep(group: FiniteGroup, h: Subgroup, g: int) -> int:
    """Canonical (minimal) representative of the left coset gH."""
    return min(group.mul(g, x) for x in h.elements)


@dataclass(frozen=True)
class OrbitMorphism:
    """Equivariant map G/H -> G/K sending H to rep*K; rep is the minimal coset element."""

    source: Subgroup
    target: Subgroup
    rep: int

    def label(self) -> str:
        return f"{self.source.label()}->{self.target.label()}:{self.rep}"


class OrbitCategory:
    """Category of coset spaces G/H for H in a closed family.

    A morphism G/H -> G/K exists for each coset gK whose representative
    satisfies g^-1 H g <= K; composition multiplies representatives
    (diagrammatic order) and renormalizes.  Composition closure and
    associativity are checked exhaustively at construction.
    """

    def __eq__(self, other):
        return (
            isinstance(other, OrbitCategory)
            and self.group == other.group
            and self.family == other.family
        )

    def __hash__(self):
        return hash((self.group, self.family))

    def __init__(self, group: FiniteGroup, family: SubgroupFamily):
        if family.group != group:
            raise InvalidInput("family belongs to a different group")
        self.group = group
        self.family = family
        self.objects: tuple[Subgroup, ...] = family.members
        self._index = {h: i for i, h in enumerate(self.objects)}
        homs: dict[tuple[int, int], tuple[OrbitMorphism, ...]] = {}
        for i, h in enumerate(self.objects):
            for j, k in enumerate(self.objects):
                reps = []
                for coset in left_cosets(group, k):
                    g = coset[0]
                    if all(group.conj(x, g) in k for x in h.elements):
                        reps.append(OrbitMorphism(h, k, g))
                homs[(i, j)] = tuple(reps)
        self.homs = homs
        self._comp_cache: dict = {}
        self._validate()

    def object_index(self, h: Subgroup) -> int:
        return self._index[h]

    def hom(self, h: Subgroup, k: Subgroup) -> tuple[OrbitMorphism, ...]:
        return self.homs[(self._index[h], self._index[k])]

    def identity(self, h: Subgroup) -> OrbitMorphism:
        return OrbitMorphism(h, h, 0)

    def compose(self, f: OrbitMorphism, g: OrbitMorphism) -> OrbitMorphism:
        """Composite of f: G/H -> G/K then g: G/K -> G/L."""
        if f.target != g.source:
            raise InvalidInput("morphisms are not composable")
        key = (f.source, f.rep, g.source, g.target, g.rep)
        cached = self._comp_cache.get(key)
        if cached is not None:
            return cached
        rep = coset_rep(self.group, g.target, self.group.mul(f.rep, g.rep))
        out = OrbitMorphism(f.source, g.target, rep)
        if out not in self.homs[(self._index[f.source], self._index[g.target])]:
            raise AssertionError("composition left the hom set")
        self._comp_cache[key] = out
        return out

    def all_morphisms(self):
        for reps in self.homs.values():
            yield from reps

    def _validate(self):
        for (i, j), reps in self.homs.items():
            h, k = self.objects[i], self.objects[j]
            for f in reps:
                if f.rep != coset_rep(self.group, k, f.rep):
                    raise AssertionError("non-canonical representative")
                if any(self.group.conj(x, f.rep) not in k for x in h.elements):
                    raise AssertionError("morphism condition violated")
            if i == j and self.identity(h) not in reps:
                raise AssertionError("missing identity morphism")
        for f in self.all_morphisms():
            if self.compose(self.identity(f.source), f) != f:
                raise AssertionError("left identity law fails")
            if self.compose(f, self.identity(f.target)) != f:
                raise AssertionError("right identity law fails")
        n = len(self.objects)
        for i in range(n):
            for j in range(n):
                for k in range(n):
                    for l in range(n):
                        for f in self.homs[(i, j)]:
                            for g in self.homs[(j, k)]:
                                fg = self.compose(f, g)
                                for hmor in self.homs[(k, l)]:
                                    if self.compose(fg, hmor) != self.compose(f, self.compose(g, hmor)):
                                        raise AssertionError("associativity fails")


@lru_cache(maxsize=None)
def orbit_category(group: FiniteGroup, family: SubgroupFamily) -> OrbitCategory:
    return OrbitCategory(group, family)
