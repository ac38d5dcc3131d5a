"""Catalog of small finite groups used as homomorphism-search targets.

Every isomorphism type of order at most 24 is generated from standard
constructions (cyclic products, dihedral and dicyclic families, symmetric
and alternating groups, semidirect products over all actions, and central
quotients of direct products), deduplicated up to isomorphism.  The tests
pin the per-order counts to the known values, so a missing construction
cannot pass silently.  A5 and S5 are appended for perfect-group obstructions.
"""

from __future__ import annotations

import itertools
from functools import lru_cache

from .errors import InvalidInput
from .groups import FiniteGroup, Subgroup

GROUP_COUNTS = {
    1: 1, 2: 1, 3: 1, 4: 2, 5: 1, 6: 2, 7: 1, 8: 5, 9: 2, 10: 2, 11: 1, 12: 5,
    13: 1, 14: 2, 15: 1, 16: 14, 17: 1, 18: 5, 19: 1, 20: 5, 21: 2, 22: 2,
    23: 1, 24: 15,
}


def dicyclic(m: int) -> FiniteGroup:
    """Dicyclic group of order 4m: a^(2m)=1, b^2=a^m, b a b^-1 = a^-1."""
    if m < 1:
        raise InvalidInput("dicyclic needs m >= 1")

    def enc(i, j):
        return (i % (2 * m)) * 2 + j

    n = 4 * m
    table = [[0] * n for _ in range(n)]
    for i1 in range(2 * m):
        for j1 in range(2):
            for i2 in range(2 * m):
                for j2 in range(2):
                    if j1 == 0:
                        i, j = i1 + i2, j2
                    elif j2 == 0:
                        i, j = i1 - i2, 1
                    else:
                        i, j = i1 - i2 + m, 0
                    table[enc(i1, j1)][enc(i2, j2)] = enc(i, j)
    return FiniteGroup.from_table(table)


def abelian_group(parts: tuple[int, ...]) -> FiniteGroup:
    g = FiniteGroup.cyclic(parts[0])
    for p in parts[1:]:
        g = FiniteGroup.direct_product(g, FiniteGroup.cyclic(p))
    return g


def _partitions_into_factors(n: int) -> list[tuple[int, ...]]:
    """Multisets of integers >= 2 with product n, nondecreasing (n >= 2)."""
    out = []

    def rec(rem, minf, acc):
        if rem == 1:
            out.append(tuple(acc))
            return
        for f in range(minf, rem + 1):
            if rem % f == 0:
                rec(rem // f, f, acc + [f])

    rec(n, 2, [])
    return out


@lru_cache(maxsize=None)
def generating_set(group: FiniteGroup) -> tuple[int, ...]:
    """Small generating set found greedily."""
    gens: list[int] = []
    closure = {0}
    for g in range(group.order):
        if g in closure:
            continue
        gens.append(g)
        frontier = [g]
        closure.add(g)
        while frontier:
            x = frontier.pop()
            for h in list(closure):
                for y in (group.mul(x, h), group.mul(h, x)):
                    if y not in closure:
                        closure.add(y)
                        frontier.append(y)
        if len(closure) == group.order:
            break
    return tuple(gens)


@lru_cache(maxsize=None)
def _expression_tree(group: FiniteGroup, gens: tuple[int, ...]):
    """Breadth-first factorization: element -> (earlier element, generator index)."""
    expr: list = [None] * group.order
    order = [0]
    seen = {0}
    frontier = [0]
    while frontier:
        x = frontier.pop(0)
        for gi, g in enumerate(gens):
            y = group.mul(x, g)
            if y not in seen:
                seen.add(y)
                expr[y] = (x, gi)
                order.append(y)
                frontier.append(y)
    if len(seen) != group.order:
        raise InvalidInput("set does not generate")
    return expr, order


def hom_from_generator_images(
    src: FiniteGroup, dst: FiniteGroup, gens: tuple[int, ...], images
) -> list[int] | None:
    """The homomorphism determined by generator images, or None if inconsistent."""
    expr, order = _expression_tree(src, gens)
    f = [0] * src.order
    for x in order:
        if expr[x] is not None:
            prev, gi = expr[x]
            f[x] = dst.mul(f[prev], images[gi])
    for a in range(src.order):
        fa = f[a]
        rowa = src.table[a]
        for b in range(src.order):
            if f[rowa[b]] != dst.mul(fa, f[b]):
                return None
    return f


@lru_cache(maxsize=None)
def _invariants(group: FiniteGroup):
    orders = sorted(group.element_order(a) for a in range(group.order))
    abelian = all(
        group.mul(a, b) == group.mul(b, a)
        for a in range(group.order)
        for b in range(a)
    )
    center = sum(
        1
        for a in range(group.order)
        if all(group.mul(a, b) == group.mul(b, a) for b in range(group.order))
    )
    classes = sorted(_conjugacy_class_sizes(group))
    return (group.order, tuple(orders), abelian, center, tuple(classes))


def _conjugacy_class_sizes(group: FiniteGroup) -> list[int]:
    seen = set()
    sizes = []
    for a in range(group.order):
        if a in seen:
            continue
        cls = {group.conj(a, g) for g in range(group.order)}
        seen |= cls
        sizes.append(len(cls))
    return sizes


def _is_bijection(f) -> bool:
    return f is not None and len(set(f)) == len(f)


def are_isomorphic(a: FiniteGroup, b: FiniteGroup) -> bool:
    if a.order != b.order:
        return False
    if _invariants(a) != _invariants(b):
        return False
    gens = generating_set(a)
    gen_orders = [a.element_order(g) for g in gens]
    candidates = [
        [h for h in range(b.order) if b.element_order(h) == go] for go in gen_orders
    ]

    def try_assign(i: int, chosen: list[int]) -> bool:
        if i == len(gens):
            return _is_bijection(hom_from_generator_images(a, b, gens, chosen))
        for h in candidates[i]:
            if try_assign(i + 1, chosen + [h]):
                return True
        return False

    return try_assign(0, [])


def semidirect_product(a: FiniteGroup, b: FiniteGroup, action) -> FiniteGroup:
    """A x| B where action[y] is the automorphism of A applied by y in B.

    Elements are pairs (x, y) encoded x * |B| + y with product
    (x1, y1)(x2, y2) = (x1 * action[y1](x2), y1 y2).
    """
    n, m = a.order, b.order
    table = [[0] * (n * m) for _ in range(n * m)]
    for x1 in range(n):
        for y1 in range(m):
            act = action[y1]
            row = table[x1 * m + y1]
            for x2 in range(n):
                ax = a.mul(x1, act[x2])
                for y2 in range(m):
                    row[x2 * m + y2] = ax * m + b.mul(y1, y2)
    return FiniteGroup.from_table(table)


@lru_cache(maxsize=None)
def automorphisms(group: FiniteGroup) -> tuple[tuple[int, ...], ...]:
    """All automorphisms as element permutations."""
    gens = generating_set(group)
    gen_orders = [group.element_order(g) for g in gens]
    candidates = [
        [h for h in range(group.order) if group.element_order(h) == go]
        for go in gen_orders
    ]
    found = []
    for images in itertools.product(*candidates):
        f = hom_from_generator_images(group, group, gens, images)
        if _is_bijection(f):
            found.append(tuple(f))
    return tuple(found)


@lru_cache(maxsize=None)
def _automorphism_group(group: FiniteGroup):
    """(Aut(A) as a FiniteGroup, its elements as permutations); identity first."""
    auts = automorphisms(group)
    ident = tuple(range(group.order))
    perms = [ident] + [p for p in auts if p != ident]
    index = {p: i for i, p in enumerate(perms)}
    # p*q is the composite "apply q, then p", so homs B -> Aut(A) feed the
    # left semidirect formula (a1,b1)(a2,b2) = (a1 * phi(b1)(a2), b1 b2)
    table = [
        [index[tuple(p[q[x]] for x in range(group.order))] for q in perms]
        for p in perms
    ]
    return FiniteGroup.from_table(table), tuple(perms)


def _actions(a: FiniteGroup, b: FiniteGroup):
    """All homomorphisms B -> Aut(A), as lists of element permutations of A."""
    aut_group, perms = _automorphism_group(a)
    gens = generating_set(b)
    gen_orders = [b.element_order(g) for g in gens]
    candidates = [
        [h for h in range(aut_group.order) if go % aut_group.element_order(h) == 0]
        for go in gen_orders
    ]
    actions = []
    for images in itertools.product(*candidates):
        f = hom_from_generator_images(b, aut_group, gens, images)
        if f is None:
            continue
        actions.append([perms[f[y]] for y in range(b.order)])
    return actions


def quotient_group(group: FiniteGroup, normal: Subgroup) -> FiniteGroup:
    """Quotient by a normal subgroup, cosets ordered by least element."""
    nset = set(normal.elements)
    for h in nset:
        for g in range(group.order):
            if group.conj(h, g) not in nset:
                raise InvalidInput("subgroup is not normal")
    coset_of: dict[int, int] = {}
    reps = []
    for g in range(group.order):
        if g in coset_of:
            continue
        coset = sorted(group.mul(g, x) for x in nset)
        for y in coset:
            coset_of[y] = coset[0]
        reps.append(coset[0])
    reps.sort()
    index = {r: i for i, r in enumerate(reps)}
    table = [[index[coset_of[group.mul(r1, r2)]] for r2 in reps] for r1 in reps]
    return FiniteGroup.from_table(table)


def _central_order2_elements(group: FiniteGroup) -> list[int]:
    return [
        a
        for a in range(1, group.order)
        if group.element_order(a) == 2
        and all(group.mul(a, b) == group.mul(b, a) for b in range(group.order))
    ]


@lru_cache(maxsize=1)
def small_groups() -> tuple[tuple[str, FiniteGroup], ...]:
    """All groups of order <= 24 up to isomorphism, with structural names."""
    by_order: dict[int, list[tuple[str, FiniteGroup]]] = {
        1: [("C1", FiniteGroup.trivial())]
    }

    def add(pool: list, name: str, group: FiniteGroup):
        for _, existing in pool:
            if are_isomorphic(existing, group):
                return
        pool.append((name, group))

    for n in range(2, 25):
        pool: list[tuple[str, FiniteGroup]] = []
        for parts in _partitions_into_factors(n):
            label = "x".join(f"C{p}" for p in sorted(parts, reverse=True))
            add(pool, label, abelian_group(parts))
        if n % 2 == 0 and n >= 6:
            add(pool, f"D{n // 2}", FiniteGroup.dihedral(n // 2))
        if n % 4 == 0 and n >= 8:
            add(pool, f"Dic{n // 4}", dicyclic(n // 4))
        if n == 6:
            add(pool, "S3", FiniteGroup.symmetric(3))
        if n == 12:
            add(pool, "A4", FiniteGroup.alternating(4))
        if n == 24:
            add(pool, "S4", FiniteGroup.symmetric(4))
        for na in range(2, n // 2 + 1):
            if n % na:
                continue
            nb = n // na
            for aname, a in by_order.get(na, []):
                for bname, b in by_order.get(nb, []):
                    for action in _actions(a, b):
                        add(pool, f"{aname}:{bname}", semidirect_product(a, b, action))
        # central quotients of direct products (catches central products)
        for na in range(2, 25):
            if (2 * n) % na:
                continue
            nb2 = 2 * n // na
            if nb2 < 2 or nb2 > 24:
                continue
            for aname, a in by_order.get(na, []):
                for bname, b in by_order.get(nb2, []):
                    prod = FiniteGroup.direct_product(a, b)
                    for z in _central_order2_elements(prod):
                        x, y = divmod(z, b.order)
                        if x == 0 or y == 0:
                            continue  # quotient collapses a single factor
                        q = quotient_group(prod, Subgroup((0, z)))
                        add(pool, f"{aname}o{bname}", q)
        by_order[n] = pool

    out: list[tuple[str, FiniteGroup]] = []
    for n in range(1, 25):
        entries = sorted(by_order[n], key=lambda kv: kv[0])
        if len(entries) != GROUP_COUNTS[n]:
            raise AssertionError(
                f"group catalog incomplete at order {n}: "
                f"{len(entries)} != {GROUP_COUNTS[n]}: {[e[0] for e in entries]}"
            )
        seen: dict[str, int] = {}
        for name, g in entries:
            seen[name] = seen.get(name, 0) + 1
            out.append((name if seen[name] == 1 else f"{name}#{seen[name]}", g))
    return tuple(out)


@lru_cache(maxsize=1)
def default_targets() -> tuple[tuple[str, FiniteGroup], ...]:
    """Homomorphism-search targets: all groups of order <= 24, then A5 and S5."""
    return small_groups() + (
        ("A5", FiniteGroup.alternating(5)),
        ("S5", FiniteGroup.symmetric(5)),
    )
