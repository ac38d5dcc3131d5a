"""Truncated, levelwise-finite simplicial sets.

A simplicial set is stored up to a dimension bound N: for each level
0 <= k <= N a finite set of dense integer ids, face maps d_0..d_k down a
level and degeneracy maps s_0..s_k up a level (for k < N).  Degenerate
simplices are stored explicitly, which keeps products and quotients plain
levelwise operations.  All constructors validate the simplicial identities.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .errors import InvalidInput


@dataclass(frozen=True)
class TruncatedSimplicialSet:
    """Simplicial set truncated at dimension ``dim``.

    ``faces[k][i][x]`` is d_i of simplex x at level k (for 1 <= k <= dim),
    ``degens[k][i][x]`` is s_i of x at level k (for 0 <= k < dim).
    ``faces[0]`` and ``degens[dim]`` are empty placeholders.
    """

    dim: int
    counts: tuple[int, ...]
    faces: tuple[tuple[tuple[int, ...], ...], ...]
    degens: tuple[tuple[tuple[int, ...], ...], ...]

    def __post_init__(self):
        n = self.dim
        if n < 0:
            raise InvalidInput("dimension bound must be nonnegative")
        if len(self.counts) != n + 1 or len(self.faces) != n + 1 or len(self.degens) != n + 1:
            raise InvalidInput("levels, faces and degeneracies must have length dim+1")
        for k in range(n + 1):
            expect = k + 1 if k >= 1 else 0
            if len(self.faces[k]) != expect:
                raise InvalidInput(f"level {k} must carry {expect} face maps")
            expect_s = k + 1 if k < n else 0
            if len(self.degens[k]) != expect_s:
                raise InvalidInput(f"level {k} must carry {expect_s} degeneracy maps")
            for m in self.faces[k]:
                if len(m) != self.counts[k]:
                    raise InvalidInput(f"face map length mismatch at level {k}")
                if any(not 0 <= y < self.counts[k - 1] for y in m):
                    raise InvalidInput(f"face map out of range at level {k}")
            for m in self.degens[k]:
                if len(m) != self.counts[k]:
                    raise InvalidInput(f"degeneracy map length mismatch at level {k}")
                if any(not 0 <= y < self.counts[k + 1] for y in m):
                    raise InvalidInput(f"degeneracy map out of range at level {k}")
        self._check_identities()

    def _check_identities(self):
        n = self.dim
        for k in range(2, n + 1):
            f = self.faces[k]
            fprev = self.faces[k - 1]
            for j in range(k + 1):
                for i in range(j):
                    for x in range(self.counts[k]):
                        if fprev[i][f[j][x]] != fprev[j - 1][f[i][x]]:
                            raise InvalidInput(f"d_{i} d_{j} identity fails at level {k}")
        for k in range(n - 1):
            s = self.degens[k]
            snext = self.degens[k + 1]
            for j in range(k + 1):
                for i in range(j + 1):
                    for x in range(self.counts[k]):
                        if snext[i][s[j][x]] != snext[j + 1][s[i][x]]:
                            raise InvalidInput(f"s_{i} s_{j} identity fails at level {k}")
        for k in range(n):
            s = self.degens[k]
            f = self.faces[k + 1]
            for j in range(k + 1):
                for i in range(k + 2):
                    for x in range(self.counts[k]):
                        y = f[i][s[j][x]]
                        if i == j or i == j + 1:
                            if y != x:
                                raise InvalidInput(f"d_{i} s_{j} != id at level {k}")
                        elif i < j:
                            if y != self.degens[k - 1][j - 1][self.faces[k][i][x]]:
                                raise InvalidInput(f"d_{i} s_{j} identity fails at level {k}")
                        else:
                            if y != self.degens[k - 1][j][self.faces[k][i - 1][x]]:
                                raise InvalidInput(f"d_{i} s_{j} identity fails at level {k}")

    def level_size(self, k: int) -> int:
        return self.counts[k]

    def face(self, k: int, i: int, x: int) -> int:
        return self.faces[k][i][x]

    def degeneracy(self, k: int, i: int, x: int) -> int:
        return self.degens[k][i][x]

    def is_empty(self) -> bool:
        return all(c == 0 for c in self.counts)

    def __repr__(self):
        return f"TruncatedSimplicialSet(dim={self.dim}, counts={self.counts})"


def nondegenerate(space: TruncatedSimplicialSet, k: int) -> tuple[int, ...]:
    """Ids at level k that are not in the image of any degeneracy."""
    if not 0 <= k <= space.dim:
        raise InvalidInput(f"level {k} outside truncation")
    if k == 0:
        return tuple(range(space.counts[0]))
    hit = set()
    for m in space.degens[k - 1]:
        hit.update(m)
    return tuple(x for x in range(space.counts[k]) if x not in hit)


def euler_characteristic(space: TruncatedSimplicialSet) -> int:
    return sum((-1) ** k * len(nondegenerate(space, k)) for k in range(space.dim + 1))


@dataclass(frozen=True)
class SimplicialMap:
    """Levelwise function commuting with faces and degeneracies."""

    source: TruncatedSimplicialSet
    target: TruncatedSimplicialSet
    levels: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if self.source.dim != self.target.dim:
            raise InvalidInput("source and target must share the dimension bound")
        n = self.source.dim
        if len(self.levels) != n + 1:
            raise InvalidInput("map must assign every level")
        for k in range(n + 1):
            if len(self.levels[k]) != self.source.counts[k]:
                raise InvalidInput(f"map length mismatch at level {k}")
            if any(not 0 <= y < self.target.counts[k] for y in self.levels[k]):
                raise InvalidInput(f"map out of range at level {k}")
        for k in range(1, n + 1):
            for i in range(k + 1):
                fs, ft = self.source.faces[k][i], self.target.faces[k][i]
                for x in range(self.source.counts[k]):
                    if self.levels[k - 1][fs[x]] != ft[self.levels[k][x]]:
                        raise InvalidInput(f"map does not commute with d_{i} at level {k}")
        for k in range(n):
            for i in range(k + 1):
                ss, st = self.source.degens[k][i], self.target.degens[k][i]
                for x in range(self.source.counts[k]):
                    if self.levels[k + 1][ss[x]] != st[self.levels[k][x]]:
                        raise InvalidInput(f"map does not commute with s_{i} at level {k}")

    def apply(self, k: int, x: int) -> int:
        return self.levels[k][x]

    def is_injective(self) -> bool:
        return all(len(set(m)) == len(m) for m in self.levels)

    def first_collision(self) -> tuple[int, int, int] | None:
        """(level, x, y) with x < y mapping to the same simplex, or None."""
        for k, m in enumerate(self.levels):
            seen: dict[int, int] = {}
            for x, v in enumerate(m):
                if v in seen:
                    return (k, seen[v], x)
                seen[v] = x
        return None

    def is_surjective(self) -> bool:
        return all(len(set(m)) == c for m, c in zip(self.levels, self.target.counts))

    def is_isomorphism(self) -> bool:
        return (
            self.source.counts == self.target.counts
            and self.is_injective()
            and self.is_surjective()
        )


def identity_map(space: TruncatedSimplicialSet) -> SimplicialMap:
    return SimplicialMap(space, space, tuple(tuple(range(c)) for c in space.counts))


def compose_maps(first: SimplicialMap, second: SimplicialMap) -> SimplicialMap:
    """Diagrammatic composite: apply ``first`` then ``second``."""
    if first.target != second.source:
        raise InvalidInput("maps are not composable")
    levels = tuple(
        tuple(second.levels[k][x] for x in first.levels[k])
        for k in range(first.source.dim + 1)
    )
    return SimplicialMap(first.source, second.target, levels)


def inverse_iso(f: SimplicialMap) -> SimplicialMap:
    if not f.is_isomorphism():
        raise InvalidInput("map is not an isomorphism")
    levels = []
    for k, m in enumerate(f.levels):
        inv = [0] * f.target.counts[k]
        for x, v in enumerate(m):
            inv[v] = x
        levels.append(tuple(inv))
    return SimplicialMap(f.target, f.source, tuple(levels))


# --- simplices, boundaries, horns ---------------------------------------


def _tuple_levels(n: int, dim: int, keep) -> list[list[tuple[int, ...]]]:
    levels = []
    for k in range(dim + 1):
        tuples = [
            t
            for t in itertools.combinations_with_replacement(range(n + 1), k + 1)
            if keep(frozenset(t))
        ]
        levels.append(tuples)
    return levels


def _from_tuples(levels: list[list[tuple[int, ...]]], dim: int) -> TruncatedSimplicialSet:
    index = [{t: i for i, t in enumerate(lv)} for lv in levels]
    counts = tuple(len(lv) for lv in levels)
    faces = [()]
    for k in range(1, dim + 1):
        maps = []
        for i in range(k + 1):
            maps.append(tuple(index[k - 1][t[:i] + t[i + 1 :]] for t in levels[k]))
        faces.append(tuple(maps))
    degens = []
    for k in range(dim):
        maps = []
        for i in range(k + 1):
            maps.append(tuple(index[k + 1][t[: i + 1] + t[i:]] for t in levels[k]))
        degens.append(tuple(maps))
    degens.append(())
    return TruncatedSimplicialSet(dim, counts, tuple(faces), tuple(degens))


def standard_simplex(n: int, dim: int) -> TruncatedSimplicialSet:
    """The n-simplex truncated at ``dim``; level k holds the nondecreasing
    (k+1)-tuples over {0..n}."""
    if n < 0 or dim < 0:
        raise InvalidInput("n and dim must be nonnegative")
    return _from_tuples(_tuple_levels(n, dim, lambda s: True), dim)


def _inclusion_from_tuples(sub_levels, amb_levels, sub, amb) -> SimplicialMap:
    amb_index = [{t: i for i, t in enumerate(lv)} for lv in amb_levels]
    levels = tuple(
        tuple(amb_index[k][t] for t in sub_levels[k]) for k in range(sub.dim + 1)
    )
    return SimplicialMap(sub, amb, levels)


def boundary_subcomplex(n: int, dim: int) -> tuple[TruncatedSimplicialSet, SimplicialMap]:
    """The boundary of the n-simplex, with its inclusion into the simplex."""
    if n < 1:
        raise InvalidInput("boundary needs n >= 1")
    full = set(range(n + 1))
    amb_levels = _tuple_levels(n, dim, lambda s: True)
    sub_levels = _tuple_levels(n, dim, lambda s: s != full)
    sub = _from_tuples(sub_levels, dim)
    amb = _from_tuples(amb_levels, dim)
    return sub, _inclusion_from_tuples(sub_levels, amb_levels, sub, amb)


def horn_subcomplex(n: int, i: int, dim: int) -> tuple[TruncatedSimplicialSet, SimplicialMap]:
    """The i-th horn of the n-simplex (all faces except the i-th), with inclusion."""
    if not 0 <= i <= n or n < 1:
        raise InvalidInput("horn needs 0 <= i <= n, n >= 1")
    others = set(range(n + 1)) - {i}
    amb_levels = _tuple_levels(n, dim, lambda s: True)
    sub_levels = _tuple_levels(n, dim, lambda s: not others <= s)
    sub = _from_tuples(sub_levels, dim)
    amb = _from_tuples(amb_levels, dim)
    return sub, _inclusion_from_tuples(sub_levels, amb_levels, sub, amb)


def from_simplicial_complex(num_vertices: int, simplices, dim: int) -> TruncatedSimplicialSet:
    """Simplicial set generated by a classical simplicial complex.

    ``simplices`` lists faces as strictly increasing vertex tuples; their
    downward closure is taken automatically.
    """
    allowed: set[frozenset[int]] = set()
    for s in simplices:
        t = tuple(s)
        if list(t) != sorted(set(t)):
            raise InvalidInput(f"complex simplex must be strictly increasing: {t}")
        for r in range(1, len(t) + 1):
            for sub in itertools.combinations(t, r):
                allowed.add(frozenset(sub))
    return _from_tuples(
        _tuple_levels(num_vertices - 1, dim, lambda s: s in allowed), dim
    )


# --- products, coproducts, truncation ------------------------------------


@dataclass(frozen=True)
class ProductSSet:
    space: TruncatedSimplicialSet
    left: SimplicialMap
    right: SimplicialMap

    def pair(self, k: int, a: int, b: int) -> int:
        return a * self.right.target.counts[k] + b

    def unpair(self, k: int, p: int) -> tuple[int, int]:
        c = self.right.target.counts[k]
        return divmod(p, c)


def truncate(space: TruncatedSimplicialSet, dim: int) -> TruncatedSimplicialSet:
    if dim > space.dim:
        raise InvalidInput("cannot extend a truncation")
    degens = tuple(space.degens[: dim]) + ((),)
    return TruncatedSimplicialSet(
        dim, space.counts[: dim + 1], space.faces[: dim + 1], degens
    )


def product(a: TruncatedSimplicialSet, b: TruncatedSimplicialSet) -> ProductSSet:
    """Levelwise cartesian product with componentwise structure maps.

    Pair (x, y) at level k has id x * b.counts[k] + y.  Inputs of unequal
    dimension bound are truncated to the smaller one.
    """
    n = min(a.dim, b.dim)
    a = truncate(a, n) if a.dim != n else a
    b = truncate(b, n) if b.dim != n else b
    counts = tuple(a.counts[k] * b.counts[k] for k in range(n + 1))
    faces = [()]
    for k in range(1, n + 1):
        maps = []
        for i in range(k + 1):
            fa, fb = a.faces[k][i], b.faces[k][i]
            ck = b.counts[k]
            ckm = b.counts[k - 1]
            maps.append(
                tuple(
                    fa[p // ck] * ckm + fb[p % ck] for p in range(counts[k])
                )
            )
        faces.append(tuple(maps))
    degens = []
    for k in range(n):
        maps = []
        for i in range(k + 1):
            sa, sb = a.degens[k][i], b.degens[k][i]
            ck = b.counts[k]
            ckp = b.counts[k + 1]
            maps.append(
                tuple(
                    sa[p // ck] * ckp + sb[p % ck] for p in range(counts[k])
                )
            )
        degens.append(tuple(maps))
    degens.append(())
    space = TruncatedSimplicialSet(n, counts, tuple(faces), tuple(degens))
    left = SimplicialMap(
        space, a, tuple(tuple(p // b.counts[k] for p in range(counts[k])) for k in range(n + 1))
    )
    right = SimplicialMap(
        space, b, tuple(tuple(p % b.counts[k] for p in range(counts[k])) for k in range(n + 1))
    )
    return ProductSSet(space, left, right)


@dataclass(frozen=True)
class CoproductSSet:
    space: TruncatedSimplicialSet
    left: SimplicialMap
    right: SimplicialMap


def coproduct(a: TruncatedSimplicialSet, b: TruncatedSimplicialSet) -> CoproductSSet:
    """Disjoint union; ids of the left summand come first."""
    if a.dim != b.dim:
        raise InvalidInput("coproduct needs equal dimension bounds")
    n = a.dim
    counts = tuple(a.counts[k] + b.counts[k] for k in range(n + 1))
    faces = [()]
    for k in range(1, n + 1):
        maps = []
        for i in range(k + 1):
            maps.append(
                tuple(a.faces[k][i]) + tuple(y + a.counts[k - 1] for y in b.faces[k][i])
            )
        faces.append(tuple(maps))
    degens = []
    for k in range(n):
        maps = []
        for i in range(k + 1):
            maps.append(
                tuple(a.degens[k][i]) + tuple(y + a.counts[k + 1] for y in b.degens[k][i])
            )
        degens.append(tuple(maps))
    degens.append(())
    space = TruncatedSimplicialSet(n, counts, tuple(faces), tuple(degens))
    left = SimplicialMap(a, space, tuple(tuple(range(a.counts[k])) for k in range(n + 1)))
    right = SimplicialMap(
        b, space, tuple(tuple(range(a.counts[k], counts[k])) for k in range(n + 1))
    )
    return CoproductSSet(space, left, right)


# --- quotients ------------------------------------------------------------


class _UnionFind:
    def __init__(self, n: int):
        self.parent = list(range(n))

    def find(self, x: int) -> int:
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, x: int, y: int) -> bool:
        rx, ry = self.find(x), self.find(y)
        if rx == ry:
            return False
        if rx > ry:
            rx, ry = ry, rx
        self.parent[ry] = rx
        return True


@dataclass(frozen=True)
class QuotientSSet:
    space: TruncatedSimplicialSet
    projection: SimplicialMap


def quotient_by_relation(space: TruncatedSimplicialSet, pairs) -> QuotientSSet:
    """Smallest simplicial quotient identifying the given (level, x, y) pairs.

    Identifications propagate along faces and degeneracies until stable;
    classes are renumbered by their minimal original id, so an empty relation
    returns an identical copy with the identity projection.
    """
    n = space.dim
    ufs = [_UnionFind(space.counts[k]) for k in range(n + 1)]
    queue: list[tuple[int, int, int]] = []
    for (k, x, y) in pairs:
        if not 0 <= k <= n or not 0 <= x < space.counts[k] or not 0 <= y < space.counts[k]:
            raise InvalidInput(f"relation pair out of range: {(k, x, y)}")
        queue.append((k, x, y))
    while queue:
        k, x, y = queue.pop()
        if not ufs[k].union(x, y):
            continue
        for i in range(k + 1) if k >= 1 else ():
            queue.append((k - 1, space.faces[k][i][x], space.faces[k][i][y]))
        if k < n:
            for i in range(k + 1):
                queue.append((k + 1, space.degens[k][i][x], space.degens[k][i][y]))
    # canonical class numbering by minimal member
    class_ids: list[dict[int, int]] = []
    reps: list[list[int]] = []
    for k in range(n + 1):
        roots = sorted({ufs[k].find(x) for x in range(space.counts[k])})
        class_ids.append({r: i for i, r in enumerate(roots)})
        reps.append(roots)
    proj_levels = tuple(
        tuple(class_ids[k][ufs[k].find(x)] for x in range(space.counts[k]))
        for k in range(n + 1)
    )
    counts = tuple(len(reps[k]) for k in range(n + 1))
    faces = [()]
    for k in range(1, n + 1):
        maps = []
        for i in range(k + 1):
            m = [proj_levels[k - 1][space.faces[k][i][r]] for r in reps[k]]
            for x in range(space.counts[k]):
                if proj_levels[k - 1][space.faces[k][i][x]] != m[proj_levels[k][x]]:
                    raise AssertionError("quotient face map is not well defined")
            maps.append(tuple(m))
        faces.append(tuple(maps))
    degens = []
    for k in range(n):
        maps = []
        for i in range(k + 1):
            m = [proj_levels[k + 1][space.degens[k][i][r]] for r in reps[k]]
            for x in range(space.counts[k]):
                if proj_levels[k + 1][space.degens[k][i][x]] != m[proj_levels[k][x]]:
                    raise AssertionError("quotient degeneracy map is not well defined")
            maps.append(tuple(m))
        degens.append(tuple(maps))
    degens.append(())
    quot = TruncatedSimplicialSet(n, counts, tuple(faces), tuple(degens))
    return QuotientSSet(quot, SimplicialMap(space, quot, proj_levels))


def subcomplex_closure(space: TruncatedSimplicialSet, seeds) -> tuple[TruncatedSimplicialSet, SimplicialMap]:
    """Smallest subcomplex containing the seed (level, id) simplices.

    Closure runs downward along faces and upward along degeneracies; returns
    the subcomplex and its inclusion.
    """
    n = space.dim
    keep: list[set[int]] = [set() for _ in range(n + 1)]
    queue = []
    for (k, x) in seeds:
        if not 0 <= k <= n or not 0 <= x < space.counts[k]:
            raise InvalidInput(f"seed out of range: {(k, x)}")
        queue.append((k, x))
    while queue:
        k, x = queue.pop()
        if x in keep[k]:
            continue
        keep[k].add(x)
        if k >= 1:
            for i in range(k + 1):
                queue.append((k - 1, space.faces[k][i][x]))
        if k < n:
            for i in range(k + 1):
                queue.append((k + 1, space.degens[k][i][x]))
    kept = [sorted(keep[k]) for k in range(n + 1)]
    index = [{x: i for i, x in enumerate(kept[k])} for k in range(n + 1)]
    counts = tuple(len(kept[k]) for k in range(n + 1))
    faces = [()]
    for k in range(1, n + 1):
        faces.append(
            tuple(
                tuple(index[k - 1][space.faces[k][i][x]] for x in kept[k])
                for i in range(k + 1)
            )
        )
    degens = []
    for k in range(n):
        degens.append(
            tuple(
                tuple(index[k + 1][space.degens[k][i][x]] for x in kept[k])
                for i in range(k + 1)
            )
        )
    degens.append(())
    sub = TruncatedSimplicialSet(n, counts, tuple(faces), tuple(degens))
    incl = SimplicialMap(sub, space, tuple(tuple(kept[k]) for k in range(n + 1)))
    return sub, incl


def degeneracy_decomposition(
    space: TruncatedSimplicialSet, k: int, x: int
) -> tuple[int, int] | None:
    """Some (i, y) with s_i(y) = x, or None when x is nondegenerate."""
    if k == 0:
        return None
    for i, m in enumerate(space.degens[k - 1]):
        for y, v in enumerate(m):
            if v == x:
                return (i, y)
    return None


def extend_from_nondegenerate(
    source: TruncatedSimplicialSet,
    target: TruncatedSimplicialSet,
    images: dict[tuple[int, int], int],
) -> SimplicialMap:
    """Build a simplicial map from images of the nondegenerate simplices.

    Degenerate simplices are sent along matching degeneracies; the result is
    validated in full, so an assignment that does not extend raises.
    """
    levels: list[list[int]] = []
    for k in range(source.dim + 1):
        row: list[int] = [-1] * source.counts[k]
        for x in nondegenerate(source, k):
            if (k, x) not in images:
                raise InvalidInput(f"missing image for nondegenerate simplex {(k, x)}")
            row[x] = images[(k, x)]
        for x in range(source.counts[k]):
            if row[x] == -1:
                i, y = degeneracy_decomposition(source, k, x)
                row[x] = target.degens[k - 1][i][levels[k - 1][y]]
        levels.append(row)
    return SimplicialMap(source, target, tuple(tuple(r) for r in levels))


# --- connectivity ---------------------------------------------------------


def vertex_components(space: TruncatedSimplicialSet) -> list[int]:
    """Connected-component index of each vertex (numbered by least vertex)."""
    uf = _UnionFind(space.counts[0])
    if space.dim >= 1:
        for e in range(space.counts[1]):
            uf.union(space.faces[1][0][e], space.faces[1][1][e])
    roots = sorted({uf.find(v) for v in range(space.counts[0])})
    number = {r: i for i, r in enumerate(roots)}
    return [number[uf.find(v)] for v in range(space.counts[0])]


def simplex_vertex(space: TruncatedSimplicialSet, k: int, x: int) -> int:
    """Some vertex of the given simplex (its last one)."""
    for level in range(k, 0, -1):
        x = space.faces[level][0][x]
    return x


# --- horn filling ---------------------------------------------------------


@dataclass(frozen=True)
class HornFailure:
    """A horn of the space with no filler simplex."""

    n: int
    i: int
    pieces: tuple[int, ...]


def horn_failures(space: TruncatedSimplicialSet, up_to_dim: int = 2) -> list[HornFailure]:
    """Horns of dimension <= up_to_dim with no filler.

    Only dimensions 1 and 2 are implemented, which is what the fibrancy
    necessary-condition reports use.  An empty result means every inner and
    outer horn in those dimensions fills.
    """
    if up_to_dim > 2:
        raise InvalidInput("horn search implemented for dimensions <= 2 only")
    failures: list[HornFailure] = []
    if up_to_dim >= 1 and space.dim >= 1:
        starts = set(space.faces[1][1])
        ends = set(space.faces[1][0])
        for v in range(space.counts[0]):
            if v not in starts:
                failures.append(HornFailure(1, 0, (v,)))
            if v not in ends:
                failures.append(HornFailure(1, 1, (v,)))
    if up_to_dim >= 2 and space.dim >= 2:
        d0 = space.faces[2][0]
        d1 = space.faces[2][1]
        d2 = space.faces[2][2]
        by_d2d1 = {(d2[t], d1[t]) for t in range(space.counts[2])}
        by_d2d0 = {(d2[t], d0[t]) for t in range(space.counts[2])}
        by_d1d0 = {(d1[t], d0[t]) for t in range(space.counts[2])}
        e_start = space.faces[1][1]
        e_end = space.faces[1][0]
        ne = space.counts[1]
        for x in range(ne):
            for y in range(ne):
                # horn 0: edges 0->1 and 0->2 sharing the initial vertex
                if e_start[x] == e_start[y] and (x, y) not in by_d2d1:
                    failures.append(HornFailure(2, 0, (x, y)))
                # horn 1: edges 0->1 and 1->2 meeting in the middle
                if e_end[x] == e_start[y] and (x, y) not in by_d2d0:
                    failures.append(HornFailure(2, 1, (x, y)))
                # horn 2: edges 0->2 and 1->2 sharing the final vertex
                if e_end[x] == e_end[y] and (x, y) not in by_d1d0:
                    failures.append(HornFailure(2, 2, (x, y)))
    return failures


# --- incremental construction ---------------------------------------------


class SimplicialSetBuilder:
    """Glue a simplicial set from nondegenerate simplices.

    Nondegenerate simplices are added with explicit ordered face lists
    (which may point at degenerate simplices); degeneracies are generated
    and interned in Eilenberg-Zilber normal form.  ``build`` materializes
    all levels up to the requested bound.
    """

    def __init__(self):
        self._level: list[int] = []
        self._faces: list[tuple[int, ...] | None] = []
        self._normal: dict[tuple[int, tuple[int, ...]], int] = {}
        self._word: list[tuple[int, tuple[int, ...]]] = []

    def _new_node(self, level: int, faces, base: int | None, word: tuple[int, ...]) -> int:
        node = len(self._level)
        self._level.append(level)
        self._faces.append(faces)
        if base is None:
            base = node
        self._word.append((base, word))
        self._normal[(base, word)] = node
        return node

    def add_vertex(self) -> int:
        return self._new_node(0, None, None, ())

    def add_simplex(self, level: int, faces) -> int:
        """New nondegenerate simplex with the given faces d_0..d_level."""
        faces = tuple(faces)
        if level < 1 or len(faces) != level + 1:
            raise InvalidInput("a level-k simplex needs k+1 faces")
        for f in faces:
            if self._level[f] != level - 1:
                raise InvalidInput("face at wrong level")
        if level >= 2:
            for j in range(level + 1):
                for i in range(j):
                    if self.face(faces[j], i) != self.face(faces[i], j - 1):
                        raise InvalidInput(
                            f"faces are not compatible: d_{i} d_{j} != d_{j-1} d_{i}"
                        )
        return self._new_node(level, faces, None, ())

    def degeneracy(self, node: int, i: int) -> int:
        """s_i of a node, interned in normal form."""
        if not 0 <= i <= self._level[node]:
            raise InvalidInput("degeneracy index out of range")
        base, word = self._word[node]
        new_word = _insert_degeneracy(word, i)
        key = (base, new_word)
        if key in self._normal:
            return self._normal[key]
        return self._new_node(self._level[node] + 1, None, base, new_word)

    def face(self, node: int, i: int) -> int:
        level = self._level[node]
        if not 0 <= i <= level or level == 0:
            raise InvalidInput("face index out of range")
        base, word = self._word[node]
        if not word:
            return self._faces[node][i]
        j = word[0]
        child_key = (base, word[1:])
        child = self._normal[child_key]
        if i == j or i == j + 1:
            return child
        if i < j:
            return self.degeneracy(self.face(child, i), j - 1)
        return self.degeneracy(self.face(child, i - 1), j)

    def build(self, dim: int) -> tuple[TruncatedSimplicialSet, dict[int, tuple[int, int]]]:
        """Materialize levels 0..dim.

        Returns the simplicial set and a location map node -> (level, id)
        for every node at level <= dim.
        """
        ids: dict[int, tuple[int, int]] = {}
        levels: list[list[int]] = [[] for _ in range(dim + 1)]
        for node in range(len(self._word)):
            k = self._level[node]
            if self._word[node][1] == () and k <= dim:
                ids[node] = (k, len(levels[k]))
                levels[k].append(node)
        for k in range(dim):
            for node in list(levels[k]):
                for i in range(k + 1):
                    s = self.degeneracy(node, i)
                    if s not in ids:
                        ids[s] = (k + 1, len(levels[k + 1]))
                        levels[k + 1].append(s)
        counts = tuple(len(levels[k]) for k in range(dim + 1))
        faces = [()]
        for k in range(1, dim + 1):
            faces.append(
                tuple(
                    tuple(ids[self.face(node, i)][1] for node in levels[k])
                    for i in range(k + 1)
                )
            )
        degens = []
        for k in range(dim):
            degens.append(
                tuple(
                    tuple(ids[self.degeneracy(node, i)][1] for node in levels[k])
                    for i in range(k + 1)
                )
            )
        degens.append(())
        space = TruncatedSimplicialSet(dim, counts, tuple(faces), tuple(degens))
        return space, ids


def _insert_degeneracy(word: tuple[int, ...], i: int) -> tuple[int, ...]:
    """Normal form of s_i composed after the degeneracy word.

    Words are strictly decreasing index sequences, leftmost applied last;
    the rewriting rule is s_i s_j = s_(j+1) s_i for i <= j.
    """
    if not word or i > word[0]:
        return (i,) + word
    return (word[0] + 1,) + _insert_degeneracy(word[1:], i)


def circle(segments: int, dim: int) -> TruncatedSimplicialSet:
    """Simplicial circle with the given number of directed edges (>= 1)."""
    if segments < 1:
        raise InvalidInput("circle needs at least one segment")
    b = SimplicialSetBuilder()
    verts = [b.add_vertex() for _ in range(segments)]
    for i in range(segments):
        # edge i runs from vertex i to vertex i+1; faces are (end, start)
        b.add_simplex(1, [verts[(i + 1) % segments], verts[i]])
    return b.build(dim)[0]
