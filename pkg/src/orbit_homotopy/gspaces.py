"""Right G-simplicial sets: actions, orbits, fixed points, cylinders.

The action is stored as one bijection per group element and level, validated
against the right-action axioms and compatibility with all faces and
degeneracies.  Orbit spaces reuse the simplicial quotient, so their ids are
canonical: taking orbits by the trivial subgroup returns an identical copy.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .errors import InvalidInput
from .groups import FiniteGroup, Subgroup, SubgroupFamily, left_cosets, coset_rep
from .simplicial import (
    CoproductSSet,
    ProductSSet,
    QuotientSSet,
    SimplicialMap,
    TruncatedSimplicialSet,
    compose_maps,
    coproduct,
    identity_map,
    product,
    quotient_by_relation,
    standard_simplex,
)

Action = tuple[tuple[tuple[int, ...], ...], ...]


@dataclass(frozen=True)
class ActionViolation:
    kind: str
    witness: tuple

    def __str__(self):
        return f"{self.kind} at {self.witness}"


def find_action_violation(
    group: FiniteGroup, space: TruncatedSimplicialSet, action
) -> ActionViolation | None:
    """First violated right-action axiom, or None if the action is valid.

    Checks, in order: shape and bijectivity, identity acting trivially,
    compatibility (x*g)*h = x*(g*h), and commuting with faces and
    degeneracies.
    """
    n = space.dim
    if len(action) != group.order:
        return ActionViolation("missing-element", (len(action),))
    for g in range(group.order):
        if len(action[g]) != n + 1:
            return ActionViolation("missing-level", (g,))
        for k in range(n + 1):
            perm = action[g][k]
            if len(perm) != space.counts[k] or sorted(perm) != list(range(space.counts[k])):
                return ActionViolation("not-a-bijection", (g, k))
    for k in range(n + 1):
        for x in range(space.counts[k]):
            if action[0][k][x] != x:
                return ActionViolation("identity-moves", (k, x))
    for g in range(group.order):
        for h in range(group.order):
            gh = group.mul(g, h)
            for k in range(n + 1):
                ag, ah, agh = action[g][k], action[h][k], action[gh][k]
                for x in range(space.counts[k]):
                    if ah[ag[x]] != agh[x]:
                        return ActionViolation("composition", (x, g, h, k))
    for g in range(group.order):
        for k in range(1, n + 1):
            for i in range(k + 1):
                face = space.faces[k][i]
                for x in range(space.counts[k]):
                    if face[action[g][k][x]] != action[g][k - 1][face[x]]:
                        return ActionViolation("face-equivariance", (g, k, i, x))
        for k in range(n):
            for i in range(k + 1):
                dg = space.degens[k][i]
                for x in range(space.counts[k]):
                    if dg[action[g][k][x]] != action[g][k + 1][dg[x]]:
                        return ActionViolation("degeneracy-equivariance", (g, k, i, x))
    return None


@dataclass(frozen=True)
class GSimplicialSet:
    """A truncated simplicial set with a validated right G-action."""

    group: FiniteGroup
    space: TruncatedSimplicialSet
    action: Action

    def __post_init__(self):
        bad = find_action_violation(self.group, self.space, self.action)
        if bad is not None:
            raise InvalidInput(f"invalid action: {bad}")

    @property
    def dim(self) -> int:
        return self.space.dim

    def act(self, g: int, k: int, x: int) -> int:
        return self.action[g][k][x]

    def action_map(self, g: int) -> SimplicialMap:
        return SimplicialMap(self.space, self.space, self.action[g])


def trivial_gspace(group: FiniteGroup, space: TruncatedSimplicialSet) -> GSimplicialSet:
    ident = tuple(tuple(range(c)) for c in space.counts)
    return GSimplicialSet(group, space, tuple(ident for _ in range(group.order)))


def gspace_from_generator_actions(
    group: FiniteGroup, space: TruncatedSimplicialSet, gen_actions: dict
) -> GSimplicialSet:
    """Expand an action given on generators to the whole group.

    ``gen_actions[g]`` is a per-level permutation list for generator g; the
    listed generators must generate the group.
    """
    n = space.dim
    known: dict[int, tuple[tuple[int, ...], ...]] = {
        0: tuple(tuple(range(c)) for c in space.counts)
    }
    for g, levels in gen_actions.items():
        if not 0 <= g < group.order:
            raise InvalidInput(f"generator {g} out of range")
        known[g] = tuple(tuple(levels[k]) for k in range(n + 1))
    frontier = list(known)
    while frontier:
        x = frontier.pop(0)
        for g in list(gen_actions):
            y = group.mul(x, g)
            if y not in known:
                known[y] = tuple(
                    tuple(known[g][k][v] for v in known[x][k]) for k in range(n + 1)
                )
                frontier.append(y)
    if len(known) != group.order:
        raise InvalidInput("the given elements do not generate the group")
    return GSimplicialSet(group, space, tuple(known[g] for g in range(group.order)))


@dataclass(frozen=True)
class GMap:
    """Equivariant simplicial map between G-simplicial sets over one group."""

    source: GSimplicialSet
    target: GSimplicialSet
    map: SimplicialMap

    def __post_init__(self):
        if self.source.group != self.target.group:
            raise InvalidInput("equivariant maps need a common group")
        if self.map.source != self.source.space or self.map.target != self.target.space:
            raise InvalidInput("underlying map endpoints mismatch")
        w = equivariance_witness(self.source, self.target, self.map)
        if w is not None:
            raise InvalidInput(f"map is not equivariant at {w}")

    @property
    def group(self) -> FiniteGroup:
        return self.source.group

    def levels(self):
        return self.map.levels


def equivariance_witness(
    src: GSimplicialSet, tgt: GSimplicialSet, f: SimplicialMap
) -> tuple | None:
    """(g, level, x) with f(x*g) != f(x)*g, or None when equivariant."""
    for g in range(src.group.order):
        for k in range(src.dim + 1):
            fk = f.levels[k]
            ag, bg = src.action[g][k], tgt.action[g][k]
            for x in range(src.space.counts[k]):
                if fk[ag[x]] != bg[fk[x]]:
                    return (g, k, x)
    return None


def g_identity(a: GSimplicialSet) -> GMap:
    return GMap(a, a, identity_map(a.space))


def g_compose(first: GMap, second: GMap) -> GMap:
    return GMap(first.source, second.target, compose_maps(first.map, second.map))


# --- orbits and fixed points -----------------------------------------------


@dataclass(frozen=True)
class OrbitSpaceResult:
    space: TruncatedSimplicialSet
    projection: SimplicialMap

    def representatives(self) -> tuple[tuple[int, ...], ...]:
        """Minimal preimage of each orbit class, per level."""
        reps = []
        for k, m in enumerate(self.projection.levels):
            rep = [-1] * self.space.counts[k]
            for x in range(len(m) - 1, -1, -1):
                rep[m[x]] = x
            reps.append(tuple(rep))
        return tuple(reps)


def orbit_space(a: GSimplicialSet, h: Subgroup) -> OrbitSpaceResult:
    """Quotient identifying x with x*h for every h in the subgroup."""
    _check_subgroup(a.group, h)
    pairs = []
    for g in h.elements:
        if g == 0:
            continue
        for k in range(a.dim + 1):
            ag = a.action[g][k]
            pairs.extend((k, x, ag[x]) for x in range(a.space.counts[k]))
    q = quotient_by_relation(a.space, pairs)
    return OrbitSpaceResult(q.space, q.projection)


@dataclass(frozen=True)
class FixedPointsResult:
    space: TruncatedSimplicialSet
    inclusion: SimplicialMap


def fixed_points(a: GSimplicialSet, h: Subgroup) -> FixedPointsResult:
    """Subcomplex of simplices fixed by every element of the subgroup."""
    _check_subgroup(a.group, h)
    n = a.dim
    kept = []
    for k in range(n + 1):
        kept.append(
            [
                x
                for x in range(a.space.counts[k])
                if all(a.action[g][k][x] == x for g in h.elements)
            ]
        )
    index = [{x: i for i, x in enumerate(kept[k])} for k in range(n + 1)]
    counts = tuple(len(kept[k]) for k in range(n + 1))
    faces = [()]
    for k in range(1, n + 1):
        maps = []
        for i in range(k + 1):
            for x in kept[k]:
                if a.space.faces[k][i][x] not in index[k - 1]:
                    raise AssertionError("fixed simplices not closed under faces")
            maps.append(tuple(index[k - 1][a.space.faces[k][i][x]] for x in kept[k]))
        faces.append(tuple(maps))
    degens = []
    for k in range(n):
        maps = []
        for i in range(k + 1):
            for x in kept[k]:
                if a.space.degens[k][i][x] not in index[k + 1]:
                    raise AssertionError("fixed simplices not closed under degeneracies")
            maps.append(tuple(index[k + 1][a.space.degens[k][i][x]] for x in kept[k]))
        degens.append(tuple(maps))
    degens.append(())
    sub = TruncatedSimplicialSet(n, counts, tuple(faces), tuple(degens))
    incl = SimplicialMap(sub, a.space, tuple(tuple(kept[k]) for k in range(n + 1)))
    return FixedPointsResult(sub, incl)


def _check_subgroup(group: FiniteGroup, h: Subgroup):
    for x in h.elements:
        if not 0 <= x < group.order:
            raise InvalidInput("subgroup element out of range for the group")


def orbit_map(f: GMap, h: Subgroup) -> SimplicialMap:
    """The induced map A/H -> B/H, checked for representative independence."""
    oa = orbit_space(f.source, h)
    ob = orbit_space(f.target, h)
    n = f.source.dim
    levels = []
    for k in range(n + 1):
        pa, pb, fk = oa.projection.levels[k], ob.projection.levels[k], f.map.levels[k]
        m = [-1] * oa.space.counts[k]
        for x in range(f.source.space.counts[k]):
            c = pa[x]
            v = pb[fk[x]]
            if m[c] == -1:
                m[c] = v
            elif m[c] != v:
                raise AssertionError("orbit map is not well defined")
        levels.append(tuple(m))
    return SimplicialMap(oa.space, ob.space, tuple(levels))


def fixed_map(f: GMap, h: Subgroup) -> SimplicialMap:
    """The restriction A^H -> B^H (images of fixed simplices are fixed)."""
    fa = fixed_points(f.source, h)
    fb = fixed_points(f.target, h)
    n = f.source.dim
    back = [
        {x: i for i, x in enumerate(fb.inclusion.levels[k])} for k in range(n + 1)
    ]
    levels = []
    for k in range(n + 1):
        row = []
        for x in fa.inclusion.levels[k]:
            y = f.map.levels[k][x]
            if y not in back[k]:
                raise AssertionError("image of a fixed simplex is not fixed")
            row.append(back[k][y])
        levels.append(tuple(row))
    return SimplicialMap(fa.space, fb.space, tuple(levels))


# --- constructions ----------------------------------------------------------


@dataclass(frozen=True)
class GProduct:
    gspace: GSimplicialSet
    product: ProductSSet
    left: GMap
    right: GMap


def g_product(a: GSimplicialSet, b: GSimplicialSet) -> GProduct:
    """Product with the diagonal action."""
    if a.group != b.group:
        raise InvalidInput("product needs a common group")
    if a.dim != b.dim:
        raise InvalidInput("product needs equal dimension bounds")
    p = product(a.space, b.space)
    action = []
    for g in range(a.group.order):
        levels = []
        for k in range(a.dim + 1):
            ag, bg = a.action[g][k], b.action[g][k]
            ck = b.space.counts[k]
            levels.append(
                tuple(ag[x // ck] * ck + bg[x % ck] for x in range(p.space.counts[k]))
            )
        action.append(tuple(levels))
    gs = GSimplicialSet(a.group, p.space, tuple(action))
    return GProduct(gs, p, GMap(gs, a, p.left), GMap(gs, b, p.right))


@dataclass(frozen=True)
class GCoproduct:
    gspace: GSimplicialSet
    coproduct: CoproductSSet
    left: GMap
    right: GMap


def g_coproduct(a: GSimplicialSet, b: GSimplicialSet) -> GCoproduct:
    if a.group != b.group:
        raise InvalidInput("coproduct needs a common group")
    c = coproduct(a.space, b.space)
    action = []
    for g in range(a.group.order):
        levels = []
        for k in range(a.dim + 1):
            off = a.space.counts[k]
            levels.append(
                tuple(a.action[g][k]) + tuple(x + off for x in b.action[g][k])
            )
        action.append(tuple(levels))
    gs = GSimplicialSet(a.group, c.space, tuple(action))
    return GCoproduct(gs, c, GMap(a, gs, c.left), GMap(b, gs, c.right))


def g_quotient(a: GSimplicialSet, pairs) -> tuple[GSimplicialSet, GMap]:
    """Equivariant quotient: the relation is closed under the action first."""
    closed = []
    for (k, x, y) in pairs:
        for g in range(a.group.order):
            closed.append((k, a.action[g][k][x], a.action[g][k][y]))
    q = quotient_by_relation(a.space, closed)
    proj = q.projection
    reps = OrbitSpaceResult(q.space, proj).representatives()
    action = []
    for g in range(a.group.order):
        levels = []
        for k in range(a.dim + 1):
            m = [proj.levels[k][a.action[g][k][reps[k][c]]] for c in range(q.space.counts[k])]
            for x in range(a.space.counts[k]):
                if proj.levels[k][a.action[g][k][x]] != m[proj.levels[k][x]]:
                    raise AssertionError("action does not descend to the quotient")
            levels.append(tuple(m))
        action.append(tuple(levels))
    gs = GSimplicialSet(a.group, q.space, tuple(action))
    return gs, GMap(a, gs, proj)


def homogeneous(group: FiniteGroup, h: Subgroup, dim: int) -> GSimplicialSet:
    """The coset space G/H as a discrete right G-simplicial set.

    Cosets are left cosets xH; the right action is xH * g = (g^-1 x)H, the
    inverse-action bridge between left coset spaces and right G-spaces.  All
    levels repeat the coset set with identity structure maps.
    """
    _check_subgroup(group, h)
    cosets = left_cosets(group, h)
    index = {c[0]: i for i, c in enumerate(cosets)}
    m = len(cosets)
    counts = tuple(m for _ in range(dim + 1))
    ident = tuple(range(m))
    faces = [()] + [tuple(ident for _ in range(k + 1)) for k in range(1, dim + 1)]
    degens = [tuple(ident for _ in range(k + 1)) for k in range(dim)] + [()]
    space = TruncatedSimplicialSet(dim, counts, tuple(faces), tuple(degens))
    action = []
    for g in range(group.order):
        ginv = group.inv(g)
        perm = tuple(index[coset_rep(group, h, group.mul(ginv, c[0]))] for c in cosets)
        action.append(tuple(perm for _ in range(dim + 1)))
    return GSimplicialSet(group, space, tuple(action))


@dataclass(frozen=True)
class Cylinder:
    """A x Delta[1] with the action on the first factor.

    ``include`` is the map from A + A hitting the two ends, ``collapse``
    projects back to A, and ``fold`` is the codiagonal they factor.
    """

    gspace: GSimplicialSet
    product: ProductSSet
    end0: GMap
    end1: GMap
    include: GMap
    collapse: GMap
    fold: GMap
    ends_coproduct: GCoproduct


def _constant_vertex_ids(interval: TruncatedSimplicialSet, vertex: int) -> list[int]:
    """Level-k ids of the iterated degeneracy of a vertex."""
    ids = [vertex]
    for k in range(interval.dim):
        ids.append(interval.degens[k][0][ids[-1]])
    return ids


def cylinder(a: GSimplicialSet) -> Cylinder:
    interval = standard_simplex(1, a.dim)
    gp = g_product(a, trivial_gspace(a.group, interval))
    v0 = _constant_vertex_ids(interval, 0)
    v1 = _constant_vertex_ids(interval, 1)
    n = a.dim

    def end_map(vids) -> SimplicialMap:
        levels = tuple(
            tuple(gp.product.pair(k, x, vids[k]) for x in range(a.space.counts[k]))
            for k in range(n + 1)
        )
        return SimplicialMap(a.space, gp.gspace.space, levels)

    end0 = GMap(a, gp.gspace, end_map(v0))
    end1 = GMap(a, gp.gspace, end_map(v1))
    both = g_coproduct(a, a)
    include_levels = tuple(
        tuple(end0.map.levels[k]) + tuple(end1.map.levels[k]) for k in range(n + 1)
    )
    include = GMap(both.gspace, gp.gspace, SimplicialMap(both.gspace.space, gp.gspace.space, include_levels))
    collapse = GMap(gp.gspace, a, gp.product.left)
    fold_levels = tuple(
        tuple(range(a.space.counts[k])) + tuple(range(a.space.counts[k]))
        for k in range(n + 1)
    )
    fold = GMap(both.gspace, a, SimplicialMap(both.gspace.space, a.space, fold_levels))
    return Cylinder(gp.gspace, gp.product, end0, end1, include, collapse, fold, both)


def cylinder_orbit_comparison(a: GSimplicialSet, h: Subgroup) -> tuple[SimplicialMap, bool]:
    """Canonical map (A x Delta[1])/H -> (A/H) x Delta[1] and whether it is an iso."""
    cyl = cylinder(a)
    oc = orbit_space(cyl.gspace, h)
    oa = orbit_space(a, h)
    target = product(oa.space, standard_simplex(1, a.dim))
    reps = oc.representatives()
    levels = []
    for k in range(a.dim + 1):
        row = []
        for c in range(oc.space.counts[k]):
            x, t = cyl.product.unpair(k, reps[k][c])
            row.append(target.pair(k, oa.projection.levels[k][x], t))
        levels.append(tuple(row))
    cmp_map = SimplicialMap(oc.space, target.space, tuple(levels))
    return cmp_map, cmp_map.is_isomorphism()


# --- cofibrations and homotopies -------------------------------------------


@dataclass(frozen=True)
class CofibrationReport:
    ok: bool
    failures: tuple[tuple[Subgroup, int, int, int], ...]

    def __bool__(self):
        return self.ok


def is_orbit_cofibration(f: GMap, family: SubgroupFamily) -> CofibrationReport:
    """Levelwise injectivity of every induced orbit map A/H -> B/H."""
    failures = []
    for h in family:
        coll = orbit_map(f, h).first_collision()
        if coll is not None:
            failures.append((h, *coll))
    return CofibrationReport(not failures, tuple(failures))


@dataclass(frozen=True)
class HomotopyCheck:
    ok: bool
    reason: str | None = None

    def __bool__(self):
        return self.ok


def is_G_homotopy(hmap, f: GMap, g: GMap) -> HomotopyCheck:
    """Is hmap : A x Delta[1] -> B an equivariant homotopy from f to g?

    ``hmap`` may be a GMap or a bare SimplicialMap; bare maps are checked for
    equivariance and rejected with a witness.  The source must be the
    cylinder of f's source; f sits at vertex 0, g at vertex 1.
    """
    if f.source != g.source or f.target != g.target:
        raise InvalidInput("homotopy endpoints must share source and target")
    cyl = cylinder(f.source)
    if isinstance(hmap, GMap):
        raw = hmap.map
        if hmap.source != cyl.gspace:
            return HomotopyCheck(False, "source is not the cylinder of f's source")
        if hmap.target != f.target:
            return HomotopyCheck(False, "target mismatch")
    else:
        raw = hmap
        if raw.source != cyl.gspace.space or raw.target != f.target.space:
            return HomotopyCheck(False, "underlying endpoints mismatch")
        w = equivariance_witness(cyl.gspace, f.target, raw)
        if w is not None:
            return HomotopyCheck(False, f"not equivariant at (g, level, id) = {w}")
    if compose_maps(cyl.end0.map, raw) != f.map:
        return HomotopyCheck(False, "restriction at vertex 0 differs from f")
    if compose_maps(cyl.end1.map, raw) != g.map:
        return HomotopyCheck(False, "restriction at vertex 1 differs from g")
    return HomotopyCheck(True)


@dataclass(frozen=True)
class GHomotopy:
    """A validated equivariant homotopy with designated endpoints."""

    map: GMap
    f: GMap
    g: GMap

    def __post_init__(self):
        check = is_G_homotopy(self.map, self.f, self.g)
        if not check:
            raise InvalidInput(f"not a homotopy from f to g: {check.reason}")


def constant_homotopy(f: GMap) -> GHomotopy:
    cyl = cylinder(f.source)
    return GHomotopy(g_compose(cyl.collapse, f), f, f)


def interval_flip(dim: int) -> SimplicialMap:
    """The involution of Delta[1] exchanging the endpoints."""
    interval = standard_simplex(1, dim)
    levels = []
    for k in range(dim + 1):
        tuples = list(itertools.combinations_with_replacement(range(2), k + 1))
        index = {t: i for i, t in enumerate(tuples)}
        levels.append(tuple(index[tuple(sorted(1 - e for e in t))] for t in tuples))
    return SimplicialMap(interval, interval, tuple(levels))


def reverse_homotopy(h: GHomotopy) -> GHomotopy:
    """The reversed homotopy, certifying symmetry."""
    a = h.f.source
    cyl = cylinder(a)
    flip = interval_flip(a.dim)
    levels = []
    for k in range(a.dim + 1):
        row = []
        for p in range(cyl.gspace.space.counts[k]):
            x, t = cyl.product.unpair(k, p)
            row.append(h.map.map.levels[k][cyl.product.pair(k, x, flip.levels[k][t])])
        levels.append(tuple(row))
    raw = SimplicialMap(cyl.gspace.space, h.f.target.space, tuple(levels))
    return GHomotopy(GMap(cyl.gspace, h.f.target, raw), h.g, h.f)
