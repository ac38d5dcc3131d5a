"""Seeded corpora of simplicial sets, G-simplicial sets and equivariant maps.

Instances are assembled from coset spaces, standard simplices, products,
disjoint unions and equivariant quotients, so every sample is valid by
construction while still exercising nontrivial actions, collisions and
inclusions.  Everything is driven by an explicit random.Random, so a seed
pins the whole instance.
"""

from __future__ import annotations

import random

from .groups import FiniteGroup, enumerate_subgroups
from .gspaces import (
    GMap,
    GSimplicialSet,
    g_compose,
    g_coproduct,
    g_identity,
    g_product,
    g_quotient,
    homogeneous,
    trivial_gspace,
)
from .gspaces import gspace_from_generator_actions
from .simplicial import (
    SimplicialMap,
    TruncatedSimplicialSet,
    circle,
    coproduct,
    extend_from_nondegenerate,
    nondegenerate,
    quotient_by_relation,
    standard_simplex,
    subcomplex_closure,
)


def random_sset(rng: random.Random, dim: int) -> TruncatedSimplicialSet:
    """Quotient of a small disjoint union of standard simplices."""
    parts = [standard_simplex(rng.randint(0, dim), dim) for _ in range(rng.randint(1, 2))]
    space = parts[0]
    for p in parts[1:]:
        space = coproduct(space, p).space
    pairs = []
    for _ in range(rng.randint(0, 3)):
        k = rng.randint(0, dim)
        if space.counts[k] >= 2:
            pairs.append((k, rng.randrange(space.counts[k]), rng.randrange(space.counts[k])))
    return quotient_by_relation(space, pairs).space


def random_gspace(group: FiniteGroup, rng: random.Random, dim: int) -> GSimplicialSet:
    """Disjoint union of coset spaces times small complexes, then an
    equivariant quotient half the time."""
    subs = enumerate_subgroups(group)
    pieces = []
    for _ in range(rng.randint(1, 2)):
        h = subs[rng.randrange(len(subs))]
        base = homogeneous(group, h, dim)
        piece = g_product(base, trivial_gspace(group, random_sset(rng, dim))).gspace
        pieces.append(piece)
    a = pieces[0]
    for p in pieces[1:]:
        a = g_coproduct(a, p).gspace
    if rng.random() < 0.5:
        pairs = []
        for _ in range(rng.randint(1, 2)):
            k = rng.randint(0, dim)
            if a.space.counts[k] >= 2:
                pairs.append((k, rng.randrange(a.space.counts[k]), rng.randrange(a.space.counts[k])))
        if pairs:
            a = g_quotient(a, pairs)[0]
    return a


def g_subcomplex(a: GSimplicialSet, seeds) -> tuple[GSimplicialSet, GMap]:
    """Smallest action-stable subcomplex containing the seed simplices."""
    closed = []
    for (k, x) in seeds:
        for g in range(a.group.order):
            closed.append((k, a.action[g][k][x]))
    sub, incl = subcomplex_closure(a.space, closed)
    back = [
        {x: i for i, x in enumerate(incl.levels[k])} for k in range(a.dim + 1)
    ]
    action = []
    for g in range(a.group.order):
        levels = []
        for k in range(a.dim + 1):
            levels.append(
                tuple(back[k][a.action[g][k][x]] for x in incl.levels[k])
            )
        action.append(tuple(levels))
    gsub = GSimplicialSet(a.group, sub, tuple(action))
    return gsub, GMap(gsub, a, incl)


def random_gmap(group: FiniteGroup, rng: random.Random, dim: int) -> GMap:
    """A random equivariant map mixing injective and collapsing behavior."""
    kind = rng.choice(["identity", "quotient", "inclusion", "fold", "compose"])
    if kind == "identity":
        return g_identity(random_gspace(group, rng, dim))
    if kind == "fold":
        a = random_gspace(group, rng, dim)
        both = g_coproduct(a, a)
        levels = tuple(
            tuple(range(a.space.counts[k])) + tuple(range(a.space.counts[k]))
            for k in range(dim + 1)
        )
        return GMap(
            both.gspace, a, SimplicialMap(both.gspace.space, a.space, levels)
        )
    b = random_gspace(group, rng, dim)
    if kind == "quotient":
        return _random_projection(b, rng, dim)
    seeds = []
    for _ in range(rng.randint(0, 2)):
        k = rng.randint(0, dim)
        if b.space.counts[k]:
            seeds.append((k, rng.randrange(b.space.counts[k])))
    sub, incl = g_subcomplex(b, seeds)
    if kind == "inclusion":
        return incl
    proj = _random_projection(b, rng, dim)
    return g_compose(incl, proj)


def _random_projection(a: GSimplicialSet, rng: random.Random, dim: int) -> GMap:
    pairs = []
    for _ in range(rng.randint(1, 2)):
        k = rng.randint(0, dim)
        if a.space.counts[k] >= 2:
            pairs.append((k, rng.randrange(a.space.counts[k]), rng.randrange(a.space.counts[k])))
    return g_quotient(a, pairs)[1]


def antipodal_circle(dim: int) -> GSimplicialSet:
    """The 4-segment circle with the free half-turn involution."""
    z2 = FiniteGroup.cyclic(2)
    c4 = circle(4, dim)
    images = {(0, v): (v + 2) % 4 for v in range(4)}
    edges = nondegenerate(c4, 1)
    starts = c4.faces[1][1]
    by_start = {starts[e]: e for e in edges}
    for e in edges:
        images[(1, e)] = by_start[(starts[e] + 2) % 4]
    rot = extend_from_nondegenerate(c4, c4, images)
    return gspace_from_generator_actions(z2, c4, {1: rot.levels})
