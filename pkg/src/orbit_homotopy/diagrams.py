"""Functors from an orbit category to simplicial sets, and the orbit-diagram
adjunction.

``orbit_diagram`` sends a G-simplicial set A to the diagram H |-> A/H with
the coset representative acting on orbit classes; ``evaluate_free_orbit``
reads a G-simplicial set back off a diagram at the free orbit.  Because
orbit classes are canonically numbered, evaluating after building is the
identity on the nose, which makes the adjunction unit an equality and the
triangle identities literal map equalities.
"""

from __future__ import annotations

from dataclasses import dataclass

from .chains import homology_map_reports
from .errors import InvalidInput, MissingFreeOrbit
from .groups import (
    OrbitCategory,
    OrbitMorphism,
    Subgroup,
    SubgroupFamily,
    orbit_category,
    trivial_subgroup,
)
from .gspaces import (
    GMap,
    GSimplicialSet,
    OrbitSpaceResult,
    cylinder,
    cylinder_orbit_comparison,
    orbit_map,
    orbit_space,
)
from .simplicial import (
    SimplicialMap,
    TruncatedSimplicialSet,
    compose_maps,
    identity_map,
    product,
    standard_simplex,
)


class OrbitDiagram:
    """A functor from the orbit category to truncated simplicial sets.

    ``at[i]`` is the value on the i-th object; ``on[(i, j)][r]`` the value on
    the r-th canonical morphism of that hom set.  Identity and composition
    laws are verified exhaustively at construction.
    """

    def __init__(self, category: OrbitCategory, at, on):
        self.category = category
        self.at = tuple(at)
        self.on = {k: tuple(v) for k, v in on.items()}
        n = len(category.objects)
        if len(self.at) != n:
            raise InvalidInput("diagram must assign every object")
        for (i, j), reps in category.homs.items():
            maps = self.on.get((i, j))
            if maps is None or len(maps) != len(reps):
                raise InvalidInput(f"diagram must assign hom set ({i},{j})")
            for mor, m in zip(reps, maps):
                if m.source != self.at[i] or m.target != self.at[j]:
                    raise InvalidInput(f"map endpoints mismatch on {mor.label()}")
        self._lookup = {}
        for (i, j), reps in category.homs.items():
            for mor, m in zip(reps, self.on[(i, j)]):
                self._lookup[mor] = m
        self._validate_functoriality()

    def map_for(self, morphism: OrbitMorphism) -> SimplicialMap:
        return self._lookup[morphism]

    def value_at(self, h: Subgroup) -> TruncatedSimplicialSet:
        return self.at[self.category.object_index(h)]

    def _validate_functoriality(self):
        cat = self.category
        for h in cat.objects:
            ident = self.map_for(cat.identity(h))
            if ident != identity_map(self.value_at(h)):
                raise InvalidInput(f"identity of {h.label()} is not the identity map")
        for (i, j), fs in cat.homs.items():
            for (j2, k), gs in cat.homs.items():
                if j2 != j:
                    continue
                for f in fs:
                    for g in gs:
                        comp = cat.compose(f, g)
                        if compose_maps(self.map_for(f), self.map_for(g)) != self.map_for(comp):
                            raise InvalidInput(
                                f"functoriality fails on {f.label()} then {g.label()}"
                            )

    def __eq__(self, other):
        return (
            isinstance(other, OrbitDiagram)
            and self.category == other.category
            and self.at == other.at
            and self.on == other.on
        )


class NatTrans:
    """Natural transformation between diagrams over one orbit category."""

    def __init__(self, source: OrbitDiagram, target: OrbitDiagram, components):
        if source.category != target.category:
            raise InvalidInput("natural transformations need a common category")
        self.source = source
        self.target = target
        self.components = tuple(components)
        cat = source.category
        if len(self.components) != len(cat.objects):
            raise InvalidInput("one component per object required")
        for i, comp in enumerate(self.components):
            if comp.source != source.at[i] or comp.target != target.at[i]:
                raise InvalidInput(f"component {i} endpoints mismatch")
        for f in cat.all_morphisms():
            i = cat.object_index(f.source)
            j = cat.object_index(f.target)
            left = compose_maps(source.map_for(f), self.components[j])
            right = compose_maps(self.components[i], target.map_for(f))
            if left != right:
                raise InvalidInput(f"naturality square fails on {f.label()}")

    def component_at(self, h: Subgroup) -> SimplicialMap:
        return self.components[self.source.category.object_index(h)]

    def __eq__(self, other):
        return (
            isinstance(other, NatTrans)
            and self.source == other.source
            and self.target == other.target
            and self.components == other.components
        )


def _orbit_data(a: GSimplicialSet, family: SubgroupFamily):
    cat = orbit_category(a.group, family)
    orbits = [orbit_space(a, h) for h in cat.objects]
    return cat, orbits


def orbit_diagram_with_projections(
    a: GSimplicialSet, family: SubgroupFamily
) -> tuple[OrbitDiagram, tuple[OrbitSpaceResult, ...]]:
    """The orbit diagram of A plus the projections A -> A/H used to build it.

    The value at G/H is the orbit space A/H; the morphism with representative
    g sends the class of a to the class of a*g, which is well defined because
    conjugating H into K along g matches the two orbit relations.
    """
    cat, orbits = _orbit_data(a, family)
    on = {}
    for (i, j), reps in cat.homs.items():
        src, tgt = orbits[i], orbits[j]
        maps = []
        for mor in reps:
            levels = []
            for k in range(a.dim + 1):
                m = [-1] * src.space.counts[k]
                act = a.action[mor.rep][k]
                ps, pt = src.projection.levels[k], tgt.projection.levels[k]
                for x in range(a.space.counts[k]):
                    c, v = ps[x], pt[act[x]]
                    if m[c] == -1:
                        m[c] = v
                    elif m[c] != v:
                        raise AssertionError(
                            f"orbit morphism not well defined on {mor.label()}"
                        )
                levels.append(tuple(m))
            maps.append(SimplicialMap(src.space, tgt.space, tuple(levels)))
        on[(i, j)] = maps
    diagram = OrbitDiagram(cat, [o.space for o in orbits], on)
    return diagram, tuple(orbits)


def orbit_diagram(a: GSimplicialSet, family: SubgroupFamily) -> OrbitDiagram:
    return orbit_diagram_with_projections(a, family)[0]


def orbit_diagram_map(f: GMap, family: SubgroupFamily) -> NatTrans:
    """The natural transformation of orbit diagrams induced by an equivariant map."""
    src = orbit_diagram(f.source, family)
    tgt = orbit_diagram(f.target, family)
    comps = [orbit_map(f, h) for h in src.category.objects]
    return NatTrans(src, tgt, comps)


def evaluate_free_orbit(diagram: OrbitDiagram) -> GSimplicialSet:
    """Read a right G-simplicial set off the diagram at the free orbit.

    The action of g is the diagram's value on the free-orbit endomorphism
    with representative g; the right-action axioms are verified by the
    GSimplicialSet constructor.
    """
    cat = diagram.category
    e = trivial_subgroup(cat.group)
    if e not in cat.family:
        raise MissingFreeOrbit("the family does not contain the trivial subgroup")
    space = diagram.value_at(e)
    action = []
    for g in range(cat.group.order):
        action.append(diagram.map_for(OrbitMorphism(e, e, g)).levels)
    return GSimplicialSet(cat.group, space, tuple(action))


def adjunction_counit(diagram: OrbitDiagram) -> NatTrans:
    """The comparison from the orbit diagram of the free-orbit value to T.

    At G/H the component sends the H-class of x to the value of T on the
    canonical map from the free orbit to G/H applied to x; representative
    independence is verified by exhausting every class member.
    """
    cat = diagram.category
    a = evaluate_free_orbit(diagram)
    src_diagram, orbits = orbit_diagram_with_projections(a, cat.family)
    comps = []
    for idx, h in enumerate(cat.objects):
        one_h = diagram.map_for(OrbitMorphism(trivial_subgroup(cat.group), h, 0))
        proj = orbits[idx].projection
        levels = []
        for k in range(a.dim + 1):
            m = [-1] * orbits[idx].space.counts[k]
            for x in range(a.space.counts[k]):
                c, v = proj.levels[k][x], one_h.levels[k][x]
                if m[c] == -1:
                    m[c] = v
                elif m[c] != v:
                    raise AssertionError(
                        f"counit component at {h.label()} is not well defined"
                    )
            levels.append(tuple(m))
        comps.append(SimplicialMap(orbits[idx].space, diagram.at[idx], tuple(levels)))
    return NatTrans(src_diagram, diagram, comps)


@dataclass(frozen=True)
class AdjunctionReport:
    """Mechanical check of the adjunction on concrete inputs."""

    unit_is_identity: bool
    counit_natural: bool
    triangle_on_space: bool
    triangle_on_diagram: bool
    detail: str

    @property
    def ok(self) -> bool:
        return (
            self.unit_is_identity
            and self.counit_natural
            and self.triangle_on_space
            and self.triangle_on_diagram
        )


def verify_adjunction(
    a: GSimplicialSet, diagram: OrbitDiagram, family: SubgroupFamily | None = None
) -> AdjunctionReport:
    """Check the adjunction data on (A, T).

    Requires: evaluating the orbit diagram of A at the free orbit returns A
    exactly; the counit of T is well defined and natural; the counit of the
    orbit diagram of A has identity components (first triangle identity with
    an identity unit); the counit of T at the free orbit is the identity
    (second triangle identity).
    """
    if family is None:
        family = diagram.category.family
    detail = []
    t_diagram = orbit_diagram(a, family)
    unit_ok = evaluate_free_orbit(t_diagram) == a
    if not unit_ok:
        detail.append("evaluating the orbit diagram at the free orbit differs from A")
    try:
        eps_a = adjunction_counit(t_diagram)
        tri1 = all(
            comp == identity_map(comp.source) for comp in eps_a.components
        )
        if not tri1:
            detail.append("counit of the orbit diagram has a non-identity component")
    except (AssertionError, InvalidInput) as exc:
        tri1 = False
        detail.append(f"counit of the orbit diagram failed: {exc}")
    try:
        eps_t = adjunction_counit(diagram)
        counit_ok = True
        e = trivial_subgroup(diagram.category.group)
        comp_e = eps_t.component_at(e)
        tri2 = comp_e == identity_map(comp_e.source)
        if not tri2:
            detail.append("counit at the free orbit is not the identity")
    except (AssertionError, InvalidInput) as exc:
        counit_ok = False
        tri2 = False
        detail.append(f"counit of T failed: {exc}")
    return AdjunctionReport(unit_ok, counit_ok, tri1, tri2, "; ".join(detail))


def is_objectwise_injective(eta: NatTrans) -> tuple[bool, tuple | None]:
    """Levelwise injectivity of every component; returns a witness on failure."""
    for h, comp in zip(eta.source.category.objects, eta.components):
        coll = comp.first_collision()
        if coll is not None:
            return False, (h, *coll)
    return True, None


@dataclass(frozen=True)
class ObjectwiseHomologyEntry:
    subgroup: Subgroup
    isomorphism: bool
    failing_degree: int | None
    source_group: str | None
    target_group: str | None


def is_objectwise_homology_iso(eta: NatTrans, up_to: int) -> list[ObjectwiseHomologyEntry]:
    """Induced-homology isomorphism verdict for every component."""
    out = []
    for h, comp in zip(eta.source.category.objects, eta.components):
        entry = ObjectwiseHomologyEntry(h, True, None, None, None)
        for rep in homology_map_reports(comp, up_to):
            if not rep.isomorphism:
                entry = ObjectwiseHomologyEntry(
                    h, False, rep.degree, str(rep.source_group), str(rep.target_group)
                )
                break
        out.append(entry)
    return out


def interval_product_diagram(diagram: OrbitDiagram) -> OrbitDiagram:
    """Objectwise product with the 1-simplex; morphisms act on the first factor."""
    cat = diagram.category
    dim = diagram.at[0].dim if diagram.at else 0
    interval = standard_simplex(1, dim)
    prods = [product(sp, interval) for sp in diagram.at]
    on = {}
    for (i, j), reps in cat.homs.items():
        maps = []
        for mor, base in zip(reps, diagram.on[(i, j)]):
            levels = []
            for k in range(dim + 1):
                ck = interval.counts[k]
                levels.append(
                    tuple(
                        prods[j].pair(k, base.levels[k][p // ck], p % ck)
                        for p in range(prods[i].space.counts[k])
                    )
                )
            maps.append(SimplicialMap(prods[i].space, prods[j].space, tuple(levels)))
        on[(i, j)] = maps
    return OrbitDiagram(cat, [p.space for p in prods], on)


@dataclass(frozen=True)
class CylinderComparison:
    """Componentwise comparison (A x Delta[1])/H -> (A/H) x Delta[1]."""

    transformation: NatTrans
    all_isomorphisms: bool


def cylinder_comparison(a: GSimplicialSet, family: SubgroupFamily) -> CylinderComparison:
    cyl = cylinder(a)
    src = orbit_diagram(cyl.gspace, family)
    tgt = interval_product_diagram(orbit_diagram(a, family))
    comps = []
    all_iso = True
    for h in src.category.objects:
        cmp_map, iso = cylinder_orbit_comparison(a, h)
        all_iso = all_iso and iso
        comps.append(cmp_map)
    return CylinderComparison(NatTrans(src, tgt, comps), all_iso)
