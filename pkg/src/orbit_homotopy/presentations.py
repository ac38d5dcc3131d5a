"""Edge-path fundamental group presentations and nontriviality certificates.

Generators are the nondegenerate edges outside a spanning tree of the
1-skeleton; every nondegenerate 2-simplex contributes the relator
(second vertex path) d2 * d0 * d1^-1 written in those generators.  Words are
tuples of nonzero ints: +k / -k for the k-th generator (1-based) and its
inverse.

Triviality is established by bounded, deterministic generator elimination
(a Tietze move budget), and nontriviality by an explicit homomorphism onto
a nontrivial subgroup of a finite target group.  Both directions re-verify.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import Disconnected, InvalidInput
from .groups import FiniteGroup
from .simplicial import TruncatedSimplicialSet, nondegenerate, vertex_components

Word = tuple[int, ...]


def free_reduce(word) -> Word:
    out: list[int] = []
    for x in word:
        if out and out[-1] == -x:
            out.pop()
        else:
            out.append(x)
    return tuple(out)


def cyclic_reduce(word) -> Word:
    w = list(free_reduce(word))
    while len(w) >= 2 and w[0] == -w[-1]:
        w = w[1:-1]
    return tuple(w)


def invert_word(word) -> Word:
    return tuple(-x for x in reversed(word))


def canonical_relator(word) -> Word:
    """Least rotation of the cyclically reduced word or its inverse."""
    w = cyclic_reduce(word)
    if not w:
        return ()
    best = None
    for cand in (w, invert_word(w)):
        for r in range(len(cand)):
            rot = cand[r:] + cand[:r]
            if best is None or rot < best:
                best = rot
    return best


@dataclass(frozen=True)
class Pi1Presentation:
    """Spanning-tree edge-path presentation of the fundamental group."""

    generator_edges: tuple[int, ...]
    relators: tuple[Word, ...]
    basepoint: int

    @property
    def num_generators(self) -> int:
        return len(self.generator_edges)

    def __post_init__(self):
        for rel in self.relators:
            for x in rel:
                if x == 0 or abs(x) > self.num_generators:
                    raise InvalidInput("relator mentions an unknown generator")


def pi1_presentation(space: TruncatedSimplicialSet, basepoint: int = 0) -> Pi1Presentation:
    """Edge-path presentation; requires a connected space and dim >= 2."""
    if space.dim < 2:
        raise InvalidInput("fundamental group presentations need dimension bound >= 2")
    if space.counts[0] == 0:
        raise Disconnected("the empty space has no fundamental group")
    comps = vertex_components(space)
    if max(comps) > 0:
        groups: dict[int, list[int]] = {}
        for v, c in enumerate(comps):
            groups.setdefault(c, []).append(v)
        raise Disconnected(f"space has {len(groups)} components: {sorted(groups.values())}")
    if not 0 <= basepoint < space.counts[0]:
        raise InvalidInput("basepoint out of range")

    edges = nondegenerate(space, 1)
    start = space.faces[1][1]
    end = space.faces[1][0]

    # breadth-first spanning tree over nondegenerate edges
    tree_edges: set[int] = set()
    visited = {basepoint}
    frontier = [basepoint]
    adj: dict[int, list[tuple[int, int]]] = {}
    for e in edges:
        adj.setdefault(start[e], []).append((end[e], e))
        adj.setdefault(end[e], []).append((start[e], e))
    while frontier:
        v = frontier.pop(0)
        for w, e in sorted(adj.get(v, [])):
            if w not in visited:
                visited.add(w)
                tree_edges.add(e)
                frontier.append(w)

    gen_edges = tuple(e for e in edges if e not in tree_edges)
    gen_index = {e: i + 1 for i, e in enumerate(gen_edges)}
    degenerate_edges = set(range(space.counts[1])) - set(edges)

    def edge_word(e: int) -> Word:
        if e in degenerate_edges or e in tree_edges:
            return ()
        return (gen_index[e],)

    relators = []
    if space.dim >= 2:
        for t in nondegenerate(space, 2):
            w = (
                edge_word(space.faces[2][2][t])
                + edge_word(space.faces[2][0][t])
                + invert_word(edge_word(space.faces[2][1][t]))
            )
            w = canonical_relator(w)
            if w:
                relators.append(w)
    return Pi1Presentation(gen_edges, tuple(relators), basepoint)


@dataclass(frozen=True)
class SimplificationResult:
    """Outcome of bounded generator elimination.

    ``survivors`` are indices (1-based) of the original generators still
    present; ``relators`` are words over the survivors after renumbering.
    ``eliminated`` records (generator, defining word) pairs in elimination
    order, each word written over the generator numbering current at that
    step, so images of eliminated generators can be reconstructed by
    evaluating the list in reverse.
    """

    survivors: tuple[int, ...]
    relators: tuple[Word, ...]
    trivialized: bool
    moves: int
    budget_exhausted: bool
    eliminated: tuple[tuple[int, Word], ...]


def simplify_presentation(pres: Pi1Presentation, budget: int = 10000) -> SimplificationResult:
    """Deterministic generator elimination with a move budget.

    A generator occurring exactly once in some relator is solved for and
    substituted everywhere; repeat until stable or out of budget.  Reaching
    zero generators proves the group trivial.
    """
    gens = list(range(1, pres.num_generators + 1))
    relators = [canonical_relator(r) for r in pres.relators]
    relators = sorted({r for r in relators if r})
    moves = 0
    eliminated: list[tuple[int, Word]] = []
    exhausted = False
    while True:
        if moves >= budget:
            exhausted = True
            break
        candidate = None
        for rel in sorted(relators, key=lambda r: (len(r), r)):
            once = [g for g in {abs(x) for x in rel} if sum(1 for x in rel if abs(x) == g) == 1]
            if once:
                total = {
                    g: sum(1 for r2 in relators for x in r2 if abs(x) == g) for g in once
                }
                g = min(once, key=lambda g: (total[g], g))
                candidate = (rel, g)
                break
        if candidate is None:
            break
        rel, g = candidate
        pos = next(i for i, x in enumerate(rel) if abs(x) == g)
        rest = rel[pos + 1 :] + rel[:pos]
        # rel = g * rest (after rotation); g = rest^-1, or g^-1 = rest when negative
        definition = invert_word(rest) if rel[pos] > 0 else rest
        new_relators = []
        for r2 in relators:
            if r2 == rel:
                continue
            out: list[int] = []
            for x in r2:
                if abs(x) == g:
                    out.extend(definition if x > 0 else invert_word(definition))
                else:
                    out.append(x)
            w = canonical_relator(out)
            if w:
                new_relators.append(w)
            moves += 1
        moves += 1
        eliminated.append((g, definition))
        gens.remove(g)
        relators = sorted(set(new_relators))
    # renumber survivors 1..m
    renum = {g: i + 1 for i, g in enumerate(gens)}
    out_relators = tuple(
        tuple((1 if x > 0 else -1) * renum[abs(x)] for x in r) for r in relators
    )
    return SimplificationResult(
        survivors=tuple(gens),
        relators=out_relators,
        trivialized=not gens,
        moves=moves,
        budget_exhausted=exhausted,
        eliminated=tuple(eliminated),
    )


def is_provably_trivial(pres: Pi1Presentation, budget: int = 10000) -> bool:
    return simplify_presentation(pres, budget).trivialized


@dataclass(frozen=True)
class HomCertificate:
    """A homomorphism with nontrivial image into a finite group.

    ``images[i]`` is the target element assigned to generator i+1 of the
    presentation the certificate was issued for.
    """

    target_name: str
    target: FiniteGroup
    images: tuple[int, ...]


def evaluate_word(group: FiniteGroup, images, word) -> int:
    acc = 0
    for x in word:
        g = images[abs(x) - 1]
        if x < 0:
            g = group.inv(g)
        acc = group.mul(acc, g)
    return acc


def verify_certificate(pres: Pi1Presentation, cert: HomCertificate) -> bool:
    """Re-check that the images satisfy all relators and are not all trivial."""
    if len(cert.images) != pres.num_generators:
        return False
    if all(g == 0 for g in cert.images):
        return False
    return all(
        evaluate_word(cert.target, cert.images, rel) == 0 for rel in pres.relators
    )


def _search_homomorphism(
    group: FiniteGroup, num_gens: int, relators, node_budget: int
) -> tuple[int, ...] | None:
    """Backtracking search for a not-everywhere-trivial relator-respecting assignment."""
    by_max_gen: dict[int, list[Word]] = {}
    for rel in relators:
        m = max(abs(x) for x in rel)
        by_max_gen.setdefault(m, []).append(rel)
    images = [0] * num_gens
    nodes = 0

    def extend(i: int) -> tuple[int, ...] | None:
        nonlocal nodes
        if i == num_gens:
            if any(images):
                return tuple(images)
            return None
        for g in range(group.order):
            nodes += 1
            if nodes > node_budget:
                return None
            images[i] = g
            if all(
                evaluate_word(group, images, rel) == 0
                for rel in by_max_gen.get(i + 1, ())
            ):
                found = extend(i + 1)
                if found is not None:
                    return found
        images[i] = 0
        return None

    return extend(0)


def pi1_nontrivial_certificate(
    pres: Pi1Presentation,
    targets: list[tuple[str, FiniteGroup]] | None = None,
    budget: int = 10000,
    node_budget: int = 2_000_000,
) -> HomCertificate | None:
    """Search finite targets for a homomorphism with nontrivial image.

    The presentation is first simplified (certificates transport back to the
    original generators), then each target is tried in order.  Returns None
    when every target is exhausted; the returned certificate re-verifies
    against the original presentation.
    """
    if targets is None:
        from .grouptable import default_targets

        targets = default_targets()
    simp = simplify_presentation(pres, budget)
    if simp.trivialized:
        return None
    m = len(simp.survivors)
    for name, group in targets:
        if group.order ** m > node_budget and m > 1:
            continue
        found = _search_homomorphism(group, m, simp.relators, node_budget)
        if found is None:
            continue
        images = _transport_images(pres, simp, group, found)
        cert = HomCertificate(name, group, images)
        if not verify_certificate(pres, cert):
            raise AssertionError("certificate failed re-verification")
        return cert
    return None


def _transport_images(
    pres: Pi1Presentation,
    simp: SimplificationResult,
    group: FiniteGroup,
    survivor_images: tuple[int, ...],
) -> tuple[int, ...]:
    """Extend survivor images to all original generators via the elimination log."""
    values: dict[int, int] = {}
    for g, img in zip(simp.survivors, survivor_images):
        values[g] = img

    def eval_word(word: Word) -> int:
        acc = 0
        for x in word:
            v = values[abs(x)]
            if x < 0:
                v = group.inv(v)
            acc = group.mul(acc, v)
        return acc

    for g, definition in reversed(simp.eliminated):
        values[g] = eval_word(definition)
    return tuple(values[i + 1] for i in range(pres.num_generators))
