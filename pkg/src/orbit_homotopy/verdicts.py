"""Three-valued weak-equivalence verdicts with machine-checkable evidence.

Weak equivalence of simplicial sets is not decidable from finite data, so a
verdict is one of CertifiedEquivalence (with an isomorphism, a homotopy
equivalence certificate, or simply-connected homology evidence),
CertifiedNonEquivalence (a homology obstruction in an explicit degree, or a
fundamental-group quotient certificate), or Inconclusive with an honest
explanation.  Per-subgroup reports apply the same pipeline to orbit and
fixed-point maps, and the fibrancy report checks the horn-filling necessary
condition on every orbit space.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

from .chains import HomologyGroup, homology_map_reports
from .errors import InvalidInput, TruncationInsufficient
from .groups import Subgroup, SubgroupFamily
from .gspaces import (
    GHomotopy,
    GMap,
    GSimplicialSet,
    fixed_map,
    g_compose,
    g_identity,
    is_G_homotopy,
    orbit_map,
    orbit_space,
)
from .presentations import (
    HomCertificate,
    pi1_nontrivial_certificate,
    pi1_presentation,
    simplify_presentation,
)
from .simplicial import (
    HornFailure,
    SimplicialMap,
    TruncatedSimplicialSet,
    horn_failures,
    subcomplex_closure,
    vertex_components,
)


class VerdictStatus(enum.Enum):
    CERTIFIED_EQUIVALENCE = "CertifiedEquivalence"
    CERTIFIED_NON_EQUIVALENCE = "CertifiedNonEquivalence"
    INCONCLUSIVE = "Inconclusive"


@dataclass(frozen=True)
class EquivalenceVerdict:
    status: VerdictStatus
    evidence: dict

    def is_equivalence(self) -> bool:
        return self.status is VerdictStatus.CERTIFIED_EQUIVALENCE

    def is_non_equivalence(self) -> bool:
        return self.status is VerdictStatus.CERTIFIED_NON_EQUIVALENCE

    def __str__(self):
        return f"{self.status.value}: {self.evidence.get('kind', '?')}"


@dataclass(frozen=True)
class HomotopyEquivalenceCertificate:
    """Inverse-up-to-homotopy data for a plain simplicial map.

    ``back`` maps target to source; the two homotopies contract back-then-
    forth composites to the identities.  Checked through the trivial-group
    machinery so endpoint conventions match the cylinder ends.
    """

    back: SimplicialMap
    source_homotopy: SimplicialMap
    target_homotopy: SimplicialMap


def _group_dict(h: HomologyGroup) -> dict:
    return {"betti": h.betti, "torsion": list(h.torsion)}


def _component_split(space: TruncatedSimplicialSet):
    comps = vertex_components(space)
    n_comp = max(comps) + 1 if comps else 0
    pieces = []
    for c in range(n_comp):
        seeds = [(0, v) for v, cv in enumerate(comps) if cv == c]
        pieces.append(subcomplex_closure(space, seeds))
    return comps, pieces


def _restrict_to_components(f: SimplicialMap):
    """Split f into maps between matched components; H0-iso guarantees matching."""
    src_comps, src_pieces = _component_split(f.source)
    tgt_comps, tgt_pieces = _component_split(f.target)
    pairs = []
    for (sub, incl) in src_pieces:
        v0 = incl.levels[0][0]
        c_tgt = tgt_comps[f.levels[0][v0]]
        tsub, tincl = tgt_pieces[c_tgt]
        back = [
            {x: i for i, x in enumerate(tincl.levels[k])}
            for k in range(f.source.dim + 1)
        ]
        levels = tuple(
            tuple(back[k][f.levels[k][x]] for x in incl.levels[k])
            for k in range(f.source.dim + 1)
        )
        pairs.append(SimplicialMap(sub, tsub, levels))
    return pairs


def verify_plain_homotopy_equivalence(
    f: SimplicialMap, cert: HomotopyEquivalenceCertificate
) -> bool:
    """Check a homotopy-equivalence certificate for a plain simplicial map."""
    from .groups import FiniteGroup
    from .gspaces import trivial_gspace

    triv = FiniteGroup.trivial()
    a = trivial_gspace(triv, f.source)
    b = trivial_gspace(triv, f.target)
    try:
        gf = GMap(a, b, f)
        gb = GMap(b, a, cert.back)
    except InvalidInput:
        return False
    round_a = g_compose(gf, gb)
    round_b = g_compose(gb, gf)
    ok_a = is_G_homotopy(cert.source_homotopy, round_a, g_identity(a)) or is_G_homotopy(
        cert.source_homotopy, g_identity(a), round_a
    )
    ok_b = is_G_homotopy(cert.target_homotopy, round_b, g_identity(b)) or is_G_homotopy(
        cert.target_homotopy, g_identity(b), round_b
    )
    return bool(ok_a) and bool(ok_b)


def weq_verdict(
    f: SimplicialMap,
    up_to: int,
    certificate: HomotopyEquivalenceCertificate | None = None,
    budget: int = 10000,
) -> EquivalenceVerdict:
    """Decide weak equivalence as far as the finite evidence allows.

    Pipeline: isomorphism shortcut; optional homotopy-equivalence
    certificate; induced integral homology in degrees <= up_to (any failure
    is a certified non-equivalence); fundamental-group analysis per matched
    component (bounded triviality proofs upgrade to the simply-connected
    homology criterion, a quotient certificate against a provably trivial
    opposite side certifies non-equivalence); otherwise inconclusive.
    """
    dim = f.source.dim
    if up_to >= dim:
        raise TruncationInsufficient(
            f"verdicts up to degree {up_to} need dimension bound > {up_to}"
        )
    if f.is_isomorphism():
        return EquivalenceVerdict(
            VerdictStatus.CERTIFIED_EQUIVALENCE, {"kind": "isomorphism"}
        )
    if certificate is not None and verify_plain_homotopy_equivalence(f, certificate):
        return EquivalenceVerdict(
            VerdictStatus.CERTIFIED_EQUIVALENCE,
            {"kind": "homotopy-equivalence-certificate"},
        )

    reports = homology_map_reports(f, up_to)
    for rep in reports:
        if not rep.isomorphism:
            return EquivalenceVerdict(
                VerdictStatus.CERTIFIED_NON_EQUIVALENCE,
                {
                    "kind": "homology",
                    "degree": rep.degree,
                    "source": _group_dict(rep.source_group),
                    "target": _group_dict(rep.target_group),
                    "injective": rep.injective,
                    "surjective": rep.surjective,
                },
            )

    if dim < 2:
        return EquivalenceVerdict(
            VerdictStatus.INCONCLUSIVE,
            {
                "kind": "homology-only",
                "explanation": "homology agrees through the checked degrees but the "
                "truncation is too low for fundamental group analysis",
                "degrees_checked": up_to,
            },
        )

    pieces = _restrict_to_components(f)
    trivial_flags = []
    pi1_data = []
    for piece in pieces:
        sp = simplify_presentation(pi1_presentation(piece.source), budget)
        tp = simplify_presentation(pi1_presentation(piece.target), budget)
        trivial_flags.append((sp.trivialized, tp.trivialized))
        pi1_data.append((piece, sp, tp))

    if all(s and t for s, t in trivial_flags) and up_to >= 2:
        return EquivalenceVerdict(
            VerdictStatus.CERTIFIED_EQUIVALENCE,
            {
                "kind": "simply-connected-homology",
                "degrees_checked": up_to,
                "components": len(pieces),
            },
        )

    for idx, (piece, sp, tp) in enumerate(pi1_data):
        src_trivial, tgt_trivial = trivial_flags[idx]
        if src_trivial == tgt_trivial:
            continue
        nontrivial_side = "target" if src_trivial else "source"
        space = piece.target if src_trivial else piece.source
        cert = pi1_nontrivial_certificate(pi1_presentation(space), budget=budget)
        if cert is not None:
            return EquivalenceVerdict(
                VerdictStatus.CERTIFIED_NON_EQUIVALENCE,
                {
                    "kind": "fundamental-group",
                    "component": idx,
                    "nontrivial_side": nontrivial_side,
                    "certificate": {
                        "target": cert.target_name,
                        "target_order": cert.target.order,
                        "images": list(cert.images),
                    },
                },
            )

    return EquivalenceVerdict(
        VerdictStatus.INCONCLUSIVE,
        {
            "kind": "undetermined-fundamental-group",
            "explanation": "homology agrees through the checked degrees but "
            "fundamental-group triviality could not be settled either way "
            "within the move budget",
            "degrees_checked": up_to,
        },
    )


def verify_homotopy_equivalence(
    f: GMap, g: GMap, h1: GHomotopy, h2: GHomotopy
) -> bool:
    """True when h1 certifies g after f homotopic to the identity of A and h2
    certifies f after g homotopic to the identity of B (either orientation)."""
    if f.source != g.target or f.target != g.source:
        raise InvalidInput("maps are not mutually inverse in shape")
    round_a = g_compose(f, g)
    round_b = g_compose(g, f)
    ida = g_identity(f.source)
    idb = g_identity(f.target)
    ok1 = {h1.f, h1.g} == {round_a, ida}
    ok2 = {h2.f, h2.g} == {round_b, idb}
    return ok1 and ok2


@dataclass(frozen=True)
class PerSubgroupReport:
    """One verdict per subgroup of the family, in family order."""

    kind: str
    entries: tuple[tuple[Subgroup, EquivalenceVerdict], ...]

    def verdict_for(self, h: Subgroup) -> EquivalenceVerdict:
        for k, v in self.entries:
            if k == h:
                return v
        raise KeyError(h)

    def all_equivalence(self) -> bool:
        return all(v.is_equivalence() for _, v in self.entries)

    def non_equivalences(self) -> list[Subgroup]:
        return [h for h, v in self.entries if v.is_non_equivalence()]


def orbit_weq_report(f: GMap, family: SubgroupFamily, up_to: int) -> PerSubgroupReport:
    """weq_verdict of the induced orbit map A/H -> B/H for each H in the family."""
    entries = []
    for h in family:
        entries.append((h, weq_verdict(orbit_map(f, h), up_to)))
    return PerSubgroupReport("orbit", tuple(entries))


def fixed_weq_report(f: GMap, family: SubgroupFamily, up_to: int) -> PerSubgroupReport:
    """weq_verdict of the restricted fixed-point map A^H -> B^H for each H."""
    entries = []
    for h in family:
        entries.append((h, weq_verdict(fixed_map(f, h), up_to)))
    return PerSubgroupReport("fixed", tuple(entries))


@dataclass(frozen=True)
class KanConditionReport:
    """Horn-filling necessary condition for fibrancy, per subgroup orbit space.

    A failure in some A/H certifies that A is not fibrant in the orbit
    structure; an empty report is only a necessary condition passing, never
    a fibrancy certificate.
    """

    entries: tuple[tuple[Subgroup, tuple[HornFailure, ...]], ...]

    @property
    def certified_non_fibrant(self) -> bool:
        return any(fails for _, fails in self.entries)

    def failures_for(self, h: Subgroup) -> tuple[HornFailure, ...]:
        for k, v in self.entries:
            if k == h:
                return v
        raise KeyError(h)


def kan_condition_report(
    a: GSimplicialSet, family: SubgroupFamily, up_to_dim: int = 2
) -> KanConditionReport:
    entries = []
    for h in family:
        space = orbit_space(a, h).space
        entries.append((h, tuple(horn_failures(space, up_to_dim))))
    return KanConditionReport(tuple(entries))
