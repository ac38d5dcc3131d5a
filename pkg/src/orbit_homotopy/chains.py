"""Normalized chain complexes and integral homology of truncated simplicial sets.

The normalized complex has one basis element per nondegenerate simplex; the
boundary is the alternating face sum with degenerate faces dropped.  Homology
is computed by Smith normal form, and induced maps on homology are compared
through explicit presentations of kernel-mod-image, so "is an isomorphism"
means the induced map itself, not just abstract group equality.

Degrees at the truncation bound are rejected: homology in degree k needs the
(k+1)-boundaries, so only k < dim is reliable.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import zlinalg
from .errors import InvalidInput, TruncationInsufficient
from .simplicial import SimplicialMap, TruncatedSimplicialSet, nondegenerate


@dataclass(frozen=True)
class ChainComplex:
    """Integer chain complex with explicit ranks.

    ``boundaries[k]`` maps degree-k chains to degree-(k-1) chains, stored as
    a ranks[k-1] x ranks[k] matrix; ``boundaries[0]`` is empty.
    """

    ranks: tuple[int, ...]
    boundaries: tuple[tuple[tuple[int, ...], ...], ...]

    def __post_init__(self):
        n = len(self.ranks) - 1
        if len(self.boundaries) != n + 1:
            raise InvalidInput("one boundary matrix per positive degree")
        for k in range(1, n + 1):
            mat = self.boundaries[k]
            if len(mat) != self.ranks[k - 1] or any(len(r) != self.ranks[k] for r in mat):
                raise InvalidInput(f"boundary matrix shape mismatch in degree {k}")
        for k in range(2, n + 1):
            prod = zlinalg.matmul(self.matrix(k - 1), self.matrix(k))
            if not zlinalg.is_zero(prod):
                raise InvalidInput(f"boundary composite nonzero in degree {k}")

    @property
    def top_degree(self) -> int:
        return len(self.ranks) - 1

    def matrix(self, k: int) -> zlinalg.Matrix:
        """Boundary in degree k as a mutable matrix, shaped even when empty."""
        if not 1 <= k <= self.top_degree:
            raise InvalidInput(f"no boundary in degree {k}")
        if self.ranks[k - 1] == 0:
            return []
        if self.ranks[k] == 0:
            return [[] for _ in range(self.ranks[k - 1])]
        return [list(r) for r in self.boundaries[k]]


@dataclass(frozen=True)
class HomologyGroup:
    """Finitely generated abelian group as Betti rank plus torsion chain."""

    betti: int
    torsion: tuple[int, ...]

    def __post_init__(self):
        if self.betti < 0:
            raise InvalidInput("negative Betti number")
        for a, b in zip(self.torsion, self.torsion[1:]):
            if b % a:
                raise InvalidInput("torsion coefficients must divide in order")
        if any(t < 2 for t in self.torsion):
            raise InvalidInput("torsion coefficients must be at least 2")

    def is_trivial(self) -> bool:
        return self.betti == 0 and not self.torsion

    def __str__(self):
        parts = ["Z"] * self.betti + [f"Z/{t}" for t in self.torsion]
        return " + ".join(parts) if parts else "0"


@dataclass(frozen=True)
class NormalizedChains:
    complex: ChainComplex
    bases: tuple[tuple[int, ...], ...]


def normalized_chains(space: TruncatedSimplicialSet) -> NormalizedChains:
    """Chains on nondegenerate simplices with degenerate faces sent to zero."""
    bases = tuple(nondegenerate(space, k) for k in range(space.dim + 1))
    index = [{x: i for i, x in enumerate(b)} for b in bases]
    ranks = tuple(len(b) for b in bases)
    boundaries: list = [()]
    for k in range(1, space.dim + 1):
        mat = [[0] * ranks[k] for _ in range(ranks[k - 1])]
        for col, x in enumerate(bases[k]):
            for i in range(k + 1):
                y = space.faces[k][i][x]
                row = index[k - 1].get(y)
                if row is not None:
                    mat[row][col] += -1 if i % 2 else 1
        boundaries.append(tuple(tuple(r) for r in mat))
    return NormalizedChains(ChainComplex(ranks, tuple(boundaries)), bases)


def _kernel(mat: zlinalg.Matrix, ncols: int) -> list[list[int]]:
    if ncols == 0:
        return []
    if not mat or not mat[0]:
        return [[1 if i == j else 0 for i in range(ncols)] for j in range(ncols)]
    return zlinalg.kernel_basis(mat)


def _columns(vectors: list[list[int]]) -> zlinalg.Matrix:
    if not vectors:
        return []
    n = len(vectors[0])
    return [[vec[i] for vec in vectors] for i in range(n)]


@dataclass(frozen=True)
class HomologyPresentation:
    """H_k = Z^generators modulo the columns of ``relations``."""

    degree: int
    cycle_basis: tuple[tuple[int, ...], ...]
    relations: tuple[tuple[int, ...], ...]

    @property
    def generators(self) -> int:
        return len(self.cycle_basis)

    def group(self) -> HomologyGroup:
        rel = [list(r) for r in self.relations]
        if self.generators == 0:
            return HomologyGroup(0, ())
        if not rel or not rel[0]:
            return HomologyGroup(self.generators, ())
        free, torsion = zlinalg.cokernel_invariants(rel, self.generators)
        return HomologyGroup(free, tuple(torsion))


def homology_presentation(chains: NormalizedChains, k: int, dim: int) -> HomologyPresentation:
    if k < 0:
        raise InvalidInput("negative degree")
    if k >= dim:
        raise TruncationInsufficient(
            f"homology in degree {k} needs dimension bound > {k}"
        )
    cx = chains.complex
    nk = cx.ranks[k]
    bd_in = cx.matrix(k + 1)
    if k == 0:
        cycles = [[1 if i == j else 0 for i in range(nk)] for j in range(nk)]
    else:
        cycles = _kernel(cx.matrix(k), nk)
    kmat = _columns(cycles)
    if not cycles:
        return HomologyPresentation(k, (), ())
    if cx.ranks[k + 1] == 0:
        rel: zlinalg.Matrix = [[] for _ in cycles]
    else:
        sol = zlinalg.solve(kmat, bd_in) if kmat else None
        if sol is None:
            raise AssertionError("boundaries do not lie in the cycle lattice")
        rel = sol
    return HomologyPresentation(
        k,
        tuple(tuple(v) for v in cycles),
        tuple(tuple(r) for r in rel),
    )


def homology(space: TruncatedSimplicialSet, k: int) -> HomologyGroup:
    """Integral homology H_k via Smith normal form (requires k < dim)."""
    return homology_presentation(normalized_chains(space), k, space.dim).group()


def reduced_homology(space: TruncatedSimplicialSet, k: int) -> HomologyGroup:
    """H~_k: in degree zero one Z summand is removed per convention."""
    h = homology(space, k)
    if k == 0:
        if h.betti == 0 and not h.torsion:
            return h  # empty space; nothing to reduce
        return HomologyGroup(h.betti - 1, h.torsion)
    return h


def chain_map(f: SimplicialMap) -> tuple[NormalizedChains, NormalizedChains, list[zlinalg.Matrix]]:
    """Induced map on normalized chains (degenerate images go to zero)."""
    src = normalized_chains(f.source)
    tgt = normalized_chains(f.target)
    tgt_index = [{x: i for i, x in enumerate(b)} for b in tgt.bases]
    mats: list[zlinalg.Matrix] = []
    for k in range(f.source.dim + 1):
        mat = [[0] * len(src.bases[k]) for _ in range(len(tgt.bases[k]))]
        for col, x in enumerate(src.bases[k]):
            row = tgt_index[k].get(f.levels[k][x])
            if row is not None:
                mat[row][col] = 1
        mats.append(mat)
    return src, tgt, mats


@dataclass(frozen=True)
class HomologyMapReport:
    """Induced map H_k(source) -> H_k(target) on explicit presentations."""

    degree: int
    source_group: HomologyGroup
    target_group: HomologyGroup
    matrix: tuple[tuple[int, ...], ...]
    injective: bool
    surjective: bool

    @property
    def isomorphism(self) -> bool:
        return self.injective and self.surjective


def _presentation_map(
    src: HomologyPresentation, tgt: HomologyPresentation, fk: zlinalg.Matrix
) -> zlinalg.Matrix:
    """Express the chain map on cycle bases: a tgt.generators x src.generators matrix."""
    if tgt.generators == 0:
        return []
    if src.generators == 0:
        return [[] for _ in range(tgt.generators)]
    k_src = _columns([list(v) for v in src.cycle_basis])
    k_tgt = _columns([list(v) for v in tgt.cycle_basis])
    image = zlinalg.matmul(fk, k_src)
    sol = zlinalg.solve(k_tgt, image)
    if sol is None:
        raise AssertionError("chain map does not preserve cycles")
    return sol


def induced_homology_map(f: SimplicialMap, k: int) -> HomologyMapReport:
    """The induced map on H_k together with injectivity and surjectivity."""
    return homology_map_reports(f, k)[k]


def homology_map_reports(f: SimplicialMap, up_to: int) -> list[HomologyMapReport]:
    """Reports for every degree 0..up_to, sharing one chain computation.

    Decisions are exact: surjectivity asks whether the map plus the target
    relations span the target generators over Z; injectivity asks whether
    every cycle sent into the target's boundaries already lies in the
    source's boundaries.
    """
    dim = f.source.dim
    if up_to >= dim:
        raise TruncationInsufficient(
            f"homology in degree {up_to} needs dimension bound > {up_to}"
        )
    src_ch, tgt_ch, mats = chain_map(f)
    return [
        _homology_map_report(src_ch, tgt_ch, mats, k, dim) for k in range(up_to + 1)
    ]


def _homology_map_report(
    src_ch: NormalizedChains,
    tgt_ch: NormalizedChains,
    mats: list[zlinalg.Matrix],
    k: int,
    dim: int,
) -> HomologyMapReport:
    src = homology_presentation(src_ch, k, dim)
    tgt = homology_presentation(tgt_ch, k, dim)
    fmat = _presentation_map(src, tgt, mats[k])
    src_group = src.group()
    tgt_group = tgt.group()

    m_t, m_s = tgt.generators, src.generators
    rel_t = [list(r) for r in tgt.relations]
    rel_s = [list(r) for r in src.relations]

    # surjectivity: [F | R_target] must have full cokernel-free rank with all
    # invariant factors 1
    if m_t == 0:
        surjective = True
    else:
        block = [list(fmat[i]) + list(rel_t[i]) for i in range(m_t)]
        if not block[0]:
            surjective = False
        else:
            facs = zlinalg.invariant_factors(block)
            surjective = len(facs) == m_t and all(d == 1 for d in facs)

    # injectivity: solutions x of F x in im(R_target) must lie in im(R_source)
    if m_s == 0:
        injective = True
    else:
        width_rel = len(rel_t[0]) if m_t and rel_t and rel_t[0] else 0
        if m_t == 0:
            lattice = [[1 if i == j else 0 for j in range(m_s)] for i in range(m_s)]
            xs = [[row[j] for row in lattice] for j in range(m_s)]
        else:
            block = [list(fmat[i]) + [-c for c in rel_t[i]] for i in range(m_t)] if width_rel else [list(fmat[i]) for i in range(m_t)]
            ker = zlinalg.kernel_basis(block) if block and block[0] else [
                [1 if i == j else 0 for i in range(m_s + width_rel)] for j in range(m_s + width_rel)
            ]
            xs = [vec[:m_s] for vec in ker]
        injective = True
        if xs:
            rhs = _columns(xs)
            if not rel_s or not rel_s[0]:
                injective = zlinalg.is_zero(rhs)
            else:
                injective = zlinalg.solve(rel_s, rhs) is not None
    return HomologyMapReport(
        k,
        src_group,
        tgt_group,
        tuple(tuple(r) for r in fmat),
        injective,
        surjective,
    )


def is_homology_iso(f: SimplicialMap, up_to: int) -> bool:
    """True when the induced map is an isomorphism in all degrees <= up_to."""
    return all(r.isomorphism for r in homology_map_reports(f, up_to))
