"""Towers of shifted homology rings over manifold filtrations of classifying spaces.

A :class:`Tower` is a finite inverse system ``R_N -> ... -> R_{n+1} -> R_n``
of graded rings. Structure maps come from umkehr maps ``f_! = PD o f^* o PD^-1``
of catalog inclusions, which are ring maps for the intersection product and
preserve shifted degree.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping

from . import linalg
from .catalog import (
    ComponentFacts,
    HomologyClass,
    ManifoldData,
    adjoint_o2_components,
    cpn,
    fiber_monoid,
    grassmannian2,
)
from .errors import DegreeBoundError, PresentationError, StropsError
from .graded_algebra import GradedElement, Monomial, RingMap, RingPresentation
from .steenrod import right_action, wu_surjectivity_test
from .string_product import intersection_ring, string_ring, trivial_model

Window = tuple[int, int]


# -- catalog maps and umkehr ------------------------------------------------------


@dataclass(frozen=True, eq=False)
class CatalogMap:
    """A map ``source -> target`` of catalog manifolds, known by its pullback on cohomology."""

    name: str
    source: ManifoldData
    target: ManifoldData
    pullback: RingMap

    def __post_init__(self):
        bad = self.pullback.relation_failures()
        if bad:
            raise PresentationError(f"{self.name}: pullback does not respect {bad}")


def cpn_inclusion(n: int) -> CatalogMap:
    """CP^n -> CP^{n+1}; x pulls back to x."""
    src, tgt = cpn(n), cpn(n + 1)
    return CatalogMap(f"cp{n}->cp{n + 1}", src, tgt, RingMap(tgt.cohomology, src.cohomology, {"x": "x"}))


def gr_inclusion(n: int) -> CatalogMap:
    """Gr_{2,n} -> Gr_{2,n+1}; the tautological bundle restricts, so w_i pulls back to w_i."""
    src, tgt = grassmannian2(n), grassmannian2(n + 1)
    images = {"w1": "w1", "w2": "w2"}
    return CatalogMap(f"gr2_{n}->gr2_{n + 1}", src, tgt, RingMap(tgt.cohomology, src.cohomology, images))


def identity(M: ManifoldData) -> CatalogMap:
    return CatalogMap(f"id_{M.name}", M, M, RingMap(M.cohomology, M.cohomology, dict(zip(M.cohomology.names, M.cohomology.names))))


def umkehr(f: CatalogMap, x: HomologyClass) -> HomologyClass:
    """``f_!(x) = PD_source(f^*(PD_target^-1(x)))``."""
    if x.space != f.target.name:
        raise StropsError(f"{f.name} acts on classes of {f.target.name}, got one of {x.space}")
    y = f.target.poincare_dual(x, "hom->coh")
    pulled = f.pullback(y)
    k = x.degree - f.target.dim + f.source.dim
    if not pulled:
        basis = f.source.cohomology.basis_in_degree(f.source.dim - k) if k <= f.source.dim else []
        return HomologyClass(f.source.name, k, (0,) * len(basis))
    return f.source.poincare_dual(pulled, "coh->hom")


def umkehr_ring_map(f: CatalogMap) -> RingMap:
    """``f_!`` as a ring map of intersection rings (shifted degrees are preserved)."""
    src, tgt = intersection_ring(f.source), intersection_ring(f.target)
    images = {
        name: src.from_cohomology(f.pullback(tgt.to_cohomology(tgt.ring.gen(name))))
        for name in tgt.ring.names
    }
    return RingMap(tgt.ring, src.ring, images)


# -- towers ----------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class TowerLevel:
    """One level; ``shift`` is the base dimension d with HH_k = H_{k+d}."""

    n: int
    ring: RingPresentation
    sq1t_table: Mapping[str, str] | None = None
    shift: int | None = None


@dataclass(frozen=True, eq=False)
class Tower:
    """Levels indexed by consecutive n; ``maps[n]`` goes from level n+1 to level n.

    ``stable_depth[n]`` records that ``maps[n]`` is an isomorphism in every
    degree ``k >= -stable_depth[n]`` (``None``: in every degree).
    """

    name: str
    levels: tuple[TowerLevel, ...]
    maps: Mapping[int, RingMap]
    stable_depth: Mapping[int, int | None] = field(default_factory=dict)

    def __post_init__(self):
        ns = [lv.n for lv in self.levels]
        if not ns or ns != list(range(ns[0], ns[0] + len(ns))):
            raise PresentationError(f"tower levels must be consecutive, got {ns}")
        if sorted(self.maps) != ns[:-1]:
            raise PresentationError(f"tower needs maps for levels {ns[:-1]}, got {sorted(self.maps)}")
        for n, f in self.maps.items():
            if f.source != self.level(n + 1).ring:
                raise PresentationError(f"map {n} does not start at level {n + 1}")
            if f.target != self.level(n).ring:
                raise PresentationError(f"map {n} does not end at level {n}")
            bad = f.relation_failures()
            if bad:
                raise PresentationError(f"map {n + 1}->{n} is not well defined: {bad}")
        depths = [self.stable_depth.get(n) for n in ns[:-1]]
        finite = [d for d in depths if d is not None]
        if finite != sorted(finite):
            raise PresentationError("stability depths must be non-decreasing in n")

    @property
    def indices(self) -> list[int]:
        return [lv.n for lv in self.levels]

    def level(self, n: int) -> TowerLevel:
        for lv in self.levels:
            if lv.n == n:
                return lv
        raise KeyError(f"tower {self.name} has no level {n}")

    def map_matrix(self, n: int, k: int) -> list[list[int]]:
        """Matrix of ``maps[n]`` in degree k: rows = target basis, columns = source basis."""
        f = self.maps[n]
        src = f.source.basis_in_degree(k)
        tgt = f.target.basis_in_degree(k)
        cols = [f(f.source.monomial(m)).coordinates(tgt) for m in src]
        return [[cols[j][i] for j in range(len(src))] for i in range(len(tgt))]

    def is_iso_in_degree(self, n: int, k: int) -> bool:
        f = self.maps[n]
        src = f.source.basis_in_degree(k)
        tgt = f.target.basis_in_degree(k)
        if len(src) != len(tgt):
            return False
        if not src:
            return True
        try:
            linalg.inverse(self.map_matrix(n, k), f.source.coefficients.p)
        except linalg.SingularMatrixError:
            return False
        return True

    def is_surjective_in_degree(self, n: int, k: int) -> bool:
        tgt = self.maps[n].target.basis_in_degree(k)
        if not tgt:
            return True
        m = self.map_matrix(n, k)
        p = self.maps[n].source.coefficients.p
        divisors = linalg.elementary_divisors(m, p)
        return len(divisors) == len(tgt) and all(d == 1 for d in divisors)

    def homomorphism_failures(self, window: Window) -> list[str]:
        """Basis pairs within ``window`` where a structure map fails to be multiplicative."""
        out = []
        lo, hi = window
        for n, f in sorted(self.maps.items()):
            R = f.source
            elems = [e for k in range(lo, hi + 1) for e in _basis_elements(R, k)]
            for a in elems:
                fa = f(a)
                for b in elems:
                    if f(a * b) != fa * f(b):
                        out.append(f"map {n + 1}->{n}: ({a})*({b})")
            if f(R.one()) != f.target.one():
                out.append(f"map {n + 1}->{n} does not preserve the unit")
        return out


def _basis_elements(R: RingPresentation, k: int) -> list[GradedElement]:
    try:
        return R.basis_elements(k)
    except DegreeBoundError:
        return []


def s1_tower(N: int) -> Tower:
    """Levels n = 1..N: ``Lambda(t) (x) Z[c]/c^{n+1}``, |t| = 1, |c| = -2.

    Each level is computed as the string ring of ``CP^n x S^1``; the maps are the
    umkehr maps of ``CP^n -> CP^{n+1}`` tensored with the identity of ``H_*(S^1)``.
    """
    if N < 1:
        raise PresentationError(f"s1_tower needs N >= 1, got {N}")
    circle = fiber_monoid("circle")
    rings = {n: string_ring(trivial_model(cpn(n), circle)).ring for n in range(1, N + 1)}
    maps = {}
    for n in range(1, N):
        base = umkehr_ring_map(cpn_inclusion(n))
        images = {name: rings[n].element(_pad(base.images[i].terms, 1)) for i, name in enumerate(base.source.names)}
        images["t"] = rings[n].gen("t")
        maps[n] = RingMap(rings[n + 1], rings[n], images)
    levels = tuple(TowerLevel(n, rings[n], shift=2 * n) for n in range(1, N + 1))
    return Tower("BS1", levels, maps, {n: 2 * n for n in range(1, N)})


def _pad(terms: Mapping[Monomial, int], extra: int) -> dict[Monomial, int]:
    return {m + (0,) * extra: c for m, c in terms.items()}


def constant_tower(ring: RingPresentation, levels: int, start: int = 1) -> Tower:
    ident = {name: name for name in ring.names}
    maps = {n: RingMap(ring, ring, ident) for n in range(start, start + levels - 1)}
    lv = tuple(TowerLevel(n, ring) for n in range(start, start + levels))
    return Tower("constant", lv, maps, {n: None for n in maps})


# -- inverse limits ----------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class LimitRing:
    """Degreewise inverse limit of a tower, truncated to a window.

    All degrees of the window are stable from level ``level`` on, so that
    level's ring computes the limit there; products falling below the window
    are truncated.
    """

    ring: RingPresentation
    window: Window
    level: int
    stable_from: Mapping[int, int]

    def basis(self, k: int) -> list[Monomial]:
        lo, hi = self.window
        if not lo <= k <= hi:
            return []
        return _basis_monomials(self.ring, k)

    def all_basis(self) -> dict[int, list[Monomial]]:
        lo, hi = self.window
        return {k: b for k in range(lo, hi + 1) if (b := self.basis(k))}

    def dims(self) -> dict[int, int]:
        lo, hi = self.window
        return {k: len(self.basis(k)) for k in range(lo, hi + 1)}

    def truncate(self, x: GradedElement) -> GradedElement:
        lo, hi = self.window
        return self.ring.element({m: c for m, c in x.terms.items() if lo <= self.ring.degree(m) <= hi})

    def product(self, a: GradedElement, b: GradedElement) -> GradedElement:
        return self.truncate(self.ring(a) * self.ring(b))

    def monomial(self, name: str) -> GradedElement:
        return self.ring.parse(name)


def _basis_monomials(R: RingPresentation, k: int) -> list[Monomial]:
    try:
        return R.basis_in_degree(k)
    except DegreeBoundError:
        return []


def tower_limit(tower: Tower, window: Window) -> LimitRing:
    lo, hi = window
    if lo > hi:
        raise ValueError(f"empty degree window {window}")
    ns = tower.indices
    stable_from: dict[int, int] = {}
    for k in range(lo, hi + 1):
        if len(ns) == 1:
            stable_from[k] = ns[0]
            continue
        # smallest n < N such that every map from level n on is an iso in degree k
        start = None
        for n in reversed(ns[:-1]):
            if tower.is_iso_in_degree(n, k):
                start = n
            else:
                break
        if start is None:
            need = _required_level(tower, k)
            raise StropsError(
                f"degree {k} has not stabilized within levels {ns[0]}..{ns[-1]}"
                + (f"; need levels up to at least {need}" if need else "")
            )
        stable_from[k] = start
    level = max(stable_from.values())
    return LimitRing(tower.level(level).ring, window, level, stable_from)


def _required_level(tower: Tower, k: int) -> int | None:
    depths = [d for d in tower.stable_depth.values() if d is not None]
    if not depths:
        return None
    # depth grows linearly in the catalog towers; extrapolate from the last two maps
    ns = sorted(n for n, d in tower.stable_depth.items() if d is not None)
    if len(ns) < 2:
        return None
    step = tower.stable_depth[ns[-1]] - tower.stable_depth[ns[-2]]
    if step <= 0:
        return None
    n = ns[-1]
    depth = tower.stable_depth[n]
    while -depth > k:
        n += 1
        depth += step
    return n + 1


# -- the O(2) comparison ------------------------------------------------------------


@dataclass(frozen=True)
class LevelComparison:
    n: int
    trivial_h1_dim: int
    trivial_sq1t_rank: int
    adjoint_h1_dim: int
    adjoint_sq1t_injective: bool | None
    adjoint_reason: str
    trivial_map_rank: int | None = None
    adjoint_map_rank: int | None = None

    @property
    def trivial_all_zero(self) -> bool:
        return self.trivial_sq1t_rank == 0


@dataclass(frozen=True)
class InequivalenceCertificate:
    invariant: str
    levels: tuple[LevelComparison, ...]
    witness_levels: tuple[int, ...]
    h1_maps_iso: bool
    inequivalent: bool

    def summary(self) -> str:
        if not self.inequivalent:
            return f"no inequivalence established via {self.invariant}"
        ws = ", ".join(map(str, self.witness_levels))
        return (
            f"towers inequivalent: {self.invariant} vanishes on the trivial side and is "
            f"injective on the adjoint side at levels {ws}; all H_1 tower maps are isomorphisms"
        )


def trivial_o2_level(n: int):
    """String ring of ``Gr_{2,n} x O(2)`` over F2 with the -TM-twisted duality context."""
    G = grassmannian2(n)
    S = string_ring(trivial_model(G, fiber_monoid("o2")))
    return S, S.duality_context(G.negative_tangent_twist())


def _rank_of_images(images: list[GradedElement], ring: RingPresentation, k: int) -> int:
    basis = ring.basis_in_degree(k)
    if not basis or not images:
        return 0
    return linalg.rank([x.coordinates(basis) for x in images], ring.coefficients.p)


def o2_tower(N: int) -> Tower:
    """Levels n = 3..N: ``HH_*(Gr_{2,n} x O(2); F2)`` with right Sq^1_t on HH_1 recorded.

    Maps are the umkehr maps of ``Gr_{2,n} -> Gr_{2,n+1}`` tensored with the
    identity of ``H_*(O(2))``.
    """
    if N < 3:
        raise PresentationError(f"o2_tower needs N >= 3, got {N}")
    strings = {}
    levels = []
    for n in range(3, N + 1):
        S, ctx = trivial_o2_level(n)
        strings[n] = S
        table = {str(y): str(right_action(y, 1, ctx)) for y in S.ring.basis_elements(1)}
        levels.append(TowerLevel(n, S.ring, table, S.intersection.dim))
    maps = {}
    for n in range(3, N):
        f = umkehr_ring_map(gr_inclusion(n))
        hi, lo = strings[n + 1], strings[n]
        images = {}
        for i, name in enumerate(hi.tensor.left.names):
            images[hi.ring.names[i]] = lo.tensor.include_left(f.images[i])
        for j in range(hi.tensor.right.ngens):
            images[hi.ring.names[hi.tensor.split_at + j]] = lo.ring.gen(lo.ring.names[lo.tensor.split_at + j])
        maps[n] = RingMap(hi.ring, lo.ring, images)
    return Tower("BO2", tuple(levels), maps, {n: n - 3 for n in range(3, N)})


def adjoint_sq1t_matrix(n: int) -> list[list[int]] | None:
    """Right Sq^1_t on HH_1(Ad(E_n)) in the basis of component top classes, for even n.

    Each top class maps into its own component, nonzero exactly when Sq^1 into
    the top degree of that component is nonzero. Returns None for odd n, where
    the twist is nontrivial and the catalog facts do not decide the action.
    """
    if n % 2:
        return None
    comps = adjoint_o2_components(n)
    return [[int(i == j and wu_surjectivity_test(c)) for j, c in enumerate(comps)] for i in range(len(comps))]


def _component_restriction(upper: list[ComponentFacts], lower: list[ComponentFacts]) -> list[list[int]]:
    """H^0 restriction between adjoint bundles: each component restricts to its namesake."""
    return [[int(a.name == b.name) for a in upper] for b in lower]


def o2_comparison(N: int) -> InequivalenceCertificate:
    """Compare right Sq^1_t on HH_1 for Ad(E_n) and Gr_{2,n} x O(2), n = 3..N."""
    if N < 4:
        raise PresentationError(f"o2_comparison needs N >= 4 to reach an even level, got {N}")
    tower = o2_tower(N)
    rows = []
    iso = True
    prev_injective: bool | None = None
    for n in range(3, N + 1):
        S, ctx = trivial_o2_level(n)
        h1 = S.ring.basis_elements(1)
        images = [right_action(y, 1, ctx) for y in h1]
        t_rank = _rank_of_images(images, S.ring, 0)

        comps = adjoint_o2_components(n)
        if n % 2 == 0:
            # w1(-TM) = 0, so Sq^1_t = Sq^1, which hits the top class of each
            # non-orientable component (Wu); a sum of top classes then maps nonzero
            injective = linalg.rank(adjoint_sq1t_matrix(n), 2) == len(comps)
            reason = "Wu rule: Sq^1_t = Sq^1 and every component is non-orientable"
        elif prev_injective:
            injective = True
            reason = f"transported along the H_1 isomorphism from level {n - 1}"
        else:
            injective = None
            reason = "undetermined: twist is nontrivial and no even level below"

        t_map = a_map = None
        if n < N:
            t_map = linalg.rank(tower.map_matrix(n, 1), 2)
            a_map = linalg.rank(_component_restriction(adjoint_o2_components(n + 1), comps), 2)
            iso = iso and t_map == len(h1) and a_map == len(comps)
        rows.append(
            LevelComparison(n, len(h1), t_rank, len(comps), injective, reason, t_map, a_map)
        )
        prev_injective = injective
    witnesses = tuple(
        r.n for r in rows if r.trivial_h1_dim and r.trivial_all_zero and r.adjoint_sq1t_injective
    )
    return InequivalenceCertificate(
        invariant="right action of Sq^1_t on HH_1",
        levels=tuple(rows),
        witness_levels=witnesses,
        h1_maps_iso=iso,
        inequivalent=bool(witnesses) and iso,
    )
