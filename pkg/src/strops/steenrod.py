"""Steenrod squares on F2 cohomology rings, twisted squares, and the dual right action.

Generator tables come from two sources: the default rule for generators that
are pulled back from spheres, projective spaces and the like (Sq^0 = id,
Sq^{|g|} g = g^2, nothing in between), and the splitting principle for
generators that are Stiefel-Whitney classes of a bundle. Squares of arbitrary
elements follow from the Cartan formula, computed through the total square.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Callable, Iterable, Mapping, Protocol, Sequence

from . import linalg
from .catalog import ComponentFacts, ManifoldData
from .errors import DualityError, PresentationError, StropsError
from .graded_algebra import (
    F2,
    GradedElement,
    Monomial,
    RingPresentation,
    TensorProduct,
)


class TwistClasses(Protocol):
    def w(self, i: int) -> GradedElement: ...


class SqAction:
    """Steenrod squares on an F2 ring, determined by Sq^i of each generator."""

    def __init__(self, ring: RingPresentation, generator_table: Mapping[str, Sequence]):
        if ring.coefficients != F2:
            raise PresentationError("Steenrod squares need F2 coefficients")
        if any(d < 0 for d in ring.degrees):
            raise PresentationError("Steenrod squares need non-negatively graded rings")
        self.ring = ring
        table: dict[str, tuple[GradedElement, ...]] = {}
        for g in ring.generators:
            raw = generator_table.get(g.name)
            if raw is None:
                raise PresentationError(f"no Sq table entry for {g.name}")
            table[g.name] = tuple(ring(v) for v in raw)
        self.generator_table = table
        self._validate()
        self._totals = {
            i: sum(table[g.name], ring.zero()) for i, g in enumerate(ring.generators)
        }
        self._mono_cache: dict[Monomial, GradedElement] = {}
        bad = [r for r in ring.relations if self._total_terms(r)]
        if bad:
            raise PresentationError(
                f"Sq table does not preserve the relation ideal: {[ring._format(r) for r in bad]}"
            )

    def _validate(self) -> None:
        for g in self.ring.generators:
            entries = self.generator_table[g.name]
            x = self.ring.gen(g.name)
            if len(entries) != g.degree + 1:
                raise PresentationError(f"{g.name}: need Sq^0..Sq^{g.degree}, got {len(entries)}")
            if entries[0] != x:
                raise PresentationError(f"Sq^0 {g.name} must be {g.name}")
            if entries[-1] != x * x:
                raise PresentationError(f"Sq^{g.degree} {g.name} must be {g.name}^2")
            for i, v in enumerate(entries):
                if v and (not v.is_homogeneous() or v.degree != g.degree + i):
                    raise PresentationError(f"Sq^{i} {g.name} = {v} has the wrong degree")

    def total_monomial(self, m: Monomial) -> GradedElement:
        cached = self._mono_cache.get(m)
        if cached is None:
            cached = self.ring.one()
            for i, e in enumerate(m):
                for _ in range(e):
                    cached = cached * self._totals[i]
            self._mono_cache[m] = cached
        return cached

    def _total_terms(self, terms: Mapping[Monomial, int]) -> GradedElement:
        out = self.ring.zero()
        for m, c in terms.items():
            if c % 2:
                out = out + self.total_monomial(m)
        return out

    def total(self, x: GradedElement) -> GradedElement:
        """The total square Sq = Sq^0 + Sq^1 + ..., a ring endomorphism."""
        return self._total_terms(self.ring(x).terms)

    def sq(self, i: int, x: GradedElement) -> GradedElement:
        x = self.ring(x)
        if i < 0:
            return self.ring.zero()
        out = self.ring.zero()
        for m, c in x.terms.items():
            out = out + self.total_monomial(m).homogeneous_part(self.ring.degree(m) + i) * c
        return out


def default_table(ring: RingPresentation, names: Iterable[str] | None = None) -> dict[str, list]:
    """Sq^0 g = g, Sq^{|g|} g = g^2 and zero in between."""
    out = {}
    for g in ring.generators:
        if names is not None and g.name not in names:
            continue
        x = ring.gen(g.name)
        if g.degree == 0:
            out[g.name] = [x]
        else:
            out[g.name] = [x] + [ring.zero()] * (g.degree - 1) + [x * x]
    return out


def _symmetric_to_elementary(f: GradedElement, k: int) -> dict[Monomial, int]:
    """Write a symmetric polynomial in a_1..a_k over F2 in the elementary e_1..e_k."""
    ring = f.ring
    e = [ring.one()]
    for j in range(1, k + 1):
        acc = ring.zero()
        for idx in combinations(range(k), j):
            term = ring.one()
            for i in idx:
                term = term * ring.gen(f"a{i + 1}")
            acc = acc + term
        e.append(acc)
    out: dict[Monomial, int] = {}
    while f:
        lead = max(f.terms, key=lambda m: (sum(m), m))
        if any(lead[i] < lead[i + 1] for i in range(k - 1)):
            raise ValueError(f"{f} is not symmetric")
        mu = tuple(lead[i] - (lead[i + 1] if i + 1 < k else 0) for i in range(k))
        out[mu] = (out.get(mu, 0) + 1) % 2
        prod = ring.one()
        for j, p in enumerate(mu, start=1):
            prod = prod * e[j] ** p
        f = f - prod
    return {m: c for m, c in out.items() if c}


def splitting_principle_table(
    ring: RingPresentation, sw_names: Sequence[str]
) -> dict[str, list[GradedElement]]:
    """Sq^i of w_1..w_k computed in F2[a_1..a_k] with Sq(a) = a + a^2."""
    k = len(sw_names)
    poly = RingPresentation([(f"a{i + 1}", 1) for i in range(k)], [], F2, 4 * k + 4)
    a = poly.gens()
    out: dict[str, list[GradedElement]] = {}
    for j, name in enumerate(sw_names, start=1):
        sq_e_j = poly.zero()
        for idx in combinations(range(k), j):
            sq_term = poly.one()
            for i in idx:
                sq_term = sq_term * (a[i] + a[i] * a[i])
            sq_e_j = sq_e_j + sq_term
        entries = []
        for i in range(j + 1):
            comp = sq_e_j.homogeneous_part(j + i)
            expr = _symmetric_to_elementary(comp, k)
            val = ring.zero()
            for mu, _ in expr.items():
                term = ring.one()
                for jj, p in enumerate(mu):
                    if p:
                        term = term * ring.gen(sw_names[jj]) ** p
                val = val + term
            entries.append(val)
        out[name] = entries
    return out


def action_for_ring(ring: RingPresentation, sw_names: Sequence[str] = ()) -> SqAction:
    table = default_table(ring, [n for n in ring.names if n not in sw_names])
    if sw_names:
        table.update(splitting_principle_table(ring, sw_names))
    return SqAction(ring, table)


_ACTIONS: dict[RingPresentation, SqAction] = {}


def action_for(space: ManifoldData) -> SqAction:
    """Registered action on the mod-2 cohomology of a catalog manifold."""
    ring = space.mod2.cohomology
    if ring not in _ACTIONS:
        _ACTIONS[ring] = action_for_ring(ring, space.sw_generators)
    return _ACTIONS[ring]


def tensor_action(tp: TensorProduct, left: SqAction, right: SqAction) -> SqAction:
    """Cartan action on ``left (x) right`` from the generator tables of both factors."""
    table = {}
    for name, entries in left.generator_table.items():
        table[name] = [tp.include_left(v) for v in entries]
    for old, new in zip(tp.right.names, tp.ring.names[tp.split_at :]):
        table[new] = [tp.include_right(v) for v in right.generator_table[old]]
    return SqAction(tp.ring, table)


# -- operations --------------------------------------------------------------


def sq(i: int, x: GradedElement, action: SqAction | None) -> GradedElement:
    if action is None:
        raise StropsError("no Steenrod action registered for this ring")
    return action.sq(i, x)


def twisted_sq(i: int, x: GradedElement, twist: TwistClasses, action: SqAction) -> GradedElement:
    """Sum over j of Sq^j(x) * w_{i-j}(twist)."""
    out = action.ring.zero()
    for j in range(i + 1):
        s = action.sq(j, x)
        if s:
            out = out + s * twist.w(i - j)
    return out


@dataclass(frozen=True, eq=False)
class DualityContext:
    """Pairing data between H^*(X; F2) and shifted homology of X.

    ``homology_ring`` supplies the monomials naming homology classes: a
    homology class of shifted degree h lives in homological degree h + shift.
    ``kronecker(h)`` returns the matrix with rows the cohomology basis in degree
    h + shift and columns ``homology_ring.basis_in_degree(h)``.
    """

    cohomology: RingPresentation
    action: SqAction
    homology_ring: RingPresentation
    shift: int
    kronecker: Callable[[int], list[list[int]]]
    twist: TwistClasses | None = None

    def sq_t(self, i: int, x: GradedElement) -> GradedElement:
        if self.twist is None:
            return self.action.sq(i, x)
        return twisted_sq(i, x, self.twist, self.action)

    def sq_matrix(self, i: int, k: int) -> list[list[int]]:
        """Rows: basis of H^k; columns: coordinates of Sq^i_t in H^{k+i}."""
        target = self.cohomology.basis_in_degree(k + i)
        return [
            self.sq_t(i, b).coordinates(target) for b in self.cohomology.basis_elements(k)
        ]


def right_action(y: GradedElement, i: int, ctx: DualityContext) -> GradedElement:
    """The class ``y Sq^i_t`` with <x, y Sq^i_t> = <Sq^i_t x, y> for all x."""
    ring = ctx.homology_ring
    y = ring(y)
    if not y:
        return ring.zero()
    h = y.degree
    if i == 0 and ctx.twist is None:
        return y
    src_basis = ring.basis_in_degree(h)
    ycoords = y.coordinates(src_basis)
    k_src = ctx.kronecker(h)
    # y as a functional on H^{h+shift}
    y_fun = [sum(row[c] * ycoords[c] for c in range(len(ycoords))) % 2 for row in k_src]
    k = h - i + ctx.shift
    sqm = ctx.sq_matrix(i, k)
    f = [sum(a * b for a, b in zip(row, y_fun)) % 2 for row in sqm]
    tgt_basis = ring.basis_in_degree(h - i)
    if not tgt_basis:
        return ring.zero()
    k_tgt = ctx.kronecker(h - i)
    try:
        z = linalg.solve(k_tgt, f, 2)
    except linalg.SingularMatrixError as exc:
        raise DualityError(f"pairing in shifted degree {h - i} is degenerate") from exc
    return ring.element({m: c for m, c in zip(tgt_basis, z)})


def wu_surjectivity_test(component: ComponentFacts) -> bool:
    """Whether Sq^1: H^{D-1} -> H^D is onto for a closed connected F2-Poincare piece.

    By Wu, Sq^1 into the top degree is cup product with w_1, which is nonzero
    exactly when the component is non-orientable.
    """
    if component.orientable is None:
        raise StropsError(f"no orientability fact recorded for {component.name}")
    if not component.w1_pairing_nondegenerate:
        raise StropsError(f"{component.name}: w1 pairing not known to be nondegenerate")
    return not component.orientable


def sq1_into_top_is_nonzero(space: ManifoldData) -> bool:
    """Direct computation of Sq^1 on H^{D-1}, for cross-checking the Wu rule."""
    act = action_for(space)
    d = space.dim
    return any(act.sq(1, b) for b in act.ring.basis_elements(d - 1))
