"""Shifted intersection rings, string rings of trivial fiberwise monoids, and E^2 pages.

Shift convention: for a closed d-manifold M, the shifted homology is
``HH_k(M) = H_{k+d}(M)``, concentrated in degrees -d..0. Its product is the
Poincare-duality transport of the cup product, so the ring is the cohomology
presentation with negated degrees and renamed generators; the fundamental
class is the unit.

For a trivial fiberwise monoid ``M x F`` the string ring is
``HH_*(M) (x) H_*(F)``. Nontrivial bundles only get the E^2 page of the
second-quadrant spectral sequence ``E^2_{-m,n} = H^m(M) (x) H_n(F)``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Callable, Iterable, Mapping, Sequence

from .catalog import (
    HomologyClass,
    ManifoldData,
    PontrjaginRing,
    VirtualBundleTwist,
    fiber_monoid,
    grassmannian2,
)
from .errors import DualityError, MixedRingError, PresentationError, StropsError
from .graded_algebra import (
    F2,
    Coefficients,
    Generator,
    GradedElement,
    Monomial,
    RingPresentation,
    TensorProduct,
    tensor_product,
)
from .steenrod import DualityContext, action_for, action_for_ring, tensor_action

Window = tuple[int, int]


def _match_coefficients(
    base: ManifoldData, fiber: PontrjaginRing
) -> tuple[ManifoldData, PontrjaginRing]:
    """Reduce whichever side is over Z when the other is over F_p."""
    if base.coefficients == fiber.coefficients:
        return base, fiber
    if base.coefficients.p and fiber.coefficients.p:
        raise MixedRingError(
            f"incompatible coefficients {base.coefficients} and {fiber.coefficients}"
        )
    target = base.coefficients if base.coefficients.p else fiber.coefficients
    return base.over(target), fiber.over(target)


def _window_degrees(ring: RingPresentation, window: Window | None) -> range:
    if window is None:
        lo, hi = ring.degree_range()
    else:
        lo, hi = window
        if lo > hi:
            raise ValueError(f"empty degree window {window}")
    return range(lo, hi + 1)


# -- intersection ring ---------------------------------------------------------


@dataclass(frozen=True, eq=False)
class IntersectionRing:
    """``HH_*(M)`` with the intersection product, as a ring presentation."""

    base: ManifoldData
    ring: RingPresentation

    @property
    def dim(self) -> int:
        return self.base.dim

    @property
    def coefficients(self) -> Coefficients:
        return self.ring.coefficients

    def fundamental_class(self) -> GradedElement:
        return self.ring.one()

    # PD transport: a cohomology monomial and its homology image share exponents
    def to_cohomology(self, x: GradedElement) -> GradedElement:
        x = self.ring(x)
        return self.base.cohomology.element(x.terms)

    def from_cohomology(self, y: GradedElement) -> GradedElement:
        y = self.base.cohomology(y)
        return self.ring.element(y.terms)

    def to_homology(self, x: GradedElement) -> HomologyClass:
        """The unshifted class ``PD(x)`` in ``H_{deg x + d}(M)``."""
        x = self.ring(x)
        if not x:
            raise ValueError("the zero class has no degree; pass a degree explicitly")
        return self.base.poincare_dual(self.to_cohomology(x), "coh->hom")

    def from_homology(self, h: HomologyClass) -> GradedElement:
        return self.from_cohomology(self.base.poincare_dual(h, "hom->coh"))

    def pd_product(self, a: GradedElement, b: GradedElement) -> GradedElement:
        """``PD(PD^-1 a  cup  PD^-1 b)`` evaluated through homology coordinates.

        This solves the pairing systems instead of reusing exponent arithmetic,
        so it serves as an independent check of the ring product.
        """
        a, b = self.ring(a), self.ring(b)
        if not a or not b:
            return self.ring.zero()
        ca = self.base.poincare_dual(self.to_homology(a), "hom->coh")
        cb = self.base.poincare_dual(self.to_homology(b), "hom->coh")
        prod = ca * cb
        if not prod:
            return self.ring.zero()
        return self.from_homology(self.base.poincare_dual(prod, "coh->hom"))

    def pairing(self, x: GradedElement, y: GradedElement) -> int:
        """Kronecker pairing ``<x, PD(y')>`` of a cohomology class with a shifted class."""
        return self.base.evaluate(self.to_cohomology(y) * self.base.cohomology(x))

    def kronecker(self, h: int) -> list[list[int]]:
        """Rows: H^{h+d} basis; columns: HH_h basis."""
        rows = self.base.cohomology.basis_elements(h + self.dim)
        cols = self.ring.basis_elements(h)
        return [[self.pairing(r, c) for c in cols] for r in rows]

    def duality_context(self, twist: VirtualBundleTwist | None = None) -> DualityContext:
        if self.coefficients != F2:
            raise DualityError("the right Steenrod action needs F2 coefficients")
        return DualityContext(
            cohomology=self.base.cohomology,
            action=action_for(self.base),
            homology_ring=self.ring,
            shift=self.dim,
            kronecker=self.kronecker,
            twist=twist,
        )


def intersection_ring(M: ManifoldData) -> IntersectionRing:
    M._check_duality()
    coh = M.cohomology
    gens = []
    for g in coh.generators:
        gens.append(Generator(M.homology_names.get(g.name, "D" + g.name), -g.degree))
    ring = RingPresentation(
        gens, coh.relations, coh.coefficients, max(coh.degree_bound, M.dim + 2)
    )
    return IntersectionRing(M, ring)


# -- fiberwise monoid models --------------------------------------------------

SHAPES = ("trivial", "adjoint_o2")


@dataclass(frozen=True, eq=False)
class FiberwiseMonoidModel:
    """A fiberwise monoid over ``base`` with fiber ``fiber``.

    ``trivial`` is the product ``M x F``; ``adjoint_o2`` is the adjoint bundle
    of the universal 2-plane bundle over Gr_{2,n}, known only through the
    component facts stored in the catalog.
    """

    base: ManifoldData
    fiber: PontrjaginRing
    shape: str = "trivial"
    parameter: int | None = None

    def __post_init__(self):
        if self.shape not in SHAPES:
            raise PresentationError(f"unknown fiberwise monoid shape {self.shape!r}")

    @property
    def name(self) -> str:
        if self.shape == "trivial":
            return f"{self.base.name}x{self.fiber.name}"
        return f"Ad({self.base.name})"


def trivial_model(base: ManifoldData, fiber: PontrjaginRing) -> FiberwiseMonoidModel:
    base, fiber = _match_coefficients(base, fiber)
    return FiberwiseMonoidModel(base, fiber, "trivial")


def adjoint_o2_model(n: int) -> FiberwiseMonoidModel:
    return FiberwiseMonoidModel(grassmannian2(n), fiber_monoid("o2"), "adjoint_o2", n)


# -- string ring ----------------------------------------------------------------


@dataclass(frozen=True)
class _PulledBackTwist:
    twist: VirtualBundleTwist
    include: Callable[[GradedElement], GradedElement]

    def w(self, i: int) -> GradedElement:
        return self.include(self.twist.w(i))


@dataclass(frozen=True, eq=False)
class StringRing:
    """``HH_*(M x F) = HH_*(M) (x) H_*(F)`` restricted to a degree window."""

    model: FiberwiseMonoidModel
    intersection: IntersectionRing
    tensor: TensorProduct
    window: Window

    @property
    def ring(self) -> RingPresentation:
        return self.tensor.ring

    @property
    def fiber(self) -> PontrjaginRing:
        return self.model.fiber

    @property
    def degrees(self) -> range:
        return range(self.window[0], self.window[1] + 1)

    def basis(self, k: int) -> list[Monomial]:
        if k not in self.degrees:
            return []
        return self.ring.basis_in_degree(k)

    def all_basis(self) -> dict[int, list[Monomial]]:
        return {k: b for k in self.degrees if (b := self.basis(k))}

    def basis_elements(self) -> list[GradedElement]:
        return [self.ring.monomial(m) for k in self.degrees for m in self.basis(k)]

    def dims(self) -> dict[int, int]:
        return {k: len(self.basis(k)) for k in self.degrees}

    def product_table(self) -> list[tuple[GradedElement, GradedElement, GradedElement]]:
        elems = self.basis_elements()
        return [(a, b, a * b) for a in elems for b in elems]

    def pure(self, x: GradedElement, f: GradedElement) -> GradedElement:
        return self.tensor.pure(x, f)

    # -- structural maps ---------------------------------------------------

    def p_star(self, x: GradedElement) -> GradedElement:
        """Projection to the base: ``X (x) f -> eps(f) X``."""
        I, F = self.intersection.ring, self.fiber
        out = I.zero()
        for m, c in self.ring(x).terms.items():
            a, b = self.tensor.split(m)
            eps = F.augmentation(F.homology.monomial(b))
            if eps:
                out = out + I.monomial(a) * (eps * c)
        return out

    def s_star(self, x: GradedElement) -> GradedElement:
        """Unit section: ``X -> X (x) 1``."""
        return self.tensor.include_left(self.intersection.ring(x))

    def fiber_restriction(self, x: GradedElement) -> GradedElement:
        """Intersection with a fiber: ``[M] (x) f -> f``, all other classes -> 0."""
        H = self.fiber.homology
        unit = (0,) * self.intersection.ring.ngens
        out = H.zero()
        for m, c in self.ring(x).terms.items():
            a, b = self.tensor.split(m)
            if a == unit:
                out = out + H.monomial(b) * c
        return out

    # -- duality ------------------------------------------------------------

    @cached_property
    def cohomology_tensor(self) -> TensorProduct:
        coh = self.fiber.cohomology
        if coh is None:
            raise DualityError(f"no cohomology recorded for fiber {self.fiber.name}")
        return tensor_product(self.model.base.cohomology, coh)

    def kronecker(self, h: int) -> list[list[int]]:
        """Rows: H^{h+d}(M x F) basis; columns: HH_h basis (product pairing)."""
        K = self.cohomology_tensor
        I = self.intersection
        F = self.fiber
        rows = K.ring.basis_in_degree(h + I.dim)
        cols = self.ring.basis_in_degree(h)
        exterior = self.ring.coefficients.p != 2
        out = []
        for r in rows:
            x, alpha = K.split(r)
            xe = I.base.cohomology.monomial(x)
            row = []
            for col in cols:
                X, f = self.tensor.split(col)
                v = F.kronecker.get((alpha, f), 0)
                if v:
                    v *= I.pairing(xe, I.ring.monomial(X))
                if v and exterior:
                    deg_alpha = F.cohomology.degree(alpha)
                    deg_X = I.ring.degree(X) + I.dim
                    if deg_alpha * deg_X % 2:
                        v = -v
                row.append(self.ring.coefficients.reduce(v))
            out.append(row)
        return out

    def duality_context(self, twist: VirtualBundleTwist | None = None) -> DualityContext:
        """Pairing and (twisted) Steenrod data for the right action on ``HH_*(M x F)``."""
        if self.ring.coefficients != F2:
            raise DualityError("the right Steenrod action needs F2 coefficients")
        K = self.cohomology_tensor
        action = tensor_action(K, action_for(self.model.base), action_for_ring(K.right))
        pulled = None if twist is None else _PulledBackTwist(twist, K.include_left)
        return DualityContext(
            cohomology=K.ring,
            action=action,
            homology_ring=self.ring,
            shift=self.intersection.dim,
            kronecker=self.kronecker,
            twist=pulled,
        )


def _require_trivial(model: FiberwiseMonoidModel, what: str) -> None:
    if model.shape != "trivial":
        raise StropsError(
            f"{what} is only computed exactly for trivial products; for {model.name} "
            "use cjy_e2_page or the adjoint-bundle catalog facts"
        )


def string_ring(model: FiberwiseMonoidModel, window: Window | None = None) -> StringRing:
    _require_trivial(model, "the string ring")
    base, fiber = _match_coefficients(model.base, model.fiber)
    model = FiberwiseMonoidModel(base, fiber, "trivial")
    inter = intersection_ring(base)
    tp = tensor_product(inter.ring, fiber.homology)
    degs = _window_degrees(tp.ring, window)
    return StringRing(model, inter, tp, (degs.start, degs.stop - 1))


# -- fiberwise modules ---------------------------------------------------------

Vector = dict[str, int]


def _add_vec(acc: dict, key, c: int, coeffs: Coefficients) -> None:
    v = coeffs.reduce(acc.get(key, 0) + c)
    if v:
        acc[key] = v
    else:
        acc.pop(key, None)


@dataclass(frozen=True, eq=False)
class FiberModule:
    """A graded module over a Pontrjagin ring, given by generator actions on a basis.

    ``action[g][label]`` is the image of basis vector ``label`` under generator
    ``g`` as a ``{label: coefficient}`` map.
    """

    ring: PontrjaginRing
    basis: tuple[tuple[str, int], ...]
    action: Mapping[str, Mapping[str, Mapping[str, int]]]
    name: str = "module"

    def __post_init__(self):
        problems = self.axiom_failures()
        if problems:
            raise PresentationError(f"{self.name} is not a module: {problems[0]}")

    @cached_property
    def degree_of(self) -> dict[str, int]:
        return dict(self.basis)

    @property
    def coefficients(self) -> Coefficients:
        return self.ring.coefficients

    def act_generator(self, g: int, v: Mapping[str, int]) -> Vector:
        table = self.action[self.ring.homology.names[g]]
        out: Vector = {}
        for label, c in v.items():
            for tgt, d in table.get(label, {}).items():
                _add_vec(out, tgt, c * d, self.coefficients)
        return out

    def act_monomial(self, m: Monomial, v: Mapping[str, int]) -> Vector:
        out = dict(v)
        for i in range(len(m) - 1, -1, -1):
            for _ in range(m[i]):
                out = self.act_generator(i, out)
        return out

    def act(self, f: GradedElement, v: Mapping[str, int]) -> Vector:
        out: Vector = {}
        for m, c in self.ring.homology(f).terms.items():
            for label, d in self.act_monomial(m, v).items():
                _add_vec(out, label, c * d, self.coefficients)
        return out

    def axiom_failures(self) -> list[str]:
        H = self.ring.homology
        out = []
        labels = [b for b, _ in self.basis]
        deg = dict(self.basis)
        for name in H.names:
            if name not in self.action:
                out.append(f"no action recorded for {name}")
        if out:
            return out
        for g, gd in zip(H.names, H.degrees):
            for label, img in self.action[g].items():
                for tgt in img:
                    if tgt not in deg:
                        out.append(f"{g}.{label} names unknown basis vector {tgt}")
                    elif deg[tgt] != deg[label] + gd:
                        out.append(f"{g}.{label} -> {tgt} has the wrong degree")
        if out:
            return out
        ext = [i for i, d in enumerate(H.degrees) if d % 2 and self.coefficients.p != 2]
        for label in labels:
            e = {label: 1}
            for r in H.relations:
                if self.act(H.element(r), e):
                    out.append(f"relation {H._format(r)} acts nontrivially on {label}")
            for i in ext:
                if self.act_generator(i, self.act_generator(i, e)):
                    out.append(f"{H.names[i]}^2 acts nontrivially on {label}")
            for i in range(H.ngens):
                for j in range(i + 1, H.ngens):
                    a = self.act_generator(i, self.act_generator(j, e))
                    b = self.act_generator(j, self.act_generator(i, e))
                    sign = -1 if H.degrees[i] * H.degrees[j] % 2 else 1
                    diff = dict(a)
                    for k, c in b.items():
                        _add_vec(diff, k, -sign * c, self.coefficients)
                    if diff:
                        out.append(f"{H.names[i]} and {H.names[j]} do not graded-commute on {label}")
        return out

    # -- constructors -------------------------------------------------------

    @classmethod
    def regular(cls, ring: PontrjaginRing) -> FiberModule:
        H = ring.homology
        basis = [(m, k) for k, ms in H.all_basis().items() for m in ms]
        label = {m: H.format_monomial(m) for m, _ in basis}
        action = {}
        for g in H.names:
            table = {}
            for m, _ in basis:
                img = H.gen(g) * H.monomial(m)
                table[label[m]] = {label[t]: c for t, c in img.terms.items()}
            action[g] = table
        return cls(ring, tuple((label[m], k) for m, k in basis), action, f"{ring.name} (regular)")

    @classmethod
    def trivial(cls, ring: PontrjaginRing) -> FiberModule:
        """The augmentation module: degree-0 generators act by 1, the rest by 0."""
        H = ring.homology
        action = {
            g: ({"1": {"1": 1}} if d == 0 else {}) for g, d in zip(H.names, H.degrees)
        }
        return cls(ring, (("1", 0),), action, f"{ring.name} (trivial)")

    @classmethod
    def free(
        cls, ring: PontrjaginRing, labels: Sequence[str], truncate_above: int | None = None
    ) -> FiberModule:
        """Free module on ``labels`` (degree 0), optionally truncated above a degree."""
        H = ring.homology
        monos = [(m, k) for k, ms in H.all_basis().items() for m in ms]
        if truncate_above is not None:
            monos = [(m, k) for m, k in monos if k <= truncate_above]
        keep = {m for m, _ in monos}

        def name(e: str, m: Monomial) -> str:
            mono = H.format_monomial(m)
            return e if mono == "1" else f"{mono}*{e}"

        basis = tuple((name(e, m), k) for e in labels for m, k in monos)
        action = {}
        for g in H.names:
            table = {}
            for e in labels:
                for m, _ in monos:
                    img = H.gen(g) * H.monomial(m)
                    table[name(e, m)] = {name(e, t): c for t, c in img.terms.items() if t in keep}
            action[g] = table
        return cls(ring, basis, action, f"{ring.name} free on {list(labels)}")


ModuleVector = dict[tuple[Monomial, str], int]


@dataclass(frozen=True, eq=False)
class ModuleStructure:
    """``HH_*(M) (x) H_*(F')`` as a module over ``HH_*(M) (x) H_*(F)``."""

    string: StringRing
    module: FiberModule
    window: Window

    @property
    def intersection(self) -> IntersectionRing:
        return self.string.intersection

    @property
    def coefficients(self) -> Coefficients:
        return self.string.ring.coefficients

    def degree(self, key: tuple[Monomial, str]) -> int:
        X, label = key
        return self.intersection.ring.degree(X) + self.module.degree_of[label]

    def basis(self, k: int) -> list[tuple[Monomial, str]]:
        I = self.intersection.ring
        out = []
        lo, hi = I.degree_range()
        for label, d in self.module.basis:
            if lo <= k - d <= hi:
                out.extend((X, label) for X in I.basis_in_degree(k - d))
        return out

    def all_basis(self) -> list[tuple[Monomial, str]]:
        return [b for k in range(self.window[0], self.window[1] + 1) for b in self.basis(k)]

    def act(self, a: GradedElement, v: Mapping[tuple[Monomial, str], int]) -> ModuleVector:
        S = self.string
        I = self.intersection.ring
        exterior = self.coefficients.p != 2
        out: ModuleVector = {}
        for m, c in S.ring(a).terms.items():
            X, f = S.tensor.split(m)
            fdeg = S.fiber.homology.degree(f)
            for (Y, label), d in v.items():
                xy = I.monomial(X) * I.monomial(Y)
                if not xy:
                    continue
                sign = -1 if exterior and fdeg * I.degree(Y) % 2 else 1
                fv = self.module.act_monomial(f, {label: 1})
                for Z, e in xy.terms.items():
                    for lab, g in fv.items():
                        _add_vec(out, (Z, lab), sign * c * d * e * g, self.coefficients)
        return out

    def format_vector(self, v: Mapping[tuple[Monomial, str], int]) -> str:
        if not v:
            return "0"
        I = self.intersection.ring
        parts = []
        for (X, label), c in sorted(v.items(), key=lambda kv: (kv[0][1], kv[0][0])):
            body = f"{I.format_monomial(X)}|{label}"
            parts.append(body if c == 1 else f"{c}*{body}")
        return " + ".join(parts)

    def table(self) -> list[tuple[str, str, str]]:
        out = []
        for a in self.string.basis_elements():
            for key in self.all_basis():
                res = self.act(a, {key: 1})
                out.append((str(a), self.format_vector({key: 1}), self.format_vector(res)))
        return out

    def associativity_failures(self) -> list[str]:
        """Basis triples with ``(a b) v != a (b v)``, plus unit failures."""
        elems = self.string.basis_elements()
        out = []
        one = self.string.ring.one()
        for key in self.all_basis():
            v = {key: 1}
            if self.act(one, v) != v:
                out.append(f"1 does not act as identity on {self.format_vector(v)}")
            for a in elems:
                av = self.act(a, v)
                for b in elems:
                    lhs = self.act(b * a, v)
                    rhs = self.act(b, av)
                    if lhs != rhs:
                        out.append(f"({b})({a}) on {self.format_vector(v)}")
        return out


def module_structure(
    model: FiberwiseMonoidModel, module_fiber: FiberModule, window: Window | None = None
) -> ModuleStructure:
    _require_trivial(model, "the module structure")
    S = string_ring(model, window)
    if module_fiber.ring.homology != S.fiber.homology:
        raise MixedRingError(
            f"module over {module_fiber.ring.name} ({module_fiber.coefficients}) does not "
            f"match the fiber {S.fiber.name} ({S.fiber.coefficients})"
        )
    return ModuleStructure(S, module_fiber, S.window)


# -- E^2 page ----------------------------------------------------------------------

Bidegree = tuple[int, int]


@dataclass(frozen=True, eq=False)
class BigradedAlgebraPage:
    """``E^2_{-m,n} = H^m(M) (x) H_n(F)`` with the cup-with-coefficients product."""

    base: ManifoldData
    fiber: PontrjaginRing
    tensor: TensorProduct
    total_degree_bound: int
    entries: Mapping[Bidegree, tuple[Monomial, ...]]
    certificate: str | None = None

    @property
    def ring(self) -> RingPresentation:
        return self.tensor.ring

    def bidegree(self, m: Monomial) -> Bidegree:
        a, b = self.tensor.split(m)
        return (-self.tensor.left.degree(a), self.tensor.right.degree(b))

    def element_bidegree(self, x: GradedElement) -> Bidegree | None:
        degs = {self.bidegree(m) for m in x.terms}
        if len(degs) > 1:
            raise ValueError(f"{x} is not bihomogeneous")
        return degs.pop() if degs else None

    def dim(self, bidegree: Bidegree) -> int:
        return len(self.entries.get(bidegree, ()))

    def basis_elements(self, bidegree: Bidegree) -> list[GradedElement]:
        return [self.ring.monomial(m) for m in self.entries.get(bidegree, ())]

    def element(self, x: GradedElement | str, f: GradedElement | str) -> GradedElement:
        return self.tensor.pure(self.tensor.left(x), self.tensor.right(f))

    def product(self, a: GradedElement, b: GradedElement) -> GradedElement:
        return self.ring(a) * self.ring(b)

    def total_dims(self) -> dict[int, int]:
        out: dict[int, int] = {}
        for (p, q), basis in self.entries.items():
            out[p + q] = out.get(p + q, 0) + len(basis)
        return dict(sorted(out.items()))

    def nonzero_bidegrees(self) -> list[Bidegree]:
        return sorted(self.entries, key=lambda pq: (pq[1], -pq[0]))


def _fiber_degree_range(fiber: PontrjaginRing) -> range:
    lo, hi = fiber.homology.degree_range()
    return range(lo, hi + 1)


def _collapse_certificate(page: BigradedAlgebraPage) -> str | None:
    """Bidegree argument for E^2 = E^inf, or None if it does not apply.

    The spectral sequence is multiplicative and E^2 is generated by the classes
    ``g (x) 1`` and ``1 (x) f`` for ring generators g, f. If every possible
    target ``(-m-r, n+r-1)``, r >= 2, of each such generator is zero, all
    generators are permanent cycles and every differential vanishes by the
    Leibniz rule.
    """
    d = page.base.dim
    gens = []
    for name, deg in zip(page.tensor.left.names, page.tensor.left.degrees):
        gens.append((name, (-deg, 0)))
    for name, deg in zip(page.tensor.right.names, page.tensor.right.degrees):
        gens.append((name, (0, deg)))
    for name, (p, q) in gens:
        for r in range(2, d + 2):
            target = (p - r, q + r - 1)
            if page.dim(target):
                return None
    names = ", ".join(f"{n}{pq}" for n, pq in gens)
    return (
        "E2 = Einf as bigraded vector spaces: every algebra generator "
        f"({names}) has all d^r targets (r >= 2) in zero bidegrees, and differentials "
        "are derivations"
    )


def cjy_e2_page(
    M: ManifoldData, F: PontrjaginRing, total_degree_bound: int
) -> BigradedAlgebraPage:
    """E^2 page of the second-quadrant spectral sequence of algebras for ``F -> E -> M``."""
    if not M.simply_connected:
        raise StropsError(f"{M.name} is not flagged simply connected")
    M, F = _match_coefficients(M, F)
    tp = tensor_product(M.cohomology, F.homology)
    entries: dict[Bidegree, tuple[Monomial, ...]] = {}
    for m in range(0, M.dim + 1):
        left = M.cohomology.basis_in_degree(m)
        if not left:
            continue
        for n in _fiber_degree_range(F):
            if n - m > total_degree_bound:
                continue
            right = F.homology.basis_in_degree(n)
            if right:
                entries[(-m, n)] = tuple(tp.join(a, b) for a in left for b in right)
    page = BigradedAlgebraPage(M, F, tp, total_degree_bound, entries)
    cert = _collapse_certificate(page)
    if cert is None:
        return page
    return BigradedAlgebraPage(M, F, tp, total_degree_bound, entries, cert)


# -- structural homomorphisms ------------------------------------------------------


@dataclass(frozen=True)
class HomCheck:
    name: str
    pairs_checked: int
    unit_preserved: bool
    counterexample: tuple[str, str, str, str] | None = None

    @property
    def passed(self) -> bool:
        return self.unit_preserved and self.counterexample is None


@dataclass(frozen=True)
class StructureReport:
    model: str
    window: Window
    checks: tuple[HomCheck, ...] = field(default_factory=tuple)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)


def _check_hom(
    name: str,
    f: Callable[[GradedElement], GradedElement],
    elems: Iterable[GradedElement],
    one: GradedElement,
    target_one: GradedElement,
) -> HomCheck:
    elems = list(elems)
    images = [f(a) for a in elems]
    count = 0
    for a, fa in zip(elems, images):
        for b, fb in zip(elems, images):
            count += 1
            lhs = f(a * b)
            rhs = fa * fb
            if lhs != rhs:
                return HomCheck(name, count, f(one) == target_one, (str(a), str(b), str(lhs), str(rhs)))
    return HomCheck(name, count, f(one) == target_one)


def verify_structure_homs(
    model: FiberwiseMonoidModel, window: Window | None = None
) -> StructureReport:
    """Exhaustive basis-pair checks that p_*, s_* and the fiber restriction are ring maps."""
    _require_trivial(model, "structure-map verification")
    S = string_ring(model, window)
    I = S.intersection.ring
    lo, hi = S.window
    base_elems = [e for k in range(lo, hi + 1) if k <= 0 for e in I.basis_elements(k)]
    checks = (
        _check_hom("p_*", S.p_star, S.basis_elements(), S.ring.one(), I.one()),
        _check_hom("s_*", S.s_star, base_elems, I.one(), S.ring.one()),
        _check_hom(
            "fiber restriction",
            S.fiber_restriction,
            S.basis_elements(),
            S.ring.one(),
            S.fiber.homology.one(),
        ),
    )
    return StructureReport(S.model.name, S.window, checks)
