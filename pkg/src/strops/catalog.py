"""Catalog of closed manifolds and fiber monoids used by the toolkit.

Static facts (presentations, orientability, Stiefel-Whitney data) live in the
JSON files under ``strops/data``; this module instantiates them for a given
parameter and adds everything computable from a presentation: the cup pairing,
Poincare duality on Kronecker-dual homology bases, and inverse SW series.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field, replace
from functools import cached_property, lru_cache
from importlib import resources
from typing import Mapping, Sequence

from . import linalg
from .errors import DualityError, PresentationError, UnknownSpaceError
from .graded_algebra import (
    F2,
    ZZ,
    Coefficients,
    GradedElement,
    Monomial,
    RingPresentation,
    default_degree_bound,
    reduce_coefficients,
    tensor_product,
)


@lru_cache(maxsize=None)
def _load(name: str) -> dict:
    return json.loads(resources.files("strops.data").joinpath(f"{name}.json").read_text())


def _fill(value, params: Mapping[str, int]):
    if isinstance(value, str):
        return value.format(**params)
    if isinstance(value, list):
        return [_fill(v, params) for v in value]
    if isinstance(value, dict):
        return {k: _fill(v, params) for k, v in value.items()}
    return value


_PREDICATES = {
    "always": lambda n: True,
    "never": lambda n: False,
    "n_even": lambda n: n % 2 == 0,
    "n_odd": lambda n: n % 2 == 1,
    "n_ge_2": lambda n: n >= 2,
}


def _predicate(value, n: int) -> bool:
    if isinstance(value, bool):
        return value
    try:
        return _PREDICATES[value](n)
    except KeyError:
        raise PresentationError(f"unknown catalog predicate {value!r}")


@dataclass(frozen=True)
class HomologyClass:
    """A homology class in (unshifted) degree ``degree``.

    ``coords`` are taken along the Kronecker-dual basis of the cohomology basis
    ``basis_in_degree(degree)`` of ``space``.
    """

    space: str
    degree: int
    coords: tuple[int, ...]

    def __bool__(self) -> bool:
        return any(self.coords)


@dataclass(frozen=True, eq=False)
class ManifoldData:
    name: str
    dim: int
    cohomology: RingPresentation
    orientable: Mapping[str, bool]
    simply_connected: bool = False
    sw_tangent_text: str | None = None
    sw_known_through: int | None = None
    homology_names: Mapping[str, str] = field(default_factory=dict)
    sw_generators: tuple[str, ...] = ()
    family: str = ""
    parameter: int | None = None

    def __repr__(self) -> str:
        return f"ManifoldData({self.name}, dim={self.dim}, {self.cohomology.coefficients})"

    @property
    def coefficients(self) -> Coefficients:
        return self.cohomology.coefficients

    def is_orientable(self, coeffs: Coefficients | None = None) -> bool:
        coeffs = coeffs or self.coefficients
        return True if coeffs.p == 2 else bool(self.orientable.get("Z", False))

    # -- coefficient change -------------------------------------------------

    def over(self, coeffs: Coefficients) -> ManifoldData:
        if coeffs == self.coefficients:
            return self
        return replace(self, cohomology=reduce_coefficients(self.cohomology, coeffs))

    @cached_property
    def mod2(self) -> ManifoldData:
        return self.over(F2)

    # -- Stiefel-Whitney data ---------------------------------------------

    @property
    def sw_tangent(self) -> GradedElement:
        """Total SW class of TM in the mod-2 cohomology ring."""
        if self.sw_tangent_text is None:
            raise PresentationError(f"no tangent SW data for {self.name}")
        return self.mod2.cohomology.parse(self.sw_tangent_text)

    def tangent_twist(self) -> VirtualBundleTwist:
        return VirtualBundleTwist(self.mod2, self.sw_tangent, self.sw_known_through)

    def negative_tangent_twist(self) -> VirtualBundleTwist:
        """Twist by -TM: inverse series of w(TM), truncated to known degrees."""
        w = self.sw_tangent
        ring = w.ring
        top = self.dim if self.sw_known_through is None else self.sw_known_through
        rest = ring.one() - w  # w = 1 - rest, so w^{-1} = sum rest^k
        inv = ring.one()
        power = ring.one()
        for _ in range(top):
            power = power * rest
            power = _truncate(power, top)
            if not power:
                break
            inv = inv + power
        return VirtualBundleTwist(self.mod2, _truncate(inv, top), self.sw_known_through)

    # -- duality ----------------------------------------------------------

    def top_monomial(self) -> Monomial:
        basis = self.cohomology.basis_in_degree(self.dim)
        if len(basis) != 1:
            raise DualityError(f"H^{self.dim}({self.name}) has rank {len(basis)}, not 1")
        return basis[0]

    def evaluate(self, x: GradedElement) -> int:
        """Kronecker pairing with the fundamental class: coefficient of the top monomial."""
        return x.homogeneous_part(self.dim).coefficient(self.top_monomial())

    def fundamental_pairing(self, k: int) -> list[list[int]]:
        """Matrix ``<b_i * b'_j, [M]>`` for bases of H^k and H^{d-k}."""
        ring = self.cohomology
        left = ring.basis_elements(k)
        right = ring.basis_elements(self.dim - k)
        return [[self.evaluate(a * b) for b in right] for a in left]

    def _check_duality(self) -> None:
        if not self.is_orientable():
            raise DualityError(
                f"{self.name} is not orientable over {self.coefficients}; use F2 coefficients"
            )

    def poincare_dual(self, x, direction: str = "coh->hom"):
        """``coh->hom``: x in H^k maps to x cap [M] in H_{d-k}; ``hom->coh`` inverts it."""
        self._check_duality()
        ring = self.cohomology
        p = self.coefficients.p
        if direction in ("coh->hom", "coh→hom"):
            if not isinstance(x, GradedElement):
                raise TypeError("coh->hom needs a cohomology element")
            if not x.is_homogeneous():
                raise ValueError(f"{x} is not homogeneous")
            k = x.degree if x else 0
            right = ring.basis_elements(self.dim - k)
            coords = tuple(self.evaluate(x * b) for b in right)
            return HomologyClass(self.name, self.dim - k, coords)
        if direction in ("hom->coh", "hom→coh"):
            if not isinstance(x, HomologyClass):
                raise TypeError("hom->coh needs a HomologyClass")
            k = self.dim - x.degree
            pairing = self.fundamental_pairing(k)
            try:
                coords = linalg.solve(linalg.transpose(pairing), list(x.coords), p)
            except linalg.SingularMatrixError as exc:
                raise DualityError(f"cup pairing of {self.name} in degree {k} is degenerate") from exc
            basis = ring.basis_in_degree(k)
            return ring.element({m: c for m, c in zip(basis, coords)})
        raise ValueError(f"unknown direction {direction!r}")

    def homology_class(self, degree: int, coords: Sequence[int]) -> HomologyClass:
        n = len(self.cohomology.basis_in_degree(degree))
        if len(coords) != n:
            raise ValueError(f"H_{degree}({self.name}) has rank {n}, got {len(coords)} coordinates")
        return HomologyClass(self.name, degree, tuple(self.coefficients.reduce(c) for c in coords))

    def fundamental_class(self) -> HomologyClass:
        return self.homology_class(self.dim, [1])


def _truncate(x: GradedElement, top: int) -> GradedElement:
    return x.ring.element({m: c for m, c in x.terms.items() if x.ring.degree(m) <= top})


@dataclass(frozen=True)
class VirtualBundleTwist:
    """Total SW class of a (virtual) bundle over ``base``, known through a degree."""

    base: ManifoldData
    sw_total: GradedElement
    known_through: int | None = None

    def w(self, i: int) -> GradedElement:
        if self.known_through is not None and i > self.known_through:
            raise PresentationError(
                f"w_{i} of this twist over {self.base.name} is not available "
                f"(known through degree {self.known_through})"
            )
        return self.sw_total.homogeneous_part(i)

    def is_trivial(self) -> bool:
        return self.sw_total == self.sw_total.ring.one() and self.known_through is None


def trivial_twist(base: ManifoldData) -> VirtualBundleTwist:
    return VirtualBundleTwist(base.mod2, base.mod2.cohomology.one(), None)


# -- families ---------------------------------------------------------------


def dual_sw_classes(n_max: int) -> list[str]:
    """Components of (1 + w1 + w2)^{-1} mod 2 as polynomial strings, degrees 0..n_max."""
    ring = RingPresentation([("w1", 1), ("w2", 2)], [], F2, max(n_max, 1) + 2)
    w1, w2 = ring.gens()
    bar = [ring.one(), w1]
    for k in range(2, n_max + 1):
        bar.append(w1 * bar[k - 1] + w2 * bar[k - 2])
    return [str(b) for b in bar[: n_max + 1]]


def _grassmannian_relations(n: int) -> list[str]:
    # generators of the ideal plus the consequences w2^j * wbar_{n-1-j}
    # needed for a confluent rewrite system
    bars = dual_sw_classes(n)
    ring = RingPresentation([("w1", 1), ("w2", 2)], [], F2, 2 * n + 4)
    w2 = ring.gen("w2")
    rels = [bars[n - 1], bars[n]]
    for j in range(1, n):
        rels.append(str(w2**j * ring.parse(bars[n - 1 - j])))
    return rels


def _family_params(family: str, n: int) -> dict[str, int]:
    dims = {
        "sphere": n,
        "cpn": 2 * n,
        "rpn": n,
        "grassmannian2": 2 * (n - 2),
    }
    return {"n": n, "n1": n + 1, "dim": dims[family]}


def _build_family(family: str, n: int) -> ManifoldData:
    doc = _load(family)
    if n < doc["min_n"]:
        raise PresentationError(f"{family} needs n >= {doc['min_n']}, got {n}")
    params = _family_params(family, n)
    d = _fill(doc, params)
    coeffs = Coefficients.parse(d["coefficients"])
    gens = [(g["name"], int(g["degree"])) for g in d["generators"]]
    if d["relations"] == "dual_stiefel_whitney":
        rels = _grassmannian_relations(n)
    else:
        rels = d["relations"]
    dim = int(d["dim"])
    ring = RingPresentation(gens, rels, coeffs, max(default_degree_bound(), dim + 2))
    sw = d.get("sw_tangent")
    sw_text, known = None, None
    if sw is not None:
        if "partial" in sw:
            # only low-degree SW classes are recorded: entries degree -> predicate for w1
            known = max(int(k) for k in sw["partial"])
            first = doc["generators"][0]["name"]
            sw_text = "1 + " + first if _predicate(sw["partial"]["1"], n) else "1"
        else:
            mod2 = reduce_coefficients(ring, F2)
            sw_text = str(mod2.parse(sw["base"]) ** int(sw["exponent"]))
    return ManifoldData(
        name=d["name"],
        dim=dim,
        cohomology=ring,
        orientable={k: _predicate(v, n) for k, v in doc["orientable"].items()},
        simply_connected=_predicate(doc["simply_connected"], n),
        sw_tangent_text=sw_text,
        sw_known_through=known,
        homology_names=dict(d.get("homology_names", {})),
        sw_generators=tuple(d.get("sw_generators", ())),
        family=family,
        parameter=n,
    )


@lru_cache(maxsize=None)
def grassmannian2(n: int) -> ManifoldData:
    """Gr_{2,n}: real 2-planes in R^n, mod-2 cohomology F2[w1, w2]/(wbar_{n-1}, wbar_n)."""
    return _build_family("grassmannian2", n)


@lru_cache(maxsize=None)
def sphere(n: int) -> ManifoldData:
    return _build_family("sphere", n)


@lru_cache(maxsize=None)
def cpn(n: int) -> ManifoldData:
    return _build_family("cpn", n)


@lru_cache(maxsize=None)
def rpn(n: int) -> ManifoldData:
    return _build_family("rpn", n)


def product(a: ManifoldData, b: ManifoldData) -> ManifoldData:
    """Kunneth product; a Z factor is reduced mod p when the other is over F_p."""
    if a.coefficients != b.coefficients:
        target = a.coefficients if a.coefficients.p else b.coefficients
        a, b = a.over(target), b.over(target)
    tp = tensor_product(a.cohomology, b.cohomology)
    rename = dict(zip(b.cohomology.names, tp.ring.names[tp.split_at :]))
    ring = RingPresentation(
        tp.ring.generators,
        tp.ring.relations,
        tp.ring.coefficients,
        max(tp.ring.degree_bound, a.dim + b.dim + 2),
    )
    names = dict(a.homology_names)
    for old, new in rename.items():
        hn = b.homology_names.get(old, "D" + old)
        while hn in names.values():
            hn += "_2"
        names[new] = hn
    sw_text, known = None, None
    if a.sw_tangent_text is not None and b.sw_tangent_text is not None:
        mod2 = reduce_coefficients(ring, F2)
        mtp = tensor_product(a.mod2.cohomology, b.mod2.cohomology)
        w = mtp.pure(a.sw_tangent, b.sw_tangent)
        sw_text = str(mod2.element(w.terms))
        knowns = [k for k in (a.sw_known_through, b.sw_known_through) if k is not None]
        known = min(knowns) if knowns else None
    return ManifoldData(
        name=f"{a.name}x{b.name}",
        dim=a.dim + b.dim,
        cohomology=ring,
        orientable={
            "Z": a.orientable.get("Z", False) and b.orientable.get("Z", False),
            "F2": True,
        },
        simply_connected=a.simply_connected and b.simply_connected,
        sw_tangent_text=sw_text,
        sw_known_through=known,
        homology_names=names,
        sw_generators=a.sw_generators + tuple(rename[g] for g in b.sw_generators),
        family="product",
    )


def standard_space(kind: str, *args) -> ManifoldData:
    """``standard_space("cpn", 2)``, ``standard_space("product", a, b)``, ..."""
    builders = {"sphere": sphere, "cpn": cpn, "rpn": rpn, "grassmannian2": grassmannian2}
    if kind == "product":
        if len(args) != 2:
            raise PresentationError("product needs two factors")
        return product(*args)
    if kind not in builders:
        raise UnknownSpaceError(f"unknown space kind {kind!r}")
    if len(args) != 1 or not isinstance(args[0], int):
        raise PresentationError(f"{kind} needs one integer parameter")
    return builders[kind](args[0])


_SPACE = re.compile(r"(?P<kind>s|cp|rp|gr2[,_])(?P<n>\d+)\Z")


def parse_space(ident: str) -> ManifoldData:
    """Parse identifiers such as ``cp2``, ``rp3``, ``s2``, ``gr2,5`` or ``cp1xs1``."""
    text = ident.strip().lower()
    if "x" in text:
        parts = text.split("x")
        if any(not p for p in parts):
            raise UnknownSpaceError(f"unknown space {ident!r}")
        out = parse_space(parts[0])
        for p in parts[1:]:
            out = product(out, parse_space(p))
        return out
    m = _SPACE.match(text)
    if not m:
        raise UnknownSpaceError(f"unknown space {ident!r}")
    kind = {"s": "sphere", "cp": "cpn", "rp": "rpn"}.get(m["kind"], "grassmannian2")
    return standard_space(kind, int(m["n"]))


# -- adjoint bundle facts ---------------------------------------------------


@dataclass(frozen=True)
class ComponentFacts:
    """A connected closed F2-Poincare piece known only through recorded facts."""

    name: str
    dim: int
    orientable: bool | None
    w1_pairing_nondegenerate: bool = True
    description: str = ""


def adjoint_o2_components(n: int) -> list[ComponentFacts]:
    """The two components of Ad(E_n) over Gr_{2,n}; orientable iff n is odd."""
    doc = _load("grassmannian2")
    if n < doc["min_n"]:
        raise PresentationError(f"Gr_(2,n) needs n >= {doc['min_n']}, got {n}")
    dim = 2 * (n - 2) + 1
    return [
        ComponentFacts(c["name"], dim, _predicate(c["orientable"], n), True, c["description"])
        for c in doc["adjoint_o2_components"]
    ]


# -- fiber monoids ------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class PontrjaginRing:
    """Homology of a topological monoid with its Pontrjagin product.

    ``cohomology`` and ``kronecker`` (when present) describe H^*(F) and the
    evaluation pairing ``<cohomology monomial, homology monomial>``.
    """

    name: str
    homology: RingPresentation
    cohomology: RingPresentation | None = None
    kronecker: Mapping[tuple[Monomial, Monomial], int] = field(default_factory=dict)
    truncated_at: int | None = None

    def __repr__(self) -> str:
        return f"PontrjaginRing({self.name}, {self.homology.coefficients})"

    @property
    def coefficients(self) -> Coefficients:
        return self.homology.coefficients

    def augmentation(self, x: GradedElement) -> int:
        """Sends every component point class to 1 and positive degrees to 0."""
        x = self.homology(x)
        ring = self.homology
        total = 0
        for m, c in x.terms.items():
            if ring.degree(m) == 0 and all(
                e == 0 or g.degree == 0 for g, e in zip(ring.generators, m)
            ):
                total += c
        return self.coefficients.reduce(total)

    def pairing_matrix(self, k: int) -> list[list[int]]:
        """Rows: cohomology basis in degree k; columns: homology basis in degree k."""
        if self.cohomology is None:
            raise DualityError(f"no cohomology recorded for fiber {self.name}")
        rows = self.cohomology.basis_in_degree(k)
        cols = self.homology.basis_in_degree(k)
        return [[self.kronecker.get((r, c), 0) for c in cols] for r in rows]

    def over(self, coeffs: Coefficients) -> PontrjaginRing:
        if coeffs == self.coefficients:
            return self
        coh = None if self.cohomology is None else reduce_coefficients(self.cohomology, coeffs)
        kr = {k: coeffs.reduce(v) for k, v in self.kronecker.items() if coeffs.reduce(v)}
        return replace(self, homology=reduce_coefficients(self.homology, coeffs), cohomology=coh, kronecker=kr)


def _fiber_from_doc(doc: dict) -> PontrjaginRing:
    coeffs = Coefficients.parse(doc["coefficients"])

    def ring(part):
        return RingPresentation(
            [(g["name"], g["degree"]) for g in part["generators"]], part["relations"], coeffs
        )

    hom = ring(doc["homology"])
    coh = ring(doc["cohomology"])
    kr = {}
    for cm, hm, v in doc["kronecker"]:
        a, b = coh.parse(cm), hom.parse(hm)
        (ma,), (mb,) = a.terms, b.terms
        kr[(ma, mb)] = v
    return PontrjaginRing(doc["name"], hom, coh, kr)


def fiber_monoid(kind: str, n: int | None = None, truncation: int | None = None) -> PontrjaginRing:
    """``circle``, ``o2``, ``point`` or ``omega_sphere`` (needs ``n`` and ``truncation``)."""
    if kind in ("circle", "s1"):
        return _fiber_from_doc(_load("fibers")["circle"])
    if kind == "o2":
        return _fiber_from_doc(_load("fibers")["o2"])
    if kind in ("point", "pt"):
        return _fiber_from_doc(_load("fibers")["point"])
    if kind == "omega_sphere":
        if n is None or n < 2:
            raise PresentationError("omega_sphere needs a sphere dimension n >= 2")
        if truncation is None:
            raise PresentationError("omega_sphere is infinite; pass a truncation")
        coeffs = ZZ if (n - 1) % 2 == 0 else F2
        hom = RingPresentation(
            [("x", n - 1)], [f"x^{truncation + 1}"], coeffs,
            max(default_degree_bound(), (n - 1) * (truncation + 1)),
        )
        return PontrjaginRing(f"omega_s{n}", hom, None, {}, truncation)
    raise UnknownSpaceError(f"unknown fiber {kind!r}")


_FIBER = re.compile(r"omega_s(?P<n>\d+)(?::(?P<t>\d+))?\Z")


def parse_fiber(ident: str) -> PontrjaginRing:
    """``s1``, ``o2``, ``pt`` or ``omega_s3:8`` (truncation after the colon)."""
    text = ident.strip().lower()
    m = _FIBER.match(text)
    if m:
        return fiber_monoid("omega_sphere", int(m["n"]), int(m["t"]) if m["t"] else None)
    if text in ("s1", "circle", "o2", "pt", "point"):
        return fiber_monoid(text)
    raise UnknownSpaceError(f"unknown fiber {ident!r}")
