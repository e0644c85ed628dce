import os
import random
import sys

import pytest

sys.path.insert(0, os.path.dirname(__file__))

from strops.catalog import cpn, fiber_monoid, grassmannian2, product, rpn, sphere  # noqa: E402
from strops.graded_algebra import RingPresentation, tensor  # noqa: E402
from strops.string_product import intersection_ring  # noqa: E402


def catalog_rings() -> dict[str, RingPresentation]:
    """Every ring the package ships or builds, keyed by a readable name."""
    out = {}
    for n in range(3, 9):
        out[f"H*(gr2_{n})"] = grassmannian2(n).cohomology
    for n in range(1, 5):
        out[f"H*(cp{n})"] = cpn(n).cohomology
    for n in range(1, 8):
        out[f"H*(rp{n})"] = rpn(n).cohomology
    for n in range(1, 5):
        out[f"H*(s{n})"] = sphere(n).cohomology
    out["H*(cp1xs1)"] = product(cpn(1), sphere(1)).cohomology
    out["H*(s2xs3)"] = product(sphere(2), sphere(3)).cohomology
    for kind in ("circle", "o2"):
        F = fiber_monoid(kind)
        out[f"H_*({F.name})"] = F.homology
        out[f"H^*({F.name})"] = F.cohomology
    for M in (cpn(2), cpn(3), rpn(3), rpn(4), grassmannian2(4), grassmannian2(5), sphere(3)):
        out[f"HH_*({M.name})"] = intersection_ring(M).ring
    circle = fiber_monoid("circle").homology
    for n in (1, 2, 3):
        out[f"level{n}"] = tensor(RingPresentation([("t", 1)], ["t^2"], "Z"), RingPresentation([("c", -2)], [f"c^{n + 1}"], "Z"))
    out["HH(cp2)xH(s1)"] = tensor(intersection_ring(cpn(2)).ring, circle)
    out["HH(gr2_4)xH(o2)"] = tensor(intersection_ring(grassmannian2(4)).ring, fiber_monoid("o2").homology)
    return out


def random_homogeneous(ring: RingPresentation, rng: random.Random, degree: int | None = None):
    lo, hi = ring.degree_range()
    degs = [k for k in range(lo, hi + 1) if ring.basis_in_degree(k)]
    k = rng.choice(degs) if degree is None else degree
    basis = ring.basis_in_degree(k)
    p = ring.coefficients.p
    terms = {}
    for m in basis:
        c = rng.randrange(p) if p else rng.randint(-3, 3)
        if c:
            terms[m] = c
    if not terms:
        terms[rng.choice(basis)] = 1
    return ring.element(terms)


@pytest.fixture(scope="session")
def rings():
    return catalog_rings()
