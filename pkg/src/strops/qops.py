"""Homology operations on ``HH_*(M; F2)`` obtained from Steenrod squares by duality.

For ``x`` in ``HH_{-q}(M)`` the operation ``Q_i(x)`` is ``PD(Sq^{q-i} PD^-1 x)``,
a class in ``HH_{-2q+i}``. The Browder bracket of an oriented manifold vanishes
and is provided only with its degree bookkeeping.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .catalog import ManifoldData
from .errors import StropsError
from .graded_algebra import F2, GradedElement
from .steenrod import SqAction, action_for
from .string_product import IntersectionRing, intersection_ring


@dataclass(frozen=True, eq=False)
class QContext:
    manifold: ManifoldData
    intersection: IntersectionRing
    sq_action: SqAction

    def __post_init__(self):
        if self.manifold.coefficients != F2:
            raise StropsError("Q operations are defined here with F2 coefficients only")
        if self.intersection.base is not self.manifold:
            raise StropsError("intersection ring belongs to a different manifold")
        if self.sq_action.ring != self.manifold.cohomology:
            raise StropsError("Steenrod action belongs to a different ring")

    @property
    def ring(self):
        return self.intersection.ring


def q_context(M: ManifoldData) -> QContext:
    M = M.mod2
    return QContext(M, intersection_ring(M), action_for(M))


def _shifted_degree(x: GradedElement) -> int:
    if not x.is_homogeneous():
        raise StropsError(f"{x} is not homogeneous")
    return x.degree


def pd_sq(j: int, x: GradedElement, ctx: QContext) -> GradedElement:
    """``PD(Sq^j)(x)``: lowers shifted degree by j; zero for j < 0."""
    x = ctx.ring(x)
    _shifted_degree(x)
    if j < 0 or not x:
        return ctx.ring.zero()
    return ctx.intersection.from_cohomology(ctx.sq_action.sq(j, ctx.intersection.to_cohomology(x)))


def q_op(i: int, x: GradedElement, ctx: QContext) -> GradedElement:
    """``Q_i(x) = PD(Sq^{q-i})(x)`` for x in ``HH_{-q}``."""
    if i < 0:
        raise StropsError(f"Q_i needs i >= 0, got {i}")
    x = ctx.ring(x)
    deg = _shifted_degree(x)
    if deg is None:
        return ctx.ring.zero()
    return pd_sq(-deg - i, x, ctx)


def browder(x: GradedElement, y: GradedElement, ctx: QContext, n: int = 1) -> tuple[GradedElement, int | None]:
    """``lambda_{n-1}(x, y)``: zero on oriented manifolds, with its target degree p + q + n - 1."""
    if not ctx.manifold.orientable.get("Z", False):
        raise StropsError(f"{ctx.manifold.name} is not oriented; the bracket is not known to vanish")
    x, y = ctx.ring(x), ctx.ring(y)
    p, q = _shifted_degree(x), _shifted_degree(y)
    deg = None if p is None or q is None else p + q + n - 1
    return ctx.ring.zero(), deg


@dataclass(frozen=True)
class RelationCheck:
    name: str
    cases: int
    failures: tuple[str, ...] = ()

    @property
    def passed(self) -> bool:
        return not self.failures


@dataclass(frozen=True)
class RelationReport:
    space: str
    degree_bound: int
    checks: tuple[RelationCheck, ...]
    unverified: tuple[str, ...] = field(default_factory=tuple)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)


# Adem relations among squares of total degree <= 4, as (lhs, rhs) lists of (a, b) for Sq^a Sq^b
_ADEM = (
    ("Sq1Sq1 = 0", [(1, 1)], []),
    ("Sq1Sq2 = Sq3", [(1, 2)], [(0, 3)]),
    ("Sq2Sq2 = Sq3Sq1", [(2, 2)], [(3, 1)]),
    ("Sq1Sq3 = 0", [(1, 3)], []),
)


def _compose(ab: tuple[int, int], x: GradedElement, ctx: QContext) -> GradedElement:
    a, b = ab
    return pd_sq(a, pd_sq(b, x, ctx), ctx)


def relation_check(ctx: QContext, degree_bound: int | None = None) -> RelationReport:
    """Evaluate duality-inherited identities on all basis classes down to ``-degree_bound``."""
    R = ctx.ring
    bound = ctx.manifold.dim if degree_bound is None else degree_bound
    classes = [(k, e) for k in range(0, -bound - 1, -1) for e in R.basis_elements(k)]

    def run(name, cases):
        fails = []
        count = 0
        for label, ok in cases:
            count += 1
            if not ok:
                fails.append(label)
        return RelationCheck(name, count, tuple(fails))

    checks = [
        run("Q_q = id", ((str(x), q_op(-k, x, ctx) == x) for k, x in classes)),
        run(
            "Q_i = 0 for i > q",
            ((f"Q_{i}({x})", not q_op(i, x, ctx)) for k, x in classes for i in range(-k + 1, -k + 4)),
        ),
        run("Q_0(x) = x*x", ((str(x), q_op(0, x, ctx) == x * x) for k, x in classes)),
        run(
            "internal Cartan",
            (
                (f"Q_{s}({x}*{y})", q_op(s, x * y, ctx) == _cartan_rhs(s, x, y, ctx))
                for k, x in classes
                for l, y in classes
                if -(k + l) <= bound
                for s in range(0, -(k + l) + 1)
            ),
        ),
        run(
            "additivity",
            (
                (f"Q_{i}({x}+{y})", q_op(i, x + y, ctx) == q_op(i, x, ctx) + q_op(i, y, ctx))
                for k, x in classes
                for l, y in classes
                if k == l and x != y
                for i in range(0, -k + 1)
            ),
        ),
        run(
            "Adem instances (dual)",
            (
                (f"{name} on {x}", sum((_compose(t, x, ctx) for t in lhs), R.zero())
                 == sum((_compose(t, x, ctx) for t in rhs), R.zero()))
                for name, lhs, rhs in _ADEM
                for k, x in classes
            ),
        ),
        run(
            "browder vanishes",
            (
                (f"lambda({x},{y})", not browder(x, y, ctx)[0])
                for k, x in classes
                for l, y in classes
            )
            if ctx.manifold.orientable.get("Z", False)
            else iter(()),
        ),
    ]
    unverified = (
        "unstable relation from the external Dyer-Lashof reference (not restated)",
        "compatibility of the bracket with Q_i beyond its vanishing",
    )
    return RelationReport(ctx.manifold.name, bound, tuple(checks), unverified)


def _cartan_rhs(s: int, x: GradedElement, y: GradedElement, ctx: QContext) -> GradedElement:
    out = ctx.ring.zero()
    for i in range(0, s + 1):
        out = out + q_op(i, x, ctx) * q_op(s - i, y, ctx)
    return out
