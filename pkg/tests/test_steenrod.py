import itertools
from math import comb

import pytest

from oracles import grassmannian_sq_oracle
from strops.catalog import (
    ComponentFacts,
    VirtualBundleTwist,
    cpn,
    grassmannian2,
    product,
    rpn,
    sphere,
    trivial_twist,
)
from strops.errors import PresentationError, StropsError
from strops.graded_algebra import F2, RingPresentation, tensor_product
from strops.steenrod import (
    SqAction,
    action_for,
    action_for_ring,
    default_table,
    right_action,
    sq,
    sq1_into_top_is_nonzero,
    tensor_action,
    twisted_sq,
    wu_surjectivity_test,
)
from strops.string_product import intersection_ring

SPACES = [rpn(2), rpn(3), rpn(5), rpn(6), cpn(2), cpn(3), sphere(3), grassmannian2(3), grassmannian2(4), grassmannian2(5), grassmannian2(6), product(rpn(2), rpn(3)), product(cpn(1), sphere(1))]
IDS = [M.name for M in SPACES]


def _all_classes(R, top):
    for k in range(top + 1):
        yield from R.basis_elements(k)


@pytest.mark.parametrize("n", [3, 4, 5, 6])
@pytest.mark.parametrize("j", [1, 2])
def test_grassmannian_tables_match_splitting_oracle(n, j):
    act = action_for(grassmannian2(n))
    R = act.ring
    w = R.gen(f"w{j}")
    for i in range(j + 1):
        expected = R.zero()
        for (p, q), _ in grassmannian_sq_oracle(j, i).items():
            expected = expected + R.gen("w1") ** p * R.gen("w2") ** q
        assert act.sq(i, w) == expected, (n, j, i)


def test_sq1_w2_is_w1_w2():
    act = action_for(grassmannian2(5))
    R = act.ring
    assert act.sq(1, R.gen("w2")) == R.parse("w1*w2")


@pytest.mark.parametrize("n", [2, 3, 5, 7])
def test_rpn_squares_are_binomial(n):
    act = action_for(rpn(n))
    R = act.ring
    a = R.gen("a")
    for k in range(n + 1):
        for i in range(k + 1):
            assert act.sq(i, a**k) == a ** (k + i) * (comb(k, i) % 2)


@pytest.mark.parametrize("M", SPACES, ids=IDS)
def test_unstable_axioms(M):
    act = action_for(M)
    for x in _all_classes(act.ring, M.dim):
        k = x.degree
        assert act.sq(0, x) == x
        assert act.sq(k, x) == x * x
        for i in range(k + 1, k + 3):
            assert not act.sq(i, x)


@pytest.mark.parametrize("M", SPACES, ids=IDS)
def test_cartan_formula(M):
    act = action_for(M)
    classes = list(_all_classes(act.ring, min(M.dim, 10)))
    for x, y in itertools.product(classes, repeat=2):
        if x.degree + y.degree > 10:
            continue
        for s in range(x.degree + y.degree + 1):
            rhs = sum((act.sq(i, x) * act.sq(s - i, y) for i in range(s + 1)), act.ring.zero())
            assert act.sq(s, x * y) == rhs


def _adem_rhs(a, b, x, act):
    # Sq^a Sq^b = sum_c binom(b - c - 1, a - 2c) Sq^{a+b-c} Sq^c for a < 2b
    out = act.ring.zero()
    for c in range(a // 2 + 1):
        top = b - c - 1
        coeff = comb(top, a - 2 * c) % 2 if top >= 0 else 0
        if coeff:
            out = out + act.sq(a + b - c, act.sq(c, x))
    return out


@pytest.mark.parametrize("M", SPACES, ids=IDS)
def test_adem_relations(M):
    act = action_for(M)
    for x in _all_classes(act.ring, min(M.dim, 8)):
        for a in range(1, 8):
            for b in range(1, 8):
                if a < 2 * b and a + b + x.degree <= 8 + x.degree:
                    assert act.sq(a, act.sq(b, x)) == _adem_rhs(a, b, x, act), (M.name, a, b, str(x))


def test_sq_needs_action():
    with pytest.raises(StropsError):
        sq(1, rpn(2).cohomology.gen("a"), None)


class TestTableValidation:
    def test_wrong_top_square(self):
        R = RingPresentation([("a", 1)], ["a^3"], F2)
        with pytest.raises(PresentationError):
            SqAction(R, {"a": ["a", "0"]})

    def test_relation_ideal_not_preserved(self):
        # Sq^1 c = a^3 sends the relation a*c to a^4 + ..., which is not in the ideal
        R = RingPresentation([("a", 1), ("c", 2)], ["a*c"], F2, 10)
        with pytest.raises(PresentationError, match="relation ideal"):
            SqAction(R, {"a": ["a", "a^2"], "c": ["c", "a^3", "c^2"]})
        assert SqAction(R, {"a": ["a", "a^2"], "c": ["c", "0", "c^2"]}).sq(1, R.gen("c")) == R.zero()

    def test_missing_entry(self):
        R = RingPresentation([("a", 1)], [], F2, 6)
        with pytest.raises(PresentationError):
            SqAction(R, {})

    def test_integral_ring_rejected(self):
        with pytest.raises(PresentationError):
            action_for_ring(cpn(2).cohomology)

    def test_default_table(self):
        R = RingPresentation([("x", 2)], ["x^3"], F2)
        t = default_table(R)
        assert [str(v) for v in t["x"]] == ["x", "0", "x^2"]


def test_tensor_action_cartan():
    A, B = rpn(2).mod2.cohomology, rpn(3).mod2.cohomology
    tp = tensor_product(A, B)
    act = tensor_action(tp, action_for(rpn(2)), action_for(rpn(3)))
    direct = action_for(product(rpn(2), rpn(3)))
    assert act.ring == direct.ring
    for x in _all_classes(act.ring, 5):
        for i in range(x.degree + 1):
            assert act.sq(i, x) == direct.sq(i, x)


class TestTwisted:
    @pytest.mark.parametrize("M", SPACES, ids=IDS)
    def test_trivial_twist_is_plain_square(self, M):
        act = action_for(M)
        tw = trivial_twist(M)
        for x in _all_classes(act.ring, M.dim):
            for i in range(3):
                assert twisted_sq(i, x, tw, act) == act.sq(i, x)

    def test_rp2_twisted_sq1_kills_generator(self):
        M = rpn(2)
        act = action_for(M)
        a = act.ring.gen("a")
        assert twisted_sq(1, a, M.negative_tangent_twist(), act) == act.ring.zero()
        assert act.sq(1, a) == a * a

    def test_twisted_formula_on_rpn(self):
        M = rpn(4)
        act = action_for(M)
        tw = M.negative_tangent_twist()
        a = act.ring.gen("a")
        for k in range(5):
            for i in range(5):
                expected = sum((act.sq(j, a**k) * tw.w(i - j) for j in range(i + 1)), act.ring.zero())
                assert twisted_sq(i, a**k, tw, act) == expected

    def test_partial_twist_refuses_unknown_degrees(self):
        M = grassmannian2(5)
        act = action_for(M)
        with pytest.raises(PresentationError):
            twisted_sq(2, act.ring.one(), M.negative_tangent_twist(), act)
        assert twisted_sq(1, act.ring.one(), M.negative_tangent_twist(), act) == act.ring.gen("w1")

    def test_custom_twist_object(self):
        M = rpn(3)
        act = action_for(M)
        R = act.ring
        tw = VirtualBundleTwist(M.mod2, R.parse("1 + a + a^2"))
        assert twisted_sq(2, R.one(), tw, act) == R.parse("a^2")


ADJUNCTION_SPACES = [rpn(2), rpn(3), rpn(4), cpn(2), grassmannian2(4), grassmannian2(5), sphere(2)]


@pytest.mark.parametrize("M", ADJUNCTION_SPACES, ids=[M.name for M in ADJUNCTION_SPACES])
@pytest.mark.parametrize("twisted", [False, True])
def test_right_action_adjunction_on_all_basis_pairs(M, twisted):
    I = intersection_ring(M.mod2)
    twist = M.negative_tangent_twist() if twisted else None
    top = M.dim if not twisted or M.sw_known_through is None else M.sw_known_through
    ctx = I.duality_context(twist)
    for h in range(-M.dim, 1):
        for y in I.ring.basis_elements(h):
            for i in range(0, top + 1):
                ys = right_action(y, i, ctx)
                for x in M.mod2.cohomology.basis_elements(h - i + M.dim):
                    assert I.pairing(x, ys) == I.pairing(ctx.sq_t(i, x), y) % 2


def test_right_action_sq0_is_identity():
    I = intersection_ring(rpn(3))
    ctx = I.duality_context()
    for y in I.ring.basis_elements(-2):
        assert right_action(y, 0, ctx) == y


def test_fundamental_class_right_sq1_vanishes_on_rp3():
    I = intersection_ring(rpn(3))
    ctx = I.duality_context()
    assert not right_action(I.fundamental_class(), 1, ctx)


class TestWuRule:
    @pytest.mark.parametrize("M", [rpn(n) for n in range(2, 8)] + [grassmannian2(n) for n in range(3, 8)] + [cpn(2), sphere(3)], ids=lambda M: M.name)
    def test_wu_rule_matches_direct_computation(self, M):
        facts = ComponentFacts(M.name, M.dim, M.orientable["Z"])
        assert wu_surjectivity_test(facts) == sq1_into_top_is_nonzero(M)

    def test_unknown_orientation(self):
        with pytest.raises(StropsError):
            wu_surjectivity_test(ComponentFacts("c", 3, None))

    def test_degenerate_pairing_refused(self):
        with pytest.raises(StropsError):
            wu_surjectivity_test(ComponentFacts("c", 3, False, w1_pairing_nondegenerate=False))
