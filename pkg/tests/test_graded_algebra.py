import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import catalog_rings, random_homogeneous
from oracles import inverse_series_mod2, product_of_dims, ring_dimension
from strops.errors import ConfluenceError, DegreeBoundError, MixedRingError, PresentationError
from strops.graded_algebra import (
    F2,
    ZZ,
    Coefficients,
    RingMap,
    RingPresentation,
    arith,
    basis_in_degree,
    equal,
    ground_ring,
    make_ring,
    reduce_coefficients,
    tensor,
    tensor_product,
)

RINGS = catalog_rings()


GR4_RELATIONS = ["w1^3", "w1^4 + w1^2*w2 + w2^2", "w1^2*w2 + w2^2", "w1*w2^2", "w2^3"]


def gr4():
    return make_ring([("w1", 1), ("w2", 2)], GR4_RELATIONS, "F2")


def level(n):
    return tensor(make_ring([("t", 1)], ["t^2"], ZZ), make_ring([("c", -2)], [f"c^{n + 1}"], ZZ))


class TestCoefficients:
    def test_parse_labels(self):
        assert Coefficients.parse("Z") == ZZ
        assert Coefficients.parse("F2") == F2
        assert Coefficients.parse("Z/3").p == 3

    def test_rejects_composite(self):
        with pytest.raises(PresentationError):
            Coefficients(4)

    def test_inverse(self):
        assert Coefficients(5).inverse(2) == 3
        with pytest.raises(ZeroDivisionError):
            ZZ.inverse(2)


class TestMakeRing:
    def test_exterior_from_koszul_rule(self):
        L = make_ring([("t", 1)], ["t^2"], ZZ)
        t = L.gen("t")
        assert t * t == L.zero()
        assert [L.dimension(k) for k in range(3)] == [1, 1, 0]

    def test_grassmannian_relations_from_inverse_series(self):
        # wbar = (1 + w1 + w2)^{-1}; for w2 = 0 the series is (1 + w1)^{-1}
        assert inverse_series_mod2([1, 1], 4) == [1, 1, 1, 1, 1]
        R = gr4()
        assert [R.dimension(k) for k in range(6)] == [1, 1, 2, 1, 1, 0]

    def test_truncated_polynomial_negative_degree(self):
        R = make_ring([("c", -2)], ["c^3"], ZZ)
        assert [R.dimension(-k) for k in range(7)] == [1, 0, 1, 0, 1, 0, 0]

    def test_non_homogeneous_relation(self):
        with pytest.raises(PresentationError, match="not homogeneous"):
            make_ring([("x", 2)], ["x^2 + x"], ZZ)

    def test_bare_ideal_generators_are_not_confluent(self):
        # the two dual Stiefel-Whitney classes generate the ideal but do not form a rewrite basis
        with pytest.raises(ConfluenceError) as info:
            make_ring([("w1", 1), ("w2", 2)], GR4_RELATIONS[:2], "F2")
        assert info.value.critical_pair == ("w1^3", "w1^4")

    def test_duplicate_generator(self):
        with pytest.raises(PresentationError):
            make_ring([("x", 1), ("x", 2)], [], ZZ)

    def test_non_unit_leading_coefficient(self):
        with pytest.raises(PresentationError, match="not a unit"):
            make_ring([("x", 2)], ["2*x^2"], ZZ)

    def test_degree_bound_enforced(self):
        R = make_ring([("x", 2)], [], ZZ, degree_bound=6)
        assert R.dimension(6) == 1
        with pytest.raises(DegreeBoundError):
            R.basis_in_degree(8)

    def test_degree_bound_from_environment(self, monkeypatch):
        monkeypatch.setenv("STROPS_DEGREE_BOUND", "5")
        assert make_ring([("x", 1)], [], F2).degree_bound == 5
        monkeypatch.setenv("STROPS_DEGREE_BOUND", "x")
        with pytest.raises(PresentationError):
            make_ring([("x", 1)], [], F2)


class TestArith:
    def test_unit_law(self):
        R = gr4()
        for x in R.basis_elements(3):
            assert arith(R.one(), x, "mul") == x

    def test_even_odd_sign(self):
        R = level(2)
        t, c = R.gen("t"), R.gen("c")
        assert arith(t, c, "mul") == arith(c, t, "mul")
        assert str(c * t) == "t*c"

    def test_odd_odd_sign(self):
        R = make_ring([("x", 1), ("y", 1)], [], ZZ)
        x, y = R.gens()
        assert x * y == -(y * x)

    def test_grassmannian_square(self):
        R = gr4()
        w1, w2 = R.gens()
        assert arith(w2, w2, "mul") == w1 * w1 * w2

    def test_scale(self):
        R = make_ring([("x", 2)], ["x^3"], ZZ)
        assert arith(R.gen("x"), 3, "scale") == R.parse("3*x")

    def test_mixed_rings(self):
        with pytest.raises(MixedRingError):
            arith(gr4().gen("w1"), level(1).gen("t"), "add")

    def test_f2_has_no_signs(self):
        R = tensor(make_ring([("t", 1)], ["t^2"], F2), make_ring([("s", 1)], ["s^2"], F2))
        t, s = R.gen("t"), R.gen("s")
        assert t * s == s * t


class TestBasis:
    def test_level_degree_minus_three(self):
        R = level(2)
        assert [R.format_monomial(m) for m in basis_in_degree(R, -3)] == ["t*c^2"]

    def test_gr5_degree_5(self):
        R = make_ring([("w1", 1), ("w2", 2)], ["w1^4 + w1^2*w2 + w2^2", "w1^5 + w1*w2^2", "w1^3*w2", "w1^2*w2^2 + w2^3", "w1*w2^3", "w2^4"], "F2")
        assert R.dimension(5) == 1

    def test_empty_degree(self):
        assert basis_in_degree(gr4(), 7) == []

    def test_sorted_deterministic(self):
        R = gr4()
        assert basis_in_degree(R, 2) == basis_in_degree(R, 2)
        assert [R.format_monomial(m) for m in basis_in_degree(R, 2)] == ["w1^2", "w2"]


class TestTensor:
    def test_level_ring(self):
        R = level(3)
        assert R.names == ("t", "c")
        assert [R.dimension(k) for k in range(-7, 2)] == [0, 1, 1, 1, 1, 1, 1, 1, 1]

    def test_unit_of_tensor(self):
        R = gr4()
        T = tensor(R, ground_ring(F2))
        assert T == R

    def test_name_clash(self):
        R = make_ring([("x", 2)], [], ZZ, 8)
        assert tensor(R, R).names == ("x", "x_2")

    def test_coefficient_mismatch(self):
        with pytest.raises(PresentationError):
            tensor(gr4(), level(1))

    def test_pure_tensor(self):
        tp = tensor_product(make_ring([("c", -2)], ["c^3"]), make_ring([("t", 1)], ["t^2"]))
        assert str(tp.pure(tp.left.gen("c"), tp.right.gen("t"))) == "c*t"


class TestEqual:
    def test_relation_reduction(self):
        R = gr4()
        w1, w2 = R.gens()
        assert equal(w2 * w2, w1 * w1 * w2)

    def test_plus_zero(self):
        R = gr4()
        x = R.gen("w2")
        assert equal(x, x + R.zero())

    def test_distinct_degrees(self):
        R = make_ring([("c", -2)], ["c^3"])
        c = R.gen("c")
        assert not equal(c, c * c)


class TestSerialization:
    @pytest.mark.parametrize("name", sorted(RINGS))
    def test_json_round_trip(self, name):
        R = RINGS[name]
        assert RingPresentation.from_json(R.to_json()) == R

    def test_polynomial_grammar(self):
        R = gr4()
        assert R.parse("w1^2*w2 + 1 + w2*w1^2") == R.one()
        with pytest.raises(PresentationError):
            R.parse("w1 +* w2")
        with pytest.raises(PresentationError):
            R.parse("v")

    def test_malformed_document(self):
        with pytest.raises(PresentationError):
            RingPresentation.from_dict({"generators": []})


class TestRingMapAndReduction:
    def test_relation_failures(self):
        A = make_ring([("x", 2)], ["x^3"], ZZ)
        B = make_ring([("x", 2)], ["x^2"], ZZ)
        assert RingMap(A, B, {"x": "x"}).relation_failures() == []
        assert RingMap(B, A, {"x": "x"}).relation_failures() == ["x^2"]

    def test_reduce_adds_exterior_squares(self):
        L = reduce_coefficients(make_ring([("t", 1)], ["t^2"], ZZ), F2)
        assert L.gen("t") ** 2 == L.zero()
        assert L.coefficients == F2


# -- properties ------------------------------------------------------------------------

PROPERTY_RINGS = sorted(RINGS)


def _sign(ring, x, y):
    if ring.coefficients.p == 2:
        return 1
    return -1 if (x.degree * y.degree) % 2 else 1


@settings(max_examples=300, deadline=None)
@given(name=st.sampled_from(PROPERTY_RINGS), seed=st.integers(0, 2**32 - 1))
def test_associativity(name, seed):
    R = RINGS[name]
    rng = random.Random(seed)
    a, b, c = (random_homogeneous(R, rng) for _ in range(3))
    assert (a * b) * c == a * (b * c)


@settings(max_examples=300, deadline=None)
@given(name=st.sampled_from(PROPERTY_RINGS), seed=st.integers(0, 2**32 - 1))
def test_graded_commutativity(name, seed):
    R = RINGS[name]
    rng = random.Random(seed)
    a, b = random_homogeneous(R, rng), random_homogeneous(R, rng)
    assert a * b == (b * a) * _sign(R, a, b)


@settings(max_examples=200, deadline=None)
@given(name=st.sampled_from(PROPERTY_RINGS), seed=st.integers(0, 2**32 - 1))
def test_distributivity_and_normal_form_idempotence(name, seed):
    R = RINGS[name]
    rng = random.Random(seed)
    a, b = random_homogeneous(R, rng), random_homogeneous(R, rng)
    c = random_homogeneous(R, rng)
    assert a * (b + c) == a * b + a * c
    assert R.normal_form_terms((a * b).terms) == (a * b).terms


def _one_signed(R):
    return all(d > 0 for d in R.degrees) or all(d < 0 for d in R.degrees)


@pytest.mark.parametrize("name", [n for n in PROPERTY_RINGS if _one_signed(RINGS[n])])
def test_dimensions_match_bruteforce_quotient(name):
    R = RINGS[name]
    sign = 1 if R.degrees[0] > 0 else -1
    for k in range(0, 13):
        assert R.dimension(sign * k) == ring_dimension(R, sign * k), (name, k)


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_tensor_dimensions_are_kunneth_convolution(n):
    left = make_ring([("t", 1)], ["t^2"], ZZ)
    right = make_ring([("c", -2)], [f"c^{n + 1}"], ZZ)
    expected = product_of_dims(
        {k: ring_dimension(left, k) for k in range(0, 3)},
        {k: ring_dimension(right, k) for k in range(-2 * n - 2, 1)},
    )
    R = tensor(left, right)
    lo, hi = min(expected), max(expected)
    assert {k: R.dimension(k) for k in range(lo, hi + 1)} == expected


def test_o2_pontrjagin_dimensions_by_hand():
    R = RINGS["H_*(o2)"]
    assert [R.dimension(k) for k in range(3)] == [2, 2, 0]
    s, t = R.gens()
    assert s * s == R.one()
    assert s * t * s == t
