import pytest

from oracles import inverse_series_mod2, product_of_dims, ring_dimension
from strops.catalog import (
    HomologyClass,
    adjoint_o2_components,
    cpn,
    dual_sw_classes,
    fiber_monoid,
    grassmannian2,
    parse_fiber,
    parse_space,
    product,
    rpn,
    sphere,
    standard_space,
    trivial_twist,
)
from strops.errors import DualityError, PresentationError, UnknownSpaceError
from strops.graded_algebra import F2, ZZ

SPACES = [cpn(1), cpn(2), cpn(3), rpn(2), rpn(3), rpn(5), sphere(2), sphere(3), grassmannian2(3), grassmannian2(4), grassmannian2(5), grassmannian2(6), product(cpn(1), sphere(1)), product(sphere(2), sphere(3))]
IDS = [M.name for M in SPACES]


@pytest.mark.parametrize("M", SPACES, ids=IDS)
def test_top_degree_is_one_dimensional_and_nothing_above(M):
    R = M.cohomology
    assert R.dimension(M.dim) == 1
    assert all(R.dimension(k) == 0 for k in range(M.dim + 1, M.dim + 4))
    assert R.dimension(0) == 1


@pytest.mark.parametrize("M", SPACES, ids=IDS)
def test_poincare_duality_symmetry_of_dimensions(M):
    R = M.cohomology
    assert [R.dimension(k) for k in range(M.dim + 1)] == [R.dimension(M.dim - k) for k in range(M.dim + 1)]


@pytest.mark.parametrize("M", SPACES, ids=IDS)
def test_pd_round_trips_on_every_basis_class(M):
    if not M.is_orientable():
        M = M.mod2
    R = M.cohomology
    for k in range(M.dim + 1):
        for x in R.basis_elements(k):
            h = M.poincare_dual(x, "coh->hom")
            assert h.degree == M.dim - k
            assert M.poincare_dual(h, "hom->coh") == x


@pytest.mark.parametrize("M", SPACES, ids=IDS)
def test_cup_pairing_is_unimodular(M):
    from strops.linalg import rank

    if not M.is_orientable():
        M = M.mod2
    p = M.coefficients.p
    for k in range(M.dim + 1):
        P = M.fundamental_pairing(k)
        if P:
            assert rank(P, p) == len(P) == len(P[0])


def test_fundamental_class_duals_unit():
    M = cpn(2)
    assert M.poincare_dual(M.fundamental_class(), "hom->coh") == M.cohomology.one()
    assert M.poincare_dual(M.cohomology.one(), "coh->hom") == M.fundamental_class()


def test_pd_of_cpn_generator_is_hyperplane_class():
    M = cpn(3)
    h = M.poincare_dual(M.cohomology.gen("x"), "coh->hom")
    assert h == HomologyClass("cp3", 4, (1,))


def test_duality_rejects_non_orientable_over_z():
    from strops.catalog import ManifoldData

    bad = ManifoldData(name="fake", dim=2, cohomology=cpn(1).cohomology, orientable={"Z": False})
    with pytest.raises(DualityError):
        bad.poincare_dual(bad.cohomology.one())
    assert bad.mod2.poincare_dual(bad.mod2.cohomology.one()).coords == (1,)


def test_homology_class_coordinate_count():
    with pytest.raises(ValueError):
        grassmannian2(4).homology_class(2, [1])


class TestStiefelWhitney:
    def test_rp2_minus_tangent_twist(self):
        tw = rpn(2).negative_tangent_twist()
        assert tw.sw_total == rpn(2).cohomology.parse("1 + a")

    @pytest.mark.parametrize("n", [1, 2, 3, 4, 5, 6, 7])
    def test_rpn_twist_inverts_tangent_class(self, n):
        M = rpn(n)
        w = M.sw_tangent
        inv = M.negative_tangent_twist().sw_total
        assert w * inv == M.cohomology.one()

    @pytest.mark.parametrize("n", [1, 2, 3, 4])
    def test_cpn_twist_inverts_tangent_class(self, n):
        M = cpn(n)
        assert M.sw_tangent * M.negative_tangent_twist().sw_total == M.mod2.cohomology.one()

    @pytest.mark.parametrize("n", [2, 3, 4, 6, 7])
    def test_rpn_tangent_classes_match_binomials(self, n):
        from math import comb

        w = rpn(n).sw_tangent
        for i in range(n + 1):
            assert w.homogeneous_part(i) == rpn(n).cohomology.parse("a" if i == 1 else f"a^{i}" if i else "1") * (comb(n + 1, i) % 2)

    def test_grassmannian_twist_only_known_in_degree_one(self):
        tw = grassmannian2(5).negative_tangent_twist()
        assert tw.w(1) == grassmannian2(5).cohomology.gen("w1")
        assert not grassmannian2(4).negative_tangent_twist().w(1)
        with pytest.raises(PresentationError):
            tw.w(2)

    def test_trivial_twist(self):
        tw = trivial_twist(cpn(2))
        assert tw.is_trivial()
        assert tw.w(0) == tw.sw_total.ring.one()
        assert not tw.w(2)

    def test_dual_classes_against_series_inversion(self):
        # setting w2 = 0 (resp. w1 = 0) specialises to the inverse of 1 + w1 (resp. 1 + w2)
        from strops.graded_algebra import RingPresentation

        free = RingPresentation([("w1", 1), ("w2", 2)], [], F2, 20)
        w1_only = inverse_series_mod2([1, 1], 8)
        w2_only = inverse_series_mod2([1, 1], 4)
        for k, text in enumerate(dual_sw_classes(8)):
            x = free.parse(text)
            assert x.coefficient((k, 0)) == w1_only[k]
            if k % 2 == 0:
                assert x.coefficient((0, k // 2)) == w2_only[k // 2]


class TestGrassmannians:
    @pytest.mark.parametrize("n", [3, 4, 5, 6, 7, 8])
    def test_dims_match_oracle(self, n):
        M = grassmannian2(n)
        for k in range(M.dim + 2):
            assert M.cohomology.dimension(k) == ring_dimension(M.cohomology, k)

    @pytest.mark.parametrize("n", [3, 4, 5, 6, 7, 8])
    def test_euler_characteristic_mod_two_cells(self, n):
        # Schubert cells: number of partitions in a 2 x (n-2) box
        M = grassmannian2(n)
        total = sum(M.cohomology.dimension(k) for k in range(M.dim + 1))
        assert total == n * (n - 1) // 2

    def test_gr4_dims(self):
        assert [grassmannian2(4).cohomology.dimension(k) for k in range(5)] == [1, 1, 2, 1, 1]

    def test_gr5_top_class_is_w1_times_codim_one(self):
        M = grassmannian2(5)
        R = M.cohomology
        (y,) = R.basis_elements(M.dim - 1)
        (z,) = R.basis_elements(M.dim)
        assert y * R.gen("w1") == z

    def test_orientability_facts(self):
        assert grassmannian2(4).orientable["Z"]
        assert not grassmannian2(5).orientable["Z"]

    def test_adjoint_components(self):
        comps = adjoint_o2_components(5)
        assert [c.dim for c in comps] == [7, 7]
        assert all(c.orientable for c in comps)
        assert not any(c.orientable for c in adjoint_o2_components(6))
        with pytest.raises(PresentationError):
            adjoint_o2_components(2)


class TestProductsAndParsing:
    def test_product_dims_are_kunneth(self):
        a, b = cpn(2), sphere(3)
        M = product(a, b)
        expected = product_of_dims(
            {k: a.cohomology.dimension(k) for k in range(5)},
            {k: b.cohomology.dimension(k) for k in range(4)},
        )
        assert {k: M.cohomology.dimension(k) for k in range(8)} == expected
        assert M.dim == 7

    def test_product_mixes_to_f2(self):
        M = product(rpn(2), sphere(1))
        assert M.coefficients == F2
        assert M.cohomology.dimension(3) == 1

    @pytest.mark.parametrize("ident,name,dim", [("cp2", "cp2", 4), ("rp3", "rp3", 3), ("s2", "s2", 2), ("gr2,5", "gr2_5", 6), ("gr2_4", "gr2_4", 4)])
    def test_parse_space(self, ident, name, dim):
        M = parse_space(ident)
        assert (M.name, M.dim) == (name, dim)

    def test_parse_product(self):
        assert parse_space("cp1xs1").dim == 3

    @pytest.mark.parametrize("bad", ["hp2", "cp", "x", "cp2x", "gr2,2"])
    def test_parse_space_errors(self, bad):
        with pytest.raises((UnknownSpaceError, PresentationError)):
            parse_space(bad)

    def test_standard_space(self):
        assert standard_space("cpn", 2) is cpn(2)
        with pytest.raises(UnknownSpaceError):
            standard_space("klein")
        with pytest.raises(PresentationError):
            standard_space("cpn", "2")


class TestFibers:
    def test_o2_relations(self):
        F = fiber_monoid("o2")
        s, t = F.homology.gens()
        assert s * s == F.homology.one()
        assert s * t * s == t
        assert [F.homology.dimension(k) for k in range(3)] == [2, 2, 0]

    def test_o2_kronecker_is_perfect(self):
        from strops.linalg import rank

        F = fiber_monoid("o2")
        for k in (0, 1):
            assert rank(F.pairing_matrix(k), 2) == 2

    def test_o2_cohomology_idempotent(self):
        C = fiber_monoid("o2").cohomology
        e = C.gen("e")
        assert e * e == e

    def test_augmentation(self):
        F = fiber_monoid("o2")
        R = F.homology
        assert F.augmentation(R.parse("1 + s")) == 0
        assert F.augmentation(R.parse("s")) == 1
        assert F.augmentation(R.parse("t")) == 0

    def test_circle(self):
        F = fiber_monoid("circle")
        assert F.coefficients == ZZ
        assert F.pairing_matrix(1) == [[1]]

    def test_loop_space_truncations(self):
        F = parse_fiber("omega_s3:4")
        assert F.truncated_at == 4
        assert [F.homology.dimension(k) for k in range(0, 12, 2)] == [1, 1, 1, 1, 1, 0]
        assert parse_fiber("omega_s2:3").coefficients == F2
        with pytest.raises(PresentationError):
            parse_fiber("omega_s3")
        with pytest.raises(UnknownSpaceError):
            parse_fiber("so3")

    def test_missing_cohomology(self):
        with pytest.raises(DualityError):
            parse_fiber("omega_s3:2").pairing_matrix(0)
