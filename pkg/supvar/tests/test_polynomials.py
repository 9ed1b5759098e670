import pytest

from supvar.exceptions import InvalidInput
from supvar.polynomials import Generator, PresentedGradedRing, Relation, RingMap


@pytest.fixture
def exterior_ring(f3):
    """k[x] ⊗ Λ(l) with deg x = 2, deg l = 1, graded commutative."""
    return PresentedGradedRing(
        f3, (Generator('x', 2), Generator('l', 1)), (), True, 'k[x]⊗Λ(l)')


@pytest.fixture
def cusp(f3):
    """k[a, b]/(b^2 = a^3), deg a = 2, deg b = 3."""
    return PresentedGradedRing(
        f3, (Generator('a', 2), Generator('b', 3)), (Relation((0, 2), (((3, 0), 1),)),), False, 'cusp')


class TestArithmetic:
    """Test products, signs and normal forms."""

    def test_odd_generator_squares_to_zero(self, exterior_ring):
        l = exterior_ring.gen('l')
        assert exterior_ring.mul(l, l) == {}
        assert exterior_ring.exterior == [False, True]

    def test_rewrite_rule_applies(self, cusp):
        b = cusp.gen('b')
        assert cusp.mul(b, b) == {(3, 0): 1}
        assert cusp.pow(b, 3) == {(3, 1): 1}

    def test_coefficients_live_in_the_field(self, exterior_ring):
        x = exterior_ring.gen('x')
        assert exterior_ring.add(x, x, 2) == {}
        assert exterior_ring.sub(x, x) == {}

    def test_unknown_generator(self, cusp):
        with pytest.raises(InvalidInput):
            cusp.gen('z')


class TestGrading:
    """Test Hilbert functions and the diagonal subring."""

    def test_hilbert_function_of_exterior_ring(self, exterior_ring):
        assert [exterior_ring.hilbert(n) for n in range(6)] == [1, 1, 1, 1, 1, 1]

    def test_diagonal_monomials(self, exterior_ring):
        assert exterior_ring.diagonal_monomials(2) == [(1, 0)]
        assert exterior_ring.diagonal_monomials(3) == []

    def test_normal_monomials_avoid_leads(self, cusp):
        assert cusp.monomials(6) == [(3, 0)]
        assert cusp.is_normal((0, 1))
        assert not cusp.is_normal((0, 2))
        assert cusp.relations_homogeneous()

    def test_squarefree_presentation(self, f3, cusp):
        assert cusp.is_squarefree_presentation()
        frobenius = PresentedGradedRing(
            f3, (Generator('a', 2), Generator('b', 2)), (Relation((0, 3), (((3, 0), 1),)),), False, 'frob')
        assert not frobenius.is_squarefree_presentation()


class TestPointsAndMaps:
    """Test evaluation, point enumeration and ring maps."""

    def test_points_of_the_cusp(self, cusp):
        points = list(cusp.points())
        assert len(points) == 3
        assert all(cusp.satisfies(point) for point in points)

    def test_ring_map_respects_relations(self, f3, cusp):
        line = PresentedGradedRing(f3, (Generator('t', 1),), (), False, 'k[t]')
        t = line.gen('t')
        param = RingMap(cusp, line, {'a': line.pow(t, 2), 'b': line.pow(t, 3)})
        assert param.respects_relations()
        broken = RingMap(cusp, line, {'a': t, 'b': t})
        assert not broken.respects_relations()

    def test_names_round_trip(self, cusp):
        assert cusp.monomial_name((3, 1)) == 'a^3*b'
        assert cusp.parse_monomial('a^3*b') == (3, 1)
        assert cusp.format_poly({(1, 0): 2}) == {'a': 2}
