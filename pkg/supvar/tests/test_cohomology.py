import pytest

from supvar.cohomology import (
    CobarComplex, cobar_cohomology, cobar_complex, cohomology_dims, express_class, formula_agreement, generator_cocycles, low_degree_agreement,
    named_class, presented_cohomology_ring, restrict_class, restriction_formula,
)
from supvar.exceptions import BudgetExceeded, CheckFailed
from supvar.homvariety import HomParams, TargetFamily


class TestPresentedRings:
    """Test the generator/relation description of H^•(G, k)."""

    @pytest.mark.parametrize('tag,r,s,hilbert', [
        ('Mr1', 1, 1, [1, 2, 3, 4, 5]),
        ('Mrs', 1, 2, [1, 2, 3, 4, 5]),
        ('Gar', 1, 1, [1, 1, 1, 1, 1]),
        ('Gar', 2, 1, [1, 2, 3, 4, 5]),
        ('Gaminus', 1, 0, [1, 1, 1, 1, 1]),
    ])
    def test_hilbert_functions(self, f3, tag, r, s, hilbert):
        ring = presented_cohomology_ring(TargetFamily(tag, r, s), f3)
        assert [ring.hilbert(n) for n in range(5)] == hilbert

    def test_y_squared_rewrites_to_x(self, f3):
        ring = presented_cohomology_ring(TargetFamily('Mrs', 1, 2), f3)
        y = ring.gen('y')
        assert ring.mul(y, y) == ring.gen('x1')
        assert ring.index['w2'] == ring.index['w']

    def test_w_for_stage_one_is_a_difference(self, f3):
        family = TargetFamily('Mr1')
        ring = presented_cohomology_ring(family, f3)
        w = named_class(ring, family, 'w')
        assert ring.format_poly(w) == {'x1': 1, 'y^2': 2}


class TestCobarComplex:
    """Test cocycles and dimensions computed from the cobar complex."""

    def test_generator_cocycles_are_closed(self, m11):
        cx = cobar_complex(m11)
        for name, z in generator_cocycles(m11).items():
            assert cx.d(z) == {}, name

    def test_representatives_span_each_degree(self, m11):
        cx = cobar_complex(m11)
        for n, expected in enumerate([1, 2, 3]):
            dim, representatives = cobar_cohomology(m11, n)
            assert dim == expected
            assert all(cx.d(z) == {} for z in representatives)

    def test_generators_express_as_themselves(self, m11):
        ring = presented_cohomology_ring(TargetFamily('Mr1'), m11.spec)
        cocycles = generator_cocycles(m11)
        poly, _ = express_class(m11, cocycles['x1'], 2)
        assert poly == ring.gen('x1')

    def test_non_cocycle_is_rejected(self, m11):
        s2 = m11.index('s2')
        with pytest.raises(CheckFailed):
            express_class(m11, {(s2,): 1}, 1)

    @pytest.mark.parametrize('tag,r,s', [('Mr1', 1, 1), ('Gar', 1, 1), ('Gar', 2, 1), ('Gaminus', 1, 0)])
    def test_low_degree_agreement(self, f3, tag, r, s):
        report = low_degree_agreement(TargetFamily(tag, r, s), f3, 4)
        assert report['pass'], report
        assert set(report['method']) == {'cobar'}

    @pytest.mark.slow
    def test_low_degree_agreement_at_stage_two(self, f3):
        assert low_degree_agreement(TargetFamily('Mrs', 1, 2), f3, 4)['pass']

    def test_resolution_engine_matches(self, m11):
        dims, sources = cohomology_dims(m11, 4, method='resolution')
        assert dims == [1, 2, 3, 4, 5]
        assert set(sources) == {'resolution'}

    def test_cobar_budget_is_enforced(self, m12):
        with pytest.raises(BudgetExceeded):
            CobarComplex(m12, budget=10).dimension(2)

    def test_cobar_budget_follows_settings(self, m12, settings):
        settings.SUPVAR = {'COBAR_BUDGET': 10}
        with pytest.raises(BudgetExceeded):
            CobarComplex(m12).dimension(2)


class TestRestriction:
    """Test restriction of classes along homomorphisms M_r -> G."""

    def test_restricting_w(self, f3):
        family = TargetFamily('Mrs', 1, 2)
        params = HomParams.from_values(family, [1, 1, 1], f3)
        poly, target = restrict_class(params, 'w', f3)
        assert target.format_poly(poly) == {'x1': 1, 'w': 1}

    def test_identity_restricts_trivially(self, f3):
        family = TargetFamily('Mr1')
        params = HomParams(family, 1, (1,))
        poly, target = restrict_class(params, 'y', f3)
        assert target.format_poly(poly) == {'y': 1}

    def test_zero_homomorphism_kills_positive_degrees(self, f3):
        family = TargetFamily('Mr1')
        poly, _ = restrict_class(HomParams(family, 0, (0,)), 'x1', f3)
        assert poly == {}

    def test_closed_form_ring_map_is_well_defined(self, f3):
        family = TargetFamily('Mrs', 1, 2)
        params = HomParams.from_values(family, [2, 1, 2], f3)
        assert restriction_formula(params, f3).respects_relations()

    def test_formula_agreement_over_f3(self, f3):
        report = formula_agreement(TargetFamily('Mr1'), f3)
        assert report['pass'], report
        assert report['checked'] == 9 * 3

    @pytest.mark.slow
    def test_formula_agreement_over_f9(self, f9):
        assert formula_agreement(TargetFamily('Mr1'), f9)['pass']

    @pytest.mark.slow
    def test_formula_agreement_for_the_twisted_family(self, f3):
        report = formula_agreement(TargetFamily('MrsEta', 2, 1, 1), f3)
        assert report['pass'], report['witness']
        assert report['checked']

    @pytest.mark.slow
    @pytest.mark.parametrize('tag,r,s,eta', [('Mrs', 1, 2, 0), ('Gar', 2, 1, 0), ('MrsEta', 2, 1, 1)])
    def test_formula_agreement_over_f9_at_both_twists(self, f9, tag, r, s, eta):
        report = formula_agreement(TargetFamily(tag, r, s, eta), f9)
        assert report['pass'], report['witness']
