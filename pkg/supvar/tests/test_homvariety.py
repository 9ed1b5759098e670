import pytest

from supvar.exceptions import InvalidInput
from supvar.homvariety import (
    HomParams, TargetFamily, canonical_quotient, classify_homs, comorphism_from_params, compose_endos,
    coordinate_algebra_Nr, enumerate_automorphisms, enumerate_variety_points, frobenius_bijection_check,
    frobenius_compose, identity_params, invert_automorphism, is_automorphism, oracle_agreement, params_from_comorphism,
)


class TestTargetFamily:
    """Test family validation."""

    def test_mrs_needs_stage_two(self):
        with pytest.raises(InvalidInput):
            TargetFamily('Mrs', 1, 1)

    def test_twisted_family_needs_height_two_and_eta(self):
        with pytest.raises(InvalidInput):
            TargetFamily('MrsEta', 1, 1, 1)
        with pytest.raises(InvalidInput):
            TargetFamily('MrsEta', 2, 1, 0)

    def test_stage_is_normalized(self):
        assert TargetFamily('Gaminus', 1, 5).s == 0
        assert TargetFamily('Gar', 2, 3).s == 1


class TestClassification:
    """Test the closed-form classification of Hom(M_r, G)."""

    @pytest.mark.parametrize('tag,r,s,eta,count', [
        ('Mr1', 1, 1, 0, 9),
        ('Mrs', 1, 2, 0, 9),
        ('Gar', 1, 1, 0, 3),
        ('Gar', 2, 1, 0, 9),
        ('MrsEta', 2, 1, 1, 9),
        ('Gaminus', 1, 0, 0, 3),
    ])
    def test_point_counts_over_f3(self, f3, tag, r, s, eta, count):
        result = classify_homs(TargetFamily(tag, r, s, eta), f3, enumerate=True)
        assert len(result['params']) == count

    def test_constraint_is_homogeneous(self, f3):
        ring = coordinate_algebra_Nr(TargetFamily('Mrs', 1, 2), f3)
        assert ring.names == ['mu', 'a0', 'b']
        assert ring.relations_homogeneous()

    @pytest.mark.parametrize('tag,r,s,eta', [
        ('Mr1', 1, 1, 0),
        ('Mrs', 1, 2, 0),
        ('MrsEta', 2, 1, 1),
        ('Gar', 2, 1, 0),
        ('Gaminus', 1, 0, 0),
    ])
    def test_presentations_are_squarefree(self, f3, tag, r, s, eta):
        ring = coordinate_algebra_Nr(TargetFamily(tag, r, s, eta), f3)
        assert ring.is_squarefree_presentation()
        assert classify_homs(TargetFamily(tag, r, s, eta), f3)['reduced']

    def test_endomorphism_family_is_not_elementary(self, f3):
        with pytest.raises(InvalidInput):
            coordinate_algebra_Nr(TargetFamily('MrEndo', 1, 2), f3)
        result = classify_homs(TargetFamily('MrEndo', 1, 2), f3, enumerate=True)
        assert result['reduced']
        assert len(result['params']) == 3

    @pytest.mark.parametrize('tag,s', [('Mr1', 1), ('Mrs', 2), ('Gar', 1), ('Gaminus', 0)])
    def test_variety_points_match_classification(self, f3, tag, s):
        family = TargetFamily(tag, 1, s)
        points = enumerate_variety_points(coordinate_algebra_Nr(family, f3), f3)
        assert len(points) == len(classify_homs(family, f3, enumerate=True)['params'])

    def test_constraint_is_enforced(self, f3):
        family = TargetFamily('Mrs', 1, 2)
        assert HomParams.from_values(family, [1, 1, 1], f3).label() == '(1,1,1)'
        with pytest.raises(InvalidInput):
            HomParams.from_values(family, [1, 2, 0], f3)
        with pytest.raises(InvalidInput):
            HomParams.from_values(family, [1, 1], f3)

    def test_comorphism_round_trip(self, f3):
        family = TargetFamily('Mrs', 1, 2)
        for params in classify_homs(family, f3, enumerate=True)['params']:
            phi = comorphism_from_params(params, f3)
            assert params_from_comorphism(family, phi) == params

    @pytest.mark.parametrize('tag,r,s', [('Mr1', 1, 1), ('Gar', 1, 1), ('Gaminus', 1, 0)])
    def test_search_oracle_agrees(self, f3, tag, r, s):
        report = oracle_agreement(TargetFamily(tag, r, s), f3)
        assert report['pass'], report

    @pytest.mark.slow
    def test_search_oracle_agrees_at_stage_two(self, f3):
        report = oracle_agreement(TargetFamily('Mrs', 1, 2), f3)
        assert report['pass']
        assert report['searched'] == 9

    @pytest.mark.slow
    def test_search_oracle_agrees_for_the_twisted_family(self, f3):
        report = oracle_agreement(TargetFamily('MrsEta', 2, 1, 1), f3)
        assert report['pass'], report
        assert report['searched'] == report['classified'] == 9


class TestEndomorphisms:
    """Test composition, automorphisms and their inverses."""

    def test_composition_formula(self, f3):
        family = TargetFamily('Mrs', 1, 2)
        x = HomParams(family, 1, (1,), 0)
        y = HomParams(family, 1, (1,), 2)
        assert compose_endos(x, y, f3).values() == (1, 1, 2)
        x = HomParams(family, 1, (1,), 1)
        y = HomParams(family, 2, (1,), 0)
        assert compose_endos(x, y, f3).values() == (2, 1, 1)

    def test_automorphism_counts(self, f3):
        assert len(enumerate_automorphisms(TargetFamily('Mr1'), f3)) == 4
        assert len(enumerate_automorphisms(TargetFamily('Mrs', 1, 2), f3)) == 6

    def test_inverse_composes_to_identity(self, f3):
        family = TargetFamily('Mrs', 1, 2)
        for nu in enumerate_automorphisms(family, f3):
            inverse = invert_automorphism(nu, f3)
            assert compose_endos(nu, inverse, f3) == identity_params(family)

    def test_is_automorphism(self, f3):
        family = TargetFamily('Mr1')
        assert is_automorphism(identity_params(family), f3)
        assert not is_automorphism(HomParams(family, 0, (1,)), f3)

    def test_non_automorphism_has_no_inverse(self, f3):
        with pytest.raises(InvalidInput):
            invert_automorphism(HomParams(TargetFamily('Mr1'), 0, (1,)), f3)


class TestQuotientsAndFrobenius:
    """Test canonical quotients and Frobenius twists."""

    def test_canonical_quotients(self, f3):
        for target in (TargetFamily('Mr1'), TargetFamily('Gar'), TargetFamily('Gaminus')):
            assert canonical_quotient(TargetFamily('Mrs', 1, 2), target, f3).check()['pass']

    def test_frobenius_pads_with_zeros(self, f3):
        params = HomParams(TargetFamily('Mr1'), 1, (2,))
        twisted = frobenius_compose(1, params, f3)
        assert twisted.source_r == 2
        assert twisted.a == (0, 2)
        assert twisted.effective_a == (2,)

    @pytest.mark.slow
    @pytest.mark.parametrize('tag,s', [('Mr1', 1), ('Gar', 1), ('Gaminus', 0)])
    def test_frobenius_bijection(self, f3, tag, s):
        assert frobenius_bijection_check(TargetFamily(tag, 1, s), 1, f3)['pass']

    @pytest.mark.slow
    @pytest.mark.parametrize('tag,s', [('Mr1', 1), ('Gar', 1), ('Gaminus', 0)])
    def test_frobenius_bijection_over_f9(self, f9, tag, s):
        report = frobenius_bijection_check(TargetFamily(tag, 1, s), 1, f9)
        assert report['pass'], report
