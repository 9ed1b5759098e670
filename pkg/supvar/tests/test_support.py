import pytest

from supvar.battery import battery, battery_module, regular_tuple, trivial_tuple, truncated_tuple
from supvar.conf import supvar_overrides
from supvar.exceptions import BudgetExceeded, InvalidInput
from supvar.homvariety import TargetFamily, classify_homs, enumerate_automorphisms, zero_params
from supvar.hypersurface import dual_module, id_infinite, tensor_module
from supvar.support import (
    aut_orbits, cohomological_support, compare_supports, equivariance_check, pullback_module, support_set,
)


class TestSupportSet:
    """Test 𝒩₁(G)_M by the injective-dimension criterion."""

    def test_trivial_module_is_supported_everywhere(self, f3):
        report = support_set(TargetFamily('Mr1'), trivial_tuple(f3), f3, 'trivial')
        assert len(report.members) == 9
        assert not report.non_members

    def test_regular_module_is_supported_at_zero(self, f3):
        family = TargetFamily('Mr1')
        report = support_set(family, regular_tuple(family, f3), f3, 'regular')
        assert [params.label() for params in report.members] == [zero_params(family).label()]

    def test_threads_do_not_change_the_answer(self, f3):
        family = TargetFamily('Mr1')
        M = truncated_tuple(f3, 3)
        serial = support_set(family, M, f3, threads=1).to_json()
        parallel = support_set(family, M, f3, threads=4).to_json()
        assert serial == parallel

    def test_pullback_is_a_p1_module(self, f3):
        family = TargetFamily('Mrs', 1, 2)
        M = battery_module(family, f3, 'quotient_u2')
        params = enumerate_automorphisms(family, f3)[0]
        assert pullback_module(params, M, f3).check()['pass']

    def test_needs_height_one(self, f3):
        with pytest.raises(InvalidInput):
            support_set(TargetFamily('Gar', 2), trivial_tuple(f3), f3)


class TestCohomologicalSupport:
    """Test V(I_M) through a degree cap."""

    def test_trivial_module(self, f3):
        support = cohomological_support(TargetFamily('Mr1'), trivial_tuple(f3), f3, 4, 'trivial')
        assert support.method == 'cochain'
        assert not support.ideal
        assert len(support.points) == 9

    def test_projective_module(self, f3):
        family = TargetFamily('Mr1')
        support = cohomological_support(family, regular_tuple(family, f3), f3, 4, 'regular')
        assert support.method == 'projective'
        assert support.points == {(0, 0)}

    def test_degree_cap_too_small(self, f3):
        with pytest.raises(InvalidInput):
            cohomological_support(TargetFamily('Mr1'), trivial_tuple(f3), f3, 2)

    def test_budget(self, f3):
        with supvar_overrides(COBAR_BUDGET=1):
            with pytest.raises(BudgetExceeded):
                cohomological_support(TargetFamily('Mr1'), truncated_tuple(f3, 3), f3, 4)


class TestComparison:
    """Test Ψ(𝒩₁(G)_M) = |G|_M."""

    @pytest.mark.parametrize('tag,s,name', [
        ('Mr1', 1, 'trivial'),
        ('Mr1', 1, 'regular'),
        ('Gar', 1, 'trivial'),
        ('Gar', 1, 'truncated2'),
        ('Gaminus', 0, 'trivial'),
        ('Gaminus', 0, 'regular'),
    ])
    def test_small_modules(self, f3, tag, s, name):
        family = TargetFamily(tag, 1, s)
        result = compare_supports(family, battery_module(family, f3, name, seed=0), f3, 4, name)
        assert result['status'] == 'pass', result['witness']

    @pytest.mark.slow
    @pytest.mark.parametrize('tag,s', [('Mr1', 1), ('Mrs', 2)])
    def test_full_battery(self, f3, tag, s):
        family = TargetFamily(tag, 1, s)
        for name, t in battery(family, f3, seed=0):
            result = compare_supports(family, t, f3, 4, name)
            assert result['status'] == 'pass', (name, result['witness'])

    @pytest.mark.slow
    @pytest.mark.parametrize('tag,s,name', [
        ('Mr1', 1, 'trivial'),
        ('Mr1', 1, 'regular'),
        ('Mr1', 1, 'quotient_v'),
        ('Gar', 1, 'trivial'),
        ('Gar', 1, 'regular'),
        ('Gaminus', 0, 'trivial'),
        ('Gaminus', 0, 'regular'),
    ])
    def test_over_f9(self, f9, tag, s, name):
        family = TargetFamily(tag, 1, s)
        result = compare_supports(family, battery_module(family, f9, name, seed=0), f9, 6, name)
        assert result['status'] == 'pass', result['witness']


class TestTensorWithDual:
    """Test id(φ*M) = id(φ*M ⊗ (φ*M)^#) on the small battery modules."""

    @pytest.mark.slow
    @pytest.mark.parametrize('tag,s', [('Mr1', 1), ('Mrs', 2), ('Gar', 1), ('Gaminus', 0)])
    def test_identity_on_pullbacks(self, f3, tag, s):
        family = TargetFamily(tag, 1, s)
        points = classify_homs(family, f3, enumerate=True)['params']
        checked = 0
        for name, t in battery(family, f3, seed=0, max_dim=4):
            if t.dim > 4:
                continue
            for params in points:
                M = pullback_module(params, t, f3)
                product = tensor_module(M, dual_module(M))
                assert id_infinite(M)[0] == id_infinite(product)[0], (name, params.label())
                checked += 1
        assert checked


class TestAutomorphisms:
    """Test Aut(G)-orbits and equivariance of supports."""

    def test_orbits_partition_the_points(self, f3):
        report = aut_orbits(TargetFamily('Mr1'), f3)
        assert report['automorphisms'] == 4
        assert sum(report['sizes']) == 9
        assert [zero_params(TargetFamily('Mr1')).label()] in report['orbits']

    def test_odd_line_has_two_orbits(self, f3):
        report = aut_orbits(TargetFamily('Gaminus', 1, 0), f3)
        assert sorted(report['sizes']) == [1, 2]

    @pytest.mark.parametrize('name', ['trivial', 'quotient_v', 'quotient_u2'])
    def test_equivariance(self, f3, name):
        family = TargetFamily('Mr1')
        M = battery_module(family, f3, name, seed=0)
        for nu in enumerate_automorphisms(family, f3):
            result = equivariance_check(family, M, nu, f3, name)
            assert result['pass'], result['witness']
            assert result['checked'] == 9
