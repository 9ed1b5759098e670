import pytest

from supvar.battery import group_algebra, quotient_u_tuple, regular_tuple, trivial_tuple, truncated_tuple
from supvar.exceptions import CheckFailed, InvalidInput
from supvar.homvariety import TargetFamily
from supvar.supermatrix import (
    SuperMatrixTuple, comodule_from_tuple, evaluate_comodule, exp_evaluate, module_from_tuple,
    regular_module, require_valid, tuple_from_module, validate_tuple, verify_comodule_axioms,
)


class TestValidation:
    """Test the defining relations of the tuple variety."""

    def test_trivial_and_truncated_tuples_are_valid(self, f3):
        assert validate_tuple(trivial_tuple(f3))['pass']
        assert validate_tuple(truncated_tuple(f3, 3), s=1)['pass']
        assert validate_tuple(quotient_u_tuple(f3, 2))['pass']

    def test_odd_alpha_is_rejected(self, f3):
        GF = f3.GF
        t = SuperMatrixTuple(f3, 1, 1, (GF([[0, 1], [0, 0]]),), GF.Zeros((2, 2)))
        report = validate_tuple(t)
        assert not report['pass']
        assert not report['alpha0 even']['pass']
        with pytest.raises(CheckFailed):
            require_valid(t)

    def test_json_round_trip_checks_shapes(self, f3):
        t = quotient_u_tuple(f3, 2)
        assert SuperMatrixTuple.from_json(t.to_json(), f3).equals(t)
        data = t.to_json()
        data['beta'] = [[0]]
        with pytest.raises(InvalidInput):
            SuperMatrixTuple.from_json(data, f3)


class TestGroupModules:
    """Test modules over the group algebra kM(1;1)."""

    def test_module_from_tuple_round_trip(self, f3):
        grp = group_algebra(TargetFamily('Mr1'), f3)
        t = quotient_u_tuple(f3, 2)
        module = module_from_tuple(t, grp)
        assert module.check()['pass']
        assert tuple_from_module(module).equals(t)

    def test_regular_module(self, f3):
        grp = group_algebra(TargetFamily('Mr1'), f3)
        module = regular_module(grp)
        assert module.dim == 6
        assert module.check()['pass']
        assert validate_tuple(tuple_from_module(module), s=1)['pass']


class TestComodules:
    """Test comodule coefficients and the exponential formula."""

    @pytest.mark.parametrize('j', [1, 2, 3])
    def test_comodule_axioms(self, f3, m11, j):
        coefficients = comodule_from_tuple(quotient_u_tuple(f3, j), m11)
        assert verify_comodule_axioms(m11, coefficients)['pass']

    def test_stage_too_small(self, f3, m11):
        t = regular_tuple(TargetFamily('Mrs', 1, 2), f3)
        with pytest.raises(CheckFailed):
            comodule_from_tuple(t, m11)

    def test_exponential_formula_at_the_universal_point(self, f3, m11):
        t = quotient_u_tuple(f3, 2)
        g = {'th': m11.gen('s1'), 't': m11.gen('t')}
        coefficients = comodule_from_tuple(t, m11)
        assert exp_evaluate(t, m11, g).equals(evaluate_comodule(coefficients, m11, m11, g))
