import pytest
import numpy as np

from supvar.exceptions import InconsistentSystem, InvalidInput
from supvar.fields import (
    FieldSpec, decode_element, encode_element, independent_rows, kernel, linear_solve, rank, solve_many,
)


class TestFieldSpec:
    """Test construction and validation of F_q."""

    def test_rejects_even_and_composite_characteristic(self):
        with pytest.raises(InvalidInput):
            FieldSpec(2)
        with pytest.raises(InvalidInput):
            FieldSpec(9)

    def test_canonical_modulus_for_f9(self, f9):
        assert f9.order == 9
        assert f9.modulus == (1, 0, 1)
        assert f9.label() == 'F9'

    def test_from_order(self):
        assert FieldSpec.from_order(3, 27).e == 3
        with pytest.raises(InvalidInput):
            FieldSpec.from_order(3, 10)

    def test_json_rejects_foreign_modulus(self, f9):
        data = f9.to_json()
        assert FieldSpec.from_json(data) == f9
        data['modulus'] = [2, 2, 1]
        with pytest.raises(InvalidInput):
            FieldSpec.from_json(data)


class TestScalarArithmetic:
    """Test the integer-coded scalar tables."""

    def test_inverse_and_frobenius(self, f9):
        F = f9.arith
        for a in range(1, 9):
            assert F.mul(a, F.inv(a)) == 1
            assert F.frobenius(F.frobenius(a)) == a
            assert F.pow(F.pth_root(a), 3) == a

    def test_zero_has_no_inverse(self, f3):
        with pytest.raises(ZeroDivisionError):
            f3.arith.inv(0)

    def test_encoding_is_base_p(self, f9):
        assert encode_element(f9, 7) == [1, 2]
        assert decode_element(f9, [1, 2]) == 7
        with pytest.raises(InvalidInput):
            decode_element(f9, [3, 0])


class TestLinearAlgebra:
    """Test exact row reduction over F_q."""

    def test_rank_and_kernel(self, f3):
        GF = f3.GF
        A = GF([[1, 2, 0], [2, 1, 0], [0, 0, 1]])
        assert rank(A) == 2
        null = kernel(A)
        assert null.shape == (1, 3)
        assert not np.any(A @ null[0])

    def test_linear_solve_reports_inconsistency(self, f3):
        GF = f3.GF
        A = GF([[1, 1], [2, 2]])
        assert not linear_solve(A, GF([1, 1])).consistent
        solution = linear_solve(A, GF([1, 2]))
        assert solution.consistent
        assert solution.contains(A, GF([0, 1]))

    def test_solve_many_raises_with_witness(self, f3):
        GF = f3.GF
        A = GF([[1, 0], [0, 0]])
        with pytest.raises(InconsistentSystem) as exc:
            solve_many(A, GF([[1, 0], [0, 1]]))
        assert exc.value.details['witness'] == {'column': 1}

    def test_independent_rows(self, f3):
        GF = f3.GF
        A = GF([[1, 1], [2, 2], [0, 1]])
        assert independent_rows(A) == [0, 2]

    def test_mixed_fields_are_invalid(self, f3, f9):
        with pytest.raises(InvalidInput):
            solve_many(f3.GF([[1]]), f9.GF([[1]]))
