import pytest

from supvar import hypersurface
from supvar.exceptions import CheckFailed, DegreeCapReached, InvalidInput
from supvar.hypersurface import (
    GradedP1Module, GradedPresentation, direct_sum, dual_module, ext_dims, graded_betti, graded_resolution, id_infinite,
    module_presentation, p1_format, p1_mul, syzygy_step, tensor_module, tor_betti, trivial_p1_module, truncated_u_module,
)


class TestRing:
    """Test arithmetic in k[u, v]/(u^p + v²)."""

    def test_v_squared(self, f3):
        assert p1_mul({(0, 1): 1}, {(0, 1): 1}, f3) == {(3, 0): 2}

    def test_format(self, f3):
        assert p1_format({(1, 0): 1, (2, 1): 1}, f3) == 'u + u^2 v'
        assert p1_format({(0, 0): 2}, f3) == '-1'
        assert p1_format({}, f3) == '0'


class TestModules:
    """Test module validation and constructions."""

    def test_truncated_modules_are_valid(self, f3):
        for j in (1, 2, 3):
            assert truncated_u_module(f3, j).check()['pass']

    def test_truncation_out_of_range(self, f3):
        with pytest.raises(InvalidInput):
            truncated_u_module(f3, 4)

    def test_relation_violation(self, f3):
        GF = f3.GF
        module = GradedP1Module(f3, GF([[0]]), GF([[1]]))
        assert 'relation' in module.check()['failures']
        with pytest.raises(CheckFailed):
            module.require_valid()

    def test_tensor_and_dual_are_modules(self, f3):
        M = truncated_u_module(f3)
        assert dual_module(M).check()['pass']
        product = tensor_module(M, dual_module(M))
        assert product.dim == 9
        assert product.check()['pass']

    def test_direct_sum(self, f3):
        M = direct_sum(trivial_p1_module(f3), truncated_u_module(f3, 2))
        assert M.dim == 3
        assert M.grading == (0, 0, 2)


class TestInjectiveDimension:
    """Test the syzygy criterion for infinite injective dimension."""

    def test_betti_of_trivial_module(self, f3):
        assert tor_betti(trivial_p1_module(f3), 4) == [1, 2, 2, 2, 2]
        assert ext_dims(trivial_p1_module(f3), 0, 3) == [1, 2, 2, 2]

    def test_betti_of_quotient_by_v(self, f3):
        assert tor_betti(truncated_u_module(f3), 3) == [1, 1, 0, 0]

    def test_trivial_module_is_infinite(self, f3):
        infinite, certificate = id_infinite(trivial_p1_module(f3))
        assert infinite
        assert certificate['periodic']
        assert any(certificate['ext_window']['dims'])

    def test_quotient_by_v_is_finite(self, f3):
        infinite, certificate = id_infinite(truncated_u_module(f3))
        assert not infinite
        assert not any(certificate['ext_window']['dims'])

    def test_graded_modules_are_resolved_degree_by_degree(self, f3):
        _, certificate = id_infinite(truncated_u_module(f3))
        assert certificate['graded_betti'] == [1, 1, 0, 0]
        _, certificate = id_infinite(trivial_p1_module(f3))
        assert certificate['graded_betti'] == certificate['betti'][:4]

    def test_degree_cap_reaches_the_decision(self, f3, monkeypatch):
        search = hypersurface.syzygy_step
        monkeypatch.setattr(
            hypersurface, 'syzygy_step',
            lambda pres, index=1, window=None, cap=None: search(pres, index, window, cap=1),
        )
        with pytest.raises(DegreeCapReached):
            id_infinite(trivial_p1_module(f3))

    @pytest.mark.parametrize('j', [1, 2, 3])
    def test_tensor_with_dual(self, f3, j):
        M = truncated_u_module(f3, j)
        assert id_infinite(M)[0] == id_infinite(tensor_module(M, dual_module(M)))[0]

    @pytest.mark.parametrize('j,k', [(1, 3), (2, 3), (3, 3), (2, 2)])
    def test_direct_sum_is_a_disjunction(self, f3, j, k):
        M, N = truncated_u_module(f3, j), truncated_u_module(f3, k)
        expected = id_infinite(M)[0] or id_infinite(N)[0]
        assert id_infinite(direct_sum(M, N))[0] == expected


class TestGradedSyzygies:
    """Test the degree-by-degree syzygy search."""

    def test_first_syzygy_of_trivial_module(self, f3):
        pres, step = module_presentation(trivial_p1_module(f3))
        assert step.betti == 1
        syzygy = syzygy_step(pres)
        assert syzygy.betti == 2
        assert sorted(syzygy.degrees) == [2, 3]
        assert syzygy.is_minimal()

    @pytest.mark.parametrize('j', [1, 3])
    def test_agrees_with_tor(self, f3, j):
        M = truncated_u_module(f3, j)
        assert graded_betti(M, 3) == tor_betti(M, 3)

    def test_hilbert_balance_catches_a_partial_cover(self, f3):
        M = direct_sum(trivial_p1_module(f3), trivial_p1_module(f3))
        pres = GradedPresentation(f3, (0,), (f3.GF.Identity(2)[0],), M)
        with pytest.raises(CheckFailed):
            syzygy_step(pres)

    def test_resolution_records_hilbert_functions(self, f3):
        steps = graded_resolution(trivial_p1_module(f3), 2)
        for D, (source, image, kernel) in steps[2].hilbert.items():
            assert kernel == source - image
            if D in steps[1].hilbert:
                assert image == steps[1].hilbert[D][2]

    def test_degree_cap(self, f3):
        pres, _ = module_presentation(trivial_p1_module(f3))
        with pytest.raises(DegreeCapReached):
            syzygy_step(pres, cap=1)

    def test_needs_grading(self, f3):
        GF = f3.GF
        with pytest.raises(InvalidInput):
            module_presentation(GradedP1Module(f3, GF([[0]]), GF([[0]])))