import pytest

from supvar.exceptions import InvalidInput
from supvar.homvariety import TargetFamily
from supvar.psi import (
    diagonal_generators, naturality_check, psi_map, psi_point_check, psi_point_map, spectrum_ring,
    verify_psi_properties,
)


ELEMENTARY = [('Mr1', 1, 1, 0), ('Mrs', 1, 2, 0), ('MrsEta', 2, 1, 1), ('Gar', 2, 1, 0), ('Gaminus', 1, 0, 0)]


class TestPsiMap:
    """Test ψ: H(G, k) -> k[N_r(G)]."""

    @pytest.mark.parametrize('tag,r,s', [('Mr1', 1, 1), ('Mrs', 1, 2), ('Gar', 1, 1), ('Gar', 2, 1), ('Gaminus', 1, 0)])
    def test_well_defined(self, f3, tag, r, s):
        assert psi_map(TargetFamily(tag, r, s), f3).respects_relations()

    def test_diagonal_generators(self, f3):
        ring = psi_map(TargetFamily('Mrs', 1, 2), f3).source
        assert diagonal_generators(ring) == ['y', 'x1', 'w']
        spectrum = spectrum_ring(ring)
        assert len(spectrum.relations) == 1
        assert 'l1' in ring.names
        assert spectrum.names == ['y', 'x1', 'w']

    @pytest.mark.parametrize('tag,r,s,eta', ELEMENTARY)
    def test_properties(self, f3, tag, r, s, eta):
        report = verify_psi_properties(TargetFamily(tag, r, s, eta), f3, cap=4)
        assert report['pass'], report

    @pytest.mark.slow
    @pytest.mark.parametrize('tag,r,s,eta', ELEMENTARY)
    def test_properties_through_degree_six(self, f3, tag, r, s, eta):
        report = verify_psi_properties(TargetFamily(tag, r, s, eta), f3, cap=6)
        assert report['pass'], report
        assert report['cap'] == 6

    def test_unsupported_family(self, f3):
        with pytest.raises(InvalidInput):
            psi_map(TargetFamily('MrEndo', 1, 2), f3)


class TestPointMap:
    """Test Ψ on field points."""

    @pytest.mark.parametrize('tag,r,s', [('Mr1', 1, 1), ('Mrs', 1, 2), ('Gar', 1, 1), ('Gaminus', 1, 0)])
    def test_bijective_over_f3(self, f3, tag, r, s):
        report = psi_point_map(TargetFamily(tag, r, s), f3)
        assert report['injective'] and report['surjective'], report
        assert report['pass']

    def test_bijective_over_f9(self, f9):
        report = psi_point_map(TargetFamily('Mr1'), f9)
        assert report['homomorphisms'] == 81
        assert report['pass']

    def test_bijective_for_the_twisted_family(self, f3):
        report = psi_point_map(TargetFamily('MrsEta', 2, 1, 1), f3)
        assert report['homomorphisms'] == 9
        assert report['pass'], report

    def test_point_check_for_height_one(self, f3):
        report = psi_point_check(TargetFamily('Mr1'), f3)
        assert report['pass'], report
        assert report['checked'] == 9 * 4

    def test_point_check_needs_height_one(self, f3):
        with pytest.raises(InvalidInput):
            psi_point_check(TargetFamily('Gar', 2), f3)

    def test_naturality_along_quotient(self, f3):
        report = naturality_check(TargetFamily('Mr1'), TargetFamily('Gar'), f3)
        assert report['pass'], report
