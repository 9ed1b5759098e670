import pytest

from supvar.exceptions import BudgetExceeded
from supvar.homvariety import TargetFamily, family_hopf
from supvar.resolution import LocalAlgebra, check_resolution, minimal_resolution
from supvar.superalgebra import dual_hopf


class TestMinimalResolution:
    """Test Betti numbers of k over the group algebra."""

    @pytest.mark.parametrize('tag,r,s,betti', [
        ('Mr1', 1, 1, [1, 2, 3, 4, 5]),
        ('Gar', 1, 1, [1, 1, 1, 1, 1]),
        ('Gaminus', 1, 0, [1, 1, 1, 1, 1]),
    ])
    def test_betti_numbers(self, f3, tag, r, s, betti):
        algebra = dual_hopf(family_hopf(TargetFamily(tag, r, s), f3))
        numbers, maps = minimal_resolution(algebra, 4)
        assert numbers == betti
        assert check_resolution(maps)

    def test_radical_generators_of_m11(self, m11):
        local = LocalAlgebra(dual_hopf(m11))
        assert len(local.radical_generators) == 2

    def test_budget(self, m11):
        with pytest.raises(BudgetExceeded):
            minimal_resolution(dual_hopf(m11), 3, budget=1)
