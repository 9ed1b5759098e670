import numpy as np
import pytest

from supvar.battery import battery, battery_module, quotient_u_tuple, regular_tuple, syzygy_tuple
from supvar.exceptions import InvalidInput
from supvar.homvariety import TargetFamily
from supvar.supermatrix import validate_tuple


class TestBattery:
    """Test the seed-fixed module battery."""

    def test_size_across_families(self, f3):
        total = sum(
            len(battery(TargetFamily(tag, 1, s), f3, seed=0))
            for tag, s in (('Mr1', 1), ('Gar', 1), ('Gaminus', 0))
        )
        assert total >= 12

    def test_names_are_unique(self, f3):
        names = [name for name, _ in battery(TargetFamily('Mr1'), f3, seed=0)]
        assert len(names) == len(set(names))
        assert {'trivial', 'regular', 'quotient_v', 'syzygy'} <= set(names)

    def test_same_seed_same_modules(self, f3):
        first = battery(TargetFamily('Mr1'), f3, seed=7)
        second = battery(TargetFamily('Mr1'), f3, seed=7)
        assert [name for name, _ in first] == [name for name, _ in second]
        for (_, s), (_, t) in zip(first, second):
            assert np.array_equal(s.beta, t.beta)

    @pytest.mark.parametrize('tag,s', [('Mr1', 1), ('Mrs', 2), ('Gar', 1), ('Gaminus', 0)])
    def test_every_module_is_valid(self, f3, tag, s):
        for name, t in battery(TargetFamily(tag, 1, s), f3, seed=0):
            assert validate_tuple(t, s if tag in ('Mr1', 'Mrs') else None)['pass'], name

    def test_regular_and_syzygy_dimensions(self, f3):
        family = TargetFamily('Mr1')
        assert regular_tuple(family, f3).dim == 6
        assert syzygy_tuple(family, f3).dim == 5

    def test_quotient_out_of_range(self, f3):
        with pytest.raises(InvalidInput):
            quotient_u_tuple(f3, 4)

    def test_unknown_module(self, f3):
        with pytest.raises(InvalidInput):
            battery_module(TargetFamily('Mr1'), f3, 'missing')
