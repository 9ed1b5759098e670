import json
from io import StringIO

import pytest
from django.core.management import call_command
from django.core.management.base import CommandError

from supvar.battery import trivial_tuple
from supvar.models import Certificate

pytestmark = pytest.mark.django_db


def run_command(*args):
    out, err = StringIO(), StringIO()
    call_command(*args, stdout=out, stderr=err)
    return json.loads(out.getvalue()), out.getvalue()


class TestCommands:
    """Test the verb-noun management commands."""

    def test_hom_classify(self):
        """Test classification over F_3 for M(1;2)."""
        document, _ = run_command(
            'hom', 'classify', '--family', 'Mrs', '--s', '2', '--p', '3', '--q', '3', '--enumerate')

        assert document['status'] == 'pass'
        assert document['exit_code'] == 0
        assert document['result']['count'] == 9
        assert document['config']['q'] == 3
        assert document['result']['reduced']
        assert document['exercises'] == ['Proposition: homomorphisms M_r -> G', 'Lemma: coordinate ring of N_r(G)']

    def test_invalid_input_exit_code(self):
        """Test that a non-prime characteristic exits with code 3."""
        with pytest.raises(CommandError) as exc_info:
            call_command('field', 'info', '--p', '4', stdout=StringIO(), stderr=StringIO())

        assert exc_info.value.returncode == 3

    def test_budget_exit_code(self):
        """Test that an exhausted cobar budget exits with code 2."""
        out = StringIO()
        with pytest.raises(CommandError) as exc_info:
            call_command(
                'cohomology', 'dims', '--family', 'Mr1', '--method', 'cobar',
                '--cobar-budget', '1', stdout=out, stderr=StringIO())

        assert exc_info.value.returncode == 2
        assert json.loads(out.getvalue())['status'] == 'budget'

    def test_budget_flag_bounds_cobar_blocks(self):
        """Test that --budget alone also caps the cobar blocks."""
        out = StringIO()
        with pytest.raises(CommandError) as exc_info:
            call_command(
                'cohomology', 'dims', '--family', 'Mr1', '--method', 'cobar',
                '--budget', '1', stdout=out, stderr=StringIO())

        assert exc_info.value.returncode == 2
        assert json.loads(out.getvalue())['status'] == 'budget'

    def test_output_is_deterministic(self):
        """Test that the same configuration prints the same bytes."""
        args = ('hopf', 'verify', '--family', 'Mr1', '--kind', 'group')
        _, first = run_command(*args)
        _, second = run_command(*args)

        assert first == second

    def test_save_creates_certificate(self):
        """Test that --save stores the document."""
        document, _ = run_command('field', 'info', '--p', '5', '--save')

        certificate = Certificate.objects.get()
        assert certificate.user is None
        assert certificate.payload == document
        assert certificate.family_label

    def test_json_out(self, tmp_path):
        """Test the document is also written to --json-out."""
        path = tmp_path / 'run.json'
        document, _ = run_command('hom', 'orbits', '--json-out', str(path))

        assert json.loads(path.read_text(encoding='utf-8')) == document

    def test_restrict(self):
        """Test restriction of every generator along the identity of M(1;1)."""
        document, _ = run_command('cohomology', 'restrict', '--params', '1,1')

        assert document['status'] == 'pass'
        assert set(document['result']['restriction']) == {'y', 'x1', 'l1'}

    def test_supplied_module(self, f3, tmp_path):
        """Test a module read from a JSON file."""
        path = tmp_path / 'module.json'
        path.write_text(json.dumps(trivial_tuple(f3).to_json()), encoding='utf-8')

        document, _ = run_command('support', 'set', '--family', 'Gar', '--module', f'@{path}')

        assert document['result']['module'] == 'supplied'
        assert len(document['result']['members']) == 3

    def test_module_from_a_bare_path(self, f3, tmp_path):
        """Test that --module also takes a path without the @ prefix."""
        path = tmp_path / 'module.json'
        path.write_text(json.dumps(trivial_tuple(f3).to_json()), encoding='utf-8')

        document, _ = run_command('support', 'set', '--family', 'Gar', '--module', str(path))

        assert document['status'] == 'pass'
        assert len(document['result']['members']) == 3

    def test_unreadable_module_file(self, tmp_path):
        """Test that a missing module file is invalid input."""
        out = StringIO()
        with pytest.raises(CommandError) as exc_info:
            call_command(
                'support', 'set', '--module', str(tmp_path / 'missing.json'),
                stdout=out, stderr=StringIO())

        assert exc_info.value.returncode == 3
        assert json.loads(out.getvalue())['status'] == 'invalid'

    def test_equivariance_needs_nu(self):
        """Test that the equivariance verb requires --nu."""
        with pytest.raises(CommandError):
            call_command('support', 'equivariance', stdout=StringIO(), stderr=StringIO())
