import json
from pathlib import Path

from django.core.management.base import BaseCommand, CommandError

from supvar import services
from supvar.homvariety import FAMILY_TAGS

# option dest -> serializer field
CONFIG_OPTIONS = [
    'family', 'p', 'e', 'q', 'r', 's', 'eta', 'degree_cap', 'budget',
    'cobar_budget', 'seed', 'threads', 'module', 'params', 'nu',
    'enumerate', 'oracle', 'ell', 'kind', 'export', 'n_max', 'method',
    'cohomology_class', 'elements',
]


class RunCommand(BaseCommand):
    """
    Base for the verb-noun commands: every verb shares the RunConfig flags,
    prints one JSON document on stdout and exits 0/1/2/3.
    """
    command = None
    verbs = {}

    def add_arguments(self, parser):
        subparsers = parser.add_subparsers(
            dest='verb', required=True, title='verbs')
        for verb, help_text in self.verbs.items():
            sub = subparsers.add_parser(verb, help=help_text)
            self.add_config_arguments(sub)
            getattr(self, f'add_{verb}_arguments', lambda sub: None)(sub)

    def add_config_arguments(self, parser):
        parser.add_argument(
            '--family',
            type=str,
            choices=FAMILY_TAGS,
            help='Target family (default: Mr1)'
        )
        parser.add_argument('--p', type=int, help='Odd prime characteristic (default: 3)')
        parser.add_argument('--e', type=int, help='Extension degree (default: 1)')
        parser.add_argument('--q', type=int, help='Field order p^e; overrides --e')
        parser.add_argument('--r', type=int, help='Height r (default: 1)')
        parser.add_argument('--s', type=int, help='Stage s (default: 1)')
        parser.add_argument('--eta', type=int, help='Twist η in F_p (default: 0)')
        parser.add_argument(
            '--degree-cap',
            type=int,
            help='Cohomological degree cap (default: SUPVAR_DEGREE_CAP)'
        )
        parser.add_argument(
            '--budget',
            type=int,
            help='Search budget; also bounds cobar blocks unless --cobar-budget is given'
        )
        parser.add_argument('--cobar-budget', type=int, help='Largest cobar block to build')
        parser.add_argument('--seed', type=int, help='Seed for battery randomness (default: SUPVAR_SEED)')
        parser.add_argument('--threads', type=int, help='Worker threads (default: SUPVAR_THREADS)')
        parser.add_argument(
            '--json-out',
            type=str,
            default=None,
            help='Also write the JSON document to this path'
        )
        parser.add_argument(
            '--save',
            action='store_true',
            help='Store the run as a Certificate'
        )

    def handle(self, *args, **options):
        verb = options['verb']
        data = {
            key: options[key] for key in CONFIG_OPTIONS
            if options.get(key) is not None
        }
        module = data.get('module')
        if isinstance(module, str) and not module.startswith('battery:'):
            path = Path(module.removeprefix('@'))
            try:
                data['module'] = json.loads(path.read_text(encoding='utf-8'))
            except (OSError, ValueError):
                pass  # the serializer reports it as invalid
        document, exit_code = services.run(
            self.command, verb, data, save=options['save'])
        text = services.dumps(document)
        self.stdout.write(text)
        if options['json_out']:
            Path(options['json_out']).write_text(text + '\n', encoding='utf-8')

        if exit_code:
            raise CommandError(
                f"{self.command} {verb}: {document['status']}", returncode=exit_code)
        self.stderr.write(self.style.SUCCESS(f'{self.command} {verb}: pass'))
