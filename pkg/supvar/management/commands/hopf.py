from supvar.management.base import RunCommand


class Command(RunCommand):
    help = 'Build a coordinate or group Hopf superalgebra and verify its axioms'
    command = 'hopf'
    verbs = {
        'verify': 'Run the axiom suite (and the duality pairing for group algebras)',
    }

    def add_verify_arguments(self, parser):
        parser.add_argument(
            '--kind',
            type=str,
            choices=['coordinate', 'group'],
            help='k[G] or kG (default: coordinate)'
        )
        parser.add_argument(
            '--export',
            action='store_true',
            default=None,
            help='Embed the structure constants in the document'
        )
