from supvar.management.base import RunCommand


class Command(RunCommand):
    help = 'Describe the finite field F_q used by the other commands'
    command = 'field'
    verbs = {
        'info': 'Modulus and order, optionally every element',
    }

    def add_info_arguments(self, parser):
        parser.add_argument(
            '--elements',
            action='store_true',
            default=None,
            help='List every element as base-p digits'
        )
