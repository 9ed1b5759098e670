from supvar.management.base import RunCommand


class Command(RunCommand):
    help = 'Cohomology dimensions, restriction of classes and the map psi'
    command = 'cohomology'
    verbs = {
        'dims': 'Computed dimensions against the presented ring',
        'restrict': 'Restrict a class along a homomorphism',
        'psi': 'Properties of psi and its point map',
    }

    def add_degree_arguments(self, parser):
        parser.add_argument('--n-max', '--n', dest='n_max', type=int, help='Top degree (default: 4)')
        parser.add_argument(
            '--method',
            type=str,
            choices=['auto', 'cobar', 'resolution'],
            help='Engine for the dimensions (default: auto)'
        )

    add_dims_arguments = add_degree_arguments
    add_psi_arguments = add_degree_arguments

    def add_restrict_arguments(self, parser):
        parser.add_argument(
            '--params',
            type=str,
            required=True,
            help="Parameters (μ, a₀.., b) as a comma list, e.g. '1,1,1'"
        )
        parser.add_argument(
            '--class',
            dest='cohomology_class',
            type=str,
            help='Class to restrict, e.g. w or y*w (default: every generator)'
        )
