from supvar.management.base import RunCommand


class Command(RunCommand):
    help = 'Support sets and cohomological supports of height-one modules'
    command = 'support'
    verbs = {
        'compare': 'Compare the support set with the cohomological support',
        'set': 'Points with infinite injective dimension after pullback',
        'cohomological': 'Zero set of the annihilator ideal up to the degree cap',
        'equivariance': 'Check support sets commute with an endomorphism',
    }

    def add_config_arguments(self, parser):
        super().add_config_arguments(parser)
        parser.add_argument(
            '--module',
            type=str,
            help='battery:<name>, or a path (optionally @path) to a JSON supermatrix tuple (default: battery:trivial)'
        )

    def add_equivariance_arguments(self, parser):
        parser.add_argument(
            '--nu',
            type=str,
            required=True,
            help='Endomorphism parameters as a comma list'
        )
