from supvar.management.base import RunCommand


class Command(RunCommand):
    help = 'Classify homomorphisms M_r -> G and check them against the search oracle'
    command = 'hom'
    verbs = {
        'classify': 'Constraints and field points of Hom(M_r, G)',
        'frobenius': 'Check that composing with Frobenius is a bijection',
        'orbits': 'Automorphism orbits on N_1(G) (height one)',
    }

    def add_classify_arguments(self, parser):
        parser.add_argument(
            '--enumerate',
            action='store_true',
            default=None,
            help='List every field point'
        )
        parser.add_argument(
            '--oracle',
            action='store_true',
            default=None,
            help='Compare with the generator-image search'
        )

    def add_frobenius_arguments(self, parser):
        parser.add_argument('--ell', type=int, help='Frobenius twist (default: 1)')
