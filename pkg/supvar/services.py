"""Run documents shared by the management commands and the API views.

Every verb is a function of a validated config dict returning a JSON-safe
result; `run` validates, applies the per-run overrides, maps kernel errors
to a status and exit code, and stores a Certificate on request.
"""
import json
import logging

import numpy as np
from django.core.serializers.json import DjangoJSONEncoder
from rest_framework import serializers

from supvar import battery as shipped
from supvar.cohomology import (
    formula_agreement, low_degree_agreement, named_class, presented_cohomology_ring, restrict_class,
)
from supvar.conf import supvar_overrides
from supvar.exceptions import InvalidInput, SupvarError
from supvar.fields import FieldSpec, encode_element
from supvar.homvariety import (
    HomParams, TargetFamily, classify_homs, family_hopf, frobenius_bijection_check, oracle_agreement,
)
from supvar.models import Certificate
from supvar.psi import psi_point_map, verify_psi_properties
from supvar.serializers import (
    CohomologyDimsRequestSerializer, FieldRequestSerializer, HomRequestSerializer, HopfRequestSerializer,
    RestrictRequestSerializer, SupportRequestSerializer,
)
from supvar.superalgebra import PPolynomial, build_group_hopf, dual_hopf, duality_check, hopf_to_json, verify_hopf_axioms
from supvar.support import (
    aut_orbits, cohomological_support, compare_supports, equivariance_check, support_set,
)
from supvar.supermatrix import SuperMatrixTuple, validate_tuple

logger = logging.getLogger(__name__)

EXIT_CODES = {'pass': 0, 'fail': 1, 'budget': 2, 'invalid': 3}

VERBS = {}


class DocumentEncoder(DjangoJSONEncoder):
    def default(self, o):
        if isinstance(o, np.integer):
            return int(o)
        if isinstance(o, np.ndarray):
            return o.view(np.ndarray).tolist()
        if isinstance(o, (set, frozenset)):
            return sorted(o)
        return super().default(o)


def dumps(document):
    return json.dumps(document, cls=DocumentEncoder, sort_keys=True, indent=2, ensure_ascii=False)


def verb(command, name, serializer_class, exercises):
    def register(func):
        VERBS[(command, name)] = (func, serializer_class, tuple(exercises))
        return func
    return register


def field_spec(config):
    return FieldSpec(config['p'], config['e'])


def target_family(config):
    return TargetFamily(config['family'], config['r'], config['s'], config['eta'])


def load_module(config, family, spec):
    """The module named by config['module']: a battery entry or a supplied tuple."""
    module = config['module']
    if isinstance(module, str):
        name = module.split(':', 1)[1]
        return name, shipped.battery_module(family, spec, name, config['seed'])
    t = SuperMatrixTuple.from_json(module, spec)
    report = validate_tuple(t)
    if not report['pass']:
        failed = next(key for key, entry in report.items() if key != 'pass' and not entry['pass'])
        raise InvalidInput(f'supplied tuple violates {failed}', witness=report[failed]['witness'])
    return 'supplied', t


# field


@verb('field', 'info', FieldRequestSerializer, ['Setup: finite field of odd characteristic'])
def field_info(config):
    spec = field_spec(config)
    result = {'field': spec.to_json(), 'order': spec.order, 'pass': True}
    if config['elements']:
        result['elements'] = [encode_element(spec, x) for x in spec.arith.elements()]
    return result


# hom


@verb('hom', 'classify', HomRequestSerializer, ['Proposition: homomorphisms M_r -> G', 'Lemma: coordinate ring of N_r(G)'])
def hom_classify(config):
    spec, family = field_spec(config), target_family(config)
    classified = classify_homs(family, spec, enumerate=config['enumerate'] or config['oracle'])
    result = {
        'family': family.to_json(),
        'parameters': classified['parameters'],
        'constraints': classified['constraints'],
        'reduced': classified['reduced'],
        'pass': classified['reduced'],
    }
    if 'params' in classified:
        result['count'] = len(classified['params'])
        result['params'] = [list(params.values()) for params in classified['params']]
    if config['oracle']:
        result['oracle'] = oracle_agreement(family, spec)
        result['pass'] = result['oracle']['pass']
    return result


@verb('hom', 'frobenius', HomRequestSerializer, ['Lemma: composition with the super Frobenius'])
def hom_frobenius(config):
    return frobenius_bijection_check(target_family(config), config['ell'], field_spec(config))


@verb('hom', 'orbits', SupportRequestSerializer, ['Lemma: automorphisms of M_{r;s}', 'Example: two Aut-orbits in N_1(M_{1;s})'])
def hom_orbits(config):
    result = aut_orbits(target_family(config), field_spec(config))
    result['pass'] = True
    return result


# hopf


def _group_algebra(family, spec):
    if family.tag == 'Gar':
        return dual_hopf(family_hopf(family, spec)), None
    s = 0 if family.tag == 'Gaminus' else family.s
    grp = build_group_hopf(family.r, PPolynomial.monomial(s), family.eta, spec)
    return grp, grp.partner


@verb('hopf', 'verify', HopfRequestSerializer, ['Setup: coordinate and group algebras of multiparameter supergroups'])
def hopf_verify(config):
    spec, family = field_spec(config), target_family(config)
    if config['kind'] == 'coordinate':
        H, partner = family_hopf(family, spec), None
    else:
        H, partner = _group_algebra(family, spec)
    result = {'algebra': H.name, 'dim': H.dim, 'axioms': verify_hopf_axioms(H)}
    result['pass'] = result['axioms']['pass']
    if partner is not None:
        result['duality'] = duality_check(partner, H)
        result['pass'] = result['pass'] and result['duality']['pass']
    if config['export']:
        result['structure'] = hopf_to_json(H)
    return result


# cohomology


@verb('cohomology', 'dims', CohomologyDimsRequestSerializer, ['Theorem: cohomology ring of M_r', 'Setup: cobar complex'])
def cohomology_dims(config):
    return low_degree_agreement(target_family(config), field_spec(config), config['n_max'], config['method'])


@verb('cohomology', 'restrict', RestrictRequestSerializer, ['Lemma: restriction of y, lambda_i, x_i, w_s along M_r -> G'])
def cohomology_restrict(config):
    spec, family = field_spec(config), target_family(config)
    params = HomParams.from_values(family, config['params'], spec)
    ring = presented_cohomology_ring(family, spec)
    names = [config['cohomology_class']] if config['cohomology_class'] else list(ring.names)
    restricted = {}
    for name in names:
        poly, target = restrict_class(params, named_class(ring, family, name), spec)
        restricted[name] = {target.monomial_name(m): c for m, c in sorted(poly.items())}
    result = {'params': params.label(), 'pass': True}
    if len(names) == 1:
        result['class'] = names[0]
        result['restriction'] = restricted[names[0]]
    else:
        result['restriction'] = restricted
    if not params.shift:
        result['formula'] = formula_agreement(family, spec, [params], names)
        result['pass'] = result['formula']['pass']
    return result


@verb('cohomology', 'psi', CohomologyDimsRequestSerializer, ['Corollary: psi_r on generators', 'Lemma: image of psi_r contains p^r-th powers'])
def cohomology_psi(config):
    spec, family = field_spec(config), target_family(config)
    properties = verify_psi_properties(family, spec, config['degree_cap'])
    points = psi_point_map(family, spec)
    return {'properties': properties, 'points': points, 'pass': properties['pass'] and points['pass']}


# support


@verb('support', 'compare', SupportRequestSerializer, ['Theorem: support sets in height one'])
def support_compare(config):
    spec, family = field_spec(config), target_family(config)
    name, module = load_module(config, family, spec)
    result = compare_supports(family, module, spec, config['degree_cap'], name, config.get('threads'))
    result['pass'] = result['status'] == 'pass'
    return result


@verb('support', 'set', SupportRequestSerializer, ['Definition: support set N_1(G)_M', 'Lemma: injective dimension of M and End(M)'])
def support_points(config):
    spec, family = field_spec(config), target_family(config)
    name, module = load_module(config, family, spec)
    result = support_set(family, module, spec, name, config.get('threads')).to_json()
    result['pass'] = True
    return result


@verb('support', 'cohomological', SupportRequestSerializer, ['Definition: cohomological support |G|_M'])
def support_cohomological(config):
    spec, family = field_spec(config), target_family(config)
    name, module = load_module(config, family, spec)
    result = cohomological_support(family, module, spec, config['degree_cap'], name).to_json()
    result['pass'] = True
    return result


@verb('support', 'equivariance', SupportRequestSerializer, ['Lemma: equivariance of support sets'])
def support_equivariance(config):
    spec, family = field_spec(config), target_family(config)
    if 'nu' not in config:
        raise InvalidInput('the equivariance verb needs --nu')
    nu = HomParams.from_values(family, config['nu'], spec)
    name, module = load_module(config, family, spec)
    return equivariance_check(family, module, nu, spec, name)


def _status(result):
    if result.get('status') == 'inconclusive':
        return 'budget'
    return 'pass' if result.get('pass', True) else 'fail'


def run(command, name, data, user=None, save=False):
    """Validate, execute and (optionally) store one run; returns (document, exit_code)."""
    if (command, name) not in VERBS:
        raise InvalidInput(f'unknown verb {command} {name}')
    func, serializer_class, exercises = VERBS[(command, name)]
    document = {'command': command, 'verb': name, 'exercises': list(exercises)}
    serializer = serializer_class(data=data)
    try:
        serializer.is_valid(raise_exception=True)
        config = dict(serializer.validated_data)
        document['config'] = config
        with supvar_overrides(
            SEARCH_BUDGET=config.get('budget'),
            COBAR_BUDGET=config.get('cobar_budget') or config.get('budget'),
            DEGREE_CAP=config['degree_cap'],
            SEED=config['seed'],
            THREADS=config.get('threads'),
        ):
            result = func(config)
        document['status'] = _status(result)
        document['result'] = result
    except serializers.ValidationError as exc:
        document.update(status='invalid', error={'error': 'InvalidInput', 'message': exc.detail})
    except SupvarError as exc:
        logger.warning('%s %s stopped: %s', command, name, exc.message)
        document.update(status=exc.status, error=exc.as_dict())
    document['exit_code'] = EXIT_CODES[document['status']]
    document = json.loads(dumps(document))
    if save:
        Certificate.objects.create(
            user=user if user is not None and user.is_authenticated else None,
            command=command,
            verb=name,
            status=document['status'],
            exit_code=document['exit_code'],
            config=document.get('config', {}),
            payload=document,
        )
    return document, document['exit_code']
