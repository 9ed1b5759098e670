"""The ring map ψ: H(G, k) -> k[𝒩_r(G)] and its point-level shadow.

H(G, k) is the even/odd-diagonal subring of H^•(G, k). ψ multiplies degrees
by p^r/2; both sides use doubled degrees, so a class of degree n lands in
doubled degree n·p^r.
"""
import logging

import numpy as np

from supvar.cohomology import cohomology_family, homogeneous_degree, named_class, presented_cohomology_ring, pullback_class
from supvar.conf import supvar_setting
from supvar.exceptions import CheckFailed, InconsistentSystem, InvalidInput
from supvar.fields import kernel, solve_many
from supvar.homvariety import (
    canonical_quotient, classify_homs, comorphism_from_params, coordinate_algebra_Nr,
    enumerate_variety_points, point_from_params, pushforward_hom,
)
from supvar.polynomials import PresentedGradedRing, RingMap

logger = logging.getLogger(__name__)

PSI_FAMILIES = ('Mr1', 'Mrs', 'MrsEta', 'Gar', 'Gaminus')


def _psi_images(family, source, target, spec):
    F = spec.arith
    p, r = spec.p, family.r

    def power(name, e, c=1):
        return target.scale(target.pow(target.gen(name), e), c)

    images = {}
    if 'y' in source.index:
        images['y'] = target.gen('mu')
    if family.tag == 'MrsEta':
        for i in range(1, r):
            images[f'x{i}'] = power(f'a{r - i - 1}', p ** (i + 1))
        images['w'] = power(f'a{r - 1}', p, F.pow(F.neg(F.inv(family.eta)), p))
    elif family.has_a:
        for i in range(1, r + 1):
            images[f'x{i}'] = power(f'a{r - i}', p ** i)
        if family.has_b:
            images['w'] = power('b', p)
    return {name: target.normal_form(image) for name, image in images.items()}


def psi_map(family, spec):
    """ψ as a RingMap from the presented cohomology ring (λ's go to 0) to k[𝒩_r(G)]."""
    if family.tag not in PSI_FAMILIES:
        raise InvalidInput(f'ψ is defined for the elementary families, not {family.tag}')
    source = presented_cohomology_ring(family, spec)
    target = coordinate_algebra_Nr(family, spec)
    return RingMap(source, target, _psi_images(family, source, target, spec))


def diagonal_generators(ring):
    """Generators lying in H(G, k): parity equal to degree mod 2."""
    return [g.name for g in ring.generators if g.parity == g.degree % 2]


def spectrum_ring(ring):
    """Commutative ring on the diagonal generators, carrying the relations among them."""
    keep = [i for i, g in enumerate(ring.generators) if g.parity == g.degree % 2]

    def restrict(m):
        return tuple(m[i] for i in keep)

    relations = []
    for rel in ring.relations:
        support = {i for i, e in enumerate(rel.lead) if e}
        for m in rel.tail_poly:
            support |= {i for i, e in enumerate(m) if e}
        if support <= set(keep):
            relations.append(type(rel)(restrict(rel.lead), tuple((restrict(m), c) for m, c in rel.tail)))
    gens = tuple(ring.generators[i] for i in keep)
    return PresentedGradedRing(ring.spec, gens, tuple(relations), False, f'|{ring.name}|')


def _linear_map(psi, monomials):
    """Matrix of ψ on a list of source monomials, and the target monomials indexing its rows."""
    GF = psi.source.spec.GF
    images = [psi.apply({m: 1}) for m in monomials]
    rows = sorted({t for image in images for t in image})
    position = {t: i for i, t in enumerate(rows)}
    M = np.zeros((len(rows), len(monomials)), dtype=int)
    for c, image in enumerate(images):
        for t, v in image.items():
            M[position[t], c] = v
    return GF(M), rows


def _is_nilpotent(ring, z, bound):
    power = z
    for _ in range(bound):
        power = ring.mul(power, z)
        if not power:
            return True
    return False


def verify_psi_properties(family, spec, cap=None):
    """Well-definedness, degree scaling, nilpotent kernel up to `cap`, and p^r-power surjectivity."""
    cap = supvar_setting('DEGREE_CAP') if cap is None else cap
    psi = psi_map(family, spec)
    source, target = psi.source, psi.target
    p, r = spec.p, family.r
    report = {'family': family.to_json(), 'cap': cap}

    report['well_defined'] = {'pass': psi.respects_relations()}

    bad = None
    for name in diagonal_generators(source):
        image = psi.images.get(name, {})
        expected = source.generators[source.index[name]].degree * p ** r
        if any(target.degree(m) != expected for m in image):
            bad = name
            break
    report['degree'] = {'pass': bad is None, 'witness': bad}

    exterior_count = sum(source.exterior)
    kernel_dims = []
    witness = None
    for n in range(1, cap + 1):
        monomials = source.diagonal_monomials(n)
        if not monomials:
            kernel_dims.append(0)
            continue
        M, _ = _linear_map(psi, monomials)
        null = kernel(M)
        kernel_dims.append(int(null.shape[0]))
        for row in null:
            z = {m: int(c) for m, c in zip(monomials, row) if c}
            if not _is_nilpotent(source, z, exterior_count + 1):
                witness = {'degree': n, 'element': source.format_poly(z)}
                break
        if witness:
            break
    report['kernel_nilpotent'] = {'pass': witness is None, 'kernel_dims': kernel_dims, 'witness': witness}

    witnesses = {}
    missing = None
    for name in target.names:
        z = pr_power_witness(psi, name, spec, r)
        if z is None:
            missing = name
            break
        witnesses[name] = source.format_poly(z)
    report['pr_power_surjective'] = {'pass': missing is None, 'witnesses': witnesses, 'witness': missing}
    report['pass'] = all(report[key]['pass'] for key in ('well_defined', 'degree', 'kernel_nilpotent', 'pr_power_surjective'))
    return report


def pr_power_witness(psi, name, spec, r):
    """Source element z of H(G, k) with ψ(z) = name^{p^r}, found by linear algebra, or None."""
    target = psi.target
    goal = target.normal_form(target.pow(target.gen(name), spec.p ** r))
    n = target.generators[target.index[name]].degree
    monomials = psi.source.diagonal_monomials(n)
    if not monomials:
        return None
    M, rows = _linear_map(psi, monomials)
    position = {t: i for i, t in enumerate(rows)}
    if any(t not in position for t in goal):
        return None
    b = np.zeros(len(rows), dtype=int)
    for t, v in goal.items():
        b[position[t]] = v
    try:
        x = solve_many(M, spec.GF(b), what=f'{name}^(p^r) in the image of ψ')
    except InconsistentSystem:
        return None
    return {m: int(c) for m, c in zip(monomials, x[:, 0]) if c}


def psi_point_map(family, spec):
    """Ψ on field points: 𝒩_r(G)(F_q) -> points of the cohomology spectrum, with a bijectivity report."""
    psi = psi_map(family, spec)
    spectrum = spectrum_ring(psi.source)
    images = {}
    for params in classify_homs(family, spec, enumerate=True)['params']:
        point = point_from_params(params)
        value = tuple(psi.target.evaluate(psi.images.get(name, {}), point) for name in spectrum.names)
        images.setdefault(value, []).append(params.label())
    points = set(enumerate_variety_points(spectrum, spec))
    collisions = [labels for labels in images.values() if len(labels) > 1]
    missed = sorted(points - set(images))
    return {
        'family': family.to_json(),
        'coordinates': list(spectrum.names),
        'homomorphisms': sum(len(labels) for labels in images.values()),
        'spectrum_points': len(points),
        'injective': not collisions,
        'surjective': not missed,
        'pass': not collisions and not missed and set(images) <= points,
        'witness': (collisions[0] if collisions else (list(missed[0]) if missed else None)),
    }


def default_point_classes(family):
    tag = cohomology_family(family).tag
    return {
        'Mr1': ['y', 'x1', 'w', 'y*w'],
        'Mrs': ['y', 'x1', 'w', 'y*w'],
        'Gar': ['x1'],
        'Gaminus': ['y', 'y^2'],
    }.get(tag, [])


def psi_point_check(family, spec, params_list=None, classes=None):
    """For r = 1: restricting z along φ into k[𝕄_{1;s+1}] gives ψ(z)(φ)·y^n."""
    if family.r != 1:
        raise InvalidInput('the point check compares with 𝕄_1 and needs r = 1')
    psi = psi_map(family, spec)
    ring = psi.source
    classes = classes or default_point_classes(family)
    params_list = params_list if params_list is not None else classify_homs(family, spec, enumerate=True)['params']
    t = family.s + 1 if family.tag != 'Gaminus' else 1
    checked = 0
    for params in params_list:
        phi = comorphism_from_params(params, spec, ambient_t=t)
        point = point_from_params(params)
        for name in classes:
            z = named_class(ring, family, name)
            n = homogeneous_degree(ring, z)
            restricted, target = pullback_class(phi, z, ring)
            value = psi.target.evaluate(psi.apply(z), point)
            expected = target.scale(target.pow(target.gen('y'), n), value)
            if restricted != expected:
                return {
                    'family': family.to_json(), 'pass': False, 'checked': checked,
                    'witness': {
                        'params': params.label(), 'class': name,
                        'restricted': target.format_poly(restricted), 'expected': target.format_poly(expected),
                    },
                }
            checked += 1
    return {'family': family.to_json(), 'pass': True, 'checked': checked, 'witness': None}


def naturality_check(source_family, target_family, spec, classes=None):
    """Along a canonical quotient q: G ↠ G', ψ_G(q*z)(φ) = ψ_{G'}(z)(q∘φ) at every field point φ."""
    q = canonical_quotient(source_family, target_family, spec)
    psi_source = psi_map(source_family, spec)
    psi_target = psi_map(target_family, spec)
    ring = psi_target.source
    classes = classes or diagonal_generators(ring)
    pulled = {}
    for name in classes:
        z = named_class(ring, target_family, name)
        image, source_ring = pullback_class(q, z, ring)
        if source_ring.name != psi_source.source.name:
            raise CheckFailed('pullback landed outside the source cohomology ring', witness=source_ring.name)
        pulled[name] = (psi_source.apply(image), psi_target.apply(z))
    checked = 0
    for params in classify_homs(source_family, spec, enumerate=True)['params']:
        composite = pushforward_hom(q, params, spec, target_family)
        here, there = point_from_params(params), point_from_params(composite)
        for name, (lhs, rhs) in pulled.items():
            left = psi_source.target.evaluate(lhs, here)
            right = psi_target.target.evaluate(rhs, there)
            if left != right:
                return {
                    'source': source_family.to_json(), 'target': target_family.to_json(), 'pass': False,
                    'checked': checked, 'witness': {'params': params.label(), 'class': name, 'left': left, 'right': right},
                }
            checked += 1
    return {'source': source_family.to_json(), 'target': target_family.to_json(), 'pass': True, 'checked': checked, 'witness': None}
