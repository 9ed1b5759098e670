"""Homomorphisms 𝕄_r -> G for the elementary target families.

A homomorphism is a `HomParams` tuple (μ, a₀..a_{r-1}, b) checked against
its family's constraint; its comorphism is materialized with codomain a
finite stage k[𝕄_{r;t}]. `enumerate_hopf_homs` is an independent search
over generator images used to validate the closed-form classification.
"""
import logging
from dataclasses import dataclass, field, replace
from functools import lru_cache
from itertools import product

import numpy as np

from supvar.conf import supvar_setting
from supvar.exceptions import BudgetExceeded, CheckFailed, InconsistentSystem, InvalidInput
from supvar.fields import FieldSpec, decode_element, encode_element, kernel, solve_many
from supvar.polynomials import Generator, PresentedGradedRing, Relation
from supvar.superalgebra import AlgebraMorphism, add_into, build_coordinate_hopf, combine, scale

logger = logging.getLogger(__name__)

FAMILY_TAGS = ('Mr1', 'Mrs', 'MrsEta', 'Gar', 'Gaminus', 'MrEndo')
ENDO_TAGS = ('Mr1', 'Mrs', 'Gar', 'Gaminus', 'MrEndo')
ELEMENTARY_TAGS = ('Mr1', 'Mrs', 'MrsEta', 'Gar', 'Gaminus')


@dataclass(frozen=True)
class TargetFamily:
    tag: str
    r: int = 1
    s: int = 1
    eta: int = 0

    def __post_init__(self):
        if self.tag not in FAMILY_TAGS:
            raise InvalidInput(f'unknown target family {self.tag!r}', choices=list(FAMILY_TAGS))
        if self.r < 1:
            raise InvalidInput('r must be >= 1')
        if self.tag == 'Mr1':
            object.__setattr__(self, 's', 1)
        elif self.tag == 'Gar':
            object.__setattr__(self, 's', 1)
        elif self.tag == 'Gaminus':
            object.__setattr__(self, 's', 0)
        elif self.tag == 'Mrs' and self.s < 2:
            raise InvalidInput('the Mrs family needs s >= 2 (use Mr1 for s = 1)')
        elif self.tag == 'MrEndo' and self.s < 1:
            raise InvalidInput('MrEndo needs a stage s >= 1')
        if self.tag == 'MrsEta':
            if self.r < 2:
                raise InvalidInput('MrsEta needs r >= 2: σ₁ need not be primitive when r = 1')
            if not self.eta:
                raise InvalidInput('MrsEta needs η != 0')
            if self.s < 1:
                raise InvalidInput('s must be >= 1')
        elif self.eta:
            raise InvalidInput(f'{self.tag} takes no η')

    @property
    def has_mu(self):
        return self.tag != 'Gar'

    @property
    def has_a(self):
        return self.tag != 'Gaminus'

    @property
    def has_b(self):
        return self.tag == 'Mrs'

    @property
    def constrained(self):
        return self.tag in ('Mrs', 'MrsEta', 'MrEndo')

    @property
    def endomorphism(self):
        return self.tag in ENDO_TAGS

    def label(self):
        if self.tag == 'MrsEta':
            return f'M({self.r};{self.s},{self.eta})'
        if self.tag in ('Mrs', 'MrEndo'):
            return f'M({self.r};{self.s})'
        if self.tag == 'Mr1':
            return f'M({self.r};1)'
        if self.tag == 'Gar':
            return f'Ga({self.r})'
        return 'Ga-'

    def to_json(self):
        return {'family': self.tag, 'r': self.r, 's': self.s, 'eta': self.eta}


@lru_cache(maxsize=None)
def family_hopf(family, spec):
    """k[G] for the family."""
    if family.tag == 'Gaminus':
        return build_coordinate_hopf('Gaminus', spec=spec)
    if family.tag == 'Gar':
        return build_coordinate_hopf('Gar', family.r, spec=spec)
    if family.tag == 'MrsEta':
        return build_coordinate_hopf('MrsEta', family.r, family.s, family.eta, spec)
    return build_coordinate_hopf('Mrs', family.r, family.s, spec=spec)


@lru_cache(maxsize=None)
def stage_hopf(r, t, spec):
    """k[𝕄_{r;t}], the finite stage standing in for k[𝕄_r]."""
    return build_coordinate_hopf('Mr_truncated', r, t=t, spec=spec)


def family_of(H):
    """TargetFamily of a coordinate algebra built by build_coordinate_hopf."""
    meta = H.family
    tag = meta.get('family')
    if tag == 'Gaminus':
        return TargetFamily('Gaminus')
    if tag == 'Gar':
        return TargetFamily('Gar', meta['r'])
    if tag == 'MrsEta':
        return TargetFamily('MrsEta', meta['r'], meta['s'], meta['eta'])
    if tag in ('Mrs', 'Mr1', 'Mr_truncated'):
        return TargetFamily('Mr1' if meta['s'] == 1 else 'Mrs', meta['r'], meta['s'])
    raise InvalidInput(f'{H.name} is not one of the elementary families')


@dataclass(frozen=True)
class HomParams:
    family: TargetFamily
    mu: int = 0
    a: tuple = ()
    b: int = 0
    source_r: int = None

    def __post_init__(self):
        if self.source_r is None:
            object.__setattr__(self, 'source_r', self.family.r)
        object.__setattr__(self, 'a', tuple(self.a))

    @property
    def shift(self):
        return self.source_r - self.family.r

    @property
    def effective_a(self):
        """The a-coordinates after dropping the Frobenius padding."""
        return self.a[self.shift:]

    def values(self):
        out = []
        if self.family.has_mu:
            out.append(self.mu)
        if self.family.has_a:
            out.extend(self.a)
        if self.family.has_b:
            out.append(self.b)
        return tuple(out)

    def validate(self, spec):
        fam = self.family
        F = spec.arith
        if self.source_r < fam.r:
            raise InvalidInput('source height is below the target height')
        expected = self.source_r if fam.has_a else 0
        if len(self.a) != expected:
            raise InvalidInput(f'{fam.tag} needs {expected} a-coordinates, got {len(self.a)}')
        for value in self.values():
            if not isinstance(value, int) or not 0 <= value < spec.order:
                raise InvalidInput(f'{value!r} is not an element of {spec.label()}')
        if any(self.a[:self.shift]):
            raise InvalidInput('homomorphisms from a higher source factor through Frobenius: leading a-coordinates must vanish')
        if not fam.has_mu and self.mu:
            raise InvalidInput('G_a(r) targets take no μ')
        if not fam.has_b and self.b:
            raise InvalidInput(f'{fam.tag} takes no b')
        if fam.constrained:
            a0 = self.effective_a[0]
            if F.mul(self.mu, self.mu) != F.pow(a0, spec.p ** fam.r):
                raise InvalidInput('constraint μ² = a₀^{p^r} fails', mu=self.mu, a0=a0)
        return self

    def label(self):
        return '(' + ','.join(str(v) for v in self.values()) + ')'

    def to_json(self, spec):
        def enc(x):
            return x if spec.e == 1 else encode_element(spec, x)

        data = self.family.to_json()
        data.update({'source_r': self.source_r})
        if self.family.has_mu:
            data['mu'] = enc(self.mu)
        if self.family.has_a:
            data['a'] = [enc(x) for x in self.a]
        if self.family.has_b:
            data['b'] = enc(self.b)
        return data

    @classmethod
    def from_values(cls, family, values, spec, source_r=None):
        """Read (μ, a₀.., b) in the order `values()` writes them."""
        source_r = source_r or family.r
        values = [decode_element(spec, v) if not isinstance(v, int) else v for v in values]
        expected = int(family.has_mu) + (source_r if family.has_a else 0) + int(family.has_b)
        if len(values) != expected:
            raise InvalidInput(f'{family.tag} params need {expected} entries, got {len(values)}')
        it = iter(values)
        mu = next(it) if family.has_mu else 0
        a = tuple(next(it) for _ in range(source_r)) if family.has_a else ()
        b = next(it) if family.has_b else 0
        return cls(family, mu, a, b, source_r).validate(spec)


def identity_params(family):
    a = (1,) + (0,) * (family.r - 1) if family.has_a else ()
    return HomParams(family, 1 if family.has_mu else 0, a, 0)


def zero_params(family, source_r=None):
    source_r = source_r or family.r
    return HomParams(family, 0, (0,) * source_r if family.has_a else (), 0, source_r)


# comorphisms


def theta_power(T, R, m):
    """θ^{p^m} in the stage T = k[𝕄_{R;t}] (σ₁ when m = R-1)."""
    p = T.spec.p
    if m == R - 1:
        return T.element('s1')
    if m > R - 1:
        return {}
    return T.element('th' if p ** m == 1 else f'th^{p ** m}')


def generator_images(params, T, R):
    """Images of the family's generators inside T = k[𝕄_{R;t}]."""
    fam = params.family
    F = T.F
    p = T.spec.p
    r, s, ell = fam.r, fam.s, params.shift
    a = params.effective_a
    images = {}
    if fam.has_mu:
        images['t'] = scale(T.element('t'), params.mu, F)
    if not fam.has_a:
        return images
    theta = {}
    for i, ai in enumerate(a):
        theta = combine(theta, theta_power(T, R, i + ell), F, ai)
    if fam.tag == 'MrsEta':
        correction = F.mul(fam.eta, F.pow(a[0], p ** (r + s - 1)))
        theta = combine(theta, T.element(f's{p ** s}'), F, F.neg(correction))
    # for r >= 2 the image of σ₁ = θ^{p^{r-1}} is derived from θ
    images['th' if r >= 2 else 's1'] = theta
    for k in range(1, s):
        image = scale(T.element(f's{p ** k}'), F.pow(a[0], p ** (k + r - 1)), F)
        if fam.tag == 'Mrs' and k == s - 1:
            image = combine(image, T.element('s1'), F, params.b)
        images[f's{p ** k}'] = image
    return images


def comorphism_from_params(params, spec, ambient_t=None, codomain='ambient', verify=True):
    """φ*: k[G] -> k[𝕄_{r;t}] for the classified homomorphism φ.

    codomain='endo' lands in k[G] itself (k[𝕄_{r;s+1}] for the twisted family),
    which is where restriction of cohomology classes is computed.
    """
    params.validate(spec)
    fam = params.family
    source = family_hopf(fam, spec)
    R = params.source_r
    if codomain == 'endo':
        if params.shift:
            raise InvalidInput('Frobenius-twisted homomorphisms have no endomorphism codomain')
        target = stage_hopf(fam.r, fam.s + 1, spec) if fam.tag == 'MrsEta' else source
    else:
        t = ambient_t if ambient_t is not None else fam.s + 1
        minimum = fam.s + 1 if fam.tag == 'MrsEta' else max(fam.s, 1)
        if t < minimum:
            raise InvalidInput(f'ambient stage t = {t} is below {minimum}')
        target = stage_hopf(R, t, spec)
    images = generator_images(params, target, R)
    phi = AlgebraMorphism.from_generators(source, target, images, hopf=True)
    if verify:
        report = phi.check()
        if not report['pass']:
            raise CheckFailed(f'comorphism of {params.label()} is not a Hopf map', witness=report)
    return phi


def params_from_comorphism(family, phi, source_r=None):
    """Read (μ, a, b) off a comorphism k[G] -> k[𝕄_{R;t}]."""
    source, T = phi.source, phi.target
    p = T.spec.p
    R = source_r or T.family.get('r', family.r)
    mu = 0
    if family.has_mu:
        mu = phi.columns[source.generators['t']].get(T.index('t'), 0)
    a = ()
    if family.has_a:
        theta = phi.columns[source.generators['th' if family.r >= 2 else 's1']]
        coords = []
        for i in range(R):
            target = theta_power(T, R, i)
            coords.append(theta.get(next(iter(target)), 0) if target else 0)
        a = tuple(coords)
    b = 0
    if family.has_b:
        top = phi.columns[source.generators[f's{p ** (family.s - 1)}']]
        b = top.get(T.index('s1'), 0)
    return HomParams(family, mu, a, b, R)


def label_inclusion(source, target, hopf=True):
    """The comorphism of a canonical quotient: basis labels of source kept in target."""
    columns = tuple({target.index(b.label): 1} for b in source.basis)
    return AlgebraMorphism(source, target, columns, hopf)


def canonical_quotient(source_family, target_family, spec):
    """Comorphism k[target] -> k[source] of the quotient source ↠ target."""
    source = family_hopf(source_family, spec)
    target = family_hopf(target_family, spec)
    phi = label_inclusion(target, source)
    report = phi.check()
    if not report['pass']:
        raise InvalidInput(f'{source_family.label()} has no canonical quotient onto {target_family.label()}', witness=report)
    return phi


# closed-form classification


def _nr_presentation(family, spec):
    p, r = spec.p, family.r
    degrees = []
    if family.has_mu:
        degrees.append(('mu', p ** r))
    if family.has_a:
        degrees.extend((f'a{i}', 2 * p ** i) for i in range(r))
    if family.has_b:
        degrees.append(('b', 2 * p ** (r - 1)))
    gens = [Generator(name, degree, 0, degree) for name, degree in degrees]
    n = len(gens)
    relations = ()
    if family.constrained:
        lead = (2,) + (0,) * (n - 1)
        tail = [0] * n
        tail[1] = p ** r
        relations = (Relation(lead, ((tuple(tail), 1),)),)
    return PresentedGradedRing(spec, tuple(gens), relations, False, f'k[N{r}({family.label()})]')


def coordinate_algebra_Nr(family, spec=None):
    """k[𝒩_r(G)] as a presented ring; degrees are doubled so they stay integral.

    Only the elementary families are accepted, and the presentation must be
    square-free so that it is reduced over the field.
    """
    spec = spec or FieldSpec(3)
    if family.tag not in ELEMENTARY_TAGS:
        raise InvalidInput(f'{family.tag} is not an elementary supergroup', choices=list(ELEMENTARY_TAGS))
    R = _nr_presentation(family, spec)
    if not R.is_squarefree_presentation():
        raise CheckFailed(f'{R.name} is not presented square-free', witness={'relations': len(R.relations)})
    return R


def params_from_point(family, point):
    return HomParams(
        family,
        point.get('mu', 0),
        tuple(point.get(f'a{i}', 0) for i in range(family.r)) if family.has_a else (),
        point.get('b', 0),
    )


def point_from_params(params):
    fam = params.family
    point = {}
    if fam.has_mu:
        point['mu'] = params.mu
    for i, x in enumerate(params.effective_a if fam.has_a else ()):
        point[f'a{i}'] = x
    if fam.has_b:
        point['b'] = params.b
    return point


def enumerate_variety_points(R, spec=None, budget=None):
    """All points of Spec R over the field, as sorted value tuples."""
    spec = spec or R.spec
    budget = budget or supvar_setting('POINT_BUDGET')
    estimate = spec.order ** len(R.generators)
    if estimate > budget:
        raise BudgetExceeded(f'{estimate} assignments exceed the point budget', estimate=estimate, budget=budget)
    ring = replace(R, spec=spec)
    return sorted(tuple(point[name] for name in ring.names) for point in ring.points())


def classify_homs(family, spec, enumerate=False):
    """Constraint description of Hom(𝕄_r, G) and, optionally, all its field points.

    End(𝕄_r) is classified through the same presentation without the
    elementary-family check.
    """
    R = _nr_presentation(family, spec) if family.tag == 'MrEndo' else coordinate_algebra_Nr(family, spec)
    result = {
        'family': family.to_json(),
        'parameters': list(R.names),
        'reduced': R.is_squarefree_presentation(),
        'constraints': [
            f'{R.monomial_name(rel.lead)} = {" + ".join(R.monomial_name(m) for m in rel.tail_poly)}'
            for rel in R.relations
        ],
        'ring': R,
    }
    if enumerate:
        points = enumerate_variety_points(R, spec)
        result['params'] = [params_from_point(family, dict(zip(R.names, values))) for values in points]
    return result


# search oracle


def _nilpotency(name, r, p):
    if name == 't':
        return 2
    if name == 'th':
        return p ** r
    return p


def _generator_order(source):
    names = list(source.generators)
    ordered = [n for n in ('t',) if n in names]
    ordered += sorted((n for n in names if n.startswith('s')), key=lambda n: int(n[1:]))
    ordered += [n for n in ('th',) if n in names]
    return ordered


class _ImageSolver:
    """Solves Δx - x⊗1 - 1⊗x = R over the augmentation ideal of the target, per parity."""

    def __init__(self, target):
        self.T = target
        self.GF = target.spec.GF
        self.systems = {}
        for parity in (0, 1):
            cols = [k for k in range(1, target.dim) if target.parity(k) == parity]
            images = [target.reduced_coproduct(k) for k in cols]
            keys = sorted(set().union(set(), *[set(img) for img in images]))
            row = {key: i for i, key in enumerate(keys)}
            A = self.GF.Zeros((len(keys), len(cols)))
            for j, img in enumerate(images):
                for key, c in img.items():
                    A[row[key], j] = c
            null = [self._to_dict(cols, v) for v in kernel(A)] if cols else []
            self.systems[parity] = (cols, row, A, null)

    @staticmethod
    def _to_dict(cols, vec):
        return {cols[j]: int(v) for j, v in enumerate(vec.view(np.ndarray)) if v}

    def solve(self, parity, rhs):
        cols, row, A, null = self.systems[parity]
        if any(key not in row for key in rhs):
            return None
        b = self.GF.Zeros((len(row), 1))
        for key, c in rhs.items():
            b[row[key], 0] = c
        try:
            x = solve_many(A, b, 'generator image')
        except InconsistentSystem:
            return None
        return self._to_dict(cols, x[:, 0]), null


def primitive_elements(T):
    """Bases of the even and odd primitive subspaces of T."""
    solver = _ImageSolver(T)
    return {parity: solver.solve(parity, {})[1] for parity in (0, 1)}


def enumerate_hopf_homs(source, target, budget=None):
    """Every Hopf superalgebra map source -> target, by search over generator images."""
    budget = budget or supvar_setting('SEARCH_BUDGET')
    F = source.F
    q = source.spec.order
    r = source.family.get('r', 1)
    p = source.spec.p
    order = _generator_order(source)
    solver = _ImageSolver(target)
    found = []
    visited = [0]

    def partial_map(images):
        """Images of every source basis element reachable from the chosen generators."""
        known = {0: dict(target.unit)}
        chosen = []
        for name, image in images.items():
            known[source.generators[name]] = image
            chosen.append(source.generators[name])
        frontier = list(known)
        while frontier:
            fresh = []
            for g in chosen:
                for j in frontier:
                    out = source.mult.get((g, j))
                    if not out or len(out) != 1:
                        continue
                    k, c = next(iter(out.items()))
                    if k not in known:
                        known[k] = scale(target.multiply(known[g], known[j]), F.inv(c), F)
                        fresh.append(k)
            frontier = fresh
        return known

    def candidates(name, images):
        g = source.generators[name]
        known = partial_map(images)
        rhs = {}
        for (i, j), c in source.reduced_coproduct(g).items():
            if i not in known or j not in known:
                raise CheckFailed(f'generator order leaves {source.basis[i].label} undetermined before {name}')
            for a, u in known[i].items():
                for b, w in known[j].items():
                    add_into(rhs, (a, b), F.mul(c, F.mul(u, w)), F)
        solved = solver.solve(source.parity(g), rhs)
        if solved is None:
            return []
        particular, kernel = solved
        estimate = q ** len(kernel)
        if estimate > budget:
            raise BudgetExceeded(f'{estimate} candidates for {name}', estimate=estimate, budget=budget)
        out = []
        for coeffs in product(range(q), repeat=len(kernel)):
            x = dict(particular)
            for c, v in zip(coeffs, kernel):
                x = combine(x, v, F, c)
            if target.power(x, _nilpotency(name, r, p)):
                continue
            if name == 'th' and 's1' in images and target.power(x, p ** (r - 1)) != images['s1']:
                continue
            out.append(x)
        return out

    def search(i, images):
        visited[0] += 1
        if visited[0] > budget:
            raise BudgetExceeded('search budget exhausted', estimate=visited[0], budget=budget)
        if i == len(order):
            phi = AlgebraMorphism.from_generators(source, target, images, hopf=True)
            if phi.check()['pass']:
                found.append(phi)
            return
        name = order[i]
        for x in candidates(name, images):
            search(i + 1, {**images, name: x})

    search(0, {})
    logger.debug('search %s -> %s visited %d nodes, %d maps', source.name, target.name, visited[0], len(found))
    return sorted(found, key=lambda phi: phi.as_tuple())


def oracle_agreement(family, spec, ambient_t=None):
    """Compare the search oracle with the closed-form classification, as sets of matrices."""
    source = family_hopf(family, spec)
    t = ambient_t if ambient_t is not None else family.s + 1
    target = stage_hopf(family.r, t, spec)
    searched = {phi.as_tuple() for phi in enumerate_hopf_homs(source, target)}
    classified = {
        comorphism_from_params(params, spec, t).as_tuple()
        for params in classify_homs(family, spec, enumerate=True)['params']
    }
    return {
        'family': family.to_json(),
        'searched': len(searched),
        'classified': len(classified),
        'pass': searched == classified,
    }


# composition and automorphisms


def compose_endos(x, y, spec):
    """Params of the homomorphism y∘x, i.e. of the comorphism x*∘y*."""
    if x.family != y.family or not x.family.endomorphism:
        raise InvalidInput(f'{x.family.tag} and {y.family.tag} endomorphisms do not compose')
    if x.shift or y.shift:
        raise InvalidInput('Frobenius-twisted parameters are not endomorphisms')
    x_star = comorphism_from_params(x, spec, codomain='endo', verify=False)
    y_star = comorphism_from_params(y, spec, codomain='endo', verify=False)
    composite = y_star.then(x_star)
    return params_from_comorphism(x.family, composite).validate(spec)


def is_automorphism(params, spec):
    fam = params.family
    params.validate(spec)
    if not fam.endomorphism or params.shift:
        return False
    a0 = params.a[0] if fam.has_a else 1
    mu = params.mu if fam.has_mu else 1
    return bool(a0) and bool(mu)


def invert_automorphism(params, spec):
    """Inverse via the sequence ψ ∘ φ₀ ∘ φ_{r-1} ∘ ... ∘ φ₁: clear a₁.., normalize, cancel b."""
    if not is_automorphism(params, spec):
        raise InvalidInput(f'{params.label()} is not an automorphism')
    fam = params.family
    F = spec.arith
    p, r = spec.p, fam.r
    current = params
    steps = []
    if fam.has_a:
        for i in range(1, r):
            a0, ai = current.a[0], current.a[i]
            a = [1] + [0] * (r - 1)
            a[i] = F.neg(F.mul(ai, F.inv(F.pow(a0, p ** i))))
            step = HomParams(fam, 1 if fam.has_mu else 0, tuple(a), 0)
            steps.append(step)
            current = compose_endos(current, step, spec)
    normalize = HomParams(
        fam,
        F.inv(current.mu) if fam.has_mu else 0,
        ((F.inv(current.a[0]),) + (0,) * (r - 1)) if fam.has_a else (),
        0,
    )
    steps.append(normalize)
    current = compose_endos(current, normalize, spec)
    if fam.has_b and current.b:
        cancel = HomParams(fam, 1, (1,) + (0,) * (r - 1), F.neg(current.b))
        steps.append(cancel)
        current = compose_endos(current, cancel, spec)
    identity = identity_params(fam)
    if current != identity:
        raise CheckFailed('inversion sequence did not reach the identity', witness={'reached': current.label()})
    inverse = steps[0]
    for step in steps[1:]:
        inverse = compose_endos(inverse, step, spec)
    if compose_endos(params, inverse, spec) != identity:
        raise CheckFailed('inverse fails to compose to the identity', witness={'inverse': inverse.label()})
    return inverse


def enumerate_automorphisms(family, spec):
    return [
        params for params in classify_homs(family, spec, enumerate=True)['params']
        if is_automorphism(params, spec)
    ]


# naturality and Frobenius


def pushforward_hom(phi, nu, spec, target_family=None):
    """Params of the composite 𝕄_r -> G -> G' whose comorphism is ν* ∘ φ."""
    target_family = target_family or family_of(phi.source)
    nu_star = comorphism_from_params(nu, spec)
    composite = phi.then(nu_star)
    result = params_from_comorphism(target_family, composite, nu.source_r)
    result.validate(spec)
    expected = comorphism_from_params(result, spec, nu_star.target.family['s'])
    if expected.as_tuple() != composite.as_tuple():
        raise CheckFailed('pushforward leaves the classified family', witness={'params': result.label()})
    return result


def frobenius_compose(ell, params, spec=None):
    """Params of φ∘F^ℓ: Hom(𝕄_r, G) -> Hom(𝕄_{r+ℓ}, G)."""
    if ell < 0:
        raise InvalidInput('ℓ must be >= 0')
    fam = params.family
    a = (0,) * ell + tuple(params.a) if fam.has_a else ()
    result = HomParams(fam, params.mu, a, params.b, params.source_r + ell)
    if spec is not None:
        result.validate(spec)
    return result


def frobenius_bijection_check(family, ell, spec):
    """Exhaustively compare φ ↦ φ∘F^ℓ with every Hopf map k[G] -> k[𝕄_{r+ℓ;t}]."""
    t = family.s + 1
    source = family_hopf(family, spec)
    target = stage_hopf(family.r + ell, t, spec)
    lifted = {}
    for params in classify_homs(family, spec, enumerate=True)['params']:
        twisted = frobenius_compose(ell, params, spec)
        lifted.setdefault(comorphism_from_params(twisted, spec, t).as_tuple(), []).append(params.label())
    searched = {phi.as_tuple() for phi in enumerate_hopf_homs(source, target)}
    injective = all(len(v) == 1 for v in lifted.values())
    surjective = searched <= set(lifted)
    return {
        'family': family.to_json(),
        'ell': ell,
        'source_points': sum(len(v) for v in lifted.values()),
        'target_points': len(searched),
        'injective': injective,
        'surjective': surjective,
        'pass': injective and surjective and set(lifted) <= searched,
    }
