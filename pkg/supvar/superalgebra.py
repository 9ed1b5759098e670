"""Coordinate Hopf superalgebras k[G] and group algebras kG as structure constants.

Elements are sparse dicts {basis index: integer-coded coefficient}; tensors
are dicts {(i, j): coefficient}. Products of odd elements pick up the Koszul
sign (a (x) b)(c (x) d) = (-1)^{|b||c|} ac (x) bd.
"""
import logging
from dataclasses import dataclass, field, replace
from functools import cached_property

import numpy as np

from supvar.exceptions import CheckFailed, InvalidInput
from supvar.fields import FieldSpec, rank

logger = logging.getLogger(__name__)

COORDINATE_FAMILIES = ('Mrs', 'Mr1', 'MrsEta', 'Gar', 'Gaminus', 'Mr_truncated')


def lucas_binomial(n, k, p):
    """C(n, k) mod p by Lucas's theorem."""
    if k < 0 or k > n:
        return 0
    result = 1
    while n or k:
        ni, ki = n % p, k % p
        if ki > ni:
            return 0
        num = den = 1
        for i in range(ki):
            num *= ni - i
            den *= i + 1
        result = result * (num // den) % p
        n //= p
        k //= p
    return result


def add_into(target, key, value, F):
    if not value:
        return
    total = F.add(target.get(key, 0), value)
    if total:
        target[key] = total
    else:
        target.pop(key, None)


def scale(x, c, F):
    if not c:
        return {}
    return {k: F.mul(c, v) for k, v in x.items()}


def combine(x, y, F, c=1):
    result = dict(x)
    for k, v in y.items():
        add_into(result, k, F.mul(c, v), F)
    return result


@dataclass(frozen=True)
class BasisElement:
    label: str
    parity: int
    degree: int


@dataclass(frozen=True, eq=False)
class FinDimHopf:
    spec: FieldSpec
    basis: tuple
    mult: dict
    unit: dict
    comult: dict
    counit: tuple
    antipode: tuple
    generators: dict = field(default_factory=dict)
    graded: bool = True
    name: str = ''
    family: dict = field(default_factory=dict)
    pairing: tuple = None
    partner: object = None

    @property
    def F(self):
        return self.spec.arith

    @property
    def dim(self):
        return len(self.basis)

    @cached_property
    def labels(self):
        return {b.label: i for i, b in enumerate(self.basis)}

    @cached_property
    def recipes(self):
        return factorizations(self)

    def index(self, label):
        if label not in self.labels:
            raise InvalidInput(f'{self.name} has no basis element {label!r}')
        return self.labels[label]

    def element(self, label):
        return {self.index(label): 1}

    def gen(self, name):
        return {self.generators[name]: 1}

    def parity(self, i):
        return self.basis[i].parity

    def multiply(self, x, y):
        F = self.F
        result = {}
        for i, a in x.items():
            for j, b in y.items():
                c = F.mul(a, b)
                for k, m in self.mult.get((i, j), {}).items():
                    add_into(result, k, F.mul(c, m), F)
        return result

    def power(self, x, n):
        result = dict(self.unit)
        for _ in range(n):
            result = self.multiply(result, x)
        return result

    def coproduct(self, x):
        F = self.F
        result = {}
        for k, c in x.items():
            for ij, v in self.comult[k].items():
                add_into(result, ij, F.mul(c, v), F)
        return result

    def apply_counit(self, x):
        F = self.F
        return F.total(F.mul(c, self.counit[k]) for k, c in x.items())

    def apply_antipode(self, x):
        F = self.F
        result = {}
        for k, c in x.items():
            for i, v in self.antipode[k].items():
                add_into(result, i, F.mul(c, v), F)
        return result

    def tensor_multiply(self, X, Y):
        F = self.F
        result = {}
        for (i1, j1), a in X.items():
            for (i2, j2), b in Y.items():
                left = self.mult.get((i1, i2))
                right = self.mult.get((j1, j2))
                if not left or not right:
                    continue
                c = F.mul(a, b)
                if self.parity(j1) and self.parity(i2):
                    c = F.neg(c)
                for k, u in left.items():
                    for l, w in right.items():
                        add_into(result, (k, l), F.mul(c, F.mul(u, w)), F)
        return result

    def reduced_coproduct(self, k):
        F = self.F
        delta = dict(self.comult[k])
        if k != 0:
            add_into(delta, (k, 0), F.neg(1), F)
            add_into(delta, (0, k), F.neg(1), F)
        return delta

    def is_primitive(self, x):
        F = self.F
        expected = {}
        for k, c in x.items():
            add_into(expected, (k, 0), c, F)
            add_into(expected, (0, k), c, F)
        return self.coproduct(x) == expected

    def label_of(self, x):
        return ' + '.join(f'{c}*{self.basis[k].label}' for k, c in sorted(x.items())) or '0'

    def to_vector(self, x):
        v = self.spec.GF.Zeros(self.dim)
        for k, c in x.items():
            v[k] = c
        return v

    def to_json(self):
        return hopf_to_json(self)


# coordinate algebras


def _coordinate_basis(p, r, s, with_tau):
    cap_theta = p ** (r - 1)
    taus = (0, 1) if with_tau else (0,)
    keys = [(a, j, eps) for j in range(p ** s) for a in range(cap_theta) for eps in taus]
    return sorted(keys, key=lambda key: (key[1], key[0], key[2]))


def coordinate_label(a, j, eps):
    parts = []
    if a == 1:
        parts.append('th')
    elif a > 1:
        parts.append(f'th^{a}')
    if j:
        parts.append(f's{j}')
    if eps:
        parts.append('t')
    return ' '.join(parts) or '1'


def parse_coordinate_label(label):
    """(a, j, ε) for the basis label of θ^a σ_j τ^ε."""
    a = j = eps = 0
    for part in label.split():
        if part == '1':
            continue
        if part == 't':
            eps = 1
        elif part == 'th':
            a = 1
        elif part.startswith('th^'):
            a = int(part[3:])
        elif part.startswith('s'):
            j = int(part[1:])
    return a, j, eps


def _coordinate_product(p, r, s, x, y):
    """Single-term product of two coordinate basis keys: (key, integer coefficient) or None."""
    (a, j, eps), (b, k, eta) = x, y
    if eps and eta:
        return None
    cap_theta = p ** (r - 1)
    coeff = lucas_binomial(j + k, j, p)
    total = j + k
    power = a + b
    if power >= cap_theta:
        power -= cap_theta
        coeff = coeff * lucas_binomial(total + 1, 1, p) % p
        total += 1
    if not coeff or total >= p ** s:
        return None
    return (power, total, eps + eta), coeff


def _build_coordinate(spec, r, s, with_tau, eta=0, name=''):
    p = spec.p
    F = spec.arith
    keys = _coordinate_basis(p, r, s, with_tau)
    position = {key: i for i, key in enumerate(keys)}
    basis = tuple(
        BasisElement(coordinate_label(*key), key[2], 2 * key[0] + 2 * key[1] * p ** (r - 1) + key[2] * p ** r)
        for key in keys
    )
    mult = {}
    for x in keys:
        for y in keys:
            product = _coordinate_product(p, r, s, x, y)
            if product:
                mult[(position[x], position[y])] = {position[product[0]]: F.from_int(product[1])}

    generators = {}
    if with_tau:
        generators['t'] = position[(0, 0, 1)]
    if r >= 2:
        generators['th'] = position[(1, 0, 0)]
    for k in range(s):
        generators[f's{p ** k}'] = position[(0, p ** k, 0)]

    def sigma(j):
        return position.get((0, j, 0))

    def sigma_tau(j):
        return position.get((0, j, 1))

    def sigma_coproduct(i):
        delta = {}
        for u in range(i + 1):
            add_into(delta, (sigma(u), sigma(i - u)), 1, F)
        if with_tau:
            for u in range(i - p + 1):
                add_into(delta, (sigma_tau(u), sigma_tau(i - p - u)), 1, F)
        return delta

    generator_coproducts = {}
    if with_tau:
        t = generators['t']
        generator_coproducts[t] = {(t, 0): 1, (0, t): 1}
    for k in range(s):
        generator_coproducts[sigma(p ** k)] = sigma_coproduct(p ** k)
    if r >= 2:
        th = generators['th']
        delta = {(th, 0): 1, (0, th): 1}
        if eta:
            twist = F.neg(eta)
            for i in range(1, p ** s):
                add_into(delta, (sigma(i), sigma(p ** s - i)), twist, F)
            if with_tau:
                for i in range(p ** s - p + 1):
                    add_into(delta, (sigma_tau(i), sigma_tau(p ** s - p - i)), twist, F)
        generator_coproducts[th] = delta

    H = FinDimHopf(
        spec=spec, basis=basis, mult=mult, unit={0: 1}, comult={}, counit=(),
        antipode=(), generators=generators, graded=not eta, name=name,
    )
    comult = {0: {(0, 0): 1}}
    for k, key in enumerate(keys):
        if k == 0:
            continue
        a, j, eps = key
        if k in generator_coproducts:
            comult[k] = generator_coproducts[k]
            continue
        if eps:
            g, rest, c = generators['t'], position[(a, j, 0)], 1
        elif a:
            g, rest, c = generators['th'], position[(a - 1, j, 0)], 1
        else:
            low = next(e for e in range(s) if (j // p ** e) % p)
            g, rest, c = sigma(p ** low), sigma(j - p ** low), (j // p ** low) % p
        product = H.tensor_multiply(comult[g], comult[rest])
        comult[k] = scale(product, F.inv(F.from_int(c)), F)
    counit = tuple(1 if k == 0 else 0 for k in range(len(keys)))
    H = _replace(H, comult=comult, counit=counit)
    return _replace(H, antipode=derive_antipode(H))


def _replace(H, **changes):
    return replace(H, **changes)


def build_coordinate_hopf(family, r=1, s=1, eta=0, spec=None, t=None):
    """k[G] for G in 𝕄_{r;s}, 𝕄_{r;s,η}, G_{a(r)}, G_a^- or the truncation 𝕄_{r;t}."""
    spec = spec or FieldSpec(3)
    if family not in COORDINATE_FAMILIES:
        raise InvalidInput(f'unknown coordinate family {family!r}')
    if r < 1:
        raise InvalidInput('r must be >= 1')
    eta = eta % spec.p if isinstance(eta, int) and spec.e == 1 else eta
    meta = {'family': family, 'r': r, 's': s, 'eta': eta}
    if family == 'Gaminus':
        H = _build_coordinate(spec, 1, 0, True, name='k[Ga-]')
        meta.update(r=1, s=0)
    elif family == 'Gar':
        H = _build_coordinate(spec, r, 1, False, name=f'k[Ga({r})]')
        meta.update(s=1)
    elif family == 'MrsEta':
        if r < 2:
            raise InvalidInput('the twisted family needs r >= 2 (σ₁ is not primitive for r = 1)')
        if not eta:
            raise InvalidInput('the twisted family needs η != 0')
        if s < 1:
            raise InvalidInput('s must be >= 1')
        H = _build_coordinate(spec, r, s, True, eta=eta, name=f'k[M({r};{s},{eta})]')
    else:
        if family == 'Mr1':
            s = 1
        if family == 'Mr_truncated':
            s = t if t is not None else s
        if s < 1:
            raise InvalidInput('s must be >= 1')
        meta.update(s=s, eta=0)
        H = _build_coordinate(spec, r, s, True, name=f'k[M({r};{s})]')
    logger.debug('built %s of dimension %d', H.name, H.dim)
    return _replace(H, family=meta)


def derive_antipode(H):
    """S(h) = -h - sum S(h')h'' over the reduced coproduct, memoized."""
    F = H.F
    memo = {0: {0: 1}}
    active = set()

    def solve(k):
        if k in memo:
            return memo[k]
        if k in active:
            raise CheckFailed('antipode recursion does not terminate', witness={'basis': H.basis[k].label})
        active.add(k)
        result = {k: F.neg(1)}
        for (i, j), c in H.reduced_coproduct(k).items():
            term = H.multiply(solve(i), {j: 1})
            result = combine(result, term, F, F.neg(c))
        active.discard(k)
        memo[k] = result
        return result

    return tuple(solve(k) for k in range(H.dim))


# axioms


def _first_failure(items):
    for label, ok in items:
        if not ok:
            return label
    return None


def verify_hopf_axioms(H):
    """Pass/fail with a witness for each of the five axiom families."""
    F = H.F
    n = H.dim
    report = {}
    gens = sorted(set(H.generators.values())) or list(range(n))

    def assoc_items():
        for i in range(n):
            if H.multiply(H.unit, {i: 1}) != {i: 1} or H.multiply({i: 1}, H.unit) != {i: 1}:
                yield H.basis[i].label, False
        for i in range(n):
            for j in range(n):
                ij = H.mult.get((i, j), {})
                for k in range(n):
                    left = H.multiply(ij, {k: 1})
                    right = H.multiply({i: 1}, H.mult.get((j, k), {}))
                    if left != right:
                        yield f'({H.basis[i].label})({H.basis[j].label})({H.basis[k].label})', False
                        return

    def coassoc_items():
        for k in range(n):
            delta = H.comult[k]
            left, right = {}, {}
            for (i, j), c in delta.items():
                for (a, b), d in H.comult[i].items():
                    add_into(left, (a, b, j), F.mul(c, d), F)
                for (a, b), d in H.comult[j].items():
                    add_into(right, (i, a, b), F.mul(c, d), F)
            if left != right:
                yield H.basis[k].label, False
            lcounit, rcounit = {}, {}
            for (i, j), c in delta.items():
                add_into(lcounit, j, F.mul(c, H.counit[i]), F)
                add_into(rcounit, i, F.mul(c, H.counit[j]), F)
            if lcounit != {k: 1} or rcounit != {k: 1}:
                yield f'counit at {H.basis[k].label}', False

    def bialgebra_items():
        if H.comult[0] != {(0, 0): 1} or H.counit[0] != 1:
            yield '1', False
        for g in gens:
            for j in range(n):
                product = H.mult.get((g, j), {})
                if H.coproduct(product) != H.tensor_multiply(H.comult[g], H.comult[j]):
                    yield f'{H.basis[g].label} * {H.basis[j].label}', False
                    return
                if H.apply_counit(product) != F.mul(H.counit[g], H.counit[j]):
                    yield f'counit of {H.basis[g].label} * {H.basis[j].label}', False
                    return

    def antipode_items():
        for k in range(n):
            expected = scale(H.unit, H.counit[k], F)
            left, right = {}, {}
            for (i, j), c in H.comult[k].items():
                left = combine(left, H.multiply(H.antipode[i], {j: 1}), F, c)
                right = combine(right, H.multiply({i: 1}, H.antipode[j]), F, c)
            if left != expected or right != expected:
                yield H.basis[k].label, False

    def grading_items():
        for (i, j), out in H.mult.items():
            for k in out:
                b = H.basis
                if (b[i].parity + b[j].parity - b[k].parity) % 2:
                    yield f'parity of {b[i].label} * {b[j].label}', False
                if H.graded and b[i].degree + b[j].degree != b[k].degree:
                    yield f'degree of {b[i].label} * {b[j].label}', False
        for k, delta in H.comult.items():
            b = H.basis
            for (i, j) in delta:
                if (b[i].parity + b[j].parity - b[k].parity) % 2:
                    yield f'parity of Δ({b[k].label})', False
                if H.graded and b[i].degree + b[j].degree != b[k].degree:
                    yield f'degree of Δ({b[k].label})', False
        for k, image in enumerate(H.antipode):
            for i in image:
                if H.basis[i].parity != H.basis[k].parity:
                    yield f'parity of S({H.basis[k].label})', False

    checks = {
        'associativity': assoc_items,
        'coassociativity': coassoc_items,
        'bialgebra': bialgebra_items,
        'antipode': antipode_items,
        'grading': grading_items,
    }
    for name, items in checks.items():
        witness = _first_failure(items())
        report[name] = {'pass': witness is None, 'witness': witness}
    report['grading']['z_grading'] = 'checked' if H.graded else 'not applicable'
    report['pass'] = all(entry['pass'] for key, entry in report.items() if key != 'pass')
    return report


# duals and group algebras


def dual_hopf(H, name=None):
    """The graded dual H^# on the dual basis, with Koszul signs."""
    F = H.F
    n = H.dim
    mult = {}
    for k, delta in H.comult.items():
        for (i, j), c in delta.items():
            if H.parity(i) and H.parity(j):
                c = F.neg(c)
            mult.setdefault((i, j), {})
            add_into(mult[(i, j)], k, c, F)
    mult = {key: value for key, value in mult.items() if value}
    comult = {k: {} for k in range(n)}
    for (a, b), out in H.mult.items():
        for k, c in out.items():
            if H.parity(a) and H.parity(b):
                c = F.neg(c)
            add_into(comult[k], (a, b), c, F)
    antipode = [dict() for _ in range(n)]
    for j, image in enumerate(H.antipode):
        for k, c in image.items():
            antipode[k][j] = c
    unit_index = next(iter(H.unit))
    counit = tuple(H.unit.get(k, 0) for k in range(n))
    basis = tuple(BasisElement(f'{b.label}*', b.parity, b.degree) for b in H.basis)
    return FinDimHopf(
        spec=H.spec, basis=basis, mult=mult, unit={unit_index: 1}, comult=comult,
        counit=counit, antipode=tuple(antipode), graded=H.graded,
        name=name or f'{H.name}^#', family=dict(H.family, dual=True),
    )


@dataclass(frozen=True)
class PPolynomial:
    """f = sum c_i T^{p^i}, coefficients integer-coded, index i = position."""
    coeffs: tuple

    def __post_init__(self):
        if not any(self.coeffs):
            raise InvalidInput('the p-polynomial must be nonzero')

    @classmethod
    def monomial(cls, s, c=1):
        return cls((0,) * s + (c,))

    @classmethod
    def parse(cls, text):
        return cls(tuple(int(part) for part in str(text).split(',')))

    @property
    def terms(self):
        return [(i, c) for i, c in enumerate(self.coeffs) if c]

    def label(self, p):
        return ' + '.join(f'{c}*T^{p ** i}' if c != 1 else f'T^{p ** i}' for i, c in self.terms)


def _monomial_label(exps, r):
    parts = []
    for i, e in enumerate(exps[:r]):
        if e == 1:
            parts.append(f'u{i}')
        elif e > 1:
            parts.append(f'u{i}^{e}')
    if exps[r]:
        parts.append('v')
    return ' '.join(parts) or '1'


def build_group_hopf(r, f, eta=0, spec=None):
    """k𝕄_{r;f,η} = P_r/⟨f(u_{r-1}) + η u₀⟩ with its normal-form monomial basis.

    Structure maps are computed in the dual of a coordinate stage k[𝕄_{r;t}]
    that holds every product and coproduct of normal-form monomials without
    truncation, then reduced modulo the relation inside P_r. For a single-term
    f, `pairing` pairs the monomials with the coordinate algebra `partner`;
    for several terms the quotient is not local and has no partner here.
    """
    spec = spec or FieldSpec(3)
    F = spec.arith
    if isinstance(f, (list, tuple)):
        f = PPolynomial(tuple(f))
    terms = f.terms
    s, c = terms[-1]
    if terms[0][0] == 0 and r >= 2:
        raise InvalidInput('f must have no T-term when r >= 2 (u_{r-1} is not primitive)', f=list(f.coeffs))
    if eta and r == 1:
        raise InvalidInput('η must be 0 when r = 1')
    monomial = len(terms) == 1
    t = max(s, 1) if monomial and not eta else s + 1
    stage = build_coordinate_hopf('Mr_truncated', r, t=t, spec=spec)
    B = dual_hopf(stage)
    p = spec.p
    GF = spec.GF

    def u(i):
        if i == r - 1:
            return B.element('s1*')
        return B.element(coordinate_label(p ** i, 0, 0) + '*')

    v = B.element('t*')

    def exponents(bounds):
        found = []

        def walk(prefix):
            if len(prefix) == len(bounds):
                found.append(tuple(prefix))
                return
            for e in range(bounds[len(prefix)]):
                walk(prefix + [e])
        walk([])
        return found

    powers = {}

    def power(i, e):
        if (i, e) not in powers:
            powers[(i, e)] = dict(B.unit) if e == 0 else B.multiply(power(i, e - 1), u(i))
        return powers[(i, e)]

    def lift(exps):
        x = dict(B.unit)
        for i in range(r):
            x = B.multiply(x, power(i, exps[i]))
        if exps[r]:
            x = B.multiply(x, v)
        return x

    stage_list = exponents([p] * (r - 1) + [p ** t, 2])
    stage_lifts = {exps: lift(exps) for exps in stage_list}
    M = GF(np.stack([B.to_vector(stage_lifts[exps]) for exps in stage_list])).T
    if M.shape[0] != M.shape[1] or rank(M) != B.dim:
        raise CheckFailed('stage monomials do not form a basis of the dual stage',
                          witness={'monomials': len(stage_list), 'stage': B.dim})
    coords = np.linalg.inv(M).view(np.ndarray)

    exponent_list = exponents([p] * (r - 1) + [p ** s, 2])
    position = {exps: k for k, exps in enumerate(exponent_list)}
    lifts = [stage_lifts[exps] for exps in exponent_list]
    n = len(lifts)
    lead = F.inv(c)
    rewrites = [(i, F.neg(F.mul(ci, lead))) for i, ci in terms[:-1]]
    memo = {}

    def reduce(exps):
        # u_{r-1}^{p^s} -> -(sum_{i<s} c_i u_{r-1}^{p^i} + η u₀) / c_s
        if exps in memo:
            return memo[exps]
        if r >= 2 and any(e >= p for e in exps[:r - 1]):
            result = {}
        elif exps[r - 1] < p ** s:
            result = {position[exps]: 1}
        else:
            base = list(exps)
            base[r - 1] -= p ** s
            result = {}
            for i, w in rewrites:
                shifted = list(base)
                shifted[r - 1] += p ** i
                for q, value in reduce(tuple(shifted)).items():
                    add_into(result, q, F.mul(w, value), F)
            if eta:
                shifted = list(base)
                shifted[0] += 1
                for q, value in reduce(tuple(shifted)).items():
                    add_into(result, q, F.mul(F.neg(F.mul(eta, lead)), value), F)
        memo[exps] = result
        return result

    projected = []
    for k in range(B.dim):
        image = {}
        for m in np.flatnonzero(coords[:, k]):
            for q, value in reduce(stage_list[int(m)]).items():
                add_into(image, q, F.mul(int(coords[m, k]), value), F)
        projected.append(image)

    def pi(x):
        result = {}
        for k, value in x.items():
            for q, w in projected[k].items():
                add_into(result, q, F.mul(value, w), F)
        return result
    mult = {}
    for a in range(n):
        for b in range(n):
            product = pi(B.multiply(lifts[a], lifts[b]))
            if product:
                mult[(a, b)] = product
    comult = {}
    for a in range(n):
        delta = {}
        for (i, j), value in B.coproduct(lifts[a]).items():
            for qi, ci in projected[i].items():
                for qj, cj in projected[j].items():
                    add_into(delta, (qi, qj), F.mul(value, F.mul(ci, cj)), F)
        comult[a] = delta
    counit = tuple(B.apply_counit(x) for x in lifts)
    antipode = tuple(pi(B.apply_antipode(x)) for x in lifts)
    degrees = {i: B.basis[next(iter(u(i)))].degree for i in range(r)}
    basis = tuple(
        BasisElement(
            _monomial_label(exps, r), exps[r],
            sum(exps[i] * degrees[i] for i in range(r)) + exps[r] * p ** r,
        )
        for exps in exponent_list
    )
    generators = {}
    for i in range(r):
        unit_vector = tuple(1 if k == i else 0 for k in range(r + 1))
        if unit_vector in position:
            generators[f'u{i}'] = position[unit_vector]
    generators['v'] = position[(0,) * r + (1,)]

    partner, pairing = None, None
    if monomial:
        if eta:
            partner = build_coordinate_hopf('MrsEta', r, s, F.mul(eta, lead), spec)
        elif s == 0:
            partner = build_coordinate_hopf('Gaminus', spec=spec)
        else:
            partner = build_coordinate_hopf('Mrs', r, s, spec=spec)
        inclusion = _partner_inclusion(partner, stage, s, F.mul(eta, lead) if eta else 0)
        rows = []
        for x in lifts:
            row = {}
            for h in range(partner.dim):
                value = F.total(F.mul(x.get(k, 0), w) for k, w in inclusion[h].items())
                if value:
                    row[h] = value
            rows.append(row)
        pairing = tuple(rows)

    name = f'kM({r};{f.label(p)},{eta})'
    H = FinDimHopf(
        spec=spec, basis=basis, mult=mult, unit={0: 1}, comult=comult, counit=counit,
        antipode=antipode, generators=generators, graded=monomial and not eta, name=name,
        family={'family': 'group', 'r': r, 's': s, 'eta': eta, 'f': list(f.coeffs)},
        pairing=pairing, partner=partner,
    )
    logger.debug('built %s of dimension %d from a stage of dimension %d', name, n, B.dim)
    return H


def _partner_inclusion(partner, stage, s, eta):
    """Images in the stage k[𝕄_{r;t}] of the partner's basis (θ -> θ - ησ_{p^s} when twisted)."""
    images = {name: stage.gen(name) for name in partner.generators}
    if eta and 'th' in images:
        twist = stage.element(f's{stage.spec.p ** s}')
        images['th'] = combine(images['th'], twist, stage.F, stage.F.neg(eta))
    return AlgebraMorphism.from_generators(partner, stage, images).columns


def duality_check(coord, grp, pairing=None):
    """Check that the pairing intertwines mult with comult in both directions."""
    pairing = grp.pairing if pairing is None else pairing
    if pairing is None:
        raise InvalidInput('no pairing supplied')
    if coord.dim != grp.dim:
        raise InvalidInput(f'dimension mismatch: {coord.dim} against {grp.dim}')
    if len(pairing) != grp.dim:
        raise InvalidInput('pairing has the wrong number of rows')
    F = coord.F
    n = coord.dim
    P = [dict(row) for row in pairing]
    rows_of = {h: {} for h in range(n)}
    for a, row in enumerate(P):
        for h, c in row.items():
            rows_of[h][a] = c

    def pair(x, h):
        return F.total(F.mul(c, P[a].get(h, 0)) for a, c in x.items())

    def fail(name, witness):
        return {'pass': False, 'failed': name, 'witness': witness}

    for h in range(n):
        if pair(grp.unit, h) != coord.counit[h]:
            return fail('unit/counit', coord.basis[h].label)
    for a in range(n):
        if P[a].get(next(iter(coord.unit)), 0) != grp.counit[a]:
            return fail('counit/unit', grp.basis[a].label)

    # <ab, h> = sum (-1)^{|b||h1|} <a, h1> <b, h2>
    rhs = {}
    for h in range(n):
        for (h1, h2), c in coord.comult[h].items():
            for a, ca in rows_of[h1].items():
                for b, cb in rows_of[h2].items():
                    value = F.mul(c, F.mul(ca, cb))
                    if grp.parity(b) and coord.parity(h1):
                        value = F.neg(value)
                    add_into(rhs, (a, b, h), value, F)
    lhs = {}
    for (a, b), out in grp.mult.items():
        for q, c in out.items():
            for h, w in P[q].items():
                add_into(lhs, (a, b, h), F.mul(c, w), F)
    if lhs != rhs:
        bad = sorted(set(lhs.items()) ^ set(rhs.items()))[0][0]
        return fail('product/coproduct', f'{grp.basis[bad[0]].label} * {grp.basis[bad[1]].label} at {coord.basis[bad[2]].label}')

    # <a, hh'> = sum (-1)^{|a2||h|} <a1, h> <a2, h'>
    rhs = {}
    for a in range(n):
        for (a1, a2), c in grp.comult[a].items():
            for h, c1 in P[a1].items():
                for h2, c2 in P[a2].items():
                    value = F.mul(c, F.mul(c1, c2))
                    if grp.parity(a2) and coord.parity(h):
                        value = F.neg(value)
                    add_into(rhs, (a, h, h2), value, F)
    lhs = {}
    for (h, h2), out in coord.mult.items():
        for k, c in out.items():
            for a, w in rows_of[k].items():
                add_into(lhs, (a, h, h2), F.mul(c, w), F)
    if lhs != rhs:
        bad = sorted(set(lhs.items()) ^ set(rhs.items()))[0][0]
        return fail('coproduct/product', f'{grp.basis[bad[0]].label} at {coord.basis[bad[1]].label} * {coord.basis[bad[2]].label}')
    return {'pass': True, 'failed': None, 'witness': None}


def canonical_pairing(coord, grp):
    """Pairing read off a group algebra built by build_group_hopf."""
    if grp.partner is None or grp.partner.name != coord.name:
        raise InvalidInput(f'{grp.name} is not paired with {coord.name}')
    return grp.pairing


# morphisms


@dataclass(frozen=True, eq=False)
class AlgebraMorphism:
    """Linear map given by the images (sparse columns) of the source basis."""
    source: FinDimHopf
    target: FinDimHopf
    columns: tuple
    hopf: bool = False

    @classmethod
    def from_generators(cls, source, target, images, hopf=False):
        """Extend generator images multiplicatively along the source's basis factorizations."""
        F = source.F
        p = source.spec.p
        images = dict(images)
        r = source.family.get('r', 1)
        if 'th' in source.generators and 's1' not in images and 's1' in source.generators:
            images['s1'] = target.power(images['th'], p ** (r - 1))
        by_index = {source.generators[name]: image for name, image in images.items() if name in source.generators}
        missing = [name for name, idx in source.generators.items() if idx not in by_index]
        if missing:
            raise InvalidInput(f'no image given for generators {missing}')
        recipes = source.recipes
        columns = [None] * source.dim
        columns[0] = dict(target.unit)
        for k in range(1, source.dim):
            if k in by_index:
                columns[k] = dict(by_index[k])
                continue
            g, rest, c = recipes[k]
            columns[k] = scale(target.multiply(columns[g], columns[rest]), F.inv(c), F)
        return cls(source, target, tuple(columns), hopf)

    def apply(self, x):
        F = self.source.F
        result = {}
        for k, c in x.items():
            for i, v in self.columns[k].items():
                add_into(result, i, F.mul(c, v), F)
        return result

    def apply_tensor(self, X):
        F = self.source.F
        result = {}
        for (i, j), c in X.items():
            for a, u in self.columns[i].items():
                for b, w in self.columns[j].items():
                    add_into(result, (a, b), F.mul(c, F.mul(u, w)), F)
        return result

    def then(self, other):
        """other ∘ self."""
        columns = tuple(other.apply(col) for col in self.columns)
        return AlgebraMorphism(self.source, other.target, columns, self.hopf and other.hopf)

    def matrix(self):
        GF = self.source.spec.GF
        M = GF.Zeros((self.target.dim, self.source.dim))
        for k, col in enumerate(self.columns):
            for i, c in col.items():
                M[i, k] = c
        return M

    def as_tuple(self):
        return tuple(tuple(sorted(col.items())) for col in self.columns)

    def check(self):
        """Hopf-morphism report: unit, parity, multiplicativity, comultiplication, counit."""
        S, T = self.source, self.target
        F = S.F
        if self.columns[0] != T.unit:
            return {'pass': False, 'failed': 'unit', 'witness': '1'}
        for k, col in enumerate(self.columns):
            if any(T.parity(i) != S.parity(k) for i in col):
                return {'pass': False, 'failed': 'parity', 'witness': S.basis[k].label}
        gens = sorted(set(S.generators.values()))
        for g in gens:
            for j in range(S.dim):
                lhs = self.apply(S.mult.get((g, j), {}))
                rhs = T.multiply(self.columns[g], self.columns[j])
                if lhs != rhs:
                    return {'pass': False, 'failed': 'multiplicative', 'witness': f'{S.basis[g].label} * {S.basis[j].label}'}
        for k in range(S.dim):
            if T.coproduct(self.columns[k]) != self.apply_tensor(S.comult[k]):
                return {'pass': False, 'failed': 'comultiplication', 'witness': S.basis[k].label}
            if T.apply_counit(self.columns[k]) != S.counit[k]:
                return {'pass': False, 'failed': 'counit', 'witness': S.basis[k].label}
        return {'pass': True, 'failed': None, 'witness': None}


def factorizations(H):
    """For each basis index k > 0 a triple (g, rest, c) with e_g e_rest = c e_k, g a generator."""
    gens = [H.generators[name] for name in sorted(H.generators, key=lambda name: H.generators[name])]
    recipes = {}
    for k in range(1, H.dim):
        for g in gens:
            if g == k:
                continue
            found = None
            for rest in range(k):
                out = H.mult.get((g, rest))
                if out and list(out) == [k]:
                    found = (g, rest, out[k])
                    break
            if found:
                recipes[k] = found
                break
        if k not in recipes and k not in gens:
            raise CheckFailed(f'{H.name}: basis element {H.basis[k].label} is not a generator times a smaller one')
    return recipes


def hopf_to_json(H):
    return {
        'name': H.name,
        'field': H.spec.to_json(),
        'basis': [{'label': b.label, 'parity': b.parity, 'degree': b.degree} for b in H.basis],
        'mult': sorted([i, j, k, c] for (i, j), out in H.mult.items() for k, c in out.items()),
        'comult': sorted([i, j, k, c] for k, delta in H.comult.items() for (i, j), c in delta.items()),
        'counit': list(H.counit),
        'antipode': [[H.antipode[j].get(i, 0) for j in range(H.dim)] for i in range(H.dim)],
        'graded': H.graded,
    }
