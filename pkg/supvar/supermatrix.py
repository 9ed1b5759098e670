"""Commuting nilpotent supermatrix tuples and the modules they define.

A tuple (α₀..α_{r-1} | β) on k^{m|n} is a representation of the group
algebra k𝕄_r: u_i acts by α_i and v by β. Matrices are square galois
arrays of size m+n with the even coordinates first.
"""
import logging
from dataclasses import dataclass
from math import factorial

import numpy as np

from supvar.exceptions import CheckFailed, InvalidInput
from supvar.fields import FieldSpec, decode_element, encode_element
from supvar.superalgebra import AlgebraMorphism, parse_coordinate_label

logger = logging.getLogger(__name__)


def mat_pow(M, n):
    GF = type(M)
    result = GF.Identity(M.shape[0])
    for _ in range(n):
        result = result @ M
    return result


def first_nonzero(M):
    hits = np.argwhere(M.view(np.ndarray))
    return [int(i) for i in hits[0]] if len(hits) else None


def parity_operator(spec, m, n):
    GF = spec.GF
    return GF(np.diag([1] * m + [spec.p - 1] * n))


def is_even(M, m):
    A = M.view(np.ndarray)
    return not (A[:m, m:].any() or A[m:, :m].any())


def is_odd(M, m):
    A = M.view(np.ndarray)
    return not (A[:m, :m].any() or A[m:, m:].any())


@dataclass(frozen=True, eq=False)
class SuperMatrixTuple:
    spec: FieldSpec
    m: int
    n: int
    alpha: tuple
    beta: object

    @property
    def r(self):
        return len(self.alpha)

    @property
    def dim(self):
        return self.m + self.n

    @property
    def parities(self):
        return [0] * self.m + [1] * self.n

    def to_json(self):
        def enc(M):
            rows = M.view(np.ndarray).tolist()
            if self.spec.e == 1:
                return rows
            return [[encode_element(self.spec, x) for x in row] for row in rows]

        return {'m': self.m, 'n': self.n, 'alpha': [enc(a) for a in self.alpha], 'beta': enc(self.beta)}

    @classmethod
    def from_json(cls, data, spec):
        GF = spec.GF
        m, n = int(data['m']), int(data['n'])

        def dec(rows):
            if len(rows) != m + n or any(len(row) != m + n for row in rows):
                raise InvalidInput(f'matrices must be {m + n}x{m + n}')
            return GF([[decode_element(spec, x) for x in row] for row in rows])

        alpha = tuple(dec(a) for a in data['alpha'])
        if not alpha:
            raise InvalidInput('a tuple needs at least one α')
        return cls(spec, m, n, alpha, dec(data['beta']))

    @classmethod
    def zero(cls, spec, m, n, r=1):
        GF = spec.GF
        d = m + n
        return cls(spec, m, n, tuple(GF.Zeros((d, d)) for _ in range(r)), GF.Zeros((d, d)))

    def equals(self, other):
        return (
            self.m == other.m and self.n == other.n and self.r == other.r
            and all(np.array_equal(a, b) for a, b in zip(self.alpha, other.alpha))
            and np.array_equal(self.beta, other.beta)
        )


def validate_tuple(t, s=None):
    """Report on every defining relation of the variety, with the first failing entry."""
    p = t.spec.p
    report = {}

    def record(name, M):
        witness = first_nonzero(M) if M is not None else None
        report[name] = {'pass': witness is None, 'witness': witness}

    for i, a in enumerate(t.alpha):
        report[f'alpha{i} even'] = {'pass': is_even(a, t.m), 'witness': None}
    report['beta odd'] = {'pass': is_odd(t.beta, t.m), 'witness': None}
    for i, a in enumerate(t.alpha):
        for j in range(i + 1, t.r):
            record(f'[alpha{i},alpha{j}] = 0', a @ t.alpha[j] - t.alpha[j] @ a)
        record(f'[alpha{i},beta] = 0', a @ t.beta - t.beta @ a)
    for i in range(t.r - 1):
        record(f'alpha{i}^p = 0', mat_pow(t.alpha[i], p))
    last = t.alpha[-1]
    record(f'alpha{t.r - 1}^p + beta^2 = 0', mat_pow(last, p) + t.beta @ t.beta)
    record(f'alpha{t.r - 1} is nilpotent', mat_pow(last, max(t.m, t.n, 1)))
    if s is not None:
        record(f'alpha{t.r - 1}^(p^{s}) = 0', mat_pow(last, p ** s))
    report['pass'] = all(entry['pass'] for entry in report.values())
    return report


def require_valid(t, s=None):
    report = validate_tuple(t, s)
    if not report['pass']:
        name = next(key for key, entry in report.items() if key != 'pass' and not entry['pass'])
        raise CheckFailed(f'relation {name} fails', witness={'relation': name, 'entry': report[name]['witness']})
    return report


@dataclass(frozen=True, eq=False)
class GroupModule:
    """A finite-dimensional module over a group algebra: one action matrix per basis element."""
    hopf: object
    parities: tuple
    action: tuple

    @property
    def dim(self):
        return len(self.parities)

    @property
    def spec(self):
        return self.hopf.spec

    def act(self, x):
        GF = self.spec.GF
        result = GF.Zeros((self.dim, self.dim))
        for k, c in x.items():
            result = result + GF(c) * self.action[k]
        return result

    def gen(self, name):
        if name not in self.hopf.generators:
            return self.spec.GF.Zeros((self.dim, self.dim))
        return self.action[self.hopf.generators[name]]

    def check(self):
        """ρ(gh) = ρ(g)ρ(h) for every generator g and basis element h, and ρ(1) = 1."""
        H = self.hopf
        GF = self.spec.GF
        if not np.array_equal(self.act(H.unit), GF.Identity(self.dim)):
            return {'pass': False, 'witness': '1'}
        for g in sorted(set(H.generators.values())):
            for j in range(H.dim):
                lhs = self.act(H.mult.get((g, j), {}))
                if not np.array_equal(lhs, self.action[g] @ self.action[j]):
                    return {'pass': False, 'witness': f'{H.basis[g].label} * {H.basis[j].label}'}
        return {'pass': True, 'witness': None}


def module_from_tuple(t, grp):
    """Extend u_i ↦ α_i, v ↦ β multiplicatively over the normal-form basis of grp."""
    if grp.family.get('r') != t.r:
        raise InvalidInput(f'{grp.name} has height {grp.family.get("r")}, the tuple has {t.r} αs')
    require_valid(t)
    F = grp.F
    GF = t.spec.GF
    d = t.dim
    images = {f'u{i}': a for i, a in enumerate(t.alpha)}
    images['v'] = t.beta
    for name, a in images.items():
        if name not in grp.generators and np.any(a):
            raise CheckFailed(f'{name} vanishes in {grp.name} but acts by a nonzero matrix', witness={'entry': first_nonzero(a)})
    action = [None] * grp.dim
    action[0] = GF.Identity(d)
    for name, idx in grp.generators.items():
        action[idx] = images[name]
    for k, (g, rest, c) in grp.recipes.items():
        if action[k] is None:
            action[k] = GF(F.inv(c)) * (action[g] @ action[rest])
    M = GroupModule(grp, tuple(t.parities), tuple(action))
    report = M.check()
    if not report['pass']:
        raise CheckFailed(f'tuple does not satisfy the relations of {grp.name}', witness=report)
    return M


def tuple_from_module(M):
    r = M.hopf.family['r']
    m = sum(1 for x in M.parities if x == 0)
    return SuperMatrixTuple(M.spec, m, M.dim - m, tuple(M.gen(f'u{i}') for i in range(r)), M.gen('v'))


def regular_module(grp):
    """grp acting on itself by left multiplication."""
    GF = grp.spec.GF
    n = grp.dim
    order = sorted(range(n), key=lambda k: grp.parity(k))
    position = {k: i for i, k in enumerate(order)}
    action = []
    for a in range(n):
        M = GF.Zeros((n, n))
        for b in range(n):
            for k, c in grp.mult.get((a, b), {}).items():
                M[position[k], position[b]] = c
        action.append(M)
    return GroupModule(grp, tuple(grp.parity(k) for k in order), tuple(action))


def trivial_module(grp, dim=1):
    GF = grp.spec.GF
    action = tuple(GF(grp.counit[k]) * GF.Identity(dim) for k in range(grp.dim))
    return GroupModule(grp, (0,) * dim, action)


# comodules


def _theta_digits(a, p, r):
    return [(a // p ** k) % p for k in range(r - 1)]


def comodule_from_tuple(t, coord):
    """Coefficients {basis label of coord: matrix} of the comodule map k^{m|n} -> k^{m|n} ⊗ coord."""
    s = coord.family.get('s')
    if coord.family.get('eta'):
        raise InvalidInput('comodule coefficients are defined on the untwisted coordinate algebras')
    if coord.family.get('r') != t.r:
        raise InvalidInput(f'{coord.name} has height {coord.family.get("r")}, the tuple has {t.r} αs')
    require_valid(t)
    spec = t.spec
    p, r = spec.p, t.r
    F = spec.arith
    GF = spec.GF
    last = t.alpha[-1]
    if np.any(mat_pow(last, p ** s)):
        raise CheckFailed(f'alpha{r - 1}^(p^{s}) != 0: the tuple does not factor through {coord.name}',
                          witness={'entry': first_nonzero(mat_pow(last, p ** s))})
    beta00 = -(t.beta @ parity_operator(spec, t.m, t.n))
    coefficients = {}
    for b in coord.basis:
        a, j, eps = parse_coordinate_label(b.label)
        digits = _theta_digits(a, p, r)
        alpha_aj = GF.Identity(t.dim)
        denominator = 1
        for k, e in enumerate(digits):
            alpha_aj = alpha_aj @ mat_pow(t.alpha[k], e)
            denominator *= factorial(e)
        alpha_aj = GF(F.inv(F.from_int(denominator))) * (alpha_aj @ mat_pow(last, j))
        coefficients[b.label] = alpha_aj @ beta00 if eps else alpha_aj
    return coefficients


def verify_comodule_axioms(coord, coefficients):
    """Counit: C_1 = id. Coassociativity: C_a C_b = Σ_k Δ_k^{ab} C_k for all basis pairs (a, b)."""
    GF = coord.spec.GF
    C = [coefficients[b.label] for b in coord.basis]
    d = C[0].shape[0]
    if not np.array_equal(C[0], GF.Identity(d)):
        return {'pass': False, 'failed': 'counit', 'witness': '1'}
    rhs = {}
    for k, delta in coord.comult.items():
        for (a, b), c in delta.items():
            rhs[(a, b)] = rhs.get((a, b), GF.Zeros((d, d))) + GF(c) * C[k]
    for a in range(coord.dim):
        for b in range(coord.dim):
            expected = rhs.get((a, b), GF.Zeros((d, d)))
            if not np.array_equal(C[a] @ C[b], expected):
                labels = (coord.basis[a].label, coord.basis[b].label)
                return {'pass': False, 'failed': 'coassociativity', 'witness': f'{labels[0]} (x) {labels[1]}'}
    return {'pass': True, 'failed': None, 'witness': None}


# exponential formula


class BMatrix:
    """A matrix over a finite-dimensional supercommutative algebra B, stored as Σ M_b ⊗ b."""

    def __init__(self, B, d, parts=None):
        self.B = B
        self.d = d
        self.parts = dict(parts or {})

    @classmethod
    def identity(cls, B, d):
        GF = B.spec.GF
        return cls(B, d, {next(iter(B.unit)): GF.Identity(d)})

    def scalar_times(self, M, x):
        """The matrix M·x for x in B."""
        GF = self.B.spec.GF
        return BMatrix(self.B, self.d, {b: GF(c) * M for b, c in x.items()})

    def __add__(self, other):
        parts = dict(self.parts)
        for b, M in other.parts.items():
            parts[b] = parts[b] + M if b in parts else M
        return BMatrix(self.B, self.d, parts)

    def __matmul__(self, other):
        GF = self.B.spec.GF
        parts = {}
        for b1, M1 in self.parts.items():
            for b2, M2 in other.parts.items():
                out = self.B.mult.get((b1, b2))
                if not out:
                    continue
                product = M1 @ M2
                for c, w in out.items():
                    term = GF(w) * product
                    parts[c] = parts[c] + term if c in parts else term
        return BMatrix(self.B, self.d, parts)

    def scaled(self, c):
        GF = self.B.spec.GF
        return BMatrix(self.B, self.d, {b: GF(c) * M for b, M in self.parts.items()})

    def normalized(self):
        return {b: M for b, M in self.parts.items() if M.view(np.ndarray).any()}

    def equals(self, other):
        left, right = self.normalized(), other.normalized()
        return left.keys() == right.keys() and all(np.array_equal(left[b], right[b]) for b in left)


def b_exp(phi, p):
    """exp(φ) = Σ_{k<p} φ^k / k! for an even nilpotent φ; φ^p must vanish."""
    F = phi.B.F
    result = BMatrix.identity(phi.B, phi.d)
    power = BMatrix.identity(phi.B, phi.d)
    for k in range(1, p):
        power = power @ phi
        result = result + power.scaled(F.inv(F.from_int(factorial(k))))
    if (power @ phi).normalized():
        raise CheckFailed('exp of a matrix whose p-th power does not vanish')
    return result


def point_map(coord, B, g):
    """The algebra map coord -> B of a B-point g given on τ, θ and the σ_{p^i}."""
    images = dict(g)
    if coord.family.get('r') == 1 and 'th' in images:
        images.setdefault('s1', images.pop('th'))
    derived = 'th' in coord.generators and 's1' not in images
    images = {
        name: images.get(name, {}) for name in coord.generators
        if not (derived and name == 's1')
    }
    return AlgebraMorphism.from_generators(coord, B, images)


def exp_evaluate(t, B, g):
    """ρ(g) = Π_{i<r} exp(α_i θ^{p^i}) · exp(-β τ) · Π_{i>=1} exp(α_{r-1}^{p^i} σ_{p^i})."""
    require_valid(t)
    spec = t.spec
    p, r = spec.p, t.r
    d = t.dim
    theta = g.get('th', {})
    tau = g.get('t', {})
    if any(B.parity(k) for k in theta) or any(not B.parity(k) for k in tau):
        raise InvalidInput('θ must be even and τ odd in B')
    ident = BMatrix.identity(B, d)
    result = ident
    theta_power = dict(theta)
    for i in range(r):
        if i:
            theta_power = B.power(theta_power, p)
        result = result @ b_exp(ident.scalar_times(t.alpha[i], theta_power), p)
    beta00 = -(t.beta @ parity_operator(spec, t.m, t.n))
    result = result @ b_exp(ident.scalar_times(beta00, tau), p)
    last = t.alpha[-1]
    i = 1
    while np.any(mat_pow(last, p ** i)):
        sigma = g.get(f's{p ** i}')
        if sigma is None:
            raise InvalidInput(f'the point needs a value for σ_{p ** i}: α_{r - 1}^{p ** i} != 0')
        result = result @ b_exp(ident.scalar_times(mat_pow(last, p ** i), sigma), p)
        i += 1
    logger.debug('evaluated a %dx%d tuple at a point of %s', d, d, B.name)
    return BMatrix(B, d, result.normalized())


def evaluate_comodule(coefficients, coord, B, g):
    """Σ_h C_h ⊗ g(h): the comodule coefficients specialized at the point g."""
    phi = point_map(coord, B, g)
    d = next(iter(coefficients.values())).shape[0]
    result = BMatrix(B, d)
    ident = BMatrix.identity(B, d)
    for k, b in enumerate(coord.basis):
        if phi.columns[k]:
            result = result + ident.scalar_times(coefficients[b.label], phi.columns[k])
    return result
