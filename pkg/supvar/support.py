"""Support sets 𝒩₁(G)_M and cohomological supports |G|_M in height one.

A G-module is carried by its comodule coefficients {basis label of k[G]:
matrix}; pulling back along a homomorphism φ: 𝕄₁ -> G composes those with
φ*, and the P₁-action of u and v is read off the σ₁ and τ coefficients.
"""
import logging
from concurrent.futures import ThreadPoolExecutor
from contextvars import copy_context
from dataclasses import dataclass, field

import numpy as np

from supvar.cohomology import generator_cocycles, monomial_cochain, presented_cohomology_ring
from supvar.conf import supvar_setting
from supvar.exceptions import BudgetExceeded, CheckFailed, InvalidInput
from supvar.fields import FieldSpec, independent_rows, kernel, rank
from supvar.homvariety import (
    TargetFamily, classify_homs, comorphism_from_params, enumerate_automorphisms,
    enumerate_variety_points, family_hopf, point_from_params, pushforward_hom,
)
from supvar.hypersurface import GradedP1Module, id_infinite, kron
from supvar.psi import psi_map, spectrum_ring
from supvar.resolution import LocalAlgebra, minimal_resolution
from supvar.superalgebra import add_into, dual_hopf
from supvar.supermatrix import SuperMatrixTuple, comodule_from_tuple, parity_operator, verify_comodule_axioms

logger = logging.getLogger(__name__)

SUPPORT_FAMILIES = ('Mr1', 'Mrs', 'Gar', 'Gaminus')


def require_height_one(family):
    if family.tag not in SUPPORT_FAMILIES or family.r != 1:
        raise InvalidInput(f'supports are computed for height-one elementary families, not {family.label()}')
    return family


@dataclass(frozen=True, eq=False)
class GModule:
    """A finite-dimensional G-supermodule given by its comodule coefficients."""
    family: TargetFamily
    spec: FieldSpec
    parities: tuple
    coefficients: dict
    name: str = ''

    @classmethod
    def from_tuple(cls, family, t, spec, name=''):
        require_height_one(family)
        H = family_hopf(family, spec)
        coefficients = comodule_from_tuple(t, H)
        return cls(family, spec, tuple(t.parities), coefficients, name)

    @property
    def dim(self):
        return len(self.parities)

    @property
    def parity_operator(self):
        m = sum(1 for x in self.parities if x == 0)
        return parity_operator(self.spec, m, self.dim - m)

    def action(self, H):
        """ρ(e_h) on the dual basis of kG: C_h for even h, -C_h·P for odd h."""
        P = self.parity_operator
        return [
            -(self.coefficients[b.label] @ P) if b.parity else self.coefficients[b.label]
            for b in H.basis
        ]

    def check(self):
        return verify_comodule_axioms(family_hopf(self.family, self.spec), self.coefficients)


def as_gmodule(family, M, spec, name=''):
    if isinstance(M, GModule):
        return M
    if isinstance(M, SuperMatrixTuple):
        return GModule.from_tuple(family, M, spec, name)
    raise InvalidInput(f'expected a supermatrix tuple or a G-module, got {type(M).__name__}')


def _pull(phi, coefficients, d, GF):
    """Coefficients of the module pulled back along the comorphism phi."""
    pulled = [GF.Zeros((d, d)) for _ in range(phi.target.dim)]
    for k, column in enumerate(phi.columns):
        C = coefficients[phi.source.basis[k].label]
        for i, c in column.items():
            pulled[i] = pulled[i] + GF(c) * C
    return {b.label: pulled[i] for i, b in enumerate(phi.target.basis)}


def pullback_module(params, M, spec, name=None):
    """φ*M as a P₁-module: u acts by the σ₁ coefficient, v by minus the τ coefficient times P."""
    family = require_height_one(params.family)
    M = as_gmodule(family, M, spec)
    GF = spec.GF
    phi = comorphism_from_params(params, spec)
    pulled = _pull(phi, M.coefficients, M.dim, GF)
    alpha = pulled['s1']
    beta = -(pulled['t'] @ M.parity_operator)
    module = GradedP1Module(spec, alpha, beta, M.parities, None, name or f'{params.label()}*{M.name}')
    report = module.check()
    if not report['pass']:
        raise CheckFailed(f'pullback along {params.label()} is not a P1-module', witness=report['failures'])
    return module


def twist_module(nu, M, spec):
    """ν*M for an endomorphism ν of G."""
    M = as_gmodule(nu.family, M, spec)
    star = comorphism_from_params(nu, spec, codomain='endo')
    coefficients = _pull(star, M.coefficients, M.dim, spec.GF)
    return GModule(M.family, spec, M.parities, coefficients, f'{nu.label()}*{M.name}')


# support sets


@dataclass
class SupportReport:
    family: TargetFamily
    module: str
    spec: FieldSpec
    members: list = field(default_factory=list)
    non_members: list = field(default_factory=list)
    certificates: dict = field(default_factory=dict)

    def to_json(self):
        return {
            'family': self.family.to_json(),
            'module': self.module,
            'field': self.spec.to_json(),
            'members': [params.label() for params in self.members],
            'non_members': [params.label() for params in self.non_members],
            'certificates': self.certificates,
        }


def _fan_out(func, items, threads=None):
    """Map func over items on worker threads; results come back in item order."""
    threads = threads or supvar_setting('THREADS')
    if threads <= 1 or len(items) <= 1:
        return [func(item) for item in items]
    contexts = [copy_context() for _ in items]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(lambda pair: pair[0].run(func, pair[1]), zip(contexts, items)))


def decide_point(params, M, spec):
    infinite, certificate = id_infinite(pullback_module(params, M, spec))
    return infinite, certificate


def support_set(family, M, spec, name='', threads=None):
    """𝒩₁(G)_M: the field points φ with id(φ*M) = ∞."""
    require_height_one(family)
    M = as_gmodule(family, M, spec, name)
    points = classify_homs(family, spec, enumerate=True)['params']
    results = _fan_out(lambda params: decide_point(params, M, spec), points, threads)
    report = SupportReport(family, M.name, spec)
    for params, (infinite, certificate) in zip(points, results):
        (report.members if infinite else report.non_members).append(params)
        report.certificates[params.label()] = certificate
    logger.debug('support of %s over %s: %d of %d points', M.name, family.label(), len(report.members), len(points))
    return report


# cohomological support


class ResidueComparison:
    """Minimal resolution P of k over kG with a comparison map P -> bar resolution.

    The comparison sends a generator of P_n to 1 ⊗ X_n(g) with X_n(g) in the
    n-th tensor power of the augmentation ideal; pairing X_n(g) with a cobar
    cocycle (Koszul signs included) gives the cocycle on P_n.
    """

    def __init__(self, H, length, budget=None):
        self.H = H
        self.spec = H.spec
        self.A = dual_hopf(H)
        self.local = LocalAlgebra(self.A)
        self.budget = budget or supvar_setting('COBAR_BUDGET')
        self.betti, self.maps = minimal_resolution(self.local, length, budget=self.budget)
        self.unit = next(iter(self.A.unit))
        self._chains = {0: [{(): 1}]}

    def boundary(self, n, i):
        """d(e_i) in P_{n-1} as {(j, a): c}: the coefficient of e_a·g_j."""
        N = self.A.dim
        column = self.maps[n][:, i * N + self.unit]
        return {divmod(int(k), N): int(column[k]) for k in np.flatnonzero(column.view(np.ndarray))}

    def chain(self, n):
        if n in self._chains:
            return self._chains[n]
        F = self.spec.arith
        previous = self.chain(n - 1)
        chains = []
        for i in range(self.betti[n]):
            X = {}
            for (j, a), c in self.boundary(n, i).items():
                if a == self.unit:
                    continue
                for tensor, v in previous[j].items():
                    add_into(X, (a,) + tensor, F.mul(c, v), F)
            chains.append(X)
        size = sum(len(X) for X in chains)
        if size > self.budget:
            raise BudgetExceeded(f'comparison map in degree {n} has {size} terms', estimate=size, budget=self.budget)
        self._chains[n] = chains
        return chains

    def koszul_sign(self, tensor):
        odd = sum(self.H.parity(k) for k in tensor)
        return 1 if (odd * (odd - 1) // 2) % 2 == 0 else -1

    def evaluate(self, cochain, n):
        """Values of the cobar cochain on the generators of P_n."""
        F = self.spec.arith
        values = []
        for X in self.chain(n):
            total = 0
            small, large = (cochain, X) if len(cochain) <= len(X) else (X, cochain)
            for tensor, c in small.items():
                other = large.get(tensor)
                if other:
                    term = F.mul(c, other)
                    total = F.add(total, term if self.koszul_sign(tensor) == 1 else F.neg(term))
            values.append(total)
        return values


def endomorphism_action(M, A):
    """Left action of kG on Λ = End(M): a·X = Σ (-1)^{|a₂||X|} ρ(a₁) X ρ(S a₂), X flattened row-major."""
    GF = M.spec.GF
    d = M.dim
    rho = M.action(A)
    rho_s = []
    for j in range(A.dim):
        image = GF.Zeros((d, d))
        for k, c in A.antipode[j].items():
            image = image + GF(c) * rho[k]
        rho_s.append(image)
    P = M.parity_operator
    signs = kron(P, P)
    action = []
    for a in range(A.dim):
        L = GF.Zeros((d * d, d * d))
        for (i, j), c in A.comult[a].items():
            term = kron(rho[i], rho_s[j].T)
            if A.parity(j):
                term = term @ signs
            L = L + GF(c) * term
        action.append(L)
    return rho, action


def check_action(A, matrices, generators):
    """ρ(g)ρ(b) = ρ(gb) for every generator g and basis element b."""
    GF = A.spec.GF
    n = matrices[0].shape[0]
    for g in generators:
        for b in range(A.dim):
            expected = GF.Zeros((n, n))
            for k, c in A.mult.get((g, b), {}).items():
                expected = expected + GF(c) * matrices[k]
            if not np.array_equal(matrices[g] @ matrices[b], expected):
                return {'pass': False, 'witness': f'{A.basis[g].label} * {A.basis[b].label}'}
    return {'pass': True, 'witness': None}


def is_projective(M, local):
    """M is free over the local algebra kG iff dim M = b₀·dim kG."""
    rho = M.action(local.algebra)
    if not M.dim:
        return True
    images = [rho[g] for g in local.radical_generators]
    radical = type(rho[0])(np.concatenate(images, axis=1)) if images else rho[0][:, :0]
    generators = M.dim - rank(radical)
    return M.dim == generators * local.n


def _lift_monomial(spectrum, ring, m):
    full = [0] * len(ring.generators)
    for e, g in zip(m, spectrum.generators):
        full[ring.index[g.name]] = e
    return tuple(full)


@dataclass
class CohomologicalSupport:
    family: TargetFamily
    module: str
    spec: FieldSpec
    degree_cap: int
    coordinates: tuple
    ideal: list
    points: set
    method: str

    def to_json(self):
        return {
            'family': self.family.to_json(),
            'module': self.module,
            'field': self.spec.to_json(),
            'verified_up_to_degree': self.degree_cap,
            'coordinates': list(self.coordinates),
            'ideal': self.ideal,
            'points': sorted(list(point) for point in self.points),
            'method': self.method,
        }


def annihilator_in_degree(comparison, L, d, ring, spectrum, cocycles, n):
    """Elements z of degree n of H(G, k) with z·1_M = 0 in H^n(G, End M)."""
    spec = comparison.spec
    GF = spec.GF
    F = spec.arith
    monomials = spectrum.monomials(n)
    if not monomials:
        return []
    b_n, b_prev = comparison.betti[n], comparison.betti[n - 1]
    size = d * d
    identity = GF.Identity(d).reshape(-1)
    Z = GF.Zeros((b_n * size, len(monomials)))
    for col, m in enumerate(monomials):
        z = monomial_cochain(ring, cocycles, _lift_monomial(spectrum, ring, m), F)
        for i, value in enumerate(comparison.evaluate(z, n)):
            if value:
                Z[i * size:(i + 1) * size, col] = GF(value) * identity
    delta = GF.Zeros((b_n * size, b_prev * size))
    for i in range(b_n):
        for (j, a), c in comparison.boundary(n, i).items():
            delta[i * size:(i + 1) * size, j * size:(j + 1) * size] += GF(c) * L[a]
    null = kernel(GF(np.concatenate([Z, delta], axis=1)))[:, :len(monomials)]
    null = null[independent_rows(null)] if null.shape[0] else null
    return [{m: int(c) for m, c in zip(monomials, row) if c} for row in null if np.any(row)]


def cohomological_support(family, M, spec, degree_cap=None, name=''):
    """V(I_M) over the field, with I_M = ker(z ↦ z·1_M) computed up to degree_cap."""
    require_height_one(family)
    degree_cap = degree_cap or supvar_setting('DEGREE_CAP')
    if degree_cap < 4:
        raise InvalidInput('the annihilator is computed through degree 4 at least')
    M = as_gmodule(family, M, spec, name)
    H = family_hopf(family, spec)
    ring = presented_cohomology_ring(family, spec)
    spectrum = spectrum_ring(ring)
    comparison = ResidueComparison(H, degree_cap)
    A = comparison.A
    generators = [comparison.unit] + comparison.local.radical_generators
    ideal = []
    if is_projective(M, comparison.local):
        method = 'projective'
        for n in range(1, degree_cap + 1):
            ideal.extend({m: 1} for m in spectrum.monomials(n))
    else:
        method = 'cochain'
        d = M.dim
        estimate = d * d * max(comparison.betti)
        if estimate > comparison.budget:
            raise BudgetExceeded(f'coefficients in End(M) need {estimate} unknowns per degree', estimate=estimate, budget=comparison.budget)
        rho, L = endomorphism_action(M, A)
        for what, matrices in (('module', rho), ('End(M)', L)):
            report = check_action(A, matrices, generators)
            if not report['pass']:
                raise CheckFailed(f'{what} is not a kG-module', witness=report['witness'])
        unit = A.spec.GF.Identity(d).reshape(-1)
        moved = [g for g in comparison.local.radical_generators if np.any(L[g] @ unit)]
        if moved:
            raise CheckFailed('1_M is not invariant', witness=A.basis[moved[0]].label)
        cocycles = generator_cocycles(H)
        for n in range(1, degree_cap + 1):
            ideal.extend(annihilator_in_degree(comparison, L, d, ring, spectrum, cocycles, n))
    points = {
        values for values in enumerate_variety_points(spectrum, spec)
        if all(not spectrum.evaluate(z, dict(zip(spectrum.names, values))) for z in ideal)
    }
    logger.debug('I_M of %s through degree %d: %d elements, %d points', M.name, degree_cap, len(ideal), len(points))
    return CohomologicalSupport(
        family, M.name, spec, degree_cap, tuple(spectrum.names),
        [spectrum.format_poly(z) for z in ideal], points, method,
    )


def psi_points(family, params_list, spec):
    """Ψ(φ): the ψ-images of the spectrum coordinates evaluated at φ."""
    psi = psi_map(family, spec)
    spectrum = spectrum_ring(psi.source)
    return {
        params.label(): tuple(psi.target.evaluate(psi.images.get(name, {}), point_from_params(params)) for name in spectrum.names)
        for params in params_list
    }


def compare_supports(family, M, spec, degree_cap=None, name='', threads=None):
    """Ψ(𝒩₁(G)_M) against V(I_M): pass, fail, or inconclusive when the cap leaves V(I_M) larger."""
    M = as_gmodule(family, M, spec, name)
    support = support_set(family, M, spec, threads=threads)
    cohomological = cohomological_support(family, M, spec, degree_cap)
    images = set(psi_points(family, support.members, spec).values())
    if images == cohomological.points:
        status = 'pass'
    elif images < cohomological.points:
        status = 'inconclusive'
    else:
        status = 'fail'
    return {
        'status': status,
        'support_set': support.to_json(),
        'cohomological_support': cohomological.to_json(),
        'psi_image': sorted(list(point) for point in images),
        'witness': sorted(list(point) for point in images ^ cohomological.points)[:1] or None,
    }


# automorphisms


def aut_orbits(family, spec):
    """Orbits of Aut(G)(field) on 𝒩₁(G)(field) under φ ↦ ν∘φ."""
    require_height_one(family)
    points = classify_homs(family, spec, enumerate=True)['params']
    automorphisms = enumerate_automorphisms(family, spec)
    stars = [comorphism_from_params(nu, spec, codomain='endo') for nu in automorphisms]
    seen = set()
    orbits = []
    for params in points:
        if params.label() in seen:
            continue
        orbit = {pushforward_hom(star, params, spec, family).label() for star in stars}
        orbit.add(params.label())
        seen |= orbit
        orbits.append(sorted(orbit))
    return {
        'family': family.to_json(),
        'field': spec.to_json(),
        'automorphisms': len(automorphisms),
        'orbits': orbits,
        'sizes': [len(orbit) for orbit in orbits],
    }


def equivariance_check(family, M, nu, spec, name=''):
    """φ ∈ 𝒩₁(G)_{ν*M} exactly when ν∘φ ∈ 𝒩₁(G)_M, at every field point."""
    M = as_gmodule(family, M, spec, name)
    twisted = twist_module(nu, M, spec)
    star = comorphism_from_params(nu, spec, codomain='endo')
    checked = 0
    for params in classify_homs(family, spec, enumerate=True)['params']:
        left, _ = decide_point(params, twisted, spec)
        composite = pushforward_hom(star, params, spec, family)
        right, _ = decide_point(composite, M, spec)
        if left != right:
            return {
                'pass': False, 'checked': checked,
                'witness': {'params': params.label(), 'composite': composite.label(), 'twisted': left, 'original': right},
            }
        checked += 1
    return {'pass': True, 'checked': checked, 'witness': None}
