"""Cohomology rings of the elementary supergroups and restriction along homomorphisms.

H^•(G, k) is computed from the reduced cobar complex of k[G]: cochains are
dicts {(i1, .., in): coefficient} over the augmentation-ideal basis, the
differential is d[a1|..|an] = Σ (-1)^i [..|Δ̄ai|..] and the cup product is
concatenation. Classes are named by monomials of a presented ring whose
generators carry fixed cocycle representatives; `express_class` reads an
arbitrary cocycle back as a ring element.
"""
import logging
from functools import cached_property, lru_cache
from itertools import product
from math import comb, factorial

import numpy as np

from supvar.conf import supvar_setting
from supvar.exceptions import BudgetExceeded, CheckFailed, InvalidInput
from supvar.fields import independent_rows, kernel, rank, solve_many
from supvar.homvariety import (
    TargetFamily, classify_homs, comorphism_from_params, family_hopf, family_of, theta_power,
)
from supvar.polynomials import Generator, PresentedGradedRing, Relation, RingMap
from supvar.resolution import minimal_resolution
from supvar.superalgebra import (
    AlgebraMorphism, add_into, coordinate_label, dual_hopf, parse_coordinate_label,
)

logger = logging.getLogger(__name__)


# presented rings


def cohomology_family(family):
    """The elementary group whose cohomology the family's k[G] computes."""
    if family.tag == 'MrEndo':
        return TargetFamily('Mr1' if family.s == 1 else 'Mrs', family.r, family.s)
    return family


@lru_cache(maxsize=None)
def presented_cohomology_ring(family, spec):
    """H^•(G, k) as generators and relations.

    𝕄_{r;1}: k[y, x1..xr] ⊗ Λ(l1..lr). 𝕄_{r;s}, s >= 2: adds w with y² = x_r.
    G_a(r): k[x1..xr] ⊗ Λ(l1..lr). G_a^-: k[y]. The twisted 𝕄_{r;s,η} has the
    ring of 𝕄_{r-1;s+1}. Generator weights are internal degrees in k[G].

    This is the full H^•, λ's included; restriction and cochain work use it.
    H(G, k), the diagonal subring behind ψ and |G|, is `psi.spectrum_ring`
    applied to it.
    """
    family = cohomology_family(family)
    p = spec.p
    tag = family.tag
    r, s = (family.r - 1, family.s + 1) if tag == 'MrsEta' else (family.r, family.s)
    has_y = tag != 'Gar'
    has_x = tag != 'Gaminus'
    has_w = tag in ('Mrs', 'MrsEta')
    gens = []
    if has_y:
        gens.append(Generator('y', 1, 1, p ** r))
    if has_x:
        gens.extend(Generator(f'x{i}', 2, 0, 2 * p ** i) for i in range(1, r + 1))
    if has_w:
        gens.append(Generator('w', 2, 0, 2 * p ** (r + s - 1)))
    if has_x:
        gens.extend(Generator(f'l{i}', 1, 0, 2 * p ** (i - 1)) for i in range(1, r + 1))
    relations = ()
    aliases = ()
    if has_w:
        n = len(gens)
        lead = [0] * n
        lead[0] = 2
        tail = [0] * n
        tail[r] = 1
        relations = (Relation(tuple(lead), ((tuple(tail), 1),)),)
        aliases = ((f'w{s}', r + 1),)
    return PresentedGradedRing(spec, tuple(gens), relations, True, f'H({family.label()})', aliases)


def named_class(ring, family, text):
    """Parse 'y*w', 'x1^2', ... into a ring element; for 𝕄_{r;1}, w means x_r - y²."""
    family = cohomology_family(family)
    result = ring.one()
    if text.strip() in ('', '1'):
        return result
    for part in text.split('*'):
        name, _, power = part.strip().partition('^')
        if family.tag == 'Mr1' and name in ('w', 'w1'):
            factor = ring.sub(ring.gen(f'x{family.r}'), ring.pow(ring.gen('y'), 2))
        else:
            factor = ring.gen(name)
        result = ring.mul(result, ring.pow(factor, int(power or 1)))
    return result


def homogeneous_degree(ring, poly):
    degrees = {ring.degree(m) for m in poly}
    if len(degrees) > 1:
        raise InvalidInput('the class is not homogeneous', degrees=sorted(degrees))
    return degrees.pop() if degrees else 0


# cochains


def concatenate(x, y, F):
    result = {}
    for a, u in x.items():
        for b, v in y.items():
            add_into(result, a + b, F.mul(u, v), F)
    return result


def map_cochain(phi, z):
    """φ^{⊗n} applied to a cochain."""
    F = phi.source.F
    result = {}
    for tensor, c in z.items():
        for choice in product(*(phi.columns[k].items() for k in tensor)):
            value = c
            for _, v in choice:
                value = F.mul(value, v)
            add_into(result, tuple(i for i, _ in choice), value, F)
    return result


def bockstein(H, f):
    """β(f) = Σ_{0<l<p} (C(p, l)/p) f^l ⊗ f^{p-l}; a cocycle for primitive even f."""
    F = H.F
    p = H.spec.p
    powers = [H.power(f, ell) for ell in range(p + 1)]
    result = {}
    for ell in range(1, p):
        c = F.from_int(comb(p, ell) // p)
        for i, u in powers[ell].items():
            for j, v in powers[p - ell].items():
                add_into(result, (i, j), F.mul(c, F.mul(u, v)), F)
    return result


def w_cocycle(H, s):
    """-[Σ σ_j ⊗ σ_{p^s-j} + Σ_{i+j+p=p^s} σ_iτ ⊗ σ_jτ]."""
    F = H.F
    top = H.spec.p ** s
    minus = F.neg(1)
    result = {}
    for j in range(1, top):
        key = (H.index(coordinate_label(0, j, 0)), H.index(coordinate_label(0, top - j, 0)))
        add_into(result, key, minus, F)
    for i in range(top - H.spec.p + 1):
        key = (H.index(coordinate_label(0, i, 1)), H.index(coordinate_label(0, top - H.spec.p - i, 1)))
        add_into(result, key, minus, F)
    return result


@lru_cache(maxsize=None)
def coalgebra_isomorphism(H):
    """π*: k[𝕄_{r-1;s+1}] -> k[𝕄_{r;s,η}], θ^i σ_{j+i₀p^s} τ^ε ↦ (-η⁻¹)^{i₀}/i₀! θ^{i₀+pi} σ_j τ^ε."""
    meta = H.family
    if meta.get('family') != 'MrsEta':
        raise InvalidInput(f'{H.name} is not a twisted coordinate algebra')
    r, s, eta = meta['r'], meta['s'], meta['eta']
    F = H.F
    p = H.spec.p
    source = family_hopf(TargetFamily('Mrs', r - 1, s + 1), H.spec)
    c = F.neg(F.inv(eta))
    columns = []
    for b in source.basis:
        i, j, eps = parse_coordinate_label(b.label)
        i0, j = divmod(j, p ** s)
        coeff = F.mul(F.pow(c, i0), F.inv(F.from_int(factorial(i0))))
        columns.append({H.index(coordinate_label(i0 + p * i, j, eps)): coeff})
    return AlgebraMorphism(source, H, tuple(columns))


def coalgebra_check(phi):
    """Comultiplication and counit are preserved."""
    S, T = phi.source, phi.target
    for k in range(S.dim):
        if T.coproduct(phi.columns[k]) != phi.apply_tensor(S.comult[k]):
            return {'pass': False, 'failed': 'comultiplication', 'witness': S.basis[k].label}
        if T.apply_counit(phi.columns[k]) != S.counit[k]:
            return {'pass': False, 'failed': 'counit', 'witness': S.basis[k].label}
    return {'pass': True, 'failed': None, 'witness': None}


@lru_cache(maxsize=None)
def generator_cocycles(H):
    """{generator name: cocycle} for k[G] of an elementary family."""
    family = family_of(H)
    if family.tag == 'MrsEta':
        pi = coalgebra_isomorphism(H)
        return {name: map_cochain(pi, z) for name, z in generator_cocycles(pi.source).items()}
    r = family.r
    cocycles = {}
    if 't' in H.generators:
        cocycles['y'] = {(H.generators['t'],): 1}
    thetas = [theta_power(H, r, m) for m in range(r)] if family.has_a else []
    for i, f in enumerate(thetas, 1):
        cocycles[f'x{i}'] = bockstein(H, f)
    if family.tag == 'Mrs':
        cocycles['w'] = w_cocycle(H, family.s)
    for i, f in enumerate(thetas, 1):
        cocycles[f'l{i}'] = {(k,): c for k, c in f.items()}
    return cocycles


def monomial_cochain(ring, cocycles, m, F):
    """Representative of a ring monomial: its generators' cocycles concatenated in ring order."""
    result = {(): 1}
    for e, g in zip(m, ring.generators):
        for _ in range(e):
            result = concatenate(result, cocycles[g.name], F)
    return result


def class_cochain(ring, cocycles, poly, F):
    result = {}
    for m, c in poly.items():
        for tensor, v in monomial_cochain(ring, cocycles, m, F).items():
            add_into(result, tensor, F.mul(c, v), F)
    return result


# cobar complex


class CobarComplex:
    """Reduced cobar complex of k[G], split into internal-degree blocks when k[G] is graded."""

    def __init__(self, hopf, budget=None):
        self.hopf = hopf
        self.spec = hopf.spec
        self._budget = budget
        self._sizes = [{0: 1}]
        self._tensors = {}
        self._positions = {}
        self._differentials = {}
        self._systems = {}

    @property
    def budget(self):
        return self._budget or supvar_setting('COBAR_BUDGET')

    def weight(self, k):
        return self.hopf.basis[k].degree if self.hopf.graded else 0

    def weight_of(self, tensor):
        return sum(self.weight(k) for k in tensor)

    @cached_property
    def by_weight(self):
        table = {}
        for k in range(1, self.hopf.dim):
            table.setdefault(self.weight(k), []).append(k)
        return table

    @cached_property
    def reduced(self):
        return [self.hopf.reduced_coproduct(k) for k in range(self.hopf.dim)]

    def block_sizes(self, n):
        """{weight: dim C^n_weight}."""
        while len(self._sizes) <= n:
            step = {}
            for D, count in self._sizes[-1].items():
                for w, items in self.by_weight.items():
                    step[D + w] = step.get(D + w, 0) + count * len(items)
            self._sizes.append(step)
        return self._sizes[n]

    def blocks(self, n):
        return sorted(self.block_sizes(n))

    def tensors(self, n, D):
        key = (n, D)
        if key not in self._tensors:
            if n == 0:
                found = [()] if D == 0 else []
            else:
                found = []
                for w in sorted(self.by_weight):
                    if w > D:
                        continue
                    rest = self.tensors(n - 1, D - w)
                    for k in self.by_weight[w]:
                        found.extend((k,) + tail for tail in rest)
            self._tensors[key] = found
        return self._tensors[key]

    def position(self, n, D):
        key = (n, D)
        if key not in self._positions:
            self._positions[key] = {t: i for i, t in enumerate(self.tensors(n, D))}
        return self._positions[key]

    def d_tensor(self, tensor):
        F = self.hopf.F
        result = {}
        for i, k in enumerate(tensor):
            sign = F.neg(1) if i % 2 == 0 else 1
            for (a, b), c in self.reduced[k].items():
                add_into(result, tensor[:i] + (a, b) + tensor[i + 1:], F.mul(sign, c), F)
        return result

    def d(self, cochain):
        F = self.hopf.F
        result = {}
        for tensor, c in cochain.items():
            for image, v in self.d_tensor(tensor).items():
                add_into(result, image, F.mul(c, v), F)
        return result

    def check_budget(self, estimate, what):
        if estimate > self.budget:
            raise BudgetExceeded(f'{what} needs {estimate} matrix entries', estimate=estimate, budget=self.budget)

    def differential(self, n, D):
        """Matrix of d: C^n_D -> C^{n+1}_D."""
        key = (n, D)
        rows_count = self.block_sizes(n + 1).get(D, 0)
        cols_count = self.block_sizes(n).get(D, 0)
        self.check_budget(rows_count * cols_count, f'd{n} in weight {D} of {self.hopf.name}')
        if key not in self._differentials:
            rows = self.position(n + 1, D)
            M = np.zeros((rows_count, cols_count), dtype=int)
            for c, tensor in enumerate(self.tensors(n, D)):
                for image, value in self.d_tensor(tensor).items():
                    M[rows[image], c] = value
            self._differentials[key] = self.spec.GF(M)
        return self._differentials[key]

    def _rank(self, M):
        return rank(M) if M.size else 0

    def block_dimension(self, n, D):
        size = self.block_sizes(n).get(D, 0)
        if not size:
            return 0
        outgoing = self._rank(self.differential(n, D))
        incoming = self._rank(self.differential(n - 1, D)) if n else 0
        return size - outgoing - incoming

    def dimension(self, n):
        return sum(self.block_dimension(n, D) for D in self.blocks(n))

    def representatives(self, n, D):
        """Cocycles of C^n_D whose classes form a basis of H^n_D."""
        GF = self.spec.GF
        cycles = kernel(self.differential(n, D))
        size = cycles.shape[1]
        boundaries = self.differential(n - 1, D).T if n else GF.Zeros((0, size))
        stack = GF(np.concatenate([boundaries, cycles]))
        offset = boundaries.shape[0]
        tensors = self.tensors(n, D)
        chosen = [i - offset for i in independent_rows(stack) if i >= offset]
        return [
            {tensors[k]: int(cycles[i, k]) for k in np.flatnonzero(cycles[i])}
            for i in chosen
        ]

    def _system(self, n, D, ring, cocycles, candidates):
        key = (n, D, ring.name, candidates)
        if key not in self._systems:
            GF = self.spec.GF
            F = self.spec.arith
            pos = self.position(n, D)
            size = len(pos)
            incoming = self.differential(n - 1, D) if n else GF.Zeros((size, 0))
            self.check_budget(size * (len(candidates) + incoming.shape[1]), f'class expression in weight {D}')
            reps = np.zeros((size, len(candidates)), dtype=int)
            for c, m in enumerate(candidates):
                for tensor, v in monomial_cochain(ring, cocycles, m, F).items():
                    if tensor not in pos:
                        raise CheckFailed(f'representative of {ring.monomial_name(m)} leaves weight {D}')
                    reps[pos[tensor], c] = v
            A = GF(np.concatenate([reps, incoming.view(np.ndarray)], axis=1))
            if self._rank(A) != len(candidates) + self._rank(incoming):
                raise CheckFailed(
                    f'representatives of {ring.name} are dependent modulo coboundaries',
                    witness={'degree': n, 'weight': D, 'monomials': [ring.monomial_name(m) for m in candidates]},
                )
            self._systems[key] = A
        return self._systems[key]

    def express(self, cochain, n, ring, cocycles):
        """The ring element whose representative is cohomologous to the cocycle."""
        GF = self.spec.GF
        F = self.spec.arith
        if self.d(cochain):
            raise CheckFailed('the cochain is not a cocycle', witness={'degree': n})
        parts = {}
        for tensor, c in cochain.items():
            parts.setdefault(self.weight_of(tensor), {})[tensor] = c
        monomials = ring.monomials(n)
        result = {}
        for D, part in sorted(parts.items()):
            candidates = tuple(m for m in monomials if not self.hopf.graded or ring.weight(m) == D)
            A = self._system(n, D, ring, cocycles, candidates)
            pos = self.position(n, D)
            b = np.zeros(len(pos), dtype=int)
            for tensor, c in part.items():
                b[pos[tensor]] = c
            x = solve_many(A, GF(b), what=f'expression in {ring.name}')
            for m, c in zip(candidates, x[:len(candidates), 0]):
                add_into(result, m, int(c), F)
        return result


@lru_cache(maxsize=None)
def cobar_complex(H):
    return CobarComplex(H)


def cobar_cohomology(H, n):
    """dim H^n and representative cocycles spanning it, block by block."""
    cx = cobar_complex(H)
    representatives = [z for D in cx.blocks(n) for z in cx.representatives(n, D)]
    return len(representatives), representatives


# restriction


def express_class(H, cochain, n):
    """Read a cocycle of k[G] as an element of the presented ring of G."""
    ring = presented_cohomology_ring(family_of(H), H.spec)
    return cobar_complex(H).express(cochain, n, ring, generator_cocycles(H)), ring


def pullback_class(phi, poly, source_ring=None):
    """φ*(z) for a coalgebra map φ: k[G'] -> k[G] and z in H^•(G', k), as an element of H^•(G, k)."""
    S = phi.source
    F = S.F
    source_ring = source_ring or presented_cohomology_ring(family_of(S), S.spec)
    n = homogeneous_degree(source_ring, poly)
    z = class_cochain(source_ring, generator_cocycles(S), poly, F)
    return express_class(phi.target, map_cochain(phi, z), n)


def restriction_comorphism(params, spec):
    """Comorphism along which classes restrict: into k[G] itself, k[𝕄_{r;s+1}] when twisted, k[𝕄_{r;1}] for G_a-types."""
    if params.family.tag in ('Gar', 'Gaminus'):
        return comorphism_from_params(params, spec, ambient_t=1)
    return comorphism_from_params(params, spec, codomain='endo')


def restrict_class(params, z, spec):
    """ρ*(z) along the homomorphism labelled by params; z is a ring element or its name."""
    ring = presented_cohomology_ring(params.family, spec)
    poly = named_class(ring, params.family, z) if isinstance(z, str) else z
    phi = restriction_comorphism(params, spec)
    return pullback_class(phi, poly, ring)


def _codomain_family(params):
    fam = params.family
    if fam.tag == 'MrsEta':
        return TargetFamily('Mrs', fam.r, fam.s + 1)
    if fam.tag in ('Gar', 'Gaminus'):
        return TargetFamily('Mr1', params.source_r)
    return cohomology_family(fam)


def restriction_formula(params, spec):
    """Closed-form ρ* as a ring map into the codomain's presented ring."""
    if params.shift:
        raise InvalidInput('closed forms are stated for homomorphisms without Frobenius twist')
    params.validate(spec)
    fam = params.family
    F = spec.arith
    p = spec.p
    r, s = fam.r, fam.s
    source = presented_cohomology_ring(fam, spec)
    target = presented_cohomology_ring(_codomain_family(params), spec)
    a = params.a

    def linear(terms):
        result = {}
        for name, c in terms:
            result = target.add(result, target.gen(name), c)
        return result

    images = {}
    if 'y' in source.index:
        images['y'] = linear([('y', params.mu)])
    if fam.tag == 'MrsEta':
        for i in range(1, r):
            images[f'l{i}'] = linear((f'l{i + 1 + k}', F.pow(a[k], p ** i)) for k in range(r - i))
            images[f'x{i}'] = linear((f'x{i + 1 + k}', F.pow(a[k], p ** (i + 1))) for k in range(r - i))
        twist = F.pow(F.neg(F.inv(fam.eta)), p)
        terms = [(f'x{k + 1}', F.mul(twist, F.pow(a[k], p))) for k in range(r)]
        terms.append(('w', F.pow(a[0], p ** (r + s))))
        images['w'] = linear(terms)
    elif fam.has_a:
        for i in range(1, r + 1):
            images[f'l{i}'] = linear((f'l{i + k}', F.pow(a[k], p ** (i - 1))) for k in range(r - i + 1))
            images[f'x{i}'] = linear((f'x{i + k}', F.pow(a[k], p ** i)) for k in range(r - i + 1))
        if 'w' in source.index:
            images['w'] = linear([('w', F.pow(a[0], p ** (r + s - 1))), (f'x{r}', F.pow(params.b, p))])
    return RingMap(source, target, images)


def formula_agreement(family, spec, params_list=None, classes=None):
    """Compare restriction through the cobar complex with the closed forms, class by class."""
    ring = presented_cohomology_ring(family, spec)
    params_list = params_list if params_list is not None else classify_homs(family, spec, enumerate=True)['params']
    classes = classes or list(ring.names)
    checked = 0
    for params in params_list:
        formula = restriction_formula(params, spec)
        for name in classes:
            poly = named_class(ring, family, name)
            computed, target = restrict_class(params, poly, spec)
            expected = formula.apply(poly)
            if computed != expected:
                return {
                    'family': family.to_json(), 'pass': False, 'checked': checked,
                    'witness': {
                        'params': params.label(), 'class': name,
                        'computed': target.format_poly(computed), 'expected': target.format_poly(expected),
                    },
                }
            checked += 1
    return {'family': family.to_json(), 'pass': True, 'checked': checked, 'witness': None}


# dimensions


def cohomology_dims(H, n_max, method='auto'):
    """dim H^n(G, k) for n <= n_max: cobar blocks, or Betti numbers of k over k[G]^# past the budget."""
    if method not in ('auto', 'cobar', 'resolution'):
        raise InvalidInput(f'unknown method {method!r}')
    cx = cobar_complex(H)
    dims, sources = [], []
    betti = None
    for n in range(n_max + 1):
        if method != 'resolution':
            try:
                dims.append(cx.dimension(n))
                sources.append('cobar')
                continue
            except BudgetExceeded:
                if method == 'cobar':
                    raise
                logger.info('cobar complex of %s over budget in degree %d, resolving instead', H.name, n)
        if betti is None:
            betti, _ = minimal_resolution(dual_hopf(H), n_max)
        dims.append(betti[n])
        sources.append('resolution')
    return dims, sources


def low_degree_agreement(family, spec, n_max=None, method='auto'):
    """Hilbert function of the presented ring against computed dimensions in degrees 0..n_max."""
    n_max = supvar_setting('DEGREE_CAP') if n_max is None else n_max
    ring = presented_cohomology_ring(family, spec)
    H = family_hopf(family, spec)
    computed, sources = cohomology_dims(H, n_max, method)
    expected = [ring.hilbert(n) for n in range(n_max + 1)]
    mismatch = next((n for n in range(n_max + 1) if computed[n] != expected[n]), None)
    return {
        'family': family.to_json(),
        'ring': ring.name,
        'degrees': list(range(n_max + 1)),
        'presented': expected,
        'computed': computed,
        'method': sources,
        'pass': mismatch is None,
        'witness': None if mismatch is None else {'degree': mismatch},
    }


