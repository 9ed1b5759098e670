"""Finite-dimensional modules over P₁ = k[u, v]/(u^p + v²) and their syzygies.

P₁ is the group algebra of 𝕄₁: u is even of degree 2, v is odd of degree p.
P₁ is a one-dimensional hypersurface, so a finite-dimensional module either
has projective dimension at most one or a resolution that is periodic from
the second step on. The second syzygy tells the two apart.

Elements of P₁ are dicts {(a, ε): c} for the normal-form monomials u^a v^ε.
"""
import logging
from dataclasses import dataclass, field

import numpy as np

from supvar.conf import supvar_setting
from supvar.exceptions import CheckFailed, DegreeCapReached, InvalidInput
from supvar.fields import FieldSpec, independent_rows, kernel, rank
from supvar.supermatrix import first_nonzero, mat_pow

logger = logging.getLogger(__name__)


# ring arithmetic


def p1_mul(x, y, spec):
    F = spec.arith
    result = {}
    for (a, e), c in x.items():
        for (b, f), d in y.items():
            coeff = F.mul(c, d)
            if e + f == 2:
                key, coeff = (a + b + spec.p, 0), F.neg(coeff)
            else:
                key = (a + b, e + f)
            value = F.add(result.get(key, 0), coeff)
            if value:
                result[key] = value
            else:
                result.pop(key, None)
    return result


def p1_degree(key, p):
    a, eps = key
    return 2 * a + p * eps


def p1_format(x, spec):
    minus_one = spec.arith.neg(1)
    terms = []
    for (a, eps), c in sorted(x.items()):
        name = ' '.join(part for part in ('u' if a == 1 else (f'u^{a}' if a else ''), 'v' if eps else '') if part) or '1'
        if c == 1:
            terms.append(name)
        elif c == minus_one:
            terms.append(f'-{name}')
        else:
            terms.append(f'{c}*{name}')
    return ' + '.join(terms) or '0'


# modules


@dataclass(frozen=True, eq=False)
class GradedP1Module:
    """u acts by alpha, v by beta. `grading` lists basis degrees when the module is graded."""
    spec: FieldSpec
    alpha: object
    beta: object
    parities: tuple = None
    grading: tuple = None
    name: str = field(default='', compare=False)

    def __post_init__(self):
        if self.alpha.shape != self.beta.shape or self.alpha.shape[0] != self.alpha.shape[1]:
            raise InvalidInput(f'action matrices of shapes {self.alpha.shape} and {self.beta.shape}')
        if self.parities is None:
            object.__setattr__(self, 'parities', (0,) * self.alpha.shape[0])
        if len(self.parities) != self.dim or (self.grading is not None and len(self.grading) != self.dim):
            raise InvalidInput('parity or grading vector does not match the dimension')

    @property
    def dim(self):
        return self.alpha.shape[0]

    @property
    def graded(self):
        return self.grading is not None

    def act(self, x):
        GF = self.spec.GF
        result = GF.Zeros((self.dim, self.dim))
        for (a, eps), c in x.items():
            term = mat_pow(self.alpha, a)
            if eps:
                term = term @ self.beta
            result = result + GF(c) * term
        return result

    def check(self):
        """αβ = βα, α^p + β² = 0, α nilpotent, and degrees respected when graded."""
        p = self.spec.p
        d = self.dim
        failures = {}
        commutator = self.alpha @ self.beta - self.beta @ self.alpha
        if np.any(commutator):
            failures['commute'] = first_nonzero(commutator)
        relation = mat_pow(self.alpha, p) + self.beta @ self.beta
        if np.any(relation):
            failures['relation'] = first_nonzero(relation)
        if d and np.any(mat_pow(self.alpha, d)):
            failures['nilpotent'] = first_nonzero(mat_pow(self.alpha, d))
        if self.graded:
            for name, M, shift in (('u', self.alpha, 2), ('v', self.beta, p)):
                for i, j in np.argwhere(M.view(np.ndarray)):
                    if self.grading[i] != self.grading[j] + shift:
                        failures[f'{name}_degree'] = [int(i), int(j)]
                        break
        return {'pass': not failures, 'failures': failures}

    def require_valid(self):
        report = self.check()
        if not report['pass']:
            raise CheckFailed(f'{self.name or "module"} is not a P1-module', witness=report['failures'])
        return self

    def to_json(self):
        return {
            'name': self.name,
            'dim': self.dim,
            'alpha': self.alpha.view(np.ndarray).tolist(),
            'beta': self.beta.view(np.ndarray).tolist(),
            'parities': list(self.parities),
            'grading': list(self.grading) if self.graded else None,
        }


def trivial_p1_module(spec, dim=1):
    GF = spec.GF
    return GradedP1Module(spec, GF.Zeros((dim, dim)), GF.Zeros((dim, dim)), grading=(0,) * dim, name='k' if dim == 1 else f'k^{dim}')


def zero_p1_module(spec):
    GF = spec.GF
    return GradedP1Module(spec, GF.Zeros((0, 0)), GF.Zeros((0, 0)), grading=(), name='0')


def truncated_u_module(spec, j=None):
    """P₁/(v, u^j) = k[u]/(u^j) with v acting by 0; j = p gives P₁/(v)."""
    j = spec.p if j is None else j
    if not 1 <= j <= spec.p:
        raise InvalidInput('v acts by 0 on k[u]/(u^j) only for 1 <= j <= p')
    GF = spec.GF
    alpha = GF.Zeros((j, j))
    for a in range(j - 1):
        alpha[a + 1, a] = 1
    return GradedP1Module(spec, alpha, GF.Zeros((j, j)), grading=tuple(2 * a for a in range(j)), name=f'k[u]/(u^{j})')


def direct_sum(M, N):
    GF = M.spec.GF

    def block(A, B):
        out = GF.Zeros((M.dim + N.dim, M.dim + N.dim))
        out[:M.dim, :M.dim] = A
        out[M.dim:, M.dim:] = B
        return out

    grading = M.grading + N.grading if M.graded and N.graded else None
    return GradedP1Module(
        M.spec, block(M.alpha, N.alpha), block(M.beta, N.beta),
        M.parities + N.parities, grading, f'{M.name}+{N.name}',
    )


def kron(A, B):
    GF = type(A)
    out = GF.Zeros((A.shape[0] * B.shape[0], A.shape[1] * B.shape[1]))
    n, m = B.shape
    for i, j in np.argwhere(A.view(np.ndarray)):
        out[i * n:(i + 1) * n, j * m:(j + 1) * m] = A[i, j] * B
    return out


def _parity_matrix(M):
    GF = M.spec.GF
    return GF(np.diag([1 if x == 0 else M.spec.p - 1 for x in M.parities]).astype(int).reshape(M.dim, M.dim))


def tensor_module(M, N):
    """M ⊗ N with u and v primitive: v(m ⊗ n) = vm ⊗ n + (-1)^|m| m ⊗ vn."""
    if M.spec != N.spec:
        raise InvalidInput('modules over different fields')
    GF = M.spec.GF
    one_m, one_n = GF.Identity(M.dim), GF.Identity(N.dim)
    alpha = kron(M.alpha, one_n) + kron(one_m, N.alpha)
    beta = kron(M.beta, one_n) + kron(_parity_matrix(M), N.beta)
    parities = tuple((x + y) % 2 for x in M.parities for y in N.parities)
    grading = tuple(g + h for g in M.grading for h in N.grading) if M.graded and N.graded else None
    return GradedP1Module(M.spec, alpha, beta, parities, grading, f'{M.name}(x){N.name}')


def dual_module(M):
    """M^# with S(u) = -u, S(v) = -v and the Koszul sign on odd functionals."""
    alpha = -M.alpha.T
    beta = -(M.beta.T @ _parity_matrix(M))
    grading = tuple(-g for g in M.grading) if M.graded else None
    return GradedP1Module(M.spec, alpha, beta, M.parities, grading, f'{M.name}^#')


# the periodic resolution of k


def residue_resolution(spec, length):
    """d_1..d_length of the minimal resolution of k: d_1 = (u v), then the factorization (-v u^{p-1}; u v) forever."""
    F = spec.arith
    p = spec.p
    u, v = {(1, 0): 1}, {(0, 1): 1}
    factorization = [[{(0, 1): F.neg(1)}, {(p - 1, 0): 1}], [u, v]]
    return [[[u, v]]] + [factorization] * max(length - 1, 0)


def _block_matrix(entries, M):
    """The P₁-matrix `entries` acting on M^{cols} -> M^{rows}."""
    GF = M.spec.GF
    rows, cols = len(entries), len(entries[0])
    d = M.dim
    out = GF.Zeros((rows * d, cols * d))
    for i in range(rows):
        for j in range(cols):
            if entries[i][j]:
                out[i * d:(i + 1) * d, j * d:(j + 1) * d] = M.act(entries[i][j])
    return out


def _transpose(entries):
    return [list(column) for column in zip(*entries)]


def tor_betti(M, length=4):
    """b_i = dim Tor_i(k, M) for i <= length, from the resolution of k tensored with M."""
    if M.dim == 0:
        return [0] * (length + 1)
    maps = [_block_matrix(d, M) for d in residue_resolution(M.spec, length + 1)]
    ranks = [rank(D) for D in maps]
    betti = [M.dim - ranks[0]]
    for i in range(1, length + 1):
        betti.append(maps[i - 1].shape[1] - ranks[i - 1] - ranks[i])
    return betti


def ext_dims(M, lo, hi):
    """dim Ext^i_{P₁}(k, M) for lo <= i <= hi."""
    if M.dim == 0:
        return [0] * (hi - lo + 1)
    d = M.dim
    coboundaries = [_block_matrix(_transpose(e), M) for e in residue_resolution(M.spec, hi + 1)]
    ranks = [rank(D) for D in coboundaries]
    dims = []
    for i in range(lo, hi + 1):
        width = d * (1 if i == 0 else 2)
        incoming = ranks[i - 1] if i else 0
        dims.append(width - ranks[i] - incoming)
    return dims


def is_eventually_periodic(betti, start=2):
    return all(betti[i] == betti[i + 2] for i in range(start, len(betti) - 2))


def id_infinite(M, cross_check=True, window=None):
    """Whether φ*M has infinite injective dimension over 𝕄₁, decided by Ω²(M) != 0.

    The certificate carries b_0..b_3 and, when cross-checking, the Ext window
    [2 dim M, 2 dim M + 3], which must be nonzero exactly when Ω² is. A graded
    module is also resolved degree by degree; its graded Betti numbers must
    match, and a syzygy search that reaches its degree cap raises
    DegreeCapReached. Pullbacks along a point of 𝒩₁ are ungraded and are
    decided by Tor alone.
    """
    betti = tor_betti(M, 4)
    infinite = betti[2] != 0
    certificate = {'infinite': infinite, 'betti': betti, 'periodic': is_eventually_periodic(betti)}
    if infinite and not certificate['periodic']:
        logger.warning('Betti numbers %s of %s are not 2-periodic', betti, M.name)
    if M.graded and M.dim:
        graded = graded_betti(M, 3, window)
        certificate['graded_betti'] = graded
        if graded != betti[:4]:
            raise CheckFailed('graded syzygies disagree with Tor', witness={'module': M.name, 'tor': betti[:4], 'graded': graded})
    if cross_check:
        lo = 2 * M.dim
        dims = ext_dims(M, lo, lo + 3)
        certificate['ext_window'] = {'from': lo, 'dims': dims}
        if any(dims) != infinite:
            raise CheckFailed('syzygy and Ext-window decisions disagree', witness={'module': M.name, 'betti': betti, 'ext': dims})
    return infinite, certificate


# graded syzygies


def free_basis(degrees, D, p):
    """The k-basis (j, a, ε) of ⊕_j P₁(-degrees[j]) in internal degree D."""
    basis = []
    for j, e in enumerate(degrees):
        rest = D - e
        if rest < 0:
            continue
        eps = rest % 2
        if eps and rest < p:
            continue
        basis.append((j, (rest - p * eps) // 2, eps))
    return basis


@dataclass(frozen=True)
class GradedPresentation:
    """A degree-preserving map ⊕ P₁(-source_degrees[j]) -> target.

    The target is a graded module (images are vectors of it) or a free module
    given by its generator degrees (images are tuples of P₁ elements).
    """
    spec: FieldSpec
    source_degrees: tuple
    images: tuple
    target: object
    image_hilbert: dict = field(default=None, compare=False)

    @property
    def free_target(self):
        return not isinstance(self.target, GradedP1Module)


@dataclass(frozen=True)
class ResolutionStep:
    index: int
    betti: int
    degrees: tuple
    matrix: tuple
    hilbert: dict = field(default_factory=dict, compare=False)

    def is_minimal(self):
        """Every presentation entry lies in (u, v)."""
        return all((0, 0) not in entry for column in self.matrix for entry in column)

    def to_json(self, spec):
        return {
            'index': self.index,
            'betti': self.betti,
            'degrees': list(self.degrees),
            'matrix': [[p1_format(entry, spec) for entry in column] for column in self.matrix],
        }


def module_presentation(M):
    """Cover of a graded module by homogeneous minimal generators (index 0 of its resolution)."""
    if not M.graded:
        raise InvalidInput('syzygies are computed degree by degree and need a graded module')
    GF = M.spec.GF
    order = sorted(range(M.dim), key=lambda i: M.grading[i])
    if M.dim:
        lower = GF(np.concatenate([M.alpha.T, M.beta.T]))
        stack = GF(np.concatenate([lower, GF.Identity(M.dim)[order]]))
        chosen = [order[i - lower.shape[0]] for i in independent_rows(stack) if i >= lower.shape[0]]
    else:
        chosen = []
    images = tuple(GF.Identity(M.dim)[i] for i in chosen)
    presentation = GradedPresentation(M.spec, tuple(M.grading[i] for i in chosen), images, M)
    step = ResolutionStep(0, len(chosen), presentation.source_degrees, ())
    return presentation, step


def _shift(x, a, eps, spec):
    return p1_mul(x, {(a, eps): 1}, spec)


def _image_vector(pres, key, D):
    spec = pres.spec
    GF = spec.GF
    j, a, eps = key
    if not pres.free_target:
        return pres.target.act({(a, eps): 1}) @ pres.images[j]
    basis = free_basis(pres.target, D, spec.p)
    position = {(i, b, f): n for n, (i, b, f) in enumerate(basis)}
    out = GF.Zeros(len(basis))
    for i, entry in enumerate(pres.images[j]):
        for (b, f), c in _shift(entry, a, eps, spec).items():
            out[position[(i, b, f)]] += GF(c)
    return out


def _multiply_rows(rows, old_basis, new_basis, key_map, spec):
    """Rows over old_basis times a monomial, rewritten over new_basis; key_map sends (a, ε) to ((a', ε'), sign)."""
    GF = spec.GF
    position = {key: n for n, key in enumerate(new_basis)}
    out = GF.Zeros((rows.shape[0], len(new_basis)))
    for col, (j, a, eps) in enumerate(old_basis):
        (b, f), sign = key_map(a, eps)
        out[:, position[(j, b, f)]] += GF(sign) * rows[:, col]
    return out


def _image_dimension(pres, M, D):
    if not pres.free_target:
        return sum(1 for g in pres.target.grading if g == D)
    if pres.image_hilbert and D in pres.image_hilbert:
        return pres.image_hilbert[D]
    return rank(M) if M is not None and M.shape[0] else 0


def syzygy_step(pres, index=1, window=None, cap=None):
    """Minimal generators of the kernel of a graded presentation, found degree by degree.

    Generators lying in u·K + v·K are discarded. The search stops once
    `window` consecutive degrees past the last relevant degree add nothing,
    and the kernel dimension balances source against image in every degree.
    The image is counted on the target side: all of the module for a cover,
    the previous kernel for a free target whose Hilbert function is known.
    """
    spec = pres.spec
    GF = spec.GF
    F = spec.arith
    p = spec.p
    window = window or supvar_setting('SYZYGY_WINDOW') or 2 * p
    if not pres.source_degrees:
        return ResolutionStep(index, 0, (), ())
    target_degrees = pres.target if pres.free_target else pres.target.grading
    top = max(tuple(pres.source_degrees) + tuple(target_degrees or (0,))) + 2 * p
    cap = cap if cap is not None else top + 4 * window
    lo = min(pres.source_degrees)
    kernels, bases, hilbert = {}, {}, {}
    generators, degrees = [], []
    last_new = lo
    D = lo
    while True:
        if D > cap:
            raise DegreeCapReached(
                f'syzygy {index} not certified by degree {cap}',
                estimate=D, budget=cap, last_new=last_new, window=window, generators=len(generators),
            )
        basis = free_basis(pres.source_degrees, D, p)
        bases[D] = basis
        if basis:
            columns = [_image_vector(pres, key, D) for key in basis]
            height = columns[0].shape[0]
            M = GF(np.stack(columns, axis=1)) if height else GF.Zeros((0, len(basis)))
            K = kernel(M)
        else:
            M = None
            K = GF.Zeros((0, 0))
        image_rank = _image_dimension(pres, M, D)
        kernels[D] = K
        lower = []
        if D - 2 in kernels and kernels[D - 2].shape[0]:
            lower.append(_multiply_rows(kernels[D - 2], bases[D - 2], basis, lambda a, e: ((a + 1, e), 1), spec))
        if D - p in kernels and kernels[D - p].shape[0]:
            lower.append(_multiply_rows(
                kernels[D - p], bases[D - p], basis,
                lambda a, e: ((a, 1), 1) if not e else ((a + p, 0), F.neg(1)), spec,
            ))
        below = GF(np.concatenate(lower)) if lower else GF.Zeros((0, len(basis)))
        if below.shape[0] and M is not None and np.any((M @ below.T).view(np.ndarray)):
            raise CheckFailed('u and v multiples of syzygies leave the kernel', witness={'degree': D})
        fresh = []
        if K.shape[0]:
            stack = GF(np.concatenate([below, K]))
            fresh = [i - below.shape[0] for i in independent_rows(stack) if i >= below.shape[0]]
            for i in fresh:
                column = [dict() for _ in pres.source_degrees]
                for col in np.flatnonzero(K[i].view(np.ndarray)):
                    j, a, eps = basis[col]
                    column[j][(a, eps)] = int(K[i, col])
                generators.append(tuple(column))
                degrees.append(D)
            if fresh:
                last_new = D
                logger.debug('syzygy %d: %d new generators in degree %d', index, len(fresh), D)
        accumulated = rank(GF(np.concatenate([below, K[fresh]]))) if below.shape[0] or fresh else 0
        if accumulated != len(basis) - image_rank:
            raise CheckFailed('Hilbert balance fails', witness={'degree': D, 'source': len(basis), 'image': image_rank, 'kernel': accumulated})
        hilbert[D] = (len(basis), image_rank, accumulated)
        if D >= top and D - last_new >= window:
            break
        D += 1
    return ResolutionStep(index, len(generators), tuple(degrees), tuple(generators), hilbert)


def graded_resolution(M, length=3, window=None):
    """Steps 0..length of a minimal graded resolution; stops early once a syzygy vanishes."""
    pres, step = module_presentation(M)
    steps = [step]
    for i in range(1, length + 1):
        if not steps[-1].betti:
            break
        step = syzygy_step(pres, i, window)
        steps.append(step)
        pres = GradedPresentation(
            M.spec, step.degrees, step.matrix, pres.source_degrees,
            {D: counts[2] for D, counts in step.hilbert.items()},
        )
    return steps


def graded_betti(M, length=3, window=None):
    steps = graded_resolution(M, length, window)
    betti = [step.betti for step in steps]
    return betti + [0] * (length + 1 - len(betti))
