"""Seed-fixed battery of small G-modules used by the support comparisons."""
import logging

import numpy as np

from supvar.conf import supvar_setting
from supvar.exceptions import InvalidInput
from supvar.fields import independent_rows, solve_many
from supvar.superalgebra import PPolynomial, build_group_hopf
from supvar.supermatrix import SuperMatrixTuple, regular_module, require_valid, tuple_from_module

logger = logging.getLogger(__name__)


def shift_matrix(spec, j):
    GF = spec.GF
    J = GF.Zeros((j, j))
    for a in range(j - 1):
        J[a + 1, a] = 1
    return J


def trivial_tuple(spec):
    return SuperMatrixTuple.zero(spec, 1, 0)


def truncated_tuple(spec, j):
    """k[u]/(u^j) with v acting by 0; j = p is P₁/(v)."""
    GF = spec.GF
    return SuperMatrixTuple(spec, j, 0, (shift_matrix(spec, j),), GF.Zeros((j, j)))


def quotient_u_tuple(spec, j):
    """kG/(u^j) for j <= p: basis u^a | u^a v, with v² = -u^p = 0 in the quotient."""
    if not 1 <= j <= spec.p:
        raise InvalidInput('kG/(u^j) is spanned by u^a, u^a v only for 1 <= j <= p')
    GF = spec.GF
    J = shift_matrix(spec, j)
    alpha = GF.Zeros((2 * j, 2 * j))
    alpha[:j, :j] = J
    alpha[j:, j:] = J
    beta = GF.Zeros((2 * j, 2 * j))
    for a in range(j):
        beta[j + a, a] = 1
    return SuperMatrixTuple(spec, j, j, (alpha,), beta)


def group_algebra(family, spec):
    return build_group_hopf(1, PPolynomial.monomial(family.s), spec=spec)


def regular_tuple(family, spec):
    GF = spec.GF
    if family.tag == 'Gar':
        return truncated_tuple(spec, spec.p)
    if family.tag == 'Gaminus':
        return SuperMatrixTuple(spec, 1, 1, (GF.Zeros((2, 2)),), GF([[0, 0], [1, 0]]))
    return tuple_from_module(regular_module(group_algebra(family, spec)))


def syzygy_tuple(family, spec):
    """Ω(k): the augmentation ideal of kG."""
    GF = spec.GF
    if family.tag == 'Gar':
        return truncated_tuple(spec, spec.p - 1)
    if family.tag == 'Gaminus':
        return SuperMatrixTuple.zero(spec, 0, 1)
    t = regular_tuple(family, spec)
    keep = list(range(1, t.dim))

    def restrict(M):
        return GF(M[np.ix_(keep, keep)])

    return SuperMatrixTuple(spec, t.m - 1, t.n, (restrict(t.alpha[0]),), restrict(t.beta))


def random_tuple(family, spec, rng, max_dim=4):
    """Cyclic submodule of kG generated by a random homogeneous element deep in the radical."""
    grp = group_algebra(family, spec)
    R = regular_module(grp)
    GF = spec.GF
    order = sorted(range(grp.dim), key=grp.parity)
    parity = rng.integers(0, 2)
    degrees = sorted({grp.basis[k].degree for k in order if k}, reverse=True)
    best = None
    for threshold in degrees:
        support = [i for i, k in enumerate(order) if k and grp.parity(k) == parity and grp.basis[k].degree >= threshold]
        if not support:
            continue
        x = GF.Zeros(grp.dim)
        x[support] = GF(rng.integers(1, spec.order, size=len(support)))
        blocks = {0: [], 1: []}
        for k in range(grp.dim):
            blocks[(grp.parity(k) + parity) % 2].append(R.action[k] @ x)
        chosen = []
        for eps in (0, 1):
            if blocks[eps]:
                vectors = GF(np.stack(blocks[eps]))
                chosen.append(vectors[independent_rows(vectors)])
            else:
                chosen.append(GF.Zeros((0, grp.dim)))
        dim = chosen[0].shape[0] + chosen[1].shape[0]
        if dim > max_dim:
            break
        best = chosen
    if best is None:
        return None
    B = GF(np.concatenate(best)).T
    alpha = solve_many(B, R.gen('u0') @ B, what='restriction to the cyclic submodule')
    beta = solve_many(B, R.gen('v') @ B, what='restriction to the cyclic submodule')
    return SuperMatrixTuple(spec, best[0].shape[0], best[1].shape[0], (alpha,), beta)


def battery(family, spec, seed=None, max_dim=6):
    """[(name, tuple)] of the shipped modules for a height-one family."""
    seed = supvar_setting('SEED') if seed is None else seed
    p = spec.p
    modules = [('trivial', trivial_tuple(spec)), ('regular', regular_tuple(family, spec))]
    if family.tag in ('Mr1', 'Mrs'):
        modules.append(('quotient_v', truncated_tuple(spec, p)))
        modules.extend((f'quotient_u{j}', quotient_u_tuple(spec, j)) for j in range(1, p + 1))
        modules.extend((f'truncated{j}', truncated_tuple(spec, j)) for j in range(2, p))
        modules.append(('syzygy', syzygy_tuple(family, spec)))
        rng = np.random.default_rng(seed)
        for i in range(2):
            t = random_tuple(family, spec, rng)
            if t is not None:
                modules.append((f'random{i}', t))
    elif family.tag == 'Gar':
        modules.extend((f'truncated{j}', truncated_tuple(spec, j)) for j in range(2, p))
        modules.append(('syzygy', syzygy_tuple(family, spec)))
    else:
        modules.append(('syzygy', syzygy_tuple(family, spec)))
    s = family.s if family.tag in ('Mr1', 'Mrs') else None
    kept = []
    for name, t in modules:
        if t.dim > max_dim and name != 'regular':
            continue
        require_valid(t, s)
        kept.append((name, t))
    logger.debug('battery for %s: %s', family.label(), [name for name, _ in kept])
    return kept


def battery_module(family, spec, name, seed=None):
    for key, t in battery(family, spec, seed):
        if key == name:
            return t
    raise InvalidInput(f'no battery module {name!r} for {family.label()}')
