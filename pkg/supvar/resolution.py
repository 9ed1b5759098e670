"""Minimal free resolutions over a finite-dimensional local (super)algebra.

For an infinitesimal group G the group algebra kG = k[G]^# is local, and
dim H^n(G, M) is the n-th Betti number of a minimal resolution of M. Free
modules A^b are stored as flat vectors indexed by j * dim(A) + basis index.
"""
import logging
from functools import cached_property

import numpy as np

from supvar.exceptions import BudgetExceeded, CheckFailed, InvalidInput
from supvar.fields import independent_rows, kernel

logger = logging.getLogger(__name__)


class LocalAlgebra:
    """Left multiplication tables and radical generators of a local algebra."""

    def __init__(self, algebra):
        self.algebra = algebra
        self.spec = algebra.spec
        self.n = algebra.dim

    @cached_property
    def left(self):
        GF = self.spec.GF
        tables = []
        for a in range(self.n):
            M = np.zeros((self.n, self.n), dtype=int)
            for b in range(self.n):
                for k, c in self.algebra.mult.get((a, b), {}).items():
                    M[k, b] = c
            tables.append(GF(M))
        return tables

    @cached_property
    def augmentation_ideal(self):
        return [k for k in range(self.n) if not self.algebra.counit[k]]

    @cached_property
    def radical_generators(self):
        """Basis elements of I spanning I/I²."""
        GF = self.spec.GF
        ideal = self.augmentation_ideal
        if self.algebra.counit[next(iter(self.algebra.unit))] != 1:
            raise InvalidInput(f'{self.algebra.name} has no augmentation through its unit')
        squares = []
        for a in ideal:
            for b in ideal:
                out = self.algebra.mult.get((a, b))
                if out:
                    row = np.zeros(self.n, dtype=int)
                    for k, c in out.items():
                        row[k] = c
                    squares.append(row)
        singles = [np.eye(self.n, dtype=int)[k] for k in ideal]
        stack = GF(np.array(squares + singles, dtype=int).reshape(-1, self.n))
        chosen = [i - len(squares) for i in independent_rows(stack) if i >= len(squares)]
        return [ideal[i] for i in chosen]

    def act(self, a, rows, m):
        """Left action of basis element a on rows of A^m."""
        if rows.shape[0] == 0:
            return rows
        blocks = rows.reshape(rows.shape[0] * m, self.n)
        return (blocks @ self.left[a].T).reshape(rows.shape[0], m * self.n)


class Module:
    """A finite-dimensional left module: {basis index of A: action matrix}."""

    def __init__(self, local, action):
        self.local = local
        self.action = action
        self.dim = next(iter(action.values())).shape[0]

    @classmethod
    def trivial(cls, local):
        GF = local.spec.GF
        return cls(local, {a: GF([[local.algebra.counit[a]]]) for a in range(local.n)})

    def act(self, a, rows):
        if rows.shape[0] == 0:
            return rows
        return rows @ self.action[a].T


def _minimal_generators(rows, act, generators):
    """Rows of the subspace `rows` spanning it modulo I·span(rows)."""
    GF = type(rows)
    width = rows.shape[1]
    moved = [act(g, rows) for g in generators]
    moved = [block for block in moved if block.shape[0]]
    lower = GF(np.concatenate(moved)) if moved else GF.Zeros((0, width))
    stack = GF(np.concatenate([lower, rows]))
    offset = lower.shape[0]
    return rows[[i - offset for i in independent_rows(stack) if i >= offset]]


def minimal_resolution(algebra, length, module=None, budget=None):
    """Betti numbers b_0..b_length of a minimal free resolution of `module` (default k).

    Returns the Betti numbers and the cover maps A^{b_i} -> previous term.
    """
    local = algebra if isinstance(algebra, LocalAlgebra) else LocalAlgebra(algebra)
    module = module or Module.trivial(local)
    GF = local.spec.GF
    n = local.n
    gens = local.radical_generators

    # step 0: cover of the module itself
    basis = GF.Identity(module.dim)
    chosen = _minimal_generators(basis, module.act, gens)
    columns = []
    for g in chosen:
        for a in range(n):
            columns.append(module.action[a] @ g)
    cover = GF(np.stack(columns, axis=1)) if columns else GF.Zeros((module.dim, 0))
    betti = [chosen.shape[0]]
    maps = [cover]
    for step in range(1, length + 1):
        m = betti[-1]
        estimate = cover.shape[0] * cover.shape[1]
        if budget is not None and estimate > budget:
            raise BudgetExceeded(f'resolution step {step} needs {estimate} matrix entries', estimate=estimate, budget=budget)
        syzygies = kernel(cover)
        chosen = _minimal_generators(syzygies, lambda a, rows: local.act(a, rows, m), gens)
        columns = []
        for g in chosen:
            for a in range(n):
                columns.append(local.act(a, g.reshape(1, -1), m).reshape(-1))
        cover = GF(np.stack(columns, axis=1)) if columns else GF.Zeros((m * n, 0))
        betti.append(chosen.shape[0])
        maps.append(cover)
        logger.debug('resolution of %s: b_%d = %d', local.algebra.name, step, betti[-1])
    return betti, maps


def check_resolution(maps):
    """Consecutive cover maps compose to zero."""
    for i in range(1, len(maps)):
        if maps[i].shape[1] and np.any(maps[i - 1] @ maps[i]):
            raise CheckFailed(f'cover maps {i - 1} and {i} do not compose to zero', witness={'step': i})
    return True
