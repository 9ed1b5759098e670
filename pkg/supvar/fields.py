"""Finite fields F_q (q = p^e, p odd) and exact linear algebra over them.

Matrices are galois FieldArrays; scalar bookkeeping inside the structure
constant builders goes through `FiniteField`, which keeps integer-coded
lookup tables so tight Python loops never touch array machinery.
"""
import logging
from dataclasses import dataclass, field
from functools import lru_cache

import galois
import numpy as np

from supvar.exceptions import InconsistentSystem, InvalidInput

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class FieldSpec:
    p: int
    e: int = 1
    modulus: tuple = field(default=(), compare=False, repr=False)

    def __post_init__(self):
        if not isinstance(self.p, int) or self.p < 3 or not galois.is_prime(self.p):
            raise InvalidInput(f'characteristic must be an odd prime, got {self.p!r}')
        if not isinstance(self.e, int) or self.e < 1:
            raise InvalidInput(f'extension degree must be >= 1, got {self.e!r}')
        if not self.modulus:
            object.__setattr__(self, 'modulus', canonical_modulus(self.p, self.e))

    @property
    def order(self):
        return self.p ** self.e

    @property
    def GF(self):
        return galois_field(self.p, self.e)

    @property
    def arith(self):
        return finite_field(self.p, self.e)

    def label(self):
        return f'F{self.order}'

    def to_json(self):
        return {'p': self.p, 'e': self.e, 'modulus': list(self.modulus)}

    @classmethod
    def from_json(cls, data):
        spec = cls(int(data['p']), int(data.get('e', 1)))
        if 'modulus' in data and list(data['modulus']) != list(spec.modulus):
            raise InvalidInput('only the canonical modulus is supported', modulus=data['modulus'])
        return spec

    @classmethod
    def from_order(cls, p, q):
        e, power = 0, 1
        while power < q:
            power *= p
            e += 1
        if power != q:
            raise InvalidInput(f'{q} is not a power of {p}')
        return cls(p, e)


@lru_cache(maxsize=None)
def canonical_modulus(p, e):
    """Lexicographically least monic irreducible of degree e, coefficients low to high."""
    poly = galois.irreducible_poly(p, e, method='min')
    return tuple(int(c) for c in reversed(poly.coeffs))


@lru_cache(maxsize=None)
def galois_field(p, e):
    if e == 1:
        return galois.GF(p)
    modulus = canonical_modulus(p, e)
    poly = galois.Poly(list(reversed(modulus)), field=galois.GF(p))
    return galois.GF(p ** e, irreducible_poly=poly)


class FiniteField:
    """Integer-coded scalar arithmetic on F_q, backed by tables from galois."""

    def __init__(self, p, e):
        self.p = p
        self.e = e
        self.q = p ** e
        GF = galois_field(p, e)
        elements = GF(np.arange(self.q))
        self._add = np.add.outer(elements, elements).view(np.ndarray).astype(int).tolist()
        self._mul = np.multiply.outer(elements, elements).view(np.ndarray).astype(int).tolist()
        self._neg = (-elements).view(np.ndarray).astype(int).tolist()
        self._inv = [0] + (GF(np.arange(1, self.q)) ** -1).view(np.ndarray).astype(int).tolist()
        self._frob = (elements ** p).view(np.ndarray).astype(int).tolist()
        self._root = (elements ** (self.q // p)).view(np.ndarray).astype(int).tolist()

    def elements(self):
        return range(self.q)

    def from_int(self, n):
        """Image of the integer n under Z -> F_p -> F_q."""
        return n % self.p

    def add(self, a, b):
        return self._add[a][b]

    def sub(self, a, b):
        return self._add[a][self._neg[b]]

    def neg(self, a):
        return self._neg[a]

    def mul(self, a, b):
        return self._mul[a][b]

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError('0 has no inverse')
        return self._inv[a]

    def pow(self, a, n):
        if n < 0:
            return self.pow(self.inv(a), -n)
        result = 1
        base = a
        while n:
            if n & 1:
                result = self._mul[result][base]
            base = self._mul[base][base]
            n >>= 1
        return result

    def frobenius(self, a, times=1):
        for _ in range(times % self.e):
            a = self._frob[a]
        return a

    def pth_root(self, a):
        return self._root[a]

    def total(self, values):
        result = 0
        for value in values:
            result = self._add[result][value]
        return result


@lru_cache(maxsize=None)
def finite_field(p, e):
    return FiniteField(p, e)


def encode_element(spec, x):
    """Coefficient vector (low to high, length e) of the integer-coded element x."""
    x = int(x)
    digits = []
    for _ in range(spec.e):
        digits.append(x % spec.p)
        x //= spec.p
    return digits


def decode_element(spec, digits):
    if isinstance(digits, int):
        digits = [digits] + [0] * (spec.e - 1)
    if len(digits) != spec.e or any(not 0 <= d < spec.p for d in digits):
        raise InvalidInput(f'{digits!r} is not an element of {spec.label()}')
    return sum(d * spec.p ** i for i, d in enumerate(digits))


def _field_of(*arrays):
    fields = {type(a) for a in arrays}
    if len(fields) != 1:
        raise InvalidInput('matrices live over different fields')
    GF = fields.pop()
    if not issubclass(GF, galois.FieldArray):
        raise InvalidInput('expected galois field arrays')
    return GF


def as_matrix(A):
    if A.ndim == 1:
        return A.reshape(-1, 1)
    return A


def rref(A, ncols=None):
    """Reduced row echelon form and its pivot columns (restricted to the first ncols)."""
    GF = _field_of(A)
    rows, cols = A.shape
    ncols = cols if ncols is None else ncols
    if rows == 0 or ncols == 0:
        return A.copy(), []
    R = A.row_reduce(ncols=ncols)
    pivots = []
    for i in range(min(rows, ncols)):
        nonzero = np.flatnonzero(R[i, :ncols])
        if nonzero.size == 0:
            break
        pivots.append(int(nonzero[0]))
    return GF(R), pivots


def rank(A):
    return len(rref(A)[1])


def kernel(A):
    """Basis of {x : A x = 0} as the rows of a (k x cols) array, in canonical form."""
    GF = _field_of(A)
    cols = A.shape[1]
    R, pivots = rref(A)
    free = [c for c in range(cols) if c not in set(pivots)]
    basis = GF.Zeros((len(free), cols))
    for k, f in enumerate(free):
        basis[k, f] = 1
        for i, pc in enumerate(pivots):
            basis[k, pc] = -R[i, f]
    return basis


@dataclass
class SolutionSet:
    particular: object
    kernel: object

    @property
    def consistent(self):
        return self.particular is not None

    def contains(self, A, x):
        if not self.consistent:
            return False
        return not np.any(A @ x - A @ self.particular)


def linear_solve(A, b):
    """All solutions of A x = b: a particular solution plus a kernel basis."""
    GF = _field_of(A, b)
    b = b.reshape(-1)
    if A.ndim != 2 or A.shape[0] != b.shape[0]:
        raise InvalidInput(f'shape mismatch: {A.shape} against {b.shape}')
    rows, cols = A.shape
    null = kernel(A)
    augmented = GF(np.concatenate([A, b.reshape(-1, 1)], axis=1))
    R, pivots = rref(augmented, ncols=cols)
    rest = R[len(pivots):, cols]
    if np.any(rest):
        return SolutionSet(None, null)
    x = GF.Zeros(cols)
    for i, pc in enumerate(pivots):
        x[pc] = R[i, cols]
    return SolutionSet(x, null)


def solve_many(A, B, what='linear system'):
    """One particular solution X of A X = B (column by column), or InconsistentSystem."""
    GF = _field_of(A, B)
    B = as_matrix(B)
    if A.shape[0] != B.shape[0]:
        raise InvalidInput(f'shape mismatch: {A.shape} against {B.shape}')
    cols = A.shape[1]
    X = GF.Zeros((cols, B.shape[1]))
    if B.shape[1] == 0:
        return X
    if cols == 0 or A.shape[0] == 0:
        if np.any(B):
            raise InconsistentSystem(f'{what} has no solution', witness={'column': int(np.flatnonzero(np.any(B, axis=0))[0])})
        return X
    R, pivots = rref(GF(np.concatenate([A, B], axis=1)), ncols=cols)
    rest = R[len(pivots):, cols:]
    if np.any(rest):
        bad = int(np.flatnonzero(np.any(rest, axis=0))[0])
        raise InconsistentSystem(f'{what} has no solution', witness={'column': bad})
    for i, pc in enumerate(pivots):
        X[pc] = R[i, cols:]
    return X


def independent_rows(A):
    """Indices of a maximal linearly independent subset of the rows of A."""
    if A.shape[0] == 0:
        return []
    return rref(A.T)[1]
