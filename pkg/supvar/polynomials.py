"""Presented graded (super)commutative rings.

A ring is a list of generators plus rewrite rules `lead -> tail`, where
`lead` is an exponent vector and `tail` a polynomial of smaller order.
Polynomials are dicts mapping exponent tuples to integer-coded field
elements. Generators whose swap sign with themselves is -1 are exterior.
"""
from dataclasses import dataclass, field
from functools import cached_property
from itertools import product

from supvar.exceptions import InvalidInput


@dataclass(frozen=True)
class Generator:
    name: str
    degree: int
    parity: int = 0
    weight: int = 0


@dataclass(frozen=True)
class Relation:
    lead: tuple
    tail: tuple = ()

    @property
    def tail_poly(self):
        return dict(self.tail)


@dataclass(frozen=True)
class PresentedGradedRing:
    spec: object
    generators: tuple
    relations: tuple = ()
    graded_commutative: bool = False
    name: str = ''
    aliases: tuple = field(default=(), compare=False)

    @cached_property
    def names(self):
        return [g.name for g in self.generators]

    @cached_property
    def index(self):
        table = {g.name: i for i, g in enumerate(self.generators)}
        table.update(dict(self.aliases))
        return table

    def swap_sign(self, i, j):
        if not self.graded_commutative:
            return 1
        gi, gj = self.generators[i], self.generators[j]
        return -1 if (gi.degree * gj.degree + gi.parity * gj.parity) % 2 else 1

    @cached_property
    def exterior(self):
        return [self.swap_sign(i, i) == -1 for i in range(len(self.generators))]

    # polynomial arithmetic

    @property
    def F(self):
        return self.spec.arith

    def zero(self):
        return {}

    def one(self):
        return {(0,) * len(self.generators): 1}

    def gen(self, name):
        if name not in self.index:
            raise InvalidInput(f'{self.name or "ring"} has no generator {name!r}')
        exps = [0] * len(self.generators)
        exps[self.index[name]] = 1
        return {tuple(exps): 1}

    def constant(self, c):
        c = self.F.from_int(c) if isinstance(c, int) and c < 0 else c
        return {(0,) * len(self.generators): c} if c else {}

    def add(self, f, g, scale=1):
        F = self.F
        result = dict(f)
        for m, c in g.items():
            value = F.add(result.get(m, 0), F.mul(scale, c))
            if value:
                result[m] = value
            else:
                result.pop(m, None)
        return result

    def sub(self, f, g):
        return self.add(f, g, self.F.neg(1))

    def scale(self, f, c):
        if not c:
            return {}
        return {m: self.F.mul(c, v) for m, v in f.items()}

    def _monomial_product(self, a, b):
        """Sign and exponent vector of the ordered product a*b, or (0, None) when it vanishes."""
        sign = 1
        n = len(a)
        for i in range(n):
            if not b[i]:
                continue
            if self.exterior[i] and a[i] + b[i] > 1:
                return 0, None
            for j in range(i + 1, n):
                if a[j] and self.swap_sign(i, j) == -1 and (a[j] * b[i]) % 2:
                    sign = -sign
        return sign, tuple(x + y for x, y in zip(a, b))

    def mul(self, f, g):
        F = self.F
        result = {}
        for a, ca in f.items():
            for b, cb in g.items():
                sign, m = self._monomial_product(a, b)
                if not sign:
                    continue
                c = F.mul(ca, cb)
                if sign < 0:
                    c = F.neg(c)
                result = self.add(result, self._reduce_monomial(m), c)
        return result

    def pow(self, f, n):
        result = self.one()
        for _ in range(n):
            result = self.mul(result, f)
        return result

    def _reduce_monomial(self, m):
        for rel in self.relations:
            if all(x >= y for x, y in zip(m, rel.lead)):
                rest = tuple(x - y for x, y in zip(m, rel.lead))
                sign, check = self._monomial_product(rel.lead, rest)
                if not sign or check != m:
                    return {}
                reduced = self.mul(rel.tail_poly, {rest: 1})
                return self.scale(reduced, self.F.from_int(sign))
        return {m: 1}

    def normal_form(self, f):
        result = {}
        for m, c in f.items():
            result = self.add(result, self._reduce_monomial(m), c)
        return result

    # grading

    def degree(self, m):
        return sum(e * g.degree for e, g in zip(m, self.generators))

    def parity(self, m):
        return sum(e * g.parity for e, g in zip(m, self.generators)) % 2

    def weight(self, m):
        return sum(e * g.weight for e, g in zip(m, self.generators))

    def is_normal(self, m):
        if any(ext and e > 1 for ext, e in zip(self.exterior, m)):
            return False
        return not any(all(x >= y for x, y in zip(m, rel.lead)) for rel in self.relations)

    def monomials(self, degree):
        """Normal monomials of the given total degree, in lexicographic order."""
        found = []
        n = len(self.generators)

        def walk(i, remaining, exps):
            if i == n:
                if remaining == 0:
                    m = tuple(exps)
                    if self.is_normal(m):
                        found.append(m)
                return
            d = self.generators[i].degree
            top = 1 if self.exterior[i] else (remaining // d if d else 0)
            for e in range(min(top, remaining // d if d else 0) + 1):
                walk(i + 1, remaining - e * d, exps + [e])

        walk(0, degree, [])
        return sorted(found)

    def hilbert(self, degree):
        return len(self.monomials(degree))

    def diagonal_monomials(self, degree):
        """Monomials of the even/odd-diagonal subring: parity equal to degree mod 2."""
        return [m for m in self.monomials(degree) if self.parity(m) == degree % 2]

    def is_homogeneous(self, f):
        return len({self.degree(m) for m in f}) <= 1

    def relations_homogeneous(self):
        for rel in self.relations:
            degrees = {self.degree(rel.lead)} | {self.degree(m) for m in rel.tail_poly}
            if len(degrees) > 1:
                return False
        return True

    # points

    def evaluate(self, f, point):
        """Value of f at a point given as {generator name: element}; missing names are 0."""
        F = self.F
        values = [point.get(g.name, 0) for g in self.generators]
        total = 0
        for m, c in f.items():
            term = c
            for v, e in zip(values, m):
                if e:
                    term = F.mul(term, F.pow(v, e))
            total = F.add(total, term)
        return total

    def relation_polys(self):
        return [self.sub({rel.lead: 1}, rel.tail_poly) for rel in self.relations]

    def satisfies(self, point):
        return all(self.evaluate(f, point) == 0 for f in self.relation_polys())

    def points(self):
        names = self.names
        for values in product(range(self.spec.order), repeat=len(names)):
            point = dict(zip(names, values))
            if self.satisfies(point):
                yield point

    def is_squarefree_presentation(self):
        """Each relation reads var^e = tail with var absent from tail and p not dividing e."""
        for rel in self.relations:
            support = [i for i, e in enumerate(rel.lead) if e]
            if len(support) != 1:
                return False
            i = support[0]
            if rel.lead[i] % self.spec.p == 0:
                return False
            if any(m[i] for m in rel.tail_poly):
                return False
        return True

    # display

    def monomial_name(self, m):
        parts = []
        for e, g in zip(m, self.generators):
            if e == 1:
                parts.append(g.name)
            elif e > 1:
                parts.append(f'{g.name}^{e}')
        return '*'.join(parts) or '1'

    def parse_monomial(self, text):
        exps = [0] * len(self.generators)
        if text.strip() in ('', '1'):
            return tuple(exps)
        for part in text.split('*'):
            name, _, power = part.strip().partition('^')
            if name not in self.index:
                raise InvalidInput(f'{self.name or "ring"} has no generator {name!r}')
            exps[self.index[name]] += int(power or 1)
        return tuple(exps)

    def format_poly(self, f):
        return {self.monomial_name(m): c for m, c in sorted(f.items())}

    def to_json(self):
        return {
            'name': self.name,
            'field': self.spec.to_json(),
            'generators': [
                {'name': g.name, 'degree': g.degree, 'parity': g.parity, 'weight': g.weight}
                for g in self.generators
            ],
            'relations': [
                {'lead': self.monomial_name(rel.lead), 'tail': self.format_poly(rel.tail_poly)}
                for rel in self.relations
            ],
            'graded_commutative': self.graded_commutative,
        }


@dataclass(frozen=True, eq=False)
class RingMap:
    """Ring homomorphism given by the images of the source generators; missing names map to 0."""
    source: PresentedGradedRing
    target: PresentedGradedRing
    images: dict

    def image(self, i):
        return self.images.get(self.source.generators[i].name, {})

    def apply_monomial(self, m):
        result = self.target.one()
        for i, e in enumerate(m):
            if e:
                result = self.target.mul(result, self.target.pow(self.image(i), e))
        return result

    def apply(self, f):
        result = {}
        for m, c in f.items():
            result = self.target.add(result, self.apply_monomial(m), c)
        return result

    def respects_relations(self):
        return all(not self.apply(f) for f in self.source.relation_polys())

    def to_json(self):
        return {name: self.target.format_poly(image) for name, image in self.images.items()}
