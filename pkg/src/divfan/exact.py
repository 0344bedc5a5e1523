"""Exact arithmetic over Q and over number fields Q[x]/(p).

Rationals are ``fractions.Fraction``.  A number field is presented by a
single monic modulus, constant term first.  Q itself is the degree one
field Q[x]/(x), so every coordinate in the library is a ``FieldElement``
and code never branches on "rational or algebraic".
"""

from fractions import Fraction
from itertools import product
from math import gcd, lcm

from .errors import (DivisionByZero, FieldMismatch, ReducibleModulus,
                     SizeBudgetExceeded)
from .verdict import Verdict


def Q(x):
    """Coerce ints, Fractions and "p/q" strings to a Fraction."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x.strip())
    raise TypeError(f"cannot read {x!r} as a rational")


def qstr(x):
    return str(Q(x))


# ---------------------------------------------------------------------------
# number fields


def _divisors(n):
    n = abs(n)
    if n == 0:
        return [0]
    out = []
    d = 1
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            out.append(n // d)
        d += 1
    return sorted(set(out))


def rational_roots(coeffs):
    """Rational roots of a polynomial given constant term first."""
    coeffs = [Q(c) for c in coeffs]
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    if len(coeffs) <= 1:
        return []
    roots = set()
    if coeffs[0] == 0:
        roots.add(Fraction(0))
        k = 0
        while coeffs[k] == 0:
            k += 1
        coeffs = coeffs[k:]
        if len(coeffs) <= 1:
            return sorted(roots)
    den = lcm(*(c.denominator for c in coeffs))
    ints = [int(c * den) for c in coeffs]
    for p in _divisors(ints[0]):
        for q in _divisors(ints[-1]):
            for s in (1, -1):
                r = Fraction(s * p, q)
                val = sum(c * r ** k for k, c in enumerate(ints))
                if val == 0:
                    roots.add(r)
    return sorted(roots)


class NumberField:
    """Q[x]/(modulus) for a monic modulus, constant term first."""

    __slots__ = ("modulus", "generator", "degree", "irreducible_checked", "_one", "_zero")

    def __init__(self, modulus, generator="a"):
        mod = tuple(Q(c) for c in modulus)
        if len(mod) < 2:
            raise ValueError("modulus must have degree at least 1")
        if mod[-1] != 1:
            raise ValueError("modulus must be monic")
        self.modulus = mod
        self.generator = generator
        self.degree = len(mod) - 1
        if self.degree <= 3:
            if self.degree > 1 and rational_roots(mod):
                raise ReducibleModulus(f"modulus {list(map(str, mod))} has a rational root")
            self.irreducible_checked = True
        else:
            # accepted on trust; reports carry the flag
            self.irreducible_checked = False
        self._zero = None
        self._one = None

    def __eq__(self, other):
        return isinstance(other, NumberField) and self.modulus == other.modulus

    def __hash__(self):
        return hash(("NumberField", self.modulus))

    def __repr__(self):
        return f"NumberField({[str(c) for c in self.modulus]}, {self.generator!r})"

    def is_rational(self):
        return self.degree == 1

    def __call__(self, x):
        return self.element(x)

    def element(self, x):
        """Build an element from a coefficient list, a rational or an element."""
        if isinstance(x, FieldElement):
            if x.field != self:
                if x.field.degree == 1:
                    return self.from_rational(x.coeffs[0])
                raise FieldMismatch("element lives in another field")
            return x
        if isinstance(x, (list, tuple)):
            coeffs = [Q(c) for c in x]
            if len(coeffs) > self.degree:
                return self._reduce(coeffs)
            coeffs += [Fraction(0)] * (self.degree - len(coeffs))
            return FieldElement(self, tuple(coeffs))
        return self.from_rational(x)

    def from_rational(self, r):
        r = Q(r)
        if self.degree == 1:
            # in Q[x]/(x - c) the class of r is r itself
            return FieldElement(self, (r,))
        return FieldElement(self, (r,) + (Fraction(0),) * (self.degree - 1))

    def zero(self):
        if self._zero is None:
            self._zero = self.from_rational(0)
        return self._zero

    def one(self):
        if self._one is None:
            self._one = self.from_rational(1)
        return self._one

    def gen(self):
        """The class of x."""
        if self.degree == 1:
            return self.from_rational(-self.modulus[0])
        return FieldElement(self, (Fraction(0), Fraction(1)) + (Fraction(0),) * (self.degree - 2))

    def _reduce(self, coeffs):
        coeffs = list(coeffs)
        d = self.degree
        mod = self.modulus
        for k in range(len(coeffs) - 1, d - 1, -1):
            c = coeffs[k]
            if c:
                for j in range(d):
                    coeffs[k - d + j] -= c * mod[j]
            coeffs[k] = Fraction(0)
        coeffs = coeffs[:d] + [Fraction(0)] * max(0, d - len(coeffs))
        return FieldElement(self, tuple(coeffs))

    def evaluate_modulus(self, a):
        """p(a) for an element a of this field."""
        acc = self.zero()
        for c in reversed(self.modulus):
            acc = acc * a + self.from_rational(c)
        return acc

    def to_json(self):
        return {"generator": self.generator, "modulus": [qstr(c) for c in self.modulus]}

    @classmethod
    def from_json(cls, obj):
        return cls(obj["modulus"], obj.get("generator", "a"))


QQ = NumberField([0, 1], "q")
QQ_I = NumberField([1, 0, 1], "i")


class FieldElement:
    """Element of a number field, stored by its coefficient vector."""

    __slots__ = ("field", "coeffs", "_hash")

    def __init__(self, field, coeffs):
        self.field = field
        self.coeffs = coeffs
        self._hash = None

    # arithmetic -----------------------------------------------------------

    def _pair(self, other):
        """Both operands in a common field (rationals lift into extensions)."""
        if isinstance(other, FieldElement):
            if other.field == self.field:
                return self, other
            if other.field.degree == 1:
                return self, self.field.from_rational(other.coeffs[0])
            if self.field.degree == 1:
                return other.field.from_rational(self.coeffs[0]), other
            raise FieldMismatch("operands live in different fields")
        if isinstance(other, (int, Fraction)):
            return self, self.field.from_rational(other)
        return None, None

    def __add__(self, other):
        a, b = self._pair(other)
        if a is None:
            return NotImplemented
        return FieldElement(a.field, tuple(x + y for x, y in zip(a.coeffs, b.coeffs)))

    __radd__ = __add__

    def __neg__(self):
        return FieldElement(self.field, tuple(-a for a in self.coeffs))

    def __sub__(self, other):
        a, b = self._pair(other)
        if a is None:
            return NotImplemented
        return FieldElement(a.field, tuple(x - y for x, y in zip(a.coeffs, b.coeffs)))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        a, b = self._pair(other)
        if a is None:
            return NotImplemented
        field = a.field
        a, b = a.coeffs, b.coeffs
        if field.degree == 1:
            return FieldElement(field, (a[0] * b[0],))
        prod = [Fraction(0)] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    if y:
                        prod[i + j] += x * y
        return field._reduce(prod)

    __rmul__ = __mul__

    def inverse(self):
        if self.is_zero():
            raise DivisionByZero("inverse of zero")
        if self.field.degree == 1:
            return FieldElement(self.field, (1 / self.coeffs[0],))
        d = self.field.degree
        # columns: self * x^j
        cols = []
        xj = self.field.one()
        gen = self.field.gen()
        for _ in range(d):
            cols.append((self * xj).coeffs)
            xj = xj * gen
        matrix = [[cols[j][i] for j in range(d)] + [Fraction(1 if i == 0 else 0)] for i in range(d)]
        sol = _solve_square(matrix, d)
        return FieldElement(self.field, tuple(sol))

    def __truediv__(self, other):
        a, b = self._pair(other)
        if a is None:
            return NotImplemented
        return a * b.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, k):
        if not isinstance(k, int):
            raise TypeError("integer exponents only")
        if k < 0:
            return self.inverse() ** (-k)
        result = self.field.one()
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    # comparison -----------------------------------------------------------

    def is_zero(self):
        return not any(self.coeffs)

    def is_rational(self):
        return not any(self.coeffs[1:])

    def rational(self):
        if not self.is_rational():
            raise ValueError("element is not rational")
        return self.coeffs[0]

    def __eq__(self, other):
        if isinstance(other, FieldElement):
            return self.field == other.field and self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self.is_rational() and self.coeffs[0] == other
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self.coeffs)
        return self._hash

    def sort_key(self):
        return self.coeffs

    def __repr__(self):
        return f"FieldElement({self})"

    def __str__(self):
        if self.field.degree == 1:
            return str(self.coeffs[0])
        terms = []
        g = self.field.generator
        for k, c in enumerate(self.coeffs):
            if not c:
                continue
            mono = "" if k == 0 else (g if k == 1 else f"{g}^{k}")
            if mono and c == 1:
                terms.append(mono)
            elif mono and c == -1:
                terms.append("-" + mono)
            else:
                terms.append(f"{c}{'*' + mono if mono else ''}")
        return "+".join(terms).replace("+-", "-") if terms else "0"

    def to_json(self):
        return [qstr(c) for c in self.coeffs]


def _solve_square(matrix, n):
    """Gauss-Jordan on an augmented n x (n+1) matrix; raises if singular."""
    m = [row[:] for row in matrix]
    for col in range(n):
        piv = next((r for r in range(col, n) if m[r][col] != 0), None)
        if piv is None:
            raise DivisionByZero("singular system")
        m[col], m[piv] = m[piv], m[col]
        p = m[col][col]
        m[col] = [v / p for v in m[col]]
        for r in range(n):
            if r != col and m[r][col] != 0:
                f = m[r][col]
                m[r] = [a - f * b for a, b in zip(m[r], m[col])]
    return [m[r][n] for r in range(n)]


def field_arith(op, a, b=None):
    """Dispatch a ring operation by name: add, mul, neg, inv, eq."""
    if b is not None and a.field != b.field:
        raise FieldMismatch("operands live in different fields")
    if op == "add":
        return a + b
    if op == "mul":
        return a * b
    if op == "neg":
        return -a
    if op == "inv":
        return a.inverse()
    if op == "eq":
        return a == b
    raise ValueError(f"unknown operation {op!r}")


# ---------------------------------------------------------------------------
# automorphisms


class FieldAutomorphism:
    """A field automorphism given by the image of the generator."""

    __slots__ = ("field", "generator_image")

    def __init__(self, field, generator_image):
        image = field.element(generator_image)
        if not field.evaluate_modulus(image).is_zero():
            raise ValueError(f"{image} is not a root of the modulus")
        self.field = field
        self.generator_image = image

    @classmethod
    def identity(cls, field):
        return cls(field, field.gen())

    def __call__(self, a):
        return apply_automorphism(self, a)

    def is_identity(self):
        return self.generator_image == self.field.gen()

    def compose(self, other):
        """self o other."""
        if other.field != self.field:
            raise FieldMismatch("automorphisms of different fields")
        return FieldAutomorphism(self.field, self(other.generator_image))

    def inverse(self):
        power = self
        prev = FieldAutomorphism.identity(self.field)
        for _ in range(self.field.degree + 1):
            if power.is_identity():
                return prev
            prev = power
            power = self.compose(power)
        raise ValueError("automorphism order exceeds the field degree")

    def __eq__(self, other):
        return (isinstance(other, FieldAutomorphism) and self.field == other.field
                and self.generator_image == other.generator_image)

    def __hash__(self):
        return hash(("aut", self.generator_image))

    def __repr__(self):
        return f"FieldAutomorphism({self.field.generator} -> {self.generator_image})"

    def to_json(self):
        return self.generator_image.to_json()


def apply_automorphism(sigma, a):
    if not isinstance(a, FieldElement):
        a = sigma.field.element(a)
    if a.field != sigma.field:
        if a.field.degree == 1:
            return sigma.field.from_rational(a.coeffs[0])
        raise FieldMismatch("automorphism and element live in different fields")
    if a.field.degree == 1:
        return a
    acc = sigma.field.zero()
    for c in reversed(a.coeffs):
        acc = acc * sigma.generator_image + c
    return acc


def conjugation(field=QQ_I):
    """x -> -x; complex conjugation on Q(i), the nontrivial map on Q(sqrt d)."""
    return FieldAutomorphism(field, -field.gen())


# ---------------------------------------------------------------------------
# finite groups


class FiniteGroup:
    """A finite group given by labels and a multiplication table.

    ``table[a][b]`` is the label of ``a*b``.
    """

    __slots__ = ("elements", "table", "identity", "_index")

    def __init__(self, elements, table, identity=None):
        self.elements = tuple(elements)
        self._index = {e: k for k, e in enumerate(self.elements)}
        if isinstance(table, dict):
            self.table = {a: dict(table[a]) for a in self.elements}
        else:
            self.table = {a: {b: table[i][j] for j, b in enumerate(self.elements)}
                          for i, a in enumerate(self.elements)}
        if identity is None:
            identity = next((e for e in self.elements
                             if all(self.table[e].get(x) == x and self.table[x].get(e) == x
                                    for x in self.elements)), None)
        self.identity = identity

    @property
    def order(self):
        return len(self.elements)

    def mul(self, a, b):
        return self.table[a][b]

    def inv(self, a):
        for b in self.elements:
            if self.table[a][b] == self.identity:
                return b
        raise ValueError(f"{a} has no inverse")

    def power(self, a, k):
        out = self.identity
        for _ in range(k):
            out = self.mul(out, a)
        return out

    def element_order(self, a):
        x, k = a, 1
        while x != self.identity:
            x = self.mul(x, a)
            k += 1
            if k > self.order:
                raise ValueError("not a group element of finite order")
        return k

    def generators(self):
        """A small generating set, chosen greedily in label order."""
        gens = []
        span = {self.identity}
        for e in self.elements:
            if e in span:
                continue
            gens.append(e)
            span = self._closure(gens)
            if len(span) == self.order:
                break
        return gens

    def _closure(self, gens):
        span = {self.identity}
        frontier = [self.identity]
        while frontier:
            nxt = []
            for x in frontier:
                for g in gens:
                    y = self.mul(x, g)
                    if y not in span:
                        span.add(y)
                        nxt.append(y)
            frontier = nxt
        return span

    def to_json(self):
        return {"elements": list(self.elements),
                "table": [[self.table[a][b] for b in self.elements] for a in self.elements]}

    @classmethod
    def from_json(cls, obj):
        return cls(obj["elements"], obj["table"], obj.get("identity"))

    def __repr__(self):
        return f"FiniteGroup(order={self.order})"


def group_from_generators(gens, mul, key=None, identity=None, prefix="g", max_order=10_000):
    """Close a set of generators under multiplication.

    Returns ``(group, elements)`` where ``elements[label]`` is the concrete
    object.  Labels are ``prefix + index`` in discovery order (identity first).
    """
    key = key or (lambda x: x)
    if identity is None:
        raise ValueError("identity required")
    found = {key(identity): identity}
    order = [key(identity)]
    frontier = [identity]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = mul(x, g)
                k = key(y)
                if k not in found:
                    found[k] = y
                    order.append(k)
                    nxt.append(y)
                    if len(order) > max_order:
                        raise SizeBudgetExceeded("group closure exceeded the order budget")
        frontier = nxt
    labels = {k: f"{prefix}{i}" for i, k in enumerate(order)}
    table = {}
    for ka in order:
        row = {}
        for kb in order:
            row[labels[kb]] = labels[key(mul(found[ka], found[kb]))]
        table[labels[ka]] = row
    elems = [labels[k] for k in order]
    group = FiniteGroup(elems, table, identity=labels[key(identity)])
    return group, {labels[k]: found[k] for k in order}


def cyclic_group(n, prefix="c"):
    elems = [f"{prefix}{k}" for k in range(n)]
    table = [[elems[(i + j) % n] for j in range(n)] for i in range(n)]
    return FiniteGroup(elems, table, identity=elems[0])


def symmetric_group(n):
    """S_n as permutations of range(n), generated by a transposition and a cycle."""
    ident = tuple(range(n))
    gens = [(1, 0) + tuple(range(2, n)), tuple(range(1, n)) + (0,)]

    def mul(p, q):
        # (p*q)(k) = p(q(k))
        return tuple(p[q[k]] for k in range(n))

    return group_from_generators(gens, mul, identity=ident, prefix="s")


def verify_group_presentation(g, max_order=48):
    """Check a table is a group law; each violated axiom gets a witness."""
    if g.order > max_order:
        raise SizeBudgetExceeded(f"group order {g.order} exceeds {max_order}")
    failures = []
    elems = g.elements
    es = set(elems)
    for a in elems:
        for b in elems:
            if g.table.get(a, {}).get(b) not in es:
                failures.append({"axiom": "closure", "witness": [a, b]})
    if failures:
        return Verdict.no(failures[0], failures=failures)
    e = g.identity
    if e is None or e not in es:
        failures.append({"axiom": "identity", "witness": None})
    else:
        for a in elems:
            if g.mul(e, a) != a or g.mul(a, e) != a:
                failures.append({"axiom": "identity", "witness": [a]})
        for a in elems:
            if not any(g.mul(a, b) == e and g.mul(b, a) == e for b in elems):
                failures.append({"axiom": "inverse", "witness": [a]})
    for a, b, c in product(elems, repeat=3):
        if g.mul(g.mul(a, b), c) != g.mul(a, g.mul(b, c)):
            failures.append({"axiom": "associativity", "witness": [a, b, c]})
            break
    if failures:
        return Verdict.no(failures[0], failures=failures)
    return Verdict.yes(order=g.order)


def integer_content(values):
    g = 0
    for v in values:
        g = gcd(g, int(v))
    return g
