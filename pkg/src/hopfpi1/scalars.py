"""Exact fields: rationals, cyclotomic extensions of Q, prime fields and
their simple extensions.

Every field is a finite-dimensional vector space over its prime field and
elements are stored as canonical coefficient vectors in the power basis of
a fixed generator.  Fields are cached, so two calls with the same spec
return the same object and scalars may be compared across calls.

>>> K = field_make(FieldSpec.cyclotomic(4))
>>> z = K.gen()
>>> z * z == K(-1)
True
>>> str(K.parse("1/2*z + 3") * 2)
'z + 6'
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import product

__all__ = [
    "FieldSpec",
    "FieldError",
    "Field",
    "CyclotomicField",
    "PrimeField",
    "ExtensionField",
    "Scalar",
    "field_make",
    "parse_field",
    "cyclotomic_polynomial",
    "euler_phi",
    "primitive_root_of_unity",
    "is_prime",
]


class FieldError(ValueError):
    """Raised for invalid field specs, field mismatch or division by zero."""


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p < 4:
        return True
    if p % 2 == 0:
        return False
    f = 3
    while f * f <= p:
        if p % f == 0:
            return False
        f += 2
    return True


def euler_phi(n: int) -> int:
    result, m, p = n, n, 2
    while p * p <= m:
        if m % p == 0:
            while m % p == 0:
                m //= p
            result -= result // p
        p += 1
    if m > 1:
        result -= result // m
    return result


def _poly_divmod_int(num: list[int], den: list[int]) -> tuple[list[int], list[int]]:
    """Divide integer polynomials (lowest degree first) by a monic divisor."""
    num = list(num)
    dd = len(den) - 1
    assert den[-1] == 1
    quot = [0] * max(len(num) - dd, 1)
    for k in range(len(num) - 1, dd - 1, -1):
        c = num[k]
        if c:
            quot[k - dd] = c
            for i, d in enumerate(den):
                num[k - dd + i] -= c * d
    rem = num[:dd] if dd else []
    return quot, rem


@lru_cache(maxsize=None)
def cyclotomic_polynomial(n: int) -> tuple[int, ...]:
    """Coefficients (lowest degree first) of the n-th cyclotomic polynomial.

    Obtained by dividing x^n - 1 by every Phi_d with d a proper divisor of n.
    """
    if n < 1:
        raise FieldError("cyclotomic index must be positive")
    poly = [-1] + [0] * (n - 1) + [1]
    for d in range(1, n):
        if n % d == 0:
            poly, rem = _poly_divmod_int(poly, list(cyclotomic_polynomial(d)))
            assert not any(rem)
    return tuple(poly)


@dataclass(frozen=True)
class FieldSpec:
    """Description of a field: ``rationals``, ``cyclotomic``, ``prime`` or
    ``prime-extension`` (with a monic minimal polynomial, lowest degree first)."""

    kind: str
    N: int = 1
    p: int = 0
    minpoly: tuple[int, ...] = ()

    @classmethod
    def rationals(cls) -> FieldSpec:
        return cls("rationals")

    @classmethod
    def cyclotomic(cls, N: int) -> FieldSpec:
        return cls("cyclotomic", N=N)

    @classmethod
    def prime(cls, p: int) -> FieldSpec:
        return cls("prime", p=p)

    @classmethod
    def prime_extension(cls, p: int, minpoly) -> FieldSpec:
        return cls("prime-extension", p=p, minpoly=tuple(minpoly))


class Field:
    """Common interface.  Subclasses implement arithmetic on raw ``data``."""

    characteristic: int
    dimension: int
    name: str

    # -- construction of elements -------------------------------------------------
    def __call__(self, value) -> Scalar:
        return self.coerce(value)

    def coerce(self, value) -> Scalar:
        if isinstance(value, Scalar):
            if value.field is not self:
                raise FieldError(f"field mismatch: {value.field.name} vs {self.name}")
            return value
        if isinstance(value, bool):
            value = int(value)
        if isinstance(value, (int, Fraction)):
            return Scalar(self, self._from_rational(Fraction(value)))
        if isinstance(value, str):
            return self.parse(value)
        raise TypeError(f"cannot coerce {value!r} into {self.name}")

    @property
    def zero(self) -> Scalar:
        return self._zero

    @property
    def one(self) -> Scalar:
        return self._one

    def gen(self) -> Scalar:
        raise NotImplementedError

    # -- arithmetic on data -------------------------------------------------------
    def _from_rational(self, q: Fraction):
        raise NotImplementedError

    def _add(self, a, b):
        raise NotImplementedError

    def _neg(self, a):
        raise NotImplementedError

    def _mul(self, a, b):
        raise NotImplementedError

    def _inv(self, a):
        raise NotImplementedError

    def _is_zero(self, a) -> bool:
        raise NotImplementedError

    def format(self, a) -> str:
        raise NotImplementedError

    def parse(self, text: str) -> Scalar:
        raise NotImplementedError

    # -- roots of unity -----------------------------------------------------------
    def torsion_units(self) -> list[Scalar]:
        """All roots of unity of the field, in the canonical order used for
        deterministic choices."""
        raise NotImplementedError

    def roots_of_unity(self, m: int) -> list[Scalar]:
        """All x with x**m == 1, in canonical order."""
        return [u for u in self.torsion_units() if (u ** m) == self.one]

    def __repr__(self) -> str:
        return f"<Field {self.name}>"

    def __reduce__(self):
        return (parse_field, (self.name,))


class Scalar:
    """An element of an exact field.  Immutable and hashable."""

    __slots__ = ("field", "data")

    def __init__(self, field: Field, data):
        self.field = field
        self.data = data

    def _other(self, other) -> Scalar:
        if isinstance(other, Scalar):
            if other.field is not self.field:
                raise FieldError(
                    f"field mismatch: {self.field.name} vs {other.field.name}")
            return other
        return self.field.coerce(other)

    def __add__(self, other):
        o = self._other(other)
        return Scalar(self.field, self.field._add(self.data, o.data))

    __radd__ = __add__

    def __neg__(self):
        return Scalar(self.field, self.field._neg(self.data))

    def __sub__(self, other):
        o = self._other(other)
        return Scalar(self.field, self.field._add(self.data, self.field._neg(o.data)))

    def __rsub__(self, other):
        return self._other(other) - self

    def __mul__(self, other):
        o = self._other(other)
        return Scalar(self.field, self.field._mul(self.data, o.data))

    __rmul__ = __mul__

    def inv(self) -> Scalar:
        if self.field._is_zero(self.data):
            raise ZeroDivisionError("inversion of zero")
        return Scalar(self.field, self.field._inv(self.data))

    def __truediv__(self, other):
        return self * self._other(other).inv()

    def __rtruediv__(self, other):
        return self._other(other) * self.inv()

    def __pow__(self, e: int):
        if e < 0:
            return self.inv() ** (-e)
        result, base = self.field.one, self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def is_zero(self) -> bool:
        return self.field._is_zero(self.data)

    def __bool__(self):
        return not self.field._is_zero(self.data)

    def __eq__(self, other):
        if isinstance(other, Scalar):
            return other.field is self.field and other.data == self.data
        if isinstance(other, (int, Fraction)):
            return self.data == self.field._from_rational(Fraction(other))
        return NotImplemented

    def __hash__(self):
        return hash((self.field.name, self.data))

    def sort_key(self):
        return self.field._sort_key(self.data)

    def __str__(self):
        return self.field.format(self.data)

    def __repr__(self):
        return f"Scalar({self.field.name}, {self})"

    def multiplicative_order(self, bound: int = 10_000) -> int | None:
        """Exact multiplicative order, or None if not a root of unity of
        order at most ``bound``."""
        if self.is_zero():
            return None
        x = self
        for k in range(1, bound + 1):
            if x == self.field.one:
                return k
            x = x * self
        return None


# ---------------------------------------------------------------------------
# Q(zeta_N)
# ---------------------------------------------------------------------------

_TERM_RE = re.compile(r"\s*([+-]?)\s*([^+-]+)")


def _split_terms(text: str) -> list[tuple[int, str]]:
    text = text.strip()
    if not text:
        raise FieldError("empty scalar string")
    out = []
    pos = 0
    while pos < len(text):
        m = _TERM_RE.match(text, pos)
        if not m or m.end() == pos:
            raise FieldError(f"cannot parse scalar {text!r}")
        sign = -1 if m.group(1) == "-" else 1
        out.append((sign, m.group(2).strip()))
        pos = m.end()
    return out


def _parse_monomial(term: str, symbol: str) -> tuple[Fraction | int, int, str]:
    """Split ``'3/4*z^2'`` into (coefficient text, exponent)."""
    coeff, exp = "1", 0
    if symbol in term:
        head, _, tail = term.partition(symbol)
        head = head.strip()
        if head.endswith("*"):
            head = head[:-1].strip()
        coeff = head or "1"
        tail = tail.strip()
        if tail.startswith("^"):
            exp = int(tail[1:])
        elif tail:
            raise FieldError(f"bad monomial {term!r}")
        else:
            exp = 1
    else:
        coeff = term
    return coeff, exp


class CyclotomicField(Field):
    """Q[z]/(Phi_N(z)).  N = 1 gives the rationals."""

    def __init__(self, N: int, name: str | None = None):
        if N < 1:
            raise FieldError("cyclotomic index must be positive (N = 0 given)")
        self.N = N
        self.characteristic = 0
        self.phi = cyclotomic_polynomial(N)
        self.dimension = len(self.phi) - 1
        self.name = name or ("Q" if N == 1 else f"Q(z{N})")
        self._low = [(i, c) for i, c in enumerate(self.phi[:-1]) if c]
        d = self.dimension
        self._zero = Scalar(self, ((0,) * d, 1))
        self._one = Scalar(self, ((1,) + (0,) * (d - 1), 1))
        self._torsion: list[Scalar] | None = None

    def _norm(self, nums, den):
        g = math.gcd(den, *nums)
        if den < 0:
            g = -g
        if g != 1:
            nums = tuple(x // g for x in nums)
            den //= g
        else:
            nums = tuple(nums)
        return nums, den

    def _from_rational(self, q: Fraction):
        return ((q.numerator,) + (0,) * (self.dimension - 1), q.denominator)

    def _reduce(self, poly: list[int]) -> list[int]:
        d = self.dimension
        for k in range(len(poly) - 1, d - 1, -1):
            c = poly[k]
            if c:
                base = k - d
                for i, p in self._low:
                    poly[base + i] -= c * p
                poly[k] = 0
        return poly[:d]

    def from_coefficients(self, coeffs) -> Scalar:
        """Element sum(coeffs[i] * z^i); any length, reduced mod Phi_N."""
        fr = [Fraction(c) for c in coeffs] or [Fraction(0)]
        den = 1
        for c in fr:
            den = den * c.denominator // math.gcd(den, c.denominator)
        poly = [int(c * den) for c in fr]
        poly += [0] * max(0, self.dimension - len(poly))
        return Scalar(self, self._norm(self._reduce(poly), den))

    def coefficients(self, a: Scalar) -> tuple[Fraction, ...]:
        nums, den = a.data
        return tuple(Fraction(x, den) for x in nums)

    def gen(self) -> Scalar:
        return self.from_coefficients([0, 1])

    def _add(self, a, b):
        an, ad = a
        bn, bd = b
        if ad == bd:
            return self._norm([x + y for x, y in zip(an, bn)], ad)
        return self._norm([x * bd + y * ad for x, y in zip(an, bn)], ad * bd)

    def _neg(self, a):
        return tuple(-x for x in a[0]), a[1]

    def _mul(self, a, b):
        an, ad = a
        bn, bd = b
        d = self.dimension
        if d == 1:
            return self._norm((an[0] * bn[0],), ad * bd)
        poly = [0] * (2 * d - 1)
        for i, x in enumerate(an):
            if x:
                for j, y in enumerate(bn):
                    if y:
                        poly[i + j] += x * y
        return self._norm(self._reduce(poly), ad * bd)

    def _inv(self, a):
        nums, den = a
        d = self.dimension
        if d == 1:
            return self._norm((den,), nums[0])
        # Solve a * b = 1 using the multiplication matrix of a.
        cols = []
        for j in range(d):
            e = [0] * d
            e[j] = 1
            pn, pd = self._mul(a, (tuple(e), 1))
            cols.append([Fraction(x, pd) for x in pn])
        mat = [[cols[j][i] for j in range(d)] + [Fraction(int(i == 0))] for i in range(d)]
        for c in range(d):
            piv = next(r for r in range(c, d) if mat[r][c] != 0)
            mat[c], mat[piv] = mat[piv], mat[c]
            pv = mat[c][c]
            mat[c] = [x / pv for x in mat[c]]
            for r in range(d):
                if r != c and mat[r][c] != 0:
                    f = mat[r][c]
                    mat[r] = [x - f * y for x, y in zip(mat[r], mat[c])]
        sol = [mat[i][d] for i in range(d)]
        lcm = 1
        for s in sol:
            lcm = lcm * s.denominator // math.gcd(lcm, s.denominator)
        return self._norm([int(s * lcm) for s in sol], lcm)

    def _is_zero(self, a) -> bool:
        return not any(a[0])

    def _sort_key(self, a):
        return tuple(Fraction(x, a[1]) for x in a[0])

    def format(self, a) -> str:
        nums, den = a
        terms = []
        for k in range(len(nums) - 1, -1, -1):
            c = Fraction(nums[k], den)
            if c == 0:
                continue
            neg = c < 0
            c = abs(c)
            if k == 0:
                body = str(c)
            else:
                mono = "z" if k == 1 else f"z^{k}"
                body = mono if c == 1 else f"{c}*{mono}"
            terms.append((neg, body))
        if not terms:
            return "0"
        out = ("-" if terms[0][0] else "") + terms[0][1]
        for neg, body in terms[1:]:
            out += (" - " if neg else " + ") + body
        return out

    def parse(self, text: str) -> Scalar:
        poly: dict[int, Fraction] = {}
        for sign, term in _split_terms(text):
            coeff, exp = _parse_monomial(term, "z")
            if exp and self.N == 1:
                raise FieldError(f"symbol z not available in {self.name}")
            try:
                c = Fraction(coeff)
            except (ValueError, ZeroDivisionError) as exc:
                raise FieldError(f"bad coefficient {coeff!r}") from exc
            poly[exp] = poly.get(exp, Fraction(0)) + sign * c
        top = max(poly)
        return self.from_coefficients([poly.get(i, 0) for i in range(top + 1)])

    def torsion_units(self) -> list[Scalar]:
        if self._torsion is None:
            z = self.gen()
            seen, out = set(), []
            powers = [z ** j for j in range(self.N)]
            for u in powers + [-p for p in powers]:
                if u not in seen:
                    seen.add(u)
                    out.append(u)
            self._torsion = out
        return list(self._torsion)


# ---------------------------------------------------------------------------
# F_p and F_p[x]/(f)
# ---------------------------------------------------------------------------

class PrimeField(Field):
    def __init__(self, p: int):
        if not is_prime(p):
            raise FieldError(f"{p} is not prime")
        self.p = p
        self.characteristic = p
        self.dimension = 1
        self.name = f"F{p}"
        self._zero = Scalar(self, 0)
        self._one = Scalar(self, 1 % p)

    def _from_rational(self, q: Fraction):
        if q.denominator % self.p == 0:
            raise ZeroDivisionError(f"{q} has no image in {self.name}")
        return q.numerator * pow(q.denominator, -1, self.p) % self.p

    def gen(self) -> Scalar:
        return self._one

    def _add(self, a, b):
        return (a + b) % self.p

    def _neg(self, a):
        return (-a) % self.p

    def _mul(self, a, b):
        return a * b % self.p

    def _inv(self, a):
        return pow(a, -1, self.p)

    def _is_zero(self, a) -> bool:
        return a == 0

    def _sort_key(self, a):
        return a

    def format(self, a) -> str:
        return str(a)

    def parse(self, text: str) -> Scalar:
        try:
            return self.coerce(Fraction(text.strip()))
        except ValueError as exc:
            raise FieldError(f"cannot parse {text!r} in {self.name}") from exc

    def torsion_units(self) -> list[Scalar]:
        return [Scalar(self, a) for a in range(1, self.p)]


def _poly_mod_p_rem(num: list[int], den: list[int], p: int) -> list[int]:
    num = [x % p for x in num]
    while den and den[-1] % p == 0:
        den = den[:-1]
    inv_lead = pow(den[-1], -1, p)
    dd = len(den) - 1
    for k in range(len(num) - 1, dd - 1, -1):
        c = num[k] * inv_lead % p
        if c:
            for i, d in enumerate(den):
                num[k - dd + i] = (num[k - dd + i] - c * d) % p
    return num[:dd]


def _irreducible_mod_p(f: tuple[int, ...], p: int) -> bool:
    deg = len(f) - 1
    for d in range(1, deg // 2 + 1):
        for low in product(range(p), repeat=d):
            g = list(low) + [1]
            if not any(_poly_mod_p_rem(list(f), g, p)):
                return False
    return True


class ExtensionField(Field):
    """F_p[x]/(f) for a monic irreducible f, given lowest degree first."""

    def __init__(self, p: int, minpoly):
        if not is_prime(p):
            raise FieldError(f"{p} is not prime")
        f = tuple(int(c) % p for c in minpoly)
        if len(f) < 2 or f[-1] != 1:
            raise FieldError("minimal polynomial must be monic of degree >= 1")
        if not _irreducible_mod_p(f, p):
            raise FieldError(f"minimal polynomial {f} is reducible over F{p}")
        self.p = p
        self.minpoly = f
        self.characteristic = p
        self.dimension = len(f) - 1
        poly_txt = _format_poly(f, "x", p)
        self.name = f"F{p}[x]/({poly_txt})"
        d = self.dimension
        self._zero = Scalar(self, (0,) * d)
        self._one = Scalar(self, (1,) + (0,) * (d - 1))

    def _from_rational(self, q: Fraction):
        if q.denominator % self.p == 0:
            raise ZeroDivisionError(f"{q} has no image in {self.name}")
        v = q.numerator * pow(q.denominator, -1, self.p) % self.p
        return (v,) + (0,) * (self.dimension - 1)

    def gen(self) -> Scalar:
        if self.dimension == 1:
            return Scalar(self, ((-self.minpoly[0]) % self.p,))
        return Scalar(self, (0, 1) + (0,) * (self.dimension - 2))

    def _add(self, a, b):
        return tuple((x + y) % self.p for x, y in zip(a, b))

    def _neg(self, a):
        return tuple((-x) % self.p for x in a)

    def _mul(self, a, b):
        d = self.dimension
        poly = [0] * (2 * d - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    poly[i + j] += x * y
        rem = _poly_mod_p_rem(poly, list(self.minpoly), self.p)
        rem += [0] * (d - len(rem))
        return tuple(rem)

    def _inv(self, a):
        q = self.p ** self.dimension
        return Scalar(self, a).__pow__(q - 2).data

    def _is_zero(self, a) -> bool:
        return not any(a)

    def _sort_key(self, a):
        return tuple(reversed(a))

    def format(self, a) -> str:
        return _format_poly(a, "x", self.p)

    def parse(self, text: str) -> Scalar:
        poly: dict[int, int] = {}
        for sign, term in _split_terms(text):
            coeff, exp = _parse_monomial(term, "x")
            poly[exp] = poly.get(exp, 0) + sign * int(coeff)
        top = max(poly)
        raw = [poly.get(i, 0) for i in range(top + 1)]
        rem = _poly_mod_p_rem(raw + [0] * self.dimension, list(self.minpoly), self.p)
        return Scalar(self, tuple(rem + [0] * (self.dimension - len(rem))))

    def torsion_units(self) -> list[Scalar]:
        elems = [Scalar(self, t) for t in product(range(self.p), repeat=self.dimension)]
        elems = [e for e in elems if not e.is_zero()]
        return sorted(elems, key=Scalar.sort_key)


def _format_poly(coeffs, symbol: str, p: int) -> str:
    terms = []
    for k in range(len(coeffs) - 1, -1, -1):
        c = coeffs[k] % p
        if not c:
            continue
        if k == 0:
            terms.append(str(c))
        else:
            mono = symbol if k == 1 else f"{symbol}^{k}"
            terms.append(mono if c == 1 else f"{c}*{mono}")
    return " + ".join(terms) if terms else "0"


# ---------------------------------------------------------------------------
# construction and parsing
# ---------------------------------------------------------------------------

_CACHE: dict[tuple, Field] = {}


def field_make(spec: FieldSpec) -> Field:
    """Build (or fetch from cache) the field described by ``spec``."""
    if spec.kind == "rationals":
        key = ("cyclotomic", 1)
    elif spec.kind == "cyclotomic":
        if spec.N < 1:
            raise FieldError("cyclotomic index must be positive (N = 0 given)")
        key = ("cyclotomic", spec.N)
    elif spec.kind == "prime":
        if not is_prime(spec.p):
            raise FieldError(f"{spec.p} is not prime")
        key = ("prime", spec.p)
    elif spec.kind == "prime-extension":
        key = ("ext", spec.p, tuple(int(c) % spec.p if spec.p else c for c in spec.minpoly))
    else:
        raise FieldError(f"unknown field kind {spec.kind!r}")
    if key not in _CACHE:
        if key[0] == "cyclotomic":
            _CACHE[key] = CyclotomicField(key[1])
        elif key[0] == "prime":
            _CACHE[key] = PrimeField(key[1])
        else:
            _CACHE[key] = ExtensionField(spec.p, spec.minpoly)
    return _CACHE[key]


class _SpecParser:
    """Recursive descent over the grammar

        field  := 'Q' [ '(' 'z' INT ')' ] | 'F' INT [ '[x]/(' poly ')' ]
    """

    def __init__(self, text: str):
        self.s = text.replace(" ", "")
        self.i = 0

    def peek(self) -> str:
        return self.s[self.i] if self.i < len(self.s) else ""

    def expect(self, tok: str):
        if not self.s.startswith(tok, self.i):
            raise FieldError(f"bad field spec {self.s!r}: expected {tok!r} at {self.i}")
        self.i += len(tok)

    def integer(self) -> int:
        j = self.i
        while self.peek().isdigit():
            self.i += 1
        if j == self.i:
            raise FieldError(f"bad field spec {self.s!r}: expected integer at {j}")
        return int(self.s[j:self.i])

    def parse(self) -> FieldSpec:
        c = self.peek()
        if c == "Q":
            self.i += 1
            if self.peek() == "(":
                self.expect("(z")
                n = self.integer()
                self.expect(")")
                spec = FieldSpec.cyclotomic(n)
            else:
                spec = FieldSpec.rationals()
        elif c == "F":
            self.i += 1
            p = self.integer()
            if self.peek() == "[":
                self.expect("[x]/(")
                j = self.s.index(")", self.i)
                poly_txt = self.s[self.i:j]
                self.i = j + 1
                coeffs: dict[int, int] = {}
                for sign, term in _split_terms(poly_txt):
                    coeff, exp = _parse_monomial(term, "x")
                    coeffs[exp] = coeffs.get(exp, 0) + sign * int(coeff)
                top = max(coeffs)
                spec = FieldSpec.prime_extension(p, [coeffs.get(k, 0) for k in range(top + 1)])
            else:
                spec = FieldSpec.prime(p)
        else:
            raise FieldError(f"bad field spec {self.s!r}")
        if self.i != len(self.s):
            raise FieldError(f"trailing characters in field spec {self.s!r}")
        return spec


def parse_field(text: str) -> Field:
    """``'Q'``, ``'Q(z12)'``, ``'F7'`` or ``'F2[x]/(x^2 + x + 1)'``."""
    return field_make(_SpecParser(text).parse())


def primitive_root_of_unity(field: Field, m: int) -> Scalar | None:
    """The first element of exact order m among the field's torsion units,
    or None when the field has none."""
    if m < 1:
        raise ValueError("order must be positive")
    for u in field.torsion_units():
        if u.multiplicative_order(bound=m) == m:
            return u
    return None
