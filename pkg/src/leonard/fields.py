"""Exact field arithmetic over Q, GF(p) and GF(p^k).

Elements are immutable wrappers around a canonical payload:

* rationals: ``fractions.Fraction``, always reduced, positive denominator
* prime fields: ``int`` residue in ``[0, p)``
* extensions: tuple of ``k`` residues, low degree first, reduced mod p

An extension modulus is monic of degree k (stored low degree first, so the
last entry is 1) and is rejected unless irreducible over GF(p).  The check is
trial division by every monic polynomial of degree <= k/2, which for the
degrees supported here is the usual root and small-factor search.

Text formats round-trip exactly: ``"a/b"`` or ``"a"`` for rationals, a bare
residue for prime fields, and ``"c0+c1*w"`` (``"c0+c1*w+c2*w^2"`` and so on,
always all k terms) for extensions, where w is the residue of the modulus
root.  No decimal notation anywhere.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterator, Optional, Sequence

from .errors import (
    NeedsFieldExtension,
    NonPrimeModulus,
    ReducibleModulus,
    ZeroToNegativePower,
)

MAX_EXTENSION_DEGREE = 8


# ---------------------------------------------------------------------------
# field descriptions


@dataclass(frozen=True)
class FieldSpec:
    """Serializable description of a field."""

    kind: str  # "rational" | "prime" | "extension"
    p: Optional[int] = None
    k: Optional[int] = None
    modulus: Optional[tuple[int, ...]] = None

    def to_json(self) -> dict:
        if self.kind == "rational":
            return {"kind": "rational"}
        if self.kind == "prime":
            return {"kind": "prime", "p": self.p}
        return {
            "kind": "extension",
            "p": self.p,
            "k": self.k,
            "modulus": list(self.modulus),
        }

    @staticmethod
    def from_json(obj: dict) -> "FieldSpec":
        if not isinstance(obj, dict) or "kind" not in obj:
            raise ValueError("field spec must be an object with a 'kind'")
        kind = obj["kind"]
        if kind == "rational":
            return FieldSpec("rational")
        if kind == "prime":
            return FieldSpec("prime", p=int(obj["p"]))
        if kind == "extension":
            return FieldSpec(
                "extension",
                p=int(obj["p"]),
                k=int(obj["k"]),
                modulus=tuple(int(c) for c in obj["modulus"]),
            )
        raise ValueError(f"unknown field kind {kind!r}")


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    i = 2
    while i * i <= n:
        if n % i == 0:
            return False
        i += 1
    return True


# ---------------------------------------------------------------------------
# dense polynomials over GF(p), used only for modulus arithmetic
# (coefficient lists of ints, low degree first, trailing zeros trimmed)


def _ptrim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _padd(a: Sequence[int], b: Sequence[int], p: int) -> list[int]:
    n = max(len(a), len(b))
    out = [0] * n
    for i in range(n):
        out[i] = ((a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0)) % p
    return _ptrim(out)


def _psub(a: Sequence[int], b: Sequence[int], p: int) -> list[int]:
    n = max(len(a), len(b))
    out = [0] * n
    for i in range(n):
        out[i] = ((a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0)) % p
    return _ptrim(out)


def _pmul(a: Sequence[int], b: Sequence[int], p: int) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] = (out[i + j] + ai * bj) % p
    return _ptrim(out)


def _pdivmod(a: Sequence[int], b: Sequence[int], p: int) -> tuple[list[int], list[int]]:
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    r = list(a)
    _ptrim(r)
    q = [0] * max(0, len(r) - len(b) + 1)
    binv = pow(b[-1], -1, p)
    while len(r) >= len(b):
        c = (r[-1] * binv) % p
        shift = len(r) - len(b)
        q[shift] = c
        for i, bi in enumerate(b):
            r[shift + i] = (r[shift + i] - c * bi) % p
        _ptrim(r)
        if not r:
            break
    return _ptrim(q), r


def _pmod(a: Sequence[int], b: Sequence[int], p: int) -> list[int]:
    return _pdivmod(a, b, p)[1]


def _pinv_mod(a: Sequence[int], m: Sequence[int], p: int) -> list[int]:
    """Inverse of a modulo the irreducible m, by the extended Euclid loop."""
    r0, r1 = list(m), _ptrim(list(a))
    s0, s1 = [], [1]
    while r1:
        q, r = _pdivmod(r0, r1, p)
        r0, r1 = r1, r
        s0, s1 = s1, _psub(s0, _pmul(q, s1, p), p)
    # r0 is a nonzero constant gcd because m is irreducible and a nonzero
    c = pow(r0[0], -1, p)
    return _ptrim([(c * x) % p for x in s0])


def _irreducible(modulus: Sequence[int], p: int) -> bool:
    k = len(modulus) - 1
    for deg in range(1, k // 2 + 1):
        # every monic divisor candidate of this degree
        for idx in range(p**deg):
            cand = [0] * (deg + 1)
            n = idx
            for i in range(deg):
                cand[i] = n % p
                n //= p
            cand[deg] = 1
            if not _pmod(modulus, cand, p):
                return False
    return True


# ---------------------------------------------------------------------------
# elements


class FieldElement:
    """Immutable element of a Field; supports +, -, *, /, ** and ==."""

    __slots__ = ("field", "value")

    def __init__(self, field: "Field", value):
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "value", value)

    def __setattr__(self, *_):
        raise AttributeError("FieldElement is immutable")

    def _coerce(self, other):
        if isinstance(other, FieldElement):
            if other.field.spec != self.field.spec:
                raise ValueError(
                    f"mixed fields: {self.field} and {other.field}"
                )
            return other
        if isinstance(other, int):
            return self.field.from_int(other)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return FieldElement(self.field, self.field._add(self.value, o.value))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return FieldElement(self.field, self.field._sub(self.value, o.value))

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return FieldElement(self.field, self.field._sub(o.value, self.value))

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return FieldElement(self.field, self.field._mul(self.value, o.value))

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __neg__(self):
        return FieldElement(self.field, self.field._neg(self.value))

    def __pow__(self, n: int):
        return self.field.pow(self, n)

    def inverse(self) -> "FieldElement":
        if not self:
            raise ZeroDivisionError(f"division by zero in {self.field}")
        return FieldElement(self.field, self.field._inv(self.value))

    def __bool__(self):
        return self.value != self.field._zero_value()

    def __eq__(self, other):
        o = self._coerce(other) if isinstance(other, (FieldElement, int)) else None
        if o is None:
            return NotImplemented
        return self.value == o.value

    def __hash__(self):
        return hash((self.field.spec, self.value))

    def __str__(self):
        return self.field.format(self)

    def __repr__(self):
        return f"<{self} in {self.field}>"


class Field:
    """Common behaviour; concrete fields fill in the payload operations."""

    spec: FieldSpec

    # payload-level hooks -------------------------------------------------
    def _zero_value(self):
        raise NotImplementedError

    def _one_value(self):
        raise NotImplementedError

    def _add(self, a, b):
        raise NotImplementedError

    def _sub(self, a, b):
        raise NotImplementedError

    def _mul(self, a, b):
        raise NotImplementedError

    def _neg(self, a):
        raise NotImplementedError

    def _inv(self, a):
        raise NotImplementedError

    # shared API -----------------------------------------------------------
    def zero(self) -> FieldElement:
        return FieldElement(self, self._zero_value())

    def one(self) -> FieldElement:
        return FieldElement(self, self._one_value())

    def from_int(self, n: int) -> FieldElement:
        raise NotImplementedError

    def pow(self, a: FieldElement, n: int) -> FieldElement:
        """a**n by repeated squaring; n may be negative for nonzero a."""
        if not isinstance(n, int):
            raise TypeError("exponent must be an int")
        if n < 0:
            if not a:
                raise ZeroToNegativePower(f"0**{n} in {self}")
            a = a.inverse()
            n = -n
        result = self.one()
        base = a
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def characteristic(self) -> int:
        raise NotImplementedError

    def order(self) -> Optional[int]:
        """Number of elements, or None for the rationals."""
        return None

    def is_finite(self) -> bool:
        return self.order() is not None

    def elements(self) -> Iterator[FieldElement]:
        raise TypeError(f"{self} is not finite")

    def element(self, index: int) -> FieldElement:
        raise TypeError(f"{self} is not finite")

    def index_of(self, a: FieldElement) -> int:
        raise TypeError(f"{self} is not finite")

    def parse(self, text: str) -> FieldElement:
        raise NotImplementedError

    def format(self, a: FieldElement) -> str:
        raise NotImplementedError

    def random_element(self, rng, nonzero: bool = False) -> FieldElement:
        raise NotImplementedError

    def __eq__(self, other):
        return isinstance(other, Field) and self.spec == other.spec

    def __hash__(self):
        return hash(self.spec)


_RATIONAL_RE = re.compile(r"^[+-]?\d+(?:/\d+)?$")
_INT_RE = re.compile(r"^[+-]?\d+$")


class RationalField(Field):
    def __init__(self):
        self.spec = FieldSpec("rational")

    def _zero_value(self):
        return Fraction(0)

    def _one_value(self):
        return Fraction(1)

    def _add(self, a, b):
        return a + b

    def _sub(self, a, b):
        return a - b

    def _mul(self, a, b):
        return a * b

    def _neg(self, a):
        return -a

    def _inv(self, a):
        return 1 / a

    def from_int(self, n: int) -> FieldElement:
        return FieldElement(self, Fraction(n))

    def from_fraction(self, q: Fraction) -> FieldElement:
        return FieldElement(self, Fraction(q))

    def characteristic(self) -> int:
        return 0

    def parse(self, text: str) -> FieldElement:
        text = text.strip()
        if not _RATIONAL_RE.match(text):
            raise ValueError(f"not a rational literal: {text!r}")
        return FieldElement(self, Fraction(text))

    def format(self, a: FieldElement) -> str:
        return str(a.value)

    def random_element(self, rng, nonzero: bool = False) -> FieldElement:
        while True:
            v = Fraction(rng.randint(-8, 8), rng.randint(1, 6))
            if v or not nonzero:
                return FieldElement(self, v)

    def __repr__(self):
        return "Q"


class PrimeField(Field):
    def __init__(self, p: int):
        if not _is_prime(p):
            raise NonPrimeModulus(f"{p} is not prime")
        self.p = p
        self.spec = FieldSpec("prime", p=p)

    def _zero_value(self):
        return 0

    def _one_value(self):
        return 1

    def _add(self, a, b):
        return (a + b) % self.p

    def _sub(self, a, b):
        return (a - b) % self.p

    def _mul(self, a, b):
        return (a * b) % self.p

    def _neg(self, a):
        return (-a) % self.p

    def _inv(self, a):
        return pow(a, -1, self.p)

    def from_int(self, n: int) -> FieldElement:
        return FieldElement(self, n % self.p)

    def characteristic(self) -> int:
        return self.p

    def order(self) -> int:
        return self.p

    def elements(self) -> Iterator[FieldElement]:
        for v in range(self.p):
            yield FieldElement(self, v)

    def element(self, index: int) -> FieldElement:
        if not 0 <= index < self.p:
            raise IndexError(index)
        return FieldElement(self, index)

    def index_of(self, a: FieldElement) -> int:
        return a.value

    def parse(self, text: str) -> FieldElement:
        text = text.strip()
        if not _INT_RE.match(text):
            raise ValueError(f"not a residue literal: {text!r}")
        return FieldElement(self, int(text) % self.p)

    def format(self, a: FieldElement) -> str:
        return str(a.value)

    def random_element(self, rng, nonzero: bool = False) -> FieldElement:
        lo = 1 if nonzero else 0
        return FieldElement(self, rng.randrange(lo, self.p))

    def __repr__(self):
        return f"GF({self.p})"


_EXT_TERM_RE = re.compile(r"^(\d+)(?:\*w(?:\^(\d+))?)?$")


class ExtensionField(Field):
    def __init__(self, p: int, k: int, modulus: Sequence[int]):
        if not _is_prime(p):
            raise NonPrimeModulus(f"{p} is not prime")
        if k < 2:
            raise ValueError("extension degree must be at least 2")
        if k > MAX_EXTENSION_DEGREE:
            raise ValueError(
                f"extension degree {k} exceeds the supported maximum "
                f"{MAX_EXTENSION_DEGREE}"
            )
        if len(modulus) != k + 1:
            raise ValueError("modulus must have k+1 coefficients, low degree first")
        mod = tuple(c % p for c in modulus)
        if mod[-1] != 1:
            raise ValueError("modulus must be monic")
        if not _irreducible(mod, p):
            raise ReducibleModulus(
                f"modulus {list(mod)} is reducible over GF({p})"
            )
        self.p = p
        self.k = k
        self.modulus = mod
        self.spec = FieldSpec("extension", p=p, k=k, modulus=mod)

    def _zero_value(self):
        return (0,) * self.k

    def _one_value(self):
        return (1,) + (0,) * (self.k - 1)

    def _add(self, a, b):
        p = self.p
        return tuple((x + y) % p for x, y in zip(a, b))

    def _sub(self, a, b):
        p = self.p
        return tuple((x - y) % p for x, y in zip(a, b))

    def _neg(self, a):
        p = self.p
        return tuple((-x) % p for x in a)

    def _mul(self, a, b):
        p, k = self.p, self.k
        conv = [0] * (2 * k - 1)
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    conv[i + j] = (conv[i + j] + ai * bj) % p
        # fold degrees >= k down using the monic modulus
        m = self.modulus
        for deg in range(2 * k - 2, k - 1, -1):
            c = conv[deg]
            if c:
                conv[deg] = 0
                shift = deg - k
                for i in range(k):
                    conv[shift + i] = (conv[shift + i] - c * m[i]) % p
        return tuple(conv[:k])

    def _inv(self, a):
        inv = _pinv_mod(list(a), list(self.modulus), self.p)
        return tuple(inv + [0] * (self.k - len(inv)))

    def from_int(self, n: int) -> FieldElement:
        return FieldElement(self, (n % self.p,) + (0,) * (self.k - 1))

    def generator(self) -> FieldElement:
        """The residue w of the modulus root."""
        return FieldElement(self, (0, 1) + (0,) * (self.k - 2))

    def characteristic(self) -> int:
        return self.p

    def order(self) -> int:
        return self.p**self.k

    def elements(self) -> Iterator[FieldElement]:
        for n in range(self.order()):
            yield self.element(n)

    def element(self, index: int) -> FieldElement:
        if not 0 <= index < self.order():
            raise IndexError(index)
        coeffs = []
        n = index
        for _ in range(self.k):
            coeffs.append(n % self.p)
            n //= self.p
        return FieldElement(self, tuple(coeffs))

    def index_of(self, a: FieldElement) -> int:
        n = 0
        for c in reversed(a.value):
            n = n * self.p + c
        return n

    def parse(self, text: str) -> FieldElement:
        terms = text.strip().replace(" ", "").split("+")
        if len(terms) != self.k:
            raise ValueError(
                f"expected {self.k} terms 'c0+c1*w+...', got {text!r}"
            )
        coeffs = []
        for i, term in enumerate(terms):
            m = _EXT_TERM_RE.match(term)
            if not m:
                raise ValueError(f"bad term {term!r} in {text!r}")
            power = 0 if m.group(2) is None and "*w" not in term else (
                1 if m.group(2) is None else int(m.group(2))
            )
            if power != i:
                raise ValueError(f"term {term!r} out of place in {text!r}")
            coeffs.append(int(m.group(1)) % self.p)
        return FieldElement(self, tuple(coeffs))

    def format(self, a: FieldElement) -> str:
        parts = []
        for i, c in enumerate(a.value):
            if i == 0:
                parts.append(str(c))
            elif i == 1:
                parts.append(f"{c}*w")
            else:
                parts.append(f"{c}*w^{i}")
        return "+".join(parts)

    def random_element(self, rng, nonzero: bool = False) -> FieldElement:
        lo = 1 if nonzero else 0
        return self.element(rng.randrange(lo, self.order()))

    def __repr__(self):
        return f"GF({self.p}^{self.k})"


# ---------------------------------------------------------------------------
# construction and cached lookup

_FIELD_CACHE: dict[FieldSpec, Field] = {}


def make_field(spec: FieldSpec) -> Field:
    """Build (or fetch) the field a spec describes, checking primality and
    irreducibility as needed."""
    cached = _FIELD_CACHE.get(spec)
    if cached is not None:
        return cached
    if spec.kind == "rational":
        field: Field = RationalField()
    elif spec.kind == "prime":
        field = PrimeField(spec.p)
    elif spec.kind == "extension":
        field = ExtensionField(spec.p, spec.k, spec.modulus)
    else:
        raise ValueError(f"unknown field kind {spec.kind!r}")
    # key by the canonicalized spec the field itself carries
    _FIELD_CACHE[field.spec] = field
    return field


def rational_field() -> RationalField:
    return make_field(FieldSpec("rational"))  # type: ignore[return-value]


def prime_field(p: int) -> PrimeField:
    return make_field(FieldSpec("prime", p=p))  # type: ignore[return-value]


def extension_field(p: int, k: int, modulus: Sequence[int]) -> ExtensionField:
    return make_field(  # type: ignore[return-value]
        FieldSpec("extension", p=p, k=k, modulus=tuple(modulus))
    )


# ---------------------------------------------------------------------------
# quadratics, splitting fields, embeddings
# (classification support: everything here is exact and deterministic)


def quadratic_roots(
    field: Field, b: FieldElement, c: FieldElement
) -> Optional[tuple[FieldElement, FieldElement]]:
    """Roots of x^2 + b*x + c inside the field, or None.

    A double root is returned twice.  Finite fields are scanned in element
    order; over Q the discriminant is tested for being a perfect square and
    the root with '+' sign comes first.
    """
    if field.is_finite():
        found = [e for e in field.elements() if not (e * e + b * e + c)]
        if not found:
            return None
        if len(found) == 1:
            return (found[0], found[0])
        return (found[0], found[1])
    disc = b * b - 4 * c
    num, den = disc.value.numerator, disc.value.denominator
    if num < 0:
        return None
    rn, rd = math.isqrt(num), math.isqrt(den)
    if rn * rn != num or rd * rd != den:
        return None
    root = FieldElement(field, Fraction(rn, rd))
    half = field.from_int(2).inverse()
    return ((-b + root) * half, (-b - root) * half)


_IRREDUCIBLE_CACHE: dict[tuple[int, int], tuple[int, ...]] = {}


def _find_irreducible(p: int, k: int) -> tuple[int, ...]:
    """First monic irreducible of degree k over GF(p) in coefficient order."""
    key = (p, k)
    if key in _IRREDUCIBLE_CACHE:
        return _IRREDUCIBLE_CACHE[key]
    for idx in range(p**k):
        coeffs = []
        n = idx
        for _ in range(k):
            coeffs.append(n % p)
            n //= p
        cand = tuple(coeffs) + (1,)
        if _irreducible(cand, p):
            _IRREDUCIBLE_CACHE[key] = cand
            return cand
    raise RuntimeError(f"no irreducible of degree {k} over GF({p})")  # unreachable


_EMBED_CACHE: dict[tuple[FieldSpec, FieldSpec], Callable] = {}


def embed_map(src: Field, dst: Field) -> Callable[[FieldElement], FieldElement]:
    """A field homomorphism src -> dst (identity when the specs agree).

    Supported: GF(p) into GF(p^k), and GF(p^k) into GF(p^K) with k | K.  The
    image of w is the first root of the source modulus in destination element
    order, so the map is deterministic.
    """
    if src.spec == dst.spec:
        return lambda x: x
    key = (src.spec, dst.spec)
    cached = _EMBED_CACHE.get(key)
    if cached is not None:
        return cached
    if src.spec.kind == "prime" and dst.spec.kind == "extension" and src.spec.p == dst.spec.p:
        def lift(x: FieldElement, dst=dst) -> FieldElement:
            return dst.from_int(x.value)

        _EMBED_CACHE[key] = lift
        return lift
    if (
        src.spec.kind == "extension"
        and dst.spec.kind == "extension"
        and src.spec.p == dst.spec.p
        and dst.spec.k % src.spec.k == 0
    ):
        mod = src.spec.modulus
        root = None
        for e in dst.elements():
            acc = dst.zero()
            for coef in reversed(mod):
                acc = acc * e + dst.from_int(coef)
            if not acc:
                root = e
                break
        if root is None:
            raise ValueError(f"{src} does not embed in {dst}")
        powers = [dst.one()]
        for _ in range(src.spec.k - 1):
            powers.append(powers[-1] * root)

        def lift(x: FieldElement, dst=dst, powers=powers) -> FieldElement:
            acc = dst.zero()
            for coef, pw in zip(x.value, powers):
                acc = acc + dst.from_int(coef) * pw
            return acc

        _EMBED_CACHE[key] = lift
        return lift
    raise ValueError(f"no embedding of {src} into {dst}")


def splitting_field(
    field: Field, b: FieldElement, c: FieldElement
) -> tuple[Field, Callable[[FieldElement], FieldElement], tuple[FieldElement, FieldElement]]:
    """Field E where x^2 + b*x + c splits, an embedding into it, and the roots.

    Returns the field itself with the identity map when the roots are already
    present.  Over Q, or past the supported extension degree, raises
    NeedsFieldExtension carrying the quadratic.
    """
    roots = quadratic_roots(field, b, c)
    if roots is not None:
        return field, (lambda x: x), roots
    if not field.is_finite():
        raise NeedsFieldExtension(
            f"x^2 + ({b})*x + ({c}) has no roots in {field}", b=b, c=c
        )
    if field.spec.kind == "prime":
        ext = extension_field(field.spec.p, 2, (c.value, b.value, 1))
        lift = embed_map(field, ext)
        r1 = ext.generator()
        r2 = -lift(b) - r1
        return ext, lift, (r1, r2)
    k2 = field.spec.k * 2
    if k2 > MAX_EXTENSION_DEGREE:
        raise NeedsFieldExtension(
            f"splitting x^2 + ({b})*x + ({c}) needs degree {k2} over "
            f"GF({field.spec.p}), past the supported maximum",
            b=b,
            c=c,
        )
    ext = extension_field(field.spec.p, k2, _find_irreducible(field.spec.p, k2))
    lift = embed_map(field, ext)
    roots = quadratic_roots(ext, lift(b), lift(c))
    if roots is None:  # cannot happen: a quadratic splits one step up
        raise RuntimeError("quadratic failed to split in its splitting field")
    return ext, lift, roots
