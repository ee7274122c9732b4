"""Exact coefficient rings.

The engine works over four kinds of scalars:

* :class:`LaurentPoly` -- the ring Z[A, A^-1] where the bracket lives,
* :class:`fractions.Fraction` -- the rationals,
* :class:`Gaussian` -- rationals adjoined i, for exact unitarity checks,
* :class:`complex` -- doubles, only for tolerance-based bound checks.

:class:`QuadraticNumber` (Q adjoined a square root) is used by the form
classifier when a block parameter is irrational.

Arithmetic between two different kinds of scalar raises
:class:`~skeintl.errors.RingMismatch`; plain ``int`` is accepted everywhere
because Z maps into every ring.  Moving a value between rings is explicit:
use :meth:`Ring.coerce` or :func:`evaluate_poly`.
"""

from __future__ import annotations

import cmath
import math
import re
from fractions import Fraction
from numbers import Rational

from .errors import ExponentOverflow, NotAUnit, RingMismatch

MAX_EXPONENT = 10**6


class _Foreign(Exception):
    """Raised by coercion when the other operand is not a scalar at all."""


def _binary(method):
    # non-scalar operands (matrices, TL elements) get a chance at the reflected op
    def wrapper(self, other):
        try:
            return method(self, other)
        except _Foreign:
            return NotImplemented

    wrapper.__name__ = method.__name__
    wrapper.__doc__ = method.__doc__
    return wrapper


def _is_scalar(x):
    return isinstance(x, (int, float, complex, Fraction, LaurentPoly, Gaussian, QuadraticNumber))


def _check_int(c):
    if isinstance(c, bool) or not isinstance(c, int):
        raise RingMismatch(f"Laurent coefficients must be integers, got {c!r}")
    return c


class LaurentPoly:
    """An element of Z[A, A^-1], stored as ``{exponent: coefficient}``.

    Zero coefficients are never stored, so the zero polynomial is the empty
    map and equality is map equality.  Instances are immutable.
    """

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms=None):
        clean = {}
        for k, c in (terms or {}).items():
            k = int(k)
            if abs(k) > MAX_EXPONENT:
                raise ExponentOverflow(f"exponent {k} outside +-{MAX_EXPONENT}")
            _check_int(c)
            if c:
                clean[k] = c
        self._terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, terms):
        obj = cls.__new__(cls)
        obj._terms = terms
        obj._hash = None
        return obj

    @classmethod
    def monomial(cls, coeff=1, exponent=1):
        return cls({exponent: coeff})

    @classmethod
    def constant(cls, c):
        return cls({0: c})

    def terms(self):
        """Return the ``(exponent, coefficient)`` pairs, highest exponent first."""
        return sorted(self._terms.items(), reverse=True)

    def coefficient(self, k):
        return self._terms.get(k, 0)

    @property
    def min_exponent(self):
        return min(self._terms) if self._terms else None

    @property
    def max_exponent(self):
        return max(self._terms) if self._terms else None

    def is_constant(self):
        return not self._terms or set(self._terms) == {0}

    def is_monomial(self):
        return len(self._terms) == 1

    def is_unit(self):
        """Units of Z[A, A^-1] are exactly the monomials +-A^k."""
        return len(self._terms) == 1 and abs(next(iter(self._terms.values()))) == 1

    def inverse(self):
        if not self.is_unit():
            raise NotAUnit(f"{self} is not a unit in Z[A, A^-1]")
        (k, c), = self._terms.items()
        return LaurentPoly._raw({-k: c})

    def _coerce(self, other):
        if isinstance(other, LaurentPoly):
            return other
        if isinstance(other, int) and not isinstance(other, bool):
            return LaurentPoly.constant(other)
        if not _is_scalar(other):
            raise _Foreign
        raise RingMismatch(f"cannot combine a Laurent polynomial with {type(other).__name__}")

    @_binary
    def __add__(self, other):
        other = self._coerce(other)
        out = dict(self._terms)
        for k, c in other._terms.items():
            s = out.get(k, 0) + c
            if s:
                out[k] = s
            else:
                out.pop(k, None)
        return LaurentPoly._raw(out)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly._raw({k: -c for k, c in self._terms.items()})

    @_binary
    def __sub__(self, other):
        return self + (-self._coerce(other))

    @_binary
    def __rsub__(self, other):
        return self._coerce(other) - self

    @_binary
    def __mul__(self, other):
        other = self._coerce(other)
        out = {}
        for k1, c1 in self._terms.items():
            for k2, c2 in other._terms.items():
                k = k1 + k2
                out[k] = out.get(k, 0) + c1 * c2
        for k in [k for k, c in out.items() if not c]:
            del out[k]
        if out and (max(out) > MAX_EXPONENT or min(out) < -MAX_EXPONENT):
            raise ExponentOverflow("product exponent outside guarded range")
        return LaurentPoly._raw(out)

    __rmul__ = __mul__

    def __pow__(self, n):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inverse() ** (-n)
        result = ONE
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def divexact(self, other):
        """Exact quotient ``self / other``; raises :class:`NotAUnit` if it does not exist."""
        other = self._coerce(other)
        if not other._terms:
            raise ZeroDivisionError("division by the zero polynomial")
        if not self._terms:
            return ZERO
        if other.is_monomial():
            (k, c), = other._terms.items()
            out = {}
            for e, a in self._terms.items():
                q, r = divmod(a, c)
                if r:
                    raise NotAUnit(f"{other} does not divide {self}")
                out[e - k] = q
            return LaurentPoly._raw(out)
        # long division on the shifted ordinary polynomials, highest degree first
        lo_d = other.min_exponent
        num = {e - self.min_exponent: c for e, c in self._terms.items()}
        den = {e - lo_d: c for e, c in other._terms.items()}
        dd = max(den)
        lead = den[dd]
        quot = {}
        while num:
            top = max(num)
            if top < dd:
                raise NotAUnit(f"{other} does not divide {self}")
            q, r = divmod(num[top], lead)
            if r:
                raise NotAUnit(f"{other} does not divide {self}")
            shift = top - dd
            quot[shift] = q
            for e, c in den.items():
                v = num.get(e + shift, 0) - q * c
                if v:
                    num[e + shift] = v
                else:
                    num.pop(e + shift, None)
        offset = self.min_exponent - lo_d
        return LaurentPoly({e + offset: c for e, c in quot.items()})

    def mirror(self):
        """The image under A -> A^-1."""
        return LaurentPoly._raw({-k: c for k, c in self._terms.items()})

    def evaluate(self, value, ring=None):
        return evaluate_poly(self, value, ring)

    def __eq__(self, other):
        if isinstance(other, LaurentPoly):
            return self._terms == other._terms
        if isinstance(other, int) and not isinstance(other, bool):
            return self._terms == ({0: other} if other else {})
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def __bool__(self):
        return bool(self._terms)

    def __repr__(self):
        return f"LaurentPoly({self})"

    def __str__(self):
        return format_laurent(self)

    def to_json(self):
        return {str(k): c for k, c in self.terms()}

    @classmethod
    def from_json(cls, data):
        return cls({int(k): int(v) for k, v in data.items()})

    @classmethod
    def parse(cls, text):
        return parse_laurent(text)


ZERO = LaurentPoly()
ONE = LaurentPoly.constant(1)
A = LaurentPoly.monomial(1, 1)
A_INV = LaurentPoly.monomial(1, -1)
# loop value -A^2 - A^-2
DELTA = LaurentPoly({2: -1, -2: -1})


def format_laurent(p):
    if not p:
        return "0"
    parts = []
    for k, c in p.terms():
        mag = abs(c)
        if k == 0:
            body = str(mag)
        else:
            power = "A" if k == 1 else f"A^{k}"
            body = power if mag == 1 else f"{mag}*{power}"
        if not parts:
            parts.append(("-" if c < 0 else "") + body)
        else:
            parts.append((" - " if c < 0 else " + ") + body)
    return "".join(parts)


_TERM_RE = re.compile(
    r"""\s*(?P<sign>[+-])?\s*
        (?:(?P<coef>\d+)\s*(?:\*\s*)?)?
        (?:(?P<var>A)(?:\s*\^\s*(?P<exp>\(?\s*[+-]?\s*\d+\s*\)?))?)?
        \s*""",
    re.VERBOSE,
)


def parse_laurent(text):
    """Parse the text form, e.g. ``-A^2 - A^-2`` or ``3*A^-1 + 2``."""
    src = text.strip()
    if not src:
        raise ValueError("empty polynomial text")
    pos = 0
    terms = {}
    first = True
    while pos < len(src):
        m = _TERM_RE.match(src, pos)
        if not m or m.end() == pos or (m.group("coef") is None and m.group("var") is None):
            raise ValueError(f"cannot parse Laurent polynomial {text!r} at offset {pos}")
        if m.group("sign") is None and not first:
            raise ValueError(f"missing operator in {text!r} at offset {pos}")
        sign = -1 if m.group("sign") == "-" else 1
        coef = int(m.group("coef")) if m.group("coef") else 1
        if m.group("var"):
            exp = int(re.sub(r"[\s()]", "", m.group("exp"))) if m.group("exp") else 1
        else:
            exp = 0
        terms[exp] = terms.get(exp, 0) + sign * coef
        pos = m.end()
        first = False
    return LaurentPoly(terms)


def _as_fraction(x):
    if isinstance(x, bool):
        raise RingMismatch("booleans are not ring elements")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, Fraction):
        return x
    raise RingMismatch(f"expected a rational, got {type(x).__name__}")


class Gaussian:
    """An exact element ``re + im*i`` of Q(i)."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        self.re = _as_fraction(re)
        self.im = _as_fraction(im)

    @staticmethod
    def _coerce(other):
        if isinstance(other, Gaussian):
            return other
        if isinstance(other, int) and not isinstance(other, bool):
            return Gaussian(other, 0)
        if not _is_scalar(other):
            raise _Foreign
        raise RingMismatch(f"cannot combine a Gaussian rational with {type(other).__name__}")

    @_binary
    def __add__(self, other):
        o = self._coerce(other)
        return Gaussian(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __neg__(self):
        return Gaussian(-self.re, -self.im)

    @_binary
    def __sub__(self, other):
        o = self._coerce(other)
        return Gaussian(self.re - o.re, self.im - o.im)

    @_binary
    def __rsub__(self, other):
        return self._coerce(other) - self

    @_binary
    def __mul__(self, other):
        o = self._coerce(other)
        return Gaussian(self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def norm(self):
        return self.re * self.re + self.im * self.im

    def conjugate(self):
        return Gaussian(self.re, -self.im)

    def inverse(self):
        n = self.norm()
        if not n:
            raise NotAUnit("zero is not invertible")
        return Gaussian(self.re / n, -self.im / n)

    @_binary
    def __truediv__(self, other):
        return self * self._coerce(other).inverse()

    @_binary
    def __rtruediv__(self, other):
        return self._coerce(other) * self.inverse()

    def __pow__(self, n):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inverse() ** (-n)
        result, base = Gaussian(1), self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, Gaussian):
            return self.re == other.re and self.im == other.im
        if isinstance(other, int) and not isinstance(other, bool):
            return self.im == 0 and self.re == other
        return NotImplemented

    def __hash__(self):
        return hash((self.re, self.im))

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __complex__(self):
        return complex(float(self.re), float(self.im))

    def __repr__(self):
        return f"Gaussian({self})"

    def __str__(self):
        if not self.im:
            return str(self.re)
        im = "i" if abs(self.im) == 1 else f"{abs(self.im)}i"
        if not self.re:
            return ("-" if self.im < 0 else "") + im
        return f"{self.re}{'-' if self.im < 0 else '+'}{im}"


I = Gaussian(0, 1)


class QuadraticNumber:
    """``a + b*sqrt(d)`` with rational a, b and a fixed non-square rational d."""

    __slots__ = ("a", "b", "d")

    def __init__(self, a, b, d):
        self.a = _as_fraction(a)
        self.b = _as_fraction(b)
        self.d = _as_fraction(d)

    def _coerce(self, other):
        if isinstance(other, QuadraticNumber):
            if other.d != self.d:
                raise RingMismatch(f"Q(sqrt({self.d})) and Q(sqrt({other.d})) differ")
            return other
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return QuadraticNumber(other, 0, self.d)
        if not _is_scalar(other):
            raise _Foreign
        raise RingMismatch(f"cannot combine a quadratic number with {type(other).__name__}")

    @_binary
    def __add__(self, other):
        o = self._coerce(other)
        return QuadraticNumber(self.a + o.a, self.b + o.b, self.d)

    __radd__ = __add__

    def __neg__(self):
        return QuadraticNumber(-self.a, -self.b, self.d)

    @_binary
    def __sub__(self, other):
        return self + (-self._coerce(other))

    @_binary
    def __rsub__(self, other):
        return self._coerce(other) - self

    @_binary
    def __mul__(self, other):
        o = self._coerce(other)
        return QuadraticNumber(self.a * o.a + self.b * o.b * self.d,
                               self.a * o.b + self.b * o.a, self.d)

    __rmul__ = __mul__

    def conjugate(self):
        """The Galois conjugate ``a - b*sqrt(d)``."""
        return QuadraticNumber(self.a, -self.b, self.d)

    def inverse(self):
        n = self.a * self.a - self.b * self.b * self.d
        if not n:
            raise NotAUnit("zero is not invertible")
        return QuadraticNumber(self.a / n, -self.b / n, self.d)

    @_binary
    def __truediv__(self, other):
        return self * self._coerce(other).inverse()

    def __pow__(self, n):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inverse() ** (-n)
        result, base = QuadraticNumber(1, 0, self.d), self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, QuadraticNumber):
            return (self.a, self.b, self.d) == (other.a, other.b, other.d)
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return self.b == 0 and self.a == other
        return NotImplemented

    def __hash__(self):
        return hash(self.a) if not self.b else hash((self.a, self.b, self.d))

    def __bool__(self):
        return bool(self.a) or bool(self.b)

    def __complex__(self):
        return complex(self.a) + complex(self.b) * cmath.sqrt(float(self.d))

    def __repr__(self):
        return f"QuadraticNumber({self})"

    def __str__(self):
        root = f"sqrt({self.d})"
        if not self.b:
            return str(self.a)
        b = "" if abs(self.b) == 1 else f"{abs(self.b)}*"
        if not self.a:
            return f"{'-' if self.b < 0 else ''}{b}{root}"
        return f"{self.a}{' - ' if self.b < 0 else ' + '}{b}{root}"


def _squarefree_split(n):
    """Write positive n as s^2 * r with r squarefree (trial division, small n only)."""
    s, r = 1, 1
    p = 2
    while p * p <= n:
        while n % (p * p) == 0:
            n //= p * p
            s *= p
        if n % p == 0:
            n //= p
            r *= p
        p += 1
    return s, r * n


def sqrt_rational(q):
    """Exact square root of a rational, as a Fraction or a :class:`QuadraticNumber`."""
    q = _as_fraction(q)
    if q == 0:
        return Fraction(0)
    sign = -1 if q < 0 else 1
    num, den = abs(q.numerator), q.denominator
    # sqrt(num/den) = sqrt(num*den)/den
    s, r = _squarefree_split(num * den)
    if r == 1 and sign > 0:
        return Fraction(s, den)
    return QuadraticNumber(0, Fraction(s, den), sign * r)


# ---------------------------------------------------------------- ring objects


class Ring:
    """Uniform access to the operations matrices and solvers need."""

    name = "abstract"
    exact = True

    def coerce(self, x):
        raise NotImplementedError

    @property
    def zero(self):
        return self.coerce(0)

    @property
    def one(self):
        return self.coerce(1)

    def is_zero(self, x):
        return not x

    def eq(self, x, y):
        return self.coerce(x) == self.coerce(y)

    def is_unit(self, x):
        return bool(x)

    def inverse(self, x):
        if not x:
            raise NotAUnit("zero is not invertible")
        return 1 / x

    def div(self, x, y):
        return x * self.inverse(y)

    def conj(self, x):
        return x

    def parse(self, text):
        raise NotImplementedError

    def format(self, x):
        return str(x)

    def __repr__(self):
        return f"<ring {self.name}>"


class LaurentRing(Ring):
    name = "laurent"

    def coerce(self, x):
        if isinstance(x, LaurentPoly):
            return x
        if isinstance(x, int) and not isinstance(x, bool):
            return LaurentPoly.constant(x)
        if isinstance(x, str):
            return parse_laurent(x)
        if isinstance(x, Fraction) and x.denominator == 1:
            return LaurentPoly.constant(x.numerator)
        raise RingMismatch(f"{x!r} is not an element of Z[A, A^-1]")

    def is_unit(self, x):
        return self.coerce(x).is_unit()

    def inverse(self, x):
        return self.coerce(x).inverse()

    def div(self, x, y):
        return self.coerce(x).divexact(self.coerce(y))

    def parse(self, text):
        return parse_laurent(text)


class RationalField(Ring):
    name = "rational"

    def coerce(self, x):
        if isinstance(x, str):
            return self.parse(x)
        return _as_fraction(x)

    def inverse(self, x):
        x = self.coerce(x)
        if not x:
            raise NotAUnit("zero is not invertible")
        return 1 / x

    def parse(self, text):
        try:
            return Fraction(text.strip())
        except ValueError:
            raise ValueError(f"not a rational: {text!r}") from None


def parse_gaussian(text):
    """Parse ``p/q+r/s i`` style text (also ``i``, ``-2i``, ``3``)."""
    t = text.replace(" ", "").replace("*", "")
    if not t:
        raise ValueError("empty Gaussian rational")
    try:
        if not t.endswith("i"):
            return Gaussian(Fraction(t), 0)
        body = t[:-1]
        cut = max(body.rfind("+"), body.rfind("-"))
        if cut > 0:
            re_part, im_part = body[:cut], body[cut:]
        else:
            re_part, im_part = "0", body
        if im_part in ("", "+", "-"):
            im_part += "1"
        return Gaussian(Fraction(re_part), Fraction(im_part))
    except (ValueError, ZeroDivisionError):
        raise ValueError(f"not a Gaussian rational: {text!r}") from None


class GaussianField(Ring):
    name = "gaussian"

    def coerce(self, x):
        if isinstance(x, Gaussian):
            return x
        if isinstance(x, str):
            return parse_gaussian(x)
        return Gaussian(_as_fraction(x), 0)

    def inverse(self, x):
        return self.coerce(x).inverse()

    def conj(self, x):
        return self.coerce(x).conjugate()

    def parse(self, text):
        return parse_gaussian(text)


class ComplexDoubles(Ring):
    """Floating point complex numbers; equality needs a tolerance."""

    name = "complex"
    exact = False

    def __init__(self, tol=1e-9):
        self.tol = tol

    def coerce(self, x):
        if isinstance(x, (Gaussian, QuadraticNumber)):
            return complex(x)
        if isinstance(x, str):
            return complex(x.replace(" ", "").replace("i", "j"))
        if isinstance(x, (int, float, complex, Rational)):
            return complex(x)
        raise RingMismatch(f"{x!r} is not a complex number")

    def eq(self, x, y, tol=None):
        return abs(self.coerce(x) - self.coerce(y)) <= (self.tol if tol is None else tol)

    def is_unit(self, x):
        return abs(x) > self.tol

    def inverse(self, x):
        if abs(x) == 0:
            raise NotAUnit("zero is not invertible")
        return 1 / complex(x)

    def conj(self, x):
        return complex(x).conjugate()

    def parse(self, text):
        return self.coerce(text)

    def format(self, x):
        return repr(complex(x))


class QuadraticField(Ring):
    def __init__(self, d):
        self.d = _as_fraction(d)
        self.name = f"Q(sqrt({self.d}))"

    def coerce(self, x):
        if isinstance(x, QuadraticNumber):
            if x.d != self.d:
                raise RingMismatch(f"{x} is not in {self.name}")
            return x
        return QuadraticNumber(_as_fraction(x), 0, self.d)

    def inverse(self, x):
        return self.coerce(x).inverse()

    def __eq__(self, other):
        return isinstance(other, QuadraticField) and other.d == self.d

    def __hash__(self):
        return hash(("quadratic", self.d))


LAURENT = LaurentRing()
RATIONAL = RationalField()
GAUSSIAN = GaussianField()
COMPLEX = ComplexDoubles()

RINGS = {"laurent": LAURENT, "rational": RATIONAL, "gaussian": GAUSSIAN, "complex": COMPLEX}


def ring_of(x):
    """The ring a scalar belongs to (its tag)."""
    if isinstance(x, LaurentPoly):
        return LAURENT
    if isinstance(x, Gaussian):
        return GAUSSIAN
    if isinstance(x, QuadraticNumber):
        return QuadraticField(x.d)
    if isinstance(x, (complex, float)):
        return COMPLEX
    if isinstance(x, (int, Fraction)) and not isinstance(x, bool):
        return RATIONAL
    raise RingMismatch(f"{x!r} is not a ring element")


def evaluate_poly(p, value, ring=None):
    """Substitute ``value`` for A in ``p``.

    ``value`` must be a unit of its ring when ``p`` has negative exponents.
    A LaurentPoly value gives a substitution A -> value inside Z[A, A^-1].
    """
    ring = ring or ring_of(value)
    value = ring.coerce(value)
    if not p:
        return ring.zero
    lo, hi = p.min_exponent, p.max_exponent
    inv = None
    if lo < 0:
        if not ring.is_unit(value):
            raise NotAUnit(f"{value} is not a unit in the {ring.name} ring")
        inv = ring.inverse(value)
    total = ring.zero
    # powers are cached so each is computed once
    pos, neg = {0: ring.one}, {0: ring.one}
    for k in range(1, max(hi, 0) + 1):
        pos[k] = pos[k - 1] * value
    for k in range(1, max(-lo, 0) + 1):
        neg[k] = neg[k - 1] * inv
    for k, c in p.terms():
        total = total + c * (pos[k] if k >= 0 else neg[-k])
    return total


def delta_of(value, ring=None):
    """The loop value -A^2 - A^-2 at ``value``."""
    ring = ring or ring_of(value)
    value = ring.coerce(value)
    if not ring.is_unit(value):
        raise NotAUnit(f"{value} is not a unit in the {ring.name} ring")
    inv = ring.inverse(value)
    return -(value * value) - inv * inv


def parse_point(text):
    """Parse an evaluation point: ``A`` (symbolic), ``3``, ``2/5``, ``1/2-3i``, ``e^0.25pi``.

    The last form, ``e^<t>pi``, is the complex double exp(i*t*pi).
    """
    t = text.strip()
    if t == "A":
        return A
    m = re.fullmatch(r"e\^\(?i?\s*([+-]?\d*\.?\d+(?:/\d+)?)\s*\*?\s*pi\)?", t)
    if m:
        frac = float(Fraction(m.group(1)))
        return cmath.exp(1j * math.pi * frac)
    if "i" in t:
        return parse_gaussian(t)
    return RATIONAL.parse(t)


def format_value(x):
    """Text form of any scalar."""
    if isinstance(x, complex):
        return f"{x.real:.12g}{x.imag:+.12g}i"
    return str(x)
