"""Exact arithmetic in the number field Q(gamma, c, d).

gamma is a primitive fifth root of unity, c is the real fifth root of 2 and
d is the real fifth root of 5.  Elements are represented as polynomials in
the three generators, reduced modulo

    gamma^4 + gamma^3 + gamma^2 + gamma + 1,   c^5 - 2,   d^5 - 5,

so the canonical monomial basis is gamma^i c^j d^k with i < 4, j < 5, k < 5
(dimension 100 over Q).  All coefficients are Fractions; there is no floating
point anywhere in this module.  Numeric output only happens through interval
refinement (`real_interval`), which is exact bookkeeping of rational bounds.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Dict, Iterator, Tuple

Key = Tuple[int, int, int]  # (gamma exponent < 4, c exponent < 5, d exponent < 5)

_ZERO = Fraction(0)
_ONE = Fraction(1)


class ZeroDivisorError(ArithmeticError):
    """Inversion failed; the tower is a field so this signals a bug."""


class FieldElement:
    """Immutable element of Q(gamma, c, d) in canonical reduced form."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Dict[Key, Fraction] | None = None):
        self._terms = dict(terms) if terms else {}
        self._hash = None

    # -- construction helpers ------------------------------------------------

    @staticmethod
    def from_rational(q) -> "FieldElement":
        q = Fraction(q)
        return FieldElement({(0, 0, 0): q} if q else {})

    @staticmethod
    def monomial(q, i: int = 0, j: int = 0, k: int = 0) -> "FieldElement":
        """q * gamma^i * c^j * d^k, reduced."""
        q = Fraction(q)
        if not q:
            return ZERO
        j, k = j % 5, k % 5
        # c^5 = 2, d^5 = 5 were already folded by the caller if j,k >= 5
        el = FieldElement({(0, j, k): q})
        return el * _gamma_power(i % 5) if i % 5 else el

    def terms(self) -> Iterator[Tuple[Key, Fraction]]:
        return iter(self._terms.items())

    # -- predicates ----------------------------------------------------------

    def is_zero(self) -> bool:
        return not self._terms

    def is_rational(self) -> bool:
        return all(k == (0, 0, 0) for k in self._terms)

    def as_rational(self) -> Fraction:
        if not self._terms:
            return _ZERO
        if not self.is_rational():
            raise ValueError("not a rational element: %s" % self)
        return self._terms[(0, 0, 0)]

    def as_monomial(self):
        """Return (q, j, k) if self = q*c^j*d^k with no gamma part, else None."""
        if not self._terms:
            return (_ZERO, 0, 0)
        if len(self._terms) != 1:
            return None
        (i, j, k), q = next(iter(self._terms.items()))
        if i != 0:
            return None
        return (q, j, k)

    # -- ring operations -----------------------------------------------------

    def __add__(self, other) -> "FieldElement":
        other = _coerce(other)
        if other is None:
            return NotImplemented
        out = dict(self._terms)
        for key, q in other._terms.items():
            s = out.get(key, _ZERO) + q
            if s:
                out[key] = s
            else:
                out.pop(key, None)
        return FieldElement(out)

    __radd__ = __add__

    def __neg__(self) -> "FieldElement":
        return FieldElement({k: -q for k, q in self._terms.items()})

    def __sub__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other) -> "FieldElement":
        other = _coerce(other)
        if other is None:
            return NotImplemented
        if not self._terms or not other._terms:
            return ZERO
        out: Dict[Key, Fraction] = {}
        for (i1, j1, k1), q1 in self._terms.items():
            for (i2, j2, k2), q2 in other._terms.items():
                q = q1 * q2
                j, k = j1 + j2, k1 + k2
                if j >= 5:
                    j -= 5
                    q *= 2
                if k >= 5:
                    k -= 5
                    q *= 5
                i = i1 + i2
                if i < 4:
                    key = (i, j, k)
                    s = out.get(key, _ZERO) + q
                    if s:
                        out[key] = s
                    else:
                        out.pop(key, None)
                else:
                    # gamma^i, i in 4..6: reduce by gamma^4 = -(1+g+g^2+g^3)
                    # and gamma^5 = 1, gamma^6 = gamma.
                    if i >= 5:
                        key = (i - 5, j, k)
                        s = out.get(key, _ZERO) + q
                        if s:
                            out[key] = s
                        else:
                            out.pop(key, None)
                    else:
                        for ii in range(4):
                            key = (ii, j, k)
                            s = out.get(key, _ZERO) - q
                            if s:
                                out[key] = s
                            else:
                                out.pop(key, None)
        return FieldElement(out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "FieldElement":
        if n < 0:
            return (self ** (-n)).inverse()
        result = ONE
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def inverse(self) -> "FieldElement":
        """Inverse via the minimal polynomial over Q (Krylov sequence).

        Cheap for the sparse elements that actually occur; raises
        ZeroDivisorError if no unit relation is found (signals a bug).
        """
        if not self._terms:
            raise ZeroDivisorError("division by zero")
        mono = self.as_monomial()
        if mono is not None:
            q, j, k = mono
            inv = Fraction(1) / q
            if j:
                inv /= 2
            if k:
                inv /= 5
            return FieldElement.monomial(inv, 0, (5 - j) % 5, (5 - k) % 5)
        # Krylov: find minimal linear dependence among 1, a, a^2, ...
        powers = [ONE]
        basis: list[Dict[Key, Fraction]] = []  # echelonized vectors
        coords: list[list[Fraction]] = []  # expression in terms of powers
        while True:
            vec = dict(powers[-1]._terms)
            expr = [_ZERO] * len(powers)
            expr[-1] = _ONE
            for bvec, bexpr in zip(basis, coords):
                piv = next(iter(sorted(bvec)))
                if piv in vec:
                    f = vec[piv] / bvec[piv]
                    for key, q in bvec.items():
                        s = vec.get(key, _ZERO) - f * q
                        if s:
                            vec[key] = s
                        else:
                            vec.pop(key, None)
                    expr = [
                        e - f * (b if idx < len(bexpr) else _ZERO)
                        for idx, (e, b) in enumerate(
                            zip(expr, bexpr + [_ZERO] * (len(expr) - len(bexpr)))
                        )
                    ]
            if not vec:
                # dependence: sum expr[i] * a^i = 0; expr corresponds to minpoly
                c0 = expr[0]
                if not c0:
                    raise ZeroDivisorError("zero divisor detected: %s" % self)
                inv = ZERO
                acc = ONE
                for ci in expr[1:]:
                    if ci:
                        inv = inv + acc * FieldElement.from_rational(-ci / c0)
                    acc = acc * self
                return inv
            basis.append(vec)
            coords.append(expr)
            if len(powers) > 100:
                raise ZeroDivisorError("no minimal polynomial found (bug)")
            powers.append(powers[-1] * self)

    def __truediv__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return other * self.inverse()

    def conj(self) -> "FieldElement":
        """Complex conjugation: gamma -> gamma^4, c and d fixed."""
        out = ZERO
        for (i, j, k), q in self._terms.items():
            out = out + FieldElement.monomial(q, 0, j, k) * _gamma_power((4 * i) % 5)
        return out

    # -- comparisons ---------------------------------------------------------

    def __eq__(self, other) -> bool:
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    # -- real evaluation -----------------------------------------------------

    def real_interval(self, prec: int = 40) -> Tuple[Fraction, Fraction]:
        """Enclosing interval of the real part under the standard embedding.

        The element must be fixed by conj (real); asserted by checking the
        imaginary enclosure contains 0.
        """
        re, im = self.complex_interval(prec)
        if not (im[0] <= 0 <= im[1]):
            raise ValueError("element is not real: %s" % self)
        return re

    def complex_interval(self, prec: int = 40):
        """(real, imag) interval enclosures at precision 2^-prec."""
        ctx = _interval_context(prec + 8)
        re_lo = re_hi = _ZERO
        im_lo = im_hi = _ZERO
        for (i, j, k), q in self._terms.items():
            gre, gim = ctx.gamma_re[i], ctx.gamma_im[i]
            scale = _imul(ctx.c_pow[j], ctx.d_pow[k])
            tre = _imul(_imul(gre, scale), (q, q))
            tim = _imul(_imul(gim, scale), (q, q))
            re_lo, re_hi = re_lo + tre[0], re_hi + tre[1]
            im_lo, im_hi = im_lo + tim[0], im_hi + tim[1]
        return (re_lo, re_hi), (im_lo, im_hi)

    def sign(self) -> int:
        """Exact sign of a real (conj-fixed) element."""
        if not self._terms:
            return 0
        if self.conj() != self:
            raise ValueError("sign of a non-real element: %s" % self)
        prec = 30
        while True:
            lo, hi = self.real_interval(prec)
            if lo > 0:
                return 1
            if hi < 0:
                return -1
            prec *= 2
            if prec > 5000:
                raise RuntimeError("sign refinement failed for %s" % self)

    def to_float(self, prec: int = 60) -> complex:
        re, im = self.complex_interval(prec)
        return complex(
            float((re[0] + re[1]) / 2), float((im[0] + im[1]) / 2)
        )

    # -- printing ------------------------------------------------------------

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for key in sorted(self._terms):
            q = self._terms[key]
            i, j, k = key
            factors = []
            if i:
                factors.append("g" if i == 1 else "g^%d" % i)
            if j:
                factors.append("c" if j == 1 else "c^%d" % j)
            if k:
                factors.append("d" if k == 1 else "d^%d" % k)
            if not factors:
                parts.append(str(q))
            elif q == 1:
                parts.append("*".join(factors))
            elif q == -1:
                parts.append("-" + "*".join(factors))
            else:
                parts.append(str(q) + "*" + "*".join(factors))
        out = parts[0]
        for p in parts[1:]:
            out += p if p.startswith("-") else "+" + p
        return out

    __repr__ = __str__


def _coerce(x):
    if isinstance(x, FieldElement):
        return x
    if isinstance(x, (int, Fraction)):
        return FieldElement.from_rational(x)
    return None


# canonical reduced powers of gamma
def _gamma_power(i: int) -> "FieldElement":
    i %= 5
    if i < 4:
        out: Dict[Key, Fraction] = {(i, 0, 0): _ONE}
        return FieldElement(out)
    return FieldElement({(0, 0, 0): -_ONE, (1, 0, 0): -_ONE, (2, 0, 0): -_ONE, (3, 0, 0): -_ONE})


ZERO = FieldElement()
ONE = FieldElement({(0, 0, 0): _ONE})
GAMMA = FieldElement({(1, 0, 0): _ONE})
C = FieldElement({(0, 1, 0): _ONE})  # 2^(1/5)
D = FieldElement({(0, 0, 1): _ONE})  # 5^(1/5)
SIGMA = -(GAMMA ** 3)  # e^(2 pi i / 10); sigma^2 = gamma, sigma^5 = -1
SQRT5 = GAMMA - GAMMA ** 2 - GAMMA ** 3 + GAMMA ** 4  # Gauss sum


def rational(q) -> FieldElement:
    return FieldElement.from_rational(q)


def gamma_pow(i: int) -> FieldElement:
    return _gamma_power(i)


# ---------------------------------------------------------------------------
# interval context: rational enclosures of the embedding constants
# ---------------------------------------------------------------------------

Interval = Tuple[Fraction, Fraction]


def _imul(a: Interval, b: Interval) -> Interval:
    vals = (a[0] * b[0], a[0] * b[1], a[1] * b[0], a[1] * b[1])
    return (min(vals), max(vals))


def _nth_root_interval(x: Fraction, n: int, prec: int) -> Interval:
    """Rational enclosure of x^(1/n) for x > 0 by bisection."""
    lo, hi = Fraction(0), max(Fraction(1), x)
    eps = Fraction(1, 2 ** prec)
    while hi - lo > eps:
        mid = (lo + hi) / 2
        if mid ** n <= x:
            lo = mid
        else:
            hi = mid
    return (lo, hi)


class _IntervalContext:
    def __init__(self, prec: int):
        self.prec = prec
        s5 = _nth_root_interval(Fraction(5), 2, prec)
        # cos(2 pi /5) = (sqrt5 - 1)/4 ; cos(4 pi/5) = -(sqrt5+1)/4
        cos1 = ((s5[0] - 1) / 4, (s5[1] - 1) / 4)
        cos2 = ((-s5[1] - 1) / 4, (-s5[0] - 1) / 4)
        # sin(2 pi/5) = sqrt(10 + 2 sqrt5)/4 ; sin(4 pi/5) = sqrt(10 - 2 sqrt5)/4
        inner1 = (10 + 2 * s5[0], 10 + 2 * s5[1])
        inner2 = (10 - 2 * s5[1], 10 - 2 * s5[0])
        r1 = _nth_root_interval(inner1[0], 2, prec)
        r1b = _nth_root_interval(inner1[1], 2, prec)
        sin1 = (r1[0] / 4, r1b[1] / 4)
        r2 = _nth_root_interval(inner2[0], 2, prec)
        r2b = _nth_root_interval(inner2[1], 2, prec)
        sin2 = (r2[0] / 4, r2b[1] / 4)
        one = (_ONE, _ONE)
        self.gamma_re = [one, cos1, cos2, cos2]
        self.gamma_im = [(Fraction(0), Fraction(0)), sin1, sin2,
                         (-sin2[1], -sin2[0])]
        self.c_pow = [one]
        c1 = _nth_root_interval(Fraction(2), 5, prec)
        for _ in range(4):
            self.c_pow.append(_imul(self.c_pow[-1], c1))
        self.d_pow = [one]
        d1 = _nth_root_interval(Fraction(5), 5, prec)
        for _ in range(4):
            self.d_pow.append(_imul(self.d_pow[-1], d1))


_CTX_CACHE: Dict[int, _IntervalContext] = {}


def _interval_context(prec: int) -> _IntervalContext:
    ctx = _CTX_CACHE.get(prec)
    if ctx is None:
        ctx = _IntervalContext(prec)
        if len(_CTX_CACHE) > 8:
            _CTX_CACHE.clear()
        _CTX_CACHE[prec] = ctx
    return ctx


# ---------------------------------------------------------------------------
# radical recognition: real fifth roots and square roots inside the tower
# ---------------------------------------------------------------------------


def _split_25(q: Fraction):
    """q = sign * 2^a * 5^b * m/n with m, n coprime to 10. Returns (s,a,b,m,n)."""
    sign = -1 if q < 0 else 1
    num, den = abs(q.numerator), q.denominator
    a = b = 0
    while num % 2 == 0:
        num //= 2
        a += 1
    while num % 5 == 0:
        num //= 5
        b += 1
    while den % 2 == 0:
        den //= 2
        a -= 1
    while den % 5 == 0:
        den //= 5
        b -= 1
    return sign, a, b, num, den


def _int_nth_root(x: int, n: int):
    if x < 0:
        return None
    r = round(x ** (1.0 / n)) if x > 1 else x
    for cand in (r - 1, r, r + 1):
        if cand >= 0 and cand ** n == x:
            return cand
    return None


def fifth_root(e: FieldElement):
    """The real fifth root of e, if it lies in the tower; else None."""
    if e.is_zero():
        return ZERO
    mono = e.as_monomial()
    if mono is None:
        return None
    q, j, k = mono
    if j or k:
        return None  # c^(j/5) is not in the tower for 0 < j < 5
    s, a, b, m, n = _split_25(q)
    rm, rn = _int_nth_root(m, 5), _int_nth_root(n, 5)
    if rm is None or rn is None:
        return None
    root = FieldElement.monomial(
        Fraction(s) * Fraction(rm, rn) * Fraction(2) ** (a // 5 if a >= 0 else -((-a + 4) // 5))
        * Fraction(5) ** (b // 5 if b >= 0 else -((-b + 4) // 5)),
        0,
        a % 5,
        b % 5,
    )
    assert root ** 5 == e
    return root


def sqrt_in_tower(e: FieldElement):
    """A real square root of e >= 0 if one lies in the tower; else None.

    Only rational multiples of 1 and 5 are recognized (sqrt5 is in Q(gamma);
    sqrt2 generates a quadratic field not contained in the tower).
    """
    if e.is_zero():
        return ZERO
    if not e.is_rational():
        return None
    q = e.as_rational()
    if q < 0:
        return None
    s, a, b, m, n = _split_25(q)
    for extra5 in (0, 1):
        bb = b - extra5
        if a % 2 == 0 and bb % 2 == 0:
            rm, rn = _int_nth_root(m, 2), _int_nth_root(n, 2)
            if rm is not None and rn is not None:
                cand = FieldElement.from_rational(
                    Fraction(rm, rn) * Fraction(2) ** (a // 2) * Fraction(5) ** (bb // 2)
                )
                if extra5:
                    cand = cand * SQRT5
                if cand * cand == e:
                    return cand
    return None


# ---------------------------------------------------------------------------
# serialization (round-trip safe)
# ---------------------------------------------------------------------------


def to_token(e: FieldElement) -> str:
    """Canonical string form, e.g. '1/2*c^4' or 'g^2+g^3'."""
    return str(e)


def from_token(s: str) -> FieldElement:
    """Parse the canonical string form produced by to_token."""
    s = s.strip().replace(" ", "")
    if s == "0":
        return ZERO
    # split into signed terms
    terms = []
    cur = ""
    for ch in s:
        if ch == "+" or (ch == "-" and cur and not cur.endswith(("*", "^", "/"))):
            terms.append(cur)
            cur = ch if ch == "-" else ""
        else:
            cur += ch
    terms.append(cur)
    out = ZERO
    for term in terms:
        if not term:
            continue
        neg = term.startswith("-")
        if neg:
            term = term[1:]
        q = Fraction(1)
        i = j = k = 0
        for factor in term.split("*"):
            if not factor:
                continue
            if factor[0] == "g":
                i = int(factor[2:]) if "^" in factor else 1
            elif factor[0] == "c" and not factor[0].isdigit():
                j = int(factor[2:]) if "^" in factor else 1
            elif factor[0] == "d":
                k = int(factor[2:]) if "^" in factor else 1
            else:
                q *= Fraction(factor)
        if neg:
            q = -q
        out = out + FieldElement.monomial(q, i, j, k)
    return out
