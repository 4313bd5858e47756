"""Sparse multivariate polynomials, Groebner bases and real root counting.

Polynomials are dictionaries mapping exponent tuples to nonzero coefficients.
Coefficients live in a pluggable domain: QQ (Fractions, the fast path used by
the strip solver) or KK (tower FieldElements).  The Groebner engine is plain
Buchberger with normal-strategy pair selection and a hard step budget; all
arithmetic is exact.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterable, List, Sequence, Tuple

from .tower import FieldElement, ZERO as KZERO, ONE as KONE

Monomial = Tuple[int, ...]


# ---------------------------------------------------------------------------
# coefficient domains
# ---------------------------------------------------------------------------


class QQ:
    """Rational coefficients (fractions.Fraction)."""

    zero = Fraction(0)
    one = Fraction(1)

    @staticmethod
    def coerce(x):
        if isinstance(x, FieldElement):
            return x.as_rational()
        return Fraction(x)

    @staticmethod
    def is_zero(x):
        return x == 0

    @staticmethod
    def add(x, y):
        return x + y

    @staticmethod
    def neg(x):
        return -x

    @staticmethod
    def mul(x, y):
        return x * y

    @staticmethod
    def inv(x):
        return Fraction(1) / x

    @staticmethod
    def sign(x):
        return (x > 0) - (x < 0)


class KK:
    """Tower coefficients (FieldElement)."""

    zero = KZERO
    one = KONE

    @staticmethod
    def coerce(x):
        if isinstance(x, FieldElement):
            return x
        return FieldElement.from_rational(x)

    @staticmethod
    def is_zero(x):
        return x.is_zero()

    @staticmethod
    def add(x, y):
        return x + y

    @staticmethod
    def neg(x):
        return -x

    @staticmethod
    def mul(x, y):
        return x * y

    @staticmethod
    def inv(x):
        return x.inverse()

    @staticmethod
    def sign(x):
        return x.sign()


# ---------------------------------------------------------------------------
# monomial orders
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class MonomialOrder:
    """Total monomial order; kind is 'lex' or 'degrevlex'.

    Variables are compared in list position order: position 0 is the most
    significant variable.
    """

    kind: str = "degrevlex"

    def key(self, m: Monomial):
        if self.kind == "lex":
            return m
        if self.kind == "degrevlex":
            return (sum(m), tuple(-e for e in reversed(m)))
        raise ValueError("unknown order kind %r" % self.kind)


LEX = MonomialOrder("lex")
DEGREVLEX = MonomialOrder("degrevlex")


def _mdiv(m1: Monomial, m2: Monomial):
    out = []
    for a, b in zip(m1, m2):
        if a < b:
            return None
        out.append(a - b)
    return tuple(out)


def _mlcm(m1: Monomial, m2: Monomial) -> Monomial:
    return tuple(max(a, b) for a, b in zip(m1, m2))


def _mmul(m1: Monomial, m2: Monomial) -> Monomial:
    return tuple(a + b for a, b in zip(m1, m2))


# ---------------------------------------------------------------------------
# sparse polynomials
# ---------------------------------------------------------------------------


class SparsePoly:
    """Polynomial in named variables over a coefficient domain."""

    __slots__ = ("variables", "terms", "domain")

    def __init__(self, variables: Sequence[str], terms: Dict[Monomial, object] | None = None,
                 domain=KK):
        self.variables = tuple(variables)
        self.domain = domain
        self.terms = {}
        if terms:
            for m, c in terms.items():
                if not domain.is_zero(c):
                    self.terms[m] = c

    # -- constructors --------------------------------------------------------

    @classmethod
    def zero(cls, variables, domain=KK):
        return cls(variables, {}, domain)

    @classmethod
    def constant(cls, variables, c, domain=KK):
        c = domain.coerce(c)
        n = len(variables)
        return cls(variables, {(0,) * n: c}, domain)

    @classmethod
    def variable(cls, variables, name, domain=KK):
        idx = list(variables).index(name)
        m = [0] * len(variables)
        m[idx] = 1
        return cls(variables, {tuple(m): domain.one}, domain)

    # -- basic queries ---------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def total_degree(self) -> int:
        return max((sum(m) for m in self.terms), default=0)

    def degree_in(self, name: str) -> int:
        idx = self.variables.index(name)
        return max((m[idx] for m in self.terms), default=0)

    def leading(self, order: MonomialOrder):
        key = order.key
        m = max(self.terms, key=key)
        return m, self.terms[m]

    def coefficient_of(self, name: str, power: int) -> "SparsePoly":
        """Coefficient of name**power, as a polynomial in the other slots."""
        idx = self.variables.index(name)
        out = {}
        for m, c in self.terms.items():
            if m[idx] == power:
                mm = list(m)
                mm[idx] = 0
                out[tuple(mm)] = c
        return SparsePoly(self.variables, out, self.domain)

    def derivative(self, name: str) -> "SparsePoly":
        idx = self.variables.index(name)
        dom = self.domain
        out: Dict[Monomial, object] = {}
        for m, c in self.terms.items():
            e = m[idx]
            if not e:
                continue
            mm = list(m)
            mm[idx] = e - 1
            key = tuple(mm)
            val = dom.mul(c, dom.coerce(e))
            if key in out:
                s = dom.add(out[key], val)
                if dom.is_zero(s):
                    del out[key]
                else:
                    out[key] = s
            else:
                out[key] = val
        return SparsePoly(self.variables, out, dom)

    def used_variables(self) -> Tuple[str, ...]:
        used = [False] * len(self.variables)
        for m in self.terms:
            for i, e in enumerate(m):
                if e:
                    used[i] = True
        return tuple(v for v, u in zip(self.variables, used) if u)

    # -- arithmetic ------------------------------------------------------------

    def _check(self, other: "SparsePoly"):
        if self.variables != other.variables:
            raise ValueError("variable mismatch: %r vs %r" % (self.variables, other.variables))

    def __add__(self, other):
        if not isinstance(other, SparsePoly):
            other = SparsePoly.constant(self.variables, other, self.domain)
        self._check(other)
        dom = self.domain
        out = dict(self.terms)
        for m, c in other.terms.items():
            if m in out:
                s = dom.add(out[m], c)
                if dom.is_zero(s):
                    del out[m]
                else:
                    out[m] = s
            else:
                out[m] = c
        return SparsePoly(self.variables, out, dom)

    def __neg__(self):
        dom = self.domain
        return SparsePoly(self.variables, {m: dom.neg(c) for m, c in self.terms.items()}, dom)

    def __sub__(self, other):
        if not isinstance(other, SparsePoly):
            other = SparsePoly.constant(self.variables, other, self.domain)
        return self + (-other)

    def __mul__(self, other):
        dom = self.domain
        if not isinstance(other, SparsePoly):
            c = dom.coerce(other)
            if dom.is_zero(c):
                return SparsePoly.zero(self.variables, dom)
            return SparsePoly(
                self.variables, {m: dom.mul(cc, c) for m, cc in self.terms.items()}, dom
            )
        self._check(other)
        out: Dict[Monomial, object] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = _mmul(m1, m2)
                c = dom.mul(c1, c2)
                if m in out:
                    s = dom.add(out[m], c)
                    if dom.is_zero(s):
                        del out[m]
                    else:
                        out[m] = s
                else:
                    out[m] = c
        return SparsePoly(self.variables, out, dom)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        result = SparsePoly.constant(self.variables, self.domain.one, self.domain)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def scale_monomial(self, coeff, mono: Monomial) -> "SparsePoly":
        dom = self.domain
        return SparsePoly(
            self.variables,
            {_mmul(m, mono): dom.mul(c, coeff) for m, c in self.terms.items()},
            dom,
        )

    def monic(self, order: MonomialOrder) -> "SparsePoly":
        if not self.terms:
            return self
        _, lc = self.leading(order)
        inv = self.domain.inv(lc)
        return self * inv

    def __eq__(self, other):
        return (
            isinstance(other, SparsePoly)
            and self.variables == other.variables
            and self.terms == other.terms
        )

    def __hash__(self):
        return hash((self.variables, frozenset(self.terms.items())))

    def substitute(self, assignment: Dict[str, object]) -> "SparsePoly":
        """Substitute domain values for some variables (keeps variable list).

        Names absent from the polynomial's variable list are ignored.
        """
        dom = self.domain
        idxs = {self.variables.index(n): dom.coerce(v) for n, v in assignment.items()
                if n in self.variables}
        out = SparsePoly.zero(self.variables, dom)
        acc: Dict[Monomial, object] = {}
        for m, c in self.terms.items():
            val = c
            mm = list(m)
            for i, v in idxs.items():
                for _ in range(m[i]):
                    val = dom.mul(val, v)
                mm[i] = 0
            key = tuple(mm)
            if key in acc:
                s = dom.add(acc[key], val)
                if dom.is_zero(s):
                    del acc[key]
                else:
                    acc[key] = s
            else:
                if not dom.is_zero(val):
                    acc[key] = val
        out.terms = acc
        return out

    def convert(self, domain) -> "SparsePoly":
        return SparsePoly(
            self.variables, {m: domain.coerce(c) for m, c in self.terms.items()}, domain
        )

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for m in sorted(self.terms, key=lambda mm: (-sum(mm), mm)):
            c = self.terms[m]
            factors = []
            for v, e in zip(self.variables, m):
                if e == 1:
                    factors.append(v)
                elif e > 1:
                    factors.append("%s^%d" % (v, e))
            cs = str(c)
            if factors and cs == "1":
                parts.append("*".join(factors))
            elif factors and cs == "-1":
                parts.append("-" + "*".join(factors))
            elif factors:
                if "+" in cs or ("-" in cs[1:]):
                    cs = "(%s)" % cs
                parts.append(cs + "*" + "*".join(factors))
            else:
                parts.append(cs)
        out = parts[0]
        for p in parts[1:]:
            out += p if p.startswith("-") else "+" + p
        return out

    __repr__ = __str__


# ---------------------------------------------------------------------------
# division / normal form
# ---------------------------------------------------------------------------


def normal_form(p: SparsePoly, basis: Sequence[SparsePoly], order: MonomialOrder) -> SparsePoly:
    """Fully reduced remainder of p modulo basis under the order."""
    dom = p.domain
    key = order.key
    leads = [(g, g.leading(order)) for g in basis if not g.is_zero()]
    work = dict(p.terms)
    out: Dict[Monomial, object] = {}
    while work:
        m = max(work, key=key)
        c = work.pop(m)
        for g, (gm, gc) in leads:
            q = _mdiv(m, gm)
            if q is not None:
                f = dom.neg(dom.mul(c, dom.inv(gc)))
                for m2, c2 in g.terms.items():
                    mm = _mmul(m2, q)
                    cc = dom.mul(c2, f)
                    if mm in work:
                        s = dom.add(work[mm], cc)
                        if dom.is_zero(s):
                            del work[mm]
                        else:
                            work[mm] = s
                    elif mm == m:
                        pass  # cancelled the leading term
                    else:
                        work[mm] = cc
                break
        else:
            out[m] = c
    return SparsePoly(p.variables, out, dom)


def division_witness(p: SparsePoly, basis: Sequence[SparsePoly], order: MonomialOrder):
    """Return (quotients, remainder) with p = sum q_i g_i + r."""
    dom = p.domain
    key = order.key
    leads = [(g, g.leading(order)) for g in basis]
    quotients = [SparsePoly.zero(p.variables, dom) for _ in basis]
    rem = SparsePoly.zero(p.variables, dom)
    work = SparsePoly(p.variables, dict(p.terms), dom)
    while not work.is_zero():
        m = max(work.terms, key=key)
        c = work.terms[m]
        for i, (g, (gm, gc)) in enumerate(leads):
            q = _mdiv(m, gm)
            if q is not None:
                f = dom.mul(c, dom.inv(gc))
                quotients[i] = quotients[i] + SparsePoly(p.variables, {q: f}, dom)
                work = work - g.scale_monomial(f, q)
                break
        else:
            rem = rem + SparsePoly(p.variables, {m: c}, dom)
            work = work - SparsePoly(p.variables, {m: c}, dom)
    return quotients, rem


# ---------------------------------------------------------------------------
# Buchberger
# ---------------------------------------------------------------------------


class _DeadlineHit(Exception):
    pass


class GroebnerBudgetExceeded(RuntimeError):
    def __init__(self, partial_basis, steps):
        super().__init__("Groebner step budget exceeded after %d reductions" % steps)
        self.partial_basis = partial_basis
        self.steps = steps


class BudgetPool:
    """Shared work budget for a whole solve: step count plus a deadline."""

    def __init__(self, steps: int | None = None, seconds: float | None = None):
        import time as _time

        self.remaining = steps
        self.deadline = (_time.monotonic() + seconds) if seconds else None

    def allocation(self, want: int) -> int:
        if self.remaining is None:
            return want
        return min(want, max(self.remaining, 0))

    def charge(self, used: int):
        if self.remaining is not None:
            self.remaining -= used

    def exhausted(self) -> bool:
        import time as _time

        if self.remaining is not None and self.remaining <= 0:
            return True
        return self.deadline is not None and _time.monotonic() > self.deadline


def s_polynomial(f: SparsePoly, g: SparsePoly, order: MonomialOrder) -> SparsePoly:
    dom = f.domain
    (mf, cf), (mg, cg) = f.leading(order), g.leading(order)
    lcm = _mlcm(mf, mg)
    return f.scale_monomial(dom.inv(cf), _mdiv(lcm, mf)) - g.scale_monomial(
        dom.inv(cg), _mdiv(lcm, mg)
    )


def groebner(generators: Sequence[SparsePoly], order: MonomialOrder = DEGREVLEX,
             budget: int = 20000, deadline: float | None = None,
             stats: Dict[str, int] | None = None,
             coeff_bits_cap: int | None = 40000) -> List[SparsePoly]:
    """Reduced Groebner basis by Buchberger with normal pair selection.

    Raises GroebnerBudgetExceeded (carrying the partial basis) if more than
    `budget` S-polynomial reductions are attempted, a coefficient exceeds the
    bit-size cap (the deterministic signature of a blow-up), or the optional
    wall-clock deadline (time.monotonic value) passes.  When given, `stats`
    receives the number of reductions performed under the key 'steps'.
    """
    import heapq
    import time as _time

    gens = [g for g in generators if not g.is_zero()]
    if not gens:
        return []
    dom = gens[0].domain
    variables = gens[0].variables
    rational_path = dom is QQ
    key = order.key

    def lead_of(terms):
        m = max(terms, key=key)
        return m, terms[m]

    def reduce_terms(work, basis_terms, leads):
        # fully reduce the dict `work` against the basis; returns remainder
        out = {}
        ticks = 0
        while work:
            ticks += 1
            if deadline is not None and ticks % 32 == 0 and _time.monotonic() > deadline:
                raise _DeadlineHit()
            m = max(work, key=key)
            c = work.pop(m)
            hit = False
            for bt, (gm, gc) in zip(basis_terms, leads):
                q = _mdiv(m, gm)
                if q is not None:
                    if rational_path:
                        f = -c / gc
                        for m2, c2 in bt.items():
                            mm = _mmul(m2, q)
                            if mm == m:
                                continue
                            s = work.get(mm, 0) + c2 * f
                            if s:
                                work[mm] = s
                            else:
                                work.pop(mm, None)
                    else:
                        f = dom.neg(dom.mul(c, dom.inv(gc)))
                        for m2, c2 in bt.items():
                            mm = _mmul(m2, q)
                            if mm == m:
                                continue
                            s = dom.add(work.get(mm, dom.zero), dom.mul(c2, f))
                            if dom.is_zero(s):
                                work.pop(mm, None)
                            else:
                                work[mm] = s
                    hit = True
                    break
            if not hit:
                out[m] = c
        return out

    basis_terms: List[Dict[Monomial, object]] = []
    leads: List[Tuple[Monomial, object]] = []
    heap: List[Tuple[int, int, int, int]] = []
    for g in gens:
        basis_terms.append(dict(g.terms))
        leads.append(lead_of(g.terms))
    for i in range(len(basis_terms)):
        for j in range(i):
            lcm = _mlcm(leads[i][0], leads[j][0])
            heapq.heappush(heap, (sum(lcm), j, i))
    steps = 0
    try:
        while heap:
            _, i, j = heapq.heappop(heap)
            mi, mj = leads[i][0], leads[j][0]
            lcm = _mlcm(mi, mj)
            if all(a + b == l for a, b, l in zip(mi, mj, lcm)):
                continue  # coprime leading monomials
            steps += 1
            if stats is not None:
                stats["steps"] = steps
            if steps > budget or (deadline is not None and steps % 8 == 0
                                  and _time.monotonic() > deadline):
                partial = [SparsePoly(variables, t, dom) for t in basis_terms]
                raise GroebnerBudgetExceeded(partial, steps)
            # S-polynomial as a raw dict
            (gm1, gc1), (gm2, gc2) = leads[i], leads[j]
            q1, q2 = _mdiv(lcm, gm1), _mdiv(lcm, gm2)
            work: Dict[Monomial, object] = {}
            if rational_path:
                f1 = 1 / gc1
                for m2, c2 in basis_terms[i].items():
                    work[_mmul(m2, q1)] = c2 * f1
                f2 = -1 / gc2
                for m2, c2 in basis_terms[j].items():
                    mm = _mmul(m2, q2)
                    sv = work.get(mm, 0) + c2 * f2
                    if sv:
                        work[mm] = sv
                    else:
                        work.pop(mm, None)
            else:
                f1 = dom.inv(gc1)
                for m2, c2 in basis_terms[i].items():
                    work[_mmul(m2, q1)] = dom.mul(c2, f1)
                f2 = dom.neg(dom.inv(gc2))
                for m2, c2 in basis_terms[j].items():
                    mm = _mmul(m2, q2)
                    sv = dom.add(work.get(mm, dom.zero), dom.mul(c2, f2))
                    if dom.is_zero(sv):
                        work.pop(mm, None)
                    else:
                        work[mm] = sv
            s_terms = reduce_terms(work, basis_terms, leads)
            if s_terms:
                if rational_path and coeff_bits_cap is not None:
                    bits = max(c.numerator.bit_length() + c.denominator.bit_length()
                               for c in s_terms.values())
                    if bits > coeff_bits_cap:
                        partial = [SparsePoly(variables, t, dom) for t in basis_terms]
                        raise GroebnerBudgetExceeded(partial, steps)
                basis_terms.append(s_terms)
                leads.append(lead_of(s_terms))
                k = len(basis_terms) - 1
                mk = leads[k][0]
                for m in range(k):
                    lcm = _mlcm(leads[m][0], mk)
                    heapq.heappush(heap, (sum(lcm), m, k))
    except _DeadlineHit:
        partial = [SparsePoly(variables, t, dom) for t in basis_terms]
        raise GroebnerBudgetExceeded(partial, steps)
    basis = [SparsePoly(variables, t, dom) for t in basis_terms]
    return _interreduce(basis, order)


def _interreduce(basis: List[SparsePoly], order: MonomialOrder) -> List[SparsePoly]:
    # drop redundant generators, then tail-reduce and normalize
    key = order.key
    kept: List[SparsePoly] = []
    lead_ms = [g.leading(order)[0] for g in basis]
    for i, g in enumerate(basis):
        mi = lead_ms[i]
        redundant = False
        for j, mj in enumerate(lead_ms):
            if i != j and _mdiv(mi, mj) is not None:
                if _mdiv(mj, mi) is not None and j > i:
                    continue  # equal leading monomials: keep the earlier one
                redundant = True
                break
        if not redundant:
            kept.append(g)
    out = []
    for i, g in enumerate(kept):
        others = kept[:i] + kept[i + 1:]
        r = normal_form(g, others, order) if others else g
        if not r.is_zero():
            out.append(r.monic(order))
    out.sort(key=lambda g: key(g.leading(order)[0]))
    return out


def is_groebner(basis: Sequence[SparsePoly], order: MonomialOrder) -> bool:
    """Buchberger criterion as a post-check: all S-polynomials reduce to 0."""
    basis = [g for g in basis if not g.is_zero()]
    for i in range(len(basis)):
        for j in range(i):
            s = s_polynomial(basis[i], basis[j], order)
            if not normal_form(s, basis, order).is_zero():
                return False
    return True


def contains_one(basis: Sequence[SparsePoly]) -> bool:
    return any(not g.is_zero() and set(g.terms) == {(0,) * len(g.variables)} for g in basis)


# ---------------------------------------------------------------------------
# univariate utilities and Sturm sequences
# ---------------------------------------------------------------------------


def univariate_coeffs(p: SparsePoly, name: str) -> List:
    """Dense coefficient list [c0, c1, ...] of p viewed in `name`.

    All other variables must be absent.
    """
    idx = p.variables.index(name)
    for m in p.terms:
        for i, e in enumerate(m):
            if e and i != idx:
                raise ValueError("polynomial is not univariate in %s: %s" % (name, p))
    deg = p.degree_in(name)
    out = [p.domain.zero] * (deg + 1)
    for m, c in p.terms.items():
        out[m[idx]] = c
    return out


def _poly_trim(c: List, dom) -> List:
    while c and dom.is_zero(c[-1]):
        c.pop()
    return c


def _poly_rem(a: List, b: List, dom) -> List:
    """Remainder of dense univariate division a mod b."""
    a = list(a)
    db, lb = len(b) - 1, b[-1]
    inv_lb = dom.inv(lb)
    while len(a) - 1 >= db and a:
        f = dom.mul(a[-1], inv_lb)
        shift = len(a) - 1 - db
        for i, bc in enumerate(b):
            a[shift + i] = dom.add(a[shift + i], dom.neg(dom.mul(f, bc)))
        _poly_trim(a, dom)
        if not a:
            break
    return a


def _poly_eval_sign_at(c: List, x, dom) -> int:
    acc = dom.zero
    for coeff in reversed(c):
        acc = dom.add(dom.mul(acc, x), coeff)
    return dom.sign(acc)


def _sign_at_inf(c: List, dom, positive: bool) -> int:
    s = dom.sign(c[-1])
    if positive or (len(c) - 1) % 2 == 0:
        return s
    return -s


def sturm_chain(coeffs: List, dom) -> List[List]:
    p0 = _poly_trim(list(coeffs), dom)
    if len(p0) <= 1:
        return [p0] if p0 else []
    p1 = [dom.mul(c, dom.coerce(i)) for i, c in enumerate(p0)][1:]
    _poly_trim(p1, dom)
    chain = [p0, p1]
    while len(chain[-1]) > 0:
        r = _poly_rem(chain[-2], chain[-1], dom)
        if not r:
            break
        chain.append([dom.neg(c) for c in r])
    return chain


def _variations(signs: List[int]) -> int:
    signs = [s for s in signs if s != 0]
    return sum(1 for a, b in zip(signs, signs[1:]) if a * b < 0)


def real_root_count(p: SparsePoly, name: str, lo=None, hi=None) -> int:
    """Exact number of distinct real roots of p in (lo, hi].

    lo=None means -infinity, hi=None means +infinity.  Sturm's theorem; the
    coefficient domain needs an exact sign.  Roots exactly at `lo` are not
    counted, roots at `hi` are.
    """
    dom = p.domain
    coeffs = univariate_coeffs(p, name)
    # squarefree-ness is not required for the count of distinct roots
    chain = sturm_chain(coeffs, dom)
    if not chain or len(chain[0]) == 0:
        raise ValueError("zero polynomial")
    if len(chain[0]) == 1:
        return 0

    def sigs(point, positive_inf):
        out = []
        for c in chain:
            if point is None:
                out.append(_sign_at_inf(c, dom, positive_inf))
            else:
                out.append(_poly_eval_sign_at(c, dom.coerce(point), dom))
        return out

    v_lo = _variations(sigs(lo, False))
    v_hi = _variations(sigs(hi, True))
    return v_lo - v_hi
