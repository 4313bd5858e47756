"""Homogeneous polynomials in two variables and graded linear algebra.

HomPoly2 stores a dense coefficient list over the tower (or, for parametric
strip families, over a polynomial ring in the family parameters); coefficient
index i multiplies Z0^i * Z1^(degree-i).  The affine coordinate is z = Z0/Z1,
so the affine polynomial sum(c_j z^j) of degree <= k homogenizes to
coefficients c_j at index j.

The module also provides exact Gaussian elimination over the tower, kernels
of graded matrices degree by degree, minimal syzygy generators of a tuple of
forms, and a small homogeneous rational function field used by the cokernel
computation.
"""

from __future__ import annotations

from typing import List, Optional, Sequence, Tuple

from .tower import FieldElement, ONE as KONE, ZERO as KZERO, gamma_pow


class HomPoly2:
    """Homogeneous polynomial in Z0, Z1 of fixed degree."""

    __slots__ = ("degree", "coeffs")

    def __init__(self, degree: int, coeffs: Sequence):
        if len(coeffs) != degree + 1:
            raise ValueError("need %d coefficients, got %d" % (degree + 1, len(coeffs)))
        self.degree = degree
        self.coeffs = list(coeffs)

    # -- constructors ----------------------------------------------------------

    @staticmethod
    def zeros(degree: int, czero=KZERO) -> "HomPoly2":
        return HomPoly2(degree, [czero] * (degree + 1))

    @staticmethod
    def monomial(degree: int, i: int, c=KONE, czero=KZERO) -> "HomPoly2":
        p = HomPoly2.zeros(degree, czero)
        p.coeffs[i] = c
        return p

    @staticmethod
    def from_affine(coeffs: Sequence, degree: int, czero=KZERO) -> "HomPoly2":
        """Affine polynomial sum c_j z^j homogenized to the given degree."""
        out = [czero] * (degree + 1)
        for j, c in enumerate(coeffs):
            out[j] = c
        return HomPoly2(degree, out)

    # -- predicates ------------------------------------------------------------

    def is_zero(self) -> bool:
        return all(_czero(c) for c in self.coeffs)

    def __eq__(self, other):
        if not isinstance(other, HomPoly2):
            return NotImplemented
        if self.degree != other.degree:
            return False
        return all(
            _czero(a - b) for a, b in zip(self.coeffs, other.coeffs)
        )

    def __hash__(self):
        return hash((self.degree, tuple(str(c) for c in self.coeffs)))

    # -- arithmetic --------------------------------------------------------------

    def __add__(self, other: "HomPoly2") -> "HomPoly2":
        if self.degree != other.degree:
            raise ValueError("degree mismatch in sum")
        return HomPoly2(self.degree, [a + b for a, b in zip(self.coeffs, other.coeffs)])

    def __sub__(self, other: "HomPoly2") -> "HomPoly2":
        if self.degree != other.degree:
            raise ValueError("degree mismatch in difference")
        return HomPoly2(self.degree, [a - b for a, b in zip(self.coeffs, other.coeffs)])

    def __neg__(self) -> "HomPoly2":
        return HomPoly2(self.degree, [-a for a in self.coeffs])

    def __mul__(self, other):
        if isinstance(other, HomPoly2):
            deg = self.degree + other.degree
            zero = self.coeffs[0] * 0 if self.coeffs else KZERO
            out = [zero] * (deg + 1)
            for i, a in enumerate(self.coeffs):
                if _czero(a):
                    continue
                for j, b in enumerate(other.coeffs):
                    if _czero(b):
                        continue
                    out[i + j] = out[i + j] + a * b
            return HomPoly2(deg, out)
        return HomPoly2(self.degree, [a * other for a in self.coeffs])

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "HomPoly2":
        result = HomPoly2(0, [_cone_like(self)])
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    # -- specializations -----------------------------------------------------------

    def rotate_z(self, s: FieldElement) -> "HomPoly2":
        """Substitute Z0 -> s * Z0 (affine z -> s z)."""
        out = []
        acc = _cone_like(self)
        for i, c in enumerate(self.coeffs):
            out.append(c * acc)
            acc = acc * s
        return HomPoly2(self.degree, out)

    def map_coeffs(self, f) -> "HomPoly2":
        return HomPoly2(self.degree, [f(c) for c in self.coeffs])

    def value_at_zero(self):
        """Value at affine z = 0, i.e. [0:1]."""
        return self.coeffs[0]

    def value_at_infinity(self):
        """Leading coefficient, i.e. the value at [1:0]."""
        return self.coeffs[-1]

    def evaluate(self, z0, z1):
        acc = None
        for i, c in enumerate(self.coeffs):
            term = c * (z0 ** i) * (z1 ** (self.degree - i))
            acc = term if acc is None else acc + term
        return acc

    def __str__(self):
        parts = []
        for i in range(self.degree, -1, -1):
            c = self.coeffs[i]
            if _czero(c):
                continue
            mono = []
            if i:
                mono.append("Z0" if i == 1 else "Z0^%d" % i)
            if self.degree - i:
                e = self.degree - i
                mono.append("Z1" if e == 1 else "Z1^%d" % e)
            cs = str(c)
            if mono and cs == "1":
                parts.append("*".join(mono))
            elif mono and cs == "-1":
                parts.append("-" + "*".join(mono))
            elif mono:
                if "+" in cs or "-" in cs[1:]:
                    cs = "(%s)" % cs
                parts.append(cs + "*" + "*".join(mono))
            else:
                parts.append(cs)
        if not parts:
            return "0"
        out = parts[0]
        for p in parts[1:]:
            out += p if p.startswith("-") else "+" + p
        return out

    __repr__ = __str__


def _czero(c) -> bool:
    if isinstance(c, FieldElement):
        return c.is_zero()
    return c.is_zero() if hasattr(c, "is_zero") else not c


def _cone_like(p: HomPoly2):
    c = p.coeffs[0]
    if isinstance(c, FieldElement):
        return KONE
    # SparsePoly coefficients
    return type(c).constant(c.variables, c.domain.one, c.domain)


def rotation_scalar() -> FieldElement:
    return gamma_pow(1)


# ---------------------------------------------------------------------------
# gcd of homogeneous forms over the tower
# ---------------------------------------------------------------------------


def _strip_z0(p: HomPoly2) -> Tuple[int, List[FieldElement]]:
    """Write p = Z1^a * f(z) with f a dense affine polynomial in z = Z0/Z1.

    Returns (z0_множитель, affine coefficient list) where the Z0-power factor
    has been kept: actually returns the affine coefficients including trailing
    zeros removed.
    """
    coeffs = list(p.coeffs)
    while coeffs and coeffs[-1].is_zero():
        coeffs.pop()
    return len(p.coeffs) - len(coeffs), coeffs


def hom_gcd(ps: Sequence[HomPoly2]) -> HomPoly2:
    """Greatest common divisor of homogeneous forms over the tower (monic)."""
    ps = [p for p in ps if not p.is_zero()]
    if not ps:
        raise ValueError("gcd of zero forms")
    # common power of Z1 (shared leading zero-range of affine coeffs) and Z0
    z0_pows = []
    affines = []
    for p in ps:
        coeffs = list(p.coeffs)
        lead_zeros = 0
        while coeffs and coeffs[0].is_zero():
            coeffs.pop(0)
            lead_zeros += 1
        trail = 0
        while coeffs and coeffs[-1].is_zero():
            coeffs.pop()
            trail += 1
        z0_pows.append(lead_zeros)
        affines.append(coeffs)
    z0_common = min(z0_pows)
    z1_common = min(
        p.degree - z0p - (len(aff) - 1) for p, z0p, aff in zip(ps, z0_pows, affines)
    )
    g = affines[0]
    for nxt in affines[1:]:
        g = _gcd_dense(g, nxt)
        if len(g) == 1:
            break
    total = z0_common + z1_common + len(g) - 1
    out = HomPoly2.zeros(total, KZERO)
    for i, c in enumerate(g):
        out.coeffs[z0_common + i] = c
    return out


def _gcd_dense(a: List[FieldElement], b: List[FieldElement]) -> List[FieldElement]:
    a, b = list(a), list(b)
    while b:
        # a mod b
        while len(a) >= len(b):
            f = a[-1] / b[-1]
            shift = len(a) - len(b)
            for i, bc in enumerate(b):
                a[shift + i] = a[shift + i] - f * bc
            while a and a[-1].is_zero():
                a.pop()
            if not a:
                break
        a, b = b, a
    inv = a[-1].inverse()
    return [c * inv for c in a]


# ---------------------------------------------------------------------------
# Gaussian elimination over the tower
# ---------------------------------------------------------------------------


def kernel_basis(matrix: List[List[FieldElement]]) -> List[List[FieldElement]]:
    """Kernel basis of a matrix over the tower (rows = equations)."""
    if not matrix:
        return []
    ncols = len(matrix[0])
    rows = [list(r) for r in matrix]
    pivots: List[Tuple[int, int]] = []  # (row, col)
    r = 0
    for col in range(ncols):
        piv = None
        for i in range(r, len(rows)):
            if not rows[i][col].is_zero():
                piv = i
                break
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = rows[r][col].inverse()
        rows[r] = [x * inv for x in rows[r]]
        for i in range(len(rows)):
            if i != r and not rows[i][col].is_zero():
                f = rows[i][col]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        pivots.append((r, col))
        r += 1
        if r == len(rows):
            break
    pivot_cols = {c for _, c in pivots}
    free_cols = [c for c in range(ncols) if c not in pivot_cols]
    basis = []
    for fc in free_cols:
        vec = [KZERO] * ncols
        vec[fc] = KONE
        for pr, pc in pivots:
            vec[pc] = -rows[pr][fc]
        basis.append(vec)
    return basis


def solve_linear(matrix: List[List[FieldElement]], rhs: List[FieldElement]):
    """One solution x of matrix * x = rhs over the tower, or None."""
    if not matrix:
        return [] if all(b.is_zero() for b in rhs) else None
    ncols = len(matrix[0])
    rows = [list(r) + [b] for r, b in zip(matrix, rhs)]
    pivots = []
    r = 0
    for col in range(ncols):
        piv = None
        for i in range(r, len(rows)):
            if not rows[i][col].is_zero():
                piv = i
                break
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = rows[r][col].inverse()
        rows[r] = [x * inv for x in rows[r]]
        for i in range(len(rows)):
            if i != r and not rows[i][col].is_zero():
                f = rows[i][col]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        pivots.append((r, col))
        r += 1
        if r == len(rows):
            break
    for i in range(r, len(rows)):
        if not rows[i][ncols].is_zero():
            return None
    x = [KZERO] * ncols
    for pr, pc in pivots:
        x[pc] = rows[pr][ncols]
    return x


# ---------------------------------------------------------------------------
# graded kernels and minimal syzygies
# ---------------------------------------------------------------------------


def monomial_basis(degree: int) -> List[HomPoly2]:
    return [HomPoly2.monomial(degree, i) for i in range(degree + 1)] if degree >= 0 else []


def graded_kernel(matrix: List[List[HomPoly2]], row_degrees: List[int],
                  col_degrees: List[int]) -> List[List[HomPoly2]]:
    """Kernel of a graded matrix of forms at the given column degrees.

    matrix[i][j] is homogeneous of degree row_degrees[i] - col_degrees[j]
    whenever col_degrees[j] <= row_degrees[i] (entries must be zero
    otherwise).  Returns a basis of tuples v (one HomPoly2 of degree
    col_degrees[j] per column, possibly the zero form) with M v = 0.
    """
    cols: List[Tuple[int, int]] = []  # (column index, monomial index)
    for j, cd in enumerate(col_degrees):
        for t in range(cd + 1):
            cols.append((j, t))
    if not cols:
        return []
    lin: List[List[FieldElement]] = []
    for i, row in enumerate(matrix):
        rd = row_degrees[i]
        for out_t in range(rd + 1):
            eq = []
            for (j, t) in cols:
                entry = row[j]
                if entry is None or entry.is_zero() or col_degrees[j] > rd:
                    eq.append(KZERO)
                    continue
                # coefficient of Z0^out_t in entry * Z0^t Z1^(cd - t)
                shift = out_t - t
                if 0 <= shift <= entry.degree:
                    eq.append(entry.coeffs[shift])
                else:
                    eq.append(KZERO)
            lin.append(eq)
    basis = kernel_basis(lin)
    out = []
    for vec in basis:
        tup = [HomPoly2.zeros(cd) if cd >= 0 else None for cd in col_degrees]
        for (j, t), c in zip(cols, vec):
            tup[j].coeffs[t] = tup[j].coeffs[t] + c
        out.append(tup)
    return out


class DegenerateMapError(ValueError):
    pass


def minimal_syzygies(forms: List[HomPoly2], max_shift: Optional[int] = None):
    """Minimal generators of the syzygy module of homogeneous forms.

    forms b_i have degrees beta_i; a syzygy of shift s is a tuple v with
    deg(v_i) = s - beta_i (v_i = 0 where s < beta_i) and sum v_i b_i = 0.
    Returns (generators, shifts) where generators is a list of tuples of
    HomPoly2 (entries of degree s - beta_i, or None when s < beta_i).

    Expects the forms to have no common factor; generation stops when m-1
    independent generators with sum(shifts) = sum(beta_i) are found, which is
    the rank and first-Chern-class bookkeeping for the kernel bundle of
    (+) O(-beta_i) -> O over the projective line.
    """
    m = len(forms)
    betas = [f.degree for f in forms]
    target_count = m - 1
    target_sum = sum(betas)
    if max_shift is None:
        max_shift = target_sum + max(betas) + 2
    gens: List[List[Optional[HomPoly2]]] = []
    shifts: List[int] = []
    s = min(betas)
    while s <= max_shift:
        col_degrees = [s - b for b in betas]
        matrix = [[forms[j] if col_degrees[j] >= 0 else None for j in range(m)]]
        kern = graded_kernel(matrix, [s], col_degrees)
        # span of old generators at shift s
        old_span: List[List[FieldElement]] = []
        ncoords = sum(cd + 1 for cd in col_degrees if cd >= 0)

        def flatten(tup) -> List[FieldElement]:
            flat = []
            for j, cd in enumerate(col_degrees):
                if cd < 0:
                    continue
                entry = tup[j]
                if entry is None:
                    flat.extend([KZERO] * (cd + 1))
                else:
                    flat.extend(entry.coeffs)
            return flat

        for g, gs in zip(gens, shifts):
            extra = s - gs
            if extra < 0:
                continue
            for t in range(extra + 1):
                mult = HomPoly2.monomial(extra, t)
                tup = [None if e is None else mult * e for e in g]
                # pad entries to degree col_degrees[j]
                padded = []
                for j, e in enumerate(tup):
                    if col_degrees[j] < 0:
                        padded.append(None)
                    elif e is None:
                        padded.append(HomPoly2.zeros(col_degrees[j]))
                    else:
                        padded.append(e)
                old_span.append(flatten(padded))
        # reduce new kernel vectors against the old span
        echelon: List[List[FieldElement]] = []

        def reduce_vec(vec: List[FieldElement]):
            vec = list(vec)
            for b in echelon:
                piv = next(i for i, x in enumerate(b) if not x.is_zero())
                if not vec[piv].is_zero():
                    f = vec[piv] * b[piv].inverse()
                    vec = [x - f * y for x, y in zip(vec, b)]
            return vec

        for vec in old_span:
            red = reduce_vec(vec)
            if any(not x.is_zero() for x in red):
                echelon.append(red)
        for tup in kern:
            flat = flatten(tup)
            red = reduce_vec(flat)
            if any(not x.is_zero() for x in red):
                echelon.append(red)
                gens.append([tup[j] if col_degrees[j] >= 0 else None for j in range(m)])
                shifts.append(s)
                if len(gens) == target_count and sum(shifts) == target_sum:
                    return gens, shifts
                if len(gens) > target_count or sum(shifts) > target_sum:
                    raise DegenerateMapError(
                        "syzygy module not of expected rank/degree; common factor?"
                    )
        s += 1
    raise DegenerateMapError("syzygy generation did not terminate; common factor?")


# ---------------------------------------------------------------------------
# homogeneous rational functions over the tower
# ---------------------------------------------------------------------------


class RatFunc:
    """Quotient of homogeneous forms; twist = deg(num) - deg(den)."""

    __slots__ = ("num", "den")

    def __init__(self, num: HomPoly2, den: HomPoly2):
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        self.num = num
        self.den = den

    @staticmethod
    def from_form(p: HomPoly2) -> "RatFunc":
        return RatFunc(p, HomPoly2(0, [KONE]))

    @staticmethod
    def zero() -> "RatFunc":
        return RatFunc(HomPoly2.zeros(0), HomPoly2(0, [KONE]))

    def is_zero(self) -> bool:
        return self.num.is_zero()

    @property
    def twist(self) -> int:
        return self.num.degree - self.den.degree

    def simplify(self) -> "RatFunc":
        if self.num.is_zero():
            return self
        g = hom_gcd([self.num, self.den])
        if g.degree == 0:
            return self
        num = _hom_exact_div(self.num, g)
        den = _hom_exact_div(self.den, g)
        return RatFunc(num, den)

    def __add__(self, other: "RatFunc") -> "RatFunc":
        if self.is_zero():
            return other
        if other.is_zero():
            if self.twist != other.twist and not self.num.is_zero():
                pass
            return self
        num = self.num * other.den + other.num * self.den
        return RatFunc(num, self.den * other.den).simplify()

    def __neg__(self) -> "RatFunc":
        return RatFunc(-self.num, self.den)

    def __sub__(self, other: "RatFunc") -> "RatFunc":
        return self + (-other)

    def __mul__(self, other) -> "RatFunc":
        if isinstance(other, RatFunc):
            return RatFunc(self.num * other.num, self.den * other.den).simplify()
        if isinstance(other, HomPoly2):
            return RatFunc(self.num * other, self.den).simplify()
        return RatFunc(self.num * other, self.den)

    __rmul__ = __mul__

    def inverse(self) -> "RatFunc":
        return RatFunc(self.den, self.num)

    def __truediv__(self, other: "RatFunc") -> "RatFunc":
        return self * other.inverse()

    def __eq__(self, other):
        if not isinstance(other, RatFunc):
            return NotImplemented
        return (self.num * other.den) == (other.num * self.den)

    def rotate_z(self, s: FieldElement) -> "RatFunc":
        return RatFunc(self.num.rotate_z(s), self.den.rotate_z(s))

    def map_coeffs(self, f) -> "RatFunc":
        return RatFunc(self.num.map_coeffs(f), self.den.map_coeffs(f))

    def as_form(self) -> HomPoly2:
        """Exact polynomial value (den must divide num)."""
        if self.num.is_zero():
            return HomPoly2.zeros(0)
        q = _hom_exact_div(self.num, self.den)
        return q

    def __str__(self):
        return "(%s)/(%s)" % (self.num, self.den)

    __repr__ = __str__


def _hom_exact_div(num: HomPoly2, den: HomPoly2) -> HomPoly2:
    """Exact division of homogeneous forms over the tower."""
    nz0, naff = _strip_leading(num)
    dz0, daff = _strip_leading(den)
    nz1 = dz1 = 0
    while naff and naff[-1].is_zero():
        naff.pop()
        nz1 += 1
    while daff and daff[-1].is_zero():
        daff.pop()
        dz1 += 1
    if nz1 < dz1:
        raise ValueError("inexact homogeneous division (Z1 power)")
    if nz0 < dz0:
        raise ValueError("inexact homogeneous division (Z0 power)")
    # dense division of the affine parts (z = Z0/Z1)
    qdeg_aff = len(naff) - len(daff)
    if qdeg_aff < 0:
        raise ValueError("inexact homogeneous division (degree)")
    q = [KZERO] * (qdeg_aff + 1)
    rem = list(naff)
    dd = len(daff) - 1
    for top in range(len(rem) - 1, dd - 1, -1):
        if rem[top].is_zero():
            continue
        f = rem[top] / daff[-1]
        shift = top - dd
        q[shift] = f
        for i, c in enumerate(daff):
            rem[shift + i] = rem[shift + i] - f * c
    if any(not c.is_zero() for c in rem):
        raise ValueError("inexact homogeneous division (remainder)")
    qdeg = num.degree - den.degree
    out = HomPoly2.zeros(qdeg)
    z0_extra = nz0 - dz0
    for i, c in enumerate(q):
        out.coeffs[z0_extra + i] = c
    return out


def _strip_leading(p: HomPoly2) -> Tuple[int, List[FieldElement]]:
    coeffs = list(p.coeffs)
    lead = 0
    while coeffs and coeffs[0].is_zero():
        coeffs.pop(0)
        lead += 1
    return lead, coeffs


def rat_solve(matrix: List[List[RatFunc]], rhs: List[RatFunc]):
    """Solve matrix * x = rhs over the homogeneous rational function field."""
    nrows = len(matrix)
    ncols = len(matrix[0]) if matrix else 0
    rows = [list(r) + [b] for r, b in zip(matrix, rhs)]
    pivots = []
    r = 0
    for col in range(ncols):
        piv = None
        for i in range(r, nrows):
            if not rows[i][col].is_zero():
                piv = i
                break
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = rows[r][col].inverse()
        rows[r] = [x * inv if not x.is_zero() else x for x in rows[r]]
        for i in range(nrows):
            if i != r and not rows[i][col].is_zero():
                f = rows[i][col]
                rows[i] = [x - f * y if not y.is_zero() else x for x, y in zip(rows[i], rows[r])]
        pivots.append((r, col))
        r += 1
    for i in range(r, nrows):
        if not rows[i][ncols].is_zero():
            return None
    x = [RatFunc.zero() for _ in range(ncols)]
    for pr, pc in pivots:
        x[pc] = rows[pr][ncols]
    return x
