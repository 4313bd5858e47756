"""Splitting types of the pulled-back tangent bundles along a rational curve.

For a verified strip extended to a rational curve u of degree k, the ambient
tangent bundle pulls back to a sum of four line bundles whose twists are read
off a minimal generating matrix of the syzygies of the five components (the
Euler presentation).  Composing with the differential of the defining quintic
exhibits the normal direction, and the syzygies of that row give the
three-term splitting of the tangent bundle of the hypersurface, which has
degree zero.  An independent section-counting oracle cross-checks every
splitting.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import List, Optional, Tuple

from .homogeneous import (
    DegenerateMapError,
    HomPoly2,
    graded_kernel,
    hom_gcd,
    kernel_basis,
    minimal_syzygies,
    monomial_basis,
    solve_linear,
)
from .strips import SphereMap
from .tower import FieldElement, ONE as KONE, ZERO as KZERO, rational


class InconsistentSystemError(ValueError):
    pass


@dataclass
class GradedMatrix:
    """Matrix of forms with row and column twists; entry (i, j) is
    homogeneous of degree row_twists[i] - col_twists[j] or zero."""

    entries: List[List[Optional[HomPoly2]]]
    row_twists: List[int]
    col_twists: List[int]

    def shape(self) -> Tuple[int, int]:
        return (len(self.entries), len(self.entries[0]) if self.entries else 0)

    def check_graded(self) -> bool:
        for i, row in enumerate(self.entries):
            for j, e in enumerate(row):
                if e is None or e.is_zero():
                    continue
                if e.degree != self.row_twists[i] - self.col_twists[j]:
                    return False
        return True


@dataclass(frozen=True)
class SplittingType:
    degrees: Tuple[int, ...]  # sorted ascending

    def __str__(self):
        return "O(" + ")+O(".join(str(d) for d in self.degrees) + ")"

    def h0(self, twist: int = 0) -> int:
        return sum(max(0, d + twist + 1) for d in self.degrees)


def euler_syzygy(u: SphereMap) -> GradedMatrix:
    """Minimal syzygy matrix of the five components.

    The rows generate all relations among the components; with k the common
    degree, a relation row of degree e pairs with a twist k + e summand of
    the pulled-back ambient tangent bundle.
    """
    comps = list(u.components)
    if hom_gcd([p for p in comps if not p.is_zero()]).degree != 0:
        raise DegenerateMapError("components share a common factor")
    gens, shifts = minimal_syzygies(comps)
    k = u.degree
    rows = []
    row_twists = []
    for tup, s in zip(gens, shifts):
        rows.append(list(tup))
        row_twists.append(s)  # shift s = k + relation degree
    # verify each row annihilates u
    for row in rows:
        acc = None
        for entry, comp in zip(row, comps):
            if entry is None or entry.is_zero():
                continue
            term = entry * comp
            acc = term if acc is None else acc + term
        if acc is not None and not acc.is_zero():
            raise InconsistentSystemError("syzygy row does not annihilate the map")
    return GradedMatrix(rows, [s for s in shifts], [k] * 5)


def splitting_tcp4(u: SphereMap, syz: Optional[GradedMatrix] = None) -> SplittingType:
    """Twists of the pulled-back ambient tangent bundle: k + relation degree."""
    if syz is None:
        syz = euler_syzygy(u)
    k = u.degree
    # a relation of entry degree e pairs with the summand O(k + e), and the
    # syzygy shift is exactly k + e
    degrees = tuple(sorted(syz.row_twists))
    total = sum(degrees)
    if total != 5 * k:
        raise InconsistentSystemError("ambient splitting degrees sum to %d, not 5k" % total)
    return SplittingType(degrees)


def normal_data(u: SphereMap, syz: Optional[GradedMatrix] = None):
    """Row vector composing the ambient presentation with the quintic
    differential: the unique graded solution of row * M = 5 u_i^4."""
    if syz is None:
        syz = euler_syzygy(u)
    k = u.degree
    d_twists = list(syz.row_twists)
    target = [u.components[i] ** 4 * rational(5) for i in range(5)]
    # unknowns: coefficients of a_row[i], deg 5k - d_twists[i]
    cols = []
    for i, dt in enumerate(d_twists):
        deg = 5 * k - dt
        if deg < 0:
            raise InconsistentSystemError("negative degree in the normal row")
        cols.append(deg)
    lin = []
    rhs = []
    for j in range(5):
        # a_i has degree 5k - d_i; M[i][j] has degree d_i - k; the product
        # and the right-hand side both live in degree 4k
        out_deg = 4 * k
        for t in range(out_deg + 1):
            eq = []
            for i, cdeg in enumerate(cols):
                entry = syz.entries[i][j]
                for ct in range(cdeg + 1):
                    if entry is None or entry.is_zero():
                        eq.append(KZERO)
                        continue
                    shift = t - ct
                    if 0 <= shift <= entry.degree:
                        eq.append(entry.coeffs[shift])
                    else:
                        eq.append(KZERO)
            lin.append(eq)
            tj = target[j]
            rhs.append(tj.coeffs[t] if 0 <= t <= tj.degree else KZERO)
    sol = solve_linear(lin, rhs)
    if sol is None:
        raise InconsistentSystemError("normal row system is inconsistent")
    row = []
    idx = 0
    for cdeg in cols:
        coeffs = sol[idx: idx + cdeg + 1]
        idx += cdeg + 1
        row.append(HomPoly2(cdeg, coeffs))
    # verification: the composition reproduces the quintic differential
    for j in range(5):
        acc = None
        for i in range(len(row)):
            entry = syz.entries[i][j]
            if entry is None or entry.is_zero() or row[i].is_zero():
                continue
            term = row[i] * entry
            acc = term if acc is None else acc + term
        expect = target[j]
        if acc is None:
            if not expect.is_zero():
                raise InconsistentSystemError("normal row drops a component")
        elif not (acc - expect).is_zero():
            raise InconsistentSystemError("normal row composition mismatch")
    return row


def splitting_tx(u: SphereMap, syz: Optional[GradedMatrix] = None):
    """Splitting of the pulled-back hypersurface tangent bundle, plus the
    syzygy matrix of the normal row.  The three twists sum to zero."""
    if syz is None:
        syz = euler_syzygy(u)
    k = u.degree
    row = normal_data(u, syz)
    d_twists = list(syz.row_twists)
    gens, shifts = minimal_syzygies(row)
    # a generator of shift s has entries of degree s - deg(row_i)
    # and corresponds to a summand O(f) with f = d_i - entry degree:
    # f = d_i - (s - (5k - d_i)) = 5k - s
    degrees = tuple(sorted(5 * k - s for s in shifts))
    if sum(degrees) != 0:
        raise InconsistentSystemError("tangent splitting degrees sum to %d" % sum(degrees))
    cols = []
    for tup, s in zip(gens, shifts):
        col = []
        for i in range(4):
            col.append(tup[i])
        cols.append(col)
    m2 = GradedMatrix(
        [[cols[jj][ii] for jj in range(len(cols))] for ii in range(4)],
        row_twists=d_twists,
        col_twists=[5 * k - s for s in shifts],
    )
    # exactness witness: row * M2 = 0
    for jj in range(len(cols)):
        acc = None
        for ii in range(4):
            entry = m2.entries[ii][jj]
            if entry is None or entry.is_zero():
                continue
            term = row[ii] * entry
            acc = term if acc is None else acc + term
        if acc is not None and not acc.is_zero():
            raise InconsistentSystemError("tangent syzygy does not annihilate the row")
    return SplittingType(degrees), m2


def h0_oracle(matrix: GradedMatrix, twist: int, presentation: str = "kernel") -> int:
    """Dimension of the twisted global sections of the sheaf presented by
    the matrix, by direct graded linear algebra.

    kernel: sections of ker( (+) O(col_twists) -> (+) O(row_twists) ),
    i.e. tuples of forms of degrees col_twists[j] + twist annihilated by the
    matrix.  cokernel: dimension of coker on global sections; exact for
    twists where the first sheaf cohomology of the source vanishes.
    """
    if presentation == "kernel":
        col_deg = [c + twist for c in matrix.col_twists]
        row_deg = [r + twist for r in matrix.row_twists]
        kern = graded_kernel(matrix.entries, row_deg, col_deg)
        return len(kern)
    if presentation == "cokernel":
        src = sum(max(0, c + twist + 1) for c in matrix.col_twists)
        # rank of the matrix on global sections
        cols = []
        for j, cd in enumerate(matrix.col_twists):
            for t in range(max(0, cd + twist + 1)):
                cols.append((j, t))
        rows = []
        for i, rd in enumerate(matrix.row_twists):
            for t in range(max(0, rd + twist + 1)):
                rows.append((i, t))
        lin = []
        for (j, t) in cols:
            colvec = []
            for (i, t2) in rows:
                entry = matrix.entries[i][j]
                if entry is None or entry.is_zero():
                    colvec.append(KZERO)
                else:
                    shift = t2 - t
                    colvec.append(entry.coeffs[shift] if 0 <= shift <= entry.degree else KZERO)
            lin.append(colvec)
        # rank via kernel dimension
        nul = len(kernel_basis(lin)) if lin else 0
        rank = len(cols) - nul if lin else 0
        return len(rows) - rank
    raise ValueError("presentation must be 'kernel' or 'cokernel'")
