"""Obstruction cokernels of lowest-energy strips.

The cokernel of the linearized operator at a strip is identified with the
holomorphic sections of the dual tangent bundle along the extended rational
curve that vanish at zero and infinity and are fixed by two finite symmetry
actions: an order-five action combining the domain rotation with the group
element, and an anti-linear involution from the real structure.  Sections are
manipulated through their presentations: a section in the split coordinates
of the dual bundle lifts (non-uniquely) to a tuple of rational functions
annihilating the curve components; the actions have exact formulas on the
lifted tuples, and the result is projected back to split coordinates.  The
dimension of the simultaneous fixed subspace is the (real) cokernel
dimension; zero means the strip is regular.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple

from .bundles import GradedMatrix, SplittingType, euler_syzygy, normal_data, splitting_tx
from .homogeneous import HomPoly2, RatFunc, rat_solve
from .strips import SphereMap, lambda_u
from .tower import FieldElement, ONE as KONE, ZERO as KZERO, gamma_pow


class LiftError(ValueError):
    pass


@dataclass
class SectionRep:
    """A section of the dual tangent bundle in both presentations."""

    splitting_coords: Tuple[Optional[HomPoly2], ...]  # per dual summand
    lift: Tuple[RatFunc, ...]  # five rational functions annihilating the map


class CokernelData:
    """Presentations and symmetry actions for one verified strip."""

    def __init__(self, u: SphereMap):
        self.u = u
        self.syz = euler_syzygy(u)
        self.normal_row = normal_data(u, self.syz)
        self.tx_splitting, self.m2 = splitting_tx(u, self.syz)
        self.dual_degrees = tuple(-d for d in self.m2.col_twists)
        self.lam = lambda_u(u)

    # -- bases ---------------------------------------------------------------

    def vanishing_sections_basis(self) -> List[Tuple[int, HomPoly2]]:
        """Monomial sections of the dual bundle vanishing at zero and
        infinity: for each dual summand of degree e >= 2 the interior
        monomials."""
        out = []
        for j, e in enumerate(self.dual_degrees):
            for i in range(1, e):
                out.append((j, HomPoly2.monomial(e, i)))
        return out

    def full_sections_basis(self) -> List[Tuple[int, HomPoly2]]:
        """All monomial sections (no endpoint conditions)."""
        out = []
        for j, e in enumerate(self.dual_degrees):
            for i in range(e + 1):
                out.append((j, HomPoly2.monomial(e, i)))
        return out

    # -- lifting -------------------------------------------------------------

    def lift_section(self, j: int, h: HomPoly2) -> SectionRep:
        """Lift a split-coordinate section to five rational functions.

        Solves the transposed presentation; the result is well defined
        modulo rational multiples of the fourth powers of the components,
        and any solution is a valid representative.
        """
        ncols = len(self.m2.col_twists)
        matrix = []
        rhs = []
        for jj in range(ncols):
            rowvec = []
            for i in range(4):
                entry = self.m2.entries[i][jj]
                if entry is None or entry.is_zero():
                    rowvec.append(RatFunc.zero())
                else:
                    rowvec.append(RatFunc.from_form(entry))
            matrix.append(rowvec)
            if jj == j:
                rhs.append(RatFunc.from_form(h))
            else:
                rhs.append(RatFunc.zero())
        w = rat_solve(matrix, rhs)
        if w is None:
            raise LiftError("transposed presentation is inconsistent")
        lift = []
        for jj in range(5):
            acc = RatFunc.zero()
            for i in range(4):
                entry = self.syz.entries[i][jj]
                if entry is None or entry.is_zero() or w[i].is_zero():
                    continue
                acc = acc + w[i] * entry
            lift.append(acc)
        self._check_annihilates(lift)
        coords = [HomPoly2.zeros(e) if e >= 0 else None for e in self.dual_degrees]
        if coords[j] is not None:
            coords[j] = coords[j] + h
        return SectionRep(tuple(coords), tuple(lift))

    def _check_annihilates(self, lift) -> None:
        acc = RatFunc.zero()
        for s, comp in zip(lift, self.u.components):
            if s.is_zero():
                continue
            acc = acc + s * comp
        if not acc.is_zero():
            raise LiftError("lift does not annihilate the map components")

    def project(self, lift) -> Tuple[Optional[HomPoly2], ...]:
        """Express a lifted tuple back in split coordinates."""
        # recover w from the five-component presentation, then apply the
        # transposed syzygy matrix of the normal row
        matrix = []
        rhs = []
        for jj in range(5):
            rowvec = []
            for i in range(4):
                entry = self.syz.entries[i][jj]
                if entry is None or entry.is_zero():
                    rowvec.append(RatFunc.zero())
                else:
                    rowvec.append(RatFunc.from_form(entry))
            matrix.append(rowvec)
            rhs.append(lift[jj])
        w = rat_solve(matrix, rhs)
        if w is None:
            raise LiftError("tuple is not a section of the cotangent subsheaf")
        out: List[Optional[HomPoly2]] = []
        for jj, e in enumerate(self.dual_degrees):
            acc = RatFunc.zero()
            for i in range(4):
                entry = self.m2.entries[i][jj]
                if entry is None or entry.is_zero() or w[i].is_zero():
                    continue
                acc = acc + w[i] * entry
            if acc.is_zero():
                out.append(HomPoly2.zeros(e) if e >= 0 else None)
            else:
                form = acc.as_form()
                if form.degree != e:
                    padded = HomPoly2.zeros(e)
                    for idx, c in enumerate(form.coeffs):
                        padded.coeffs[idx] = c
                    form = padded
                out.append(form)
        return tuple(out)

    # -- actions ---------------------------------------------------------------

    def rotate_lift(self, lift) -> Tuple[RatFunc, ...]:
        """The order-five action on lifted tuples."""
        lam_inv = self.lam.inverse()
        out = []
        for i, s in enumerate(lift):
            a_i = self.u.g.five_tuple()[i]
            if s.is_zero():
                out.append(s)
            else:
                out.append(s.rotate_z(gamma_pow(1)) * (lam_inv * gamma_pow(2 * a_i)))
        return tuple(out)

    def conj_lift(self, lift) -> Tuple[RatFunc, ...]:
        """The anti-linear action: conjugate all tower coefficients."""
        return tuple(s.map_coeffs(lambda c: c.conj()) for s in lift)

    def action_matrix(self, basis, action) -> List[List[FieldElement]]:
        """Matrix of an action in a monomial section basis (columns map)."""
        cols = []
        for (j, h) in basis:
            rep = self.lift_section(j, h)
            moved = action(rep.lift)
            coords = self.project(moved)
            col = []
            for (j2, h2) in basis:
                form = coords[j2]
                idx = _monomial_index(h2)
                col.append(form.coeffs[idx] if form is not None else KZERO)
            # consistency: the moved section must be supported on the basis
            for j2, form in enumerate(coords):
                if form is None:
                    continue
                allowed = {_monomial_index(h2) for (jj, h2) in basis if jj == j2}
                for idx, c in enumerate(form.coeffs):
                    if idx not in allowed and not c.is_zero():
                        raise LiftError("action leaves the span of the basis")
            cols.append(col)
        return [[cols[c][r] for c in range(len(cols))] for r in range(len(basis))]


def _monomial_index(h: HomPoly2) -> int:
    idxs = [i for i, c in enumerate(h.coeffs) if not c.is_zero()]
    assert len(idxs) == 1
    return idxs[0]


# ---------------------------------------------------------------------------
# public operations
# ---------------------------------------------------------------------------


def vanishing_sections_basis(splitting: SplittingType) -> List[Tuple[int, HomPoly2]]:
    """Interior monomials of the dual summands of degree at least two.

    The splitting argument is the splitting of the dual bundle itself.
    """
    out = []
    for j, e in enumerate(splitting.degrees):
        for i in range(1, e):
            out.append((j, HomPoly2.monomial(e, i)))
    return out


def z5_action(data: CokernelData, basis=None) -> List[List[FieldElement]]:
    if basis is None:
        basis = data.vanishing_sections_basis()
    return data.action_matrix(basis, data.rotate_lift)


def z2_action(data: CokernelData, basis=None) -> List[List[FieldElement]]:
    """Matrix of the anti-linear involution (entries act on conjugated
    coordinates)."""
    if basis is None:
        basis = data.vanishing_sections_basis()
    return data.action_matrix(basis, data.conj_lift)


def _mat_mul(a, b):
    n = len(a)
    return [[sum((a[i][k] * b[k][j] for k in range(n)), KZERO) for j in range(n)]
            for i in range(n)]


def _is_identity(m) -> bool:
    for i, row in enumerate(m):
        for j, c in enumerate(row):
            if i == j and c != KONE:
                return False
            if i != j and not c.is_zero():
                return False
    return True


def fixed_subspace_dim(matrix: List[List[FieldElement]]) -> int:
    """Dimension of the fixed subspace of a finite-order matrix over the
    tower."""
    from .homogeneous import kernel_basis

    n = len(matrix)
    shifted = [[matrix[i][j] - (KONE if i == j else KZERO) for j in range(n)]
               for i in range(n)]
    return len(kernel_basis(shifted))


def cokernel_dimension(u: SphereMap, unconstrained: bool = False,
                       data: Optional[CokernelData] = None) -> int:
    """Real dimension of the obstruction cokernel of a strip.

    The rotation action is order five and the anti-linear involution halves
    the real dimension of any invariant complex subspace, so the cokernel
    dimension equals the dimension of the rotation-fixed subspace (checked
    to be preserved by the involution).  Zero means the strip is regular.
    """
    if data is None:
        data = CokernelData(u)
    basis = data.full_sections_basis() if unconstrained else data.vanishing_sections_basis()
    if not basis:
        return 0
    z5 = data.action_matrix(basis, data.rotate_lift)
    # order five
    power = z5
    for _ in range(4):
        power = _mat_mul(power, z5)
    if not _is_identity(power):
        raise LiftError("rotation action is not of order five")
    z2 = data.action_matrix(basis, data.conj_lift)
    # the involution squares to the identity through a conjugation in the
    # middle: z2 * conj(z2) = 1
    z2c = [[c.conj() for c in row] for row in z2]
    if not _is_identity(_mat_mul(z2, z2c)):
        raise LiftError("anti-linear action is not involutive")
    # compatibility: A Z = Z^-1 A with A anti-linear (conjugate the entries)
    z5c = [[c.conj() for c in row] for row in z5]
    lhs = _mat_mul(z2, z5c)
    zinv = z5
    for _ in range(3):
        zinv = _mat_mul(zinv, z5)
    rhs = _mat_mul(zinv, z2)
    if any(not (a - b).is_zero() for ra, rb in zip(lhs, rhs) for a, b in zip(ra, rb)):
        raise LiftError("rotation and involution actions are incompatible")
    return fixed_subspace_dim(z5)
