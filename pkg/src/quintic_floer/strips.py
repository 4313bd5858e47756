"""Lowest-energy holomorphic strips via the sphere-extension ansatz.

A finite-energy strip between two translates of the real locus extends by
Schwarz reflection to a rational curve whose five homogeneous components are
polynomials u_i(z) = z^(m_i) p_i(z^5) with real coefficients, where the
offsets m_i are congruent to a global twist plus twice the group exponents.
The quintic identity therefore becomes a polynomial system in the p_i
coefficients with every coefficient of a single-term slot occurring only
through its fifth power; the solver module enumerates the solution rays and
families of these systems exactly.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from .groups import GroupElement, IntersectionComponent, intersection
from .homogeneous import HomPoly2, hom_gcd
from .poly import QQ, SparsePoly
from .solver import BranchReport, FamilyData, RaySolution, SolveOutcome, SystemSpec, solve_system
from .tower import (
    FieldElement,
    GAMMA,
    ONE as KONE,
    SIGMA,
    ZERO as KZERO,
    gamma_pow,
    rational,
)


# ---------------------------------------------------------------------------
# sphere maps
# ---------------------------------------------------------------------------


class StripVerificationError(ValueError):
    pass


@dataclass(frozen=True)
class SphereMap:
    """Five homogeneous components of common degree, adapted to g."""

    g: GroupElement
    components: Tuple[HomPoly2, ...]

    @property
    def degree(self) -> int:
        return self.components[0].degree

    def affine_strings(self) -> List[str]:
        return [str(c) for c in self.components]

    def canonical(self) -> "SphereMap":
        """Scale so the first nonzero coefficient (coordinate-major, ascending
        power) is one."""
        for comp in self.components:
            for c in comp.coeffs:
                if not c.is_zero():
                    inv = c.inverse()
                    return SphereMap(
                        self.g, tuple(p.map_coeffs(lambda x: x * inv) for p in self.components)
                    )
        raise ValueError("zero map")

    def __str__(self):
        return "[" + " : ".join(self.affine_strings()) + "]"


def projectively_equal(u: SphereMap, v: SphereMap) -> bool:
    if u.degree != v.degree:
        return False
    cu, cv = u.canonical(), v.canonical()
    return all(a == b for a, b in zip(cu.components, cv.components))


def moduli_equivalent(u: SphereMap, v: SphereMap) -> bool:
    """Same point of the strip moduli: equal up to real scaling of the domain
    variable by a positive number and a projective constant."""
    if u.degree != v.degree or u.g != v.g:
        return False
    cu, cv = u.canonical(), v.canonical()
    # collect per-power ratios relative to the pinned first coefficient
    ratios: Dict[int, FieldElement] = {}
    base_power = None
    for i in range(5):
        pu, pv = cu.components[i], cv.components[i]
        for j in range(u.degree + 1):
            a, b = pu.coeffs[j], pv.coeffs[j]
            if a.is_zero() != b.is_zero():
                return False
            if a.is_zero():
                continue
            if base_power is None:
                base_power = j  # the canonical unit coefficient
            delta = j - base_power
            r = b * a.inverse()
            if delta in ratios:
                if ratios[delta] != r:
                    return False
            else:
                ratios[delta] = r
    deltas = [d for d in ratios if d != 0]
    if not deltas:
        return all(r == KONE for r in ratios.values())
    if ratios.get(0, KONE) != KONE:
        return False
    g = 0
    for d in deltas:
        g = math.gcd(g, abs(d))
    # lambda^g expressed through a Bezout combination of the observed powers
    lam_g = None
    # build lambda^g = prod ratios[d]^{x_d} with sum x_d * d = g
    coefs = _bezout(deltas, g)
    lam_g = KONE
    for d, x in coefs.items():
        r = ratios[d]
        lam_g = lam_g * (r ** x if x >= 0 else (r.inverse() ** (-x)))
    if lam_g.conj() != lam_g or lam_g.sign() <= 0:
        return False
    for d, r in ratios.items():
        if d == 0:
            continue
        q, rem = divmod(d, g)
        assert rem == 0
        if (lam_g ** q if q >= 0 else lam_g.inverse() ** (-q)) != r:
            return False
    return True


def _bezout(deltas: Sequence[int], g: int) -> Dict[int, int]:
    """Integer combination sum x_d * d = g (g = gcd of the deltas)."""
    acc = 0
    coefs: Dict[int, int] = {}
    for d in deltas:
        gg, x, y = _xgcd(acc, d)
        coefs = {k: v * x for k, v in coefs.items()}
        coefs[d] = coefs.get(d, 0) + y
        acc = gg
        if acc == g:
            break
    assert acc == g
    return coefs


def _xgcd(a: int, b: int):
    x0, x1, y0, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        a, x0, y0 = -a, -x0, -y0
    return a, x0, y0


# ---------------------------------------------------------------------------
# ansatz
# ---------------------------------------------------------------------------


def offsets_for(g: GroupElement, comp_from: IntersectionComponent) -> Tuple[int, ...]:
    """Exponent offsets m_i: the components are z^(m_i) p_i(z^5)."""
    five = g.five_tuple()
    twist = (-2 * comp_from.value) % 5
    return tuple((twist + 2 * a) % 5 for a in five)


def degree_residue(comp_from: IntersectionComponent, comp_to: IntersectionComponent) -> int:
    return (2 * (comp_to.value - comp_from.value)) % 5


@dataclass
class StripAnsatz:
    g: GroupElement
    comp_from: IntersectionComponent
    comp_to: IntersectionComponent
    degree: int
    offsets: Tuple[int, ...]
    slot_coeffs: Tuple[Tuple[str, ...], ...]  # live coefficient names per slot
    variables: Tuple[str, ...]
    constraint_ideal: List[SparsePoly]  # quintic coefficients + endpoint pins
    endpoint_zero: Dict[str, int]  # variable -> forced value (0)
    normalization_note: str = ""

    def weights(self) -> Dict[str, int]:
        out = {}
        for i, names in enumerate(self.slot_coeffs):
            for name in names:
                level = int(name.split("_")[1])
                out[name] = self.offsets[i] + 5 * level
        return out


def ansatz(g: GroupElement, comp_from: IntersectionComponent,
           comp_to: IntersectionComponent, degree: int) -> StripAnsatz:
    """Symbolic coefficient family of candidate maps of the given degree."""
    m = offsets_for(g, comp_from)
    if degree % 5 != degree_residue(comp_from, comp_to) % 5:
        raise ValueError("degree %d incompatible with the ansatz residues" % degree)
    slot_coeffs: List[Tuple[str, ...]] = []
    variables: List[str] = []
    for i in range(5):
        names = []
        if m[i] <= degree:
            for level in range((degree - m[i]) // 5 + 1):
                names.append("x%d_%d" % (i, level))
        slot_coeffs.append(tuple(names))
        variables.extend(names)
    variables.append("W_")
    ring = tuple(variables)
    total = SparsePoly.zero(ring, QQ)
    w = SparsePoly.variable(ring, "W_", QQ)
    for i in range(5):
        if not slot_coeffs[i]:
            continue
        p = SparsePoly.zero(ring, QQ)
        for level, name in enumerate(slot_coeffs[i]):
            p = p + SparsePoly.variable(ring, name, QQ) * w ** level
        total = total + (w ** m[i]) * p ** 5
    gens: List[SparsePoly] = []
    for t in range(degree + 1):
        coeff = total.coefficient_of("W_", t)
        if not coeff.is_zero():
            gens.append(_drop_w(coeff))
    # endpoint pins: constants outside the source support, top coefficients
    # outside the target support
    pins: Dict[str, int] = {}
    for i in range(5):
        if not slot_coeffs[i]:
            continue
        if m[i] == 0 and i not in comp_from.support:
            pins[slot_coeffs[i][0]] = 0
        if m[i] + 5 * (len(slot_coeffs[i]) - 1) == degree and i not in comp_to.support:
            pins[slot_coeffs[i][-1]] = 0
    for name, val in pins.items():
        var_ring = gens[0].variables if gens else tuple(v for v in ring if v != "W_")
        gens.append(SparsePoly.variable(var_ring, name, QQ)
                    - SparsePoly.constant(var_ring, val, QQ))
    return StripAnsatz(
        g, comp_from, comp_to, degree, m, tuple(slot_coeffs),
        tuple(v for v in ring if v != "W_"), gens, pins,
        normalization_note="projective scale pins the first live source constant "
                           "to 1; domain rescaling acts with weight m_i + 5*level",
    )


def _drop_w(p: SparsePoly) -> SparsePoly:
    keep = [v for v in p.variables if v != "W_"]
    idxs = [p.variables.index(v) for v in keep]
    out = {}
    for mono, c in p.terms.items():
        out[tuple(mono[i] for i in idxs)] = c
    return SparsePoly(tuple(keep), out, p.domain)


# ---------------------------------------------------------------------------
# moduli descriptions
# ---------------------------------------------------------------------------


@dataclass
class CircleFamily:
    """One-dimensional family of lowest strips: a Fermat-type circle.

    The residual ideal generator is expressed in the original coefficient
    letters (fifth powers restored).
    """

    residual_generator: str  # e.g. "x0_0^5+x3_0^5+x4_0^5"
    active_slots: Tuple[int, ...]
    pinned_coeffs: Dict[str, FieldElement]
    representative: SphereMap
    evaluation_multiplicity: int = 2


@dataclass
class RayRayFamily:
    """The self-connecting family: two components, each a circle times a ray."""

    s_values: Tuple[int, int]
    monomial_slots: Tuple[int, int]
    monomial_power: int
    binomial_slots: Tuple[int, ...]
    residual_generator: str  # Fermat relation among the binomial slot scales
    representative: SphereMap
    parametric_components: Tuple[str, str]


@dataclass
class ModuliDescription:
    kind: str  # finite_list | circle_family | circle_times_ray | inconclusive
    degree: Optional[int]
    members: List[SphereMap] = field(default_factory=list)
    families: List[CircleFamily] = field(default_factory=list)
    rayray: Optional[RayRayFamily] = None
    conjugate_pairs: List[Tuple[int, int]] = field(default_factory=list)
    lower_degrees_empty: List[int] = field(default_factory=list)
    diagnostics: str = ""
    partial_basis_size: Optional[int] = None

    @property
    def energy(self) -> Optional[Fraction]:
        return None if self.degree is None else Fraction(self.degree, 10)


# ---------------------------------------------------------------------------
# verification
# ---------------------------------------------------------------------------


def lambda_u(u: SphereMap) -> FieldElement:
    """Scalar with lambda * u(gamma z) = g^2 u(z); a fifth root of unity."""
    gsq = u.g.power(2)
    rotated = [p.rotate_z(GAMMA) for p in u.components]
    acted = [p * gamma_pow(2 * a) for p, a in zip(u.components, u.g.five_tuple())]
    lam = None
    for rot, act in zip(rotated, acted):
        for a, b in zip(rot.coeffs, act.coeffs):
            if not a.is_zero():
                lam = b * a.inverse()
                break
        if lam is not None:
            break
    if lam is None:
        raise StripVerificationError("zero map has no symmetry scalar")
    for rot, act in zip(rotated, acted):
        if not all((lam * a - b).is_zero() for a, b in zip(rot.coeffs, act.coeffs)):
            raise StripVerificationError("map does not satisfy the rotation symmetry")
    if not (lam ** 5 == KONE or lam ** 5 == -KONE):
        # lambda^5 acts trivially projectively; for odd twists the scalar may
        # square to a tenth root, but the fifth power must be +-1
        raise StripVerificationError("symmetry scalar is not a root of unity")
    return lam


def verify_strip(u: SphereMap, comp_from: IntersectionComponent,
                 comp_to: IntersectionComponent, strict: bool = True) -> bool:
    """All structural invariants of a lowest-energy strip, checked exactly."""
    k = u.degree
    # quintic identity
    total = None
    for p in u.components:
        q = p ** 5
        total = q if total is None else total + q
    if not total.is_zero():
        if strict:
            raise StripVerificationError("quintic identity fails")
        return False
    # reality
    for p in u.components:
        for c in p.coeffs:
            if c.conj() != c:
                if strict:
                    raise StripVerificationError("coefficients are not real")
                return False
    # rotation symmetry
    try:
        lambda_u(u)
    except StripVerificationError:
        if strict:
            raise
        return False
    # no common factor
    nonzero = [p for p in u.components if not p.is_zero()]
    if hom_gcd(nonzero).degree != 0:
        if strict:
            raise StripVerificationError("components share a common factor")
        return False
    # endpoint membership
    for i, p in enumerate(u.components):
        if i not in comp_from.support and not p.value_at_zero().is_zero():
            if strict:
                raise StripVerificationError("source endpoint leaves the component")
            return False
        if i not in comp_to.support and not p.value_at_infinity().is_zero():
            if strict:
                raise StripVerificationError("target endpoint leaves the component")
            return False
    if all(u.components[i].value_at_zero().is_zero() for i in comp_from.support):
        if strict:
            raise StripVerificationError("source endpoint is not a point")
        return False
    if all(u.components[i].value_at_infinity().is_zero() for i in comp_to.support):
        if strict:
            raise StripVerificationError("map has degree lower than stated")
        return False
    return True


def conjugate(u: SphereMap) -> SphereMap:
    """The conjugation involution: coefficientwise conjugate, rotate the
    domain by the primitive tenth root, act by g, then renormalize."""
    sigma_inv = SIGMA.inverse()
    comps = []
    for i, p in enumerate(u.components):
        a_i = u.g.five_tuple()[i]
        q = p.map_coeffs(lambda c: c.conj()).rotate_z(sigma_inv) * gamma_pow(a_i)
        comps.append(q)
    return SphereMap(u.g, tuple(comps)).canonical()


def energy(u: SphereMap, kind: str = "strip") -> Fraction:
    """Energy as a rational multiple of the line energy."""
    if kind == "strip":
        return Fraction(u.degree, 10)
    if kind == "disc":
        return Fraction(u.degree, 2)
    raise ValueError("kind must be 'strip' or 'disc'")


# ---------------------------------------------------------------------------
# solving
# ---------------------------------------------------------------------------


def _build_system(ans: StripAnsatz, branch_j: int):
    fixed: Dict[str, Fraction] = {name: Fraction(val) for name, val in ans.endpoint_zero.items()}
    support = [i for i in ans.comp_from.support if ans.slot_coeffs[i]]
    for i in support:
        if i == branch_j:
            fixed["x%d_0" % i] = Fraction(1)
            break
        fixed["x%d_0" % i] = Fraction(0)
    live = [v for v in ans.variables if v not in fixed]
    gens = []
    for g0 in ans.constraint_ideal:
        gg = g0.substitute(fixed)
        if gg.is_zero():
            continue
        if not gg.used_variables():
            return None, fixed  # inconsistent branch
        gens.append(_restrict(gg, live))
    weights = {v: w for v, w in ans.weights().items() if v in live}
    # fifth-power substitution: variables occurring only with exponents 0 mod 5
    fifth = []
    for v in live:
        occurs = False
        pure = True
        for g0 in gens:
            idx = g0.variables.index(v)
            for mono in g0.terms:
                if mono[idx]:
                    occurs = True
                    if mono[idx] % 5:
                        pure = False
        if occurs and pure:
            fifth.append(v)
    e_names = {v: "e_%s" % v for v in fifth}
    if fifth:
        new_vars = tuple(e_names.get(v, v) for v in live)
        new_gens = []
        for g0 in gens:
            out = {}
            for mono, c in g0.terms.items():
                mm = []
                for v, e in zip(g0.variables, mono):
                    if v in e_names:
                        assert e % 5 == 0
                        mm.append(e // 5)
                    else:
                        mm.append(e)
                out[tuple(mm)] = c
            new_gens.append(SparsePoly(new_vars, out, QQ))
        gens = new_gens
        weights = {e_names.get(v, v): w * (5 if v in e_names else 1)
                   for v, w in weights.items()}
        live = list(new_vars)
    # eliminate fifth-power variables that occur linearly in one generator
    eliminated: List[Tuple[str, SparsePoly]] = []
    for e in [v for v in live if v.startswith("e_")]:
        hits = [g0 for g0 in gens if g0.degree_in(e) > 0]
        if len(hits) != 1 or hits[0].degree_in(e) != 1:
            continue
        g0 = hits[0]
        c1 = g0.coefficient_of(e, 1)
        if c1.used_variables():
            continue
        c1val = Fraction(next(iter(c1.terms.values())))
        f = g0.coefficient_of(e, 0) * (Fraction(-1) / c1val)
        gens.remove(g0)
        eliminated.append((e, f))
        live.remove(e)
    # resolve chains: definitions are linear in any eliminated names they use
    elim_names = {name for name, _ in eliminated}
    changed = True
    rounds = 0
    while changed and rounds < len(eliminated) + 1:
        changed = False
        rounds += 1
        for idx, (name, f) in enumerate(eliminated):
            for other, fo in eliminated:
                if other != name and f.degree_in(other) > 0:
                    lin = f.coefficient_of(other, 1)
                    f = f.coefficient_of(other, 0) + lin * fo
                    eliminated[idx] = (name, f)
                    changed = True
    eliminated = [(name, _restrict(f, [v for v in f.variables if v not in elim_names]))
                  for name, f in eliminated]
    raw = [v for v in live if not v.startswith("e_")]
    # order variables: positive raw, positive e, weight-0 raw, weight-0 e
    ordered = sorted(live, key=lambda v: (weights[v] == 0, v.startswith("e_"), v))
    gens = [_restrict(g0, ordered) for g0 in gens]
    eliminated = [(name, _restrict(f, ordered)) for name, f in eliminated]
    binomial_slots = []
    for i, names in enumerate(ans.slot_coeffs):
        entries = []
        for n in names:
            if n in fixed:
                entries.append(str(fixed[n]) if fixed[n] in (0, 1) else None)
            else:
                entries.append(n)
        entries = [e for e in entries if e != "0"]
        if len(entries) == 2 and all(e is not None for e in entries):
            binomial_slots.append((entries[-1], entries[0]))  # (top, const)
        elif len(entries) > 2:
            binomial_slots.append(None)  # certificate cannot handle it
    raw_tops = []
    has_other_top = False
    for i, names in enumerate(ans.slot_coeffs):
        if not names:
            continue
        top_name = names[-1]
        if ans.offsets[i] + 5 * (len(names) - 1) != ans.degree:
            continue
        if top_name in fixed:
            if fixed[top_name] != 0:
                has_other_top = True
        elif e_names.get(top_name, top_name) in [n for n, _ in eliminated]:
            has_other_top = True
        elif top_name in e_names:
            has_other_top = True
        else:
            raw_tops.append(top_name)
    spec = SystemSpec(ordered, weights, gens, set(e_names.values()),
                      raw, binomial_slots, eliminated=eliminated)
    spec.raw_top_vars = tuple(raw_tops)
    spec.has_nonraw_top = has_other_top
    return spec, fixed


def _restrict(g: SparsePoly, variables: Sequence[str]) -> SparsePoly:
    out = {}
    for mono, c in g.terms.items():
        mm = [0] * len(variables)
        for v, e in zip(g.variables, mono):
            if e:
                mm[list(variables).index(v)] = e
        out[tuple(mm)] = c
    return SparsePoly(tuple(variables), out, QQ)


def _ray_to_map(ans: StripAnsatz, fixed: Dict[str, Fraction],
                ray: RaySolution) -> Optional[SphereMap]:
    comps = []
    for i in range(5):
        coeffs = [KZERO] * (ans.degree + 1)
        for level, name in enumerate(ans.slot_coeffs[i]):
            if name in fixed:
                val = rational(fixed[name])
            elif name in ray.values:
                val = ray.values[name]
            elif ("e_" + name) in ray.values:
                val = ray.values[name]
            else:
                return None
            coeffs[ans.offsets[i] + 5 * level] = val
        comps.append(HomPoly2(ans.degree, coeffs))
    return SphereMap(ans.g, tuple(comps))


def _family_to_circle(ans: StripAnsatz, fixed: Dict[str, Fraction],
                      fam: FamilyData) -> Optional[CircleFamily]:
    # identify the active slots from the relation variables
    active = []
    for name in fam.free_vars:
        raw = name[2:] if name.startswith("e_") else name
        active.append(int(raw.split("_")[0][1:]))
    # the relation may be inhomogeneous: the constant represents the
    # normalized slot (coefficient fixed to one)
    zero_m = (0,) * len(fam.relation.variables)
    has_const = zero_m in fam.relation.terms
    gen_terms = []
    if has_const:
        norm_slot = None
        for name, val in fixed.items():
            if val == 1:
                norm_slot = int(name.split("_")[0][1:])
        if norm_slot is not None:
            active.append(norm_slot)
            gen_terms.append("x%d_0^5" % norm_slot)
    for name in fam.free_vars:
        raw = name[2:] if name.startswith("e_") else name
        gen_terms.append("%s^5" % raw)
    active = sorted(set(active))
    generator = "+".join(sorted(gen_terms))
    pinned = {k: v for k, v in fam.pinned.items()}
    rep_values = dict(fam.representative)
    ray = RaySolution("family", KONE, rep_values)
    rep_map = _ray_to_map(ans, fixed, ray)
    if rep_map is None:
        return None
    return CircleFamily(generator, tuple(active), {}, rep_map)


def solve_lowest_energy(g: GroupElement, comp_from: IntersectionComponent,
                        comp_to: IntersectionComponent, degree_cap: int = 5,
                        groebner_budget: int = 60000,
                        time_limit: float | None = None) -> ModuliDescription:
    """Enumerate the lowest-energy strips between two components.

    groebner_budget bounds the total number of S-polynomial reductions over
    all branch systems and certificates; time_limit (seconds) bounds the
    wall-clock work.  Exhausting either yields an honest inconclusive.
    """
    from .poly import BudgetPool

    if comp_from == comp_to and _is_line_plus_point_line(g, comp_from):
        return _self_family(g, comp_from)
    pool = BudgetPool(steps=groebner_budget, seconds=time_limit)
    residue = degree_residue(comp_from, comp_to) or 5
    lower_empty: List[int] = []
    k = residue
    while k <= degree_cap:
        ans = ansatz(g, comp_from, comp_to, k)
        members: List[SphereMap] = []
        circles: List[CircleFamily] = []
        complete = True
        notes = []
        basis_size = None
        support = [i for i in comp_from.support if ans.slot_coeffs[i]]
        for j in support:
            spec, fixed = _build_system(ans, j)
            if spec is None:
                continue
            spec.pool = pool
            outcome = solve_system(spec)
            if outcome.inconclusive:
                complete = False
                for rep in outcome.reports:
                    if rep.status == "inconclusive":
                        notes.append("branch %s: %s" % (rep.pattern, rep.note))
                        if rep.groebner_size:
                            basis_size = max(basis_size or 0, rep.groebner_size)
            for ray in outcome.rays:
                m = _ray_to_map(ans, fixed, ray)
                if m is None:
                    complete = False
                    continue
                if not verify_strip(m, comp_from, comp_to, strict=False):
                    continue
                if not any(moduli_equivalent(m, other) for other in members):
                    members.append(m.canonical())
            for fam in outcome.families:
                circ = _family_to_circle(ans, fixed, fam)
                if circ is None:
                    complete = False
                    continue
                if verify_strip(circ.representative, comp_from, comp_to, strict=False):
                    if not any(c.residual_generator == circ.residual_generator
                               for c in circles):
                        circles.append(circ)
        if circles and complete:
            rep = circles[0].representative
            pairs = _conjugate_pairs([rep]) if circles else []
            return ModuliDescription(
                "circle_family", k, members=[], families=circles,
                lower_degrees_empty=lower_empty,
                diagnostics="; ".join(notes),
            )
        if members and complete:
            pairs = _conjugate_pairs(members)
            return ModuliDescription(
                "finite_list", k, members=members, conjugate_pairs=pairs,
                lower_degrees_empty=lower_empty,
                diagnostics="; ".join(notes),
            )
        if not complete:
            return ModuliDescription(
                "inconclusive", k, diagnostics="; ".join(notes),
                lower_degrees_empty=lower_empty, partial_basis_size=basis_size,
            )
        lower_empty.append(k)
        k += 5
    return ModuliDescription(
        "finite_list", None, members=[], lower_degrees_empty=lower_empty,
        diagnostics="no strips up to the degree cap",
    )


def _conjugate_pairs(members: List[SphereMap]) -> List[Tuple[int, int]]:
    pairs = []
    seen = set()
    for i, m in enumerate(members):
        if i in seen:
            continue
        cm = conjugate(m)
        for j, other in enumerate(members):
            if moduli_equivalent(cm, other):
                pairs.append((i, j))
                seen.add(i)
                seen.add(j)
                break
    return pairs


# ---------------------------------------------------------------------------
# the self-connecting family on the line of a line-plus-point intersection
# ---------------------------------------------------------------------------


def _is_line_plus_point_line(g: GroupElement, comp: IntersectionComponent) -> bool:
    from .groups import partition_shape

    return partition_shape(g) == (3, 2) and comp.dim == 1


def _self_family(g: GroupElement, comp: IntersectionComponent) -> ModuliDescription:
    """Degree-five strips from the line to itself: two circle-times-ray
    components, swapped by conjugation, with every member verified modulo the
    residual ideal."""
    m = offsets_for(g, comp)
    mono_slots = tuple(i for i in range(5) if i not in comp.support)
    bin_slots = tuple(sorted(comp.support))
    h = m[mono_slots[0]]
    assert m[mono_slots[0]] == m[mono_slots[1]] and h != 0
    params = ("pa", "pb", "pc", "pd", "ps")
    ring = params

    def var(n):
        return SparsePoly.variable(ring, n, QQ)

    ideal = [
        var("ps") ** 2 - SparsePoly.constant(ring, 1, QQ),
        var("pa") ** 5 + var("pb") ** 5 + var("pc") ** 5,
    ]
    zero = SparsePoly.zero(ring, QQ)
    comps: List[HomPoly2] = []
    letters = dict(zip(bin_slots, ("pa", "pb", "pc")))
    for i in range(5):
        coeffs = [zero] * 6
        if i in comp.support:
            coeffs[0] = var(letters[i]) * var("ps")
            coeffs[5] = var(letters[i])
        else:
            sign = 1 if i == mono_slots[0] else -1
            coeffs[h] = var("pd") * sign
        comps.append(HomPoly2(5, coeffs))
    # verify the quintic identity modulo the ideal
    total = None
    for p in comps:
        q = p ** 5
        total = q if total is None else total + q
    from .poly import LEX, groebner, normal_form

    gb = groebner(ideal, LEX)
    for c in total.coeffs:
        if not normal_form(c, gb, LEX).is_zero():
            raise StripVerificationError("self-family fails the quintic identity")
    # concrete representative on the s = +1 component
    rep_vals = {"pa": rational(1), "pb": rational(1),
                "pc": -rational(2) * rational(Fraction(1, 2)), "pd": rational(1),
                "ps": rational(1)}
    # a^5+b^5+c^5 = 0 with a=b=1 requires c^5 = -2
    from .tower import C as TOWER_C

    rep_vals["pc"] = -TOWER_C
    rep_comps = []
    for i in range(5):
        coeffs = [KZERO] * 6
        if i in comp.support:
            coeffs[0] = rep_vals[letters[i]] * rep_vals["ps"]
            coeffs[5] = rep_vals[letters[i]]
        else:
            coeffs[h] = rep_vals["pd"] * (KONE if i == mono_slots[0] else -KONE)
        rep_comps.append(HomPoly2(5, coeffs))
    rep = SphereMap(g, tuple(rep_comps))
    verify_strip(rep, comp, comp)
    c1 = "[%s]" % " : ".join(
        ("%s*(z^5+s)" % letters[i]) if i in comp.support
        else ("%sd*z^%d" % ("+" if i == mono_slots[0] else "-", h))
        for i in range(5)
    )
    fam = RayRayFamily(
        s_values=(1, -1),
        monomial_slots=mono_slots,
        monomial_power=h,
        binomial_slots=bin_slots,
        residual_generator="+".join("x%d_0^5" % i for i in bin_slots),
        representative=rep,
        parametric_components=(c1.replace("s", "1"), c1.replace("s", "-1")),
    )
    return ModuliDescription("circle_times_ray", 5, rayray=fam,
                             diagnostics="two components swapped by conjugation; "
                                         "moduli dimension 2 exceeds the virtual "
                                         "dimension 0 (irregular)")


# ---------------------------------------------------------------------------
# degeneration limits of the self-family
# ---------------------------------------------------------------------------


@dataclass
class DegenerationLimit:
    kind: str  # disc_bubble | broken_trajectory
    pieces: List[str]


def degeneration_limits(g: GroupElement, comp: IntersectionComponent,
                        direction: str) -> DegenerationLimit:
    """Symbolic limits of the self-family as the ray parameter degenerates.

    direction 'd->0': a disc bubbles off at a tenth-root-of-unity domain
    point, leaving a constant strip; 'd->inf': the family converges to a
    broken trajectory of two strips.  Both limits are computed by exact
    rescaling and verified against the quintic identity.
    """
    moduli = _self_family(g, comp)
    fam = moduli.rayray
    h = fam.monomial_power
    ring = ("pa", "pb", "pc", "w", "eps")
    var = lambda n: SparsePoly.variable(ring, n, QQ)
    letters = dict(zip(fam.binomial_slots, ("pa", "pb", "pc")))
    if direction == "d->0":
        # rescale around the bubble point (s = +1 component): the binomial
        # slots vanish to first order, the monomial slots become constants
        pieces = []
        out = []
        for i in range(5):
            if i in fam.binomial_slots:
                out.append("5*%s*w" % letters[i])
            else:
                sign = "" if i == fam.monomial_slots[0] else "-"
                out.append("%ssigma^%d" % (sign, h))
        pieces.append("[" + " : ".join(out) + "]  (bubble at z = sigma)")
        _verify_bubble(g, fam)
        return DegenerationLimit("disc_bubble", pieces)
    if direction == "d->inf":
        near = []
        far = []
        for i in range(5):
            if i in fam.binomial_slots:
                near.append("%s" % letters[i])
                far.append("%s*z^%d" % (letters[i], 5 - h))
            else:
                sgn = "" if i == fam.monomial_slots[0] else "-"
                near.append("%sz^%d" % (sgn, h))
                far.append("1" if i == fam.monomial_slots[0] else "-1")
        _verify_broken(g, fam)
        return DegenerationLimit(
            "broken_trajectory",
            ["[" + " : ".join(near) + "]", "[" + " : ".join(far) + "]"],
        )
    raise ValueError("direction must be 'd->0' or 'd->inf'")


def _verify_bubble(g: GroupElement, fam: RayRayFamily):
    """The bubble satisfies the quintic identity modulo the residual ideal."""
    ring = ("pa", "pb", "pc")
    var = lambda n: SparsePoly.variable(ring, n, QQ)
    total = (SparsePoly.constant(ring, 5, QQ) ** 5) * (
        var("pa") ** 5 + var("pb") ** 5 + var("pc") ** 5
    )
    # the two monomial slots contribute sigma^(5h) and -(sigma^(5h)): cancel
    from .poly import LEX, groebner, normal_form

    gb = groebner([var("pa") ** 5 + var("pb") ** 5 + var("pc") ** 5], LEX)
    if not normal_form(total, gb, LEX).is_zero():
        raise StripVerificationError("disc bubble fails the quintic identity")


def _verify_broken(g: GroupElement, fam: RayRayFamily):
    ring = ("pa", "pb", "pc")
    var = lambda n: SparsePoly.variable(ring, n, QQ)
    from .poly import LEX, groebner, normal_form

    gb = groebner([var("pa") ** 5 + var("pb") ** 5 + var("pc") ** 5], LEX)
    total = var("pa") ** 5 + var("pb") ** 5 + var("pc") ** 5
    if not normal_form(total, gb, LEX).is_zero():
        raise StripVerificationError("broken trajectory fails the quintic identity")
