"""Branch-and-certify solver for the strip coefficient systems.

The coefficient systems are weighted-homogeneous: rescaling the domain
variable by a positive real scales each unknown by its weight.  Solution sets
therefore decompose into scaling rays (plus parametric families), and the
solver enumerates them per vanishing pattern of the binomial-slot
coefficients, exactly mirroring the by-hand case analysis:

  * fix a vanishing pattern of the raw coefficients and force the others
    invertible (Rabinowitsch variable),
  * work with e = x^5 for every coefficient that only occurs through its
    fifth power, eliminating the e's that occur linearly in a single
    generator (their defining expressions are carried along),
  * compute a lex Groebner basis, read off the zero-dimensional weight-0
    block (certified complete by Sturm counts), and parse the remaining
    positive-weight relations as a monomial curve in one free parameter,
  * pick a tower representative on each scaling ray,
  * branches whose solutions are all projectively degenerate (a common
    factor forces every pure-power slot to vanish and the remaining slots to
    be proportional) are discharged by radical-membership certificates, and
    slot scales gauged to nonzero constants that turn out inconsistent are
    discharged by unit certificates.

Anything that fails to fit these shapes is reported as inconclusive rather
than guessed.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Dict, List, Optional, Sequence, Tuple

from .poly import (
    BudgetPool,
    GroebnerBudgetExceeded,
    KK,
    LEX,
    QQ,
    SparsePoly,
    contains_one,
    groebner,
    normal_form,
    real_root_count,
    univariate_coeffs,
)
from .tower import FieldElement, ZERO as KZERO, fifth_root, rational, sqrt_in_tower


@dataclass
class RaySolution:
    """One scaling ray of solutions, evaluated at a tower representative.

    values maps every system variable (raw, fifth-power and eliminated ones)
    to its tower value at the representative point; fifth-power variables
    e_x also get their unrolled coefficient value under the name x.
    """

    theta_var: str
    theta_value: FieldElement
    values: Dict[str, FieldElement]


@dataclass
class FamilyData:
    """A positive-dimensional solution family recognized by shape."""

    relation: SparsePoly  # linear relation among fifth-power variables
    free_vars: Tuple[str, ...]
    pinned: Dict[str, FieldElement]
    representative: Dict[str, FieldElement]


@dataclass
class BranchReport:
    pattern: Dict[str, bool]
    status: str  # empty | extracted | family | degenerate | inconclusive
    rays: List[RaySolution] = field(default_factory=list)
    family: Optional[FamilyData] = None
    note: str = ""
    groebner_size: Optional[int] = None


@dataclass
class SolveOutcome:
    complete: bool
    rays: List[RaySolution]
    families: List[FamilyData]
    reports: List[BranchReport]

    @property
    def inconclusive(self) -> bool:
        return not self.complete


class SystemSpec:
    """A weighted coefficient system over Q.

    generators: SparsePoly over QQ in `variables` (e's already eliminated)
    eliminated: chain of (e_name, defining polynomial in `variables`)
    weights: scaling weight of every variable including eliminated names
    fifth_power_vars: variables denoting fifth powers of map coefficients
    raw_pattern_vars: variables subject to vanishing-pattern branching
    binomial_slots: (top, const) variable-name pairs for the degeneracy
        certificate; fixed unit entries are the string '1'; None marks a slot
        the certificate cannot handle.
    """

    def __init__(self, variables, weights, generators, fifth_power_vars,
                 raw_pattern_vars, binomial_slots, eliminated=(),
                 groebner_budget=1500, certificate_budget=8000):
        self.variables = tuple(variables)
        self.weights = dict(weights)
        self.generators = list(generators)
        self.fifth_power_vars = set(fifth_power_vars)
        self.raw_pattern_vars = tuple(raw_pattern_vars)
        self.binomial_slots = list(binomial_slots)
        self.eliminated = list(eliminated)
        self.groebner_budget = groebner_budget
        self.certificate_budget = certificate_budget
        self.pool: BudgetPool | None = None


def solve_system(spec: SystemSpec) -> SolveOutcome:
    reports: List[BranchReport] = []
    rays: List[RaySolution] = []
    families: List[FamilyData] = []
    complete = True
    patterns = list(product([False, True], repeat=len(spec.raw_pattern_vars)))
    patterns.sort(key=lambda p: sum(p))
    raw_tops = set(getattr(spec, "raw_top_vars", ()))
    prune_tops = raw_tops and not getattr(spec, "has_nonraw_top", True)
    for bits in patterns:
        pattern = dict(zip(spec.raw_pattern_vars, bits))
        if prune_tops and all(not pattern[v] for v in raw_tops):
            # every top coefficient vanishes: the maps drop degree
            reports.append(BranchReport(pattern, "empty", note="degree drop"))
            continue
        report = _solve_branch(spec, pattern)
        reports.append(report)
        if report.status == "extracted":
            rays.extend(report.rays)
        elif report.status == "family":
            families.append(report.family)
        elif report.status == "inconclusive":
            complete = False
    return SolveOutcome(complete, rays, families, reports)


# ---------------------------------------------------------------------------
# single branch
# ---------------------------------------------------------------------------


def _solve_branch(spec: SystemSpec, pattern: Dict[str, bool]) -> BranchReport:
    if spec.pool is not None and spec.pool.exhausted():
        return BranchReport(pattern, "inconclusive", note="work budget exhausted")
    zeros = {v: Fraction(0) for v, on in pattern.items() if not on}
    gens = []
    inconsistent = False
    for g in spec.generators:
        gg = g.substitute(zeros) if zeros else g
        if gg.is_zero():
            continue
        if not gg.used_variables():
            inconsistent = True
            break
        gens.append(gg)
    if inconsistent:
        return BranchReport(pattern, "empty", note="constant inconsistency")
    defs = []
    for name, f in spec.eliminated:
        defs.append((name, f.substitute(zeros) if zeros else f))
    nonzero_vars = [v for v, on in pattern.items() if on]

    live_vars = [v for v in spec.variables if pattern.get(v, True)]
    pos = [v for v in live_vars if spec.weights.get(v, 0) > 0]
    w0 = [v for v in live_vars if spec.weights.get(v, 0) == 0]
    allvars = ("t_",) + tuple(pos) + tuple(w0)
    index = {v: i for i, v in enumerate(allvars)}

    sys_gens = [_embed(g, allvars, index) for g in gens]
    if nonzero_vars:
        prod_poly = SparsePoly.constant(allvars, 1, QQ)
        for v in nonzero_vars:
            prod_poly = prod_poly * SparsePoly.variable(allvars, v, QQ)
        sys_gens.append(prod_poly * SparsePoly.variable(allvars, "t_", QQ)
                        - SparsePoly.constant(allvars, 1, QQ))
    try:
        gb = _run_gb(spec, sys_gens, spec.groebner_budget)
    except GroebnerBudgetExceeded as exc:
        return _certify_branch(spec, pattern, gens, defs, nonzero_vars,
                               note="lex budget exceeded (%d)" % exc.steps)
    if contains_one(gb):
        return BranchReport(pattern, "empty", groebner_size=1)
    tfree = [g for g in gb if g.degree_in("t_") == 0]
    report = _extract_branch(spec, pattern, tfree, defs, pos, w0)
    report.groebner_size = len(gb)
    for ray in report.rays:
        for v, on in pattern.items():
            if not on:
                ray.values[v] = KZERO
    if report.status == "inconclusive":
        cert = _certify_branch(spec, pattern, gens, defs, nonzero_vars, note=report.note)
        if cert.status in ("degenerate", "empty"):
            return cert
    return report


def _run_gb(spec, gens, budget):
    """Groebner basis charged against the spec's shared budget pool."""
    pool = spec.pool
    if pool is not None and pool.exhausted():
        raise GroebnerBudgetExceeded([], 0)
    alloc = budget if pool is None else pool.allocation(budget)
    if alloc <= 0:
        raise GroebnerBudgetExceeded([], 0)
    stats = {"steps": 0}
    try:
        return groebner(gens, LEX, budget=alloc,
                        deadline=(pool.deadline if pool is not None else None),
                        stats=stats)
    finally:
        if pool is not None:
            pool.charge(stats["steps"])


def _embed(g: SparsePoly, allvars, index) -> SparsePoly:
    out = {}
    n = len(allvars)
    src = [index.get(v) for v in g.variables]
    for m, c in g.terms.items():
        mm = [0] * n
        for pos_i, e in zip(src, m):
            if e:
                if pos_i is None:
                    raise ValueError("variable %r not available in target ring"
                                     % g.variables[src.index(pos_i)])
                mm[pos_i] = e
        out[tuple(mm)] = c
    return SparsePoly(allvars, out, QQ)


# ---------------------------------------------------------------------------
# extraction
# ---------------------------------------------------------------------------


def _extract_branch(spec, pattern, tfree, defs, pos, w0) -> BranchReport:
    w0set = set(w0)
    w0_gens = [g for g in tfree if set(g.used_variables()) <= w0set]
    other_gens = [g for g in tfree if g not in w0_gens]

    if not w0:
        w0_points: List[Dict[str, FieldElement]] = [{}]
    else:
        pts = _solve_zero_dim_block(w0_gens, w0)
        if pts is None:
            fam = _recognize_family(spec, pattern, tfree, defs, pos, w0)
            if fam is not None:
                return fam
            return BranchReport(pattern, "inconclusive", note="weight-0 block not resolved")
        w0_points = pts

    rays: List[RaySolution] = []
    for pt in w0_points:
        res = _extract_rays_at_point(spec, other_gens, defs, pos, pt)
        if res is None:
            fam = _recognize_family(spec, pattern, tfree, defs, pos, w0)
            if fam is not None:
                return fam
            return BranchReport(pattern, "inconclusive",
                                note="positive block not a monomial curve")
        rays.extend(res)
    status = "extracted" if rays else "empty"
    return BranchReport(pattern, status, rays=rays)


def _solve_zero_dim_block(gens: List[SparsePoly], block_vars: List[str]):
    """All tower-expressible points of a zero-dimensional block, or None.

    None means: not visibly triangular/zero-dimensional, a real root outside
    the tower, or a Sturm count mismatch (completeness certificate).
    """
    if not gens:
        return None
    kgens = [g.convert(KK) for g in gens]
    points: List[Dict[str, FieldElement]] = [{}]
    for v in reversed(block_vars):
        new_points = []
        for pt in points:
            cands = []
            inconsistent = False
            for g in kgens:
                gg = g.substitute(pt) if pt else g
                if gg.is_zero():
                    continue
                used = set(gg.used_variables())
                if not used:
                    inconsistent = True
                    break
                if used <= {v}:
                    cands.append(gg)
            if inconsistent:
                continue
            if not cands:
                return None
            cands.sort(key=lambda g: g.degree_in(v))
            elim = cands[0]
            roots = _tower_roots(elim, v)
            if roots is None:
                return None
            try:
                nreal = real_root_count(elim, v)
            except (ValueError, RuntimeError):
                return None
            if nreal != len(roots):
                return None
            for r in roots:
                if all(_eval_univariate(g, v, r).is_zero() for g in cands[1:]):
                    ext = dict(pt)
                    ext[v] = r
                    new_points.append(ext)
        points = new_points
        if not points:
            return []
    return [pt for pt in points if all(g.substitute(pt).is_zero() for g in kgens)]


def _eval_univariate(g: SparsePoly, name: str, value: FieldElement) -> FieldElement:
    coeffs = univariate_coeffs(g, name)
    acc = KZERO
    for c in reversed(coeffs):
        acc = acc * value + c
    return acc


def _tower_roots(g: SparsePoly, name: str) -> Optional[List[FieldElement]]:
    """Distinct real roots of a univariate polynomial, inside the tower.

    Handles linear polynomials and binomials a x^n + b (n <= 5); None when
    the polynomial is outside this class or a real root is not in the tower.
    """
    coeffs = univariate_coeffs(g, name)
    deg = len(coeffs) - 1
    support = [i for i, c in enumerate(coeffs) if not c.is_zero()]
    if deg == 0 or support == [0]:
        return None
    if len(support) == 1:
        return [KZERO]
    if support[0] != 0:
        inner = SparsePoly((name,), {(i - support[0],): coeffs[i] for i in support}, KK)
        rest = _tower_roots(inner, name)
        if rest is None:
            return None
        return [KZERO] + [r for r in rest if not r.is_zero()]
    if len(support) != 2:
        return None
    lo, hi = support
    n = hi - lo
    a, b = coeffs[hi], coeffs[lo]
    target = -(b / a)  # x^n = target
    roots: List[FieldElement] = []
    if n == 1:
        roots.append(target)
    elif n in (2, 4):
        if target.conj() != target:
            return None
        sgn = target.sign()
        if sgn == 0:
            roots.append(KZERO)
        elif sgn > 0:
            r = sqrt_in_tower(target)
            if r is None:
                return None
            if n == 4:
                r = sqrt_in_tower(r)
                if r is None:
                    return None
            roots.extend([r, -r])
    elif n == 5:
        r = fifth_root(target)
        if r is None:
            return None
        roots.append(r)
    elif n == 3:
        if not target.is_rational():
            return None
        q = target.as_rational()
        num = _int_root(abs(q.numerator), 3)
        den = _int_root(q.denominator, 3)
        if num is None or den is None:
            return None
        roots.append(rational(Fraction(num, den) * (1 if q >= 0 else -1)))
    else:
        return None
    return roots


def _int_root(x: int, n: int):
    r = round(x ** (1.0 / n))
    for cand in (r - 1, r, r + 1):
        if cand >= 0 and cand ** n == x:
            return cand
    return None


def _extract_rays_at_point(spec, gens, defs, pos, w0_point):
    """Parse the positive-weight block as a monomial curve; return rays."""
    if not pos:
        return []
    kgens = []
    for g in gens:
        gg = g.convert(KK).substitute(w0_point) if w0_point else g.convert(KK)
        if not gg.is_zero():
            kgens.append(gg)
    posset = set(pos)
    for g in kgens:
        if not set(g.used_variables()) <= posset:
            return None
    try:
        gb = _run_gb(spec, kgens, spec.groebner_budget) if kgens else []
    except GroebnerBudgetExceeded:
        return None
    if contains_one(gb):
        return []
    bound: Dict[str, Tuple[FieldElement, Dict[str, int]]] = {}
    theta_candidates = set(pos)
    for g in gb:
        lead_m, lead_c = g.leading(LEX)
        nz = [(name, e) for name, e in zip(g.variables, lead_m) if e]
        if len(nz) == 1 and nz[0][1] == 1 and nz[0][0] in posset:
            v = nz[0][0]
            rest = g - SparsePoly(g.variables, {lead_m: lead_c}, KK)
            rest = rest * (-(lead_c.inverse()))
            if rest.is_zero():
                bound[v] = (KZERO, {})
                theta_candidates.discard(v)
                continue
            if len(rest.terms) != 1:
                return None
            (mono, coeff), = rest.terms.items()
            powers = {name: e for name, e in zip(g.variables, mono) if e}
            if v in powers or not all(p in posset for p in powers):
                return None
            bound[v] = (coeff, powers)
            theta_candidates.discard(v)
        else:
            return None
    free = [v for v in pos if v in theta_candidates]
    if len(free) != 1:
        return None
    theta = free[0]
    wtheta = spec.weights[theta]
    shaped: Dict[str, Tuple[FieldElement, int]] = {}
    for v, (coeff, powers) in bound.items():
        if coeff.is_zero():
            shaped[v] = (KZERO, 0)
            continue
        if set(powers) != {theta}:
            return None
        d = powers[theta]
        if spec.weights[v] != d * wtheta:
            return None
        shaped[v] = (coeff, d)
    # recover eliminated variables symbolically on the ray
    recovered: Dict[str, Tuple[FieldElement, int]] = {}
    for name, f in defs:
        mono = _monomial_on_ray(f, shaped, theta, w0_point)
        if mono is None:
            return None
        recovered[name] = mono
        if not mono[0].is_zero() and spec.weights.get(name) is not None:
            if spec.weights[name] != mono[1] * wtheta:
                return None
    theta0 = _reconstruct_theta(spec, shaped, recovered, theta)
    if theta0 is None:
        return None
    rays = []
    for sign in (1, -1):
        tval = theta0 * rational(sign)
        values: Dict[str, FieldElement] = dict(w0_point)
        values[theta] = tval
        for v, (coeff, d) in shaped.items():
            values[v] = coeff * tval ** d
        for v, (coeff, d) in recovered.items():
            values[v] = coeff * tval ** d
        final: Dict[str, FieldElement] = {}
        ok = True
        for v, val in values.items():
            final[v] = val
            if v in spec.fifth_power_vars:
                root = fifth_root(val)
                if root is None:
                    ok = False
                    break
                final[_unroll_name(v)] = root
        if not ok:
            return None
        rays.append(RaySolution(theta, tval, final))
    return rays


def _monomial_on_ray(f: SparsePoly, shaped, theta, w0_point):
    """Evaluate a defining polynomial on the parametrized ray.

    Returns (rho, d) with value rho * theta^d, or None if not a monomial.
    """
    ring = ("T_",)
    tpoly = SparsePoly.variable(ring, "T_", KK)
    acc = SparsePoly.zero(ring, KK)
    for mono, c in f.terms.items():
        term = SparsePoly.constant(ring, KK.coerce(c), KK)
        for name, e in zip(f.variables, mono):
            if not e:
                continue
            if name == theta:
                term = term * tpoly ** e
            elif name in shaped:
                coeff, d = shaped[name]
                if coeff.is_zero():
                    term = SparsePoly.zero(ring, KK)
                    break
                term = term * SparsePoly.constant(ring, coeff ** e, KK) * tpoly ** (d * e)
            elif name in w0_point:
                term = term * SparsePoly.constant(ring, w0_point[name] ** e, KK)
            else:
                return None
        acc = acc + term
    if acc.is_zero():
        return (KZERO, 0)
    if len(acc.terms) != 1:
        return None
    (mono, coeff), = acc.terms.items()
    return (coeff, mono[0])


def _unroll_name(e_name: str) -> str:
    return e_name[2:] if e_name.startswith("e_") else e_name


def _reconstruct_theta(spec, shaped, recovered, theta) -> Optional[FieldElement]:
    """A positive tower value of the free parameter making every fifth-power
    value on the ray a perfect fifth power in the tower."""
    constraints = []
    if theta in spec.fifth_power_vars:
        constraints.append((rational(1), 1))
    for source in (shaped, recovered):
        for v, (coeff, d) in source.items():
            if v in spec.fifth_power_vars and not coeff.is_zero():
                constraints.append((coeff, d))
    if not constraints:
        return rational(1)
    datas = []
    for rho, d in constraints:
        mono = rho.as_monomial()
        if mono is None:
            return None
        q, alpha, beta = mono
        datas.append((q, alpha, beta, d))
    sol = None
    for j in range(5):
        for k in range(5):
            if all((alpha + d * j) % 5 == 0 and (beta + d * k) % 5 == 0
                   for (_, alpha, beta, d) in datas):
                sol = (j, k)
                break
        if sol:
            break
    if sol is None:
        return None
    j, k = sol
    residues: Dict[int, Dict[int, int]] = {}
    for (q, alpha, beta, d) in datas:
        for p, e in _factor_small(abs(q.numerator)) + [
            (p, -e) for p, e in _factor_small(q.denominator)
        ]:
            if p in (2, 5):
                continue
            residues.setdefault(p, {})
            residues[p][d] = (residues[p].get(d, 0) + e) % 5
    r = Fraction(1)
    for p, by_d in residues.items():
        found = None
        for x in range(5):
            if all((e + d * x) % 5 == 0 for d, e in by_d.items()):
                found = x
                break
        if found is None:
            return None
        r *= Fraction(p) ** found
    return FieldElement.monomial(r, 0, j, k)


def _factor_small(n: int):
    out = []
    if n in (0, 1):
        return out
    d = 2
    while d * d <= n:
        e = 0
        while n % d == 0:
            n //= d
            e += 1
        if e:
            out.append((d, e))
        d += 1
    if n > 1:
        out.append((n, 1))
    return out


# ---------------------------------------------------------------------------
# family recognition (circle families)
# ---------------------------------------------------------------------------


def _recognize_family(spec, pattern, tfree, defs, pos, w0) -> Optional[BranchReport]:
    """Recognize a family cut out by linear relations among fifth-power
    variables: one Fermat-type relation (the circle), plus variable pins and
    binomial shape relations absorbing the translation ray."""
    evars = set(spec.fifth_power_vars)
    fullvars = tuple(dict.fromkeys(
        list(spec.variables) + [name for name, _ in spec.eliminated]))
    index = {v: i for i, v in enumerate(fullvars)}
    gens = [_embed(g, fullvars, index) for g in tfree]
    for name, f in defs:
        gens.append(SparsePoly.variable(fullvars, name, QQ) - _embed(f, fullvars, index))
    pinned: Dict[str, Fraction] = {}
    shapes: List[Tuple[str, Fraction, str]] = []
    relation = None
    zero_m = (0,) * len(fullvars)
    for g in gens:
        used = set(g.used_variables())
        if not used:
            if not g.is_zero():
                return None
            continue
        if not used <= evars:
            return None
        if any(sum(m) > 1 for m in g.terms):
            return None
        if len(used) == 1:
            v = next(iter(used))
            pinned[v] = -Fraction(g.terms.get(zero_m, Fraction(0))) / _lin_coeff(g, v)
        elif len(used) == 2 and zero_m not in g.terms:
            vs = sorted(used, key=lambda n: index[n])
            v, v2 = vs
            shapes.append((v, -_lin_coeff(g, v2) / _lin_coeff(g, v), v2))
        elif relation is None:
            relation = g
        else:
            return None
    if relation is None:
        return None
    rel_vars = sorted(relation.used_variables(), key=lambda n: index[n])
    if len(rel_vars) not in (2, 3):
        return None
    rep_e: Dict[str, Fraction] = dict(pinned)
    rep_assign = _fermat_representative(relation, rel_vars)
    if rep_assign is None:
        return None
    rep_e.update(rep_assign)
    constrained = set(rep_e) | {v for v, _, _ in shapes}
    for v in fullvars:
        if v in evars and v not in constrained and any(g.degree_in(v) for g in gens):
            rep_e[v] = Fraction(1)
    changed = True
    while changed:
        changed = False
        for v, coeff, v2 in shapes:
            if v not in rep_e and v2 in rep_e:
                rep_e[v] = coeff * rep_e[v2]
                changed = True
    if any(v not in rep_e for v, _, _ in shapes):
        return None
    full_rep: Dict[str, FieldElement] = {}
    for v, val in rep_e.items():
        root = fifth_root(rational(val))
        if root is None:
            return None
        full_rep[v] = rational(val)
        full_rep[_unroll_name(v)] = root
    for g in gens:
        sub = {v: rep_e[v] for v in g.used_variables()}
        if not g.substitute(sub).is_zero():
            return None
    fam = FamilyData(relation=relation, free_vars=tuple(rel_vars),
                     pinned={k: rational(v) for k, v in pinned.items()},
                     representative=full_rep)
    return BranchReport(pattern, "family", family=fam)


def _lin_coeff(g: SparsePoly, name: str) -> Fraction:
    idx = g.variables.index(name)
    for m, c in g.terms.items():
        if m[idx] == 1 and sum(m) == 1:
            return Fraction(c)
    raise ValueError("no linear term in %s" % name)


def _fermat_representative(relation: SparsePoly, rel_vars: List[str]):
    """A nonzero rational point on the linear relation whose coordinates all
    have fifth roots in the tower."""
    const = Fraction(0)
    coeffs: Dict[str, Fraction] = {}
    zero_m = (0,) * len(relation.variables)
    for m, c in relation.terms.items():
        if m == zero_m:
            const = c
            continue
        name = [n for n, e in zip(relation.variables, m) if e][0]
        coeffs[name] = c
    cands = [Fraction(x) for x in (1, -1, 2, -2, 32, -32, 3, -3)]
    names = rel_vars
    for assign in product(cands, repeat=len(names) - 1):
        total = const + sum(coeffs[n] * v for n, v in zip(names[:-1], assign))
        last = names[-1]
        val = -total / coeffs[last]
        if val == 0:
            continue
        if fifth_root(rational(val)) is None:
            continue
        if any(fifth_root(rational(v)) is None for v in assign):
            continue
        out = dict(zip(names[:-1], assign))
        out[last] = val
        return out
    return None


# ---------------------------------------------------------------------------
# emptiness / degeneracy certificates
# ---------------------------------------------------------------------------


def _certify_branch(spec, pattern, gens, defs, nonzero_vars, note="") -> BranchReport:
    """Prove that a branch contributes no nondegenerate solutions.

    Recursively discharge each fifth-power slot scale: solutions with a
    nonzero scale are ruled out by gauging it to +-1 (scaling invariance) and
    exhibiting unit certificates; with every scale zero, any remaining
    solution must make the surviving slots pairwise proportional (a common
    polynomial factor), certified by radical membership of the minors.
    """
    exprs: List[SparsePoly] = []
    for v in spec.variables:
        if v in spec.fifth_power_vars and any(g.degree_in(v) for g in gens if v in g.variables):
            exprs.append(SparsePoly.variable(gens[0].variables, v, QQ)
                         if gens else SparsePoly.variable(spec.variables, v, QQ))
    for name, f in defs:
        if name in spec.fifth_power_vars and not f.is_zero():
            exprs.append(f)
    ok = _certify_recursive(spec, [g for g in gens], nonzero_vars, exprs)
    if ok:
        return BranchReport(pattern, "degenerate", note=note + "; certified degenerate")
    return BranchReport(pattern, "inconclusive", note=note + "; certificates failed")


def _certify_recursive(spec, gens, nonzero_vars, exprs) -> bool:
    if spec.pool is not None and spec.pool.exhausted():
        return False
    if exprs:
        ex = exprs[0]
        for val in (1, -1):
            sub = gens + [_match_ring(ex, gens) - _const_like(gens, val)]
            if not _branch_is_empty(spec, sub, nonzero_vars):
                return False
        sub0 = gens + [_match_ring(ex, gens)]
        return _certify_recursive(spec, sub0, nonzero_vars, exprs[1:])
    return _certify_degenerate(spec, gens, nonzero_vars)


def _match_ring(ex: SparsePoly, gens: List[SparsePoly]) -> SparsePoly:
    if not gens:
        return ex
    ring = gens[0].variables
    index = {v: i for i, v in enumerate(ring)}
    if ex.variables == ring:
        return ex
    return _embed(ex, ring, index)


def _const_like(gens: List[SparsePoly], val) -> SparsePoly:
    ring = gens[0].variables if gens else ("t_",)
    return SparsePoly.constant(ring, val, QQ)


def _branch_is_empty(spec, gens, nonzero_vars) -> bool:
    gens = [g for g in gens if not g.is_zero()]
    for g in gens:
        if not g.used_variables():
            return True  # nonzero constant generator
    if not gens:
        return False
    ring = gens[0].variables
    allvars = ("t_",) + tuple(ring)
    index = {v: i for i, v in enumerate(allvars)}
    sys_gens = [_embed(g, allvars, index) for g in gens]
    live = set()
    for g in gens:
        live.update(g.used_variables())
    active_nonzero = [v for v in nonzero_vars if v in live]
    if active_nonzero:
        prod_poly = SparsePoly.constant(allvars, 1, QQ)
        for v in active_nonzero:
            prod_poly = prod_poly * SparsePoly.variable(allvars, v, QQ)
        sys_gens.append(prod_poly * SparsePoly.variable(allvars, "t_", QQ)
                        - SparsePoly.constant(allvars, 1, QQ))
    try:
        gb = _run_gb(spec, sys_gens, spec.certificate_budget)
    except GroebnerBudgetExceeded:
        return False
    return contains_one(gb)


def _certify_degenerate(spec, gens, nonzero_vars) -> bool:
    """All solutions of the all-scales-zero stratum are proportional."""
    slots = [s for s in spec.binomial_slots if s is not None]
    if len(slots) != len(spec.binomial_slots):
        return False  # a slot the certificate cannot express
    if len(slots) < 2:
        return not slots
    gens = [g for g in gens if not g.is_zero()]
    if not gens:
        return False
    ring = gens[0].variables
    allvars = ("t_",) + tuple(ring)
    index = {v: i for i, v in enumerate(allvars)}
    sys_gens = [_embed(g, allvars, index) for g in gens]
    live = set()
    for g in gens:
        live.update(g.used_variables())
    active_nonzero = [v for v in nonzero_vars if v in live]
    if active_nonzero:
        prod_poly = SparsePoly.constant(allvars, 1, QQ)
        for v in active_nonzero:
            prod_poly = prod_poly * SparsePoly.variable(allvars, v, QQ)
        sys_gens.append(prod_poly * SparsePoly.variable(allvars, "t_", QQ)
                        - SparsePoly.constant(allvars, 1, QQ))
    try:
        gb = _run_gb(spec, sys_gens, spec.certificate_budget)
    except GroebnerBudgetExceeded:
        return False
    if contains_one(gb):
        return True

    def term_of(namespec) -> SparsePoly:
        if namespec == "1":
            return SparsePoly.constant(allvars, 1, QQ)
        if namespec in allvars:
            return SparsePoly.variable(allvars, namespec, QQ)
        return SparsePoly.zero(allvars, QQ)  # pattern-zeroed coefficient

    for i in range(len(slots)):
        for j in range(i + 1, len(slots)):
            if spec.pool is not None and spec.pool.exhausted():
                return False
            ti, ci = slots[i]
            tj, cj = slots[j]
            minor = term_of(ti) * term_of(cj) - term_of(tj) * term_of(ci)
            if minor.is_zero():
                continue
            ok = False
            for power in (1, 2, 4):
                if normal_form(minor ** power, gb, LEX).is_zero():
                    ok = True
                    break
            if not ok:
                return False
    return True
