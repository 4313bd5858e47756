"""The symmetry group (Z/5)^4 and the classification of L meet gL.

A group element acts on homogeneous coordinates by fifth roots of unity; the
normalized representative fixes the exponent of coordinate 0 to be 0, so an
element is a 4-tuple of exponents mod 5.  The intersection of the real locus
with its translate is the fixed locus of the element intersected with the
real locus; its connected components correspond to the value classes of the
exponent 5-tuple with at least two members, and the component with support of
size m+1 is a real projective m-space.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from itertools import permutations, product
from typing import Dict, List, Optional, Tuple


@dataclass(frozen=True, order=True)
class GroupElement:
    exponents: Tuple[int, int, int, int]

    def __post_init__(self):
        object.__setattr__(self, "exponents", tuple(e % 5 for e in self.exponents))

    @staticmethod
    def identity() -> "GroupElement":
        return GroupElement((0, 0, 0, 0))

    def __mul__(self, other: "GroupElement") -> "GroupElement":
        return GroupElement(tuple((a + b) % 5 for a, b in zip(self.exponents, other.exponents)))

    def inverse(self) -> "GroupElement":
        return GroupElement(tuple((-a) % 5 for a in self.exponents))

    def power(self, n: int) -> "GroupElement":
        return GroupElement(tuple((a * n) % 5 for a in self.exponents))

    def five_tuple(self) -> Tuple[int, ...]:
        """Exponents on all five coordinates (coordinate 0 normalized to 0)."""
        return (0,) + self.exponents

    def is_identity(self) -> bool:
        return all(e == 0 for e in self.exponents)

    def __str__(self):
        return ",".join(str(e) for e in self.exponents)


DIFFEO_BY_SUPPORT = {5: "RP3", 4: "RP2", 3: "RP1", 2: "RP0"}


@dataclass(frozen=True)
class IntersectionComponent:
    """One connected component of the intersection locus."""

    support: Tuple[int, ...]  # coordinates not forced to vanish
    diffeo_type: str
    value: int  # common exponent of the value class

    @property
    def dim(self) -> int:
        return len(self.support) - 2

    def __str__(self):
        return "%s[%s]" % (self.diffeo_type, "".join(str(i) for i in self.support))


def intersection(g: GroupElement) -> List[IntersectionComponent]:
    """Connected components of the intersection, ordered by smallest support."""
    five = g.five_tuple()
    classes: Dict[int, List[int]] = {}
    for i, v in enumerate(five):
        classes.setdefault(v, []).append(i)
    comps = []
    for v, coords in classes.items():
        if len(coords) >= 2:
            comps.append(
                IntersectionComponent(tuple(coords), DIFFEO_BY_SUPPORT[len(coords)], v)
            )
    comps.sort(key=lambda c: min(c.support))
    return comps


def partition_shape(g: GroupElement) -> Tuple[int, ...]:
    """Multiset shape of the exponent value classes, e.g. (3, 1, 1)."""
    counts = Counter(g.five_tuple()).values()
    return tuple(sorted(counts, reverse=True))


_SHAPE_LABEL = {
    (5,): "RP3",
    (4, 1): "RP2",
    (3, 1, 1): "RP1",
    (3, 2): "RP1+RP0",
    (2, 1, 1, 1): "RP0",
    (2, 2, 1): "RP0+RP0",
    (1, 1, 1, 1, 1): "EMPTY",
}


def shape_label(g: GroupElement) -> str:
    return _SHAPE_LABEL[partition_shape(g)]


def case_id(g: GroupElement) -> int:
    """Case number in the twelve-way classification of the intersection."""
    exps = g.exponents
    nonzero = [e for e in exps if e]
    n = len(nonzero)
    distinct = len(set(nonzero))
    if n == 0:
        return 1
    if n == 1:
        return 2
    if n == 2:
        return 3 if distinct == 2 else 4
    if n == 3:
        if distinct == 3:
            return 5
        if distinct == 1:
            return 7
        return 6
    # n == 4
    if distinct == 4:
        return 8
    if distinct == 1:
        return 12
    counts = sorted(Counter(nonzero).values(), reverse=True)
    if counts == [3, 1]:
        return 11
    if counts == [2, 2]:
        return 10
    return 9  # [2, 1, 1]


@dataclass(frozen=True)
class CaseTag:
    case_id: int
    reduced_id: int
    representative: GroupElement
    permutation: Tuple[int, ...]  # coordinate permutation pi with pi applied to g'
    shift: int  # diagonal exponent shift used in the rewriting
    params: Tuple[int, ...]  # reduced-case parameters (see below)

    # params conventions: case 1: (); case 2: (a,); case 3: (r, s) with r < s;
    # case 4: (r,); case 5: sorted (r, s, t); case 6: (r, t) canonical under
    # the pair-class relabeling (r, t) ~ (5 - r, (t - r) % 5).


_REDUCED_OF_CASE = {1: 1, 2: 2, 3: 3, 4: 4, 5: 5, 6: 6, 7: 4, 8: 8, 9: 5, 10: 6, 11: 3, 12: 2}


def case6_param_orbit(r: int, t: int) -> Tuple[int, int]:
    """Canonical representative of (r, t) under (r, t) ~ (5 - r, (t - r) % 5)."""
    cand = [(r, t), ((5 - r) % 5, (t - r) % 5)]
    return min(cand)


def canonicalize(g: GroupElement) -> CaseTag:
    """Case tag with an explicit permutation-and-shift reduction witness.

    The representative h satisfies: h = shift + permuted g, i.e. writing
    f = g.five_tuple(), h.five_tuple()[i] = (f[perm[i]] + shift) % 5, and h is
    the minimal such normalized tuple (coordinate 0 exponent zero) realizing
    the reduced case shape with its conventional parameter layout.
    """
    cid = case_id(g)
    five = g.five_tuple()
    best: Optional[Tuple[Tuple[int, ...], Tuple[int, ...], int]] = None
    # shift must turn some value class into 0; try all five values
    for shift in range(5):
        shifted = tuple((v + shift) % 5 for v in five)
        if shifted.count(0) == 0:
            continue
        # order coordinates: zeros of the big class first in a canonical layout
        for perm in permutations(range(5)):
            cand = tuple(shifted[perm[i]] for i in range(5))
            if cand[0] != 0:
                continue
            if not _is_conventional(cand):
                continue
            if best is None or cand < best[0]:
                best = (cand, perm, shift)
    assert best is not None
    cand, perm, shift = best
    rep = GroupElement(cand[1:])
    params = _params_of(rep)
    return CaseTag(cid, _REDUCED_OF_CASE[cid], rep, perm, shift, params)


def _is_conventional(five: Tuple[int, ...]) -> bool:
    """Does the 5-tuple match a reduced-case conventional layout?"""
    shape = tuple(sorted(Counter(five).values(), reverse=True))
    exps = five[1:]
    nz = [e for e in exps if e]
    if shape == (5,):
        return True
    if shape == (4, 1):
        return len(nz) == 1 and exps[0] != 0  # (0, a, 0, 0, 0)
    if shape == (3, 1, 1):
        return len(nz) == 2 and exps[0] and exps[1] and exps[0] < exps[1]
    if shape == (3, 2):
        return len(nz) == 2 and exps[0] and exps[0] == exps[1]
    if shape == (2, 1, 1, 1):
        return len(nz) == 3 and all(exps[i] for i in range(3)) and exps[0] < exps[1] < exps[2]
    if shape == (2, 2, 1):
        return (
            len(nz) == 3
            and exps[0]
            and exps[0] == exps[1]
            and exps[2]
            and exps[2] != exps[0]
        )
    if shape == (1, 1, 1, 1, 1):
        return len(nz) == 4 and exps[0] < exps[1] < exps[2] < exps[3]
    return False


def _params_of(rep: GroupElement) -> Tuple[int, ...]:
    exps = rep.exponents
    nz = [e for e in exps if e]
    shape = partition_shape(rep)
    if shape == (5,):
        return ()
    if shape == (4, 1):
        return (nz[0],)
    if shape == (3, 1, 1):
        return (nz[0], nz[1])
    if shape == (3, 2):
        return (nz[0],)
    if shape == (2, 1, 1, 1):
        return tuple(sorted(nz))
    if shape == (2, 2, 1):
        return (exps[0], exps[2])
    return ()


def all_elements():
    for exps in product(range(5), repeat=4):
        yield GroupElement(exps)


def census() -> Dict[str, int]:
    """Counts of intersection shapes over all 625 elements."""
    out: Dict[str, int] = {}
    for g in all_elements():
        lab = shape_label(g)
        out[lab] = out.get(lab, 0) + 1
    return out


def census_by_shape() -> Dict[Tuple[int, ...], int]:
    out: Dict[Tuple[int, ...], int] = {}
    for g in all_elements():
        sh = partition_shape(g)
        out[sh] = out.get(sh, 0) + 1
    return out


def parse_group_element(text: str) -> GroupElement:
    parts = [p for p in text.replace(" ", "").split(",") if p != ""]
    if len(parts) != 4:
        raise ValueError("expected four comma-separated exponents, got %r" % text)
    vals = []
    for p in parts:
        v = int(p)
        if not 0 <= v <= 4:
            raise ValueError("exponent %d out of range 0..4" % v)
        vals.append(v)
    return GroupElement(tuple(vals))
