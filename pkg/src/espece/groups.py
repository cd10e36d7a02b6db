"""Finite symmetric-group machinery.

Permutations of {1,...,n}, finite left S_n-actions given by an explicit
act function, orbits, stabilizers, fixed points, and the counting and
enumeration of equivariant maps between actions.  Everything is exact
and deterministic: points are kept in their canonical sort order and
every "least representative" tie-break uses that order.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Callable, Tuple

from .errors import (
    DegreeMismatch,
    DegreeTooLarge,
    PointNotInAction,
    TooManyMaps,
)

# 8! = 40320 permutations; anything past this is no longer desk scale.
MAX_DEGREE = 8


@dataclass(frozen=True)
class Permutation:
    """A permutation of {1,...,n} in one-line notation."""

    images: Tuple[int, ...]

    def __post_init__(self):
        n = len(self.images)
        if sorted(self.images) != list(range(1, n + 1)):
            raise ValueError(f"not a bijection of 1..{n}: {self.images}")

    @property
    def degree(self) -> int:
        return len(self.images)

    def __call__(self, i: int) -> int:
        # Labels outside 1..n (the adjoined points of derivative contexts
        # are 0, -1, ...) are fixed by every permutation.
        if 1 <= i <= len(self.images):
            return self.images[i - 1]
        return i

    def compose(self, other: "Permutation") -> "Permutation":
        """self after other: (self*other)(i) = self(other(i))."""
        if other.degree != self.degree:
            raise DegreeMismatch(f"{self.degree} vs {other.degree}")
        return Permutation(tuple(self.images[j - 1] for j in other.images))

    __mul__ = compose

    def inverse(self) -> "Permutation":
        inv = [0] * len(self.images)
        for i, j in enumerate(self.images, start=1):
            inv[j - 1] = i
        return Permutation(tuple(inv))

    def cycle_type(self) -> Tuple[int, ...]:
        seen = set()
        lens = []
        for start in range(1, len(self.images) + 1):
            if start in seen:
                continue
            k, size = start, 0
            while k not in seen:
                seen.add(k)
                k = self(k)
                size += 1
            lens.append(size)
        return tuple(sorted(lens, reverse=True))

    @staticmethod
    def identity(n: int) -> "Permutation":
        return Permutation(tuple(range(1, n + 1)))


def all_permutations(n: int, max_degree: int | None = None) -> Tuple[Permutation, ...]:
    """All of S_n: identity first, then lexicographic one-line order."""
    cap = MAX_DEGREE if max_degree is None else max_degree
    if n > cap:
        raise DegreeTooLarge(f"S_{n} exceeds the configured cap {cap}")
    return tuple(Permutation(p) for p in itertools.permutations(range(1, n + 1)))


def generators(n: int) -> Tuple[Permutation, ...]:
    """The standard generating set {(1 2), (1 2 ... n)} of S_n."""
    if n <= 1:
        return (Permutation.identity(n),)
    swap = Permutation((2, 1) + tuple(range(3, n + 1)))
    if n == 2:
        return (swap,)
    cycle = Permutation(tuple(range(2, n + 1)) + (1,))
    return (swap, cycle)


@dataclass(frozen=True)
class SubgroupElements:
    """A subgroup of S_n listed by its elements."""

    degree: int
    elements: frozenset

    def __len__(self) -> int:
        return len(self.elements)

    def is_subgroup(self) -> bool:
        els = self.elements
        if Permutation.identity(self.degree) not in els:
            return False
        return all(a * b in els and a.inverse() in els for a in els for b in els)

    def cycle_type_multiset(self) -> Tuple[Tuple[int, ...], ...]:
        """Multiset of member cycle types; a conjugacy invariant."""
        return tuple(sorted(p.cycle_type() for p in self.elements))


class FiniteAction:
    """A left S_n-action on a finite set of points.

    ``points`` is kept sorted; ``act`` must satisfy the usual identity and
    composition laws (checked in tests, not on every call).
    """

    def __init__(self, degree: int, points, act: Callable):
        self.degree = degree
        self.points = tuple(sorted(points))
        self._point_set = frozenset(self.points)
        self._act = act
        self._memo: dict = {}

    def __contains__(self, x) -> bool:
        return x in self._point_set

    def act(self, sigma: Permutation, x):
        key = (sigma.images, x)
        try:
            return self._memo[key]
        except KeyError:
            y = self._act(sigma, x)
            self._memo[key] = y
            return y


@dataclass(frozen=True)
class Orbit:
    representative: object
    points: Tuple


def orbits(a: FiniteAction) -> Tuple[Orbit, ...]:
    """Partition of the points into orbits, least point first in each."""
    gens = generators(a.degree)
    remaining = set(a.points)
    out = []
    for x in a.points:  # sorted, so each new orbit's seed is its least point
        if x not in remaining:
            continue
        orbit = {x}
        frontier = [x]
        while frontier:
            y = frontier.pop()
            for g in gens:
                z = a.act(g, y)
                if z not in orbit:
                    orbit.add(z)
                    frontier.append(z)
        remaining -= orbit
        pts = tuple(sorted(orbit))
        out.append(Orbit(pts[0], pts))
    return tuple(out)


def stabilizer(a: FiniteAction, x) -> SubgroupElements:
    """All permutations fixing x, by direct scan of S_n."""
    if x not in a:
        raise PointNotInAction(repr(x))
    els = frozenset(s for s in all_permutations(a.degree) if a.act(s, x) == x)
    return SubgroupElements(a.degree, els)


def fixed_points(H: SubgroupElements, a: FiniteAction) -> Tuple:
    """Points of ``a`` fixed by every element of H."""
    if H.degree != a.degree:
        raise DegreeMismatch(f"{H.degree} vs {a.degree}")
    gens = [s for s in H.elements if s.images != Permutation.identity(H.degree).images]
    return tuple(x for x in a.points if all(a.act(s, x) == x for s in gens))


def count_equivariant_maps(src: FiniteAction, tgt: FiniteAction) -> int:
    """Number of equivariant maps src -> tgt by orbit-stabilizer counting.

    A map is freely determined by sending each orbit representative to a
    point fixed by its stabilizer; the count is the product of the fixed
    point set sizes.
    """
    if src.degree != tgt.degree:
        raise DegreeMismatch(f"{src.degree} vs {tgt.degree}")
    total = 1
    for orb in orbits(src):
        total *= len(fixed_points(stabilizer(src, orb.representative), tgt))
        if total == 0:
            return 0
    return total


def _transversal(a: FiniteAction, rep) -> dict:
    """For each point of rep's orbit, one permutation carrying rep to it."""
    gens = generators(a.degree)
    out = {rep: Permutation.identity(a.degree)}
    frontier = [rep]
    while frontier:
        y = frontier.pop()
        for g in gens:
            z = a.act(g, y)
            if z not in out:
                out[z] = g * out[y]
                frontier.append(z)
    return out


def enumerate_equivariant_maps(src: FiniteAction, tgt: FiniteAction, limit: int):
    """Materialize every equivariant map src -> tgt as a dict.

    Raises TooManyMaps when the exact count exceeds ``limit``.
    """
    count = count_equivariant_maps(src, tgt)
    if count > limit:
        raise TooManyMaps(f"{count} equivariant maps exceed limit {limit}")
    orbs = orbits(src)
    reps = [o.representative for o in orbs]
    choices = [fixed_points(stabilizer(src, r), tgt) for r in reps]
    transversals = [_transversal(src, r) for r in reps]
    maps = []
    for picked in itertools.product(*choices):
        f = {}
        for rep, target, trans in zip(reps, picked, transversals):
            for point, sigma in trans.items():
                f[point] = tgt.act(sigma, target)
        maps.append(f)
    assert len(maps) == count
    return tuple(maps)


def _conjugate_set(sigma: Permutation, H: frozenset) -> frozenset:
    inv = sigma.inverse()
    return frozenset(sigma * h * inv for h in H)


def subgroups_conjugate(H: SubgroupElements, K: SubgroupElements) -> bool:
    if H.degree != K.degree:
        raise DegreeMismatch(f"{H.degree} vs {K.degree}")
    if len(H) != len(K):
        return False
    if H.cycle_type_multiset() != K.cycle_type_multiset():
        return False
    if H.elements == K.elements:
        return True
    kset = K.elements
    inv_cache = {}
    for sigma in all_permutations(H.degree):
        inv = inv_cache.setdefault(sigma.images, sigma.inverse())
        if all((sigma * h * inv) in kset for h in H.elements):
            return True
    return False


def _orbit_stabilizers(a: FiniteAction):
    return [(o, stabilizer(a, o.representative)) for o in orbits(a)]


def action_signature(a: FiniteAction):
    """Per-orbit (size, stabilizer order, stabilizer cycle types), sorted.

    Equal signatures are necessary (not sufficient) for isomorphism; the
    signature is also what iso failure reports print.
    """
    sig = []
    for orb, stab in _orbit_stabilizers(a):
        sig.append((len(orb.points), len(stab), stab.cycle_type_multiset()))
    return tuple(sorted(sig))


def actions_isomorphic(a: FiniteAction, b: FiniteAction) -> bool:
    """Classify by the multiset of conjugacy classes of orbit stabilizers."""
    if a.degree != b.degree:
        raise DegreeMismatch(f"{a.degree} vs {b.degree}")
    if len(a.points) != len(b.points):
        return False
    sa = _orbit_stabilizers(a)
    sb = _orbit_stabilizers(b)
    if len(sa) != len(sb):
        return False

    def bucket(items):
        buckets = {}
        for orb, stab in items:
            key = (len(orb.points), len(stab), stab.cycle_type_multiset())
            buckets.setdefault(key, []).append(stab)
        return buckets

    ba, bb = bucket(sa), bucket(sb)
    if set(ba) != set(bb):
        return False
    for key, stabs_a in ba.items():
        stabs_b = list(bb[key])
        if len(stabs_a) != len(stabs_b):
            return False
        # match each stabilizer of a with a conjugate one of b
        for H in stabs_a:
            for i, K in enumerate(stabs_b):
                if subgroups_conjugate(H, K):
                    del stabs_b[i]
                    break
            else:
                return False
    return True
