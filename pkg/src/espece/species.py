"""Species expressions, labelled structures, and symmetric-group actions.

A species expression is a tree of primitives (sets, subsets, linear and
cyclic orders, permutations, representables, explicit tables) and
combinators (sum, Hadamard and Cauchy product, substitution, derivative,
pointing, the two adjoints of the derivative, and truncations).  For a
degree n the engine enumerates every structure on the label set
{1,...,n} in a canonical nested-tuple encoding, and relabeling along a
permutation re-canonicalizes, giving the S_n-action.

Conventions fixed here:
  * Cyc[0] = 0 and Cyc[1] = 1; the (n-1)! count holds for n >= 1.
  * Lin[0], Perm[0], Subsets[0] are singletons; ExpPlus[0] = LinPlus[0] = 0.
  * Derivative contexts adjoin reserved labels 0, -1, -2, ... (outermost
    first); permutations never move labels <= 0.
  * Substitution blocks are listed by least element and the outer
    structure lives on block ranks 1..k.
"""

from __future__ import annotations

import hashlib
import itertools
import math
from collections import Counter
from dataclasses import dataclass
from typing import Dict, Tuple

from .errors import (
    BudgetExceeded,
    Diagnostic,
    EnumerationTooLarge,
    InvalidExpr,
    StructureNotOfExpr,
)
from .groups import FiniteAction, Permutation, all_permutations

ENUMERATION_CAP = 10 ** 6


# ---------------------------------------------------------------------------
# Expression nodes


class SpeciesExpr:
    """Base class of species expression nodes.

    Operators: ``+`` sum, ``*`` Cauchy product, ``&`` Hadamard product,
    ``f(g)`` substitution.
    """

    def __add__(self, other):
        return Sum(self, other)

    def __mul__(self, other):
        return Cauchy(self, other)

    def __and__(self, other):
        return Hadamard(self, other)

    def __call__(self, other):
        return Substitute(self, other)


@dataclass(frozen=True)
class Zero(SpeciesExpr):
    pass


@dataclass(frozen=True)
class One(SpeciesExpr):
    """The Cauchy unit y[0]: one structure on the empty label set."""


@dataclass(frozen=True)
class X(SpeciesExpr):
    """The singleton species y[1]."""


@dataclass(frozen=True)
class Representable(SpeciesExpr):
    """y[k]: the k! bijections {1..k} -> A when |A| = k, nothing else."""

    k: int


@dataclass(frozen=True)
class Exp(SpeciesExpr):
    """One structure (the label set itself) at every degree."""


@dataclass(frozen=True)
class ExpPlus(SpeciesExpr):
    pass


@dataclass(frozen=True)
class Lin(SpeciesExpr):
    """Linear orders; the regular (free transitive) action at each degree."""


@dataclass(frozen=True)
class LinPlus(SpeciesExpr):
    pass


@dataclass(frozen=True)
class Cyc(SpeciesExpr):
    """Oriented cycles; empty at degree 0 by convention."""


@dataclass(frozen=True)
class Perm(SpeciesExpr):
    """Permutations of the label set, acted on by conjugation."""


@dataclass(frozen=True)
class Subsets(SpeciesExpr):
    pass


_TABLE_REGISTRY: Dict[str, "Table"] = {}


class Table(SpeciesExpr):
    """Explicit finite species: degreewise atom names plus full actions.

    ``atoms[n]`` lists the structures at degree n and ``action[n]`` maps
    every one-line permutation of S_n to an atom relabeling.  Degrees
    beyond ``max_degree`` are an error, not an implicit zero.
    """

    def __init__(self, name, atoms, action):
        self.name = str(name)
        self.atoms = tuple(tuple(row) for row in atoms)
        self.action = tuple(
            {tuple(sig): dict(mapping) for sig, mapping in row.items()} for row in action
        )
        normal = (
            self.name,
            self.atoms,
            tuple(
                tuple(sorted((sig, tuple(sorted(mapping.items()))) for sig, mapping in row.items()))
                for row in self.action
            ),
        )
        digest = hashlib.sha1(repr(normal).encode()).hexdigest()[:16]
        self.key = f"{self.name}:{digest}"
        _TABLE_REGISTRY[self.key] = self

    @property
    def max_degree(self) -> int:
        return len(self.atoms) - 1

    def __eq__(self, other):
        return isinstance(other, Table) and self.key == other.key

    def __hash__(self):
        return hash(("Table", self.key))

    def __repr__(self):
        return f"Table({self.name!r}, max_degree={self.max_degree})"


@dataclass(frozen=True)
class Sum(SpeciesExpr):
    f: SpeciesExpr
    g: SpeciesExpr


@dataclass(frozen=True)
class Hadamard(SpeciesExpr):
    f: SpeciesExpr
    g: SpeciesExpr


@dataclass(frozen=True)
class Cauchy(SpeciesExpr):
    f: SpeciesExpr
    g: SpeciesExpr


@dataclass(frozen=True)
class Substitute(SpeciesExpr):
    f: SpeciesExpr
    g: SpeciesExpr


@dataclass(frozen=True)
class Derive(SpeciesExpr):
    f: SpeciesExpr


@dataclass(frozen=True)
class Pointing(SpeciesExpr):
    """A chosen label plus a derivative structure on its complement."""

    f: SpeciesExpr


@dataclass(frozen=True)
class AdjL(SpeciesExpr):
    """Left adjoint of the derivative: a chosen label plus a structure
    on its complement."""

    f: SpeciesExpr


@dataclass(frozen=True)
class AdjR(SpeciesExpr):
    """Right adjoint of the derivative: one structure on each label's
    complement."""

    f: SpeciesExpr


@dataclass(frozen=True)
class DeriveL(SpeciesExpr):
    """The composite derivative-after-left-adjoint."""

    f: SpeciesExpr


@dataclass(frozen=True)
class TruncLeft(SpeciesExpr):
    """Kill every degree above the cutoff."""

    f: SpeciesExpr
    cutoff: int


@dataclass(frozen=True)
class TruncRight(SpeciesExpr):
    """Replace every degree above the cutoff by a singleton."""

    f: SpeciesExpr
    cutoff: int


_PRIMHOLDS = (Zero, One, X, Representable, Exp, ExpPlus, Lin, LinPlus, Cyc, Perm, Subsets, Table)


def children(e: SpeciesExpr) -> Tuple[SpeciesExpr, ...]:
    if isinstance(e, (Sum, Hadamard, Cauchy, Substitute)):
        return (e.f, e.g)
    if isinstance(e, (Derive, Pointing, AdjL, AdjR, DeriveL, TruncLeft, TruncRight)):
        return (e.f,)
    return ()


# ---------------------------------------------------------------------------
# Validation


_VALIDATED: set = set()


def validate(e: SpeciesExpr) -> Tuple[Diagnostic, ...]:
    """Structured diagnostics; an empty tuple means the expression is ok."""
    diags: list = []
    _validate(e, "root", diags)
    if not diags:
        _VALIDATED.add(e)
    return tuple(diags)


def _validate(e, path, diags):
    if e in _VALIDATED:
        return
    if isinstance(e, Representable) and e.k < 0:
        diags.append(Diagnostic("NegativeDegree", path, f"Y({e.k})"))
    if isinstance(e, (TruncLeft, TruncRight)) and e.cutoff < 0:
        diags.append(Diagnostic("NegativeCutoff", path, f"cutoff {e.cutoff}"))
    if isinstance(e, Table):
        _validate_table(e, path, diags)
    before = len(diags)
    for i, child in enumerate(children(e)):
        _validate(child, f"{path}.{i}", diags)
    if isinstance(e, Substitute) and len(diags) == before:
        try:
            if _card(e.g, 0) != 0:
                diags.append(
                    Diagnostic(
                        "InnerNotPositive",
                        path,
                        "substitution requires the inner species to be empty at degree 0",
                    )
                )
        except BudgetExceeded as exc:
            diags.append(Diagnostic("BudgetExceeded", path, str(exc)))


def _validate_table(e: Table, path, diags):
    for n, row in enumerate(e.atoms):
        if len(set(row)) != len(row):
            diags.append(Diagnostic("DuplicateAtoms", path, f"degree {n}"))
        action = e.action[n] if n < len(e.action) else None
        if action is None:
            diags.append(Diagnostic("MissingAction", path, f"degree {n}"))
            continue
        expected = {p.images for p in all_permutations(n)}
        if set(action) != expected:
            diags.append(Diagnostic("IncompleteAction", path, f"degree {n}"))
            continue
        ident = tuple(range(1, n + 1))
        if any(action[ident].get(a) != a for a in row):
            diags.append(Diagnostic("IdentityNotFixed", path, f"degree {n}"))
        for sig, mapping in action.items():
            if sorted(mapping) != sorted(row) or sorted(mapping.values()) != sorted(row):
                diags.append(
                    Diagnostic("NonBijectiveAction", path, f"degree {n}, permutation {sig}")
                )
                break


def require_valid(e: SpeciesExpr) -> None:
    diags = validate(e)
    if diags:
        raise InvalidExpr(diags)


# ---------------------------------------------------------------------------
# Exact cardinalities (the counting recurrences)


_COUNT_CACHE: dict = {}


def _integer_partitions(n: int):
    def gen(n, maxpart):
        if n == 0:
            yield ()
            return
        for p in range(min(n, maxpart), 0, -1):
            for rest in gen(n - p, p):
                yield (p,) + rest

    return gen(n, n)


def _subst_count(f, g, n) -> int:
    total = 0
    for lam in _integer_partitions(n):
        fk = _card(f, len(lam))
        if fk == 0:
            continue
        ways = math.factorial(n)
        for part in lam:
            ways //= math.factorial(part)
        for mult in Counter(lam).values():
            ways //= math.factorial(mult)
        prod = fk * ways
        for part in lam:
            prod *= _card(g, part)
            if prod == 0:
                break
        total += prod
    return total


def _card(e, n: int) -> int:
    key = (e, n)
    hit = _COUNT_CACHE.get(key)
    if hit is not None:
        return hit
    if isinstance(e, Zero):
        v = 0
    elif isinstance(e, One):
        v = 1 if n == 0 else 0
    elif isinstance(e, X):
        v = 1 if n == 1 else 0
    elif isinstance(e, Representable):
        v = math.factorial(e.k) if n == e.k else 0
    elif isinstance(e, Exp):
        v = 1
    elif isinstance(e, ExpPlus):
        v = 1 if n >= 1 else 0
    elif isinstance(e, Lin):
        v = math.factorial(n)
    elif isinstance(e, LinPlus):
        v = math.factorial(n) if n >= 1 else 0
    elif isinstance(e, Cyc):
        v = math.factorial(n - 1) if n >= 1 else 0
    elif isinstance(e, Perm):
        v = math.factorial(n)
    elif isinstance(e, Subsets):
        v = 2 ** n
    elif isinstance(e, Table):
        if n > e.max_degree:
            raise BudgetExceeded(
                f"table {e.name!r} holds degrees 0..{e.max_degree}, degree {n} requested"
            )
        v = len(e.atoms[n])
    elif isinstance(e, Sum):
        v = _card(e.f, n) + _card(e.g, n)
    elif isinstance(e, Hadamard):
        v = _card(e.f, n) * _card(e.g, n)
    elif isinstance(e, Cauchy):
        v = sum(
            math.comb(n, k) * _card(e.f, k) * _card(e.g, n - k)
            for k in range(n + 1)
        )
    elif isinstance(e, Substitute):
        v = _subst_count(e.f, e.g, n)
    elif isinstance(e, Derive):
        v = _card(e.f, n + 1)
    elif isinstance(e, Pointing):
        v = n * _card(e.f, n)
    elif isinstance(e, AdjL):
        v = n * _card(e.f, n - 1) if n >= 1 else 0
    elif isinstance(e, AdjR):
        v = _card(e.f, n - 1) ** n if n >= 1 else 1
    elif isinstance(e, DeriveL):
        v = (n + 1) * _card(e.f, n)
    elif isinstance(e, TruncLeft):
        v = _card(e.f, n) if n <= e.cutoff else 0
    elif isinstance(e, TruncRight):
        v = _card(e.f, n) if n <= e.cutoff else 1
    else:
        raise TypeError(f"not a species expression: {e!r}")
    _COUNT_CACHE[key] = v
    return v


def cardinality(e: SpeciesExpr, n: int) -> int:
    """|e[n]|, computed by exact recurrences (no enumeration)."""
    require_valid(e)
    return _card(e, n)


def degree_budget(e: SpeciesExpr, n: int) -> int:
    """Maximum degree of any primitive table consulted evaluating e at n."""
    if isinstance(e, _PRIMHOLDS):
        return n
    if isinstance(e, (Sum, Hadamard, Cauchy, Substitute)):
        return max(degree_budget(e.f, n), degree_budget(e.g, n))
    if isinstance(e, Derive):
        return degree_budget(e.f, n + 1)
    if isinstance(e, (Pointing, DeriveL)):
        return degree_budget(e.f, n)
    if isinstance(e, (AdjL, AdjR)):
        return degree_budget(e.f, max(n - 1, 0))
    if isinstance(e, (TruncLeft, TruncRight)):
        return degree_budget(e.f, min(n, e.cutoff))
    raise TypeError(f"not a species expression: {e!r}")


# ---------------------------------------------------------------------------
# Canonical structures


def fresh_star(labels) -> int:
    """The next reserved derivative label relative to a label set."""
    nonpos = [x for x in labels if x <= 0]
    return 0 if not nonpos else min(nonpos) - 1


def _min_rotation(xs: Tuple[int, ...]) -> Tuple[int, ...]:
    i = xs.index(min(xs))
    return xs[i:] + xs[:i]


def transport(enc, mapping: dict, labels: Tuple[int, ...]):
    """Relabel a canonical structure on ``labels`` along a bijection.

    ``mapping`` must be defined on every member of ``labels``; the result
    is the canonical encoding on the image label set.  Reserved labels
    adjoined by derivative contexts below this node are renumbered so the
    result stays canonical.
    """
    tag = enc[0]
    if tag in ("set", "subset"):
        return (tag, tuple(sorted(mapping[x] for x in enc[1])))
    if tag == "lin":
        return (tag, tuple(mapping[x] for x in enc[1]))
    if tag == "cyc":
        return (tag, _min_rotation(tuple(mapping[x] for x in enc[1])))
    if tag == "perm":
        return (tag, tuple(sorted((mapping[x], mapping[y]) for x, y in enc[1])))
    if tag == "rep":
        return (tag, tuple(mapping[x] for x in enc[1]))
    if tag == "pair":
        U, sf, sg = enc[1]
        rest = tuple(x for x in labels if x not in U)
        return (
            tag,
            (
                tuple(sorted(mapping[x] for x in U)),
                transport(sf, mapping, U),
                transport(sg, mapping, rest),
            ),
        )
    if tag == "both":
        sf, sg = enc[1]
        return (tag, (transport(sf, mapping, labels), transport(sg, mapping, labels)))
    if tag in ("inl", "inr"):
        return (tag, transport(enc[1], mapping, labels))
    if tag == "deriv":
        old = fresh_star(labels)
        new = fresh_star([mapping[x] for x in labels])
        inner_labels = tuple(sorted(labels + (old,)))
        m2 = dict(mapping)
        m2[old] = new
        return (tag, transport(enc[1], m2, inner_labels))
    if tag == "point":
        a, inner = enc[1]
        rest = tuple(x for x in labels if x != a)
        old = fresh_star(rest)
        new = fresh_star([mapping[x] for x in rest])
        m2 = dict(mapping)
        m2[old] = new
        return (tag, (mapping[a], transport(inner, m2, tuple(sorted(rest + (old,))))))
    if tag == "adjl":
        a, inner = enc[1]
        rest = tuple(x for x in labels if x != a)
        return (tag, (mapping[a], transport(inner, mapping, rest)))
    if tag == "tuple":
        out = []
        for a, inner in enc[1]:
            rest = tuple(x for x in labels if x != a)
            out.append((mapping[a], transport(inner, mapping, rest)))
        return (tag, tuple(sorted(out)))
    if tag == "part":
        blocks, outer, inners = enc[1]
        new_blocks = [tuple(sorted(mapping[x] for x in blk)) for blk in blocks]
        order = sorted(range(len(new_blocks)), key=lambda i: new_blocks[i])
        rho = {old_i + 1: new_pos + 1 for new_pos, old_i in enumerate(order)}
        k = len(blocks)
        outer2 = transport(outer, rho, tuple(range(1, k + 1)))
        blocks2 = tuple(new_blocks[i] for i in order)
        inners2 = tuple(
            transport(inners[i], mapping, blocks[i]) for i in order
        )
        return (tag, (blocks2, outer2, inners2))
    if tag == "atom":
        _, key, name, old_labels = enc
        old_sorted = tuple(sorted(old_labels))
        new_sorted = tuple(sorted(mapping[x] for x in old_labels))
        pos = {lab: i for i, lab in enumerate(new_sorted)}
        pi = tuple(pos[mapping[x]] + 1 for x in old_sorted)
        table = _TABLE_REGISTRY[key]
        new_name = table.action[len(old_sorted)][pi][name]
        return (tag, key, new_name, new_sorted)
    if tag == "top":
        return enc
    raise ValueError(f"unknown structure tag {tag!r}")


def act_structure(sigma: Permutation, enc):
    """Relabel a canonical degree-n structure along a permutation of 1..n."""
    labels = tuple(range(1, sigma.degree + 1))
    return transport(enc, {x: sigma(x) for x in labels}, labels)


# ---------------------------------------------------------------------------
# Enumeration


_ENUM_CACHE: dict = {}


def _set_partitions(labels: Tuple[int, ...]):
    if not labels:
        yield ()
        return
    first, rest = labels[0], labels[1:]
    for part in _set_partitions(rest):
        for i in range(len(part)):
            yield part[:i] + (tuple(sorted((first,) + part[i])),) + part[i + 1 :]
        yield ((first,),) + part


def structures_on(e: SpeciesExpr, labels: Tuple[int, ...]) -> Tuple:
    """All canonical e-structures on an arbitrary sorted label tuple."""
    key = (e, labels)
    hit = _ENUM_CACHE.get(key)
    if hit is not None:
        return hit
    out = tuple(sorted(_build(e, labels)))
    _ENUM_CACHE[key] = out
    return out


def _build(e, labels):
    n = len(labels)
    if isinstance(e, Zero):
        return
    elif isinstance(e, One):
        if n == 0:
            yield ("rep", ())
    elif isinstance(e, X):
        if n == 1:
            yield ("rep", (labels[0],))
    elif isinstance(e, Representable):
        if n == e.k:
            for p in itertools.permutations(labels):
                yield ("rep", p)
    elif isinstance(e, Exp):
        yield ("set", labels)
    elif isinstance(e, ExpPlus):
        if n >= 1:
            yield ("set", labels)
    elif isinstance(e, Lin):
        for p in itertools.permutations(labels):
            yield ("lin", p)
    elif isinstance(e, LinPlus):
        if n >= 1:
            for p in itertools.permutations(labels):
                yield ("lin", p)
    elif isinstance(e, Cyc):
        if n >= 1:
            for p in itertools.permutations(labels[1:]):
                yield ("cyc", (labels[0],) + p)
    elif isinstance(e, Perm):
        for p in itertools.permutations(labels):
            yield ("perm", tuple(zip(labels, p)))
    elif isinstance(e, Subsets):
        for r in range(n + 1):
            for sub in itertools.combinations(labels, r):
                yield ("subset", sub)
    elif isinstance(e, Table):
        if n > e.max_degree:
            raise BudgetExceeded(
                f"table {e.name!r} holds degrees 0..{e.max_degree}, degree {n} requested"
            )
        for name in e.atoms[n]:
            yield ("atom", e.key, name, labels)
    elif isinstance(e, Sum):
        for s in structures_on(e.f, labels):
            yield ("inl", s)
        for s in structures_on(e.g, labels):
            yield ("inr", s)
    elif isinstance(e, Hadamard):
        if _card(e.f, n) and _card(e.g, n):
            for sf in structures_on(e.f, labels):
                for sg in structures_on(e.g, labels):
                    yield ("both", (sf, sg))
    elif isinstance(e, Cauchy):
        for r in range(n + 1):
            if _card(e.f, r) == 0 or _card(e.g, n - r) == 0:
                continue
            for U in itertools.combinations(labels, r):
                rest = tuple(x for x in labels if x not in U)
                for sf in structures_on(e.f, U):
                    for sg in structures_on(e.g, rest):
                        yield ("pair", (U, sf, sg))
    elif isinstance(e, Substitute):
        for part in _set_partitions(labels):
            blocks = tuple(sorted(part))
            k = len(blocks)
            if _card(e.f, k) == 0:
                continue
            if any(_card(e.g, len(b)) == 0 for b in blocks):
                continue
            inner_lists = [structures_on(e.g, b) for b in blocks]
            for outer in structures_on(e.f, tuple(range(1, k + 1))):
                for inners in itertools.product(*inner_lists):
                    yield ("part", (blocks, outer, inners))
    elif isinstance(e, Derive):
        star = fresh_star(labels)
        inner_labels = tuple(sorted(labels + (star,)))
        for s in structures_on(e.f, inner_labels):
            yield ("deriv", s)
    elif isinstance(e, Pointing):
        for a in labels:
            rest = tuple(x for x in labels if x != a)
            star = fresh_star(rest)
            for s in structures_on(e.f, tuple(sorted(rest + (star,)))):
                yield ("point", (a, s))
    elif isinstance(e, AdjL):
        for a in labels:
            rest = tuple(x for x in labels if x != a)
            for s in structures_on(e.f, rest):
                yield ("adjl", (a, s))
    elif isinstance(e, AdjR):
        if n == 0:
            yield ("tuple", ())
            return
        if _card(e.f, n - 1) == 0:
            return
        per_label = []
        for a in labels:
            rest = tuple(x for x in labels if x != a)
            per_label.append([(a, s) for s in structures_on(e.f, rest)])
        for combo in itertools.product(*per_label):
            yield ("tuple", combo)
    elif isinstance(e, DeriveL):
        yield from _build(Derive(AdjL(e.f)), labels)
    elif isinstance(e, TruncLeft):
        if n <= e.cutoff:
            yield from structures_on(e.f, labels)
    elif isinstance(e, TruncRight):
        if n <= e.cutoff:
            yield from structures_on(e.f, labels)
        else:
            yield ("top",)
    else:
        raise TypeError(f"not a species expression: {e!r}")


@dataclass
class DegreeData:
    """All structures of an expression at one degree, with the S_n-action."""

    expr: SpeciesExpr
    degree: int
    structures: Tuple
    action: FiniteAction

    @property
    def index(self):
        return self.action._point_set


_DEGREE_CACHE: dict = {}


def enumerate_degree(e: SpeciesExpr, n: int, cap: int | None = None) -> DegreeData:
    """Enumerate e on {1,...,n}; counts are checked against the recurrences."""
    require_valid(e)
    total = _card(e, n)
    cap = ENUMERATION_CAP if cap is None else cap
    if total > cap:
        raise EnumerationTooLarge(f"{total} structures at degree {n} exceed cap {cap}")
    key = (e, n)
    hit = _DEGREE_CACHE.get(key)
    if hit is not None:
        return hit
    structs = structures_on(e, tuple(range(1, n + 1)))
    if len(structs) != total:
        raise AssertionError(
            f"enumeration/count mismatch for {e!r} at degree {n}: "
            f"{len(structs)} enumerated vs {total} counted"
        )
    action = FiniteAction(n, structs, lambda sig, s: act_structure(sig, s))
    data = DegreeData(e, n, structs, action)
    _DEGREE_CACHE[key] = data
    return data


def act(e: SpeciesExpr, sigma: Permutation, s):
    """Relabel a structure of e along sigma, re-canonicalizing."""
    data = enumerate_degree(e, sigma.degree)
    if s not in data.index:
        raise StructureNotOfExpr(f"{s!r} is not a structure of {e!r} at degree {sigma.degree}")
    return act_structure(sigma, s)


def as_table(e: SpeciesExpr, max_degree: int, name: str | None = None) -> Table:
    """Materialize an expression as an explicit Table up to a degree."""
    require_valid(e)
    atoms_rows, action_rows = [], []
    for n in range(max_degree + 1):
        data = enumerate_degree(e, n)
        names = [f"s{i}" for i in range(len(data.structures))]
        enc_to_name = dict(zip(data.structures, names))
        row = {}
        for sigma in all_permutations(n):
            row[sigma.images] = {
                enc_to_name[s]: enc_to_name[act_structure(sigma, s)] for s in data.structures
            }
        atoms_rows.append(tuple(names))
        action_rows.append(row)
    return Table(name or f"table<{type(e).__name__}>", atoms_rows, action_rows)


def clear_caches() -> None:
    """Drop all memoized enumerations and counts (mainly for tests)."""
    _COUNT_CACHE.clear()
    _ENUM_CACHE.clear()
    _DEGREE_CACHE.clear()
    _VALIDATED.clear()


def enc_to_json(s):
    """Canonical encodings as JSON-ready nested lists."""
    if isinstance(s, tuple):
        return [enc_to_json(x) for x in s]
    return s
