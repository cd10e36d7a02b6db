"""Mealy and Moore machines over truncated species.

A machine is a state species E with a dynamics map d from T(E) to E and
an output map s (from T(E) for Mealy, from E for Moore) into an output
species B, all degreewise equivariant.  For dynamics with a right
adjoint the terminal machine's carrier is the degreewise product of the
iterated adjoints applied to B, and this module computes its exact
counting shadow, cross-checkable against internal-hom counts.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Tuple

from .counting import CountSeq
from .errors import (
    BudgetExceeded,
    Diagnostic,
    DivergentProduct,
    InvalidExpr,
    NotSupported,
    ShapeMismatch,
)
from .groups import FiniteAction, Permutation, count_equivariant_maps
from .species import (
    AdjL,
    Cauchy,
    Derive,
    DeriveL,
    Pointing,
    SpeciesExpr,
    act_structure,
    cardinality,
    enumerate_degree,
    require_valid,
)
from .transforms import NatTrans, apply_on_labels, check_naturality

PRODUCT_WINDOW = 12
PRODUCT_BOUND = 10 ** 60
ENUM_FACTOR_DEGREE_CAP = 6


# ---------------------------------------------------------------------------
# Dynamics


@dataclass(frozen=True)
class TensorBy:
    """Dynamics tensoring the state with a fixed species."""

    a: SpeciesExpr


@dataclass(frozen=True)
class DeriveDyn:
    pass


@dataclass(frozen=True)
class AdjLDyn:
    pass


@dataclass(frozen=True)
class PointingDyn:
    pass


@dataclass(frozen=True)
class DeriveLDyn:
    pass


Dynamics = (TensorBy, DeriveDyn, AdjLDyn, PointingDyn, DeriveLDyn)


def apply_dynamics(dyn, e: SpeciesExpr) -> SpeciesExpr:
    if isinstance(dyn, TensorBy):
        return Cauchy(dyn.a, e)
    if isinstance(dyn, DeriveDyn):
        return Derive(e)
    if isinstance(dyn, AdjLDyn):
        return AdjL(e)
    if isinstance(dyn, PointingDyn):
        return Pointing(e)
    if isinstance(dyn, DeriveLDyn):
        return DeriveL(e)
    raise TypeError(f"not a dynamics: {dyn!r}")


# ---------------------------------------------------------------------------
# Machines


@dataclass
class MealyAutomaton:
    dynamics: object
    state: SpeciesExpr
    output: SpeciesExpr
    d: NatTrans
    s: NatTrans
    horizon: int


@dataclass
class MooreAutomaton:
    dynamics: object
    state: SpeciesExpr
    output: SpeciesExpr
    d: NatTrans
    s: NatTrans
    horizon: int


@dataclass(frozen=True)
class MachineReport:
    ok: bool
    problems: Tuple[str, ...]


def _check_machine(m, moore: bool) -> MachineReport:
    problems = []
    shifted = apply_dynamics(m.dynamics, m.state)
    if m.d.source != shifted or m.d.target != m.state:
        problems.append("dynamics map must have shape T(state) -> state")
    want_src = m.state if moore else shifted
    if m.s.source != want_src or m.s.target != m.output:
        kind = "state -> output" if moore else "T(state) -> output"
        problems.append(f"output map must have shape {kind}")
    if m.d.horizon < m.horizon or m.s.horizon < m.horizon:
        problems.append("component horizons fall short of the machine horizon")
    if not problems:
        if not check_naturality(m.d):
            problems.append("dynamics map is not equivariant")
        if not check_naturality(m.s):
            problems.append("output map is not equivariant")
    return MachineReport(not problems, tuple(problems))


def check_mealy(m: MealyAutomaton) -> MachineReport:
    return _check_machine(m, moore=False)


def check_moore(m: MooreAutomaton) -> MachineReport:
    return _check_machine(m, moore=True)


def _image_under_dynamics(dyn, f: NatTrans, enc, k: int):
    """Transport a structure of T(E1) along f: E1 -> E2, per dynamics kind."""
    labels = tuple(range(1, k + 1))
    if isinstance(dyn, TensorBy):
        _, (U, sa, sE) = enc
        rest = tuple(x for x in labels if x not in U)
        return ("pair", (U, sa, apply_on_labels(f, sE, rest)))
    if isinstance(dyn, DeriveDyn):
        return ("deriv", apply_on_labels(f, enc[1], labels + (0,)))
    if isinstance(dyn, AdjLDyn):
        a, s = enc[1]
        rest = tuple(x for x in labels if x != a)
        return ("adjl", (a, apply_on_labels(f, s, rest)))
    if isinstance(dyn, PointingDyn):
        a, s = enc[1]
        rest = tuple(x for x in labels if x != a) + (0,)
        return ("point", (a, apply_on_labels(f, s, rest)))
    if isinstance(dyn, DeriveLDyn):
        _, (b, s) = enc[1]
        inner_labels = tuple(x for x in labels + (0,) if x != b)
        return ("deriv", ("adjl", (b, apply_on_labels(f, s, inner_labels))))
    raise TypeError(f"not a dynamics: {dyn!r}")


def check_morphism(f: NatTrans, m1: MealyAutomaton, m2: MealyAutomaton) -> bool:
    """Morphism laws: f after d equals d' after T(f), and s equals s' after T(f)."""
    if m1.dynamics != m2.dynamics or m1.output != m2.output:
        raise ShapeMismatch("machines must share dynamics and output")
    if f.source != m1.state or f.target != m2.state:
        raise ShapeMismatch("morphism endpoints do not match the machines")
    # the derivative dynamics consumes a degree: its functorial image at
    # degree k applies f one degree higher
    shift = 1 if isinstance(m1.dynamics, DeriveDyn) else 0
    horizon = min(m1.horizon, m2.horizon, f.horizon - shift)
    shifted = apply_dynamics(m1.dynamics, m1.state)
    for k in range(horizon + 1):
        for x in enumerate_degree(shifted, k).structures:
            fx = _image_under_dynamics(m1.dynamics, f, x, k)
            if f(k, m1.d(k, x)) != m2.d(k, fx):
                return False
            if m1.s(k, x) != m2.s(k, fx):
                return False
    return True


# ---------------------------------------------------------------------------
# Terminal counts and internal-hom counts


def _certified_product(factor_at, start: int, window: int, what: str) -> int:
    """Product of factor_at(n) for n >= start, certified effectively finite.

    A zero factor short-circuits the product to zero.  Otherwise every
    factor in the trailing stretch of the probe window must equal one,
    else the tail cannot be certified and DivergentProduct is raised.
    """
    total = 1
    last_nonone = start - 1
    for n in range(start, start + window):
        f = factor_at(n)
        if f == 0:
            return 0
        if f != 1:
            total *= f
            last_nonone = n
            if total > PRODUCT_BOUND:
                raise DivergentProduct(f"{what}: partial product exceeds {PRODUCT_BOUND}")
    if last_nonone > start + window - 5:
        raise DivergentProduct(f"{what}: factors still nontrivial at the probe horizon")
    return total


def hom_day_counts(
    f: SpeciesExpr,
    g: SpeciesExpr,
    N: int,
    window: int = PRODUCT_WINDOW,
) -> CountSeq:
    """Counts of the convolution internal hom from f to g, degrees 0..N.

    Degree-k entry: product over m of the number of equivariant maps from
    f at m to g at k+m, the latter acted on through the embedding that
    fixes the first k labels.  Factors with empty source contribute one,
    empty target (with nonempty source) zero, singleton target one.
    """
    require_valid(f)
    require_valid(g)
    out = []
    for k in range(N + 1):
        def factor(m, k=k):
            cf = cardinality(f, m)
            if cf == 0:
                return 1
            cg = cardinality(g, k + m)
            if cg == 0:
                return 0
            if cg == 1:
                return 1
            if m > ENUM_FACTOR_DEGREE_CAP:
                raise BudgetExceeded(
                    f"hom factor at inner degree {m} needs enumeration beyond the cap"
                )
            src = enumerate_degree(f, m).action
            tgt = _restricted_action(g, k, m)
            return count_equivariant_maps(src, tgt)

        out.append(_certified_product(factor, 0, window, f"hom({f!r},{g!r}) degree {k}"))
    return CountSeq(tuple(out))


def _restricted_action(g: SpeciesExpr, k: int, m: int) -> FiniteAction:
    """g at degree k+m as an S_m-action through the last-m-labels embedding."""
    data = enumerate_degree(g, k + m)

    def embed(sigma: Permutation) -> Permutation:
        images = tuple(range(1, k + 1)) + tuple(k + sigma(j) for j in range(1, m + 1))
        return Permutation(images)

    return FiniteAction(m, data.structures, lambda sig, s: act_structure(embed(sig), s))


def _cauchy_power(a: SpeciesExpr, n: int) -> SpeciesExpr:
    out = a
    for _ in range(n - 1):
        out = Cauchy(out, a)
    return out


def terminal_counts(
    dyn,
    B: SpeciesExpr,
    N: int,
    moore: bool = False,
    window: int = PRODUCT_WINDOW,
) -> CountSeq:
    """Counting shadow of the terminal machine's carrier for a dynamics.

    The carrier is the degreewise product of the iterated right adjoints
    of the dynamics applied to the output: the derivative for the
    point-choosing dynamics, the assignment adjoint for the derivative
    dynamics, and the convolution hom for tensor dynamics.  Moore
    machines include the zeroth factor as well.
    """
    require_valid(B)
    if isinstance(dyn, (PointingDyn, DeriveLDyn)):
        raise NotSupported(
            "terminal machines for the pointing and derivative-of-adjoint "
            "dynamics are deliberately not computed"
        )
    start = 0 if moore else 1
    if isinstance(dyn, AdjLDyn):
        out = []
        for k in range(N + 1):
            out.append(
                _certified_product(
                    lambda n, k=k: cardinality(B, k + n),
                    start,
                    window,
                    f"terminal(adjL,{B!r}) degree {k}",
                )
            )
        return CountSeq(tuple(out))
    if isinstance(dyn, DeriveDyn):
        # The assignment adjoint fixes degree 0 at one structure and
        # raises lower counts to powers; after k iterations every degree
        # <= k is pinned at one, so the product is exactly finite.
        rows = [[cardinality(B, j) for j in range(N + 1)]]
        for _ in range(N + 1):
            prev = rows[-1]
            rows.append([1] + [prev[j - 1] ** j for j in range(1, N + 1)])
        out = []
        for k in range(N + 1):
            total = 1
            for n in range(start, k + 2):
                total *= rows[n][k]
                if total == 0:
                    break
                if total > PRODUCT_BOUND:
                    raise DivergentProduct(
                        f"terminal(derive,{B!r}) degree {k} exceeds {PRODUCT_BOUND}"
                    )
            out.append(total)
        return CountSeq(tuple(out))
    if isinstance(dyn, TensorBy):
        if cardinality(dyn.a, 0) != 0:
            raise InvalidExpr(
                (
                    Diagnostic(
                        "DynamicsNotPositive",
                        "terminal",
                        "tensor dynamics needs a species empty at degree 0",
                    ),
                )
            )
        hom_rows = {}

        def factor_seq(n):
            if n not in hom_rows:
                if n == 0:
                    hom_rows[n] = CountSeq(tuple(cardinality(B, k) for k in range(N + 1)))
                else:
                    hom_rows[n] = hom_day_counts(_cauchy_power(dyn.a, n), B, N, window)
            return hom_rows[n]

        out = []
        for k in range(N + 1):
            out.append(
                _certified_product(
                    lambda n, k=k: factor_seq(n)[k],
                    start,
                    window,
                    f"terminal(tensor,{B!r}) degree {k}",
                )
            )
        return CountSeq(tuple(out))
    raise TypeError(f"not a dynamics: {dyn!r}")


def machine_to_json(m) -> dict:
    from .transforms import nat_to_json

    return {
        "dynamics": repr(m.dynamics),
        "state": repr(m.state),
        "output": repr(m.output),
        "horizon": m.horizon,
        "d": nat_to_json(m.d),
        "s": nat_to_json(m.s),
    }
