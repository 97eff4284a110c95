"""Closed-form minimisation over the l^1 simplex and the constructive maps
built from it.

For nonzero weights (mu_j) the infimum of the weighted norm over the simplex
{x >= 0, sum x = 1} has a closed form per space kind; the minimiser spreads
mass proportionally to |mu_j|^-p* (p > 1), to 1/|mu_j| (sup norm), or
concentrates on an argmin (l^1).  These minimisers power the right inverses
S_n of B^n, the approximate-kernel maps I_n on unrooted trees, and the
synthesis of vectors whose orbit keeps returning to e_root.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Optional

from .errors import (
    CriterionTooWeakError,
    EmptyFiberError,
    EmptyIndexSetError,
    RootedTreeError,
)
from .spaces import SpaceSpec, SparseVector, basis, norm, powed, safe_div, to_float
from .trees import ANCHOR, TreeModel, Truncation, VertexAddress, chi_n, p_n


@dataclass(frozen=True)
class SimplexInstance:
    """Finite family of nonzero weights plus the space whose norm is minimised
    over the probability simplex."""

    weights: tuple
    space: SpaceSpec

    def __post_init__(self):
        if not self.weights:
            raise EmptyIndexSetError("simplex instance needs at least one weight")
        if any(w == 0 for w in self.weights):
            raise ValueError("simplex weights must be nonzero")


def simplex_inf_powered(inst: SimplexInstance):
    """The mass whose root gives the infimum: sum 1/|mu_j|^p* for l^p (p > 1),
    sum 1/|mu_j| for the sup norm, min |mu_j| for l^1 (returned directly)."""
    spec = inst.space
    if spec.kind == "lp" and spec.p == 1:
        return min(abs(w) for w in inst.weights)
    if spec.kind == "lp":
        q = spec.conjugate
        return sum(1 / powed(w, q) for w in inst.weights)
    return sum(1 / abs(w) for w in inst.weights)


def simplex_inf(inst: SimplexInstance):
    """inf over {x >= 0, sum |x_j| = 1} of the norm of (x_j mu_j)_j."""
    spec = inst.space
    mass = simplex_inf_powered(inst)
    if spec.kind == "lp" and spec.p == 1:
        return mass
    if spec.kind == "lp":
        return to_float(mass) ** (-1.0 / float(spec.conjugate))
    return 1 / mass


def simplex_optimizer(inst: SimplexInstance, delta: float = 1e-9) -> list:
    """A simplex point achieving the infimum within ``delta``.

    For p > 1 and the sup norm the exact minimiser is returned (x_j
    proportional to |mu_j|^-p*, resp. 1/|mu_j|); for l^1, all mass sits on the
    first index whose weight is within ``delta`` of the minimum.
    """
    if delta <= 0:
        raise ValueError("delta must be positive")
    spec = inst.space
    ws = inst.weights
    if spec.kind == "lp" and spec.p == 1:
        m = min(abs(w) for w in ws)
        idx = next(i for i, w in enumerate(ws) if abs(w) <= m + delta)
        return [1 if i == idx else 0 for i in range(len(ws))]
    if spec.kind == "lp":
        q = spec.conjugate
        inv = [1 / powed(w, q) for w in ws]
    else:
        inv = [1 / abs(w) for w in ws]
    total = sum(inv)
    return [x / total for x in inv]


def _fiber(v, n: int, tree: TreeModel) -> list[VertexAddress]:
    return list(chi_n(v, n, tree))


def build_Sn(
    v,
    n: int,
    tree: TreeModel,
    spec: SpaceSpec,
    delta: Optional[float] = None,
) -> SparseVector:
    """The right inverse applied to e_v: a nonnegative vector g on Chi^n(v)
    with total mass 1 (so B^n g = e_v exactly) and norm within delta of the
    simplex infimum of the fiber weights.

    For l^1 the mass concentrates on one near-minimal weight; the fiber is
    sorted so ties break toward the lowest canonical address."""
    fiber = _fiber(v, n, tree)
    if not fiber:
        raise EmptyFiberError(f"Chi^{n}({v}) is empty")
    if spec.kind == "lp" and spec.p == 1:
        fiber.sort()
    weights = tuple(tree.weight(u) for u in fiber)
    if delta is None:
        delta = (2.0 ** -n) * 1e-3
    x = simplex_optimizer(SimplexInstance(weights, spec), delta)
    return SparseVector({u: xi for u, xi in zip(fiber, x) if xi != 0})


@dataclass(frozen=True)
class InUnrootedResult:
    """I_n e_v with the case split of the unrooted transitivity construction.

    branch "kept": the vector is e_v itself and ||B^n e_v|| = |mu_{p^n(v)}| is
    small; branch "cancelled": the vector is e_v - h with h a unit-mass
    nonnegative function on Chi^n(p^n(v)), so B^n(e_v - h) = 0 and the
    correction h has small norm.  ``bound`` dominates the relevant norm in
    either branch."""

    vector: SparseVector
    branch: str  # "kept" | "cancelled"
    bound: float


def build_In_unrooted(v, n: int, tree: TreeModel, spec: SpaceSpec) -> InUnrootedResult:
    if tree.rooted:
        raise RootedTreeError("I_n with spine cancellation needs an unrooted tree")
    tree.check(v)
    s = p_n(v, n, tree)
    ws = tree.weight(s)
    fiber = _fiber(s, n, tree)
    weights = tuple(tree.weight(u) for u in fiber)

    if spec.kind == "lp" and spec.p == 1:
        fiber_min = min(abs(w) for w in weights)
        m = min(abs(ws), fiber_min)
        if abs(ws) <= fiber_min:
            return InUnrootedResult(basis(v), "kept", to_float(m))
        idx = min(range(len(fiber)), key=lambda i: (abs(weights[i]), fiber[i]))
        h = SparseVector({fiber[idx]: 1})
        return InUnrootedResult(basis(v) - h, "cancelled", to_float(m))

    if spec.kind == "lp":
        q = spec.conjugate
        spine_term = 1 / powed(ws, q)
        fiber_mass = sum(1 / powed(w, q) for w in weights)
        total = spine_term + fiber_mass
        bound = to_float(2 / total) ** (1.0 / float(q))
        if 2 * spine_term >= total:
            return InUnrootedResult(basis(v), "kept", bound)
        inv = [1 / powed(w, q) for w in weights]
    else:
        spine_term = 1 / abs(ws)
        fiber_mass = sum(1 / abs(w) for w in weights)
        total = spine_term + fiber_mass
        bound = to_float(2 / total)
        if 2 * spine_term >= total:
            return InUnrootedResult(basis(v), "kept", bound)
        inv = [1 / abs(w) for w in weights]
    mass = sum(inv)
    h = SparseVector({u: x / mass for u, x in zip(fiber, inv)})
    return InUnrootedResult(basis(v) - h, "cancelled", bound)


@dataclass(frozen=True)
class TailBudget:
    """Summable error allowance b_j per synthesis step; default b_j = 2^-j."""

    schedule: Callable[[int], float] = lambda j: 2.0 ** -j

    def tail(self, after: int, upto: int) -> float:
        return sum(self.schedule(l) for l in range(after + 1, upto + 1))


@dataclass(frozen=True)
class RecurrentTerm:
    j: int
    n: int
    g: SparseVector
    g_norm: float
    c: float
    allowance: float


@dataclass(frozen=True)
class RecurrentCertificate:
    """Re-verified residual inequality for one retained synthesis step."""

    j: int
    n: int
    residual: float
    residual_bound: float  # sum of the remaining budget entries
    product_bound: float  # sum over later terms of ||B^n||_est * ||g_l||
    verified: bool


@dataclass
class RecurrentSynthesis:
    vector: SparseVector
    certificates: list[RecurrentCertificate]
    terms: list[RecurrentTerm]
    skipped: list[tuple[int, float, float]]  # (n, fiber inf, allowance)
    operator_norm_value: float


def _fiber_inf_powered(tree: TreeModel, v, n: int, spec: SpaceSpec):
    """Simplex-infimum mass of the fiber Chi^n(v), via the closed-form fiber
    profile when the tree carries one.  None signals an empty fiber."""
    profile = tree.fiber_profile(v, n) if tree.fiber_profile else None
    if profile is not None:
        if not profile:
            return None
        if spec.kind == "lp" and spec.p == 1:
            return min(abs(w) for w, _ in profile)
        if spec.kind == "lp":
            q = spec.conjugate
            return sum(safe_div(count, powed(w, q)) for w, count in profile)
        return sum(safe_div(count, abs(w)) for w, count in profile)
    weights = tuple(tree.weight(u) for u in chi_n(v, n, tree))
    if not weights:
        return None
    return simplex_inf_powered(SimplexInstance(weights, spec))


def fiber_simplex_inf(tree: TreeModel, v, n: int, spec: SpaceSpec) -> Optional[float]:
    mass = _fiber_inf_powered(tree, v, n, spec)
    if mass is None:
        return None
    if spec.kind == "lp" and spec.p == 1:
        return to_float(mass)
    if spec.kind == "lp":
        return to_float(mass) ** (-1.0 / float(spec.conjugate))
    return to_float(1 / mass)


def _meets_allowance(mass, b: float, opn_powered, prior_ns, spec: SpaceSpec) -> bool:
    """Exact test of ``simplex_inf <= b / c`` where c majorises the operator
    norms of the prior steps.

    In the scale where quantities are rational (the p*-powered scale for p>1
    with integer p*, the plain scale otherwise) every finite float is an exact
    binary rational, so the comparison is done in Fractions and boundary cases
    do not wobble with rounding.  Non-integer conjugate exponents fall back to
    a float comparison with a tiny relative slack.
    """
    q = spec.conjugate if spec.kind == "lp" else None
    mass_f = to_float(mass)
    if spec.kind == "lp" and spec.p == 1:
        if mass_f == 0.0:
            return True
        C = max([Fraction(1)] + [Fraction(opn_powered) ** n for n in prior_ns])
        return Fraction(mass) * C <= Fraction(b)
    if mass_f == math.inf:
        return True
    if spec.kind == "c0":
        C = max([Fraction(1)] + [Fraction(opn_powered) ** n for n in prior_ns])
        return C <= Fraction(b) * Fraction(mass)
    if isinstance(q, int):
        C = max([Fraction(1)] + [Fraction(opn_powered) ** n for n in prior_ns])
        return C <= Fraction(b) ** q * Fraction(mass)
    opn = to_float(opn_powered) ** (1.0 / float(q))
    c = max([1.0] + [opn ** n for n in prior_ns])
    inf_n = mass_f ** (-1.0 / float(q))
    return inf_n <= (b / c) * (1.0 + 1e-12)


def build_recurrent_vector(
    seq: Iterable[int],
    tree: TreeModel,
    spec: SpaceSpec,
    budget: Optional[TailBudget] = None,
    terms: int = 4,
    trunc: Truncation = Truncation(),
) -> RecurrentSynthesis:
    """Synthesise f = sum_j g_j with disjoint root fibers so that B^(n_j) f
    returns to e_root within the budgeted residual at every retained step.

    Candidate powers are taken from ``seq`` (strictly increasing); a candidate
    is retained as step j when the fiber's simplex infimum fits under
    b_j / c_j, where c_j majorises the operator-norm growth of the earlier
    steps.  Because c_j comes from a truncation (a lower bound on infinite
    trees), every certificate re-verifies its residual by direct evaluation.
    """
    if not tree.rooted:
        raise RootedTreeError("recurrent-vector synthesis is the rooted construction")
    budget = budget or TailBudget()
    from .shifts import apply_B_pow, operator_norm

    opn_result = operator_norm(spec, tree, trunc)
    opn = opn_result.value
    retained: list[RecurrentTerm] = []
    skipped: list[tuple[int, float, float]] = []
    prev = -1
    for n in seq:
        if n <= prev:
            raise ValueError("seq must be strictly increasing")
        prev = n
        if len(retained) == terms:
            break
        j = len(retained) + 1
        prior_ns = [t.n for t in retained]
        c = max([1.0] + [opn ** m for m in prior_ns])
        allowance = budget.schedule(j) / c
        mass = _fiber_inf_powered(tree, ANCHOR, n, spec)
        if mass is None or not _meets_allowance(
            mass, budget.schedule(j), opn_result.powered, prior_ns, spec
        ):
            inf_n = math.inf if mass is None else fiber_simplex_inf(tree, ANCHOR, n, spec)
            skipped.append((n, inf_n, allowance))
            continue
        g = build_Sn(ANCHOR, n, tree, spec)
        retained.append(
            RecurrentTerm(j, n, g, to_float(norm(g, spec, tree)), c, allowance)
        )
    if not retained:
        raise CriterionTooWeakError(
            f"no candidate power met its budget at truncation {trunc}"
        )

    merged: dict[VertexAddress, object] = {}
    for t in retained:
        merged.update(t.g.items())
    f = SparseVector(merged)

    e_root = basis(ANCHOR)
    total = len(retained)
    certificates = []
    for t in retained:
        residual = to_float(norm(apply_B_pow(f, t.n, tree) - e_root, spec, tree))
        bound = budget.tail(t.j, total)
        product = sum(opn ** t.n * later.g_norm for later in retained if later.j > t.j)
        verified = residual <= bound + 1e-12 * (1.0 + bound)
        certificates.append(
            RecurrentCertificate(t.j, t.n, residual, bound, product, verified)
        )
    return RecurrentSynthesis(f, certificates, retained, skipped, opn)
