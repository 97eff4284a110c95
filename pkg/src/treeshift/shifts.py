"""The backward shift B, its transpose S, powers, operator norms and orbits.

B sums a function over the children of each vertex (B e_v = e_parent(v), with
the root absorbed to 0); S is the formal transpose (S e_v = sum of e_u over
children u).  Operator norms follow the per-vertex ratio formulas of the
weighted-shift boundedness criterion, evaluated as a supremum over a finite
truncation; on infinite trees that value is a certified lower bound.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from .spaces import SpaceSpec, SparseVector, norm, powed, to_float
from .trees import (
    TreeModel,
    Truncation,
    VertexAddress,
    _children,
    enumerate_truncation,
)


def apply_B(f: SparseVector, tree: TreeModel) -> SparseVector:
    """(Bf)(v) = sum of f over the children of v; empty sums are zero."""
    for v in f.support():
        tree.check(v)
    acc: dict[VertexAddress, object] = {}
    for v, x in f.items():
        pv = VertexAddress(v.up, v.path[:-1]) if v.path else (
            None if tree.rooted else VertexAddress(v.up + 1)
        )
        if pv is None:
            continue
        y = acc.get(pv, 0) + x
        if y == 0:
            acc.pop(pv, None)
        else:
            acc[pv] = y
    return SparseVector(acc)


def apply_S(f: SparseVector, tree: TreeModel) -> SparseVector:
    """(Sf)(v) = f(parent(v)); on basis vectors S e_v spreads over Chi(v)."""
    acc: dict[VertexAddress, object] = {}
    for v, x in f.items():
        tree.check(v)
        for c in _children(v, tree):
            y = acc.get(c, 0) + x
            if y == 0:
                acc.pop(c, None)
            else:
                acc[c] = y
    return SparseVector(acc)


def apply_B_pow(f: SparseVector, n: int, tree: TreeModel) -> SparseVector:
    """B^n f in one pass: every entry moves to its n-fold parent."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    if n == 0:
        return SparseVector(dict(f.items()))
    for v in f.support():
        tree.check(v)
    rooted = tree.rooted
    acc: dict[VertexAddress, object] = {}
    for v, x in f.items():
        depth = len(v.path)
        if n <= depth:
            target = VertexAddress(v.up, v.path[: depth - n])
        elif rooted:
            continue
        else:
            target = VertexAddress(v.up + (n - depth))
        y = acc.get(target, 0) + x
        if y == 0:
            acc.pop(target, None)
        else:
            acc[target] = y
    return SparseVector(acc)


@dataclass(frozen=True)
class OperatorNormResult:
    """Supremum of the per-vertex boundedness quantity over a truncation."""

    value: float
    powered: object  # the p*-powered supremum for l^p (p > 1), else the value
    is_sup_over_truncation: bool  # True: lower bound for the true norm
    argmax: Optional[VertexAddress]
    space: SpaceSpec
    truncation: Truncation


def operator_norm(
    spec: SpaceSpec, tree: TreeModel, trunc: Truncation = Truncation()
) -> OperatorNormResult:
    """Norm of B per the boundedness criterion: sup over enumerated vertices of
    |mu_p(v)/mu_v| (l^1), (sum |mu_v/mu_u|^p*)^(1/p*) (l^p), or the plain ratio
    sum (c0).  Monotone nondecreasing in the truncation."""
    q = spec.conjugate if spec.kind == "lp" else None
    best = None
    best_at = None
    frontier_open = tree.kind == "unrooted"
    for v in enumerate_truncation(tree, trunc):
        a = tree.arity(v)
        if a <= 0:
            continue
        if len(v.path) == trunc.depth:
            frontier_open = True
        wv = tree.weight(v)
        kids = _children(v, tree)
        if spec.kind == "lp" and spec.p == 1:
            cand = max(abs(wv / tree.weight(u)) for u in kids)
        elif spec.kind == "lp":
            cand = sum(powed(wv / tree.weight(u), q) for u in kids)
        else:
            cand = sum(abs(wv / tree.weight(u)) for u in kids)
        if best is None or cand > best:
            best, best_at = cand, v
    if best is None:  # single isolated root
        best = 0
    if spec.kind == "lp" and spec.p != 1:
        value = to_float(best) ** (1.0 / float(q))
    else:
        value = to_float(best)
    return OperatorNormResult(
        value=value,
        powered=best,
        is_sup_over_truncation=frontier_open,
        argmax=best_at,
        space=spec,
        truncation=trunc,
    )


@dataclass(frozen=True)
class OrbitPoint:
    n: int
    vector: SparseVector
    norm: float


def orbit(f: SparseVector, n_max: int, tree: TreeModel, spec: SpaceSpec) -> list[OrbitPoint]:
    """Iterates (n, B^n f, ||B^n f||) for n = 0..n_max, stopping after the
    first zero iterate (rooted orbits of finite vectors die in finite time)."""
    out = []
    cur = SparseVector(dict(f.items()))
    for n in range(n_max + 1):
        out.append(OrbitPoint(n, cur, to_float(norm(cur, spec, tree))))
        if not cur:
            break
        if n < n_max:
            cur = apply_B(cur, tree)
    return out


@dataclass(frozen=True)
class BallSpec:
    """Open norm ball used as a return-set endpoint."""

    center: SparseVector
    radius: float
    space: SpaceSpec

    def __post_init__(self):
        if self.radius <= 0:
            raise ValueError("radius must be positive")


def witness_return(
    n: int,
    U: BallSpec,
    V: BallSpec,
    tree: TreeModel,
    slack: float = 1e-6,
) -> Optional[SparseVector]:
    """Try to certify n in N(U, V) with the constructive witness
    f = I_n(center_U) + S_n(center_V).

    Returns the witness vector when both norm checks pass (radii shrunk by the
    relative ``slack``), else None.  Failure only means this witness family did
    not certify n, never that n is outside the return set.
    """
    from .simplex import build_In_unrooted, build_Sn
    from .errors import EmptyFiberError

    r_u = U.radius * (1.0 - slack)
    r_v = V.radius * (1.0 - slack)
    if n == 0:
        f = U.center
        if to_float(norm(f - V.center, V.space, tree)) < r_v:
            return f
        return None

    if tree.rooted:
        i_part = U.center
    else:
        i_part = SparseVector()
        for v, x in U.center.items():
            i_part = i_part + x * build_In_unrooted(v, n, tree, U.space).vector
    s_part = SparseVector()
    try:
        for v, x in V.center.items():
            s_part = s_part + x * build_Sn(v, n, tree, V.space)
    except EmptyFiberError:
        return None
    f = i_part + s_part
    if to_float(norm(f - U.center, U.space, tree)) >= r_u:
        return None
    if to_float(norm(apply_B_pow(f, n, tree) - V.center, V.space, tree)) >= r_v:
        return None
    return f


@dataclass
class ReturnSetReport:
    """Horizon-bounded constructive picture of the return set N(U, V):
    times with a stored, norm-checked witness versus times the witness family
    failed to certify (which refutes nothing)."""

    horizon: int
    certified: dict[int, SparseVector] = field(default_factory=dict)
    uncertified: set[int] = field(default_factory=set)

    @property
    def certified_in(self) -> set[int]:
        return set(self.certified)


def return_set_report(
    U: BallSpec,
    V: BallSpec,
    horizon: int,
    tree: TreeModel,
    slack: float = 1e-6,
) -> ReturnSetReport:
    report = ReturnSetReport(horizon=horizon)
    for n in range(horizon + 1):
        w = witness_return(n, U, V, tree, slack)
        if w is None:
            report.uncertified.add(n)
        else:
            report.certified[n] = w
    return report
