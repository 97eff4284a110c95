"""Weight-based dynamical criteria evaluated at a finite horizon.

Everything here reduces to two per-vertex quantities: the fiber quantity
q(v, n) built from the weights of Chi^n(v), and (on unrooted trees) the
spine-augmented quantity j(v, n) that adds the n-fold parent's weight.  The
transitivity/recurrence criteria ask the time sets where these exceed every
threshold N to belong to a Furstenberg family; divergence "to infinity" is
always evidenced by exceeding a ladder capped at 2^12 within the horizon, and
every verdict is horizon-stamped rather than asserted as a true limit.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable, Iterable, Optional, Sequence

from .errors import RootedTreeError
from .families import FamilySpec, Verdict, family_verdict, infinite_family
from .spaces import SpaceSpec, powed, safe_div, to_float
from .trees import (
    ANCHOR,
    TreeModel,
    Truncation,
    VertexAddress,
    chi_n,
    enumerate_truncation,
    format_address,
    p_n,
)

LADDER_MAX = 2 ** 12
DEFAULT_LADDER = tuple(2 ** k for k in range(13))


@lru_cache(maxsize=1 << 16)
def _q_powered(v: VertexAddress, n: int, tree: TreeModel, spec: SpaceSpec):
    """Space-appropriate mass of the fiber Chi^n(v):
    sum 1/|mu_u|^p* (l^p, p>1), sup 1/|mu_u| (l^1), sum 1/|mu_u| (c0);
    0 for an empty fiber."""
    profile = tree.fiber_profile(v, n) if tree.fiber_profile else None
    if profile is not None:
        if not profile:
            return 0
        if spec.kind == "lp" and spec.p == 1:
            return max(safe_div(1, abs(w)) for w, _ in profile)
        if spec.kind == "lp":
            q = spec.conjugate
            return sum(safe_div(count, powed(w, q)) for w, count in profile)
        return sum(safe_div(count, abs(w)) for w, count in profile)
    best = 0
    total = 0
    seen = False
    sup_mode = spec.kind == "lp" and spec.p == 1
    q = spec.conjugate if spec.kind == "lp" else None
    for u in chi_n(v, n, tree):
        seen = True
        w = tree.weight(u)
        if sup_mode:
            cand = safe_div(1, abs(w))
            if cand > best:
                best = cand
        elif spec.kind == "lp":
            total += safe_div(1, powed(w, q))
        else:
            total += safe_div(1, abs(w))
    if not seen:
        return 0
    return best if sup_mode else total


def q_value(v, n: int, tree: TreeModel, spec: SpaceSpec) -> float:
    """The fiber quantity compared against N in the transitivity criteria."""
    tree.check(v)
    mass = _q_powered(VertexAddress(v[0], tuple(v[1])), n, tree, spec)
    if spec.kind == "lp" and spec.p != 1:
        m = to_float(mass)
        return m ** (1.0 / float(spec.conjugate)) if m not in (0.0, math.inf) else m
    return to_float(mass)


def _threshold(N, spec: SpaceSpec):
    """N raised to p* so comparisons can stay in the powered scale."""
    if spec.kind == "lp" and spec.p != 1:
        return powed(N, spec.conjugate)
    return N


def _q_exceeds(v, n, N_pow, tree, spec) -> bool:
    return _q_powered(v, n, tree, spec) > N_pow


def _spine_term(v, n, tree, spec, scale=1):
    """1/|scale * mu_{p^n(v)}| in the powered scale of the space."""
    s = p_n(v, n, tree)
    ws = tree.weight(s) * scale
    if spec.kind == "lp" and spec.p != 1:
        return 1 / powed(ws, spec.conjugate)
    return 1 / abs(ws)


def _j_powered(v, n, tree, spec, lam=1):
    """Spine-augmented quantity; the spine weight is scaled by lam (used by
    the scalar-scaled supercyclicity displays; lam = 1 recovers j)."""
    s = p_n(v, n, tree)
    fiber = _q_powered(s, n, tree, spec)
    spine = _spine_term(v, n, tree, spec, scale=lam)
    if spec.kind == "lp" and spec.p == 1:
        return spine if spine > fiber else fiber
    return spine + fiber


def j_value(v, n: int, tree: TreeModel, spec: SpaceSpec) -> float:
    """Spine quantity on the same "compare with N" scale as q_value: the p*-th
    root for l^p (p > 1), the reciprocal of the weight minimum for l^1."""
    if tree.rooted:
        raise RootedTreeError("j_value needs the n-fold parent of every vertex")
    tree.check(v)
    mass = _j_powered(VertexAddress(v[0], tuple(v[1])), n, tree, spec)
    if spec.kind == "lp" and spec.p != 1:
        m = to_float(mass)
        return m ** (1.0 / float(spec.conjugate)) if m not in (0.0, math.inf) else m
    return to_float(mass)


def I_set(F, N, tree: TreeModel, spec: SpaceSpec, horizon: int) -> set[int]:
    """Times n <= horizon with q(v, n) > N for every v in the finite set F."""
    verts = [VertexAddress(v[0], tuple(v[1])) for v in F]
    for v in verts:
        tree.check(v)
    N_pow = _threshold(N, spec)
    return {
        n
        for n in range(horizon + 1)
        if all(_q_exceeds(v, n, N_pow, tree, spec) for v in verts)
    }


def J_set(F, N, tree: TreeModel, spec: SpaceSpec, horizon: int) -> set[int]:
    """Times n <= horizon with j(v, n) > N for every v in F (unrooted only)."""
    if tree.rooted:
        raise RootedTreeError("J_set is defined on unrooted trees")
    verts = [VertexAddress(v[0], tuple(v[1])) for v in F]
    for v in verts:
        tree.check(v)
    N_pow = _threshold(N, spec)
    return {
        n
        for n in range(horizon + 1)
        if all(_j_powered(v, n, tree, spec) > N_pow for v in verts)
    }


def default_sample_sets(
    tree: TreeModel, sample_depth: int = 3, extra: Iterable = ()
) -> list[frozenset]:
    """Singletons for every vertex within depth/ancestry ``sample_depth`` plus
    one combined set of the depth-1 vertices: the desk-scale surrogate for the
    criteria's quantification over all finite vertex sets."""
    near = sorted(enumerate_truncation(tree, Truncation(sample_depth, sample_depth)))
    sets = [frozenset({v}) for v in near]
    combined = frozenset(
        v for v in enumerate_truncation(tree, Truncation(1, 1))
    )
    if combined:
        sets.append(combined)
    for F in extra:
        sets.append(frozenset(VertexAddress(v[0], tuple(v[1])) for v in F))
    return sets


def _record_sequence(vals: Sequence[float]) -> list[int]:
    """Indices where the sequence attains a strictly new maximum."""
    records, best = [], None
    for n, x in enumerate(vals):
        if best is None or x > best:
            records.append(n)
            best = x
    return records


@dataclass(frozen=True)
class RungResult:
    N: object
    times: tuple[int, ...]
    verdict: Verdict


@dataclass(frozen=True)
class SampleSetResult:
    vertices: tuple[VertexAddress, ...]
    rungs: tuple[RungResult, ...]
    q_sup: float  # max over n of min over F of q(v, n)
    j_sup: Optional[float]  # same for j on unrooted trees

    @property
    def acceptable(self) -> bool:
        return all(r.verdict.acceptable for r in self.rungs)


@dataclass
class DynamicsReport:
    tree_name: str
    space: str
    family: str
    horizon: int
    entries: list[SampleSetResult]
    satisfied: bool
    witness_vertex: Optional[VertexAddress]
    witness_sequence: list[int]
    csv_vertices: list[VertexAddress]
    tree: TreeModel
    spec: SpaceSpec

    def to_text(self) -> str:
        lines = [
            f"transitivity criterion on {self.tree_name} ({self.space}), "
            f"family {self.family}, horizon {self.horizon}",
            f"criterion satisfied at horizon: {self.satisfied}",
        ]
        if self.witness_vertex is not None:
            seq = self.witness_sequence
            shown = ", ".join(map(str, seq[:10])) + (", ..." if len(seq) > 10 else "")
            lines.append(
                f"diverging fiber quantity at {format_address(self.witness_vertex)}; "
                f"witness n_k: {shown}"
            )
        for entry in self.entries:
            label = "{" + ", ".join(format_address(v) for v in entry.vertices) + "}"
            lines.append(f"F = {label}  (q_sup={entry.q_sup:.6g}"
                         + (f", j_sup={entry.j_sup:.6g}" if entry.j_sup is not None else "")
                         + ")")
            for rung in entry.rungs:
                v = rung.verdict
                lines.append(
                    f"  N={rung.N}: |times|={len(rung.times)} -> {v.status}"
                    f"{' (+)' if v.positive_evidence else ''} {v.witness}"
                )
        return "\n".join(lines)

    def csv_rows(self):
        """(vertex, n, q_value, j_value) rows for plotting."""
        rows = []
        unrooted = not self.tree.rooted
        for v in self.csv_vertices:
            for n in range(self.horizon + 1):
                q = q_value(v, n, self.tree, self.spec)
                j = j_value(v, n, self.tree, self.spec) if unrooted else ""
                rows.append((format_address(v), n, q, j))
        return rows


def dynamics_report(
    tree: TreeModel,
    spec: SpaceSpec,
    fam: Optional[FamilySpec] = None,
    sample: Optional[Iterable] = None,
    horizon: int = 64,
    ladder: Sequence = DEFAULT_LADDER,
    sample_depth: int = 3,
) -> DynamicsReport:
    """Evaluate the F-transitivity weight criterion over sampled vertex sets.

    For each sampled finite set F and threshold N in the ladder, the relevant
    time set (I on rooted trees, I intersect J on unrooted ones) receives a
    family-membership verdict; the criterion counts as satisfied at this
    horizon iff every verdict is holds or inconclusive-with-positive-evidence.
    """
    fam = fam or infinite_family()
    if sample is None:
        sample_sets = default_sample_sets(tree, sample_depth)
    else:
        sample_sets = [
            frozenset(VertexAddress(v[0], tuple(v[1])) for v in F) for F in sample
        ]
    unrooted = not tree.rooted

    entries = []
    for F in sample_sets:
        verts = tuple(sorted(F))
        rungs = []
        for N in ladder:
            times = I_set(verts, N, tree, spec, horizon)
            if unrooted:
                times &= J_set(verts, N, tree, spec, horizon)
            verdict = family_verdict(times, fam, horizon)
            rungs.append(RungResult(N, tuple(sorted(times)), verdict))
        q_sup = max(
            min(q_value(v, n, tree, spec) for v in verts) for n in range(horizon + 1)
        )
        j_sup = (
            max(
                min(j_value(v, n, tree, spec) for v in verts)
                for n in range(horizon + 1)
            )
            if unrooted
            else None
        )
        entries.append(SampleSetResult(verts, tuple(rungs), q_sup, j_sup))

    satisfied = all(e.acceptable for e in entries)

    singles = sorted({v for F in sample_sets for v in F})
    witness_vertex = None
    witness_sequence: list[int] = []
    for v in singles:
        vals = [q_value(v, n, tree, spec) for n in range(horizon + 1)]
        records = _record_sequence(vals)
        if records and vals[records[-1]] > LADDER_MAX:
            witness_vertex = v
            witness_sequence = records
            break

    return DynamicsReport(
        tree_name=tree.name,
        space=spec.label,
        family=fam.describe(),
        horizon=horizon,
        entries=entries,
        satisfied=satisfied,
        witness_vertex=witness_vertex,
        witness_sequence=witness_sequence,
        csv_vertices=singles,
        tree=tree,
        spec=spec,
    )


@dataclass(frozen=True)
class GammaSpec:
    """Scalar family Gamma indexed by k: lambda_k = lambdas(k), all nonzero."""

    lambdas: Callable[[int], object]
    description: str
    bounded: bool

    def at(self, k: int):
        lam = self.lambdas(k)
        if lam == 0:
            raise ValueError(f"lambda_{k} = 0 is not allowed")
        return lam


def gamma_constant(value=1) -> GammaSpec:
    if value == 0:
        raise ValueError("constant scalar must be nonzero")
    return GammaSpec(lambda k: value, f"constant {value}", bounded=True)


def gamma_powers(ratio) -> GammaSpec:
    if ratio == 0:
        raise ValueError("ratio must be nonzero")
    return GammaSpec(
        lambda k: ratio ** k, f"powers {ratio}^k", bounded=abs(ratio) <= 1
    )


def _gamma_fiber_exceeds(v, n, lam, R, tree, spec) -> bool:
    """Scaled fiber display: sum |lam|^p*/|mu|^p* (l^p), sup |lam|/|mu| (l^1),
    sum |lam|/|mu| (c0), compared with R."""
    mass = _q_powered(v, n, tree, spec)
    if spec.kind == "lp" and spec.p != 1:
        return powed(lam, spec.conjugate) * mass > _threshold(R, spec)
    return abs(lam) * mass > R


def _gamma_spine_exceeds(v, n, lam, R, tree, spec) -> bool:
    """Scaled spine display: the j quantity with the spine weight multiplied
    by lam, compared with R."""
    return _j_powered(v, n, tree, spec, lam=lam) > _threshold(R, spec)


@dataclass
class SupercyclicityReport:
    tree_name: str
    space: str
    gamma: str
    horizon: int
    mode: str  # "unrooted-criterion" | "rooted-bounded-gamma" | "rooted-unbounded-gamma"
    satisfied: bool
    achieved: list[tuple]  # (R, n, k, lambda_k) per ladder rung reached
    failed_rung: Optional[object]
    sample: list[VertexAddress]
    notes: list[str] = field(default_factory=list)
    hypercyclicity: Optional[DynamicsReport] = None
    leaf_witness: Optional[VertexAddress] = None

    def to_text(self) -> str:
        lines = [
            f"Gamma-supercyclicity on {self.tree_name} ({self.space}), "
            f"Gamma = {self.gamma}, horizon {self.horizon} [{self.mode}]",
            f"satisfied at horizon: {self.satisfied}",
        ]
        lines.extend(f"note: {n}" for n in self.notes)
        if self.failed_rung is not None:
            lines.append(f"first unreachable threshold: {self.failed_rung}")
        for R, n, k, lam in self.achieved:
            lines.append(f"  threshold {R}: n={n}, lambda_{k}={lam}")
        return "\n".join(lines)

    def csv_rows(self):
        return [(R, n, k, to_float(abs(lam))) for R, n, k, lam in self.achieved]


def supercyclicity_report(
    tree: TreeModel,
    spec: SpaceSpec,
    gamma: GammaSpec,
    horizon: int = 64,
    sample: Optional[Iterable] = None,
    ladder: Sequence = DEFAULT_LADDER,
    trunc: Truncation = Truncation(),
) -> SupercyclicityReport:
    """Search for (n_k, lambda_k) making both scaled displays of the
    Gamma-supercyclicity criterion exceed an increasing ladder at every
    sampled vertex (unrooted trees).

    Rooted trees are handled by the structural reductions: for bounded Gamma,
    Gamma-supercyclicity is equivalent to hypercyclicity, so the transitivity
    report decides; for unbounded Gamma it is equivalent to dense range, which
    for a backward shift means the tree has no leaves (the generalized kernel
    is automatically dense on rooted trees).
    """
    if sample is None:
        sample_verts = sorted(
            {v for F in default_sample_sets(tree) for v in F}
        )
    else:
        sample_verts = sorted(VertexAddress(v[0], tuple(v[1])) for v in sample)

    if tree.rooted:
        if gamma.bounded:
            sub = dynamics_report(tree, spec, infinite_family(), horizon=horizon)
            return SupercyclicityReport(
                tree.name, spec.label, gamma.description, horizon,
                mode="rooted-bounded-gamma",
                satisfied=sub.satisfied,
                achieved=[],
                failed_rung=None,
                sample=sample_verts,
                notes=[
                    "bounded Gamma on a rooted tree: Gamma-supercyclicity is "
                    "equivalent to hypercyclicity; deferring to the "
                    "transitivity report"
                ],
                hypercyclicity=sub,
            )
        leaf = None
        for v in enumerate_truncation(tree, trunc):
            if tree.arity(v) == 0:
                leaf = v
                break
        return SupercyclicityReport(
            tree.name, spec.label, gamma.description, horizon,
            mode="rooted-unbounded-gamma",
            satisfied=leaf is None,
            achieved=[],
            failed_rung=None,
            sample=sample_verts,
            notes=[
                "unbounded Gamma on a rooted tree: equivalent to dense range "
                "(dense generalized kernel is automatic); dense range holds "
                "iff the tree has no leaves"
                + ("" if leaf is None else f"; leaf found at {format_address(leaf)}"),
                "derived from the generalized-kernel reduction, not a direct "
                "criterion evaluation",
            ],
            leaf_witness=leaf,
        )

    achieved = []
    failed_rung = None
    last_n = 0
    for R in ladder:
        hit = None
        for n in range(last_n + 1, horizon + 1):
            for k in range(horizon + 1):
                lam = gamma.at(k)
                if all(
                    _gamma_fiber_exceeds(v, n, lam, R, tree, spec)
                    and _gamma_spine_exceeds(v, n, lam, R, tree, spec)
                    for v in sample_verts
                ):
                    hit = (R, n, k, lam)
                    break
            if hit:
                break
        if hit is None:
            failed_rung = R
            break
        achieved.append(hit)
        last_n = hit[1]

    return SupercyclicityReport(
        tree.name, spec.label, gamma.description, horizon,
        mode="unrooted-criterion",
        satisfied=failed_rung is None,
        achieved=achieved,
        failed_rung=failed_rung,
        sample=sample_verts,
    )


DECAY_EPS = 2.0 ** -12


@dataclass(frozen=True)
class DecayObservation:
    i: int
    last: float
    tail_min: float
    decayed: bool


@dataclass
class LimitPointReport:
    tree_name: str
    space: str
    horizon: int
    status: str  # "holds" | "fails"
    diverging_vertex: Optional[VertexAddress]
    records: list[int]
    record_values: list[float]
    root_diverging: Optional[bool]  # rooted trees: divergence at the root
    shifted_ok: Optional[dict]  # rooted: l -> diverging of q(v, n+l)
    decay: Optional[list[DecayObservation]]  # unrooted spine-decay evidence
    sample: list[VertexAddress]
    tree: TreeModel
    spec: SpaceSpec

    def to_text(self) -> str:
        lines = [
            f"orbital limit point criterion on {self.tree_name} ({self.space}), "
            f"horizon {self.horizon}",
            f"verdict at horizon: {self.status}",
        ]
        if self.diverging_vertex is not None:
            lines.append(
                f"diverging fiber quantity at {format_address(self.diverging_vertex)}; "
                f"records n_k = {self.records[:8]}{'...' if len(self.records) > 8 else ''}"
            )
        else:
            lines.append("no sampled vertex shows a diverging fiber quantity")
        if self.root_diverging is not None:
            lines.append(f"divergence at the root: {self.root_diverging}")
        if self.shifted_ok is not None:
            lines.append(f"shifted divergence (l -> ok): {self.shifted_ok}")
        if self.decay is not None:
            for obs in self.decay:
                lines.append(
                    f"spine decay i={obs.i}: last={obs.last:.6g}, "
                    f"tail_min={obs.tail_min:.6g}, decayed={obs.decayed}"
                )
        return "\n".join(lines)

    def csv_rows(self):
        rows = []
        for v in self.sample:
            for n in range(self.horizon + 1):
                rows.append(
                    (format_address(v), n, q_value(v, n, self.tree, self.spec))
                )
        return rows


def limit_point_report(
    tree: TreeModel,
    spec: SpaceSpec,
    sample: Optional[Iterable] = None,
    horizon: int = 64,
    shifts: int = 4,
    decay_indices: int = 4,
) -> LimitPointReport:
    """Evidence for an orbit with a nonzero limit point.

    Rooted trees: search sampled vertices for q(v, n_k) exceeding the ladder
    cap along an increasing sequence; also reports the root version and the
    l-shifted versions (all equivalent in the limit).  Unrooted trees ask in
    addition that the spine weights mu(p^(n_k - n_i)(v)) decay to 0 - this is
    the criterion for a *non-negative* vector's orbit to have a nonzero limit
    point, and its failure is reported with the observed limiting value.
    """
    if sample is None:
        sample_verts = sorted({v for F in default_sample_sets(tree) for v in F})
    else:
        sample_verts = sorted(VertexAddress(v[0], tuple(v[1])) for v in sample)

    found = None
    found_records: list[int] = []
    found_values: list[float] = []
    for v in sample_verts:
        vals = [q_value(v, n, tree, spec) for n in range(horizon + 1)]
        records = _record_sequence(vals)
        if records and vals[records[-1]] > LADDER_MAX:
            found = v
            found_records = records
            found_values = [vals[n] for n in records]
            break

    if tree.rooted:
        root_vals = [q_value(ANCHOR, n, tree, spec) for n in range(horizon + 1)]
        root_records = _record_sequence(root_vals)
        root_div = bool(root_records) and root_vals[root_records[-1]] > LADDER_MAX
        shifted = None
        if found is not None:
            shifted = {}
            for l in range(1, shifts + 1):
                vals = [
                    q_value(found, n + l, tree, spec)
                    for n in range(horizon + 1 - l)
                ]
                recs = _record_sequence(vals)
                shifted[l] = bool(recs) and vals[recs[-1]] > LADDER_MAX
        return LimitPointReport(
            tree.name, spec.label, horizon,
            status="holds" if found is not None else "fails",
            diverging_vertex=found,
            records=found_records,
            record_values=found_values,
            root_diverging=root_div,
            shifted_ok=shifted,
            decay=None,
            sample=sample_verts,
            tree=tree,
            spec=spec,
        )

    decay = None
    status = "fails"
    if found is not None:
        decay = []
        usable = [n for n in found_records if n >= 1]
        for i in range(1, min(decay_indices, max(0, len(usable) - 1)) + 1):
            n_i = usable[i - 1]
            values = [
                to_float(abs(tree.weight(p_n(found, nk - n_i, tree))))
                for nk in usable[i:]
            ]
            tail = values[len(values) // 2:]
            obs = DecayObservation(
                i=i,
                last=values[-1],
                tail_min=min(tail),
                decayed=min(tail) <= DECAY_EPS,
            )
            decay.append(obs)
        if decay and all(o.decayed for o in decay):
            status = "holds"
    return LimitPointReport(
        tree.name, spec.label, horizon,
        status=status,
        diverging_vertex=found,
        records=found_records,
        record_values=found_values,
        root_diverging=None,
        shifted_ok=None,
        decay=decay,
        sample=sample_verts,
        tree=tree,
        spec=spec,
    )


def transitivity_filter_base(
    tree: TreeModel,
    spec: SpaceSpec,
    sets: Iterable,
    thresholds: Iterable,
    horizon: int,
) -> FamilySpec:
    """The filter base of I(F, N) (intersected with J(F, N) on unrooted trees)
    time sets, packaged as a generated-filter family."""
    from .families import generated_filter

    bases = []
    for F in sets:
        verts = tuple(sorted(VertexAddress(v[0], tuple(v[1])) for v in F))
        label_f = "{" + ",".join(format_address(v) for v in verts) + "}"
        for N in thresholds:
            times = I_set(verts, N, tree, spec, horizon)
            if not tree.rooted:
                times &= J_set(verts, N, tree, spec, horizon)
            bases.append((f"I({label_f},{N})", frozenset(times)))
    return generated_filter(bases)
