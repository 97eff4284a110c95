"""Weighted sequence-space structure on finitely supported vectors.

Arithmetic is polymorphic over the scalar types that flow in: with Fraction
weights and entries (and an integer exponent) sums stay exact rationals; with
floats everything degrades gracefully to double precision.  Only the final
p-th root forces a float.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import IO, Iterator, Optional

from .errors import InvalidAddressError
from .trees import TreeModel, VertexAddress, format_address, parse_address


def to_float(x) -> float:
    """float(x) with huge exact rationals clamped to inf instead of raising."""
    try:
        return float(x)
    except OverflowError:
        return math.inf if x > 0 else -math.inf


def safe_div(num, denom):
    """num / denom that never raises on magnitude: exact Fractions for
    rational inputs (big integer counts stay exact), inf past float range."""
    if isinstance(num, (int, Fraction)) and isinstance(denom, (int, Fraction)):
        return Fraction(num) / denom
    try:
        return num / denom
    except OverflowError:
        return math.inf


def powed(x, e):
    """|x| ** e, staying exact when x is rational and e an integer."""
    if isinstance(e, Fraction):
        e = e.numerator if e.denominator == 1 else float(e)
    if isinstance(e, float) and e.is_integer():
        e = int(e)
    base = abs(x)
    if isinstance(e, int):
        return base ** e
    return to_float(base) ** e


@dataclass(frozen=True)
class SpaceSpec:
    """Which Banach space the vectors live in: l^p (1 <= p < inf) or c_0."""

    kind: str  # "lp" | "c0"
    p: Optional[Fraction] = None

    @staticmethod
    def ell(p) -> "SpaceSpec":
        p = Fraction(p)
        if p < 1:
            raise ValueError(f"p must satisfy 1 <= p < inf, got {p}")
        return SpaceSpec("lp", p)

    @staticmethod
    def c_zero() -> "SpaceSpec":
        return SpaceSpec("c0", None)

    @staticmethod
    def parse(text: str) -> "SpaceSpec":
        text = text.strip().lower()
        if text in ("c0", "c_0"):
            return SpaceSpec.c_zero()
        return SpaceSpec.ell(Fraction(text))

    def __post_init__(self):
        if self.kind not in ("lp", "c0"):
            raise ValueError(f"unknown space kind {self.kind!r}")
        if self.kind == "lp":
            if self.p is None or self.p < 1:
                raise ValueError("l^p spaces need p >= 1")
            if self.p > 1:
                # conjugate exponent sanity: 1/p + 1/p* = 1
                q = self.conjugate
                q = Fraction(q) if not isinstance(q, Fraction) else q
                assert abs(Fraction(1, 1) - (1 / self.p + 1 / q)) <= Fraction(1, 10 ** 12)

    @property
    def conjugate(self):
        """p* = p/(p-1); math.inf for p = 1; undefined (None) for c0."""
        if self.kind != "lp":
            return None
        if self.p == 1:
            return math.inf
        q = self.p / (self.p - 1)
        return q.numerator if q.denominator == 1 else q

    @property
    def label(self) -> str:
        if self.kind == "c0":
            return "c0"
        p = self.p
        return f"l^{p.numerator}" if p.denominator == 1 else f"l^{p}"


class SparseVector:
    """Finitely supported function from vertex addresses to scalars.

    Zero values are never stored; off-support lookups return 0.  Instances are
    immutable by convention: all arithmetic returns new vectors.
    """

    __slots__ = ("_entries",)

    def __init__(self, entries=None):
        d = {}
        if entries:
            items = entries.items() if hasattr(entries, "items") else entries
            for v, x in items:
                if x != 0:
                    d[v] = x
        self._entries = d

    def items(self):
        return self._entries.items()

    def support(self):
        return self._entries.keys()

    def __getitem__(self, v):
        return self._entries.get(v, 0)

    def __contains__(self, v) -> bool:
        return v in self._entries

    def __len__(self) -> int:
        return len(self._entries)

    def __iter__(self) -> Iterator[VertexAddress]:
        return iter(self._entries)

    def __bool__(self) -> bool:
        return bool(self._entries)

    def __eq__(self, other) -> bool:
        if isinstance(other, SparseVector):
            return self._entries == other._entries
        if other == 0:
            return not self._entries
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self._entries.items()))

    def __add__(self, other: "SparseVector") -> "SparseVector":
        d = dict(self._entries)
        for v, x in other.items():
            y = d.get(v, 0) + x
            if y == 0:
                d.pop(v, None)
            else:
                d[v] = y
        out = SparseVector.__new__(SparseVector)
        out._entries = d
        return out

    def __sub__(self, other: "SparseVector") -> "SparseVector":
        return self + (-1) * other

    def __neg__(self) -> "SparseVector":
        return (-1) * self

    def __rmul__(self, scalar) -> "SparseVector":
        if scalar == 0:
            return SparseVector()
        out = SparseVector.__new__(SparseVector)
        out._entries = {v: scalar * x for v, x in self._entries.items()}
        return out

    def __mul__(self, scalar) -> "SparseVector":
        return self.__rmul__(scalar)

    def __repr__(self) -> str:
        parts = ", ".join(
            f"{format_address(v)}: {x}" for v, x in sorted(self._entries.items())
        )
        return f"SparseVector({{{parts}}})"


def basis(v) -> SparseVector:
    """The characteristic vector e_v."""
    return SparseVector({VertexAddress(v[0], tuple(v[1])): 1})


def pairing(f: SparseVector, g: SparseVector):
    """Bilinear duality pairing sum_v f(v) g(v) (no conjugation)."""
    if len(g) < len(f):
        f, g = g, f
    total = 0
    for v, x in f.items():
        y = g[v]
        if y != 0:
            total += x * y
    return total


def _check_support(f: SparseVector, tree: TreeModel) -> None:
    for v in f.support():
        tree.check(v)


def norm_powered(f: SparseVector, spec: SpaceSpec, tree: TreeModel):
    """sum_v |f(v) mu_v|^p for an l^p space; exact when the inputs are."""
    if spec.kind != "lp":
        raise ValueError("norm_powered is only defined for l^p spaces")
    _check_support(f, tree)
    p = spec.p
    return sum(powed(x * tree.weight(v), p) for v, x in f.items())


def norm(f: SparseVector, spec: SpaceSpec, tree: TreeModel):
    """The space norm of a finitely supported vector.

    c0 uses the weighted sup norm, p = 1 the weighted absolute sum (both exact
    for exact inputs); for p > 1 the final root is taken in floats.
    """
    if not f:
        return 0
    if spec.kind == "c0":
        _check_support(f, tree)
        return max(abs(x * tree.weight(v)) for v, x in f.items())
    if spec.p == 1:
        _check_support(f, tree)
        return sum(abs(x * tree.weight(v)) for v, x in f.items())
    return to_float(norm_powered(f, spec, tree)) ** (1.0 / float(spec.p))


def dump_vector(f: SparseVector, fp: IO[str]) -> None:
    """Write one `address<TAB>value` line per support vertex, sorted."""
    for v, x in sorted(f.items()):
        fp.write(f"{format_address(v)}\t{_format_scalar(x)}\n")


def load_vector(fp: IO[str]) -> SparseVector:
    entries = {}
    for lineno, raw in enumerate(fp, start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        try:
            addr_text, value_text = line.split("\t")
        except ValueError:
            raise InvalidAddressError(
                f"line {lineno}: expected 'address<TAB>value', got {line!r}"
            ) from None
        entries[parse_address(addr_text)] = parse_scalar(value_text)
    return SparseVector(entries)


def _format_scalar(x) -> str:
    if isinstance(x, Fraction):
        return f"{x.numerator}/{x.denominator}"
    return repr(x)


def parse_scalar(text: str):
    """Parse int, Fraction ('3/4'), float, or complex scalar text."""
    text = text.strip()
    try:
        return int(text)
    except ValueError:
        pass
    if "/" in text:
        return Fraction(text)
    try:
        return float(text)
    except ValueError:
        pass
    try:
        return complex(text)
    except ValueError:
        raise ValueError(f"cannot parse scalar {text!r}") from None
