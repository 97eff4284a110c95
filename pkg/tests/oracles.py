"""Independent brute-force oracles used to pin expected values in tests.

Nothing here consults the library's closed forms: grid minima come from
exhaustive enumeration of mesh compositions (directly for tiny instances,
via dynamic programming over partial sums for larger ones - an implicit but
still exhaustive enumeration), and analytic tail sums are spelled out from
first principles.
"""

from __future__ import annotations

import math


def compositions(total: int, parts: int):
    """All tuples of `parts` nonnegative ints summing to `total`."""
    if parts == 1:
        yield (total,)
        return
    for head in range(total + 1):
        for rest in compositions(total - head, parts - 1):
            yield (head,) + rest


def _cost(c: int, mesh: int, w: float, p: float) -> float:
    return (c / mesh * abs(w)) ** p


def grid_min_enum(weights, p, mesh: int = 32) -> float:
    """Minimum norm of (x_j w_j) over the mesh-grid simplex by direct
    enumeration.  p is a float exponent or the string "sup"."""
    best = math.inf
    J = len(weights)
    for comp in compositions(mesh, J):
        if p == "sup":
            val = max(c / mesh * abs(w) for c, w in zip(comp, weights))
        else:
            val = sum(_cost(c, mesh, w, p) for c, w in zip(comp, weights)) ** (1.0 / p)
        if val < best:
            best = val
    return best


def grid_min_dp(weights, p, mesh: int = 64) -> float:
    """Same minimum via dynamic programming over (coordinate, partial sum):
    exhaustive over all compositions without materialising them."""
    inf = math.inf
    state = [0.0] + [inf] * mesh  # state[s]: best value using coords so far summing to s
    for w in weights:
        new = [inf] * (mesh + 1)
        for s in range(mesh + 1):
            if state[s] is inf:
                continue
            for c in range(mesh - s + 1):
                if p == "sup":
                    cand = max(state[s], c / mesh * abs(w))
                else:
                    cand = state[s] + _cost(c, mesh, w, p)
                if cand < new[s + c]:
                    new[s + c] = cand
        state = new
    return state[mesh] if p == "sup" else state[mesh] ** (1.0 / p)


def orbit_residual_tail(p: float, k: int, k_max: int = 7) -> float:
    """Analytic p-th power of the residual ||B^(2^k - 1) f - e_u1 + e_v1||
    for the signed indicator vector supported on generations 2^j, j <= k_max:
    the two surviving chains contribute (2/2^p) * sum_(l=k+1..k_max)
    2^(-p (2^l - 2^k))."""
    return (2.0 / 2.0 ** p) * sum(
        2.0 ** (-p * (2 ** l - 2 ** k)) for l in range(k + 1, k_max + 1)
    )
