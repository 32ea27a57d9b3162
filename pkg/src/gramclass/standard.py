"""Standard extension quivers, Kronecker quivers, partitions and class counts.

For a partition ``pi`` of ``m`` with ``l`` parts and ``d >= 0`` the standard
quiver has the path ``1 -> 2 -> ... -> m``, then ``l - 1`` arrows joining the
cut points ``v_t = m - (pi_1 + ... + pi_t)``, then ``2d`` copies of the last
of those arrows with alternating orientation (first copy reversed).
"""

from __future__ import annotations

from functools import lru_cache
from typing import Iterable, Iterator, Literal

from .errors import InvalidShape
from .exactmat import IntMatrix
from .quiver import Partition, Quiver, beta_vectors, xi_and_cycle_type

Variant = Literal["A", "star"]


def as_partition(parts: Iterable[int]) -> Partition:
    """Validate and return a partition as a tuple of parts."""
    pi = tuple(int(p) for p in parts)
    if not pi or any(p <= 0 for p in pi) or any(a < b for a, b in zip(pi, pi[1:])):
        raise InvalidShape(f"not a partition (positive non-increasing parts): {pi}")
    return pi


def cut_points(pi: Partition) -> list[int]:
    """``v_0, ..., v_l`` with ``v_t = m - (pi_1 + ... + pi_t)``."""
    out = [sum(pi)]
    for p in pi:
        out.append(out[-1] - p)
    return out


def standard_quiver(pi: Iterable[int], d: int, variant: Variant = "A") -> Quiver:
    """Standard extension quiver of cycle type ``pi`` and degeneracy ``d``,
    or its inverse star-shaped counterpart when ``variant == "star"``."""
    pi = as_partition(pi)
    m = sum(pi)
    if m < 2:
        raise InvalidShape(f"standard quivers need m >= 2, got m = {m}")
    if d < 0:
        raise InvalidShape(f"degeneracy must be non-negative, got {d}")
    ell = len(pi)
    v = cut_points(pi)
    if variant == "A":
        path = [(t, t + 1) for t in range(1, m)]
        joins = [(v[t - 1], v[t]) for t in range(1, ell)]
    elif variant == "star":
        path = [(1, t + 1) for t in range(1, m)]
        joins = [(1, v[t] + 1) for t in range(1, ell)]
    else:
        raise InvalidShape(f"unknown variant {variant!r}")
    alpha = path[-1] if ell == 1 else joins[-1]
    if variant == "A":
        copies = [(alpha[1], alpha[0]) if t % 2 else alpha for t in range(1, 2 * d + 1)]
    else:
        copies = [alpha] * (2 * d)
    return Quiver(m, tuple(path + joins + copies))


def kronecker(n: int, inverse: bool = False) -> Quiver:
    """Kronecker quiver with ``n`` parallel arrows ``1 -> 2``; its inverse
    alternates orientations starting with ``1 -> 2``."""
    if n < 1:
        raise InvalidShape(f"Kronecker quiver needs n >= 1, got {n}")
    if inverse:
        return Quiver(2, tuple((1, 2) if k % 2 else (2, 1) for k in range(1, n + 1)))
    return Quiver(2, ((1, 2),) * n)


def kronecker_kernel(d: int) -> IntMatrix:
    """Kernel basis ``c_1..c_2d`` of the inverse Kronecker quiver on
    ``2d + 1`` arrows, on which its form restricts to ``W1 + ... + W1``."""
    size = 2 * d + 1

    def b(t: int) -> list[int]:
        out = [0] * size
        out[t - 1] = out[t] = 1
        return out

    cols = []
    for t in range(1, 2 * d + 1):
        if t % 2 == 0:
            cols.append([-x for x in b(t)])
        else:
            acc = [0] * size
            for r in range(0, (t - 1) // 2 + 1):
                acc = [x + y for x, y in zip(acc, b(2 * r + 1))]
            cols.append(acc)
    return IntMatrix.from_columns(cols, size)


def standard_kernel(pi: Iterable[int], d: int) -> tuple[IntMatrix, int]:
    """Kernel matrix ``[K', K'']`` of the standard quiver and the index
    where ``K''`` starts.

    ``K'`` holds the ``2d`` Kronecker vectors on the last ``2d + 1`` arrows,
    ``K''`` the orbit vectors of all but the last orbit.
    """
    pi = as_partition(pi)
    Q = standard_quiver(pi, d)
    n = Q.n
    kron = kronecker_kernel(d)
    first = [[0] * (n - kron.rows) + list(c) for c in kron.columns()]
    rest = [list(b) for b in beta_vectors(Q)[:-1]]
    return IntMatrix.from_columns(first + rest, n), len(first)


def standard_for(Q: Quiver) -> tuple[Partition, int]:
    """Cycle type and degeneracy of the standard quiver matching ``Q``."""
    _, pi = xi_and_cycle_type(Q)
    c = Q.n - Q.m + 1
    twice = c - (len(pi) - 1)
    if twice < 0 or twice % 2:
        raise InvalidShape(f"corank {c} is incompatible with cycle type {pi}")
    return pi, twice // 2


def partitions(m: int, largest: int | None = None) -> Iterator[Partition]:
    """All partitions of ``m`` in lexicographically decreasing order."""
    if largest is None:
        largest = m
    if m == 0:
        yield ()
        return
    for p in range(min(m, largest), 0, -1):
        for rest in partitions(m - p, p):
            yield (p,) + rest


def partitions_part1(m: int, c: int) -> list[Partition]:
    """Cycle types available to corank ``c`` forms on ``m`` vertices:
    partitions with ``l - 1 <= c`` and ``c - (l - 1)`` even."""
    return [pi for pi in partitions(m) if len(pi) - 1 <= c and (c - len(pi) + 1) % 2 == 0]


@lru_cache(maxsize=None)
def partitions_count(ell: int, m: int) -> int:
    """Number of partitions of ``m`` into exactly ``ell`` parts."""
    if ell == 0 and m == 0:
        return 1
    if ell <= 0 or m <= 0:
        return 0
    return partitions_count(ell - 1, m - 1) + partitions_count(ell, m - ell)


def count_classes(n: int, c: int) -> int:
    """Number of strong congruence classes of connected non-negative unit
    forms of Dynkin type A in ``n`` variables and corank ``c``."""
    if n < 1 or not 0 <= c <= n - 1:
        raise InvalidShape(f"need n >= 1 and 0 <= c <= n - 1, got n={n}, c={c}")
    m = n - c + 1
    return sum(partitions_count(c - 2 * d + 1, m) for d in range(c // 2 + 1))
