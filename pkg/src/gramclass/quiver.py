"""Quivers, walks and the vertex permutation read off structural walks.

Vertices and arrows are numbered from 1. A quiver is stored as its vertex
count and the ordered list of ``(source, target)`` pairs; the order of the
arrows matters because structural walks are defined through it.
"""

from __future__ import annotations

import random
from collections import deque
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Literal, Sequence

from .errors import Disconnected, HasLoop, InfeasibleShape, InvariantError
from .exactmat import IntMatrix, inverse

Partition = tuple[int, ...]


@dataclass(frozen=True)
class Permutation:
    """Bijection of ``{1..m}``; ``images[v-1]`` is the image of ``v``."""

    images: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "images", tuple(self.images))
        if sorted(self.images) != list(range(1, len(self.images) + 1)):
            raise InvariantError("permutation is bijective", f"images {self.images}")

    @classmethod
    def identity(cls, m: int) -> "Permutation":
        return cls(tuple(range(1, m + 1)))

    @property
    def m(self) -> int:
        return len(self.images)

    def __call__(self, v: int) -> int:
        return self.images[v - 1]

    def compose(self, other: "Permutation") -> "Permutation":
        """``self o other``, that is ``v -> self(other(v))``."""
        return Permutation(tuple(self(other(v)) for v in range(1, self.m + 1)))

    def inverse(self) -> "Permutation":
        inv = [0] * self.m
        for v, w in enumerate(self.images, start=1):
            inv[w - 1] = v
        return Permutation(tuple(inv))

    def cycles(self) -> list[tuple[int, ...]]:
        """Orbits sorted by length (descending) then smallest member;
        each cycle starts at its smallest member."""
        seen: set[int] = set()
        out = []
        for v in range(1, self.m + 1):
            if v in seen:
                continue
            cyc = [v]
            seen.add(v)
            w = self(v)
            while w != v:
                cyc.append(w)
                seen.add(w)
                w = self(w)
            out.append(tuple(cyc))
        out.sort(key=lambda c: (-len(c), c[0]))
        return out

    def cycle_type(self) -> Partition:
        return tuple(len(c) for c in self.cycles())

    def matrix(self) -> IntMatrix:
        """Permutation matrix sending ``e_v`` to ``e_{rho(v)}``."""
        m = self.m
        return IntMatrix([[int(self(j + 1) == i + 1) for j in range(m)] for i in range(m)], shape=(m, m))


@dataclass(frozen=True)
class Walk:
    """A walk: a start vertex and signed arrows ``(arrow, +1|-1)``.

    Sign ``+1`` traverses the arrow from its source to its target.
    """

    start: int
    steps: tuple[tuple[int, int], ...]
    end: int

    @classmethod
    def trivial(cls, v: int) -> "Walk":
        return cls(v, (), v)

    def __len__(self) -> int:
        return len(self.steps)

    def reverse(self) -> "Walk":
        return Walk(self.end, tuple((a, -e) for a, e in reversed(self.steps)), self.start)

    def __add__(self, other: "Walk") -> "Walk":
        if self.end != other.start:
            raise InvariantError("walks concatenate end to start", f"{self.end} != {other.start}")
        return Walk(self.start, self.steps + other.steps, other.end)

    def __str__(self) -> str:
        if not self.steps:
            return f"e_{self.start}"
        return " ".join(f"{a}^{'+1' if e > 0 else '-1'}" for a, e in self.steps)


@dataclass(frozen=True)
class Quiver:
    """Vertex count ``m`` and ordered arrows ``(source, target)``."""

    m: int
    arrows: tuple[tuple[int, int], ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "arrows", tuple((int(s), int(t)) for s, t in self.arrows))
        for k, (s, t) in enumerate(self.arrows, start=1):
            if not (1 <= s <= self.m and 1 <= t <= self.m):
                raise InvariantError("arrow endpoints are vertices", f"arrow {k} = ({s},{t}) with m = {self.m}")

    @property
    def n(self) -> int:
        return len(self.arrows)

    def source(self, i: int) -> int:
        return self.arrows[i - 1][0]

    def target(self, i: int) -> int:
        return self.arrows[i - 1][1]


def components(Q: Quiver) -> list[list[int]]:
    """Connected components of the underlying graph."""
    adj: dict[int, set[int]] = {v: set() for v in range(1, Q.m + 1)}
    for s, t in Q.arrows:
        adj[s].add(t)
        adj[t].add(s)
    seen: set[int] = set()
    out = []
    for v in range(1, Q.m + 1):
        if v in seen:
            continue
        comp, stack = [], [v]
        seen.add(v)
        while stack:
            x = stack.pop()
            comp.append(x)
            for y in adj[x] - seen:
                seen.add(y)
                stack.append(y)
        out.append(sorted(comp))
    return out


def validate(Q: Quiver) -> Quiver:
    """Return ``Q`` if it is loop-less and connected, raise otherwise."""
    for k, (s, t) in enumerate(Q.arrows, start=1):
        if s == t:
            raise HasLoop(k)
    comps = components(Q)
    if len(comps) > 1:
        raise Disconnected(comps)
    return Q


def incidence(Q: Quiver) -> IntMatrix:
    cols = []
    for s, t in Q.arrows:
        c = [0] * Q.m
        c[s - 1] += 1
        c[t - 1] -= 1
        cols.append(c)
    return IntMatrix.from_columns(cols, Q.m)


def gram(Q: Quiver) -> tuple[IntMatrix, IntMatrix]:
    """Symmetric Gram matrix ``I^T I`` and its upper unitriangular half."""
    inc = incidence(Q)
    G = inc.T @ inc
    n = Q.n
    upper = IntMatrix(
        [[G[i, j] if j > i else int(i == j) for j in range(n)] for i in range(n)],
        shape=(n, n),
    )
    return G, upper


@lru_cache(maxsize=4096)
def _incident_arrows(Q: Quiver) -> dict[int, tuple[int, ...]]:
    inc: dict[int, list[int]] = {v: [] for v in range(1, Q.m + 1)}
    for k, (s, t) in enumerate(Q.arrows, start=1):
        inc[s].append(k)
        inc[t].append(k)
    return {v: tuple(sorted(a)) for v, a in inc.items()}


def structural_walk(Q: Quiver, v: int, direction: Literal["descending", "ascending"] = "descending") -> Walk:
    """The maximal minimally descending (or ascending) walk starting at ``v``.

    Descending: leave ``v`` along its largest incident arrow, then keep
    taking the largest arrow at the current vertex that is smaller than
    the arrow just used. Ascending mirrors this with smallest arrows.
    """
    inc = _incident_arrows(Q)
    desc = direction == "descending"
    if direction not in ("descending", "ascending"):
        raise ValueError(f"unknown direction {direction!r}")
    if not inc[v]:
        return Walk.trivial(v)
    cur = v
    a = inc[v][-1] if desc else inc[v][0]
    steps = []
    while True:
        s, t = Q.arrows[a - 1]
        sign = 1 if s == cur else -1
        cur = t if sign == 1 else s
        steps.append((a, sign))
        nxt = [b for b in inc[cur] if (b < a if desc else b > a)]
        if not nxt:
            break
        a = nxt[-1] if desc else nxt[0]
    return Walk(v, tuple(steps), cur)


@lru_cache(maxsize=4096)
def descending_walks(Q: Quiver) -> tuple[Walk, ...]:
    """``structural_walk(Q, v)`` for ``v = 1..m``."""
    return tuple(structural_walk(Q, v) for v in range(1, Q.m + 1))


def xi_and_cycle_type(Q: Quiver) -> tuple[Permutation, Partition]:
    """Permutation sending each vertex to the end of its descending
    structural walk, and the cycle type of that permutation."""
    xi = Permutation(tuple(w.end for w in descending_walks(Q)))
    return xi, xi.cycle_type()


def coxeter_laplacian(Q: Quiver) -> IntMatrix:
    """``Id - I Ghat^{-1} I^T``."""
    inc = incidence(Q)
    _, upper = gram(Q)
    return IntMatrix.identity(Q.m) - inc @ inverse(upper) @ inc.T


def inverse_quiver(Q: Quiver) -> Quiver:
    """Inverse quiver, read off the descending structural walks.

    Each arrow is traversed once forwards and once backwards by the
    family of descending structural walks; the ends of those two walks
    give its new target and new source respectively.
    """
    walks = descending_walks(Q)
    src = [0] * Q.n
    tgt = [0] * Q.n
    for w in walks:
        for a, e in w.steps:
            if e > 0:
                tgt[a - 1] = w.end
            else:
                src[a - 1] = w.end
    return Quiver(Q.m, tuple(zip(src, tgt)))


def transform(Q: Quiver, rho: Permutation, flip: bool = False) -> Quiver:
    """Relabel vertices by ``rho`` and optionally reverse every arrow."""
    if flip:
        return Quiver(Q.m, tuple((rho(t), rho(s)) for s, t in Q.arrows))
    return Quiver(Q.m, tuple((rho(s), rho(t)) for s, t in Q.arrows))


def incidence_vector(w: Walk, n: int) -> tuple[int, ...]:
    out = [0] * n
    for a, e in w.steps:
        out[a - 1] += e
    return tuple(out)


def check_walk(Q: Quiver, w: Walk) -> None:
    cur = w.start
    for a, e in w.steps:
        s, t = Q.arrows[a - 1]
        if e > 0 and s == cur:
            cur = t
        elif e < 0 and t == cur:
            cur = s
        else:
            raise InvariantError("consecutive walk steps share endpoints", f"step {a}^{e} at vertex {cur}")
    if cur != w.end:
        raise InvariantError("walk ends where stated", f"{cur} != {w.end}")


def connecting_walk(Q: Quiver, u: int, v: int) -> Walk:
    """Shortest walk from ``u`` to ``v`` found by breadth-first search,
    exploring arrows in increasing index order."""
    if u == v:
        return Walk.trivial(u)
    inc = _incident_arrows(Q)
    parent: dict[int, tuple[int, int, int]] = {}
    queue = deque([u])
    seen = {u}
    while queue:
        x = queue.popleft()
        for a in inc[x]:
            s, t = Q.arrows[a - 1]
            y, e = (t, 1) if s == x else (s, -1)
            if y in seen:
                continue
            seen.add(y)
            parent[y] = (x, a, e)
            if y == v:
                steps = []
                while y != u:
                    x, a, e = parent[y]
                    steps.append((a, e))
                    y = x
                return Walk(u, tuple(reversed(steps)), v)
            queue.append(y)
    raise Disconnected(components(Q))


def xi_orbits(Q: Quiver) -> list[tuple[int, ...]]:
    """Orbits of the structural permutation, in the canonical order."""
    xi, _ = xi_and_cycle_type(Q)
    return xi.cycles()


def beta_walks(Q: Quiver) -> list[Walk]:
    """Closed walks obtained by concatenating the descending structural
    walks along each orbit, starting at its smallest vertex."""
    walks = descending_walks(Q)
    out = []
    for orbit in xi_orbits(Q):
        w = walks[orbit[0] - 1]
        for v in orbit[1:]:
            w = w + walks[v - 1]
        out.append(w)
    return out


def beta_vectors(Q: Quiver) -> list[tuple[int, ...]]:
    """Incidence vectors of :func:`beta_walks`, one per orbit."""
    return [incidence_vector(w, Q.n) for w in beta_walks(Q)]


def random_quiver(m: int, n: int, seed: int) -> Quiver:
    """Seeded random connected loop-less quiver: a random spanning tree
    plus ``n - m + 1`` extra arrows, random orientations and arrow order."""
    if m < 2 or n < m - 1:
        raise InfeasibleShape(f"no connected quiver with m={m} vertices and n={n} arrows")
    rng = random.Random(seed)
    labels = list(range(1, m + 1))
    rng.shuffle(labels)
    edges = [(labels[rng.randrange(k)], labels[k]) for k in range(1, m)]
    for _ in range(n - m + 1):
        s, t = rng.sample(range(1, m + 1), 2)
        edges.append((s, t))
    arrows = [(s, t) if rng.random() < 0.5 else (t, s) for s, t in edges]
    rng.shuffle(arrows)
    return Quiver(m, tuple(arrows))


def path_quiver(m: int) -> Quiver:
    """Linearly oriented path ``1 -> 2 -> ... -> m``."""
    return Quiver(m, tuple((t, t + 1) for t in range(1, m)))


def as_walk(Q: Quiver, start: int, steps: Iterable[tuple[int, int]]) -> Walk:
    """Build and check a walk from its start and signed arrows."""
    steps = tuple(steps)
    cur = start
    for a, e in steps:
        s, t = Q.arrows[a - 1]
        cur = t if e > 0 else s
    w = Walk(start, steps, cur)
    check_walk(Q, w)
    return w


def vector_sum(vectors: Sequence[Sequence[int]], n: int) -> tuple[int, ...]:
    out = [0] * n
    for v in vectors:
        for i, x in enumerate(v):
            out[i] += x
    return tuple(out)
