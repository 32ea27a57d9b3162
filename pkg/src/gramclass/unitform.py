"""Unit quadratic forms given by their upper triangular Gram matrix."""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import reduce
from typing import Any, Sequence

from .errors import InternalError, InvariantError, NotConnected, NotNonNegative, NotTypeA
from .exactmat import IntMatrix, PolyZ, char_poly, inverse, kernel_basis, psd_rank, rank
from .quiver import Partition, Quiver, gram, xi_and_cycle_type


@dataclass(frozen=True)
class UnitForm:
    """Integral quadratic form ``q(x) = x^T upper x`` with unit diagonal."""

    upper: IntMatrix

    def __post_init__(self) -> None:
        if not self.upper.is_upper_unitriangular():
            raise InvariantError("unit form: upper triangular with unit diagonal")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]]) -> "UnitForm":
        n = len(rows)
        return cls(IntMatrix(rows, shape=(n, n)))

    @property
    def n(self) -> int:
        return self.upper.rows

    @property
    def gram(self) -> IntMatrix:
        """Symmetric Gram matrix ``upper + upper^T``."""
        return self.upper + self.upper.T

    def __call__(self, x: Sequence[int]) -> int:
        return sum(a * b for a, b in zip(x, self.upper.apply(x)))


@dataclass(frozen=True)
class RadicalProfile:
    corank: int
    reduced_corank: int
    degeneracy: int
    K: IntMatrix
    K_re: IntMatrix
    W: IntMatrix


def from_quiver(Q: Quiver) -> UnitForm:
    return UnitForm(gram(Q)[1])


def is_connected(q: UnitForm) -> bool:
    """Connectivity of the graph on variables joined when ``G[i][j] != 0``."""
    G = q.gram
    seen = {0}
    stack = [0]
    while stack:
        i = stack.pop()
        for j in range(q.n):
            if G[i, j] and j not in seen:
                seen.add(j)
                stack.append(j)
    return len(seen) == q.n


def _check_form(q: UnitForm) -> int:
    """Raise unless ``q`` is connected and non-negative; return its rank."""
    if not is_connected(q):
        raise NotConnected("the form is not connected")
    psd, r = psd_rank(q.gram)
    if not psd:
        raise NotNonNegative("the form takes negative values")
    return r


def realize_as_quiver(q: UnitForm) -> Quiver:
    """Connected loop-less quiver whose form is exactly ``q``.

    Depth-first search over arrow endpoints. Variables are placed in
    breadth-first order of the form's graph so each new arrow meets an
    arrow already placed; a candidate ``e_s - e_t`` must have the prescribed
    inner product with every placed column. Vertex labels are introduced
    in increasing order and the first arrow is ``1 -> 2``.
    """
    r = _check_form(q)
    m = r + 1
    n = q.n
    G = q.gram
    order = [0]
    seen = {0}
    for i in order:
        for j in range(n):
            if G[i, j] and j not in seen:
                seen.add(j)
                order.append(j)

    arrows: list[tuple[int, int] | None] = [None] * n
    placed: list[int] = []

    def dot(a: tuple[int, int], b: tuple[int, int]) -> int:
        (s, t), (u, v) = a, b
        return (s == u) - (s == v) - (t == u) + (t == v)

    def search(depth: int, used: int) -> bool:
        if depth == n:
            return True
        i = order[depth]
        top = min(used + 1, m)
        for s in range(1, top + 1):
            for t in range(1, top + 1):
                if s == t or (s > used and t > used):
                    continue
                cand = (s, t)
                if all(dot(cand, arrows[j]) == G[i, j] for j in placed):
                    arrows[i] = cand
                    placed.append(i)
                    if search(depth + 1, max(used, s, t)):
                        return True
                    placed.pop()
                    arrows[i] = None
        return False

    arrows[order[0]] = (1, 2)
    placed.append(order[0])
    if m < 2 or not search(1, 2):
        raise NotTypeA("no quiver realizes this form; it is not of Dynkin type A")
    Q = Quiver(m, tuple(a for a in arrows if a is not None))
    if from_quiver(Q) != q:
        raise InternalError("realization does not reproduce the form")
    return Q


def coxeter(q: UnitForm) -> tuple[IntMatrix, PolyZ]:
    """Coxeter matrix ``-Ghat^T Ghat^{-1}`` and its characteristic polynomial."""
    phi = -(q.upper.T @ inverse(q.upper))
    return phi, char_poly(phi)


def radical_profile(q: UnitForm) -> RadicalProfile:
    psd, r = psd_rank(q.gram)
    if not psd:
        raise NotNonNegative("the form takes negative values")
    K = kernel_basis(q.gram)
    W = K.T @ q.upper @ K
    if W.T != -W:
        raise InternalError("restriction of the form to its radical is not skew-symmetric")
    rw = rank(W)
    c = K.cols
    K_re = K @ kernel_basis(W) if c else K
    return RadicalProfile(
        corank=c,
        reduced_corank=c - rw,
        degeneracy=rw // 2,
        K=K,
        K_re=K_re,
        W=W,
    )


def coxeter_numbers(pi: Partition, c: int) -> tuple[float | int, int]:
    """Coxeter number (``math.inf`` unless there is one part) and reduced
    Coxeter number (lcm of the parts)."""
    if not pi:
        raise ValueError("empty partition")
    h = pi[0] if len(pi) == 1 else math.inf
    return h, reduce(math.lcm, pi)


def coxeter_polynomial_of_type(pi: Partition, c: int) -> PolyZ:
    """``(v-1)^(c-1) * prod (v^p - 1)`` over the parts ``p`` of ``pi``."""
    prod = PolyZ([1])
    for p in pi:
        prod = prod * PolyZ.x_pow_minus_one(p)
    lin = PolyZ([-1, 1])
    if c >= 1:
        return prod * lin ** (c - 1)
    quot, rem = prod.divmod_monic(lin)
    if rem.coeffs:
        raise InternalError("product of v^p - 1 not divisible by v - 1")
    return quot


def factored_string(pi: Partition, c: int) -> str:
    k = c - 1 + sum(1 for p in pi if p == 1)
    parts = [f"(v^{p}-1)" for p in pi if p > 1]
    if k > 0:
        parts.insert(0, "(v-1)" + (f"^{k}" if k > 1 else ""))
    body = "*".join(parts) or "1"
    return body + "/(v-1)" if k < 0 else body


def cycle_type(q: UnitForm) -> Partition:
    return xi_and_cycle_type(realize_as_quiver(q))[1]


def classify(q: UnitForm) -> dict[str, Any]:
    """Complete strong congruence invariants of a form of Dynkin type A."""
    Q = realize_as_quiver(q)
    _, pi = xi_and_cycle_type(Q)
    prof = radical_profile(q)
    c = prof.corank
    _, phi = coxeter(q)
    expected = coxeter_polynomial_of_type(pi, c)
    if phi != expected:
        raise InternalError(f"Coxeter polynomial {phi} does not factor as {factored_string(pi, c)}")
    if prof.reduced_corank != len(pi) - 1:
        raise InternalError("reduced corank differs from the number of orbits minus one")
    h, h_re = coxeter_numbers(pi, c)
    return {
        "n": q.n,
        "dynkin_type": f"A{q.n - c}",
        "corank": c,
        "cycle_type": list(pi),
        "degeneracy": prof.degeneracy,
        "reduced_corank": prof.reduced_corank,
        "coxeter_polynomial": list(phi.coeffs),
        "coxeter_polynomial_factored": factored_string(pi, c),
        "coxeter_number": h,
        "reduced_coxeter_number": h_re,
    }
