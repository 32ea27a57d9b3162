"""Strong Gram congruences between quivers and unit forms of type A.

The construction runs in three stages. A combinatorial matrix built from
structural walks maps the incidence matrix of a quiver onto that of its
standard quiver (it need not be invertible). A correction supported on the
radical makes it invertible. A second correction, obtained from a skew
decomposition on the radical, turns the result into a strong congruence.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Mapping

from .errors import (
    CycleTypeMismatch,
    DifferentCoxeterPolynomial,
    InternalError,
    InvalidShape,
    InvariantError,
    LaplacianMismatch,
    NoL,
    NonIntegerSolution,
    NoSolution,
    NotInvertible,
    NotPure,
    NotPureNormalForm,
    NotPseudoEndo,
    NotSkewSymmetric,
    NotWeaklyCongruent,
    NonIntegerStar,
    ShapeMismatch,
    Underdetermined,
    WNotInvertibleNormal,
)
from .exactmat import (
    IntMatrix,
    det,
    hnf,
    inverse,
    kernel_basis,
    psd_rank,
    skew_normal_form,
    solve_exact,
    symplectic_unit,
)
from .quiver import (
    Partition,
    Permutation,
    Quiver,
    Walk,
    beta_vectors,
    coxeter_laplacian,
    connecting_walk,
    descending_walks,
    gram,
    incidence,
    incidence_vector,
    inverse_quiver,
    transform,
    validate,
    xi_and_cycle_type,
)
from .standard import cut_points, standard_for, standard_kernel, standard_quiver
from .unitform import UnitForm, coxeter, from_quiver, realize_as_quiver


@dataclass(frozen=True)
class PseudoMorphism:
    """Matrix ``B`` with ``I(source) B = I(target)`` and
    ``I(target^dagger) B^T = I(source^dagger)``."""

    B: IntMatrix
    source: Quiver
    target: Quiver

    def holds(self) -> bool:
        return (
            incidence(self.source) @ self.B == incidence(self.target)
            and incidence(inverse_quiver(self.target)) @ self.B.T == incidence(inverse_quiver(self.source))
        )

    def check(self) -> "PseudoMorphism":
        if not self.holds():
            raise InvariantError("pseudo-morphism incidence identities")
        return self


@dataclass(frozen=True)
class CongruenceCertificate:
    """``B`` with ``B^T Ghat_source B = Ghat_target`` and ``|det B| = 1``.

    ``rho`` relabels the vertices of the source quiver so that
    ``I(rho . Q) B = I(standard quiver)``; it is the identity when the
    certificate comes from forms alone.
    """

    B: IntMatrix
    rho: Permutation
    source_form: UnitForm
    target_form: UnitForm
    target_partition: Partition
    degeneracy: int

    def verify(self) -> bool:
        return (
            abs(det(self.B)) == 1
            and self.B.T @ self.source_form.upper @ self.B == self.target_form.upper
        )

    def to_json(self) -> dict[str, Any]:
        return {
            "rho": list(self.rho.images),
            "B": self.B.tolist(),
            "target_partition": list(self.target_partition),
            "degeneracy": self.degeneracy,
            "verified": self.verify(),
        }


def _upper(Q: Quiver) -> IntMatrix:
    return gram(Q)[1]


def star(B: IntMatrix, G_src: IntMatrix, G_tgt: IntMatrix) -> IntMatrix:
    """``G_tgt^{-1} B^T G_src``, asserted integral."""
    try:
        return solve_exact(G_tgt, B.T @ G_src)
    except (NonIntegerSolution, NoSolution, Underdetermined) as exc:
        raise NonIntegerStar("adjoint matrix is not integral") from exc


def conjugating_permutation(xi: Permutation, xi_target: Permutation) -> Permutation:
    """``rho`` with ``xi_target = rho o xi o rho^{-1}``.

    Cycles of equal rank in the canonical order are matched, each starting
    from its smallest member.
    """
    if xi.m != xi_target.m or xi.cycle_type() != xi_target.cycle_type():
        raise CycleTypeMismatch(f"cycle types {xi.cycle_type()} and {xi_target.cycle_type()} differ")
    images = [0] * xi.m
    for src, dst in zip(xi.cycles(), xi_target.cycles()):
        for a, b in zip(src, dst):
            images[a - 1] = b
    rho = Permutation(tuple(images))
    if rho.compose(xi) != xi_target.compose(rho):
        raise InternalError("conjugating permutation does not conjugate")
    return rho


def build_pseudo_morphism(
    Q: Quiver, Q_std: Quiver, deltas: Mapping[int, Walk] | None = None
) -> PseudoMorphism:
    """Pseudo-morphism from ``Q`` to the standard quiver ``Q_std`` assembled
    from incidence vectors of descending structural walks.

    ``deltas`` optionally fixes, for ``t = 1..l-1``, the walk from the cut
    point ``v_t`` to ``v_t + 1``; by default breadth-first walks are used.
    """
    if (Q.m, Q.n) != (Q_std.m, Q_std.n):
        raise ShapeMismatch(f"quivers have shapes {(Q.m, Q.n)} and {(Q_std.m, Q_std.n)}")
    pi, d = standard_for(Q_std)
    if standard_quiver(pi, d) != Q_std:
        raise InvalidShape("target is not a standard quiver")
    if coxeter_laplacian(Q) != coxeter_laplacian(Q_std):
        raise LaplacianMismatch("Coxeter-Laplacians of source and target differ")
    n, m, ell = Q.n, Q.m, len(pi)
    a = [incidence_vector(w, n) for w in descending_walks(Q)]

    def neg(x: tuple[int, ...]) -> tuple[int, ...]:
        return tuple(-e for e in x)

    if ell == 1:
        tail = a[m - 2]
        cols = a[: m - 1] + [neg(tail) if t % 2 else tail for t in range(1, 2 * d + 1)]
    else:
        v = cut_points(pi)
        dvec = {}
        for t in range(1, ell):
            w = deltas[t] if deltas and t in deltas else connecting_walk(Q, v[t], v[t] + 1)
            if (w.start, w.end) != (v[t], v[t] + 1):
                raise InvalidShape(f"walk for t={t} must run from {v[t]} to {v[t] + 1}")
            dvec[t] = incidence_vector(w, n)
        at_cut = {v[t]: t for t in range(1, ell)}
        cols = [dvec[at_cut[u]] if u in at_cut else a[u - 1] for u in range(1, m)]
        ys = [tuple(x - y for x, y in zip(a[v[t - 1] - 1], dvec[t])) for t in range(1, ell)]
        last = ys[-1]
        cols += ys + [neg(last) if t % 2 else last for t in range(1, 2 * d + 1)]
    B = IntMatrix.from_columns(cols, n)
    P = PseudoMorphism(B, Q, Q_std)
    if not P.holds():
        raise InternalError("walk matrix is not a pseudo-morphism")
    return P


def adapted_kernel(Q: Quiver) -> tuple[IntMatrix, int]:
    """Kernel matrix ``[K', K'']`` of ``I(Q)`` whose last block is the
    orbit basis of the reduced radical; returns it with the split index."""
    K_any = kernel_basis(incidence(Q))
    betas = beta_vectors(Q)[:-1]
    if not betas:
        return K_any, K_any.cols
    c, r = K_any.cols, len(betas)
    X = solve_exact(K_any, IntMatrix.from_columns(betas, Q.n))
    H, U = hnf(X.T)
    if H.block(0, r, 0, r) != IntMatrix.identity(r):
        raise InternalError("orbit vectors do not span a pure sublattice")
    V0 = inverse(U).T
    V = V0.block(0, c, r, c).hstack(X)
    return K_any @ V, c - r


def upsilon(Z: IntMatrix, K: IntMatrix, G: IntMatrix) -> IntMatrix:
    """``Id + K Z (G K)^T``."""
    if Z.shape != (K.cols, K.cols) or G.shape != (K.rows, K.rows):
        raise ShapeMismatch("upsilon needs a c x c matrix for an n x c kernel matrix")
    return IntMatrix.identity(K.rows) + K @ Z @ (G @ K).T


def xi_of_endo(B: IntMatrix, K: IntMatrix, G: IntMatrix) -> IntMatrix:
    """The unique ``Z`` with ``B = Id + K Z (G K)^T``."""
    try:
        L = solve_exact(K, B - IntMatrix.identity(B.rows))
        return solve_exact(G @ K, L.T).T
    except (NoSolution, NonIntegerSolution, Underdetermined) as exc:
        raise NotPseudoEndo("matrix is not of the form Id + K Z (G K)^T") from exc


def circ_w(Z: IntMatrix, Z2: IntMatrix, W: IntMatrix) -> IntMatrix:
    """``Z + Z2 - Z W Z2``."""
    if not (Z.shape == Z2.shape == W.shape and Z.is_square()):
        raise ShapeMismatch("circ_w needs three c x c matrices")
    return Z + Z2 - Z @ W @ Z2


def _require_skew(*mats: IntMatrix) -> None:
    for X in mats:
        if not X.is_square() or X.T != -X:
            raise NotSkewSymmetric("matrix is not skew-symmetric")


def skew_factor_a(Z: IntMatrix, W: IntMatrix) -> IntMatrix:
    """``Y`` with ``Z = Y^T W Y`` for ``W = W1 + ... + W1``."""
    _require_skew(Z, W)
    c = W.rows
    if c % 2 or W != symplectic_unit(c // 2) or Z.shape != W.shape:
        raise WNotInvertibleNormal("W must be a direct sum of [[0,1],[-1,0]] blocks of Z's size")
    P, d = skew_normal_form(Z)
    f = list(d) + [0] * (c // 2 - len(d))
    diag = [x for fi in f for x in (1, fi)]
    S = IntMatrix([[diag[i] if i == j else 0 for j in range(c)] for i in range(c)], shape=(c, c))
    return S @ inverse(P)


def _decompose_normal(Z: IntMatrix, W: IntMatrix, p: int) -> IntMatrix:
    c = Z.rows
    Wp = W.block(0, p, 0, p)
    Y1 = skew_factor_a(Z.block(0, p, 0, p) + Wp, Wp) - Wp
    Y2 = Z.block(p, c, 0, p)
    Y3 = Z.block(p, c, p, c).strict_lower()
    top = Y1.hstack(IntMatrix.zeros(p, c - p))
    return top.vstack(Y2.hstack(Y3))


def skew_decompose_b(Z: IntMatrix, W: IntMatrix) -> IntMatrix:
    """``Y`` with ``Z = Y - Y^T + Y^T W Y`` for a pure skew-symmetric ``W``.

    When ``W`` is not already ``(W1 + ... + W1) + 0`` it is first brought
    to that shape by a unimodular congruence ``R`` and the answer is
    conjugated back as ``R Y R^T``.
    """
    _require_skew(Z, W)
    if Z.shape != W.shape:
        raise ShapeMismatch("Z and W must have the same size")
    c = W.rows
    R, d = skew_normal_form(W)
    if any(x != 1 for x in d):
        raise NotPureNormalForm(f"W has invariant factors {d}; it is not pure")
    if Z.is_zero():
        return IntMatrix.zeros(c, c)
    r = len(d)
    normal = symplectic_unit(r, c - 2 * r)
    if W == normal:
        return _decompose_normal(Z, W, 2 * r)
    Rinv = inverse(R)
    Yt = _decompose_normal(Rinv @ Z @ Rinv.T, normal, 2 * r)
    return R @ Yt @ R.T


def correct_invertibility(
    P: PseudoMorphism, K: IntMatrix, K_std: IntMatrix, split: int | None = None
) -> IntMatrix:
    """Correction ``M`` supported on the radical making ``P.B + M`` invertible.

    ``K = [K', K'']`` and ``K_std = [K_std', K_std'']`` are kernel matrices
    whose second blocks span the reduced radicals; ``split`` is the width
    of the first blocks (twice the degeneracy by default).
    """
    G_std = _upper(P.target)
    if split is None:
        split = 2 * standard_for(P.target)[1]
    try:
        L = solve_exact(K, P.B @ K_std)
    except (NoSolution, NonIntegerSolution, Underdetermined) as exc:
        raise NoL("no integral L with B K_std = K L") from exc
    c, p = K.cols, split
    if not L.block(0, p, p, c).is_zero():
        raise InternalError("B does not preserve the reduced radical")
    Wp = K_std.block(0, K_std.rows, 0, p)
    Wp = Wp.T @ G_std @ Wp
    try:
        Wp_inv = inverse(Wp)
    except NotInvertible as exc:
        raise NotPure("restricted skew form is not invertible over the integers") from exc
    Y1 = (L.block(0, p, 0, p) - IntMatrix.identity(p)) @ Wp_inv
    Y2 = L.block(p, c, 0, p) @ Wp_inv
    Y = Y1.vstack(Y2).hstack(IntMatrix.zeros(c, c - p))
    return K @ Y @ (G_std @ K_std).T


def correct_to_strong(P: PseudoMorphism, K_std: IntMatrix) -> IntMatrix:
    """``C`` such that ``(B C)^T Ghat_source (B C) = Ghat_target``."""
    G_src, G_tgt = _upper(P.source), _upper(P.target)
    if abs(det(P.B)) != 1:
        raise NotInvertible("pseudo-morphism is not invertible over the integers")
    B_arrow = star(P.B, G_src, G_tgt) @ P.B
    Z = xi_of_endo(inverse(B_arrow), K_std, G_tgt)
    W = K_std.T @ G_tgt @ K_std
    try:
        Y = skew_decompose_b(Z, W)
    except NotPureNormalForm as exc:
        raise NotPure(str(exc)) from exc
    return upsilon(-Y.T, K_std, G_tgt)


def congruence_to_standard(Q: Quiver) -> CongruenceCertificate:
    """Relabelling ``rho`` and matrix ``B`` taking ``Q`` to its standard quiver."""
    validate(Q)
    xi, _ = xi_and_cycle_type(Q)
    pi, d = standard_for(Q)
    Q_std = standard_quiver(pi, d)
    xi_std, _ = xi_and_cycle_type(Q_std)
    rho = conjugating_permutation(xi, xi_std)
    Q_rel = transform(Q, rho)
    P = build_pseudo_morphism(Q_rel, Q_std)
    K, split = adapted_kernel(Q_rel)
    K_std, split_std = standard_kernel(pi, d)
    if split != split_std:
        raise InternalError("radical splittings of source and target differ")
    P1 = PseudoMorphism(P.B + correct_invertibility(P, K, K_std, split), Q_rel, Q_std)
    B = P1.B @ correct_to_strong(P1, K_std)
    cert = CongruenceCertificate(B, rho, from_quiver(Q), from_quiver(Q_std), pi, d)
    if not cert.verify() or incidence(Q_rel) @ B != incidence(Q_std):
        raise InternalError("constructed matrix is not a strong congruence")
    return cert


def congruence_forms(q: UnitForm) -> CongruenceCertificate:
    """Strong congruence from ``q`` to its standard representative."""
    cert = congruence_to_standard(realize_as_quiver(q))
    out = CongruenceCertificate(
        cert.B, Permutation.identity(cert.rho.m), q, cert.target_form, cert.target_partition, cert.degeneracy
    )
    if not out.verify():
        raise InternalError("certificate does not transfer to the form")
    return out


def congruence_between(q: UnitForm, q2: UnitForm) -> IntMatrix:
    """``B`` with ``B^T Ghat_q B = Ghat_q2``, through the common standard form."""
    if q.n != q2.n:
        raise NotWeaklyCongruent(f"forms have {q.n} and {q2.n} variables")
    r1, r2 = psd_rank(q.gram)[1], psd_rank(q2.gram)[1]
    if r1 != r2:
        raise NotWeaklyCongruent(f"forms have coranks {q.n - r1} and {q2.n - r2}")
    if coxeter(q)[1] != coxeter(q2)[1]:
        raise DifferentCoxeterPolynomial("Coxeter polynomials differ")
    c1, c2 = congruence_forms(q), congruence_forms(q2)
    if c1.target_form != c2.target_form:
        raise InternalError("equal Coxeter polynomials but different standard forms")
    B = c1.B @ inverse(c2.B)
    if B.T @ q.upper @ B != q2.upper:
        raise InternalError("composed matrix is not a strong congruence")
    return B


def triangular_flip(q: UnitForm) -> IntMatrix:
    """``C`` with ``C^T Ghat C = Ghat^T``."""
    q_dual = UnitForm(inverse(q.upper))
    C = congruence_between(q, q_dual) @ q.upper
    if C.T @ q.upper @ C != q.upper.T:
        raise InternalError("flip matrix does not transpose the form")
    return C


def verify(B: IntMatrix, q: UnitForm, q2: UnitForm) -> dict[str, Any]:
    """Report which congruence identities ``B`` satisfies from ``q`` to ``q2``.

    ``corank_shortcut`` applies when ``q2`` has corank at most 1: then
    ``G_q2 = B^T G_q B`` together with ``G_q2 B* B = G_q2`` already forces a
    strong congruence.
    """
    if B.shape != (q.n, q2.n):
        raise ShapeMismatch(f"matrix of shape {B.shape} between forms in {q.n} and {q2.n} variables")
    weak = B.T @ q.gram @ B == q2.gram
    strong = B.T @ q.upper @ B == q2.upper
    unimodular = B.is_square() and abs(det(B)) == 1
    corank2 = q2.n - psd_rank(q2.gram)[1] if psd_rank(q2.gram)[0] else None
    shortcut = None
    if corank2 is not None and corank2 <= 1 and B.is_square():
        try:
            Bs = star(B, q.upper, q2.upper)
            shortcut = bool(weak and q2.gram @ Bs @ B == q2.gram)
        except NonIntegerStar:
            shortcut = False
    return {
        "weak": weak,
        "strong": strong,
        "unimodular": unimodular,
        "corank_shortcut": shortcut,
    }
