"""Affine connections on framed manifolds.

A :class:`ConnectionTable` stores the frame coefficients gamma[i][j][k] of
nabla_{E_i} E_j = sum_k gamma[i][j][k] E_k.  The Levi-Civita table comes from
the Koszul formula

    2 g(nabla_X Y, Z) = X g(Y,Z) + Y g(X,Z) - Z g(X,Y)
                        + g([X,Y], Z) - g([X,Z], Y) - g([Y,Z], X)

evaluated on frame fields, which stays valid for non-constant metric
components and non-orthonormal frames because the directional-derivative terms
are kept.  On top of it, `build_gsmc` adds the torsion-type deformation of
strength (alpha, beta):

    nabla'_X Y = nabla_X Y + alpha * (eta(Y) X - g(X,Y) xi) - beta * eta(X) phi(Y)

whose torsion is alpha * (eta(Y) X - eta(X) Y) + beta * (eta(Y) phi(X) -
eta(X) phi(Y)) and which still annihilates the metric.  Setting (alpha, beta)
to (0, 0) recovers Levi-Civita; (1, 0) and (0, 1) give the two classical
single-term deformations.

Covariant derivatives of vector fields, one-forms and (1,1)-tensors follow the
Leibniz rule with derivative terms on the component functions.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import TYPE_CHECKING, Union

from gsmc.manifold import CoVec, FrameVec, ManifoldSpec, vec_add, vec_scale
from gsmc.symexpr import Expr

if TYPE_CHECKING:  # avoid a runtime import cycle; contact imports this module
    from gsmc.contact import ContactStructure

Matrix11 = tuple  # tuple of row tuples: M[k][j] maps E_j to sum_k M[k][j] E_k
TensorArg = Union[FrameVec, CoVec, Matrix11]


@dataclass(frozen=True)
class ConnectionTable:
    """Frame coefficients of an affine connection, gamma[i][j][k]."""

    label: str
    gamma: tuple[tuple[tuple[Expr, ...], ...], ...]

    @property
    def dimension(self) -> int:
        return len(self.gamma)

    def entry(self, i: int, j: int) -> FrameVec:
        """nabla_{E_i} E_j as a frame vector."""
        return FrameVec(self.gamma[i][j])


@dataclass(frozen=True)
class TorsionTensor:
    """Torsion components t[i][j][k]: T(E_i, E_j) = sum_k t[i][j][k] E_k."""

    components: tuple[tuple[tuple[Expr, ...], ...], ...]

    def vec(self, i: int, j: int) -> FrameVec:
        return FrameVec(self.components[i][j])


def levi_civita(spec: ManifoldSpec) -> ConnectionTable:
    """Unique torsion-free metric connection, via the Koszul formula."""
    n = spec.dimension
    g = spec.metric
    ginv = spec.metric_inverse()
    struct = spec.structure_functions()
    frame = [spec.frame_vector(i) for i in range(n)]

    def g_vec(v: FrameVec, k: int) -> Expr:
        acc = spec.table.zero
        for m in range(n):
            if not v[m].is_zero():
                acc = acc + v[m] * g[m][k]
        return acc

    gamma = []
    for i in range(n):
        rows = []
        for j in range(n):
            k_values = []
            for k in range(n):
                acc = spec.directional_derivative(frame[i], g[j][k])
                acc = acc + spec.directional_derivative(frame[j], g[i][k])
                acc = acc - spec.directional_derivative(frame[k], g[i][j])
                acc = acc + g_vec(struct[(i, j)], k)
                acc = acc - g_vec(struct[(i, k)], j)
                acc = acc - g_vec(struct[(j, k)], i)
                k_values.append(acc / 2)
            comps = []
            for l in range(n):
                acc = spec.table.zero
                for k in range(n):
                    acc = acc + k_values[k] * ginv[k][l]
                comps.append(acc)
            rows.append(tuple(comps))
        gamma.append(tuple(rows))
    return ConnectionTable("levi-civita", tuple(gamma))


def build_gsmc(
    spec: ManifoldSpec,
    structure: "ContactStructure",
    alpha: Expr,
    beta: Expr,
    lc: ConnectionTable | None = None,
) -> ConnectionTable:
    """Torsion-type (alpha, beta) deformation of the Levi-Civita connection."""
    if lc is None:
        lc = levi_civita(spec)
    n = spec.dimension
    g = spec.metric
    eta = structure.eta
    xi = structure.xi
    phi = structure.phi
    gamma = []
    for i in range(n):
        rows = []
        for j in range(n):
            comps = []
            for k in range(n):
                acc = lc.gamma[i][j][k]
                if i == k:
                    acc = acc + alpha * eta[j]
                acc = acc - alpha * g[i][j] * xi[k]
                acc = acc - beta * eta[i] * phi[k][j]
                comps.append(acc)
            rows.append(tuple(comps))
        gamma.append(tuple(rows))
    return ConnectionTable("gsmc", tuple(gamma))


def torsion(spec: ManifoldSpec, conn: ConnectionTable) -> TorsionTensor:
    """T(X,Y) = nabla_X Y - nabla_Y X - [X,Y] on frame fields."""
    n = spec.dimension
    struct = spec.structure_functions()
    out = []
    for i in range(n):
        rows = []
        for j in range(n):
            c = struct[(i, j)]
            rows.append(
                tuple(
                    conn.gamma[i][j][k] - conn.gamma[j][i][k] - c[k] for k in range(n)
                )
            )
        out.append(tuple(rows))
    return TorsionTensor(tuple(out))


def metric_compat_defect(
    spec: ManifoldSpec, conn: ConnectionTable
) -> dict[tuple[int, int, int], Expr]:
    """(nabla_{E_i} g)(E_j, E_k) for all index triples."""
    n = spec.dimension
    g = spec.metric
    frame = [spec.frame_vector(i) for i in range(n)]
    out: dict[tuple[int, int, int], Expr] = {}
    for i in range(n):
        for j in range(n):
            for k in range(n):
                acc = spec.directional_derivative(frame[i], g[j][k])
                for m in range(n):
                    acc = acc - conn.gamma[i][j][m] * g[m][k]
                    acc = acc - conn.gamma[i][k][m] * g[j][m]
                out[(i, j, k)] = acc
    return out


def nabla_frame_vec(
    spec: ManifoldSpec, conn: ConnectionTable, i: int, y: FrameVec
) -> FrameVec:
    """nabla_{E_i} Y with the Leibniz term on the components of Y."""
    n = spec.dimension
    ei = spec.frame_vector(i)
    comps = []
    for k in range(n):
        acc = spec.directional_derivative(ei, y[k])
        for j in range(n):
            if not y[j].is_zero():
                acc = acc + y[j] * conn.gamma[i][j][k]
        comps.append(acc)
    return FrameVec(tuple(comps))


def covariant_derivative(
    spec: ManifoldSpec, conn: ConnectionTable, x: FrameVec, tensor: TensorArg
) -> TensorArg:
    """nabla_X applied to a vector field, a one-form or a (1,1)-tensor.

    The result has the same valence as the argument.  Matrices are given as
    row tuples M[k][j] (output index first), matching the phi convention.
    """
    n = spec.dimension
    if isinstance(tensor, FrameVec):
        out = spec.zero_vec()
        for i in range(n):
            if not x[i].is_zero():
                out = vec_add(out, vec_scale(x[i], nabla_frame_vec(spec, conn, i, tensor)))
        return out
    if isinstance(tensor, CoVec):
        comps = []
        for j in range(n):
            acc = spec.directional_derivative(x, tensor[j])
            for i in range(n):
                if x[i].is_zero():
                    continue
                for m in range(n):
                    acc = acc - x[i] * conn.gamma[i][j][m] * tensor[m]
            comps.append(acc)
        return CoVec(tuple(comps))
    if isinstance(tensor, tuple):
        rows = []
        for k in range(n):
            row = []
            for j in range(n):
                acc = spec.directional_derivative(x, tensor[k][j])
                for i in range(n):
                    if x[i].is_zero():
                        continue
                    inner = spec.table.zero
                    for m in range(n):
                        inner = inner + conn.gamma[i][m][k] * tensor[m][j]
                        inner = inner - conn.gamma[i][j][m] * tensor[k][m]
                    acc = acc + x[i] * inner
                row.append(acc)
            rows.append(tuple(row))
        return tuple(rows)
    raise TypeError(f"cannot differentiate a {type(tensor).__name__}")


def perturb(conn: ConnectionTable, slot: tuple[int, int, int]) -> ConnectionTable:
    """Copy of the table with +1 added at gamma[slot]; a negative control."""
    i0, j0, k0 = slot
    table = conn.gamma[0][0][0].table
    gamma = tuple(
        tuple(
            tuple(
                c + table.one if (i, j, k) == (i0, j0, k0) else c
                for k, c in enumerate(row)
            )
            for j, row in enumerate(plane)
        )
        for i, plane in enumerate(conn.gamma)
    )
    return ConnectionTable(conn.label + "+perturbation", gamma)
