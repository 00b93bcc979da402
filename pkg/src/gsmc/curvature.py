"""Curvature tensors of a connection expressed in frame components.

For a frame {E_i} with bracket coefficients [E_i, E_j] = sum_m c[i][j][m] E_m
and connection coefficients gamma[i][j][k], the curvature operator
R(E_i, E_j) E_k = sum_l R[i][j][k][l] E_l has components

    R[i][j][k][l] = E_i(gamma[j][k][l]) - E_j(gamma[i][k][l])
                    + sum_m (gamma[j][k][m] gamma[i][m][l]
                             - gamma[i][k][m] gamma[j][m][l])
                    - sum_m c[i][j][m] gamma[m][k][l]

which is R(X,Y)Z = nabla_X nabla_Y Z - nabla_Y nabla_X Z - nabla_{[X,Y]} Z
specialised to frame fields.  The bracket term matters whenever the frame does
not commute, which is the generic case here.

Traces follow the metric convention ricci(Y, Z) = trace of the map
X -> R(X, Y) Z, computed with the inverse metric so non-orthonormal frames
stay correct.  The first-slot contraction keeps the sign convention in which
unit spheres get positive scalar curvature.
"""

from __future__ import annotations

from dataclasses import dataclass

from gsmc.connection import ConnectionTable
from gsmc.manifold import FrameVec, ManifoldSpec
from gsmc.symexpr import Expr


@dataclass(frozen=True)
class CurvatureTensor:
    """Components R[i][j][k][l] of the curvature operator."""

    components: tuple[tuple[tuple[tuple[Expr, ...], ...], ...], ...]

    @property
    def dimension(self) -> int:
        return len(self.components)

    def vec(self, i: int, j: int, k: int) -> FrameVec:
        """R(E_i, E_j) E_k as a frame vector."""
        return FrameVec(self.components[i][j][k])

    def apply(self, x: FrameVec, y: FrameVec, z: FrameVec) -> FrameVec:
        """R(X, Y) Z by multilinearity over the frame components."""
        n = self.dimension
        table = x[0].table
        comps = [table.zero for _ in range(n)]
        for i in range(n):
            if x[i].is_zero():
                continue
            for j in range(n):
                if y[j].is_zero():
                    continue
                factor = x[i] * y[j]
                for k in range(n):
                    if z[k].is_zero():
                        continue
                    w = factor * z[k]
                    row = self.components[i][j][k]
                    for l in range(n):
                        if not row[l].is_zero():
                            comps[l] = comps[l] + w * row[l]
        return FrameVec(tuple(comps))


@dataclass(frozen=True)
class RicciTensor:
    """ricci[j][k] = trace of X -> R(X, E_j) E_k; not assumed symmetric."""

    components: tuple[tuple[Expr, ...], ...]

    @property
    def dimension(self) -> int:
        return len(self.components)

    def __getitem__(self, jk: tuple[int, int]) -> Expr:
        j, k = jk
        return self.components[j][k]


def riemann(spec: ManifoldSpec, conn: ConnectionTable) -> CurvatureTensor:
    n = spec.dimension
    struct = spec.structure_functions()
    frame = [spec.frame_vector(i) for i in range(n)]
    gamma = conn.gamma
    out = []
    for i in range(n):
        plane_i = []
        for j in range(n):
            plane_j = []
            c_ij = struct[(i, j)]
            for k in range(n):
                comps = []
                for l in range(n):
                    acc = spec.directional_derivative(frame[i], gamma[j][k][l])
                    acc = acc - spec.directional_derivative(frame[j], gamma[i][k][l])
                    for m in range(n):
                        acc = acc + gamma[j][k][m] * gamma[i][m][l]
                        acc = acc - gamma[i][k][m] * gamma[j][m][l]
                        if not c_ij[m].is_zero():
                            acc = acc - c_ij[m] * gamma[m][k][l]
                    comps.append(acc)
                plane_j.append(tuple(comps))
            plane_i.append(tuple(plane_j))
        out.append(tuple(plane_i))
    return CurvatureTensor(tuple(out))


def ricci(spec: ManifoldSpec, curv: CurvatureTensor) -> RicciTensor:
    """ricci[j][k] = g^{il} g(R(E_i, E_j) E_k, E_l), the first-slot trace."""
    n = spec.dimension
    g = spec.metric
    ginv = spec.metric_inverse()
    rows = []
    for j in range(n):
        comps = []
        for k in range(n):
            acc = spec.table.zero
            for i in range(n):
                for l in range(n):
                    if ginv[i][l].is_zero():
                        continue
                    inner = spec.table.zero
                    for m in range(n):
                        term = curv.components[i][j][k][m]
                        if not term.is_zero() and not g[m][l].is_zero():
                            inner = inner + term * g[m][l]
                    acc = acc + ginv[i][l] * inner
            comps.append(acc)
        rows.append(tuple(comps))
    return RicciTensor(tuple(rows))


def scalar_curvature(spec: ManifoldSpec, ric: RicciTensor) -> Expr:
    n = spec.dimension
    ginv = spec.metric_inverse()
    acc = spec.table.zero
    for j in range(n):
        for k in range(n):
            if not ginv[j][k].is_zero():
                acc = acc + ginv[j][k] * ric.components[j][k]
    return acc


def first_bianchi_defect(
    spec: ManifoldSpec, curv: CurvatureTensor
) -> dict[tuple[int, int, int], FrameVec]:
    """Cyclic sum R(X,Y)Z + R(Y,Z)X + R(Z,X)Y on frame triples.

    Zero exactly for torsion-free connections; a connection with torsion
    leaves a computable remainder.
    """
    n = spec.dimension
    out: dict[tuple[int, int, int], FrameVec] = {}
    for i in range(n):
        for j in range(n):
            for k in range(n):
                comps = tuple(
                    curv.components[i][j][k][l]
                    + curv.components[j][k][i][l]
                    + curv.components[k][i][j][l]
                    for l in range(n)
                )
                out[(i, j, k)] = FrameVec(comps)
    return out


def curvature_acts_on_ricci(
    spec: ManifoldSpec, curv: CurvatureTensor, ric: RicciTensor
) -> dict[tuple[int, int, int, int], Expr]:
    """(R(X,Y) . ric)(Z, W) = -ric(R(X,Y)Z, W) - ric(Z, R(X,Y)W), negated.

    Returns the tensor ric(R(E_i,E_j)E_k, E_l) + ric(E_k, R(E_i,E_j)E_l); the
    connection is Ricci semi-symmetric exactly when every entry vanishes.
    """
    n = spec.dimension
    out: dict[tuple[int, int, int, int], Expr] = {}
    for i in range(n):
        for j in range(n):
            for k in range(n):
                for l in range(n):
                    acc = spec.table.zero
                    for m in range(n):
                        acc = acc + curv.components[i][j][k][m] * ric.components[m][l]
                        acc = acc + curv.components[i][j][l][m] * ric.components[k][m]
                    out[(i, j, k, l)] = acc
    return out


def lower_first_index(
    spec: ManifoldSpec, curv: CurvatureTensor
) -> dict[tuple[int, int, int, int], Expr]:
    """Fully covariant curvature R(E_i,E_j,E_k,E_l) = g(R(E_i,E_j)E_k, E_l)."""
    n = spec.dimension
    g = spec.metric
    out: dict[tuple[int, int, int, int], Expr] = {}
    for i in range(n):
        for j in range(n):
            for k in range(n):
                for l in range(n):
                    acc = spec.table.zero
                    for m in range(n):
                        term = curv.components[i][j][k][m]
                        if not term.is_zero() and not g[m][l].is_zero():
                            acc = acc + term * g[m][l]
                    out[(i, j, k, l)] = acc
    return out
