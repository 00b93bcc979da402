"""Almost-contact metric structures and the defining curvature identities.

The structure is a triple (phi, xi, eta) living on a framed metric chart:
phi is a (1,1)-tensor given by its frame matrix (phi[k][j] is the k-th
component of phi applied to the j-th frame field), xi a distinguished vector
field and eta its dual one-form.  When the input omits eta it is defined as
g(., xi); when the input supplies eta explicitly, agreement with g(., xi) is
*checked*, not assumed, so a bad dual surfaces as a failing axiom instead of
being silently repaired.

`check_almost_contact` tests the six defining axioms.  `check_kenmotsu`
tests the derivative laws

    (nabla_X phi)Y = g(phi X, Y) xi - eta(Y) phi X
    nabla_X xi     = X - eta(X) xi
    (nabla_X eta)Y = g(phi X, phi Y)

together with the six curvature and Ricci identities they force, all with
respect to the Levi-Civita table passed in.  Everything returns verdict
records with symbolic residuals; nothing raises on mathematical failure.
"""

from __future__ import annotations

from dataclasses import dataclass

from gsmc.connection import ConnectionTable, covariant_derivative, nabla_frame_vec
from gsmc.curvature import RicciTensor, ricci, riemann
from gsmc.linalg import solve_rectangular
from gsmc.manifold import (
    CoVec,
    FrameVec,
    ManifoldSpec,
    SpecError,
    _parse_matrix,
)
from gsmc.report import VerificationReport, residual_record, vanishing_conditions
from gsmc.symexpr import Expr


@dataclass(frozen=True)
class ContactStructure:
    """Frame data of an almost-contact structure; axioms are checked, not assumed."""

    phi: tuple[tuple[Expr, ...], ...]
    xi: FrameVec
    eta: CoVec
    eta_given: bool

    @property
    def dimension(self) -> int:
        return len(self.phi)

    def phi_vec(self, x: FrameVec) -> FrameVec:
        n = self.dimension
        comps = []
        for k in range(n):
            acc = self.phi[k][0].table.zero
            for j in range(n):
                if not x[j].is_zero():
                    acc = acc + self.phi[k][j] * x[j]
            comps.append(acc)
        return FrameVec(tuple(comps))

    def phi_column(self, j: int) -> FrameVec:
        """phi applied to the j-th frame field."""
        return FrameVec(tuple(row[j] for row in self.phi))

    def eta_of(self, x: FrameVec) -> Expr:
        acc = self.eta[0].table.zero
        for j in range(self.dimension):
            if not x[j].is_zero():
                acc = acc + self.eta[j] * x[j]
        return acc


def load_contact(spec: ManifoldSpec) -> ContactStructure:
    """Parse the contact block of a spec; errors are SpecError."""
    block = spec.contact_block
    if block is None:
        raise SpecError(f"spec '{spec.name}' has no contact block")
    n = spec.dimension
    table = spec.table
    phi = _parse_matrix(table, block["phi"], n, n, "contact.phi")
    xi_rows = _parse_matrix(table, [block["xi"]], 1, n, "contact.xi")
    xi = FrameVec(xi_rows[0])
    eta_doc = block.get("eta")
    if eta_doc is not None:
        eta = CoVec(_parse_matrix(table, [eta_doc], 1, n, "contact.eta")[0])
        eta_given = True
    else:
        g = spec.metric
        comps = []
        for j in range(n):
            acc = table.zero
            for k in range(n):
                if not xi[k].is_zero():
                    acc = acc + g[j][k] * xi[k]
            comps.append(acc)
        eta = CoVec(tuple(comps))
        eta_given = False
    if spec.frame is None:
        for label, values in (("phi", [c for row in phi for c in row]), ("xi", list(xi)), ("eta", list(eta))):
            for c in values:
                if any(table.is_coordinate(s) for s in c.symbols()):
                    raise SpecError(
                        "structure-functions-only specs must be coordinate-free "
                        f"(contact.{label} is not)"
                    )
    return ContactStructure(phi=phi, xi=xi, eta=eta, eta_given=eta_given)


def check_almost_contact(
    spec: ManifoldSpec, structure: ContactStructure
) -> VerificationReport:
    """One verdict per defining axiom, each with a worst-component residual."""
    n = spec.dimension
    g = spec.metric
    phi = structure.phi
    xi = structure.xi
    eta = structure.eta
    zero = spec.table.zero
    one = spec.table.one
    report = VerificationReport(subject=f"{spec.name}: almost-contact axioms")

    phixi = structure.phi_vec(xi)
    report.add(
        residual_record(
            "structure.almost-contact.phi-xi",
            "phi(xi) = 0",
            {(k,): phixi[k] for k in range(n)},
        )
    )

    report.add(
        residual_record(
            "structure.almost-contact.eta-phi",
            "eta(phi(X)) = 0",
            {
                (j,): structure.eta_of(structure.phi_column(j))
                for j in range(n)
            },
        )
    )

    report.add(
        residual_record(
            "structure.almost-contact.eta-xi",
            "eta(xi) = 1",
            {(0,): structure.eta_of(xi) - one},
        )
    )

    sq: dict[tuple[int, ...], Expr] = {}
    for k in range(n):
        for j in range(n):
            acc = zero
            for m in range(n):
                acc = acc + phi[k][m] * phi[m][j]
            if k == j:
                acc = acc + one
            sq[(k, j)] = acc - xi[k] * eta[j]
    report.add(
        residual_record(
            "structure.almost-contact.phi-squared",
            "phi(phi(X)) = -X + eta(X) xi",
            sq,
        )
    )

    compat: dict[tuple[int, ...], Expr] = {}
    for i in range(n):
        for j in range(n):
            compat[(i, j)] = (
                spec.g_pair(structure.phi_column(i), structure.phi_column(j))
                - g[i][j]
                + eta[i] * eta[j]
            )
    report.add(
        residual_record(
            "structure.almost-contact.metric-phi-compat",
            "g(phi X, phi Y) = g(X, Y) - eta(X) eta(Y)",
            compat,
        )
    )

    dual: dict[tuple[int, ...], Expr] = {}
    for j in range(n):
        acc = zero
        for k in range(n):
            if not xi[k].is_zero():
                acc = acc + g[j][k] * xi[k]
        dual[(j,)] = acc - eta[j]
    report.add(
        residual_record(
            "structure.almost-contact.metric-xi-dual",
            "g(X, xi) = eta(X)",
            dual,
            notes="" if structure.eta_given else "eta was defaulted to g(., xi)",
        )
    )

    return report.finalize()


def check_kenmotsu(
    spec: ManifoldSpec, structure: ContactStructure, lc: ConnectionTable
) -> VerificationReport:
    """Derivative laws plus the curvature identities they force.

    `lc` must be the Levi-Civita table; the identities are false for the
    deformed connections, whose counterparts live in the analysis module.
    """
    n = spec.dimension
    g = spec.metric
    phi = structure.phi
    xi = structure.xi
    eta = structure.eta
    zero = spec.table.zero
    nm1 = spec.table.constant(n - 1)
    report = VerificationReport(subject=f"{spec.name}: kenmotsu conditions")

    basis = [spec.frame_vector(i) for i in range(n)]

    dphi: dict[tuple[int, ...], Expr] = {}
    for i in range(n):
        mat = covariant_derivative(spec, lc, basis[i], phi)
        for j in range(n):
            gphixy = spec.g_pair(structure.phi_column(i), basis[j])
            for k in range(n):
                expect = gphixy * xi[k] - eta[j] * phi[k][i]
                dphi[(i, j, k)] = mat[k][j] - expect
    report.add(
        residual_record(
            "structure.kenmotsu.phi-derivative",
            "(nabla_X phi)Y = g(phi X, Y) xi - eta(Y) phi X",
            dphi,
        )
    )

    dxi: dict[tuple[int, ...], Expr] = {}
    for i in range(n):
        v = nabla_frame_vec(spec, lc, i, xi)
        for k in range(n):
            expect = (spec.table.one if i == k else zero) - eta[i] * xi[k]
            dxi[(i, k)] = v[k] - expect
    report.add(
        residual_record(
            "structure.kenmotsu.xi-derivative",
            "nabla_X xi = X - eta(X) xi",
            dxi,
        )
    )

    deta: dict[tuple[int, ...], Expr] = {}
    for i in range(n):
        form = covariant_derivative(spec, lc, basis[i], eta)
        for j in range(n):
            expect = spec.g_pair(structure.phi_column(i), structure.phi_column(j))
            deta[(i, j)] = form[j] - expect
    report.add(
        residual_record(
            "structure.kenmotsu.eta-derivative",
            "(nabla_X eta)Y = g(phi X, phi Y)",
            deta,
        )
    )

    curv = riemann(spec, lc)
    ric = ricci(spec, curv)

    eta_comp: dict[tuple[int, ...], Expr] = {}
    for i in range(n):
        for j in range(n):
            for k in range(n):
                acc = zero
                for l in range(n):
                    acc = acc + curv.components[i][j][k][l] * eta[l]
                eta_comp[(i, j, k)] = acc - (g[i][k] * eta[j] - g[j][k] * eta[i])
    report.add(
        residual_record(
            "structure.kenmotsu.curvature-xi-component",
            "eta(R(X,Y)Z) = g(X,Z) eta(Y) - g(Y,Z) eta(X)",
            eta_comp,
        )
    )

    xi_first: dict[tuple[int, ...], Expr] = {}
    for j in range(n):
        for k in range(n):
            v = curv.apply(xi, basis[j], basis[k])
            for l in range(n):
                expect = eta[k] * (spec.table.one if j == l else zero) - g[j][k] * xi[l]
                xi_first[(j, k, l)] = v[l] - expect
    report.add(
        residual_record(
            "structure.kenmotsu.curvature-xi-first",
            "R(xi, X)Y = eta(Y) X - g(X,Y) xi",
            xi_first,
        )
    )

    on_xi: dict[tuple[int, ...], Expr] = {}
    for i in range(n):
        for j in range(n):
            v = curv.apply(basis[i], basis[j], xi)
            for l in range(n):
                expect = eta[i] * (spec.table.one if j == l else zero) - eta[j] * (
                    spec.table.one if i == l else zero
                )
                on_xi[(i, j, l)] = v[l] - expect
    report.add(
        residual_record(
            "structure.kenmotsu.curvature-on-xi",
            "R(X,Y) xi = eta(X) Y - eta(Y) X",
            on_xi,
        )
    )

    xi_both: dict[tuple[int, ...], Expr] = {}
    for j in range(n):
        v = curv.apply(xi, basis[j], xi)
        for l in range(n):
            expect = (spec.table.one if j == l else zero) - eta[j] * xi[l]
            xi_both[(j, l)] = v[l] - expect
    report.add(
        residual_record(
            "structure.kenmotsu.curvature-xi-both",
            "R(xi, X) xi = X - eta(X) xi",
            xi_both,
        )
    )

    ric_xi: dict[tuple[int, ...], Expr] = {}
    for j in range(n):
        acc = zero
        for k in range(n):
            if not xi[k].is_zero():
                acc = acc + ric.components[j][k] * xi[k]
        ric_xi[(j,)] = acc + nm1 * eta[j]
    report.add(
        residual_record(
            "structure.kenmotsu.ricci-on-xi",
            "ricci(X, xi) = -(n-1) eta(X)",
            ric_xi,
        )
    )

    ric_phi: dict[tuple[int, ...], Expr] = {}
    for i in range(n):
        for j in range(n):
            acc = zero
            for a in range(n):
                for b in range(n):
                    term = phi[a][i] * phi[b][j]
                    if not term.is_zero():
                        acc = acc + term * ric.components[a][b]
            ric_phi[(i, j)] = acc - ric.components[i][j] - nm1 * eta[i] * eta[j]
    report.add(
        residual_record(
            "structure.kenmotsu.ricci-phi-shift",
            "ricci(phi X, phi Y) = ricci(X, Y) + (n-1) eta(X) eta(Y)",
            ric_phi,
        )
    )

    return report.finalize()


@dataclass(frozen=True)
class EtaEinsteinFit:
    """Exact coefficients of ricci = a g + b eta (x) eta + c g(phi ., .)."""

    a: Expr
    b: Expr
    c: Expr
    classification: str
    b_vanishes: str
    c_vanishes: str


def eta_einstein_fit(
    spec: ManifoldSpec, structure: ContactStructure, ric: RicciTensor
) -> EtaEinsteinFit | None:
    """Solve for (a, b, c) exactly and verify on every component.

    The n^2 component equations are reduced as one rectangular linear system
    over the function field, which subsumes trying component triples one at a
    time: any consistent triple yields the same unique answer, and rank
    deficiency just pins the free coefficients to zero.  Returns None when no
    exact fit exists.
    """
    n = spec.dimension
    g = spec.metric
    eta = structure.eta
    rows: list[list[Expr]] = []
    rhs: list[Expr] = []
    for j in range(n):
        phicol_g = [spec.g_pair(structure.phi_column(j), spec.frame_vector(k)) for k in range(n)]
        for k in range(n):
            rows.append([g[j][k], eta[j] * eta[k], phicol_g[k]])
            rhs.append(ric.components[j][k])
    sol = solve_rectangular(rows, rhs)
    if sol is None:
        return None
    a, b, c = sol
    for row, s in zip(rows, rhs):
        if not (a * row[0] + b * row[1] + c * row[2] - s).is_zero():
            return None
    if not c.is_zero():
        kind = "generalized-eta-einstein"
    elif not b.is_zero():
        kind = "eta-einstein"
    elif not a.is_zero():
        kind = "einstein"
    else:
        kind = "ricci-flat"
    return EtaEinsteinFit(
        a=a,
        b=b,
        c=c,
        classification=kind,
        b_vanishes=vanishing_conditions(b),
        c_vanishes=vanishing_conditions(c),
    )


def phi_bilinear(spec: ManifoldSpec, structure: ContactStructure) -> dict[tuple[int, int], Expr]:
    """The fundamental two-form values Phi(E_i, E_j) = g(E_i, phi E_j)."""
    n = spec.dimension
    out: dict[tuple[int, int], Expr] = {}
    for i in range(n):
        for j in range(n):
            out[(i, j)] = spec.g_pair(spec.frame_vector(i), structure.phi_column(j))
    return out
