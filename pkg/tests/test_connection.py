"""Levi-Civita table, the deformed connection family, torsion, reductions."""

from __future__ import annotations

import pytest

from gsmc.connection import (
    ConnectionTable,
    build_gsmc,
    covariant_derivative,
    metric_compat_defect,
    nabla_frame_vec,
    perturb,
    torsion,
)
from gsmc.manifold import CoVec, ManifoldSpec, vec_add, vec_scale, vec_sub


def _entry_strs(spec: ManifoldSpec, conn: ConnectionTable) -> dict[tuple[int, int], list[str]]:
    n = spec.dimension
    return {
        (i, j): [str(c) for c in conn.entry(i, j)]
        for i in range(n)
        for j in range(n)
    }


# ---------------------------------------------------------------------------
# the base connection


def test_levi_civita_table(spec: ManifoldSpec, lc: ConnectionTable) -> None:
    e = _entry_strs(spec, lc)
    assert e[(0, 0)] == ["0", "0", "-1"]
    assert e[(0, 2)] == ["1", "0", "0"]
    assert e[(1, 1)] == ["0", "0", "-1"]
    assert e[(1, 2)] == ["0", "1", "0"]
    zero_slots = [(0, 1), (1, 0), (2, 0), (2, 1), (2, 2)]
    for slot in zero_slots:
        assert e[slot] == ["0", "0", "0"], slot


def test_levi_civita_is_metric_and_torsion_free(
    spec: ManifoldSpec, lc: ConnectionTable
) -> None:
    assert all(v.is_zero() for v in metric_compat_defect(spec, lc).values())
    t = torsion(spec, lc)
    n = spec.dimension
    for i in range(n):
        for j in range(n):
            assert t.vec(i, j).is_zero()


def test_unit_field_derivative_law(
    spec: ManifoldSpec, structure, lc: ConnectionTable
) -> None:
    # nabla_X xi = X - eta(X) xi, including the slot where a sign is easy to
    # drop: nabla_{E2} xi must be E2 itself, not zero
    n = spec.dimension
    for i in range(n):
        ei = spec.frame_vector(i)
        got = covariant_derivative(spec, lc, ei, structure.xi)
        want = vec_sub(ei, vec_scale(structure.eta_of(ei), structure.xi))
        assert vec_sub(got, want).is_zero(), i
    assert [str(c) for c in lc.entry(1, 2)] == ["0", "1", "0"]


# ---------------------------------------------------------------------------
# the deformed family


def test_deformed_table_symbolic(spec: ManifoldSpec, gsmc_sym: ConnectionTable) -> None:
    e = {
        slot: [c.factored_str() for c in gsmc_sym.entry(*slot)]
        for slot in ((0, 0), (0, 2), (1, 1), (1, 2), (2, 0), (2, 1), (2, 2))
    }
    assert e[(0, 0)] == ["0", "0", "-(1+alpha)"]
    assert e[(0, 2)] == ["(1+alpha)", "0", "0"]
    assert e[(1, 1)] == ["0", "0", "-(1+alpha)"]
    assert e[(1, 2)] == ["0", "(1+alpha)", "0"]
    assert e[(2, 0)] == ["0", "-beta", "0"]
    assert e[(2, 1)] == ["beta", "0", "0"]
    assert e[(2, 2)] == ["0", "0", "0"]


def test_deformed_unit_field_law(
    spec: ManifoldSpec, structure, gsmc_sym: ConnectionTable, sym
) -> None:
    # nabla_X xi picks up the factor (1 + alpha): the deformation scales the
    # radial part of the law but leaves its shape
    alpha, _ = sym
    n = spec.dimension
    for i in range(n):
        ei = spec.frame_vector(i)
        got = covariant_derivative(spec, gsmc_sym, ei, structure.xi)
        base = vec_sub(ei, vec_scale(structure.eta_of(ei), structure.xi))
        want = vec_scale(alpha + 1, base)
        assert vec_sub(got, want).is_zero(), i


def test_deformed_connection_is_metric_compatible(
    spec: ManifoldSpec, gsmc_sym: ConnectionTable
) -> None:
    assert all(v.is_zero() for v in metric_compat_defect(spec, gsmc_sym).values())


def test_perturbation_breaks_metric_compatibility(
    spec: ManifoldSpec, gsmc_sym: ConnectionTable
) -> None:
    broken = perturb(gsmc_sym, (0, 1, 2))
    defect = metric_compat_defect(spec, broken)
    assert any(not v.is_zero() for v in defect.values())
    assert broken.label.endswith("+perturbation")


# ---------------------------------------------------------------------------
# torsion


def test_torsion_table(spec: ManifoldSpec, gsmc_sym: ConnectionTable) -> None:
    t = torsion(spec, gsmc_sym)
    strs = {
        (i, j): [c.factored_str() for c in t.vec(i, j)]
        for i in range(3)
        for j in range(3)
    }
    assert strs[(0, 2)] == ["alpha", "beta", "0"]
    assert strs[(1, 2)] == ["-beta", "alpha", "0"]
    assert strs[(0, 1)] == ["0", "0", "0"]
    for i in range(3):
        for j in range(3):
            mirror = [str(-c) for c in t.vec(j, i)]
            assert [str(c) for c in t.vec(i, j)] == mirror


def test_torsion_has_the_declared_type_form(
    spec: ManifoldSpec, structure, gsmc_sym: ConnectionTable, sym
) -> None:
    # T(X,Y) = alpha {eta(Y) X - eta(X) Y} + beta {eta(Y) phi X - eta(X) phi Y}
    alpha, beta = sym
    t = torsion(spec, gsmc_sym)
    n = spec.dimension
    for i in range(n):
        for j in range(n):
            x, y = spec.frame_vector(i), spec.frame_vector(j)
            ex, ey = structure.eta_of(x), structure.eta_of(y)
            want = vec_add(
                vec_sub(vec_scale(alpha * ey, x), vec_scale(alpha * ex, y)),
                vec_sub(
                    vec_scale(beta * ey, structure.phi_vec(x)),
                    vec_scale(beta * ex, structure.phi_vec(y)),
                ),
            )
            assert vec_sub(t.vec(i, j), want).is_zero(), (i, j)


# ---------------------------------------------------------------------------
# reductions of the two-parameter family


def test_zero_deformation_is_levi_civita(
    spec: ManifoldSpec, structure, lc: ConnectionTable
) -> None:
    zero = spec.table.zero
    conn = build_gsmc(spec, structure, zero, zero, lc=lc)
    n = spec.dimension
    for i in range(n):
        for j in range(n):
            assert vec_sub(conn.entry(i, j), lc.entry(i, j)).is_zero()


def test_pure_first_parameter_reduction(
    spec: ManifoldSpec, structure, lc: ConnectionTable
) -> None:
    # (1, 0): nabla + eta(Y) X - g(X, Y) xi
    one, zero = spec.table.one, spec.table.zero
    conn = build_gsmc(spec, structure, one, zero, lc=lc)
    n = spec.dimension
    for i in range(n):
        for j in range(n):
            x, y = spec.frame_vector(i), spec.frame_vector(j)
            want = vec_add(lc.entry(i, j), vec_scale(structure.eta_of(y), x))
            want = vec_sub(want, vec_scale(spec.g_pair(x, y), structure.xi))
            assert vec_sub(conn.entry(i, j), want).is_zero(), (i, j)


def test_pure_second_parameter_reduction(
    spec: ManifoldSpec, structure, lc: ConnectionTable
) -> None:
    # (0, 1): nabla - eta(X) phi Y
    one, zero = spec.table.one, spec.table.zero
    conn = build_gsmc(spec, structure, zero, one, lc=lc)
    n = spec.dimension
    for i in range(n):
        for j in range(n):
            x, y = spec.frame_vector(i), spec.frame_vector(j)
            want = vec_sub(
                lc.entry(i, j),
                vec_scale(structure.eta_of(x), structure.phi_vec(y)),
            )
            assert vec_sub(conn.entry(i, j), want).is_zero(), (i, j)


# ---------------------------------------------------------------------------
# covariant derivative mechanics


def test_covariant_derivative_leibniz_on_scaled_field(
    spec: ManifoldSpec, lc: ConnectionTable
) -> None:
    # nabla_X (f Y) = X(f) Y + f nabla_X Y with a genuinely varying f
    x = spec.table.symbol("x")
    f = x**2 + 1
    ex, ey = spec.frame_vector(0), spec.frame_vector(1)
    got = covariant_derivative(spec, lc, ex, vec_scale(f, ey))
    want = vec_add(
        vec_scale(spec.directional_derivative(ex, f), ey),
        vec_scale(f, nabla_frame_vec(spec, lc, 0, ey)),
    )
    assert vec_sub(got, want).is_zero()


def test_covariant_derivative_of_one_form_pairs_dual(
    spec: ManifoldSpec, structure, lc: ConnectionTable
) -> None:
    # (nabla_X eta)(Y) = X(eta(Y)) - eta(nabla_X Y), checked via components
    n = spec.dimension
    for i in range(n):
        ei = spec.frame_vector(i)
        d_eta = covariant_derivative(spec, lc, ei, CoVec(tuple(structure.eta)))
        for j in range(n):
            direct = -structure.eta_of(nabla_frame_vec(spec, lc, i, spec.frame_vector(j)))
            assert d_eta[j] == direct, (i, j)


def test_covariant_derivative_rejects_unknown_valence(
    spec: ManifoldSpec, lc: ConnectionTable
) -> None:
    with pytest.raises(TypeError):
        covariant_derivative(spec, lc, spec.frame_vector(0), {"not": "a tensor"})
