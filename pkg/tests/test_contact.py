"""Contact structure loading, axiom checks, and the Ricci shape fit."""

from __future__ import annotations

import json
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from gsmc.connection import levi_civita
from gsmc.contact import (
    ContactStructure,
    check_almost_contact,
    check_kenmotsu,
    eta_einstein_fit,
    load_contact,
    phi_bilinear,
)
from gsmc.curvature import RicciTensor
from gsmc.manifold import ManifoldSpec, SpecError, load_spec

from conftest import SPEC_PATH


def test_load_contact_defaults_eta_to_metric_dual(structure: ContactStructure) -> None:
    assert not structure.eta_given
    assert [str(c) for c in structure.eta] == ["0", "0", "1"]
    assert [str(c) for c in structure.xi] == ["0", "0", "1"]


def test_load_contact_requires_block(spec: ManifoldSpec) -> None:
    doc = json.loads(SPEC_PATH.read_text())
    del doc["contact"]
    bare = load_spec(doc)
    with pytest.raises(SpecError, match="contact block"):
        load_contact(bare)


def test_phi_action(spec: ManifoldSpec, structure: ContactStructure) -> None:
    e1, e2, e3 = (spec.frame_vector(i) for i in range(3))
    assert structure.phi_vec(e1).equals(e2)
    assert structure.phi_vec(e2).equals(
        spec.zero_vec().__class__(tuple(-c for c in e1))
    )
    assert structure.phi_vec(e3).is_zero()
    assert structure.phi_column(0).equals(e2)
    assert str(structure.eta_of(e3)) == "1"
    assert structure.eta_of(e1).is_zero()


def test_fundamental_two_form(spec: ManifoldSpec, structure: ContactStructure) -> None:
    phi2 = phi_bilinear(spec, structure)
    n = spec.dimension
    for i in range(n):
        for j in range(n):
            assert phi2[(i, j)] == -phi2[(j, i)]
    assert str(phi2[(1, 0)]) == "1"
    assert str(phi2[(0, 1)]) == "-1"
    assert phi2[(2, 2)].is_zero()


# ---------------------------------------------------------------------------
# axiom checks


def test_almost_contact_passes_on_bundled_spec(
    spec: ManifoldSpec, structure: ContactStructure
) -> None:
    rep = check_almost_contact(spec, structure)
    assert rep.ok
    ids = sorted(r.check_id for r in rep.records)
    assert ids == [
        "structure.almost-contact.eta-phi",
        "structure.almost-contact.eta-xi",
        "structure.almost-contact.metric-phi-compat",
        "structure.almost-contact.metric-xi-dual",
        "structure.almost-contact.phi-squared",
        "structure.almost-contact.phi-xi",
    ]
    dual = next(r for r in rep.records if r.check_id.endswith("metric-xi-dual"))
    assert "defaulted" in dual.notes


def test_almost_contact_fails_for_wrong_eta() -> None:
    # eta dual to the first frame field instead of the Reeb field
    doc = json.loads(SPEC_PATH.read_text())
    doc["contact"]["eta"] = ["1", "0", "0"]
    spec = load_spec(doc)
    structure = load_contact(spec)
    assert structure.eta_given
    rep = check_almost_contact(spec, structure)
    assert not rep.ok
    failed = {r.check_id for r in rep.records if r.status == "fail"}
    assert failed == {
        "structure.almost-contact.eta-phi",
        "structure.almost-contact.eta-xi",
        "structure.almost-contact.metric-phi-compat",
        "structure.almost-contact.metric-xi-dual",
        "structure.almost-contact.phi-squared",
    }


def test_kenmotsu_laws_hold_on_bundled_spec(
    spec: ManifoldSpec, structure: ContactStructure, lc
) -> None:
    rep = check_kenmotsu(spec, structure, lc)
    assert rep.ok
    assert len(rep.records) == 9


def test_kenmotsu_laws_fail_on_flat_space(flat_spec: ManifoldSpec) -> None:
    # the flat control satisfies every pointwise axiom but no derivative law
    structure = load_contact(flat_spec)
    assert check_almost_contact(flat_spec, structure).ok
    rep = check_kenmotsu(flat_spec, structure, levi_civita(flat_spec))
    assert not rep.ok
    assert all(r.status == "fail" for r in rep.records)
    assert len(rep.records) == 9


# ---------------------------------------------------------------------------
# Ricci shape fit


def test_fit_on_the_deformed_ricci(
    spec: ManifoldSpec, structure: ContactStructure, ric_sym
) -> None:
    fit = eta_einstein_fit(spec, structure, ric_sym)
    assert fit is not None
    assert fit.a.factored_str() == "-(1+alpha)*(2+alpha)"
    assert fit.b.factored_str() == "(1+alpha)*alpha"
    assert fit.c.factored_str() == "(1+alpha)*beta"
    assert fit.classification == "generalized-eta-einstein"
    assert fit.b_vanishes == "alpha = 0 or alpha = -1"
    assert fit.c_vanishes == "beta = 0 or alpha = -1"


def test_fit_returns_none_off_span(
    spec: ManifoldSpec, structure: ContactStructure
) -> None:
    # symmetric off-diagonal pair: the phi slot is antisymmetric there, the
    # metric slot is zero, so no (a, b, c) can produce it
    zero = spec.table.zero
    one = spec.table.one
    comps = [[zero] * 3 for _ in range(3)]
    comps[0][1] = one
    comps[1][0] = one
    ric = RicciTensor(tuple(tuple(row) for row in comps))
    assert eta_einstein_fit(spec, structure, ric) is None


def _synthetic_ricci(
    spec: ManifoldSpec, structure: ContactStructure, a, b, c
) -> RicciTensor:
    n = spec.dimension
    g = spec.metric
    eta = structure.eta
    rows = []
    for j in range(n):
        phicol = structure.phi_column(j)
        row = []
        for k in range(n):
            gphi = spec.g_pair(phicol, spec.frame_vector(k))
            row.append(a * g[j][k] + b * eta[j] * eta[k] + c * gphi)
        rows.append(tuple(row))
    return RicciTensor(tuple(rows))


_frac = st.fractions(
    min_value=Fraction(-20), max_value=Fraction(20), max_denominator=12
)

# hypothesis redraws coefficients per example; the geometry is constant
_FIT_SPEC = load_spec(json.loads(SPEC_PATH.read_text()))
_FIT_STRUCTURE = load_contact(_FIT_SPEC)


@given(_frac, _frac, _frac)
def test_fit_recovery_is_exact(a_val, b_val, c_val) -> None:
    t = _FIT_SPEC.table
    a, b, c = t.constant(a_val), t.constant(b_val), t.constant(c_val)
    synthetic = _synthetic_ricci(_FIT_SPEC, _FIT_STRUCTURE, a, b, c)
    fit = eta_einstein_fit(_FIT_SPEC, _FIT_STRUCTURE, synthetic)
    assert fit is not None
    assert fit.a == a and fit.b == b and fit.c == c
    if c_val:
        assert fit.classification == "generalized-eta-einstein"
    elif b_val:
        assert fit.classification == "eta-einstein"
    elif a_val:
        assert fit.classification == "einstein"
    else:
        assert fit.classification == "ricci-flat"


def test_fit_recovery_with_symbolic_coefficients(
    spec: ManifoldSpec, structure: ContactStructure
) -> None:
    t = spec.table
    a = t.parse("(alpha + 1) * (alpha + 2)")
    b = t.parse("beta^2 - 1")
    c = t.parse("alpha * beta / 3")
    fit = eta_einstein_fit(spec, structure, _synthetic_ricci(spec, structure, a, b, c))
    assert fit is not None
    assert fit.a == a and fit.b == b and fit.c == c
