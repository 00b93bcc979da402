"""Shared fixtures: the bundled 3-dimensional structure, loaded once per session.

Everything downstream is exact rational arithmetic, so session scope is safe:
no fixture ever mutates the objects it hands out.
"""

from __future__ import annotations

import json
from pathlib import Path

import pytest
from hypothesis import HealthCheck, settings

from gsmc.analysis import run_identity_suite
from gsmc.connection import ConnectionTable, build_gsmc, levi_civita
from gsmc.contact import ContactStructure, load_contact
from gsmc.curvature import ricci, riemann, scalar_curvature
from gsmc.manifold import ManifoldSpec, load_spec
from gsmc.report import VerificationReport
from gsmc.symexpr import Expr

settings.register_profile(
    "suite",
    max_examples=100,
    deadline=None,
    derandomize=True,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("suite")

REPO = Path(__file__).resolve().parents[1]
SPEC_PATH = REPO / "specs" / "kenmotsu3d.json"
FLAT_PATH = REPO / "specs" / "flat3d.json"


@pytest.fixture(scope="session")
def spec() -> ManifoldSpec:
    return load_spec(json.loads(SPEC_PATH.read_text()))


@pytest.fixture(scope="session")
def structure(spec: ManifoldSpec) -> ContactStructure:
    return load_contact(spec)


@pytest.fixture(scope="session")
def sym(spec: ManifoldSpec) -> tuple[Expr, Expr]:
    return spec.table.symbol("alpha"), spec.table.symbol("beta")


@pytest.fixture(scope="session")
def lc(spec: ManifoldSpec) -> ConnectionTable:
    return levi_civita(spec)


@pytest.fixture(scope="session")
def gsmc_sym(
    spec: ManifoldSpec,
    structure: ContactStructure,
    lc: ConnectionTable,
    sym: tuple[Expr, Expr],
) -> ConnectionTable:
    return build_gsmc(spec, structure, *sym, lc=lc)


@pytest.fixture(scope="session")
def curv_sym(spec: ManifoldSpec, gsmc_sym: ConnectionTable):
    return riemann(spec, gsmc_sym)


@pytest.fixture(scope="session")
def ric_sym(spec: ManifoldSpec, curv_sym):
    return ricci(spec, curv_sym)


@pytest.fixture(scope="session")
def scalar_sym(spec: ManifoldSpec, ric_sym) -> Expr:
    return scalar_curvature(spec, ric_sym)


@pytest.fixture(scope="session")
def suite_symbolic(
    spec: ManifoldSpec, structure: ContactStructure, sym: tuple[Expr, Expr]
) -> VerificationReport:
    return run_identity_suite(spec, structure, *sym)


@pytest.fixture(scope="session")
def flat_spec() -> ManifoldSpec:
    return load_spec(json.loads(FLAT_PATH.read_text()))
