"""Spec loading, frames, brackets and the Jacobi identity; exact linear algebra."""

from __future__ import annotations

import json
import random
from fractions import Fraction

import pytest

from gsmc import linalg
from gsmc.manifold import FrameVec, ManifoldSpec, SpecError, load_spec
from gsmc.symexpr import SymbolTable

from conftest import SPEC_PATH


def _doc() -> dict:
    return json.loads(SPEC_PATH.read_text())


# ---------------------------------------------------------------------------
# validation errors


@pytest.mark.parametrize(
    "mutate, fragment",
    [
        (lambda d: d.pop("name"), "name"),
        (lambda d: d.update(dimension=0), "dimension"),
        (lambda d: d.update(dimension=True), "dimension"),
        (lambda d: d.update(surprise=1), "unknown spec fields"),
        (lambda d: d["frame"].pop(), "frame"),
        (lambda d: d["frame"][0].__setitem__(0, "q + 1"), "frame"),
        (lambda d: d.update(metric=[["1", "1", "0"], ["0", "1", "0"], ["0", "0", "1"]]),
         "not symmetric"),
        (lambda d: d.update(notes=7), "notes"),
        (lambda d: d["contact"].pop("xi"), "contact"),
        (lambda d: d["contact"].update(extra=[]), "unknown contact fields"),
    ],
)
def test_load_spec_rejects_malformed_documents(mutate, fragment: str) -> None:
    doc = _doc()
    mutate(doc)
    with pytest.raises(SpecError, match=fragment):
        load_spec(doc)


def test_load_spec_rejects_singular_frame() -> None:
    doc = _doc()
    doc["frame"][1] = doc["frame"][0]  # two equal rows
    with pytest.raises(SpecError, match="singular"):
        load_spec(doc)


def test_structure_function_keys_are_checked() -> None:
    base = {
        "name": "algebra",
        "dimension": 2,
        "parameters": ["alpha", "beta"],
        "structure_functions": {"1,2": ["1", "0"]},
    }
    load_spec(dict(base))  # well-formed
    for bad_key in ("1", "0,1", "2,2", "1,3"):
        doc = dict(base)
        doc["structure_functions"] = {bad_key: ["1", "0"]}
        with pytest.raises(SpecError):
            load_spec(doc)
    doc = dict(base)
    # mirror pair that is not antisymmetric
    doc["structure_functions"] = {"1,2": ["1", "0"], "2,1": ["1", "0"]}
    with pytest.raises(SpecError, match="antisymmetric"):
        load_spec(doc)


def test_declared_structure_must_match_frame() -> None:
    doc = _doc()
    doc["structure_functions"] = {"1,2": ["1", "0", "0"]}  # truth is zero
    with pytest.raises(SpecError, match="disagree"):
        load_spec(doc)


def test_structure_only_spec_must_be_coordinate_free() -> None:
    doc = {
        "name": "algebra",
        "dimension": 2,
        "coordinates": ["x", "y"],
        "structure_functions": {"1,2": ["x", "0"]},
    }
    with pytest.raises(SpecError, match="coordinate-free"):
        load_spec(doc)


# ---------------------------------------------------------------------------
# the bundled spec: brackets and Jacobi


def test_bundled_brackets(spec: ManifoldSpec) -> None:
    one = spec.table.one
    zero = spec.table.zero
    assert spec.lie_bracket(0, 2).equals(FrameVec((one, zero, zero)))
    assert spec.lie_bracket(1, 2).equals(FrameVec((zero, one, zero)))
    assert spec.lie_bracket(0, 1).is_zero()


def test_bracket_antisymmetry(spec: ManifoldSpec) -> None:
    n = spec.dimension
    for i in range(n):
        assert spec.lie_bracket(i, i).is_zero()
        for j in range(n):
            mirror = FrameVec(tuple(-c for c in spec.lie_bracket(j, i)))
            assert spec.lie_bracket(i, j).equals(mirror)


def test_bundled_jacobi_defect_vanishes(spec: ManifoldSpec) -> None:
    defects = spec.jacobi_defect()
    assert set(defects) == {(0, 1, 2)}
    assert defects[(0, 1, 2)].is_zero()


def test_declared_mode_matches_frame_mode(spec: ManifoldSpec) -> None:
    # the same algebra entered as abstract structure functions
    doc = {
        "name": "algebra",
        "dimension": 3,
        "parameters": ["alpha", "beta"],
        "structure_functions": {"1,3": ["1", "0", "0"], "2,3": ["0", "1", "0"]},
    }
    abstract = load_spec(doc)
    for key, vec in spec.structure_functions().items():
        twin = abstract.structure_functions()[key]
        assert len(vec) == len(twin)
        for a, b in zip(vec, twin):
            assert str(a) == str(b)
    assert abstract.jacobi_defect()[(0, 1, 2)].is_zero()


def test_metric_pairing_on_bundled_spec(spec: ManifoldSpec) -> None:
    n = spec.dimension
    for i in range(n):
        for j in range(n):
            want = spec.table.one if i == j else spec.table.zero
            assert spec.g_pair(spec.frame_vector(i), spec.frame_vector(j)) == want


def test_directional_derivative_uses_the_frame(spec: ManifoldSpec) -> None:
    # E3 = -x d/dx on the bundled chart, so E3(x^2) = -2 x^2
    x = spec.table.symbol("x")
    got = spec.directional_derivative(spec.frame_vector(2), x**2)
    assert got == -2 * x**2


# ---------------------------------------------------------------------------
# linear algebra helpers


def test_invert_round_trip() -> None:
    t = SymbolTable(coordinates=("x",))
    x = t.symbol("x")
    m = [[x + 1, t.one], [t.one, x]]
    inv = linalg.invert(m)
    prod = linalg.mat_mul(m, inv)
    for i in range(2):
        for j in range(2):
            assert prod[i][j] == (t.one if i == j else t.zero)


def test_invert_rejects_singular() -> None:
    t = SymbolTable(coordinates=("x",))
    x = t.symbol("x")
    with pytest.raises(linalg.SingularMatrixError):
        linalg.invert([[x, x], [x, x]])


def test_solve_vector() -> None:
    t = SymbolTable(coordinates=("x",))
    x = t.symbol("x")
    sol = linalg.solve_vector([[x, t.zero], [t.zero, t.one]], [x**2, x])
    assert sol[0] == x and sol[1] == x


# ---------------------------------------------------------------------------
# Jacobi identity on randomized frames.  Lower triangular with nonzero
# diagonal keeps the frame invertible by construction; the identity itself
# is a theorem, so any nonzero defect is an engine bug.

N_FRAME_CASES = 100


def _random_frame_spec(rng: random.Random) -> ManifoldSpec:
    t = SymbolTable(coordinates=("x", "y", "z"))
    syms = [t.symbol(s) for s in ("x", "y", "z")]

    def small_poly() -> str:
        c = rng.choice((-2, -1, 1, 2, Fraction(1, 2)))
        e = t.constant(c)
        if rng.random() < 0.7:
            e = e * rng.choice(syms)
            if rng.random() < 0.3:
                e = e * rng.choice(syms)
        if rng.random() < 0.3:
            e = e + rng.choice((1, -1)) * rng.choice(syms)
        return str(e)

    def diagonal() -> str:
        # never identically zero
        base = rng.choice(("1", "2", "x", "y", "z", "x + 2", "1/2"))
        return base

    frame = [
        [
            diagonal() if i == j else (small_poly() if j < i and rng.random() < 0.8 else "0")
            for j in range(3)
        ]
        for i in range(3)
    ]
    return load_spec({"name": "random-frame", "dimension": 3,
                      "coordinates": ["x", "y", "z"], "frame": frame})


def test_jacobi_identity_on_random_frames() -> None:
    rng = random.Random(20260819)
    for case in range(N_FRAME_CASES):
        spec = _random_frame_spec(rng)
        defect = spec.jacobi_defect()[(0, 1, 2)]
        assert defect.is_zero(), f"case {case}: defect {[str(c) for c in defect]}"
