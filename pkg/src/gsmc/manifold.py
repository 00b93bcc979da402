"""Manifold specifications: moving frames, metrics and Lie brackets.

A spec describes an n-dimensional chart either by a coordinate frame (an
invertible matrix whose row i gives the vector field E_i in the coordinate
basis) or directly by the structure functions c^k_ij of the frame, where
[E_i, E_j] = sum_k c^k_ij E_k.  The metric is given by its frame components
g_ij and defaults to the identity.  All components are exact rational
functions over one shared symbol table (coordinates first, then parameters).

Index convention: the Python API is 0-based; rendered reports use 1-based
labels E1..En.  JSON structure-function keys are 1-based ("1,2").
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Iterator, Sequence

from gsmc import linalg
from gsmc.symexpr import Expr, ExprError, SymbolTable


class SpecError(Exception):
    """A manifold spec document is malformed or inconsistent."""


@dataclass(frozen=True)
class FrameVec:
    """A vector field expressed in frame components: X = sum_i components[i] E_i."""

    components: tuple[Expr, ...]

    def __iter__(self) -> Iterator[Expr]:
        return iter(self.components)

    def __getitem__(self, i: int) -> Expr:
        return self.components[i]

    def __len__(self) -> int:
        return len(self.components)

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.components)

    def equals(self, other: "FrameVec") -> bool:
        return len(self) == len(other) and all(
            a.equals(b) for a, b in zip(self.components, other.components)
        )


@dataclass(frozen=True)
class CoVec:
    """A one-form in frame components: w(E_i) = components[i]."""

    components: tuple[Expr, ...]

    def __iter__(self) -> Iterator[Expr]:
        return iter(self.components)

    def __getitem__(self, i: int) -> Expr:
        return self.components[i]

    def __len__(self) -> int:
        return len(self.components)


def vec_add(a: FrameVec, b: FrameVec) -> FrameVec:
    return FrameVec(tuple(x + y for x, y in zip(a, b)))


def vec_sub(a: FrameVec, b: FrameVec) -> FrameVec:
    return FrameVec(tuple(x - y for x, y in zip(a, b)))


def vec_scale(f: Expr, a: FrameVec) -> FrameVec:
    return FrameVec(tuple(f * x for x in a))


class ManifoldSpec:
    """Parsed and validated manifold description; see the module docstring."""

    def __init__(
        self,
        *,
        name: str,
        dimension: int,
        table: SymbolTable,
        frame: tuple[tuple[Expr, ...], ...] | None,
        declared_structure: dict[tuple[int, int], FrameVec] | None,
        metric: tuple[tuple[Expr, ...], ...],
        domain_note: str | None,
        notes: str | None,
        contact_block: dict[str, Any] | None,
    ):
        self.name = name
        self.dimension = dimension
        self.table = table
        self.frame = frame
        self.declared_structure = declared_structure
        self.metric = metric
        self.domain_note = domain_note
        self.notes = notes
        self.contact_block = contact_block
        self._metric_inverse: list[list[Expr]] | None = None
        self._frame_inverse: list[list[Expr]] | None = None
        self._structure: dict[tuple[int, int], FrameVec] | None = None

    # -- basic helpers ------------------------------------------------------

    def zero_vec(self) -> FrameVec:
        return FrameVec((self.table.zero,) * self.dimension)

    def frame_vector(self, i: int) -> FrameVec:
        comps = [self.table.zero] * self.dimension
        comps[i] = self.table.one
        return FrameVec(tuple(comps))

    def metric_inverse(self) -> list[list[Expr]]:
        if self._metric_inverse is None:
            try:
                self._metric_inverse = linalg.invert([list(r) for r in self.metric])
            except linalg.SingularMatrixError as exc:
                raise SpecError(f"metric is singular: {exc}") from exc
        return self._metric_inverse

    def g_pair(self, x: FrameVec, y: FrameVec) -> Expr:
        acc = self.table.zero
        for i in range(self.dimension):
            if x[i].is_zero():
                continue
            for j in range(self.dimension):
                acc = acc + x[i] * y[j] * self.metric[i][j]
        return acc

    # -- differential structure ----------------------------------------------

    def _coordinate_components(self, x: FrameVec) -> list[Expr]:
        assert self.frame is not None
        n = self.dimension
        return [
            sum((x[i] * self.frame[i][a] for i in range(n)), self.table.zero)
            for a in range(n)
        ]

    def frame_inverse(self) -> list[list[Expr]]:
        """Inverse of the frame matrix (coordinate index x frame index)."""
        if self.frame is None:
            raise SpecError("spec has no coordinate frame")
        if self._frame_inverse is None:
            try:
                self._frame_inverse = linalg.invert([list(r) for r in self.frame])
            except linalg.SingularMatrixError as exc:
                raise SpecError(f"frame matrix is singular: {exc}") from exc
        return self._frame_inverse

    def directional_derivative(self, x: FrameVec, f: Expr) -> Expr:
        """Derivative X(f); needs a coordinate frame unless f is coordinate-free."""
        coords = self.table.coordinates
        if self.frame is None:
            if any(self.table.is_coordinate(s) for s in f.symbols()):
                raise SpecError(
                    "directional derivative of a coordinate-dependent function "
                    "requires a coordinate frame"
                )
            return self.table.zero
        if not any(self.table.is_coordinate(s) for s in f.symbols()):
            return self.table.zero
        # unit frame fields dominate the call sites and their coordinate
        # components are just the frame rows; skip the generic expansion
        unit = -1
        for i, c in enumerate(x):
            if c.is_zero():
                continue
            if unit >= 0 or not (c.is_constant() and c.constant_value() == 1):
                unit = -2
                break
            unit = i
        if unit >= 0:
            xc: Sequence[Expr] = self.frame[unit]
        else:
            xc = self._coordinate_components(x)
        acc = self.table.zero
        for a, name in enumerate(coords):
            if not xc[a].is_zero():
                acc = acc + xc[a] * f.diff(name)
        return acc

    def structure_functions(self) -> dict[tuple[int, int], FrameVec]:
        """Brackets of frame fields: (i, j) -> [E_i, E_j], complete and cached."""
        if self._structure is not None:
            return self._structure
        n = self.dimension
        if self.frame is not None:
            finv = self.frame_inverse()
            coords = self.table.coordinates
            table: dict[tuple[int, int], FrameVec] = {}
            for i in range(n):
                for j in range(i + 1, n):
                    w = []
                    for a in range(n):
                        acc = self.table.zero
                        for b, name in enumerate(coords):
                            acc = acc + self.frame[i][b] * self.frame[j][a].diff(name)
                            acc = acc - self.frame[j][b] * self.frame[i][a].diff(name)
                        w.append(acc)
                    comps = [
                        sum((w[a] * finv[a][k] for a in range(n)), self.table.zero)
                        for k in range(n)
                    ]
                    table[(i, j)] = FrameVec(tuple(comps))
        else:
            assert self.declared_structure is not None
            table = {
                key: val
                for key, val in self.declared_structure.items()
                if key[0] < key[1]
            }
            for i in range(n):
                for j in range(i + 1, n):
                    table.setdefault((i, j), self.zero_vec())
        full: dict[tuple[int, int], FrameVec] = {}
        for (i, j), v in table.items():
            full[(i, j)] = v
            full[(j, i)] = FrameVec(tuple(-c for c in v))
        for i in range(n):
            full[(i, i)] = self.zero_vec()
        self._structure = full
        return full

    def lie_bracket(self, i: int, j: int) -> FrameVec:
        """[E_i, E_j] in frame components (0-based indices)."""
        return self.structure_functions()[(i, j)]

    def bracket_of_fields(self, x: FrameVec, y: FrameVec) -> FrameVec:
        """[X, Y] for arbitrary frame-component fields.

        Expands through the frame: derivative terms of the components plus the
        structure-function terms, which is valid in both spec modes.
        """
        n = self.dimension
        struct = self.structure_functions()
        comps = []
        for k in range(n):
            acc = self.directional_derivative(x, y[k])
            acc = acc - self.directional_derivative(y, x[k])
            comps.append(acc)
        out = FrameVec(tuple(comps))
        for i in range(n):
            if x[i].is_zero():
                continue
            for j in range(n):
                if y[j].is_zero() or i == j:
                    continue
                out = vec_add(out, vec_scale(x[i] * y[j], struct[(i, j)]))
        return out

    def jacobi_defect(self) -> dict[tuple[int, int, int], FrameVec]:
        """Cyclic bracket sums [E_i,[E_j,E_k]] + cyc for all i < j < k."""
        n = self.dimension
        out: dict[tuple[int, int, int], FrameVec] = {}
        for i in range(n):
            for j in range(i + 1, n):
                for k in range(j + 1, n):
                    acc = self.zero_vec()
                    for a, b, c in ((i, j, k), (j, k, i), (k, i, j)):
                        acc = vec_add(
                            acc,
                            self.bracket_of_fields(
                                self.frame_vector(a), self.lie_bracket(b, c)
                            ),
                        )
                    out[(i, j, k)] = acc
        return out


# ---------------------------------------------------------------------------
# loading
# ---------------------------------------------------------------------------


def _require(cond: bool, message: str) -> None:
    if not cond:
        raise SpecError(message)


def _parse_entry(table: SymbolTable, text: Any, where: str) -> Expr:
    _require(isinstance(text, str), f"{where}: expected an expression string")
    try:
        return table.parse(text)
    except ExprError as exc:
        raise SpecError(f"{where}: {exc}") from exc


def _parse_matrix(
    table: SymbolTable, rows: Any, n: int, m: int, where: str
) -> tuple[tuple[Expr, ...], ...]:
    _require(isinstance(rows, list) and len(rows) == n, f"{where}: expected {n} rows")
    out = []
    for i, row in enumerate(rows):
        _require(
            isinstance(row, list) and len(row) == m,
            f"{where}: row {i + 1} must have {m} entries",
        )
        out.append(
            tuple(
                _parse_entry(table, cell, f"{where}[{i + 1}][{j + 1}]")
                for j, cell in enumerate(row)
            )
        )
    return tuple(out)


def _coordinate_free(table: SymbolTable, e: Expr) -> bool:
    return not any(table.is_coordinate(s) for s in e.symbols())


def load_spec(doc: dict[str, Any]) -> ManifoldSpec:
    """Validate a spec document (parsed JSON) and build a :class:`ManifoldSpec`."""
    _require(isinstance(doc, dict), "spec document must be a JSON object")
    known = {
        "name",
        "dimension",
        "coordinates",
        "parameters",
        "frame",
        "structure_functions",
        "metric",
        "domain_note",
        "notes",
        "contact",
    }
    unknown = set(doc) - known
    _require(not unknown, f"unknown spec fields: {sorted(unknown)}")

    name = doc.get("name")
    _require(isinstance(name, str) and name != "", "field 'name' must be a non-empty string")
    n = doc.get("dimension")
    _require(isinstance(n, int) and not isinstance(n, bool) and n >= 1,
             "field 'dimension' must be a positive integer")

    coords = doc.get("coordinates", [])
    params = doc.get("parameters", [])
    for label, seq in (("coordinates", coords), ("parameters", params)):
        _require(
            isinstance(seq, list) and all(isinstance(s, str) for s in seq),
            f"field '{label}' must be a list of strings",
        )
    try:
        table = SymbolTable(coords, params)
    except ValueError as exc:
        raise SpecError(str(exc)) from exc

    frame_doc = doc.get("frame")
    sf_doc = doc.get("structure_functions")
    _require(
        frame_doc is not None or sf_doc is not None,
        "one of 'frame' or 'structure_functions' is required",
    )

    frame = None
    if frame_doc is not None:
        _require(
            len(coords) == n,
            "a coordinate frame needs exactly 'dimension' coordinates",
        )
        frame = _parse_matrix(table, frame_doc, n, n, "frame")

    declared = None
    if sf_doc is not None:
        _require(isinstance(sf_doc, dict), "'structure_functions' must be an object")
        declared = {}
        for key, val in sf_doc.items():
            parts = key.split(",")
            _require(
                len(parts) == 2 and all(p.strip().isdigit() for p in parts),
                f"structure_functions key {key!r} must look like 'i,j'",
            )
            i, j = (int(p.strip()) for p in parts)
            _require(
                1 <= i <= n and 1 <= j <= n and i != j,
                f"structure_functions key {key!r} out of range or diagonal",
            )
            _require(
                isinstance(val, list) and len(val) == n,
                f"structure_functions[{key!r}] must list {n} components",
            )
            vec = FrameVec(
                tuple(
                    _parse_entry(table, c, f"structure_functions[{key!r}][{k + 1}]")
                    for k, c in enumerate(val)
                )
            )
            declared[(i - 1, j - 1)] = vec
        # antisymmetry of explicitly given mirror pairs
        for (i, j), vec in list(declared.items()):
            mirror = declared.get((j, i))
            if mirror is not None:
                _require(
                    vec.equals(FrameVec(tuple(-c for c in mirror))),
                    f"structure_functions entries {i + 1},{j + 1} and "
                    f"{j + 1},{i + 1} are not antisymmetric",
                )
        declared = {
            (i, j) if i < j else (j, i): vec if i < j else FrameVec(tuple(-c for c in vec))
            for (i, j), vec in declared.items()
        }

    metric_doc = doc.get("metric")
    if metric_doc is None:
        metric = tuple(
            tuple(table.one if i == j else table.zero for j in range(n))
            for i in range(n)
        )
    else:
        metric = _parse_matrix(table, metric_doc, n, n, "metric")
        for i in range(n):
            for j in range(i + 1, n):
                _require(
                    metric[i][j].equals(metric[j][i]),
                    f"metric is not symmetric at ({i + 1},{j + 1})",
                )

    domain_note = doc.get("domain_note")
    notes = doc.get("notes")
    for label, val in (("domain_note", domain_note), ("notes", notes)):
        _require(val is None or isinstance(val, str), f"field '{label}' must be a string")

    contact_block = doc.get("contact")
    if contact_block is not None:
        _require(isinstance(contact_block, dict), "'contact' must be an object")
        _require(
            "phi" in contact_block and "xi" in contact_block,
            "'contact' requires 'phi' and 'xi'",
        )
        extra = set(contact_block) - {"phi", "xi", "eta"}
        _require(not extra, f"unknown contact fields: {sorted(extra)}")

    if frame is None:
        for i in range(n):
            for j in range(n):
                _require(
                    _coordinate_free(table, metric[i][j]),
                    "structure-functions-only specs must be coordinate-free "
                    f"(metric[{i + 1}][{j + 1}] is not)",
                )
        assert declared is not None
        for (i, j), vec in declared.items():
            for k, c in enumerate(vec):
                _require(
                    _coordinate_free(table, c),
                    "structure-functions-only specs must be coordinate-free "
                    f"(structure_functions[{i + 1},{j + 1}][{k + 1}] is not)",
                )

    spec = ManifoldSpec(
        name=name,
        dimension=n,
        table=table,
        frame=frame,
        declared_structure=declared,
        metric=metric,
        domain_note=domain_note,
        notes=notes,
        contact_block=contact_block,
    )

    if frame is not None:
        spec.frame_inverse()  # fail loudly on a singular frame
        if declared is not None:
            computed = spec.structure_functions()
            for (i, j), vec in declared.items():
                _require(
                    computed[(i, j)].equals(vec),
                    f"declared structure_functions[{i + 1},{j + 1}] disagree "
                    "with the brackets computed from the frame",
                )
    spec.metric_inverse()  # fail loudly on a singular metric
    return spec
