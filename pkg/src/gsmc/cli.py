"""Command-line front end: validate specs, print tensors, run the check suite.

Subcommands
-----------
validate  structural axioms and derivative laws of a manifold spec
compute   component tables of named tensors, nonzero entries by default
verify    the full identity, closed-form and theorem suite
example   write the bundled three-dimensional spec to standard output

Exit status is 0 on success, 1 when a check fails or a report contains an
off-expectation verdict, and 2 on usage or input errors.  Output is
deterministic: two runs on the same inputs are byte-identical.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from functools import cached_property
from importlib import resources
from typing import Sequence

from gsmc.analysis import concircular, projective, run_identity_suite
from gsmc.connection import (
    ConnectionTable,
    build_gsmc,
    levi_civita,
    perturb,
    torsion,
)
from gsmc.contact import (
    ContactStructure,
    check_almost_contact,
    check_kenmotsu,
    load_contact,
)
from gsmc.curvature import ricci, riemann, scalar_curvature
from gsmc.manifold import ManifoldSpec, SpecError, load_spec
from gsmc.report import VerificationReport, residual_record
from gsmc.symexpr import Expr, ExprError

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_INPUT_ERROR = 2

TENSOR_NAMES = (
    "lc",
    "gsmc",
    "torsion",
    "riemann",
    "ricci",
    "scalar",
    "projective",
    "concircular",
)


class CliInputError(Exception):
    """Unreadable file, malformed document or bad option value; exits 2."""


@dataclass
class RunConfig:
    """One subcommand invocation, decoupled from the argparse namespace."""

    spec_path: str = ""
    alpha: str = "symbolic"
    beta: str = "symbolic"
    tensors: tuple[str, ...] = ()
    format: str = "text"
    variant: str = "both"
    show_all: bool = False
    perturb: str | None = None


# ---------------------------------------------------------------------------
# input handling
# ---------------------------------------------------------------------------


def _load_checked(path: str) -> tuple[ManifoldSpec, ContactStructure]:
    """Read and schema-validate a spec file; any failure is an input error."""
    try:
        with open(path, encoding="utf-8") as fh:
            doc = json.load(fh)
    except OSError as exc:
        raise CliInputError(f"cannot read spec file: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise CliInputError(f"{path}: invalid JSON: {exc}") from exc
    try:
        spec = load_spec(doc)
        structure = load_contact(spec)
    except SpecError as exc:
        raise CliInputError(f"{path}: {exc}") from exc
    return spec, structure


def _parameter(spec: ManifoldSpec, text: str, name: str) -> Expr:
    """Turn an --alpha/--beta option value into an expression.

    "symbolic" keeps the declared parameter as a free symbol; anything else
    must parse over the spec's symbol table and stay coordinate-free.
    """
    if text == "symbolic":
        if name not in spec.table.parameters:
            raise CliInputError(
                f"spec '{spec.name}' declares no parameter {name!r}; "
                "pass an explicit value instead"
            )
        return spec.table.symbol(name)
    try:
        value = spec.table.parse(text)
    except ExprError as exc:
        raise CliInputError(f"bad {name} value {text!r}: {exc}") from exc
    offending = sorted(s for s in value.symbols() if spec.table.is_coordinate(s))
    if offending:
        raise CliInputError(
            f"{name} must not depend on chart coordinates (found {', '.join(offending)})"
        )
    return value


def _parse_perturb(text: str, n: int) -> tuple[int, int, int]:
    """1-based "i,j,k" option value to a 0-based connection slot."""
    parts = text.split(",")
    if len(parts) != 3:
        raise CliInputError(f"--perturb expects three comma-separated indices, got {text!r}")
    try:
        ijk = tuple(int(p) for p in parts)
    except ValueError as exc:
        raise CliInputError(f"--perturb indices must be integers, got {text!r}") from exc
    if not all(1 <= v <= n for v in ijk):
        raise CliInputError(f"--perturb indices must lie in 1..{n}, got {text!r}")
    i, j, k = (v - 1 for v in ijk)
    return (i, j, k)


# ---------------------------------------------------------------------------
# rendering
# ---------------------------------------------------------------------------


def _e(i: int) -> str:
    return f"E{i + 1}"


def _vec_str(components: Sequence[Expr]) -> str:
    """Signed sum over the frame; unit coefficients are elided."""
    terms: list[str] = []
    for k, coef in enumerate(components):
        if coef.is_zero():
            continue
        s = coef.factored_str()
        if s == "1":
            terms.append(_e(k))
        elif s == "-1":
            terms.append("-" + _e(k))
        else:
            terms.append(f"{s}*{_e(k)}")
    if not terms:
        return "0"
    out = terms[0]
    for t in terms[1:]:
        out += " - " + t[1:] if t.startswith("-") else " + " + t
    return out


class _TensorSet:
    """Lazy shared pipeline so one invocation never recomputes a stage."""

    def __init__(
        self, spec: ManifoldSpec, structure: ContactStructure, alpha: Expr, beta: Expr
    ):
        self.spec = spec
        self.structure = structure
        self.alpha = alpha
        self.beta = beta

    @cached_property
    def lc(self) -> ConnectionTable:
        return levi_civita(self.spec)

    @cached_property
    def deformed(self) -> ConnectionTable:
        return build_gsmc(self.spec, self.structure, self.alpha, self.beta, self.lc)

    @cached_property
    def torsion(self):
        return torsion(self.spec, self.deformed)

    @cached_property
    def riemann(self):
        return riemann(self.spec, self.deformed)

    @cached_property
    def ricci(self):
        return ricci(self.spec, self.riemann)

    @cached_property
    def scalar(self) -> Expr:
        return scalar_curvature(self.spec, self.ricci)

    @cached_property
    def projective(self):
        return projective(self.riemann, self.ricci, self.spec.dimension)

    @cached_property
    def concircular(self):
        return concircular(self.riemann, self.scalar, self.spec, self.spec.dimension)


def _connection_entries(
    symbol: str, conn: ConnectionTable, n: int
) -> list[tuple[str, str, bool]]:
    out = []
    for i in range(n):
        for j in range(n):
            comps = conn.gamma[i][j]
            zero = all(c.is_zero() for c in comps)
            out.append((f"{symbol}_{_e(i)} {_e(j)}", _vec_str(comps), zero))
    return out


def _curvature_entries(symbol: str, curv, n: int) -> list[tuple[str, str, bool]]:
    out = []
    for i in range(n):
        for j in range(n):
            for k in range(n):
                comps = curv.components[i][j][k]
                zero = all(c.is_zero() for c in comps)
                label = f"{symbol}({_e(i)},{_e(j)}){_e(k)}"
                out.append((label, _vec_str(comps), zero))
    return out


def _tensor_entries(name: str, ts: _TensorSet) -> list[tuple[str, str, bool]]:
    """(label, rendered value, vanishes) triples in deterministic index order."""
    n = ts.spec.dimension
    if name == "lc":
        return _connection_entries("∇", ts.lc, n)
    if name == "gsmc":
        return _connection_entries("∇̄", ts.deformed, n)
    if name == "torsion":
        out = []
        for i in range(n):
            for j in range(n):
                comps = ts.torsion.components[i][j]
                zero = all(c.is_zero() for c in comps)
                out.append((f"T({_e(i)},{_e(j)})", _vec_str(comps), zero))
        return out
    if name == "riemann":
        return _curvature_entries("R̄", ts.riemann, n)
    if name == "ricci":
        out = []
        for j in range(n):
            for k in range(n):
                e = ts.ricci.components[j][k]
                out.append((f"S̄({_e(j)},{_e(k)})", e.factored_str(), e.is_zero()))
        return out
    if name == "scalar":
        # a single number is a summary, not a table: always print it
        return [("r̄", ts.scalar.factored_str(), False)]
    if name == "projective":
        return _curvature_entries("P̄", ts.projective, n)
    if name == "concircular":
        return _curvature_entries("C̄*", ts.concircular, n)
    raise CliInputError(f"unknown tensor {name!r}")


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------


def _frame_integrity_record(spec: ManifoldSpec):
    entries = {
        (i, j, k, l): vec[l]
        for (i, j, k), vec in spec.jacobi_defect().items()
        for l in range(spec.dimension)
    }
    return residual_record(
        "structure.jacobi-identity",
        "cyclic bracket sums of the frame fields vanish",
        entries,
    )


def cmd_validate(cfg: RunConfig) -> int:
    spec, structure = _load_checked(cfg.spec_path)
    combined = VerificationReport(
        subject=spec.name, alpha="-", beta="-", variant="structural"
    )
    combined.add(_frame_integrity_record(spec))
    combined.extend(check_almost_contact(spec, structure).records)
    combined.extend(check_kenmotsu(spec, structure, levi_civita(spec)).records)
    combined.finalize()
    print(combined.render_text(), end="")
    return EXIT_OK if combined.ok else EXIT_CHECK_FAILED


def cmd_compute(cfg: RunConfig) -> int:
    spec, structure = _load_checked(cfg.spec_path)
    alpha = _parameter(spec, cfg.alpha, "alpha")
    beta = _parameter(spec, cfg.beta, "beta")
    ts = _TensorSet(spec, structure, alpha, beta)
    blocks = []
    for name in cfg.tensors:
        try:
            entries = _tensor_entries(name, ts)
        except ValueError as exc:
            raise CliInputError(str(exc)) from exc
        shown = [(lab, val) for lab, val, zero in entries if cfg.show_all or not zero]
        lines = [f"# {name} on {spec.name}  (alpha = {alpha}, beta = {beta})"]
        if shown:
            lines.extend(f"{lab} = {val}" for lab, val in shown)
        else:
            lines.append("(all components vanish)")
        blocks.append("\n".join(lines))
    print("\n\n".join(blocks))
    return EXIT_OK


def cmd_verify(cfg: RunConfig) -> int:
    spec, structure = _load_checked(cfg.spec_path)
    alpha = _parameter(spec, cfg.alpha, "alpha")
    beta = _parameter(spec, cfg.beta, "beta")
    connection = None
    if cfg.perturb is not None:
        slot = _parse_perturb(cfg.perturb, spec.dimension)
        connection = perturb(build_gsmc(spec, structure, alpha, beta), slot)
    report = run_identity_suite(
        spec, structure, alpha, beta, variant=cfg.variant, connection=connection
    )
    if cfg.format == "json":
        print(json.dumps(report.to_json_dict(), indent=2, sort_keys=True))
    else:
        print(report.render_text(), end="")
    return EXIT_OK if report.ok else EXIT_CHECK_FAILED


def cmd_example(cfg: RunConfig) -> int:
    data = resources.files("gsmc").joinpath("data/kenmotsu3d.json").read_text(
        encoding="utf-8"
    )
    sys.stdout.write(data)
    return EXIT_OK


# ---------------------------------------------------------------------------
# argument parsing
# ---------------------------------------------------------------------------

_PARAM_HELP = 'parameter value: an expression over the declared symbols, or "symbolic"'


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="gsmc",
        description=(
            "Exact tensor calculus for the two-parameter torsion deformation "
            "of the Levi-Civita connection on almost-contact metric charts."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True, metavar="command")

    p = sub.add_parser(
        "validate", help="check a spec against the structural axioms and derivative laws"
    )
    p.add_argument("spec", help="path to a manifold spec (JSON)")

    p = sub.add_parser(
        "compute", help="print tensor component tables, nonzero entries by default"
    )
    p.add_argument("spec", help="path to a manifold spec (JSON)")
    p.add_argument(
        "--tensor",
        action="append",
        required=True,
        choices=TENSOR_NAMES,
        help="tensor table to print; repeatable",
    )
    p.add_argument("--alpha", default="symbolic", help=_PARAM_HELP)
    p.add_argument("--beta", default="symbolic", help=_PARAM_HELP)
    p.add_argument(
        "--all", dest="show_all", action="store_true", help="print vanishing components too"
    )

    p = sub.add_parser("verify", help="run the identity, closed-form and theorem suite")
    p.add_argument("spec", help="path to a manifold spec (JSON)")
    p.add_argument("--alpha", default="symbolic", help=_PARAM_HELP)
    p.add_argument("--beta", default="symbolic", help=_PARAM_HELP)
    p.add_argument(
        "--format", default="text", choices=("text", "json"), help="report format"
    )
    p.add_argument(
        "--variant",
        default="both",
        choices=("printed", "rederived", "both"),
        help="which side of each documented-deviation pair to include",
    )
    p.add_argument(
        "--perturb",
        default=None,
        metavar="I,J,K",
        help=(
            "add a unit bump to one deformed-connection coefficient "
            "(1-based frame indices) before verifying; negative control"
        ),
    )

    sub.add_parser(
        "example", help="write the bundled three-dimensional spec to standard output"
    )
    return parser


def _force_utf8(stream) -> None:
    reconfigure = getattr(stream, "reconfigure", None)
    if reconfigure is None:
        return
    try:
        reconfigure(encoding="utf-8")
    except (OSError, ValueError):
        pass


_HANDLERS = {
    "validate": cmd_validate,
    "compute": cmd_compute,
    "verify": cmd_verify,
    "example": cmd_example,
}


def main(argv: Sequence[str] | None = None) -> int:
    _force_utf8(sys.stdout)
    _force_utf8(sys.stderr)
    ns = build_parser().parse_args(argv)
    cfg = RunConfig(
        spec_path=getattr(ns, "spec", ""),
        alpha=getattr(ns, "alpha", "symbolic"),
        beta=getattr(ns, "beta", "symbolic"),
        tensors=tuple(getattr(ns, "tensor", None) or ()),
        format=getattr(ns, "format", "text"),
        variant=getattr(ns, "variant", "both"),
        show_all=getattr(ns, "show_all", False),
        perturb=getattr(ns, "perturb", None),
    )
    try:
        return _HANDLERS[ns.command](cfg)
    except CliInputError as exc:
        print(f"gsmc: error: {exc}", file=sys.stderr)
        return EXIT_INPUT_ERROR


if __name__ == "__main__":
    raise SystemExit(main())
