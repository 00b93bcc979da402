"""Exact multivariate rational-function arithmetic over the rationals.

An :class:`Expr` is a quotient ``num / den`` of two multivariate polynomials
with ``fractions.Fraction`` coefficients.  Polynomials are stored sparsely as
``dict`` mappings from exponent tuples to coefficients; the exponent tuple is
aligned with the owning :class:`SymbolTable`, whose declared order puts chart
coordinates first and formal parameters after them.  Monomials are compared in
lexicographic order over that symbol sequence (Python tuple comparison on the
exponent vectors), and the leading monomial of a polynomial is its largest
exponent tuple.

Canonical form, maintained by every constructor and operation:

* common polynomial factors of ``num`` and ``den`` are cancelled (primitive
  PRS gcd, so quotients like ``(x^2 - 1)/(x - 1)`` reduce to ``x + 1``);
* the rational content of each part is removed: both polynomials have integer
  coefficients and the two contents are coprime;
* the leading coefficient of ``den`` is positive;
* zero is represented uniquely as ``0 / 1``.

Normalisation is idempotent, and two expressions represent the same rational
function iff :meth:`Expr.equals` accepts them, which is decided by
cross-multiplication and therefore does not depend on gcd strength.

Expression text is accepted and emitted in a small infix language:

    expr   := term (('+' | '-') term)*
    term   := factor (('*' | '/') factor)*
    factor := '-' factor | power
    power  := atom ('^' exponent)?
    atom   := INTEGER | IDENT | '(' expr ')'

The exponent must be an integer literal, optionally signed.  Rationals are
written ``p/q``.  The printer emits precedence-aware infix with terms in
descending lexicographic order, so ``parse(str(e))`` reproduces ``e`` exactly.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Sequence, Union


class ExprError(Exception):
    """Base class for expression-kernel failures."""


class ExprSyntaxError(ExprError):
    """Malformed expression text; ``position`` is a 0-based character offset."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


class UnknownSymbolError(ExprSyntaxError):
    """Identifier not declared in the symbol table."""


class ExprDivisionError(ExprError):
    """Division by an expression that is identically zero."""


class NotACoordinateError(ExprError):
    """Differentiation was requested along a symbol that is not a coordinate."""


Mono = tuple  # exponent tuple, aligned with SymbolTable.names
Poly = dict  # Mono -> Fraction, no zero coefficients stored
Coercible = Union["Expr", int, Fraction, str]


# ---------------------------------------------------------------------------
# polynomial layer (private): sparse dicts, lexicographic order
# ---------------------------------------------------------------------------


def _padd(a: Poly, b: Poly) -> Poly:
    out = dict(a)
    for m, c in b.items():
        nc = out.get(m, Fraction(0)) + c
        if nc:
            out[m] = nc
        else:
            out.pop(m, None)
    return out


def _pneg(a: Poly) -> Poly:
    return {m: -c for m, c in a.items()}


def _psub(a: Poly, b: Poly) -> Poly:
    return _padd(a, _pneg(b))


def _pmul(a: Poly, b: Poly) -> Poly:
    out: Poly = {}
    for ma, ca in a.items():
        for mb, cb in b.items():
            m = tuple(x + y for x, y in zip(ma, mb))
            nc = out.get(m, Fraction(0)) + ca * cb
            if nc:
                out[m] = nc
            else:
                out.pop(m, None)
    return out


def _pscale(a: Poly, c: Fraction) -> Poly:
    if not c:
        return {}
    return {m: k * c for m, k in a.items()}


def _plead(a: Poly) -> tuple[Mono, Fraction]:
    m = max(a)
    return m, a[m]


def _pcontent(a: Poly) -> Fraction:
    """Positive rational content: gcd of numerators over lcm of denominators."""
    num = 0
    den = 1
    for c in a.values():
        num = math.gcd(num, abs(c.numerator))
        den = den * c.denominator // math.gcd(den, c.denominator)
    return Fraction(num, den)


def _pdiff(a: Poly, idx: int) -> Poly:
    out: Poly = {}
    for m, c in a.items():
        e = m[idx]
        if e:
            dm = m[:idx] + (e - 1,) + m[idx + 1 :]
            nc = out.get(dm, Fraction(0)) + c * e
            if nc:
                out[dm] = nc
            else:
                out.pop(dm, None)
    return out


def _pdivexact(a: Poly, b: Poly) -> Poly:
    """Exact polynomial quotient a / b; raises ArithmeticError when not exact."""
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    if not a:
        return {}
    q: Poly = {}
    r = dict(a)
    bm, bc = _plead(b)
    while r:
        rm, rc = _plead(r)
        em = tuple(x - y for x, y in zip(rm, bm))
        if any(e < 0 for e in em):
            raise ArithmeticError("polynomial division is not exact")
        qc = rc / bc
        q[em] = qc
        for m2, c2 in b.items():
            mm = tuple(x + y for x, y in zip(em, m2))
            nc = r.get(mm, Fraction(0)) - qc * c2
            if nc:
                r[mm] = nc
            else:
                r.pop(mm, None)
    return q


def _primpos(a: Poly) -> Poly:
    """Primitive part with positive leading coefficient."""
    if not a:
        return {}
    c = _pcontent(a)
    if _plead(a)[1] < 0:
        c = -c
    return {m: k / c for m, k in a.items()}


def _to_univar(a: Poly, v: int) -> dict[int, Poly]:
    out: dict[int, Poly] = {}
    for m, c in a.items():
        rest = m[:v] + (0,) + m[v + 1 :]
        out.setdefault(m[v], {})[rest] = c
    return out


def _from_univar(u: dict[int, Poly], v: int) -> Poly:
    out: Poly = {}
    for e, p in u.items():
        for m, c in p.items():
            out[m[:v] + (e,) + m[v + 1 :]] = c
    return out


def _fold_pgcd(polys: Iterable[Poly]) -> Poly:
    g: Poly = {}
    for p in polys:
        g = _pgcd(g, p)
    return g


def _uprem(a: dict[int, Poly], b: dict[int, Poly]) -> dict[int, Poly]:
    """Pseudo-remainder of univariate-over-poly operands, content-insensitive."""
    db = max(b)
    lb = b[db]
    r = dict(a)
    while r:
        dr = max(r)
        if dr < db:
            break
        lr = r[dr]
        nr: dict[int, Poly] = {e: _pmul(p, lb) for e, p in r.items()}
        for e, p in b.items():
            t = e + dr - db
            nr[t] = _psub(nr.get(t, {}), _pmul(p, lr))
        r = {e: p for e, p in nr.items() if p}
    return r


def _unorm(u: dict[int, Poly]) -> dict[int, Poly]:
    """Strip the overall rational content of a univariate-over-poly operand.

    Scaling a pseudo-remainder by a nonzero rational never changes the gcd,
    and without this step the fraction coefficients of the remainder sequence
    grow exponentially with its depth (each _uprem pass multiplies through by
    a leading coefficient that is itself swollen).
    """
    num = 0
    den = 1
    for p in u.values():
        for c in p.values():
            num = math.gcd(num, abs(c.numerator))
            den = den * c.denominator // math.gcd(den, c.denominator)
    content = Fraction(num, den)
    if not content or content == 1:
        return u
    inv = 1 / content
    return {e: _pscale(p, inv) for e, p in u.items()}


def _pgcd(a: Poly, b: Poly) -> Poly:
    """Primitive positive gcd of the primitive parts (contents are ignored)."""
    if not a:
        return _primpos(b)
    if not b:
        return _primpos(a)
    width = len(next(iter(a)))
    v = -1
    for i in range(width - 1, -1, -1):
        if any(m[i] for m in a) or any(m[i] for m in b):
            v = i
            break
    if v < 0:  # both constant
        return {(0,) * width: Fraction(1)}
    if len(a) == 1 or len(b) == 1:
        # monomial fast path: per-variable minimum exponent across both operands
        mins = [min(min(m[i] for m in a), min(m[i] for m in b)) for i in range(width)]
        return {tuple(mins): Fraction(1)}
    ua, ub = _to_univar(a, v), _to_univar(b, v)
    ca, cb = _fold_pgcd(ua.values()), _fold_pgcd(ub.values())
    pa = _unorm({e: _pdivexact(p, ca) for e, p in ua.items()})
    pb = _unorm({e: _pdivexact(p, cb) for e, p in ub.items()})
    gamma = _pgcd(ca, cb)
    if max(pb) > max(pa):
        pa, pb = pb, pa
    # primitive pseudo-remainder sequence in the main variable
    while pb and max(pb) > 0:
        r = _uprem(pa, pb)
        if r:
            rc = _fold_pgcd(r.values())
            r = _unorm({e: _pdivexact(p, rc) for e, p in r.items()})
        pa, pb = pb, r
    pp = {(0,) * width: Fraction(1)} if pb else _from_univar(pa, v)
    return _primpos(_pmul(pp, gamma))


def _peval(a: Poly, vals: Sequence[Fraction]) -> Fraction:
    total = Fraction(0)
    for m, c in a.items():
        term = c
        for val, e in zip(vals, m):
            if e:
                term *= val**e
        total += term
    return total


# ---------------------------------------------------------------------------
# symbol table
# ---------------------------------------------------------------------------


class SymbolTable:
    """Ordered symbol universe shared by a family of expressions.

    Coordinates come first, formal parameters after them; the declared order
    fixes both the exponent-tuple layout and the monomial order.  Expressions
    from different tables must not be mixed.
    """

    __slots__ = ("names", "n_coordinates", "_index", "_zero", "_one")

    def __init__(self, coordinates: Sequence[str] = (), parameters: Sequence[str] = ()):
        names = tuple(coordinates) + tuple(parameters)
        seen = set()
        for name in names:
            if not name or not (name[0].isalpha() or name[0] == "_"):
                raise ValueError(f"invalid symbol name {name!r}")
            if not all(ch.isalnum() or ch == "_" for ch in name):
                raise ValueError(f"invalid symbol name {name!r}")
            if name in seen:
                raise ValueError(f"duplicate symbol name {name!r}")
            seen.add(name)
        self.names = names
        self.n_coordinates = len(tuple(coordinates))
        self._index = {name: i for i, name in enumerate(names)}
        unit = {(0,) * len(names): Fraction(1)}
        self._zero = Expr(self, {}, dict(unit), _checked=True)
        self._one = Expr(self, dict(unit), dict(unit), _checked=True)

    @property
    def coordinates(self) -> tuple[str, ...]:
        return self.names[: self.n_coordinates]

    @property
    def parameters(self) -> tuple[str, ...]:
        return self.names[self.n_coordinates :]

    def is_coordinate(self, name: str) -> bool:
        i = self._index.get(name)
        return i is not None and i < self.n_coordinates

    def index_of(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise UnknownSymbolError(f"unknown symbol {name!r}", 0) from None

    @property
    def zero(self) -> "Expr":
        return self._zero

    @property
    def one(self) -> "Expr":
        return self._one

    def constant(self, value: int | Fraction) -> "Expr":
        c = Fraction(value)
        if not c:
            return self._zero
        num = {(0,) * len(self.names): Fraction(c.numerator)}
        den = {(0,) * len(self.names): Fraction(c.denominator)}
        return Expr(self, num, den, _checked=True)

    def symbol(self, name: str) -> "Expr":
        i = self.index_of(name)
        mono = tuple(1 if j == i else 0 for j in range(len(self.names)))
        num = {mono: Fraction(1)}
        den = {(0,) * len(self.names): Fraction(1)}
        return Expr(self, num, den, _checked=True)

    def coerce(self, value: Coercible) -> "Expr":
        if isinstance(value, Expr):
            if value.table is not self:
                raise ValueError("expression belongs to a different symbol table")
            return value
        if isinstance(value, (int, Fraction)):
            return self.constant(value)
        if isinstance(value, str):
            return self.parse(value)
        raise TypeError(f"cannot interpret {type(value).__name__} as an expression")

    def parse(self, text: str) -> "Expr":
        return _Parser(self, text).parse()


# ---------------------------------------------------------------------------
# expressions
# ---------------------------------------------------------------------------


def _canon(table: SymbolTable, num: Poly, den: Poly) -> "Expr":
    if not den:
        raise ExprDivisionError("division by zero expression")
    width = len(table.names)
    unit_mono = (0,) * width
    if not num:
        return table.zero
    if len(den) > 1 or den.get(unit_mono) is None:
        g = _pgcd(num, den)
        if len(g) > 1 or g.get(unit_mono) is None:
            num = _pdivexact(num, g)
            den = _pdivexact(den, g)
    cn = _pcontent(num)
    cd = _pcontent(den)
    scale = cn / cd
    num = {m: c / cn * scale.numerator for m, c in num.items()}
    den = {m: c / cd * scale.denominator for m, c in den.items()}
    if _plead(den)[1] < 0:
        num = _pneg(num)
        den = _pneg(den)
    return Expr(table, num, den, _checked=True)


class Expr:
    """Immutable rational function in canonical form; see the module docstring."""

    __slots__ = ("table", "num", "den")

    def __init__(self, table: SymbolTable, num: Poly, den: Poly, *, _checked: bool = False):
        if not _checked:
            raise TypeError("use SymbolTable.parse/symbol/constant to build expressions")
        self.table = table
        self.num = num
        self.den = den

    # -- predicates ---------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.num

    def is_constant(self) -> bool:
        width = len(self.table.names)
        unit = (0,) * width
        return (not self.num or set(self.num) == {unit}) and set(self.den) == {unit}

    def constant_value(self) -> Fraction:
        if not self.is_constant():
            raise ExprError("expression is not constant")
        unit = (0,) * len(self.table.names)
        return self.num.get(unit, Fraction(0)) / self.den[unit]

    def symbols(self) -> frozenset[str]:
        used = set()
        for part in (self.num, self.den):
            for m in part:
                for i, e in enumerate(m):
                    if e:
                        used.add(self.table.names[i])
        return frozenset(used)

    # -- arithmetic ---------------------------------------------------------

    def _peer(self, other: Coercible) -> "Expr":
        return self.table.coerce(other)

    def __add__(self, other: Coercible) -> "Expr":
        o = self._peer(other)
        num = _padd(_pmul(self.num, o.den), _pmul(o.num, self.den))
        return _canon(self.table, num, _pmul(self.den, o.den))

    __radd__ = __add__

    def __neg__(self) -> "Expr":
        return Expr(self.table, _pneg(self.num), dict(self.den), _checked=True)

    def __sub__(self, other: Coercible) -> "Expr":
        return self + (-self._peer(other))

    def __rsub__(self, other: Coercible) -> "Expr":
        return self._peer(other) + (-self)

    def __mul__(self, other: Coercible) -> "Expr":
        o = self._peer(other)
        return _canon(self.table, _pmul(self.num, o.num), _pmul(self.den, o.den))

    __rmul__ = __mul__

    def __truediv__(self, other: Coercible) -> "Expr":
        o = self._peer(other)
        if o.is_zero():
            raise ExprDivisionError("division by zero expression")
        return _canon(self.table, _pmul(self.num, o.den), _pmul(self.den, o.num))

    def __rtruediv__(self, other: Coercible) -> "Expr":
        return self._peer(other) / self

    def __pow__(self, exponent: int) -> "Expr":
        if not isinstance(exponent, int):
            raise TypeError("exponent must be an integer")
        if exponent < 0:
            if self.is_zero():
                raise ExprDivisionError("zero cannot be raised to a negative power")
            base, k = self.table.one / self, -exponent
        else:
            base, k = self, exponent
        out = self.table.one
        for _ in range(k):
            out = out * base
        return out

    # -- comparisons --------------------------------------------------------

    def equals(self, other: Coercible) -> bool:
        """Exact value equality, decided by cross-multiplication."""
        o = self._peer(other)
        return not _psub(_pmul(self.num, o.den), _pmul(o.num, self.den))

    def __eq__(self, other: object):
        if isinstance(other, (Expr, int, Fraction, str)):
            try:
                return self.equals(other)  # type: ignore[arg-type]
            except (ValueError, ExprError):
                return NotImplemented
        return NotImplemented

    __hash__ = None  # type: ignore[assignment]  # value equality is not hash-stable

    # -- calculus and substitution ------------------------------------------

    def diff(self, coordinate: str) -> "Expr":
        """Partial derivative along a chart coordinate (quotient rule)."""
        if not self.table.is_coordinate(coordinate):
            raise NotACoordinateError(f"{coordinate!r} is not a coordinate")
        i = self.table.index_of(coordinate)
        num = _psub(
            _pmul(_pdiff(self.num, i), self.den),
            _pmul(self.num, _pdiff(self.den, i)),
        )
        return _canon(self.table, num, _pmul(self.den, self.den))

    def substitute(self, bindings: dict[str, Coercible]) -> "Expr":
        """Simultaneous substitution; raises if a denominator becomes zero."""
        table = self.table
        vals: list[Expr] = []
        for name in table.names:
            if name in bindings:
                vals.append(table.coerce(bindings[name]))
            else:
                vals.append(table.symbol(name))
        for name in bindings:
            table.index_of(name)  # reject unknown symbols
        num = _subst_poly(self.num, vals, table)
        den = _subst_poly(self.den, vals, table)
        if den.is_zero():
            raise ExprDivisionError("substitution makes a denominator vanish")
        return num / den

    def evaluate(self, point: dict[str, int | Fraction]) -> Fraction:
        """Exact numeric evaluation; every symbol that occurs must be bound."""
        table = self.table
        vals: list[Fraction] = []
        for name in table.names:
            if name in point:
                vals.append(Fraction(point[name]))
            else:
                vals.append(Fraction(0))
        missing = self.symbols() - set(point)
        if missing:
            raise ExprError(f"unbound symbols in evaluation: {sorted(missing)}")
        den = _peval(self.den, vals)
        if not den:
            raise ExprDivisionError("denominator vanishes at the evaluation point")
        return _peval(self.num, vals) / den

    # -- rendering ----------------------------------------------------------

    def __str__(self) -> str:
        num_s = _poly_str(self.table, self.num)
        unit = (0,) * len(self.table.names)
        if set(self.den) == {unit} and self.den[unit] == 1:
            return num_s
        den_s = _poly_str(self.table, self.den)
        if len(self.num) > 1:
            num_s = f"({num_s})"
        if not _is_atomic_denominator(self.den):
            den_s = f"({den_s})"
        return f"{num_s}/{den_s}"

    def __repr__(self) -> str:
        return f"Expr({self})"

    def factored_str(self) -> str:
        """Product-of-factors rendering used in reports; value-preserving.

        The numerator renders as a product chain (sums only inside factor
        parentheses), so only the denominator ever needs extra wrapping.
        """
        top = _factor_str(self.table, factor_poly(self.table, self.num))
        unit = (0,) * len(self.table.names)
        if set(self.den) == {unit} and self.den[unit] == 1:
            return top
        bottom = _factor_str(self.table, factor_poly(self.table, self.den))
        if not (_fully_wrapped(bottom) or _is_name_power(bottom) or bottom.isdigit()):
            bottom = f"({bottom})"
        return f"{top}/{bottom}"


def _subst_poly(p: Poly, vals: list[Expr], table: SymbolTable) -> Expr:
    total = table.zero
    for m, c in p.items():
        term = table.constant(c)
        for v, e in zip(vals, m):
            if e:
                term = term * v**e
        total = total + term
    return total


# ---------------------------------------------------------------------------
# printer
# ---------------------------------------------------------------------------


def _term_str(table: SymbolTable, mono: Mono, coeff: Fraction) -> str:
    # caller handles the sign; coeff arrives positive
    vars_part = [
        table.names[i] if e == 1 else f"{table.names[i]}^{e}"
        for i, e in enumerate(mono)
        if e
    ]
    if not vars_part:
        return str(coeff)
    if coeff != 1:
        vars_part.insert(0, str(coeff))
    return "*".join(vars_part)


def _poly_str(table: SymbolTable, p: Poly) -> str:
    if not p:
        return "0"
    parts: list[str] = []
    for m in sorted(p, reverse=True):
        c = p[m]
        if not parts:
            parts.append(("-" if c < 0 else "") + _term_str(table, m, abs(c)))
        else:
            parts.append((" - " if c < 0 else " + ") + _term_str(table, m, abs(c)))
    return "".join(parts)


def _is_atomic_denominator(den: Poly) -> bool:
    # bare integer, or a single variable power with unit coefficient
    if len(den) != 1:
        return False
    (m, c), = den.items()
    nvars = sum(1 for e in m if e)
    if nvars == 0:
        return True
    return nvars == 1 and c == 1


# ---------------------------------------------------------------------------
# factorisation (best effort: content, monomial part, rational roots)
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Factorization:
    """Product decomposition ``unit * prod(monomials) * prod(factors^mult)``.

    Factors are primitive integer polynomials with positive leading
    coefficient, stored as expression objects.  The decomposition is exact but
    not guaranteed irreducible beyond monomial extraction, recursive content
    splitting and rational-root extraction in single-variable parts.
    """

    unit: Fraction
    monomial_powers: tuple[tuple[str, int], ...]
    factors: tuple[tuple["Expr", int], ...]


def _divisors(n: int) -> Iterator[int]:
    n = abs(n)
    i = 1
    while i * i <= n:
        if n % i == 0:
            yield i
            if i != n // i:
                yield n // i
        i += 1


def _univar_root_split(table: SymbolTable, p: Poly, v: int) -> list[Poly]:
    """Split a primitive univariate polynomial into linear factors and a rest."""
    factors: list[Poly] = []
    width = len(table.names)

    def degree(q: Poly) -> int:
        return max(m[v] for m in q)

    def coeff(q: Poly, e: int) -> Fraction:
        mono = tuple(e if i == v else 0 for i in range(width))
        return q.get(mono, Fraction(0))

    rest = dict(p)
    while rest and degree(rest) >= 1:
        d = degree(rest)
        c0 = coeff(rest, 0)
        if not c0:  # monomial part was already removed by the caller
            break
        lead = coeff(rest, d)
        found = None
        candidates: set[Fraction] = set()
        for pnum in _divisors(int(c0)):
            for pden in _divisors(int(lead)):
                candidates.add(Fraction(pnum, pden))
                candidates.add(Fraction(-pnum, pden))
        for root in sorted(candidates):
            vals = [Fraction(0)] * width
            vals[v] = root
            if not _peval(rest, vals):
                found = root
                break
        if found is None:
            break
        # factor q*x - p for root p/q, primitive by construction
        lin: Poly = {
            tuple(1 if i == v else 0 for i in range(width)): Fraction(found.denominator),
        }
        if found.numerator:
            lin[(0,) * width] = Fraction(-found.numerator)
        factors.append(lin)
        rest = _primpos(_pdivexact(rest, lin))
    if rest and degree(rest) >= 1:
        factors.append(_primpos(rest))
    return factors


def _factor_primitive(table: SymbolTable, p: Poly) -> list[Poly]:
    """Recursive factor list for a primitive polynomial with no monomial part."""
    width = len(table.names)
    present = [i for i in range(width) if any(m[i] for m in p)]
    if not present:
        return []
    if len(present) == 1:
        return _univar_root_split(table, p, present[0])
    v = present[-1]
    u = _to_univar(p, v)
    cont = _fold_pgcd(u.values())
    out: list[Poly] = []
    unit_mono = (0,) * width
    if len(cont) > 1 or cont.get(unit_mono) is None:
        out.extend(_factor_primitive(table, cont))
        u = {e: _pdivexact(q, cont) for e, q in u.items()}
        p = _from_univar(u, v)
        present = [i for i in range(width) if any(m[i] for m in p)]
        if len(present) == 1:
            out.extend(_univar_root_split(table, p, present[0]))
            return out
    out.append(_primpos(p))
    return out


def factor_poly(table: SymbolTable, p: Poly) -> Factorization:
    """Factor a polynomial (given as a sparse dict); exactness is asserted."""
    if not p:
        return Factorization(Fraction(0), (), ())
    unit = _pcontent(p)
    if _plead(p)[1] < 0:
        unit = -unit
    pp = {m: c / unit for m, c in p.items()}
    width = len(table.names)
    mins = [min(m[i] for m in pp) for i in range(width)]
    if any(mins):
        pp = {tuple(e - mn for e, mn in zip(m, mins)): c for m, c in pp.items()}
    mono = tuple(
        (table.names[i], mins[i]) for i in range(width) if mins[i]
    )
    raw = _factor_primitive(table, pp)
    merged: list[tuple[Poly, int]] = []
    for f in raw:
        for i, (g, k) in enumerate(merged):
            if f == g:
                merged[i] = (g, k + 1)
                break
        else:
            merged.append((f, 1))
    unit_mono = (0,) * width
    one = {unit_mono: Fraction(1)}
    factors = tuple(
        (Expr(table, f, dict(one), _checked=True), k)
        for f, k in sorted(
            merged,
            key=lambda fk: (max(sum(m) for m in fk[0]), _factor_body(table, fk[0])),
        )
    )
    # exactness guard: recombine and compare
    check: Poly = {tuple(mins): unit}
    for f, k in merged:
        for _ in range(k):
            check = _pmul(check, f)
    if _psub(check, p):
        raise ExprError("internal factorisation mismatch")
    return Factorization(unit, mono, factors)


def factor(e: Expr) -> Factorization:
    """Factor the numerator of a polynomial expression (denominator must be 1)."""
    unit = (0,) * len(e.table.names)
    if set(e.den) != {unit} or e.den[unit] != 1:
        raise ExprError("factor() expects a polynomial expression")
    return factor_poly(e.table, e.num)


def _factor_body(table: SymbolTable, f: Poly) -> str:
    """Render one polynomial factor; linear one-variable factors constant-first."""
    width = len(table.names)
    present = [i for i in range(width) if any(m[i] for m in f)]
    if len(present) == 1 and max(sum(m) for m in f) == 1:
        v = present[0]
        c1 = f[tuple(1 if i == v else 0 for i in range(width))]
        c0 = f.get((0,) * width, Fraction(0))
        name = table.names[v] if c1 == 1 else f"{c1}*{table.names[v]}"
        if c0 > 0:
            return f"{c0}+{name}"
        if c0 < 0:
            return f"{name} - {-c0}"
        return name
    return _poly_str(table, f)


def _fully_wrapped(s: str) -> bool:
    if not (s.startswith("(") and s.endswith(")")):
        return False
    depth = 0
    for i, ch in enumerate(s):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
            if depth == 0:
                return i == len(s) - 1
    return False


def _is_name_power(s: str) -> bool:
    head, _, tail = s.partition("^")
    if not head or not (head[0].isalpha() or head[0] == "_"):
        return False
    if not all(ch.isalnum() or ch == "_" for ch in head):
        return False
    return tail == "" if "^" not in s else tail.isdigit()


def _factor_str(table: SymbolTable, fz: Factorization) -> str:
    if fz.unit == 0:
        return "0"
    pieces: list[str] = []
    for f, k in fz.factors:
        wrapped = f"({_factor_body(table, f.num)})"
        pieces.append(wrapped if k == 1 else f"{wrapped}^{k}")
    for name, k in fz.monomial_powers:
        pieces.append(name if k == 1 else f"{name}^{k}")
    mag = abs(fz.unit)
    sign = "-" if fz.unit < 0 else ""
    if not pieces:
        return f"{sign}{mag}"
    if mag != 1:
        pieces.insert(0, str(mag))
    return sign + "*".join(pieces)


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------


_Token = tuple  # (kind, text, position)


class _Parser:
    def __init__(self, table: SymbolTable, text: str):
        self.table = table
        self.text = text
        self.tokens = list(self._tokenize(text))
        self.pos = 0

    @staticmethod
    def _tokenize(text: str) -> Iterator[_Token]:
        i, n = 0, len(text)
        while i < n:
            ch = text[i]
            if ch.isspace():
                i += 1
                continue
            if ch.isdigit():
                j = i
                while j < n and text[j].isdigit():
                    j += 1
                yield ("int", text[i:j], i)
                i = j
                continue
            if ch.isalpha() or ch == "_":
                j = i
                while j < n and (text[j].isalnum() or text[j] == "_"):
                    j += 1
                yield ("ident", text[i:j], i)
                i = j
                continue
            if ch in "+-*/^()":
                yield (ch, ch, i)
                i += 1
                continue
            raise ExprSyntaxError(f"unexpected character {ch!r}", i)
        yield ("end", "", n)

    def _peek(self) -> _Token:
        return self.tokens[self.pos]

    def _next(self) -> _Token:
        t = self.tokens[self.pos]
        self.pos += 1
        return t

    def parse(self) -> Expr:
        e = self._expr()
        kind, text, pos = self._peek()
        if kind != "end":
            raise ExprSyntaxError(f"unexpected {text!r}", pos)
        return e

    def _expr(self) -> Expr:
        e = self._term()
        while self._peek()[0] in ("+", "-"):
            op = self._next()[0]
            t = self._term()
            e = e + t if op == "+" else e - t
        return e

    def _term(self) -> Expr:
        e = self._factor()
        while self._peek()[0] in ("*", "/"):
            op, _, pos = self._next()
            f = self._factor()
            if op == "*":
                e = e * f
            else:
                if f.is_zero():
                    raise ExprDivisionError(f"division by zero (at position {pos})")
                e = e / f
        return e

    def _factor(self) -> Expr:
        if self._peek()[0] == "-":
            self._next()
            return -self._factor()
        return self._power()

    def _power(self) -> Expr:
        base = self._atom()
        if self._peek()[0] != "^":
            return base
        self._next()
        sign = 1
        if self._peek()[0] == "-":
            self._next()
            sign = -1
        kind, text, pos = self._peek()
        if kind != "int":
            raise ExprSyntaxError("exponent must be an integer literal", pos)
        self._next()
        k = sign * int(text)
        if k < 0 and base.is_zero():
            raise ExprDivisionError(f"division by zero (at position {pos})")
        return base**k

    def _atom(self) -> Expr:
        kind, text, pos = self._next()
        if kind == "int":
            return self.table.constant(int(text))
        if kind == "ident":
            if text not in self.table._index:
                raise UnknownSymbolError(f"unknown symbol {text!r}", pos)
            return self.table.symbol(text)
        if kind == "(":
            e = self._expr()
            kind2, _, pos2 = self._next()
            if kind2 != ")":
                raise ExprSyntaxError("expected ')'", pos2)
            return e
        raise ExprSyntaxError(f"unexpected {text or 'end of input'!r}", pos)
