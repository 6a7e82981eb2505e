"""Exact sparse multivariate polynomial arithmetic over the rationals.

A polynomial is a dict mapping sparse monomials to nonzero rational
coefficients.  Monomials are tuples of (variable_index, exponent) pairs,
sorted by index, with no zero exponents stored; the empty tuple is the
constant monomial.  Coefficients are Python ints when integral and
``fractions.Fraction`` otherwise, so identity testing is exact and the
common integer case stays fast.

Every polynomial refers to a :class:`VarTable`, which fixes the variable
order and assigns each variable a nonnegative integer weight (its
eigenvalue exponent under the background torus action).  Serialization is
deterministic: terms are emitted in descending graded-lexicographic order,
graded by total weighted degree with ties broken lexicographically in the
table's variable order.

Two polynomials over different tables may be combined as long as shared
names carry equal weights; the tables are merged by name.
"""

from __future__ import annotations

import json
import re
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

Mono = tuple[tuple[int, int], ...]


class PolyError(Exception):
    """Base class for polynomial-layer errors."""


class WeightConflictError(PolyError):
    """Same variable name declared with two different weights."""


class NonLinearError(PolyError):
    """solve_linear target occurs nonlinearly or with a non-constant coefficient."""


class AbsentVariableError(PolyError):
    """solve_linear target does not occur in the expression."""


class ParseError(PolyError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


def _norm(c):
    """Collapse integral Fractions to int; keep everything else as is."""
    if type(c) is Fraction and c.denominator == 1:
        return c.numerator
    return c


def _coeff_str(c) -> str:
    c = _norm(c)
    if isinstance(c, int):
        return str(c)
    return f"{c.numerator}/{c.denominator}"


_TABLE_REGISTRY: dict[tuple, "VarTable"] = {}


class VarTable:
    """Ordered variable names with weights.  Interned: equal contents share identity."""

    __slots__ = ("names", "weights", "_index")

    def __new__(cls, names: Sequence[str], weights: Sequence[int]):
        names = tuple(names)
        weights = tuple(int(w) for w in weights)
        if len(names) != len(weights):
            raise ValueError("names and weights must have equal length")
        if len(set(names)) != len(names):
            raise ValueError(f"duplicate variable names in {names}")
        if any(w < 0 for w in weights):
            raise ValueError("weights must be nonnegative")
        key = (names, weights)
        cached = _TABLE_REGISTRY.get(key)
        if cached is not None:
            return cached
        self = object.__new__(cls)
        self.names = names
        self.weights = weights
        self._index = {n: i for i, n in enumerate(names)}
        _TABLE_REGISTRY[key] = self
        return self

    def index_of(self, name: str) -> int:
        return self._index[name]

    def __contains__(self, name: str) -> bool:
        return name in self._index

    def weight_of(self, name: str) -> int:
        return self.weights[self._index[name]]

    def __len__(self) -> int:
        return len(self.names)

    def __repr__(self) -> str:
        inner = ", ".join(f"{n}:{w}" for n, w in zip(self.names, self.weights))
        return f"VarTable({inner})"

    def merged(self, other: "VarTable") -> "VarTable":
        """Union of the two tables: self's order first, then other's new names."""
        if other is self:
            return self
        key = (id(self), id(other))
        cached = _MERGE_CACHE.get(key)
        if cached is not None:
            return cached
        names = list(self.names)
        weights = list(self.weights)
        for n, w in zip(other.names, other.weights):
            i = self._index.get(n)
            if i is None:
                names.append(n)
                weights.append(w)
            elif self.weights[i] != w:
                raise WeightConflictError(
                    f"variable {n!r} has weight {self.weights[i]} here and {w} there"
                )
        merged = VarTable(names, weights)
        _MERGE_CACHE[key] = merged
        return merged

    def var(self, name: str, exp: int = 1) -> "Polynomial":
        i = self._index[name]
        if exp == 0:
            return Polynomial(self, {(): 1})
        return Polynomial(self, {((i, exp),): 1})

    def const(self, c) -> "Polynomial":
        c = _norm(Fraction(c) if not isinstance(c, (int, Fraction)) else c)
        if c == 0:
            return Polynomial(self, {})
        return Polynomial(self, {(): c})

    def zero(self) -> "Polynomial":
        return Polynomial(self, {})

    def mono_weight(self, m: Mono) -> int:
        w = self.weights
        return sum(e * w[i] for i, e in m)


_MERGE_CACHE: dict[tuple[int, int], VarTable] = {}


def _mono_mul(a: Mono, b: Mono) -> Mono:
    if not a:
        return b
    if not b:
        return a
    out = []
    i = j = 0
    na, nb = len(a), len(b)
    while i < na and j < nb:
        va, ea = a[i]
        vb, eb = b[j]
        if va == vb:
            out.append((va, ea + eb))
            i += 1
            j += 1
        elif va < vb:
            out.append(a[i])
            i += 1
        else:
            out.append(b[j])
            j += 1
    out.extend(a[i:])
    out.extend(b[j:])
    return tuple(out)


def _remap(m: Mono, mapping: Sequence[int]) -> Mono:
    return tuple(sorted((mapping[i], e) for i, e in m))


class Polynomial:
    """Immutable sparse polynomial; all operations return new values."""

    __slots__ = ("table", "terms")

    def __init__(self, table: VarTable, terms: dict):
        self.table = table
        self.terms = terms

    # -- basic structure ------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def term_count(self) -> int:
        return len(self.terms)

    def variables(self) -> set[str]:
        names = self.table.names
        return {names[i] for m in self.terms for i, _ in m}

    def contains_var(self, name: str) -> bool:
        idx = self.table._index.get(name)
        if idx is None:
            return False
        return any(i == idx for m in self.terms for i, _ in m)

    def constant_value(self):
        """The coefficient of the constant monomial."""
        return self.terms.get((), 0)

    def compact(self) -> "Polynomial":
        """Rebuild over a table containing only the variables actually used."""
        used = sorted({i for m in self.terms for i, _ in m})
        if len(used) == len(self.table):
            return self
        names = [self.table.names[i] for i in used]
        weights = [self.table.weights[i] for i in used]
        table = VarTable(names, weights)
        back = {i: table.index_of(self.table.names[i]) for i in used}
        return Polynomial(table, {_remap(m, back): c for m, c in self.terms.items()})

    def to_table(self, table: VarTable) -> "Polynomial":
        if table is self.table:
            return self
        merged = table.merged(self.table)
        if merged is self.table:
            return self
        mapping = [merged.index_of(n) for n in self.table.names]
        return Polynomial(merged, {_remap(m, mapping): c for m, c in self.terms.items()})

    def _align(self, other: "Polynomial") -> tuple["Polynomial", "Polynomial"]:
        if self.table is other.table:
            return self, other
        merged = self.table.merged(other.table)
        return self.to_table(merged), other.to_table(merged)

    def _coerce(self, other) -> "Polynomial | None":
        if isinstance(other, Polynomial):
            return other
        if isinstance(other, (int, Fraction)):
            return self.table.const(other)
        return None

    # -- arithmetic ------------------------------------------------------

    def __add__(self, other) -> "Polynomial":
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        a, b = self._align(other)
        if not a.terms:
            return b
        if not b.terms:
            return a
        out = dict(a.terms)
        for m, c in b.terms.items():
            s = out.get(m, 0) + c
            if s:
                out[m] = _norm(s)
            else:
                out.pop(m, None)
        return Polynomial(a.table, out)

    __radd__ = __add__

    def __neg__(self) -> "Polynomial":
        return Polynomial(self.table, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other) -> "Polynomial":
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> "Polynomial":
        return (-self) + other

    def __mul__(self, other) -> "Polynomial":
        if isinstance(other, (int, Fraction)):
            if other == 0:
                return Polynomial(self.table, {})
            other = _norm(other)
            return Polynomial(self.table, {m: _norm(c * other) for m, c in self.terms.items()})
        if not isinstance(other, Polynomial):
            return NotImplemented
        a, b = self._align(other)
        if not a.terms or not b.terms:
            return Polynomial(a.table, {})
        small, big = (a.terms, b.terms) if len(a.terms) <= len(b.terms) else (b.terms, a.terms)
        out: dict = {}
        get = out.get
        for ms, cs in small.items():
            for mb, cb in big.items():
                m = _mono_mul(ms, mb)
                prev = get(m)
                out[m] = cs * cb if prev is None else prev + cs * cb
        return Polynomial(a.table, {m: _norm(c) for m, c in out.items() if c})

    __rmul__ = __mul__

    def __truediv__(self, other) -> "Polynomial":
        if isinstance(other, (int, Fraction)):
            if other == 0:
                raise ZeroDivisionError("division of polynomial by zero scalar")
            return self * (Fraction(1) / Fraction(other))
        return NotImplemented

    def __pow__(self, n: int) -> "Polynomial":
        if n < 0:
            raise ValueError("negative power of a polynomial")
        result = self.table.const(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def __eq__(self, other) -> bool:
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        a, b = self._align(other)
        return a.terms == b.terms

    __hash__ = None  # mutable dict inside; equality is structural

    # -- weights and degrees ----------------------------------------------

    def mono_weight(self, m: Mono) -> int:
        return self.table.mono_weight(m)

    def homogeneous_weight(self) -> "int | None":
        """Common weighted degree of all terms, or None if mixed or zero.

        The zero polynomial has every weight; callers distinguish it via
        ``is_zero``.
        """
        w = None
        for m in self.terms:
            mw = self.table.mono_weight(m)
            if w is None:
                w = mw
            elif w != mw:
                return None
        return w

    def weight_parts(self) -> dict[int, "Polynomial"]:
        parts: dict[int, dict] = {}
        for m, c in self.terms.items():
            parts.setdefault(self.table.mono_weight(m), {})[m] = c
        return {w: Polynomial(self.table, t) for w, t in sorted(parts.items())}

    def total_degree(self) -> int:
        if not self.terms:
            return 0
        return max(sum(e for _, e in m) for m in self.terms)

    def degree_in(self, name: str) -> int:
        idx = self.table._index.get(name)
        if idx is None:
            return 0
        best = 0
        for m in self.terms:
            for i, e in m:
                if i == idx and e > best:
                    best = e
        return best

    # -- extraction -------------------------------------------------------

    def coeffs_in(self, name: str) -> dict[int, "Polynomial"]:
        """View as a univariate polynomial in ``name``: degree -> coefficient."""
        idx = self.table.index_of(name)
        out: dict[int, dict] = {}
        for m, c in self.terms.items():
            e = 0
            rest = []
            for i, ee in m:
                if i == idx:
                    e = ee
                else:
                    rest.append((i, ee))
            out.setdefault(e, {})[tuple(rest)] = c
        return {e: Polynomial(self.table, t) for e, t in out.items()}

    def coefficients_over(self, names: Iterable[str]) -> dict[Mono, "Polynomial"]:
        """Group terms by their monomial part in ``names``.

        Keys are monomials over the given variables (indices in this
        polynomial's table); values are the cofactor polynomials in the
        remaining variables.
        """
        idxs = frozenset(self.table.index_of(n) for n in names)
        out: dict[Mono, dict] = {}
        for m, c in self.terms.items():
            inside = []
            outside = []
            for i, e in m:
                (inside if i in idxs else outside).append((i, e))
            out.setdefault(tuple(inside), {})[tuple(outside)] = c
        return {m: Polynomial(self.table, t) for m, t in out.items()}

    def coeff_of(self, mono: Mapping[str, int], within: Iterable[str]) -> "Polynomial":
        """Coefficient of the exact monomial ``mono`` when viewed over ``within``.

        Variables of ``within`` absent from ``mono`` must appear with
        exponent zero; returns 0 when the monomial is absent.
        """
        within = set(within)
        if any(v not in within for v in mono):
            raise ValueError("monomial involves variables outside the given subset")
        target = tuple(sorted((self.table.index_of(v), e) for v, e in mono.items() if e))
        idxs = frozenset(self.table.index_of(n) for n in within)
        out: dict = {}
        for m, c in self.terms.items():
            inside = tuple((i, e) for i, e in m if i in idxs)
            if inside == target:
                out[tuple((i, e) for i, e in m if i not in idxs)] = c
        return Polynomial(self.table, out)

    # -- substitution ------------------------------------------------------

    def substitute(self, rules: Mapping[str, "Polynomial | int | Fraction"],
                   max_total_degree: "int | None" = None) -> "Polynomial":
        """Simultaneous substitution; variables without rules pass through.

        With ``max_total_degree`` every intermediate product is truncated
        to that total degree, which keeps jet computations polynomial-sized.
        """
        live = {n: r for n, r in rules.items() if n in self.table}
        if not live:
            return self if max_total_degree is None else self._trunc(max_total_degree)
        table = self.table
        for r in live.values():
            if isinstance(r, Polynomial):
                table = table.merged(r.table)
        ruled: dict[int, Polynomial] = {}
        for n, r in live.items():
            if not isinstance(r, Polynomial):
                r = table.const(r)
            ruled[self.table.index_of(n)] = r.to_table(table)
        mapping = [table.index_of(n) for n in self.table.names]
        one = table.const(1)
        bound = max_total_degree

        def trunc(p: Polynomial) -> Polynomial:
            if bound is None:
                return p
            return p._trunc(bound)

        pow_cache: dict[tuple[int, int], Polynomial] = {}

        def rpow(i: int, e: int) -> Polynomial:
            p = pow_cache.get((i, e))
            if p is None:
                if bound is None:
                    p = ruled[i] ** e
                elif e == 1:
                    p = trunc(ruled[i])
                else:
                    p = rpow(i, e - 1).mul_truncated(ruled[i], bound)
                pow_cache[(i, e)] = p
            return p

        prod_cache: dict[Mono, Polynomial] = {(): one}
        acc: dict = {}
        for m, c in self.terms.items():
            kept = []
            repl = []
            for i, e in m:
                if i in ruled:
                    repl.append((i, e))
                else:
                    kept.append((mapping[i], e))
            key = tuple(repl)
            prod = prod_cache.get(key)
            if prod is None:
                prod = one
                for i, e in repl:
                    prod = prod * rpow(i, e) if bound is None else prod.mul_truncated(rpow(i, e), bound)
                prod_cache[key] = prod
            kept_m = tuple(sorted(kept))
            kept_deg = sum(e for _, e in kept_m)
            for pm, pc in prod.terms.items():
                if bound is not None and kept_deg + sum(e for _, e in pm) > bound:
                    continue
                mm = _mono_mul(kept_m, pm)
                s = acc.get(mm, 0) + c * pc
                if s:
                    acc[mm] = s
                else:
                    acc.pop(mm, None)
        return Polynomial(table, {m: _norm(c) for m, c in acc.items() if c})

    def _trunc(self, bound: int) -> "Polynomial":
        return Polynomial(self.table,
                          {m: c for m, c in self.terms.items()
                           if sum(e for _, e in m) <= bound})

    def mul_truncated(self, other: "Polynomial", bound: int) -> "Polynomial":
        """Product with every monomial of total degree above ``bound`` dropped.

        Skips doomed pairs before forming them, which is what makes jet
        arithmetic cheap.
        """
        a, b = self._align(other)
        if not a.terms or not b.terms:
            return Polynomial(a.table, {})
        if len(a.terms) > len(b.terms):
            a, b = b, a
        bdeg = sorted(((sum(e for _, e in m), m, c) for m, c in b.terms.items()))
        out: dict = {}
        get = out.get
        for ma, ca in a.terms.items():
            rem = bound - sum(e for _, e in ma)
            if rem < 0:
                continue
            for db, mb, cb in bdeg:
                if db > rem:
                    break
                m = _mono_mul(ma, mb)
                prev = get(m)
                out[m] = ca * cb if prev is None else prev + ca * cb
        return Polynomial(a.table, {m: _norm(c) for m, c in out.items() if c})

    def evaluate(self, values: Mapping[str, "int | Fraction"]) -> Fraction:
        missing = self.variables() - set(values)
        if missing:
            raise ValueError(f"no values for variables {sorted(missing)}")
        names = self.table.names
        total = Fraction(0)
        for m, c in self.terms.items():
            term = Fraction(c)
            for i, e in m:
                term *= Fraction(values[names[i]]) ** e
            total += term
        return total

    def derivative(self, name: str) -> "Polynomial":
        idx = self.table.index_of(name)
        out: dict = {}
        for m, c in self.terms.items():
            for pos, (i, e) in enumerate(m):
                if i == idx:
                    rest = m[:pos] + ((i, e - 1),) + m[pos + 1:] if e > 1 else m[:pos] + m[pos + 1:]
                    s = out.get(rest, 0) + c * e
                    if s:
                        out[rest] = _norm(s)
                    else:
                        out.pop(rest, None)
                    break
        return Polynomial(self.table, out)

    # -- solving -----------------------------------------------------------

    def solve_linear(self, name: str) -> "Polynomial":
        """Solve ``self == 0`` for ``name``.

        Requires self = c*name + r with c a nonzero rational constant and r
        free of the variable; returns -r/c.
        """
        idx = self.table.index_of(name)
        c = None
        rest: dict = {}
        for m, coeff in self.terms.items():
            exps = dict(m)
            e = exps.get(idx, 0)
            if e == 0:
                rest[m] = coeff
            elif e >= 2 or len(m) > 1:
                raise NonLinearError(
                    f"{name} appears with exponent >= 2 or a non-constant coefficient"
                )
            else:
                c = coeff
        if c is None:
            raise AbsentVariableError(f"{name} does not appear in the expression")
        inv = Fraction(-1, 1) / Fraction(c)
        return Polynomial(self.table, {m: _norm(co * inv) for m, co in rest.items()})

    # -- ordering and serialization -----------------------------------------

    def _glex_key(self, m: Mono):
        sentinel = len(self.table)
        return (-self.table.mono_weight(m), tuple((i, -e) for i, e in m) + ((sentinel, 0),))

    def sorted_terms(self) -> list[tuple[Mono, "int | Fraction"]]:
        """Terms in descending graded-lex order (weighted grading)."""
        return sorted(self.terms.items(), key=lambda item: self._glex_key(item[0]))

    def leading_term(self) -> tuple[Mono, "int | Fraction"]:
        if not self.terms:
            raise ValueError("zero polynomial has no leading term")
        m = min(self.terms, key=self._glex_key)
        return m, self.terms[m]

    def serialize(self) -> str:
        if not self.terms:
            return "0"
        names = self.table.names
        parts = []
        for k, (m, c) in enumerate(self.sorted_terms()):
            c = _norm(c)
            neg = c < 0
            mag = -c if neg else c
            factors = [f"{names[i]}^{e}" if e > 1 else names[i] for i, e in m]
            if not factors or mag != 1:
                factors.insert(0, _coeff_str(mag))
            body = "*".join(factors)
            if k == 0:
                parts.append(f"-{body}" if neg else body)
            else:
                parts.append(f"{' - ' if neg else ' + '}{body}")
        return "".join(parts)

    def __repr__(self) -> str:
        s = self.serialize()
        return s if len(s) <= 120 else f"<Polynomial with {len(self.terms)} terms>"

    def to_json(self) -> dict:
        return {
            "vars": list(self.table.names),
            "weights": list(self.table.weights),
            "terms": [
                {"m": {self.table.names[i]: e for i, e in m}, "c": _coeff_str(c)}
                for m, c in self.sorted_terms()
            ],
        }

    @staticmethod
    def from_json(data: dict) -> "Polynomial":
        table = VarTable(data["vars"], data["weights"])
        terms: dict = {}
        for t in data["terms"]:
            m = tuple(sorted((table.index_of(v), int(e)) for v, e in t["m"].items() if int(e)))
            terms[m] = _norm(Fraction(t["c"]))
        return Polynomial(table, terms)


# -- parsing ----------------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(?P<num>\d+)|(?P<name>[A-Za-z_][A-Za-z_0-9]*)|(?P<op>[-+*/^()]))")


def _tokenize(text: str):
    pos = 0
    out = []
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None or m.lastgroup is None:
            if text[pos:].strip() == "":
                break
            raise ParseError(f"unexpected character {text[pos:pos+1]!r}", pos)
        kind = m.lastgroup
        out.append((kind, m.group(kind), m.start(kind)))
        pos = m.end()
    return out


def parse(text: str, table: VarTable) -> Polynomial:
    """Parse the canonical text format back into a polynomial.

    Grammar: signed terms joined by + / -, each term a '*'-separated list
    of an optional rational coefficient p or p/q and variable powers
    name or name^e.  Round-trips with :meth:`Polynomial.serialize`.
    """
    tokens = _tokenize(text)
    n = len(tokens)
    if n == 0:
        raise ParseError("empty input", 0)
    acc: dict = {}
    i = 0
    first = True
    while i < n:
        sign = 1
        kind, val, pos = tokens[i]
        if kind == "op" and val in "+-":
            sign = -1 if val == "-" else 1
            i += 1
        elif not first:
            raise ParseError(f"expected '+' or '-', got {val!r}", pos)
        first = False
        if i >= n:
            raise ParseError("dangling sign", pos)
        coeff = Fraction(sign)
        mono: dict[int, int] = {}
        saw_factor = False
        while True:
            kind, val, pos = tokens[i]
            if kind == "num":
                num = int(val)
                den = 1
                if i + 2 < n and tokens[i + 1][:2] == ("op", "/") and tokens[i + 2][0] == "num":
                    den = int(tokens[i + 2][1])
                    if den == 0:
                        raise ParseError("zero denominator", tokens[i + 2][2])
                    i += 2
                coeff *= Fraction(num, den)
                i += 1
            elif kind == "name":
                if val not in table:
                    raise ParseError(f"unknown variable {val!r}", pos)
                idx = table.index_of(val)
                exp = 1
                if i + 2 < n and tokens[i + 1][:2] == ("op", "^") and tokens[i + 2][0] == "num":
                    exp = int(tokens[i + 2][1])
                    i += 2
                elif i + 1 < n and tokens[i + 1][:2] == ("op", "^"):
                    raise ParseError("expected integer exponent after '^'", tokens[i + 1][2])
                mono[idx] = mono.get(idx, 0) + exp
                i += 1
            else:
                raise ParseError(f"expected coefficient or variable, got {val!r}", pos)
            saw_factor = True
            if i < n and tokens[i][:2] == ("op", "*"):
                i += 1
                if i >= n:
                    raise ParseError("dangling '*'", tokens[i - 1][2])
                continue
            break
        if not saw_factor:
            raise ParseError("empty term", pos)
        key = tuple(sorted((v, e) for v, e in mono.items() if e))
        s = acc.get(key, 0) + coeff
        if s:
            acc[key] = _norm(s)
        else:
            acc.pop(key, None)
        if i < n and tokens[i][0] != "op":
            raise ParseError(f"expected operator, got {tokens[i][1]!r}", tokens[i][2])
    return Polynomial(table, acc)


def poly_json_dumps(p: Polynomial) -> str:
    return json.dumps(p.to_json(), sort_keys=True)


# -- univariate-style helpers -------------------------------------------------


def univar_divmod(num: Polynomial, den: Polynomial, name: str) -> tuple[Polynomial, Polynomial]:
    """Long division in the variable ``name``.

    The divisor's leading coefficient (in ``name``) must be a nonzero
    rational constant; coefficients from the other variables ride along
    exactly.
    """
    num, den = num._align(den)
    dc = den.coeffs_in(name)
    d = max(dc)
    lead = dc[d]
    if lead.variables():
        raise ValueError(f"divisor leading coefficient in {name} is not constant")
    lc = Fraction(lead.constant_value())
    if lc == 0:
        raise ZeroDivisionError("zero divisor")
    table = num.table
    quot = table.zero()
    rem = num
    var = table.var(name)
    while not rem.is_zero:
        rc = rem.coeffs_in(name)
        e = max(rc)
        if e < d:
            break
        piece = rc[e] * (Fraction(1) / lc)
        shift = var ** (e - d)
        q = piece * shift
        quot = quot + q
        rem = rem - q * den
    return quot, rem


def exact_div(num: Polynomial, den: Polynomial, name: str) -> Polynomial:
    quot, rem = univar_divmod(num, den, name)
    if not rem.is_zero:
        raise ValueError(f"division by {den.serialize()} in {name} leaves remainder")
    return quot
