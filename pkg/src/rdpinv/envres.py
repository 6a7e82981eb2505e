"""Preferred-versal-form coefficients for the three large E types.

The pipeline mirrors the anti-pluricanonical construction: a good
generating set Xb, Yb, Zb, Wb of weighted polynomials in C[s][x,y,z] maps
the plane onto the family; the defining polynomial of the image, written
with undetermined coefficients, is pinned down by solve-lists; a
triangular change of generators (the psi rules) removes the forbidden
monomials, and a final solve-list expansion recovers the versal-form
coefficients eps_i as exact polynomials in s_1..s_n.

For n = 7, 8 the versal stage sets z = 0 before expanding (the relevant
extraction monomials never involve z), which shrinks the computation by
orders of magnitude; the E8 barred stage is z-free as well.

All heavy expansions stream through the content-addressed rule cache.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Optional

from .poly import Polynomial, VarTable, parse
from .solvelist import RuleCache, RuleSet, SolveList, get_cache

S_MAX = {6: 6, 7: 7, 8: 8}
XYZW_WEIGHTS = {6: (9, 7, 6, 3), 7: (15, 9, 7, 3), 8: (24, 16, 9, 3)}

_BAR_COEFFS = {
    6: [("phib1", 1), ("phib2", 2), ("ebar2", 2), ("phib3p", 3), ("phib3pp", 3),
        ("phib4", 4), ("ebar5", 5), ("phib6", 6), ("ebar6", 6), ("ebar8", 8),
        ("ebar9", 9), ("ebar12", 12)],
    7: [("ebar2", 2), ("phib2", 2), ("phib4", 4), ("ebar6", 6), ("phib6", 6),
        ("ebar8", 8), ("ebar10", 10), ("ebar12", 12), ("ebar14", 14), ("ebar18", 18)],
    8: [("ebar2", 2), ("phib4", 4), ("phib6", 6), ("ebar8", 8), ("phib10", 10),
        ("ebar12", 12), ("ebar14", 14), ("ebar18", 18), ("ebar20", 20),
        ("ebar24", 24), ("ebar30", 30)],
}

_PSI_COEFFS = {
    6: [("psi1", 1), ("psi2", 2), ("psi3p", 3), ("psi3pp", 3), ("psi4", 4), ("psi6", 6)],
    7: [("psi2", 2), ("psi4", 4), ("psi6", 6)],
    8: [("psi4", 4), ("psi6", 6), ("psi10", 10)],
}

EPS_WEIGHTS = {
    6: (2, 5, 6, 8, 9, 12),
    7: (2, 6, 8, 10, 12, 14, 18),
    8: (2, 8, 12, 14, 18, 20, 24, 30),
}


def eps_names(n: int) -> list[str]:
    return [f"eps{w}" for w in EPS_WEIGHTS[n]]


@lru_cache(maxsize=None)
def pipeline_table(n: int) -> VarTable:
    names = ["x", "y", "z"]
    weights = [1, 3, 0]
    for i in range(1, n + 1):
        names.append(f"s{i}")
        weights.append(i)
    wx, wy, wz, ww = XYZW_WEIGHTS[n]
    for suffix in ("b", ""):
        names += [f"X{suffix}", f"Y{suffix}", f"Z{suffix}", f"W{suffix}"]
        weights += [wx, wy, wz, ww]
    for name, w in _BAR_COEFFS[n] + _PSI_COEFFS[n]:
        names.append(name)
        weights.append(w)
    for w in EPS_WEIGHTS[n]:
        names.append(f"eps{w}")
        weights.append(w)
    names.append("U")
    weights.append(1)
    return VarTable(names, weights)


def _p(n: int, text: str) -> Polynomial:
    return parse(text, pipeline_table(n))


def psi_n(n: int, table: Optional[VarTable] = None) -> Polynomial:
    """Monic degree-n polynomial in U whose roots are the functionals."""
    table = table or pipeline_table(n)
    U = table.var("U")
    out = U ** n
    for i in range(1, n + 1):
        out = out + (-1) ** i * table.var(f"s{i}") * U ** (n - i)
    return out


def eta_star(p: Polynomial, n: int) -> Polynomial:
    """Pull back along the cuspidal-cubic parametrization x, y, z = U, U^3, 1."""
    table = pipeline_table(n)
    U = table.var("U")
    return p.substitute({"x": U, "y": U ** 3, "z": table.const(1)})


def jacobian3(fy: Polynomial, fz: Polynomial, fw: Polynomial) -> Polynomial:
    rows = [[f.derivative(v) for v in ("x", "y", "z")] for f in (fy, fz, fw)]
    return (rows[0][0] * (rows[1][1] * rows[2][2] - rows[1][2] * rows[2][1])
            - rows[0][1] * (rows[1][0] * rows[2][2] - rows[1][2] * rows[2][0])
            + rows[0][2] * (rows[1][0] * rows[2][1] - rows[1][1] * rows[2][0]))


# -- good generating sets -------------------------------------------------------

_E6_ZB = ("y^2*z - s1*x^2*y + s2*x*y*z - s3*x^3 + s4*x^2*z - s5*x*z^2 + s6*z^3")
_E6_YB = ("x*y^2 - s1*y^2*z + s2*x^2*y - s3*x*y*z + s4*x^3 - s5*x^2*z + s6*x*z^2")
_E6_XB = ("y^3 + s2*x*y^2 - s1^2*x*y^2 - s3*y^2*z + s1*s2*y^2*z + s4*x^2*y"
          " - s1*s3*x^2*y - s5*x*y*z + s1*s4*x*y*z + s6*x^3 - s1*s5*x^3 + s1*s6*x^2*z")

_E7_ZB = ("x*y^2 - s1*y^2*z + s2*x^2*y - s3*x*y*z + s4*x^3 - s5*x^2*z + s6*x*z^2"
          " - s7*z^3")
_E7_YB = ("4*y^3 + 4*s2*x*y^2 - 3*s1^2*x*y^2 - 4*s3*y^2*z + 4*s1*s2*y^2*z"
          " - s1^3*y^2*z + 4*s4*x^2*y - 4*s1*s3*x^2*y + s1^2*s2*x^2*y"
          " - 4*s5*x*y*z + 4*s1*s4*x*y*z - s1^2*s3*x*y*z + 4*s6*x^3 - 4*s1*s5*x^3"
          " + s1^2*s4*x^3 - 4*s7*x^2*z + 4*s1*s6*x^2*z - s1^2*s5*x^2*z"
          " - 4*s1*s7*x*z^2 + s1^2*s6*x*z^2 - s1^2*s7*z^3")

_E8_ZB = ("y^3 + s2*x*y^2 - s1^2*x*y^2 - s3*y^2*z + s1*s2*y^2*z + s4*x^2*y"
          " - s1*s3*x^2*y - s5*x*y*z + s1*s4*x*y*z + s6*x^3 - s1*s5*x^3"
          " - s7*x^2*z + s1*s6*x^2*z + s8*x*z^2 - s1*s7*x*z^2 + s1*s8*z^3")


@dataclass(frozen=True)
class GoodGenSet:
    n: int
    Xb: Polynomial
    Yb: Polynomial
    Zb: Polynomial
    Wb: Polynomial

    def as_rules(self) -> RuleSet:
        return RuleSet.of([("Xb", self.Xb), ("Yb", self.Yb),
                           ("Zb", self.Zb), ("Wb", self.Wb)])


# scalar unknowns of the weight-16 sextic live on partitions of s-weights
def _weight_monomials(n: int, w: int) -> list[tuple[int, ...]]:
    """Exponent vectors (e1..en) with sum i*e_i = w."""
    out: list[tuple[int, ...]] = []

    def rec(i: int, remaining: int, acc: list[int]):
        if i > n:
            if remaining == 0:
                out.append(tuple(acc))
            return
        max_e = remaining // i
        for e in range(max_e + 1):
            rec(i + 1, remaining - i * e, acc + [e])

    rec(1, w, [])
    return out


class SexticSolveError(RuntimeError):
    """The base conditions did not cut out the expected solution family."""


def solve_e8_sextic() -> Polynomial:
    """Derive the weight-16 sextic generator for n = 8 from its base conditions.

    Conditions: the pullback along the cuspidal cubic equals the square of
    the monic root polynomial, and that polynomial divides the pullback of
    the x-derivative.  The solution family is free exactly in a weight-4
    and a weight-10 polynomial parameter (45 scalar dimensions); both are
    fixed by zeroing the x^3*y^3 and x^6 coefficients.
    """
    n = 8
    table = pipeline_table(n)
    psi = psi_n(n, table)
    psi_sq = psi * psi
    q = psi_sq.coeffs_in("U")

    monos = [(a, b, 6 - a - b) for b in range(6, -1, -1) for a in range(6 - b + 1)
             if a + 3 * b <= 16]
    sweight = {m: 16 - m[0] - 3 * m[1] for m in monos}
    by_eta: dict[int, list[tuple[int, int, int]]] = {}
    for m in monos:
        by_eta.setdefault(m[0] + 3 * m[1], []).append(m)

    free_blocks = [(3, 3, 0), (4, 2, 0), (3, 2, 1), (5, 1, 0), (4, 1, 1),
                   (3, 1, 2), (6, 0, 0), (5, 0, 1), (4, 0, 2), (3, 0, 3)]
    unknown_index: dict[tuple[tuple[int, int, int], tuple[int, ...]], int] = {}
    for blk in free_blocks:
        for sm in _weight_monomials(n, sweight[blk]):
            unknown_index[(blk, sm)] = len(unknown_index)

    def smono_poly(sm: tuple[int, ...]) -> Polynomial:
        p = table.const(1)
        for i, e in enumerate(sm, start=1):
            if e:
                p = p * table.var(f"s{i}") ** e
        return p

    # linear expressions over the unknowns: {index_or_None: coeff}, None = known part
    LinPoly = dict  # s-mono (as exponent tuple) -> {unknown or None: Fraction}

    def spoly_to_linknown(p: Polynomial) -> LinPoly:
        out: LinPoly = {}
        svec = [table.index_of(f"s{i}") for i in range(1, n + 1)]
        pos = {idx: i for i, idx in enumerate(svec)}
        for m, c in p.terms.items():
            key = [0] * n
            for i, e in m:
                key[pos[i]] = e
            out.setdefault(tuple(key), {})[None] = out.get(tuple(key), {}).get(None, 0) + c
        return out

    # coefficient of each sextic monomial as a linear expression in unknowns
    coeff_expr: dict[tuple[int, int, int], LinPoly] = {}
    for j, cls in sorted(by_eta.items()):
        qj = q.get(j, table.zero())
        frees = [m for m in cls if m in free_blocks]
        fixed = [m for m in cls if m not in free_blocks]
        for m in frees:
            coeff_expr[m] = {sm: {unknown_index[(m, sm)]: Fraction(1)}
                             for sm in _weight_monomials(n, sweight[m])}
        if not fixed:
            if not qj.is_zero:
                raise SexticSolveError(f"degree {j} has no monomial to carry {qj.serialize()}")
            continue
        if len(fixed) != 1:
            raise SexticSolveError(f"degree {j} pins more than one monomial: {fixed}")
        target = fixed[0]
        expr = spoly_to_linknown(qj)
        for m in frees:
            for sm in _weight_monomials(n, sweight[m]):
                expr.setdefault(sm, {})[unknown_index[(m, sm)]] = Fraction(-1)
        coeff_expr[target] = expr
    assert set(coeff_expr) == set(monos)
    if coeff_expr[(1, 5, 0)].get((0,) * n, {}).get(None, 0) != 1:
        raise SexticSolveError("leading pullback coefficient is not monic")

    # remainders U^m mod psi, m = 0..15
    rem: list[dict[int, Polynomial]] = []
    U = table.var("U")
    cur = table.const(1)
    for m in range(16):
        rem.append(cur.coeffs_in("U"))
        cur = cur * U
        lead = cur.coeffs_in("U").get(n)
        if lead is not None and not lead.is_zero:
            cur = cur - lead * psi

    # divisibility of the x-derivative pullback: 8 polynomial identities
    rows: list[tuple[dict[int, Fraction], Fraction]] = []
    eq_acc: dict[tuple[int, tuple[int, ...]], dict] = {}
    for (a, b, c) in monos:
        if a == 0:
            continue
        expr = coeff_expr[(a, b, c)]
        rj = rem[a - 1 + 3 * b]
        for ju, coeff_poly in rj.items():
            for sm2, c2 in spoly_to_linknown(coeff_poly).items():
                base2 = c2[None]
                for sm1, lin in expr.items():
                    combined = tuple(x + y for x, y in zip(sm1, sm2))
                    slot = eq_acc.setdefault((ju, combined), {})
                    for u, cu in lin.items():
                        slot[u] = slot.get(u, 0) + a * cu * base2
    for (_ju, _sm), lin in sorted(eq_acc.items()):
        row = {u: Fraction(c) for u, c in lin.items() if u is not None and c != 0}
        rhs = -Fraction(lin.get(None, 0))
        if row or rhs:
            rows.append((row, rhs))

    n_unknowns = len(unknown_index)
    pivots: dict[int, tuple[dict[int, Fraction], Fraction]] = {}

    def reduce_and_insert(row: dict[int, Fraction], rhs: Fraction) -> None:
        # pivot rows are stored without their pivot variable and contain no
        # other pivot variables, so one pass over the original support wipes
        # every pivot variable from the row
        row = dict(row)
        for var in sorted(row):
            if var in row and row[var] and var in pivots:
                prow, prhs = pivots[var]
                factor = row.pop(var)
                for v2, c2 in prow.items():
                    row[v2] = row.get(v2, Fraction(0)) - factor * c2
                    if not row[v2]:
                        del row[v2]
                rhs = rhs - factor * prhs
        row = {v: c for v, c in row.items() if c}
        if not row:
            if rhs:
                raise SexticSolveError("inconsistent linear system for the sextic")
            return
        pv = min(row)
        inv = Fraction(1) / row[pv]
        row = {v: c * inv for v, c in row.items() if v != pv}
        rhs = rhs * inv
        # keep earlier pivot rows fully reduced
        for var, (prow, prhs) in list(pivots.items()):
            if pv in prow:
                f = prow.pop(pv)
                for v2, c2 in row.items():
                    prow[v2] = prow.get(v2, Fraction(0)) - f * c2
                    if not prow[v2]:
                        del prow[v2]
                pivots[var] = (prow, prhs - f * rhs)
        pivots[pv] = (row, rhs)

    for row, rhs in rows:
        reduce_and_insert(row, rhs)
    nullity = n_unknowns - len(pivots)
    expected = len(_weight_monomials(n, 4)) + len(_weight_monomials(n, 10))
    if nullity != expected:
        raise SexticSolveError(
            f"solution family has dimension {nullity}, expected {expected}"
        )
    # normalization: kill the x^3*y^3 and x^6 coefficients entirely
    for blk in ((3, 3, 0), (6, 0, 0)):
        for sm in _weight_monomials(n, sweight[blk]):
            reduce_and_insert({unknown_index[(blk, sm)]: Fraction(1)}, Fraction(0))
    if len(pivots) != n_unknowns:
        raise SexticSolveError("normalization did not make the sextic unique")
    values = [Fraction(0)] * n_unknowns
    for var, (row, rhs) in pivots.items():
        if row:
            raise SexticSolveError("elimination left a non-reduced pivot row")
        values[var] = rhs

    result = table.zero()
    for m in monos:
        xyz = table.var("x") ** m[0] * table.var("y") ** m[1] * table.var("z") ** m[2]
        for sm, lin in coeff_expr[m].items():
            total = Fraction(lin.get(None, 0))
            for u, cu in lin.items():
                if u is not None:
                    total += cu * values[u]
            if total:
                result = result + total * smono_poly(sm) * xyz
    return result


@lru_cache(maxsize=None)
def good_gens_bar(n: int) -> GoodGenSet:
    if n not in (6, 7, 8):
        raise ValueError("good generating sets exist for n in {6, 7, 8}")
    table = pipeline_table(n)
    if n == 6:
        return GoodGenSet(6, _p(6, _E6_XB), _p(6, _E6_YB), _p(6, _E6_ZB),
                          _p(6, "x^3 - y*z^2"))
    if n == 7:
        yb, zb = _p(7, _E7_YB), _p(7, _E7_ZB)
        wb = _p(7, "x^3 - y*z^2")
        xb = Fraction(1, 3) * jacobian3(yb, zb, wb)
        return GoodGenSet(7, xb, yb, zb, wb)
    if n == 8:
        yb = solve_e8_sextic()
        zb = _p(8, _E8_ZB)
        wb = _p(8, "x^3 - y*z^2")
        xb = Fraction(-1, 6) * jacobian3(yb, zb, wb)
        return GoodGenSet(8, xb, yb, zb, wb)
    raise ValueError("good generating sets exist for n in {6, 7, 8}")


def reduce_mod_m(p: Polynomial) -> Polynomial:
    """Set every deformation parameter s_i to zero."""
    rules = {name: 0 for name in p.variables()
             if name.startswith("s") and name[1:].isdigit()}
    return p.substitute(rules)


# -- templates and solve-list data ----------------------------------------------


def _template(n: int, barred: bool) -> Polynomial:
    t = pipeline_table(n)
    b = "b" if barred else ""
    X, Y, Z, W = (t.var(f"{v}{b}") for v in "XYZW")
    e = {w: t.var(f"e{'bar' if barred else 'ps'}{w}") for w in EPS_WEIGHTS[n]}
    if n == 6:
        out = -X**2*W - X*Z**2 + Y**3 + e[2]*Y*Z**2 + e[5]*Y*Z*W + e[6]*Z**2*W \
              + e[8]*Y*W**2 + e[9]*Z*W**2 + e[12]*W**3
        if barred:
            ph = {name: t.var(name) for name, _ in _BAR_COEFFS[6] if name.startswith("phib")}
            out = out + ph["phib1"]*Y**2*Z + ph["phib2"]*X*Y*W + ph["phib3p"]*X*Z*W \
                  + ph["phib3pp"]*Z**3 + ph["phib4"]*Y**2*W + ph["phib6"]*X*W**2
        return out
    if n == 7:
        out = -X**2 - Y**3*W + 16*Y*Z**3 + e[2]*Y**2*Z*W + e[6]*Y**2*W**2 \
              + e[8]*Y*Z*W**2 + e[10]*Z**2*W**2 + e[12]*Y*W**3 + e[14]*Z*W**3 \
              + e[18]*W**4
        if barred:
            out = out + t.var("phib2")*(16*Z**4 - Y**2*Z*W) \
                  + t.var("phib4")*Y*Z**2*W + t.var("phib6")*(16*Z**3*W - Y**2*W**2)
        return out
    out = -X**2 + Y**3 - Z**5*W + e[2]*Y*Z**3*W + e[8]*Y*Z**2*W**2 + e[12]*Z**3*W**3 \
          + e[14]*Y*Z*W**3 + e[18]*Z**2*W**4 + e[20]*Y*W**4 + e[24]*Z*W**5 + e[30]*W**6
    if barred:
        out = out + t.var("phib4")*Y**2*Z*W + t.var("phib6")*Z**4*W**2 \
              + t.var("phib10")*Y**2*W**2
    return out


def phibar_template(n: int) -> Polynomial:
    """Defining polynomial in the raw generators, undetermined coefficients."""
    t = pipeline_table(n)
    sub = {f"eps{w}": t.var(f"ebar{w}") for w in EPS_WEIGHTS[n]}
    return _template(n, barred=True).substitute(sub)


def versal_template(n: int) -> Polynomial:
    return _template(n, barred=False)


def _e(**exps) -> dict[str, int]:
    return exps


_BAR_PAIRS = {
    6: [(_e(x=2, y=6, z=1), "phib1"), (_e(x=4, y=5), "phib2"),
        (_e(x=1, y=6, z=2), "ebar2"), (_e(x=3, y=5, z=1), "phib3p"),
        (_e(y=6, z=3), "phib3pp"), (_e(x=5, y=4), "phib4"),
        (_e(x=4, y=4, z=1), "ebar5"), (_e(x=6, y=3), "phib6"),
        (_e(x=3, y=4, z=2), "ebar6")],
    7: [(_e(x=4, y=8), "ebar2"), (_e(x=1, y=9, z=2), "phib2"),
        (_e(x=5, y=7), "phib4"), (_e(x=6, y=6), "ebar6"),
        (_e(x=3, y=7, z=2), "phib6")],
    8: [(_e(x=4, y=14), "ebar2"), (_e(x=5, y=13), "phib4"),
        (_e(x=6, y=12), "phib6"), (_e(x=7, y=11), "ebar8"),
        (_e(x=8, y=10), "phib10")],
}

# extension pairs for the full barred expansion, recorded as reusable data
BAR_EXTENSION = {
    6: [(_e(x=7, y=2), "ebar8"), (_e(x=6, y=2, z=1), "ebar9"), (_e(x=9,), "ebar12")],
}

_PSI_PAIRS = {
    6: [(_e(Y=2, Z=1), "psi1"), (_e(X=1, Y=1, W=1), "psi2"), (_e(Z=3), "psi3p"),
        (_e(X=1, Z=1, W=1), "psi3pp"), (_e(Y=2, W=1), "psi4"),
        (_e(X=1, W=2), "psi6")],
    7: [(_e(Z=4), "psi2"), (_e(Y=1, Z=2, W=1), "psi4"), (_e(Z=3, W=1), "psi6")],
    8: [(_e(Y=2, Z=1, W=1), "psi4"), (_e(Z=4, W=2), "psi6"), (_e(Y=2, W=2), "psi10")],
}

_VERSAL_PAIRS = {
    6: [(_e(x=1, y=6, z=2), "eps2"), (_e(x=4, y=4, z=1), "eps5"),
        (_e(x=3, y=4, z=2), "eps6"), (_e(x=7, y=2), "eps8"),
        (_e(x=6, y=2, z=1), "eps9"), (_e(x=6, y=1, z=2), "eps12")],
    7: [(_e(x=4, y=8), "eps2"), (_e(x=6, y=6), "eps6"), (_e(x=7, y=5), "eps8"),
        (_e(x=8, y=4), "eps10"), (_e(x=9, y=3), "eps12"),
        (_e(x=10, y=2), "eps14"), (_e(x=12,), "eps18")],
    8: [(_e(x=4, y=14), "eps2"), (_e(x=7, y=11), "eps8"), (_e(x=9, y=9), "eps12"),
        (_e(x=10, y=8), "eps14"), (_e(x=12, y=6), "eps18"),
        (_e(x=13, y=5), "eps20"), (_e(x=15, y=3), "eps24"), (_e(x=18,), "eps30")],
}


def mu_rules(n: int) -> RuleSet:
    """Change of generating set with undetermined triangular coefficients."""
    t = pipeline_table(n)
    X, Y, Z, W = (t.var(v) for v in "XYZW")
    p = {name: t.var(name) for name, _ in _PSI_COEFFS[n]}
    if n == 6:
        return RuleSet.of([
            ("Xb", X + p["psi2"] * Y + p["psi3p"] * Z + p["psi6"] * W),
            ("Yb", Y + p["psi1"] * Z + p["psi4"] * W),
            ("Zb", Z + p["psi3pp"] * W),
            ("Wb", W),
        ])
    if n == 7:
        return RuleSet.of([
            ("Xb", X),
            ("Yb", Y + p["psi2"] * Z + p["psi6"] * W),
            ("Zb", Z + p["psi4"] * W),
            ("Wb", W),
        ])
    return RuleSet.of([
        ("Xb", X),
        ("Yb", Y + p["psi4"] * Z * W + p["psi10"] * W ** 2),
        ("Zb", Z + p["psi6"] * W),
        ("Wb", W),
    ])


def mu_inverse(n: int) -> RuleSet:
    """Solve the triangular change of generators for the plain X, Y, Z, W."""
    t = pipeline_table(n)
    mu = mu_rules(n).mapping()
    solved: dict[str, Polynomial] = {}
    out = []
    for name in ("W", "Z", "Y", "X"):
        correction = mu[f"{name}b"] - t.var(name)
        value = t.var(f"{name}b") - correction.substitute(solved)
        solved[name] = value
        out.append((name, value))
    return RuleSet.of(reversed(out))


# -- pipeline ---------------------------------------------------------------------


class VersalPipeline:
    """One run of the versal-form computation for n in {6, 7, 8}.

    ``param`` optionally rewrites the s_i (a restriction of the base of the
    deformation); all stages are pulled back through it before expanding,
    which is dramatically cheaper than expanding first.
    """

    def __init__(self, n: int, param: Optional[RuleSet] = None,
                 cache: Optional[RuleCache] = None, use_disk_cache: bool = True):
        if n not in (6, 7, 8):
            raise ValueError("versal pipeline handles n in {6, 7, 8}")
        self.n = n
        if param is not None:
            # strip stale merged-table variables so the parameter ring can
            # never clash with the pipeline's own variable weights
            param = RuleSet.of([(v, p.compact()) for v, p in param.rules])
        self.param = param
        self.cache = cache if cache is not None else (get_cache() if use_disk_cache else None)
        self._memo: dict = {}

    def _apply_param(self, p: Polynomial) -> Polynomial:
        if self.param is None:
            return p
        return p.substitute(self.param.mapping())

    def _expand(self, sl: SolveList, upto: Optional[int] = None) -> RuleSet:
        if self.cache is not None:
            return self.cache.expand(sl, upto=upto)
        return sl.expand(upto=upto)

    # stage 1: generator rules -------------------------------------------------

    def rbar_pi(self, z_zero: bool) -> RuleSet:
        key = ("rbar", z_zero)
        if key not in self._memo:
            gens = good_gens_bar(self.n)
            rules = []
            for name, p in (("Xb", gens.Xb), ("Yb", gens.Yb),
                            ("Zb", gens.Zb), ("Wb", gens.Wb)):
                p = self._apply_param(p)
                if z_zero:
                    p = p.substitute({"z": 0})
                rules.append((name, p))
            self._memo[key] = RuleSet.of(rules)
        return self._memo[key]

    # stage 2: barred coefficients ----------------------------------------------

    def bar_solvelist(self, extended: bool = False) -> SolveList:
        pairs = list(_BAR_PAIRS[self.n])
        if extended:
            pairs += BAR_EXTENSION.get(self.n, [])
        z_zero = self.n == 8
        return SolveList.of(self.rbar_pi(z_zero), self._apply_param(phibar_template(self.n)),
                            pairs, ("x", "y", "z"))

    def bar_rules(self, extended: bool = False) -> RuleSet:
        key = ("bar", extended)
        if key not in self._memo:
            self._memo[key] = self._expand(self.bar_solvelist(extended=extended))
        return self._memo[key]

    # stage 3: the triangular psi system ------------------------------------------

    def psi_solvelist(self) -> SolveList:
        sl = SolveList.of(mu_rules(self.n), self._apply_param(phibar_template(self.n)),
                          _PSI_PAIRS[self.n], ("X", "Y", "Z", "W"))
        return sl.pull_back(self.bar_rules())

    def psi_rules(self) -> RuleSet:
        key = "psi"
        if key not in self._memo:
            self._memo[key] = self.psi_solvelist().expand()
        return self._memo[key]

    # stage 4: the composed map in versal coordinates ------------------------------

    def r_pi(self) -> RuleSet:
        key = "rpi"
        if key not in self._memo:
            z_zero = self.n in (7, 8)
            sub = dict(self.rbar_pi(z_zero).mapping())
            sub.update(self.psi_rules().mapping())
            rules = [(v, p.substitute(sub)) for v, p in mu_inverse(self.n).rules]
            self._memo[key] = RuleSet.of(rules)
        return self._memo[key]

    # stage 5: versal coefficients ---------------------------------------------------

    def versal_solvelist(self) -> SolveList:
        return SolveList.of(self.r_pi(), self._apply_param(versal_template(self.n)),
                            _VERSAL_PAIRS[self.n], ("x", "y", "z"))

    def versal_rules(self, upto_name: Optional[str] = None) -> RuleSet:
        upto = None
        if upto_name is not None:
            names = [v for _, v in _VERSAL_PAIRS[self.n]]
            upto = names.index(upto_name) + 1
        key = ("versal", upto)
        if key not in self._memo:
            self._memo[key] = self._expand(self.versal_solvelist(), upto=upto)
        return self._memo[key]


def versal_coeffs(n: int, cache: Optional[RuleCache] = None) -> dict[str, Polynomial]:
    """The standard coordinate functions eps_i of E6/E7/E8, in s_1..s_n."""
    pipe = VersalPipeline(n, cache=cache)
    rules = pipe.versal_rules()
    return {name: rules[name] for name in eps_names(n)}


APPENDIX_MULTIPLIERS = {
    6: {"eps2": 6, "eps5": 81, "eps6": 1944, "eps8": 34992, "eps9": 78732,
        "eps12": 11337408},
    7: {"eps2": 1, "eps6": 48, "eps8": 48, "eps10": 16, "eps12": 6912,
        "eps14": 768, "eps18": 9 * 16 ** 3},
}
