"""Distinguished polynomials and closed-form standard coordinates.

The distinguished polynomial of a type collects its functionals into
prod(U + t_i) = U^n + sum s_i U^{n-i}; for the D family a second
polynomial in an auxiliary weight-2 variable Z captures the invariants of
the full reflection group.  Standard coordinate functions are returned as
exact polynomials in s_1..s_n for every type whose closed form is known
(A, D including D2, E3, E4, E5); the three large E types are produced by
the versal-form pipeline in :mod:`rdpinv.envres`.

Symmetric rewriting (from t-variables back to the elementary symmetric
generators) is by iterated leading-term division in graded-lex order; a
non-dominant leading monomial flags a non-symmetric input.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .poly import Polynomial, VarTable, parse
from .rootsys import Spec, weyl_action
from .solvelist import RuleSet


class NonSymmetricError(ValueError):
    """Input to symmetric reduction is not a symmetric polynomial."""


def _t_names(n: int) -> list[str]:
    return [f"t{i}" for i in range(1, n + 1)]


def _s_names(n: int) -> list[str]:
    return [f"s{i}" for i in range(1, n + 1)]


def ts_table(n: int) -> VarTable:
    """U, Z plus t- and s-variables for one type, in a single table."""
    names = ["U", "Z"] + _t_names(n) + _s_names(n)
    weights = [1, 2] + [1] * n + list(range(1, n + 1))
    return VarTable(names, weights)


def functionals(spec: Spec, table: Optional[VarTable] = None) -> list[Polynomial]:
    """The n distinguished functionals as polynomials; A0's is literally zero."""
    table = table or ts_table(spec.n)
    if spec.family == "A" and spec.n == 1:
        return [table.zero()]
    return [table.var(f"t{i}") for i in range(1, spec.n + 1)]


def elem_sym(values: list[Polynomial], j: int) -> Polynomial:
    """Elementary symmetric function by the product recurrence."""
    if not values:
        raise ValueError("need at least one value")
    table = values[0].table
    # coefficients of prod (X + v_i), built without an extra variable
    coeffs = [table.const(1)]
    for v in values:
        nxt = [table.const(1)]
        for k in range(1, len(coeffs) + 1):
            prev = coeffs[k] if k < len(coeffs) else table.zero()
            nxt.append(prev + coeffs[k - 1] * v)
        coeffs = nxt
    return coeffs[j] if j <= len(values) else table.zero()


def f_product(spec: Spec, table: Optional[VarTable] = None) -> Polynomial:
    """prod(U + t_i), the factored form of the distinguished polynomial."""
    table = table or ts_table(spec.n)
    U = table.var("U")
    out = table.const(1)
    for t in functionals(spec, table):
        out = out * (U + t)
    return out


def f_sform(spec: Spec, table: Optional[VarTable] = None) -> Polynomial:
    """U^n + sum s_i U^{n-i}; the A family drops s_1 (it vanishes there)."""
    table = table or ts_table(spec.n)
    U = table.var("U")
    n = spec.n
    out = U ** n
    for i in range(1, n + 1):
        if spec.family == "A" and i == 1:
            continue
        out = out + table.var(f"s{i}") * U ** (n - i)
    return out


def s_to_t_rules(n: int, table: Optional[VarTable] = None) -> dict[str, Polynomial]:
    table = table or ts_table(n)
    ts = [table.var(f"t{i}") for i in range(1, n + 1)]
    return {f"s{j}": elem_sym(ts, j) for j in range(1, n + 1)}


@dataclass(frozen=True)
class DistData:
    """Distinguished polynomial in both forms, plus the D-family extras."""

    spec: Spec
    f_t: Polynomial
    f_s: Polynomial
    g: Optional[Polynomial] = None
    P: Optional[Polynomial] = None
    Q: Optional[Polynomial] = None
    S: Optional[Polynomial] = None
    G: Optional[Polynomial] = None
    G_hom: Optional[Polynomial] = None


def _even_odd_in_Z(p: Polynomial, table: VarTable) -> tuple[Polynomial, Polynomial]:
    """Split p(U) = U*P(-U^2) + Q(-U^2); returns (P(Z), Q(Z))."""
    Z = table.var("Z")
    P = table.zero()
    Q = table.zero()
    for e, coeff in p.coeffs_in("U").items():
        k, odd = divmod(e, 2)
        piece = coeff * (-Z) ** k
        if odd:
            P = P + piece
        else:
            Q = Q + piece
    return P, Q


def g_from_f(f_of_U: Polynomial, table: VarTable) -> Polynomial:
    """g(Z) defined by g(-U^2) = f(U) * f(-U)."""
    U = table.var("U")
    minus = f_of_U.substitute({"U": -U})
    prod = f_of_U * minus
    Z = table.var("Z")
    out = table.zero()
    for e, coeff in prod.coeffs_in("U").items():
        if e % 2:
            raise ValueError("f(U)*f(-U) must be even in U")
        out = out + coeff * (-Z) ** (e // 2)
    return out


def g_dist(n: int) -> dict[str, Polynomial]:
    """Second-distinguished coefficients {gamma, delta2, ..., delta_{2n-2}} in s."""
    spec = Spec("D", n)
    table = ts_table(n)
    g = g_from_f(f_sform(spec, table), table)
    byZ = g.coeffs_in("Z")
    out = {"gamma": table.var(f"s{n}")}
    for i in range(1, n):
        out[f"delta{2*i}"] = byZ.get(n - i, table.zero())
    # constant term of g is gamma^2; not an independent generator
    return out


def pq_split(n: int) -> DistData:
    spec = Spec("D", n)
    table = ts_table(n)
    f_s = f_sform(spec, table)
    f_t = f_product(spec, table)
    g = g_from_f(f_s, table)
    P, Q = _even_odd_in_Z(f_s, table)
    Z = table.var("Z")
    U = table.var("U")
    sn = table.var(f"s{n}")
    from .poly import exact_div

    S = exact_div(Q - sn, Z, "Z")
    G = exact_div(U * P + Q - f_s, Z + U ** 2, "Z")
    # homogenize the U-direction: G has degree n-2 in U
    table_uv = table.merged(VarTable(["uu", "vv"], [1, 0]))
    uu, vv = table_uv.var("uu"), table_uv.var("vv")
    G_hom = table_uv.zero()
    for e, coeff in G.to_table(table_uv).coeffs_in("U").items():
        G_hom = G_hom + coeff * uu ** e * vv ** (n - 2 - e)
    return DistData(spec, f_t, f_s, g=g, P=P, Q=Q, S=S, G=G, G_hom=G_hom)


def f_dist(spec: Spec) -> DistData:
    table = ts_table(spec.n)
    data = DistData(spec, f_product(spec, table), f_sform(spec, table))
    if spec.family == "D":
        return pq_split(spec.n)
    return data


# -- symmetric reduction -------------------------------------------------------


def symmetric_reduce(p: Polynomial, n: int, target: Optional[VarTable] = None) -> Polynomial:
    """Rewrite a symmetric polynomial in t_1..t_n as a polynomial in s_1..s_n.

    Iterated division against the elementary symmetric generators in
    graded-lex order; raises :class:`NonSymmetricError` if a leading
    monomial is not dominant (exponents non-increasing), which certifies
    the input is not symmetric.
    """
    table = ts_table(n)
    p = p.to_table(table)
    target = target or table
    extraneous = p.variables() - set(_t_names(n))
    if extraneous:
        raise ValueError(f"input involves non-t variables {sorted(extraneous)}")
    tpos = {table.index_of(f"t{i}"): i - 1 for i in range(1, n + 1)}
    elems = [None] + [elem_sym([table.var(f"t{i}") for i in range(1, n + 1)], j)
                      for j in range(1, n + 1)]
    pow_cache: dict[tuple[int, int], Polynomial] = {}

    def epow(j: int, e: int) -> Polynomial:
        key = (j, e)
        hit = pow_cache.get(key)
        if hit is None:
            hit = elems[j] ** e
            pow_cache[key] = hit
        return hit

    out = target.zero()
    work = p
    while not work.is_zero:
        mono, coeff = work.leading_term()
        exps = [0] * n
        for i, e in mono:
            exps[tpos[i]] = e
        if any(exps[i] < exps[i + 1] for i in range(n - 1)):
            raise NonSymmetricError(
                f"leading monomial {dict(mono)} is not dominant; input not symmetric"
            )
        diffs = [exps[i] - (exps[i + 1] if i + 1 < n else 0) for i in range(n)]
        s_term = target.const(coeff)
        e_term = table.const(coeff)
        for j, d in enumerate(diffs, start=1):
            if d:
                s_term = s_term * target.var(f"s{j}") ** d
                e_term = e_term * epow(j, d)
        out = out + s_term
        work = work - e_term
    return out


# -- standard coordinate functions ----------------------------------------------


def _parse_s(text: str, n: int) -> Polynomial:
    return parse(text, ts_table(n))


_E4_COORDS = {
    "eps2": "s2 - 3/5*s1^2",
    "eps3": "s3 - 1/5*s2*s1 + 2/25*s1^3",
    "eps4": "s4 + 1/5*s3*s1 - 8/25*s2*s1^2 + 12/125*s1^4",
    "eps5": "3/5*s1*s4 - 6/25*s3*s1^2 + 12/125*s2*s1^3 - 72/3125*s1^5",
}

_E5_COORDS = {
    "eps2": "-2*s2 + 5/4*s1^2",
    "eps4": "s2^2 - 2*s2*s1^2 + 5/8*s1^4 + s1*s3 + 2*s4",
    "eps5": "-1/8*s2*s1^3 + 1/32*s1^5 + 1/4*s1^2*s3 - 1/2*s1*s4 + s5",
    # the s3^2 term is positive: the A4/D5 re-derivation (e45_check) and a
    # direct elementary-symmetric evaluation both force this sign
    "eps6": "3/4*s2^2*s1^2 - 3/4*s2*s1^4 - s2*s1*s3 - 2*s2*s4 + 5/32*s1^6"
            " + 3/4*s1^3*s3 + 1/2*s1^2*s4 - 3*s1*s5 + s3^2",
    "eps8": "3/16*s2^2*s1^4 - 1/8*s2*s1^6 - 1/2*s2*s1^3*s3 + 3*s2*s1*s5"
            " + 5/256*s1^8 + 3/16*s1^5*s3 - 1/8*s1^4*s4 - 1/2*s1^3*s5"
            " + 1/2*s1^2*s3^2 - s1*s4*s3 - 2*s5*s3 + s4^2",
}


def standard_coords(spec: Spec) -> dict[str, Polynomial]:
    """Standard coordinate functions as polynomials in s_1..s_n.

    E6/E7/E8 are produced by the versal pipeline, not here.
    """
    n = spec.n
    table = ts_table(n)
    if spec.family == "A":
        return {f"alpha{i}": table.var(f"s{i}") for i in range(2, n + 1)}
    if spec.family == "D":
        gd = g_dist(n)
        out = {f"gamma{n}": gd["gamma"]}
        for i in range(1, n):
            out[f"delta{2*i}"] = gd[f"delta{2*i}"]
        return out
    if n == 3:
        s1, s2, s3 = table.var("s1"), table.var("s2"), table.var("s3")
        return {
            "eps2_1": s1 ** 2,
            "eps2_2": s2,
            "eps3": s3 - Fraction(1, 3) * s1 * s2 + Fraction(2, 27) * s1 ** 3,
        }
    if n == 4:
        return {k: _parse_s(v, 4) for k, v in _E4_COORDS.items()}
    if n == 5:
        return {k: _parse_s(v, 5) for k, v in _E5_COORDS.items()}
    raise ValueError(f"{spec.name} standard coordinates come from the versal pipeline")


def d2_constant_terms() -> tuple[Polynomial, Polynomial]:
    """Constant terms of the two A1 constituents of D2: -(delta2 -+ 2*gamma2)/4."""
    coords = standard_coords(Spec("D", 2))
    delta2, gamma2 = coords["delta2"], coords["gamma2"]
    quarter = Fraction(-1, 4)
    return (quarter * (delta2 - 2 * gamma2), quarter * (delta2 + 2 * gamma2))


@dataclass(frozen=True)
class E45Report:
    matches: dict[str, bool]

    @property
    def ok(self) -> bool:
        return all(self.matches.values())


def e45_check() -> E45Report:
    """Re-derive the E4/E5 coordinates through the A4/D5 identifications."""
    matches: dict[str, bool] = {}

    # E4: (U + 3/5 s1) * f_{E4}(U - 2/5 s1) must be the A4 distinguished
    # polynomial; its U^{5-i} coefficients are the coordinates.
    table4 = ts_table(4)
    U, s1 = table4.var("U"), table4.var("s1")
    shifted = f_sform(Spec("E", 4), table4).substitute({"U": U - Fraction(2, 5) * s1})
    a4 = (U + Fraction(3, 5) * s1) * shifted
    by_u = a4.coeffs_in("U")
    matches["e4_s1_zero"] = 4 not in by_u
    e4 = standard_coords(Spec("E", 4))
    for i in range(2, 6):
        matches[f"e4_eps{i}"] = by_u.get(5 - i, table4.zero()) == e4[f"eps{i}"]

    # E5: f_{D5}(U) = f_{E5}(U - 1/2 s1); even coordinates from the second
    # distinguished polynomial, eps5 from the constant term.
    table5 = ts_table(5)
    U, s1 = table5.var("U"), table5.var("s1")
    d5 = f_sform(Spec("E", 5), table5).substitute({"U": U - Fraction(1, 2) * s1})
    e5 = standard_coords(Spec("E", 5))
    matches["e5_eps5"] = d5.coeffs_in("U").get(0, table5.zero()) == e5["eps5"]
    g5 = g_from_f(d5, table5)
    by_z = g5.coeffs_in("Z")
    for i in (1, 2, 3, 4):
        matches[f"e5_eps{2*i}"] = by_z.get(5 - i, table5.zero()) == e5[f"eps{2*i}"]
    return E45Report(matches)


# -- Weyl-invariance checks ------------------------------------------------------


def t_expand(phi: Polynomial, n: int) -> Polynomial:
    """Substitute each s_i by the elementary symmetric function of the t's."""
    return phi.compact().substitute(s_to_t_rules(n))


def invariant_under_literal(spec: Spec, phi: Polynomial, generator: int,
                            reduce_back: bool = False) -> bool:
    """Exact invariance test by substituting the generator action on t's.

    With ``reduce_back`` the transformed expansion is rewritten in s via
    symmetric reduction and compared to the original coordinate function.
    """
    phi = phi.compact()
    pt = t_expand(phi, spec.n)
    moved = weyl_action(spec, generator).apply(pt)
    if not reduce_back:
        return moved == pt
    try:
        back = symmetric_reduce(moved, spec.n)
    except NonSymmetricError:
        return False
    return back == phi


def split_params_D(n: int) -> tuple[RuleSet, RuleSet]:
    """s-parametrizations before/after the sign-swap generator of D_n.

    The last two functionals enter only through a = t_{n-1} + t_n and
    b = t_{n-1} t_n; the generator flips the sign of a.  Both rule sets
    substitute the s_i by polynomials in p_1..p_{n-2}, a, b.
    """
    m = n - 2
    names = [f"p{i}" for i in range(1, m + 1)] + ["aa", "bb"]
    weights = list(range(1, m + 1)) + [1, 2]
    ptab = VarTable(["U"] + names, [1] + weights)
    U = ptab.var("U")
    head = U ** m
    for i in range(1, m + 1):
        head = head + ptab.var(f"p{i}") * U ** (m - i)
    tail = U ** 2 + ptab.var("aa") * U + ptab.var("bb")
    plain = head * tail
    flipped = head * (U ** 2 - ptab.var("aa") * U + ptab.var("bb"))

    def rules_from(f: Polynomial) -> RuleSet:
        by_u = f.coeffs_in("U")
        return RuleSet.of([(f"s{i}", by_u.get(n - i, ptab.zero())) for i in range(1, n + 1)])

    return rules_from(plain), rules_from(flipped)


def split_params_E(n: int) -> tuple[RuleSet, RuleSet]:
    """s-parametrizations before/after the extra E-family generator.

    Writing f = f3(U; t_1..t_3) * frest(U; t_4..t_n) in the coefficients
    p_i = e_i(t_1..t_3), q_j = e_j(t_4..t_n), the generator shifts the two
    factors by -+ multiples of p_1; both sides stay polynomial in (p, q).
    """
    m = n - 3
    names = ["p1", "p2", "p3"] + [f"q{j}" for j in range(1, m + 1)]
    weights = [1, 2, 3] + list(range(1, m + 1))
    ptab = VarTable(["U"] + names, [1] + weights)
    U = ptab.var("U")
    p1 = ptab.var("p1")
    f3 = U ** 3 + p1 * U ** 2 + ptab.var("p2") * U + ptab.var("p3")
    frest = U ** m
    for j in range(1, m + 1):
        frest = frest + ptab.var(f"q{j}") * U ** (m - j)
    plain = f3 * frest
    shifted = (f3.substitute({"U": U - Fraction(2, 3) * p1})
               * frest.substitute({"U": U + Fraction(1, 3) * p1}))

    def rules_from(f: Polynomial) -> RuleSet:
        by_u = f.coeffs_in("U")
        return RuleSet.of([(f"s{i}", by_u.get(n - i, ptab.zero())) for i in range(1, n + 1)])

    return rules_from(plain), rules_from(shifted)


def invariant_under_split(spec: Spec, phi: Polynomial) -> bool:
    """Invariance under the non-permutation generator via split coordinates."""
    if spec.family == "D":
        plain, moved = split_params_D(spec.n)
    elif spec.family == "E":
        plain, moved = split_params_E(spec.n)
    else:
        return True  # permutations fix every polynomial in the s_i
    phi = phi.compact()
    return phi.substitute(plain.mapping()) == phi.substitute(moved.mapping())
