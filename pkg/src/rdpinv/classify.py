"""Newton-polygon classification of rational double points.

``rdp_type`` decides the type of an isolated surface double point from a
sufficiently long jet of its defining polynomial: rank of the quadratic
part, then the factorization shape of the residual binary cubic, then
orders of the fully reduced tail.  All reductions are exact formal
coordinate changes truncated at the caller's jet order; square roots are
never needed because the tree only consumes ranks, factor multiplicities
and vanishing orders.

``section_type`` predicts the best general-hyperplane-section bound from
the vanishing orders of versal-form coefficients along a one-parameter
deformation, via the monomial table of low-degree terms.

``length_type`` maps the length invariant to its associated type.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Optional

from .poly import Polynomial


@dataclass(frozen=True)
class RdpType:
    family: str
    rank: int

    @property
    def name(self) -> str:
        return f"{self.family}{self.rank}"

    @property
    def smooth(self) -> bool:
        return self.family == "A" and self.rank == 0

    def __str__(self) -> str:
        return self.name


class NotRDPError(ValueError):
    """The singularity is not a rational double point."""


class UndecidableError(ValueError):
    """The supplied jet order cannot decide the type."""

    def __init__(self, jet_order: int, message: str):
        super().__init__(f"{message} (jet order {jet_order})")
        self.jet_order = jet_order


def length_type(length: int) -> RdpType:
    """Associated type of the length invariant."""
    table = {1: ("A", 1), 2: ("D", 4), 3: ("E", 6), 4: ("E", 7), 5: ("E", 8), 6: ("E", 8)}
    if length not in table:
        raise ValueError(f"length must be between 1 and 6, got {length}")
    return RdpType(*table[length])


# -- jet utilities ----------------------------------------------------------------


def _truncate(p: Polynomial, d: int) -> Polynomial:
    out = {m: c for m, c in p.terms.items() if sum(e for _, e in m) <= d}
    return Polynomial(p.table, out)


def _degree_part(p: Polynomial, d: int) -> Polynomial:
    out = {m: c for m, c in p.terms.items() if sum(e for _, e in m) == d}
    return Polynomial(p.table, out)


def _order(p: Polynomial) -> Optional[int]:
    if p.is_zero:
        return None
    return min(sum(e for _, e in m) for m in p.terms)


def _linear_change(p: Polynomial, matrix: list[list[Fraction]], names: list[str]) -> Polynomial:
    """Substitute each variable by the matrix row combination of the others."""
    table = p.table
    rules = {}
    for i, name in enumerate(names):
        val = table.zero()
        for j, other in enumerate(names):
            if matrix[i][j]:
                val = val + matrix[i][j] * table.var(other)
        rules[name] = val
    return p.substitute(rules)


def _quadratic_matrix(p: Polynomial, names: list[str]) -> list[list[Fraction]]:
    q = _degree_part(p, 2)
    idx = {p.table.index_of(nm): i for i, nm in enumerate(names)}
    mat = [[Fraction(0)] * 3 for _ in range(3)]
    for m, c in q.terms.items():
        if len(m) == 1:
            i = idx[m[0][0]]
            mat[i][i] += Fraction(c)
        else:
            i, j = idx[m[0][0]], idx[m[1][0]]
            mat[i][j] += Fraction(c, 2)
            mat[j][i] += Fraction(c, 2)
    return mat


def _diagonalize(mat: list[list[Fraction]]) -> tuple[list[list[Fraction]], list[Fraction]]:
    """Rational congruence diagonalization: returns (basis change C, diagonal).

    The change satisfies q(C v) = sum diag_i v_i^2 with nonzero entries first.
    """
    n = 3
    basis = [[Fraction(i == j) for j in range(n)] for i in range(n)]

    def q(u, v):
        return sum(u[i] * mat[i][j] * v[j] for i in range(n) for j in range(n))

    out_vecs: list[list[Fraction]] = []
    out_diag: list[Fraction] = []
    remaining = basis
    while remaining:
        pick = None
        for v in remaining:
            if q(v, v) != 0:
                pick = v
                break
        if pick is None:
            # all isotropic: look for a hyperbolic pair to symmetrize
            pair = None
            for i in range(len(remaining)):
                for j in range(i + 1, len(remaining)):
                    if q(remaining[i], remaining[j]) != 0:
                        pair = (remaining[i], remaining[j])
                        break
                if pair:
                    break
            if pair is None:
                for v in remaining:
                    out_vecs.append(v)
                    out_diag.append(Fraction(0))
                break
            pick = [a + b for a, b in zip(pair[0], pair[1])]
        d = q(pick, pick)
        out_vecs.append(pick)
        out_diag.append(d)
        nxt = []
        for v in remaining:
            coeff = q(pick, v) / d
            w = [a - coeff * b for a, b in zip(v, pick)]
            if any(w):
                nxt.append(w)
        # keep dimension bookkeeping honest: project to an independent set
        remaining = _independent(nxt)
    # columns of the change matrix are the chosen vectors
    C = [[out_vecs[j][i] for j in range(len(out_vecs))] for i in range(n)]
    return C, out_diag


def _independent(vecs: list[list[Fraction]]) -> list[list[Fraction]]:
    out: list[list[Fraction]] = []
    reduced: list[list[Fraction]] = []
    for v in vecs:
        w = list(v)
        for r in reduced:
            lead = next(i for i, x in enumerate(r) if x)
            if w[lead]:
                f = w[lead] / r[lead]
                w = [a - f * b for a, b in zip(w, r)]
        if any(w):
            out.append(v)
            reduced.append(w)
    return out


def _split_off_square(p: Polynomial, var: str, d: int) -> Polynomial:
    """Kill every term with positive degree in ``var`` except its pure square.

    Assumes the quadratic part of p is a*var^2 + (rank-deficient rest in the
    other variables); batched formal shear substitutions remove the whole
    offending layer at once, and each pass strictly raises the minimal
    offending degree, so at most d passes run before truncation wins.
    """
    table = p.table
    vidx = table.index_of(var)
    a = p.terms.get(((vidx, 2),))
    if not a:
        raise ValueError("expected a pure square term")
    x = table.var(var)
    while True:
        offending = {}
        for m, c in p.terms.items():
            e = dict(m).get(vidx, 0)
            if e == 0 or m == ((vidx, 2),):
                continue
            rest = tuple((i, ee) if i != vidx else (i, ee - 1) for i, ee in m)
            rest = tuple((i, ee) for i, ee in rest if ee)
            offending[rest] = Fraction(c, -2 * a)
        if not offending:
            break
        shift = Polynomial(table, offending)
        p = p.substitute({var: x + shift}, max_total_degree=d)
    return Polynomial(table, {m: c for m, c in p.terms.items() if dict(m).get(vidx, 0) == 0})


def _binary_cubic_shape(g3: Polynomial, y: str, z: str):
    """Factor multiplicities of a nonzero binary cubic over the closure.

    Returns ('distinct',), ('double', h) with the rational double factor,
    or ('triple', h).
    """
    table = g3.table
    yi, zi = table.index_of(y), table.index_of(z)
    coeff = [Fraction(0)] * 4  # coefficient of y^k z^(3-k)
    for m, c in g3.terms.items():
        k = dict(m).get(yi, 0)
        coeff[k] = Fraction(c)
    # univariate f(t) = g3(t, 1); infinity accounts for a drop in degree
    f = list(coeff)
    while f and f[-1] == 0:
        f.pop()
    deg = len(f) - 1
    inf_mult = 3 - deg

    def poly_gcd(a, b):
        a, b = list(a), list(b)
        while b and any(b):
            while a and a[-1] == 0:
                a.pop()
            while b and b[-1] == 0:
                b.pop()
            if not b:
                break
            if len(a) < len(b):
                a, b = b, a
                continue
            lead = a[-1] / b[-1]
            shift = len(a) - len(b)
            a = [ai - lead * (b[i - shift] if 0 <= i - shift < len(b) else 0)
                 for i, ai in enumerate(a)]
            while a and a[-1] == 0:
                a.pop()
            a, b = b, a
        return a or [Fraction(0)]

    fp = [i * f[i] for i in range(1, len(f))] if deg >= 1 else []
    g = poly_gcd(f, fp) if fp else [Fraction(1)]
    while len(g) > 1 and g[-1] == 0:
        g.pop()
    gcd_deg = len(g) - 1 if any(g) else 0
    # triple cases
    if inf_mult == 3:
        return ("triple", table.var(z))
    if inf_mult == 0 and gcd_deg == 2:
        root = -g[1] / (2 * g[2]) if g[2] else -g[0] / g[1]
        return ("triple", table.var(y) - root * table.var(z))
    # double cases
    if inf_mult == 2:
        return ("double", table.var(z))
    if gcd_deg == 1:
        root = -g[0] / g[1]
        return ("double", table.var(y) - root * table.var(z))
    if inf_mult == 1 and deg == 2 and gcd_deg == 0:
        return ("distinct",)
    if gcd_deg == 0 and inf_mult <= 1:
        return ("distinct",)
    raise NotRDPError("degenerate cubic factorization")


def _straighten_double_factor(g: Polynomial, h: Polynomial, y: str, z: str) -> Polynomial:
    """Linear change making the repeated factor the first coordinate."""
    table = g.table
    yi, zi = table.index_of(y), table.index_of(z)
    a = Fraction(h.terms.get(((yi, 1),), 0))
    b = Fraction(h.terms.get(((zi, 1),), 0))
    yv, zv = table.var(y), table.var(z)
    if a:
        # y -> (y - b z)/a keeps the substitution rational and invertible
        rules = {y: (yv - b * zv) / a}
    else:
        rules = {y: zv / b, z: yv}
    return g.substitute(rules)


def _reduce_tail_D(g: Polynomial, y: str, z: str, c3, d: int) -> tuple[Optional[int], Polynomial]:
    """Normalize g = c3*y^2 z + higher; return the order of the pure-z tail."""
    table = g.table
    yi, zi = table.index_of(y), table.index_of(z)
    yv, zv = table.var(y), table.var(z)
    # absorb y^a z^b with a >= 2 (except y^2 z) into the cubic via z-shifts
    while True:
        shift_terms = {}
        for m, c in g.terms.items():
            exps = dict(m)
            a, b = exps.get(yi, 0), exps.get(zi, 0)
            if a >= 2 and (a, b) != (2, 1):
                mono = tuple(sorted(((yi, a - 2), (zi, b))))
                mono = tuple((i, e) for i, e in mono if e)
                shift_terms[mono] = Fraction(-c, 1) / c3
        if not shift_terms:
            break
        g = g.substitute({z: zv + Polynomial(table, shift_terms)}, max_total_degree=d)
    # kill the y-linear tail via y-shifts
    while True:
        shift_terms = {}
        for m, c in g.terms.items():
            exps = dict(m)
            if exps.get(yi, 0) == 1:
                b = exps.get(zi, 0)
                if b <= 1:
                    raise NotRDPError("unexpected low-order mixed term in the reduced tail")
                shift_terms[((zi, b - 1),)] = Fraction(-c, 2) / c3
        if not shift_terms:
            break
        g = g.substitute({y: yv + Polynomial(table, shift_terms)}, max_total_degree=d)
    tail = Polynomial(table, {m: c for m, c in g.terms.items()
                              if dict(m).get(yi, 0) == 0})
    return _order(tail), g


def _reduce_tail_E(g: Polynomial, y: str, z: str, c3, d: int) -> tuple[Optional[int], Optional[int]]:
    """Normalize g = c3*y^3 + y*B(z) + C(z); return (ord B, ord C)."""
    table = g.table
    yi, zi = table.index_of(y), table.index_of(z)
    yv, zv = table.var(y), table.var(z)
    while True:
        shift_terms = {}
        for m, c in g.terms.items():
            exps = dict(m)
            a, b = exps.get(yi, 0), exps.get(zi, 0)
            if a >= 2 and (a, b) != (3, 0):
                mono = tuple(sorted(((yi, a - 2), (zi, b))))
                mono = tuple((i, e) for i, e in mono if e)
                shift_terms[mono] = Fraction(-c, 3) / c3
        if not shift_terms:
            break
        g = g.substitute({y: yv + Polynomial(table, shift_terms)}, max_total_degree=d)
    B = table.zero()
    C = table.zero()
    for m, c in g.terms.items():
        exps = dict(m)
        a = exps.get(yi, 0)
        if a == 1:
            B = B + Polynomial(table, {tuple((i, e) for i, e in m if i != yi): c})
        elif a == 0:
            C = C + Polynomial(table, {m: c})
    return _order(B), _order(C)


def rdp_type(f: Polynomial, jet_order: int = 10) -> RdpType:
    """Classify an isolated double point from a jet of its equation.

    The polynomial must vanish at the origin and involve exactly the three
    variables of its table.  Raises :class:`UndecidableError` when the jet
    is too short and :class:`NotRDPError` when the singularity is not a
    rational double point.
    """
    names = list(f.table.names[:3])
    if len(f.table) != 3:
        raise ValueError("classifier expects a three-variable polynomial table")
    f = _truncate(f, jet_order)
    if f.constant_value() != 0:
        raise ValueError("the origin must lie on the surface")
    if not _degree_part(f, 1).is_zero:
        return RdpType("A", 0)
    mat = _quadratic_matrix(f, names)
    change, diag = _diagonalize(mat)
    rank = sum(1 for dd in diag if dd)
    if rank == 3:
        return RdpType("A", 1)
    if rank == 0:
        raise NotRDPError("multiplicity at least three")
    f = _linear_change(f, change, names)
    f = _truncate(f, jet_order)
    if rank == 2:
        g = _split_off_square(f, names[0], jet_order)
        g = _split_off_square(g, names[1], jet_order)
        m = _order(g)
        if m is None:
            raise UndecidableError(jet_order, "residual tail vanishes to jet order")
        return RdpType("A", m - 1)
    g = _split_off_square(f, names[0], jet_order)
    y, z = names[1], names[2]
    g3 = _degree_part(g, 3)
    if g3.is_zero:
        raise NotRDPError("no cubic part after splitting the square")
    shape = _binary_cubic_shape(g3, y, z)
    if shape[0] == "distinct":
        return RdpType("D", 4)
    g = _straighten_double_factor(g, shape[1], y, z)
    g = _truncate(g, jet_order)
    g3 = _degree_part(g, 3)
    yi = g.table.index_of(y)
    if shape[0] == "double":
        c3 = g3.terms.get(((yi, 2), (g.table.index_of(z), 1)))
        if not c3:
            raise NotRDPError("double factor did not straighten")
        order, _ = _reduce_tail_D(g, y, z, Fraction(c3), jet_order)
        if order is None:
            raise UndecidableError(jet_order, "pure tail vanishes to jet order")
        return RdpType("D", order + 1)
    c3 = g3.terms.get(((yi, 3),))
    if not c3:
        raise NotRDPError("triple factor did not straighten")
    if jet_order < 5:
        raise UndecidableError(jet_order, "the exceptional branch needs a degree-5 jet")
    ordB, ordC = _reduce_tail_E(g, y, z, Fraction(c3), jet_order)
    if ordC == 4:
        return RdpType("E", 6)
    if ordB == 3:
        return RdpType("E", 7)
    if ordC == 5:
        return RdpType("E", 8)
    raise NotRDPError("tail orders exceed every rational double point")


# -- hyperplane-section bounds from vanishing orders ---------------------------------


#: versal-form monomial (Y-power, Z-power) attached to each coefficient
VERSAL_MONOMIALS = {
    "E6": {"eps2": (1, 2), "eps5": (1, 1), "eps6": (0, 2), "eps8": (1, 0),
           "eps9": (0, 1), "eps12": (0, 0)},
    "E7": {"eps2": (2, 1), "eps6": (2, 0), "eps8": (1, 1), "eps10": (0, 2),
           "eps12": (1, 0), "eps14": (0, 1), "eps18": (0, 0)},
    "E8": {"eps2": (1, 3), "eps8": (1, 2), "eps12": (0, 3), "eps14": (1, 1),
           "eps18": (0, 2), "eps20": (1, 0), "eps24": (0, 1), "eps30": (0, 0)},
}

COLUMNS = ("A0", "A1", "A2", "D4", "Dk", "E6", "E7")

# (Y-power, Z-power, T-power) -> column of the low-degree monomial table
MONOMIAL_COLUMNS = {
    (1, 2, 1): "E7",
    (2, 0, 1): "E6",
    (0, 3, 1): "E6",
    (1, 1, 1): "D4", (1, 1, 2): "E7",
    (0, 2, 1): "D4", (0, 2, 2): "E6",
    (1, 0, 1): "A1", (1, 0, 2): "Dk", (1, 0, 3): "E7",
    (0, 1, 1): "A1", (0, 1, 2): "D4", (0, 1, 3): "E6",
    (0, 0, 1): "A0", (0, 0, 2): "A2", (0, 0, 3): "Dk", (0, 0, 4): "E6",
}


@dataclass(frozen=True)
class ValuationProfile:
    """Vanishing orders of versal coefficients along a deformation arc.

    ``orders`` maps coefficient names to positive integers; float('inf')
    marks an identically vanishing pullback, and absent names are treated
    as unknown (they contribute no monomial).
    """

    type_name: str
    orders: Mapping[str, "int | float"]

    def order(self, name: str) -> "int | float | None":
        return self.orders.get(name)


@dataclass(frozen=True)
class SectionBound:
    column: Optional[str]
    witness: Optional[tuple[str, int]]

    @property
    def decided(self) -> bool:
        return self.column is not None


def _tilde_orders_e7(orders: Mapping[str, "int | float"]) -> dict[str, "int | float"]:
    """Orders of the two shifted coefficients used by the seven-variable type.

    The shifted weight-12 coefficient differs by a third of the square of
    the weight-6 one, the weight-18 one by further products; an order is
    reported only when the minimum below is strict or forced.
    """
    out = dict(orders)
    o6 = orders.get("eps6")
    o12 = orders.get("eps12")
    o18 = orders.get("eps18")

    def strict_min(cands):
        cands = [c for c in cands if c is not None]
        if not cands:
            return None
        m = min(cands)
        return m if sum(1 for c in cands if c == m) == 1 else None

    if o12 == 1:
        out["eps12t"] = 1
    elif o12 is not None and o6 is not None:
        m = strict_min([o12, 2 * o6])
        if m is not None:
            out["eps12t"] = m
    if o18 is not None and o6 is not None and o12 is not None:
        m = strict_min([o18, o6 + o12, 3 * o6])
        if m is not None:
            out["eps18t"] = m
    elif o18 == 2 and (o12 is not None and o12 > 1):
        out["eps18t"] = 2
    return out


def section_type(profile: ValuationProfile) -> SectionBound:
    """Leftmost monomial-table column reachable from the known orders."""
    tname = profile.type_name
    if tname.startswith("A"):
        n = int(tname[1:]) + 1
        if profile.order(f"alpha{n-1}") == 1 or profile.order(f"alpha{n}") in (1, 2):
            return SectionBound("A1", None)
        return SectionBound(None, None)
    if tname.startswith("D"):
        n = int(tname[1:])
        if profile.order(f"gamma{n}") == 1 or profile.order(f"delta{2*n-4}") == 1 \
                or profile.order(f"delta{2*n-2}") == 1:
            return SectionBound("A1", None)
        if profile.order(f"gamma{n}") == 2 or profile.order(f"delta{2*n-2}") == 3:
            return SectionBound("D4", None)
        return SectionBound(None, None)
    monomials = VERSAL_MONOMIALS[tname]
    orders = dict(profile.orders)
    if tname == "E7":
        orders = _tilde_orders_e7(orders)
        monomials = dict(monomials)
        monomials["eps12t"] = monomials.pop("eps12")
        monomials["eps18t"] = monomials.pop("eps18")
    best = None
    witness = None
    for name, (ypow, zpow) in monomials.items():
        d = orders.get(name)
        if d is None or d == float("inf"):
            continue
        col = MONOMIAL_COLUMNS.get((ypow, zpow, int(d)))
        if col is None:
            continue
        rank = COLUMNS.index(col)
        if best is None or rank < best:
            best = rank
            witness = (name, int(d))
    if best is None:
        return SectionBound(None, None)
    return SectionBound(COLUMNS[best], witness)
