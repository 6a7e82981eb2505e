from fractions import Fraction

import pytest

from rdpinv.congruence import (
    KEY_CASES,
    LAM_TABLE,
    RestrictionError,
    case_param,
    case_pullback_poly,
    coord_pullbacks,
    derive_restricted,
    dist_relation,
    key_case,
    key_constant,
    low_order_congruences,
    phi_pullback,
    pullback_eps,
    scf_names,
    vanishing_coordinates,
)
from rdpinv.distpoly import elem_sym, standard_coords, ts_table
from rdpinv.poly import parse
from rdpinv.rootsys import Spec, supported_splits, vertex_split

ALL_SPECS = ["A2", "A3", "A4", "A5", "A6", "A7", "A8", "D2", "D3", "D4", "D5",
             "D6", "D7", "D8", "E3", "E4", "E5", "E6", "E7", "E8"]


def L(text):
    return parse(text, LAM_TABLE)


# -- relations at a vertex -------------------------------------------------------


def test_dist_relation_every_supported_pair():
    for name in ALL_SPECS:
        spec = Spec.from_name(name)
        for k in supported_splits(spec):
            assert dist_relation(spec, k).ok, (name, k)


def test_dist_relation_missing_factor_divides_exactly():
    # the k = 2 rows only make sense because one linear factor cancels
    for name in ("E5", "E6", "E7", "E8"):
        assert dist_relation(Spec.from_name(name), 2).ok


# -- low-order congruences --------------------------------------------------------


def test_low_order_congruences_a_and_d():
    for name in ("A4", "A5", "A6", "A7", "A8"):
        spec = Spec.from_name(name)
        for k in range(1, spec.n):
            assert all(low_order_congruences(spec, k).values()), (name, k)
    for name in ("D4", "D5", "D6", "D7", "D8"):
        spec = Spec.from_name(name)
        for k in list(range(1, spec.n - 1)) + [spec.n]:
            assert all(low_order_congruences(spec, k).values()), (name, k)


def test_a_case_against_t_level_oracle():
    # oracle: expand the split functionals directly and reduce mod the vertex
    spec, k = Spec("A", 5), 2
    vs = vertex_split(spec, k)
    sub = {v: p.substitute({"mu1": 0}) for v, p in vs.rules.rules}
    table = sub["t1"].table
    ts = [sub[f"t{i}"] for i in range(1, 6)]
    alpha5 = elem_sym(ts, 5)
    alpha4 = elem_sym(ts, 4)
    tp = [table.var(f"tp{i}") for i in (1, 2)]
    tq = [table.var(f"tq{i}") for i in (1, 2, 3)]
    assert alpha5 == elem_sym(tp, 2) * elem_sym(tq, 3)
    assert alpha4 == elem_sym(tp, 1) * elem_sym(tq, 3) + elem_sym(tp, 2) * elem_sym(tq, 2)


# -- restricted polynomials ---------------------------------------------------------


TABLE8 = {
    "D6": "U^6 - lam5*U",
    "D7": "U^7 + lam1*U^6 + 1/2*lam1^2*U^5 + lam3*U^4 + lam1*lam3*U^3 - 1/8*lam1^4*U^3"
          " + lam5*U^2 + lam1*lam5*U - 1/2*lam3*lam1^3*U + 1/16*lam1^6*U + 1/2*lam3^2*U",
    "E4": "U^4 + lam1*U^3 + 3/5*lam1^2*U^2 + 1/25*lam1^3*U + 11/125*lam1^4",
    "E5": "U^5 + lam1*U^4 + 5/8*lam1^2*U^3 + lam3*U^2 + 15/128*lam1^4*U - 1/2*lam1*lam3*U"
          " + 27/256*lam1^5 - 1/2*lam1^2*lam3",
    "E6": "U^6 + lam1*U^5 + 2/3*lam1^2*U^4 + lam3*U^3 + lam4*U^2 + 1/3*lam1*lam4*U"
          " - 1/3*lam3*lam1^2*U + 2/27*lam1^5*U + 5/18*lam1^2*lam4 - 1/9*lam3*lam1^3"
          " + 11/486*lam1^6 - 1/8*lam3^2",
    "E7": "U^7 + lam1*U^6 + 3/4*lam1^2*U^5 + lam3*U^4 + lam4*U^3 + lam5*U^2 - 1/8*lam3^2*U"
          " + 3/64*lam1^6*U - 3/16*lam3*lam1^3*U - 1/4*lam1*lam5*U + 3/8*lam1^2*lam4*U + lam7",
}


@pytest.mark.parametrize("name", sorted(TABLE8))
def test_restricted_polynomials_match_table(name, cache):
    rp = derive_restricted(Spec.from_name(name), cache=cache)
    assert rp.r == L(TABLE8[name]), name


def test_restricted_constant_terms(cache):
    assert derive_restricted(Spec.from_name("E4")).constant_pullback == \
        L("243/3125*lam1^5")
    assert derive_restricted(Spec.from_name("E5")).constant_pullback == \
        L("2601/16384*lam1^8 + 9/4*lam3^2*lam1^2 - 153/128*lam1^5*lam3")
    assert derive_restricted(Spec.from_name("D6")).constant_pullback == L("lam5^2")
    d7 = derive_restricted(Spec.from_name("D7"))
    base = L("lam1*lam5 - 1/2*lam3*lam1^3 + 1/16*lam1^6 + 1/2*lam3^2")
    assert d7.constant_pullback == base * base


def test_a_family_both_forms():
    plain = derive_restricted(Spec.from_name("A5"))
    assert plain.r == L("U^6 + lam6")
    assert plain.constant_pullback == L("lam6")
    root = derive_restricted(Spec.from_name("A5"), form="root")
    assert root.r == L("U^6 - lam1^6")
    assert root.constant_pullback == L("-lam1^6")


def test_restriction_annihilates_exactly_the_listed_coordinates(cache):
    for name in ("A6", "D6", "D7", "E4", "E5", "E6", "E7"):
        spec = Spec.from_name(name)
        rp = derive_restricted(spec, cache=cache)
        pulls = coord_pullbacks(spec, rp.s_rules, cache)
        max_w = 0
        for nm in rp.vanishing:
            assert pulls[nm].is_zero, (name, nm)
            max_w = max(max_w, int(standard_coords(spec)[nm].homogeneous_weight())
                        if spec.family != "E" or spec.n <= 5 else max_w)
        assert not pulls[rp.constant_name].is_zero, name
        for nm, val in pulls.items():
            if nm not in rp.vanishing and nm != rp.constant_name:
                w = val.homogeneous_weight()
                if w is not None and w <= max_w:
                    assert not val.is_zero, (name, nm)


def test_unsupported_restriction_rejected():
    with pytest.raises(RestrictionError):
        derive_restricted(Spec.from_name("D5"))


# -- case pullbacks ------------------------------------------------------------------


def test_vertex0_pullbacks():
    for n in (6, 7, 8):
        case = key_case(f"E{n}:v0")
        pf = case_pullback_poly(case)
        assert pf == L(f"U^{n} + lam{n}")


def test_e7_v1_pullback_shape():
    pf = case_pullback_poly(key_case("E7:v1"))
    assert pf == L("U^7 + lam5*U^2")


def test_e8_v1_pullback_uses_the_odd_restriction(cache):
    pf = case_pullback_poly(key_case("E8:v1"), cache)
    rp = derive_restricted(Spec.from_name("D7"), cache=cache)
    U = LAM_TABLE.var("U")
    lam1 = LAM_TABLE.var("lam1")
    head = -U + Fraction(1, 3) * lam1
    assert pf == head * rp.r.substitute({"U": -U - Fraction(1, 6) * lam1})


def test_displayed_delta8_pullback(cache):
    rp = derive_restricted(Spec.from_name("D7"), cache=cache)
    pulls = coord_pullbacks(Spec.from_name("D7"), rp.s_rules, cache, ["delta8"])
    assert pulls["delta8"] == L(
        "lam1^3*lam5 - 3/4*lam1^5*lam3 + 3/2*lam1^2*lam3^2 + 5/64*lam1^8 - 2*lam3*lam5")


def test_e7_v1_eps10_value(cache):
    eps = pullback_eps(key_case("E7:v1"), cache)
    assert eps == L("16*lam5^2")


def test_e8_v5_against_direct_substitution(cache, pipe8):
    # oracle: substitute the coefficient rules into the fully expanded value
    case = key_case("E8:v5")
    via_pullback = pullback_eps(case, cache)
    param = case_param(case, cache)
    direct = pipe8.versal_rules()["eps8"].substitute(param.mapping())
    assert via_pullback == direct


def test_phi_pullback_right_side_uses_a_root(cache):
    case = key_case("E7:v2")
    assert phi_pullback(case, cache) == L("-lam1^6")


@pytest.mark.parametrize("case", KEY_CASES, ids=lambda c: c.label)
def test_key_constants(case, cache):
    res = key_constant(case, cache)
    assert res.ok, (case.label, res.computed, res.expected)


def test_scf_names_and_vanishing_sets():
    assert scf_names(Spec.from_name("D4")) == ["gamma4", "delta2", "delta4", "delta6"]
    assert vanishing_coordinates(Spec.from_name("E6")) == ("eps2", "eps5", "eps6")
    assert vanishing_coordinates(Spec.from_name("D6"))[0] == "gamma6"
