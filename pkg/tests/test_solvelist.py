import random
from fractions import Fraction

import pytest

from rdpinv.envres import (
    VersalPipeline,
    eps_names,
    mu_inverse,
    mu_rules,
    phibar_template,
    pipeline_table,
)
from rdpinv.poly import VarTable, parse
from rdpinv.solvelist import RuleCache, RuleSet, SolveList, ValidityViolation, compose


def test_synthetic_solve_list():
    table = VarTable(["X", "Y", "a", "b", "c"], [1, 1, 0, 0, 0])
    template = table.var("a") * table.var("X") + (table.var("b") + 2 * table.var("c")) * table.var("Y")
    sl = SolveList.of(RuleSet.identity(), template, [({"X": 1}, "a"), ({"Y": 1}, "c")],
                      ("X", "Y"))
    rules = sl.expand()
    assert rules["a"].is_zero
    assert rules["c"] == table.var("b") * Fraction(-1, 2)


def test_validity_violation_reports_first_bad_pair():
    table = VarTable(["X", "Y", "a", "b"], [1, 1, 0, 0])
    # the unknown of the second pair has a non-constant coefficient
    template = table.var("a") * table.var("X") + table.var("a") * table.var("b") * table.var("Y")
    sl = SolveList.of(RuleSet.identity(), template, [({"X": 1}, "a"), ({"Y": 1}, "b")],
                      ("X", "Y"))
    with pytest.raises(ValidityViolation) as err:
        sl.expand()
    assert err.value.index == 1


def test_ordering_violation_detected():
    table = VarTable(["X", "Y", "a", "b"], [1, 1, 0, 0])
    # the second unknown already occurs in the first coefficient
    template = (table.var("a") + table.var("b")) * table.var("X") \
        + (table.var("b") + 1) * table.var("Y")
    sl = SolveList.of(RuleSet.identity(), template, [({"X": 1}, "a"), ({"Y": 1}, "b")],
                      ("X", "Y"))
    with pytest.raises(ValidityViolation) as err:
        sl.expand()
    assert err.value.index == 1 and err.value.variable == "b"


def test_compose_identity_and_associativity():
    table = VarTable(["u", "v", "w"], [1, 1, 1])
    u, v, w = (table.var(n) for n in "uvw")
    r = RuleSet.of([("u", v + w), ("v", u * u)])
    s = RuleSet.of([("v", w + 1)])
    t = RuleSet.of([("w", u - v)])
    assert compose(RuleSet.identity(), r).mapping() == r.mapping()
    left = compose(compose(r, s), t)
    right = compose(r, compose(s, t))
    probe = u + 2 * v + 3 * w * w
    assert left.apply(probe) == right.apply(probe)


def test_compose_matches_sequential_application():
    table = VarTable(["u", "v", "w"], [1, 1, 1])
    u, v, w = (table.var(n) for n in "uvw")
    outer = RuleSet.of([("u", v + 1), ("w", u * v)])
    inner = RuleSet.of([("v", u + w)])
    combined = compose(outer, inner)
    rng = random.Random(11)
    for _ in range(10):
        point = {n: Fraction(rng.randint(-5, 5), rng.randint(1, 4)) for n in "uvw"}
        probe = u * u + 3 * v - w
        assert combined.apply(probe).evaluate(point) == \
            outer.apply(inner.apply(probe)).evaluate(point)


def test_mu_rules_invert_on_generators():
    for n in (6, 7, 8):
        table = pipeline_table(n)
        ident = compose(mu_rules(n), mu_inverse(n))
        for v in ("X", "Y", "Z", "W"):
            assert ident[v] == table.var(v), (n, v)


def test_partial_expansion_agrees_with_full(pipe6):
    sl = pipe6.versal_solvelist()
    full = sl.expand()
    partial = sl.expand(upto=3)
    for v, value in partial.rules:
        assert full[v] == value


def test_psi_first_solutions_match_triangular_form():
    # over free barred symbols the first solved values are visible directly
    for n, var, expect in ((6, "psi1", "-1/3*phib1"), (7, "psi2", "-phib2"),
                           (8, "psi4", "-1/3*phib4")):
        sl = SolveList.of(mu_rules(n), phibar_template(n),
                          {6: [({"Y": 2, "Z": 1}, "psi1")],
                           7: [({"Z": 4}, "psi2")],
                           8: [({"Y": 2, "Z": 1, "W": 1}, "psi4")]}[n],
                          ("X", "Y", "Z", "W"))
        rules = sl.expand()
        assert rules[var] == parse(expect, pipeline_table(n))


def _displayed_triangular_system(n):
    """The eliminated coefficient equations, transcribed for cross-checking."""
    t = pipeline_table(n)
    p = parse
    if n == 6:
        return [
            ("psi1", p("3*psi1 + phib1", t)),
            ("psi2", p("-2*psi2 + phib2", t)),
            ("psi3p", p("-psi3p + phib3pp + ebar2*psi1 + psi1^3 + phib1*psi1^2", t)),
            ("psi3pp", p("-2*psi3p - 2*psi3pp + phib3p + phib2*psi1", t)),
            ("psi4", p("3*psi4 + phib1*psi3pp - psi2^2 + phib2*psi2 + phib4", t)),
            ("psi6", p("-2*psi6 + phib2*psi4 + phib3p*psi3pp - psi3pp^2 + phib6", t)),
        ]
    if n == 7:
        return [
            ("psi2", p("16*psi2 + 16*phib2", t)),
            ("psi4", p("48*psi4 - 3*psi2^2 + phib4 + 2*ebar2*psi2 - 2*phib2*psi2", t)),
            ("psi6", p("16*psi6 + 16*phib6 - psi2^3 + 48*psi2*psi4 + ebar2*psi2^2"
                       " + 64*phib2*psi4 - phib2*psi2^2 + phib4*psi2", t)),
        ]
    return [
        ("psi4", p("3*psi4 + phib4", t)),
        ("psi6", p("-5*psi6 + phib6 + ebar2*psi4", t)),
        ("psi10", p("3*psi10 + phib10 + phib4*psi6", t)),
    ]


@pytest.mark.parametrize("n", [6, 7, 8])
def test_psi_system_matches_displayed_equations(n):
    from rdpinv.envres import _PSI_PAIRS

    sl = SolveList.of(mu_rules(n), phibar_template(n), _PSI_PAIRS[n], ("X", "Y", "Z", "W"))
    got = sl.expand()
    solved = {}
    for var, eq in _displayed_triangular_system(n):
        value = eq.substitute(solved).solve_linear(var)
        solved[var] = value
    for var, expect in solved.items():
        assert got[var] == expect, (n, var)


def test_pull_back_commutes_with_expansion(pipe6, cache):
    rng = random.Random(23)
    table = pipeline_table(6)
    for trial in range(3):
        param = RuleSet.of([
            (f"s{i}", table.const(Fraction(rng.randint(-3, 3), rng.randint(1, 3))))
            for i in range(1, 7)])
        for sl in (pipe6.bar_solvelist(), pipe6.versal_solvelist()):
            direct = sl.expand()
            pulled = sl.pull_back(param).expand()
            for v, value in pulled.rules:
                assert value == direct[v].substitute(param.mapping()), (trial, v)


def test_central_fiber_pull_back(pipe7):
    param = RuleSet.of([(f"s{i}", pipeline_table(7).zero()) for i in range(1, 8)])
    rules = pipe7.versal_solvelist().pull_back(param).expand()
    for name in eps_names(7):
        assert rules[name].is_zero


def test_cache_round_trip(tmp_path):
    table = VarTable(["X", "a", "b"], [1, 0, 0])
    template = (table.var("a") + 2) * table.var("X") + table.var("b") * table.var("X") ** 2
    sl = SolveList.of(RuleSet.identity(), template, [({"X": 1}, "a")], ("X",))
    cache = RuleCache(tmp_path)
    first = cache.expand(sl)
    assert cache.path_for(sl.content_key()).exists()
    fresh = RuleCache(tmp_path)
    again = fresh.expand(sl)
    assert again.mapping() == first.mapping()
    # key reflects content: a different template gives a different key
    sl2 = SolveList.of(RuleSet.identity(), template + 1, [({"X": 1}, "a")], ("X",))
    assert sl2.content_key() != sl.content_key()


def test_cache_file_carries_its_key(tmp_path):
    import json

    table = VarTable(["X", "a"], [1, 0])
    sl = SolveList.of(RuleSet.identity(), (table.var("a") + 1) * table.var("X"),
                      [({"X": 1}, "a")], ("X",))
    cache = RuleCache(tmp_path)
    cache.expand(sl)
    payload = json.loads(cache.path_for(sl.content_key()).read_text())
    assert payload["key"] == sl.content_key()


def test_chain_agrees_with_direct_substitution_at_random_points(pipe6):
    rng = random.Random(5)
    rpi = pipe6.r_pi()
    table = pipeline_table(6)
    probe = parse("X*W - Y^2 + Z*W", table)
    names = sorted(rpi.apply(probe).variables() | {"x", "y", "z"})
    for _ in range(5):
        point = {nm: Fraction(rng.randint(-4, 4), rng.randint(1, 3)) for nm in names}
        direct = rpi.apply(probe).evaluate(point)
        stepwise = probe.substitute(
            {v: table.const(rpi[v].evaluate(point)) for v in "XYZW"}).evaluate(point)
        assert direct == stepwise
