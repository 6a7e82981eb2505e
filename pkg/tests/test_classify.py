import random
from fractions import Fraction

import pytest

from rdpinv.classify import (
    COLUMNS,
    NotRDPError,
    RdpType,
    SectionBound,
    UndecidableError,
    ValuationProfile,
    length_type,
    rdp_type,
    section_type,
)
from rdpinv.congruence import KEY_CASES
from rdpinv.poly import VarTable, parse

T = VarTable(["X", "Y", "Z"], [1, 1, 1])


def P(text):
    return parse(text, T)


NORMAL_FORMS = [
    ("-X*Y + Z^2", "A1"), ("-X*Y + Z^3", "A2"), ("-X*Y + Z^4", "A3"),
    ("-X*Y + Z^5", "A4"), ("-X*Y + Z^7", "A6"), ("-X*Y + Z^9", "A8"),
    ("-X^2 - Y^2*Z + Z^2", "A3"),  # the smallest D-shape falls in the A series
    ("-X^2 - Y^2*Z + Z^3", "D4"), ("-X^2 - Y^2*Z + Z^4", "D5"),
    ("-X^2 - Y^2*Z + Z^5", "D6"), ("-X^2 - Y^2*Z + Z^6", "D7"),
    ("-X^2 - Y^2*Z + Z^7", "D8"),
    ("-X*Y + Z^5", "A4"),                 # the E4 representative
    ("-X^2 - Y^2*Z + Z^4", "D5"),         # the E5 representative
    ("-X^2 - X*Z^2 + Y^3", "E6"),
    ("-X^2 - Y^3 + 16*Y*Z^3", "E7"),
    ("-X^2 + Y^3 - Z^5", "E8"),
]


def random_linear_rules(rng):
    while True:
        M = [[Fraction(rng.randint(-3, 3)) for _ in range(3)] for _ in range(3)]
        det = (M[0][0] * (M[1][1] * M[2][2] - M[1][2] * M[2][1])
               - M[0][1] * (M[1][0] * M[2][2] - M[1][2] * M[2][0])
               + M[0][2] * (M[1][0] * M[2][1] - M[1][1] * M[2][0]))
        if det != 0:
            break
    return {v: sum((M[i][j] * T.var(w) for j, w in enumerate("XYZ")), T.zero())
            for i, v in enumerate("XYZ")}


@pytest.mark.parametrize("text,want", NORMAL_FORMS)
def test_normal_forms(text, want):
    assert rdp_type(P(text), jet_order=10).name == want


@pytest.mark.parametrize("text,want", NORMAL_FORMS)
def test_random_linear_changes(text, want):
    rng = random.Random(hash((text, want)) & 0xFFFF)
    base = P(text)
    for _ in range(5):
        moved = base.substitute(random_linear_rules(rng), max_total_degree=10)
        assert rdp_type(moved, jet_order=10).name == want


def test_smooth_point():
    assert rdp_type(P("X + Y^2 + Z^5")).smooth


def test_e7_branch_example():
    assert rdp_type(P("X^2 + Y^3 + Y*Z^3")).name == "E7"


def test_not_rdp_detected():
    with pytest.raises(NotRDPError):
        rdp_type(P("X^3 + Y^3 + Z^3"))  # multiplicity three
    with pytest.raises(NotRDPError):
        rdp_type(P("X^2 + Y^4 + Z^4"))  # no cubic after the square
    with pytest.raises(NotRDPError):
        rdp_type(P("X^2 + Y^3 + Z^7"))  # beyond the last exceptional type


def test_jet_too_short():
    with pytest.raises(UndecidableError):
        rdp_type(P("-X*Y + Z^9"), jet_order=6)
    with pytest.raises(UndecidableError):
        rdp_type(P("-X^2 - Y^2*Z + Z^7"), jet_order=5)


def test_origin_must_vanish():
    with pytest.raises(ValueError):
        rdp_type(P("1 + X"))


def test_length_type():
    names = [length_type(i).name for i in range(1, 7)]
    assert names == ["A1", "D4", "E6", "E7", "E8", "E8"]
    with pytest.raises(ValueError):
        length_type(7)


def test_section_examples():
    assert section_type(ValuationProfile("E7", {"eps12": 1})).column == "A1"
    assert section_type(ValuationProfile("E8", {"eps8": 1})).column == "E7"
    assert section_type(ValuationProfile("E6", {"eps12": 1})).column == "A0"
    assert section_type(ValuationProfile("E6", {})).column is None


def test_section_covers_the_key_cases():
    for case in KEY_CASES:
        profile = ValuationProfile(f"E{case.parent}", {case.target: case.degree})
        bound = section_type(profile)
        assert bound.column == case.section, (case.label, bound)


def test_section_a_and_d_rules():
    assert section_type(ValuationProfile("A5", {"alpha5": 1})).column == "A1"
    assert section_type(ValuationProfile("A5", {"alpha6": 2})).column == "A1"
    assert section_type(ValuationProfile("A5", {"alpha6": 3})).column is None
    assert section_type(ValuationProfile("D6", {"gamma6": 1})).column == "A1"
    assert section_type(ValuationProfile("D6", {"gamma6": 2})).column == "D4"
    assert section_type(ValuationProfile("D6", {"delta10": 3})).column == "D4"


def test_section_monotone_in_every_order():
    rng = random.Random(12)
    coords = {"E6": ["eps2", "eps5", "eps6", "eps8", "eps9", "eps12"],
              "E8": ["eps2", "eps8", "eps12", "eps14", "eps18", "eps20",
                     "eps24", "eps30"]}
    for tname, names in coords.items():
        for _ in range(40):
            orders = {nm: rng.randint(1, 5) for nm in rng.sample(names, 3)}
            before = section_type(ValuationProfile(tname, orders)).column
            bump = rng.choice(sorted(orders))
            orders2 = dict(orders)
            orders2[bump] += 1
            after = section_type(ValuationProfile(tname, orders2)).column
            rank = lambda c: COLUMNS.index(c) if c else len(COLUMNS)
            assert rank(after) >= rank(before), (tname, orders, bump)


def test_infinite_orders_contribute_nothing():
    profile = ValuationProfile("E8", {"eps30": float("inf"), "eps24": 3})
    assert section_type(profile).column == "E6"
