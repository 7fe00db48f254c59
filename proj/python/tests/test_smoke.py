from fractions import Fraction
from pathlib import Path

import pytest

import epilip

DATA = Path(__file__).resolve().parents[2] / "data"


@pytest.fixture
def ex61():
    return epilip.load_problem(DATA / "example6_1.prob")


@pytest.fixture
def ex52():
    return epilip.load_problem(DATA / "example5_2.prob")


def test_problem_fields(ex61):
    assert (ex61.n, ex61.q, ex61.m) == (2, 1, 4)
    assert ex61.nominal == [-2, 1, -2, 7]
    assert ex61.image([1, 1]) == [3]


def test_single_objective_example(ex61):
    sol = epilip.solve(ex61, ex61.nominal)
    assert sol["status"] == "optimal"
    assert sol["value"] == 3
    assert sol["dual"] == [Fraction(5, 3), Fraction(1, 3), 0, 0]

    vf = epilip.value_function(ex61)
    assert len(vf["pieces"]) == 4
    assert vf["value_at_nominal"] == 3

    dp = epilip.subdiff(ex61, "p", [3])
    assert dp["exactness"] == "exact"
    assert dp["pieces"][0]["vertices"] == [
        [Fraction(-5, 3), Fraction(-1, 3), 0, 0],
        [-1, 0, Fraction(-1, 2), 0],
    ]
    ep = epilip.modulus(ex61, "ep", [3])
    assert ep["exact"] == 2
    ef = epilip.modulus(ex61, "ef", ["1", "1"])
    assert ef["square"] == Fraction(4, 5)


def test_elimination(ex61):
    sys = epilip.eliminate(ex61, [("cone", [2, 1]), ("span", [-1, 2])])
    assert "0" not in sys["conditions"]
    assert sorted(sys["conditions"]) == ["7b1+2b2+3b4", "b1+b3+b4"]
    assert sys == epilip.epigraph_system(ex61)


def test_pareto(ex52):
    assert not epilip.is_nondominated(ex52, [0, 0], [1, 0])
    assert epilip.dominate(ex52, [0, 0], [1, 0]) == [0, 0]
    with pytest.raises(epilip.EpilipError) as info:
        epilip.pareto_point(ex52, [0, 0], [1, 0])
    assert info.value.name == "invalid-weights"


def test_sampling(ex52):
    est = epilip.empirical_lip(ex52, "p", [0, 0], samples=500, seed=3)
    assert 1.5 < est["approx"] <= 5 ** 0.5
    assert epilip.convexity_check(ex52, samples=50)


def test_cli_entry_point():
    code, out, _ = epilip.run_cli(["modulus", str(DATA / "example6_1.prob"), "--target", "ep"])
    assert code == 0
    assert "value: 2 (exact)" in out.splitlines()
    code, _, err = epilip.run_cli(["nonsense"])
    assert code == 2
