from fractions import Fraction

import pytest

import betgames


def test_muchgale_match_and_replay():
    r = betgames.play("class:cls=muchgale(2,0),c=1,n=4,k=1", "muchgale:l=2,i=0,n=4")
    assert r["status"] == "ALICE_WON"
    assert Fraction(r["cost"]) <= Fraction(1, 2)
    assert all(s[0] == "0" for s in r["enumerated"])
    assert betgames.replay(r["trace"])["identical"]


def test_exhaustive_variance_k1():
    r = betgames.play("variance-partial:a=4,Delta=1/1024,m=4,k=1", "variance-k1:a=4,m=4", baby="exhaustive")
    assert r["verdict"] == "ALICE_ALWAYS_WINS"
    assert Fraction(r["max_cost"]) < 1


def test_lp_half():
    # 0-sided depth-2 gale catching 01, variables in heap order.
    rows = [
        ([2, -1, -1, 0, 0, 0, 0], ">=", 0),
        ([0, 2, 0, -1, -1, 0, 0], ">=", 0),
        ([0, 0, 2, 0, 0, -1, -1], ">=", 0),
        ([0, 1, -1, 0, 0, 0, 0], ">=", 0),
        ([0, 0, 0, 1, -1, 0, 0], ">=", 0),
        ([0, 0, 0, 0, 0, 1, -1], ">=", 0),
        ([0, 0, 0, 0, 1, 0, 0], ">=", 1),
    ]
    program = {
        "num_vars": 7,
        "objective": ["1", "0", "0", "0", "0", "0", "0"],
        "constraints": [{"coeffs": [str(c) for c in a], "rel": rel, "rhs": str(b)} for a, rel, b in rows],
    }
    r = betgames.lp_solve(program)
    assert r["status"] == "OPTIMAL"
    assert Fraction(r["value"]) == Fraction(1, 2)


def test_claims_and_construction():
    assert betgames.verify_claim("sqrtvar", 500)["violations"] == 0
    bundle = betgames.construct(fixture=True)
    assert bundle["prefix"] == "00010000"


def test_block_roots_and_errors():
    assert betgames.lex_block_roots(4)[:4] == ["00", "011", "010", "110"]
    with pytest.raises(Exception):
        betgames.play("nonsense", "single-leaf:n=1")
