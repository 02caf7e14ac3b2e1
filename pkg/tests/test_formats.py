import json

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from shortpivot import formats
from shortpivot.decompose import decompose
from shortpivot.errors import FormatError
from shortpivot.game import Direction, MatrixGame, game_decompose, solve_game
from shortpivot.model import CanonicalLP, generate_instance
from shortpivot.oracle import enumerate_lp
from shortpivot.simplex import solve_canonical


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 6), st.integers(1, 6), st.integers(0, 10**6))
def test_instance_and_trace_round_trip(m, n, seed):
    lp = generate_instance(m, n, seed)
    text = formats.dump_instance(lp)
    back = formats.load_instance(text)
    assert back == lp
    assert formats.dump_instance(back) == text
    trace = decompose(lp, solve_canonical(lp).certificate)
    ttext = formats.dump_trace(trace)
    tback = formats.load_trace(ttext)
    assert tback == trace
    assert formats.dump_trace(tback) == ttext


def test_indices_are_one_based_in_files():
    lp = CanonicalLP([[2, 1], [1, 2]], [3, 3], [3, 3])
    obj = json.loads(formats.dump_trace(decompose(lp, solve_canonical(lp).certificate)))
    assert obj["pivots"] == [[2, 1], [1, 2]]
    assert obj["levels"][0]["R"] == [2] and obj["levels"][0]["C"] == [1]
    assert obj["levels"][1]["objective"] == "6"
    cert = json.loads(formats.dump_certificate(solve_canonical(lp).certificate))
    assert cert["R"] == [1, 2] and cert["x"] == ["1", "1"]


def test_rationals_written_as_strings():
    lp = CanonicalLP([["1/2", -3]], ["-5/4"], [1, "7/3"])
    obj = json.loads(formats.dump_instance(lp))
    assert obj["A"] == [["1/2", "-3"]] and obj["b"] == ["-5/4"] and obj["c"] == ["1", "7/3"]


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 5), st.integers(1, 5), st.integers(0, 10**6))
def test_game_trace_round_trip(m, n, seed):
    import random

    rng = random.Random(seed)
    game = MatrixGame([[rng.randint(-4, 4) for _ in range(n)] for _ in range(m)])
    assert formats.load_game(formats.dump_game(game)) == game
    for direction in Direction:
        trace = game_decompose(game, solve_game(game), direction)
        text = formats.dump_game_trace(trace)
        back = formats.load_game_trace(text)
        assert back == trace and formats.dump_game_trace(back) == text


def test_matrix_text_parsing():
    game = formats.load_game("# pennies\n1, -1\n-1; 1\n")
    assert game.M.tolist() == [[1, -1], [-1, 1]]
    assert formats.load_game("1/2 0\t-3\n").M.tolist() == [[formats.to_rational("1/2"), 0, -3]]
    with pytest.raises(FormatError):
        formats.load_game("1 2\n3\n")
    with pytest.raises(FormatError):
        formats.load_game("1 x\n")
    with pytest.raises(FormatError):
        formats.load_game("")


def test_structured_game_input():
    text = json.dumps({"format": "shortpivot.instance", "M": [["1", "-1"], ["-1", "1"]]})
    assert formats.load_game(text).M.tolist() == [[1, -1], [-1, 1]]


@pytest.mark.parametrize(
    "text",
    [
        "not json",
        "[]",
        json.dumps({"format": "shortpivot.trace"}),
        json.dumps({"format": "shortpivot.instance", "m": 1, "n": 2, "A": [["1"]], "b": ["1"], "c": ["1"]}),
        json.dumps({"format": "shortpivot.instance", "m": 1, "n": 1, "A": [["1"]], "b": ["1"], "c": [0.5]}),
        json.dumps({"format": "shortpivot.instance", "m": 1, "n": 1, "A": [["1"]], "b": ["1"]}),
    ],
)
def test_malformed_instances_rejected(text):
    with pytest.raises(FormatError):
        formats.load_instance(text)


def test_malformed_trace_rejected():
    lp = generate_instance(3, 3, 5)
    obj = formats.trace_to_dict(decompose(lp, solve_canonical(lp).certificate))
    obj["r"] = obj["r"] + 1
    with pytest.raises(FormatError):
        formats.trace_from_dict(obj)
    obj = formats.trace_to_dict(decompose(lp, solve_canonical(lp).certificate))
    obj["pivots"] = [[0, 1]]
    obj["r"] = 1
    with pytest.raises(FormatError):
        formats.trace_from_dict(obj)


def test_report_and_summary_rows():
    lp = CanonicalLP([[2, 1], [1, 2]], [3, 3], [3, 3])
    rep = enumerate_lp(lp, instance_id="lp22")
    obj = json.loads(formats.dump_report(rep))
    assert obj["format"] == "shortpivot.enumeration"
    assert [[2, 1], [1, 2]] in obj["sequences"]
    infeasible = enumerate_lp(CanonicalLP([[-1]], [1], [1]), instance_id="none")
    rows = formats.summary_rows([rep, infeasible])
    lines = rows.splitlines()
    assert lines[0] == "instance_id,certificates,sequences,min_length,max_length"
    assert lines[1].startswith("lp22,") and lines[1].endswith(",2,2")
    assert lines[2] == "none,0,0,,"
