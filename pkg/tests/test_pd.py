from __future__ import annotations

import random

import pytest
from hypothesis import given, strategies as st

from facecolor import pd
from facecolor.sampling import random_diagram


def test_parse_basic():
    d = pd.parse("G[M[1,2,2,1]]")
    assert d.matchings == ((1, 2, 2, 1),)
    assert d.virtuals == ()
    assert d.num_arcs == 2


def test_parse_with_virtuals_and_whitespace():
    d = pd.parse(" G[ M[1,2,3,4], M[3,4,1,2], V[1,3] ] ")
    assert d.num_matchings == 2
    assert d.virtuals == ((1, 3),)


def test_serialize_round_trip():
    text = "G[M[5,6,9,1],M[4,5,12,10],M[11,12,1,2],M[6,7,2,3],M[7,8,10,11],M[3,4,8,9],V[3,6],V[3,9],V[6,9]]"
    assert pd.serialize(pd.parse(text)) == text


@given(st.integers(1, 4), st.integers(0, 3), st.randoms(use_true_random=False))
def test_random_diagram_round_trips(num_sites, max_v, rng):
    d = random_diagram(rng, num_sites, max_v)
    assert pd.parse(pd.serialize(d)) == d
    assert pd.loads(pd.dumps(d)) == d


def test_syntax_errors_carry_position():
    with pytest.raises(pd.PdSyntaxError) as err:
        pd.parse("G[M[1,2,2]]")
    assert err.value.position > 0
    with pytest.raises(pd.PdSyntaxError):
        pd.parse("H[M[1,2,2,1]]")
    with pytest.raises(pd.PdSyntaxError):
        pd.parse("G[M[1,2,2,1]] extra")
    with pytest.raises(pd.PdSyntaxError):
        pd.parse("G[M[1,2,2,0]]")


def test_validation_errors_are_collected():
    with pytest.raises(pd.PdValidationError) as err:
        pd.parse("G[M[1,2,2,3]]")
    joined = " ".join(err.value.violations)
    assert "1" in joined and "3" in joined
    with pytest.raises(pd.PdValidationError):
        pd.parse("G[M[1,1,1,1]]")  # four ends of one arc
    with pytest.raises(pd.PdValidationError):
        pd.parse("G[M[1,2,2,1],V[1,3]]")  # unknown arc in a virtual


def test_free_loops_in_file_format():
    d = pd.loads("# comment\nloops: 2\nG[M[1,2,2,1]]\n")
    assert d.free_loops == 2
    assert pd.loads(pd.dumps(d)) == d
    only_loops = pd.loads("loops: 3\n")
    assert only_loops.num_matchings == 0 and only_loops.free_loops == 3


def test_empty_input_rejected():
    with pytest.raises(pd.PdSyntaxError):
        pd.loads("# nothing here\n")
    assert pd.validate(pd.PmDiagram((), (), 0))  # no sites, no loops: invalid


def test_self_crossing_virtual_is_legal():
    d = pd.parse("G[M[1,2,2,1],V[1,1]]")
    assert d.virtuals == ((1, 1),)
