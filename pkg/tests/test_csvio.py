import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from erglab.csvio import SCHEMA, dumps, loads, read_csv, write_csv


def test_layout():
    text = dumps("tail", ["k", "t_k", "W_k"], [(0, 1.0, 1.0), (1, 0.5, 1.5)])
    lines = text.splitlines()
    assert lines[0] == f"# {SCHEMA} tail"
    assert lines[1] == "k,t_k,W_k"
    assert lines[2] == "0,1.0,1.0"


def test_special_values_round_trip(tmp_path):
    rows = [(np.int64(3), True, None, math.inf, math.nan, 0.1)]
    path = tmp_path / "x.csv"
    write_csv(path, "demo", ["a", "b", "c", "d", "e", "f"], rows)
    t = read_csv(path)
    assert t.command == "demo"
    r = t.rows[0]
    assert r[0] == 3 and r[1] is True and r[2] is None and r[3] == math.inf and math.isnan(r[4]) and r[5] == 0.1


@given(st.lists(st.tuples(st.integers(-10**12, 10**12), st.floats(allow_nan=False)), max_size=20))
def test_round_trip_exact(rows):
    t = loads(dumps("simulate", ["i", "x"], rows))
    assert [tuple(r) for r in t.rows] == [tuple(r) for r in rows]
    assert t.column("i") == [r[0] for r in rows]


def test_errors():
    with pytest.raises(ValueError):
        dumps("x", ["a", "b"], [(1,)])
    with pytest.raises(ValueError):
        loads("a,b\n1,2\n")
