import io as stdio
import json
from fractions import Fraction as F

import pytest
from hypothesis import given, settings

from sumcrit import io
from sumcrit.criticality import CriticalCase

from helpers import SQUARE
from strategies import pointsets


def test_parse_rational():
    assert io.parse_rational("3/4") == F(3, 4)
    assert io.parse_rational("-2") == -2
    assert io.parse_rational(5) == 5
    for bad in (0.5, True, "1.5", "1/0", "x", None):
        with pytest.raises(io.ParseError):
            io.parse_rational(bad)


def test_document_errors():
    for text in ("[", "{}", '{"dim": 0, "points": []}', '{"dim": 2, "points": [["1"]]}',
                 '{"dim": 1, "points": [["1"], ["1"]]}', '{"dim": 1, "points": 3}'):
        with pytest.raises(io.ParseError):
            io.loads(text)


@given(pointsets(3, 1, 6))
@settings(max_examples=50, deadline=None)
def test_roundtrip(S):
    assert io.loads(io.dumps(S)) == S


def test_file_roundtrip(tmp_path):
    path = tmp_path / "sq.json"
    io.save(SQUARE, str(path))
    assert io.load(str(path)) == SQUARE
    assert io.load(stdio.StringIO(path.read_text())) == SQUARE
    with pytest.raises(io.ParseError):
        io.load(str(tmp_path / "missing.json"))


def test_digest_is_order_independent():
    doc = json.loads(io.dumps(SQUARE))
    doc["points"].reverse()
    assert io.digest(io.pointset_from_doc(doc)) == io.digest(SQUARE)
    assert len(io.digest(SQUARE)) == 16


def test_to_jsonable():
    data = io.to_jsonable({"a": F(1, 2), "s": SQUARE, "c": CriticalCase.PRISM, "t": (1, F(2))})
    assert data == {"a": "1/2", "s": [["0", "0"], ["0", "1"], ["1", "0"], ["1", "1"]],
                    "c": "Prism_iii", "t": [1, "2"]}
    json.dumps(data)
