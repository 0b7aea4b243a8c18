import json

import numpy as np
import pytest

from semihilbert import instance
from semihilbert.instance import Instance, ParseError


def _doc(**over):
    doc = {"dim": 2, "A": [[[1, 0], [0, 0]], [[0, 0], [2, 0]]], "operators": {"T": [[[0, 0], [1, -1]], [[0, 0], [0, 0]]]}}
    doc.update(over)
    return doc


def test_parse_and_roundtrip(tmp_path):
    inst = instance.from_dict(_doc(seed=3, tolerances={"psd_tol": 1e-9}))
    assert inst.operators["T"][0, 1] == 1 - 1j
    text = instance.dumps(inst)
    assert instance.parse(text) == inst
    assert instance.dumps(instance.parse(text)) == text
    p = tmp_path / "i.json"
    instance.save(str(p), inst)
    assert instance.load(str(p)) == inst
    assert not list(tmp_path.glob("*.tmp*"))


def test_real_shorthand_canonicalised():
    inst = instance.from_dict(_doc(A=[[1, 0], [0, 2.5]]))
    assert json.loads(instance.dumps(inst))["A"][1][1] == [2.5, 0.0]


def test_exact_float_roundtrip(rng):
    M = rng.standard_normal((3, 3)) + 1j * rng.standard_normal((3, 3))
    inst = Instance(3, np.eye(3, dtype=complex), {"M": M})
    np.testing.assert_array_equal(instance.parse(instance.dumps(inst)).operators["M"], M)


@pytest.mark.parametrize(
    "bad",
    [
        _doc(A=[[[1, 0], [0, 0]], [[0, 0]]]),
        _doc(A=[[[1, 0], [0, 0]]]),
        _doc(dim=0),
        _doc(dim=True),
        _doc(A=[[[1, 0, 0], [0, 0]], [[0, 0], [1, 0]]]),
        _doc(A=[[["1", 0], [0, 0]], [[0, 0], [1, 0]]]),
        _doc(tolerances={"bogus": 1e-3}),
        _doc(tolerances={"psd_tol": 2}),
        _doc(extra=1),
        _doc(seed=1.5),
        _doc(operators=[]),
        [1, 2],
    ],
)
def test_parse_rejects(bad):
    with pytest.raises(ParseError):
        instance.from_dict(bad)


def test_parse_rejects_non_finite_and_bad_json():
    with pytest.raises(ParseError):
        instance.parse('{"dim": 1, "A": [[[NaN, 0]]]}')
    with pytest.raises(ParseError):
        instance.parse('{"dim": 1, "A": [[[Infinity, 0]]]}')
    with pytest.raises(ParseError):
        instance.parse("{not json")
    with pytest.raises(ParseError):
        instance.load("/nonexistent/file.json")


def test_missing_operator():
    with pytest.raises(ParseError, match="no operator"):
        instance.from_dict(_doc()).operator("Q")
