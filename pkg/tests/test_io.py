import json
import random
from fractions import Fraction as F

import pytest

from grouplab import io as gio
from grouplab.errors import ParseError
from grouplab.groups import Dihedral, HeisenbergModP, Lamplighter, ZD, cyclic
from grouplab.harmonic import harmonic_space, space_eq
from grouplab.measures import uniform

from conftest import ALL_GROUPS, random_measure


def test_rational_format():
    assert gio.format_rational(F(3)) == "3/1"
    assert gio.format_rational(F(-2, 6)) == "-1/3"
    assert gio.parse_rational("6/16") == F(3, 8)
    for bad in ("3/0", "x", 0.5, None, True):
        with pytest.raises(ParseError):
            gio.parse_rational(bad, "entries[0]")
    with pytest.raises(ParseError, match="zero denominator"):
        gio.parse_rational("3/0")


@pytest.mark.parametrize("g", ALL_GROUPS, ids=str)
def test_measure_roundtrip(g):
    rng = random.Random(9)
    for mode in ("rational", "real"):
        m = random_measure(rng, g, 5, signed=True, mode=mode)
        text = gio.dumps(gio.measure_to_json(m))
        back = gio.measure_from_json(json.loads(text))
        assert back == m and back.group == g


def test_measure_errors_name_entry():
    data = {"group": {"kind": "finite_abelian", "orders": [3]}, "mode": "rational",
            "entries": [[[0], "1/2"], [[1], "3/0"]]}
    with pytest.raises(ParseError, match=r"entries\[1\]"):
        gio.measure_from_json(data)
    data["entries"][1] = [[7], "1/2"]
    with pytest.raises(ParseError, match=r"entries\[1\]"):
        gio.measure_from_json(data)
    data["entries"][1] = [[0], "1/2"]
    with pytest.raises(ParseError, match="twice"):
        gio.measure_from_json(data)
    with pytest.raises(ParseError):
        gio.measure_from_json({"entries": []})
    with pytest.raises(ParseError):
        gio.measure_from_json({"group": {"kind": "zd", "d": 1}, "entries": []}, ZD(2))


def test_read_json_errors(tmp_path):
    p = tmp_path / "bad.json"
    p.write_text('{"a": 1,\n "b": }')
    with pytest.raises(ParseError, match="line 2"):
        gio.read_json(p)
    with pytest.raises(ParseError):
        gio.read_json(tmp_path / "missing.json")


def test_basis_roundtrip(tmp_path):
    g = cyclic(6)
    B = harmonic_space(g, uniform(g, [(2,), (4,)]))
    gio.write_json(tmp_path / "b.json", gio.basis_to_json(B))
    doc = gio.read_json(tmp_path / "b.json")
    assert doc["dim"] == 2 and doc["vectors"][0][0] in ("1/1", "0/1")
    assert space_eq(gio.basis_from_json(doc), B)


def test_element_parsing():
    assert gio.element_from_json(Dihedral(4), "[1, 0]") == (1, 0)
    assert gio.element_from_json(HeisenbergModP(3), [1, 2, 0]) == (1, 2, 0)
    assert gio.element_from_json(Lamplighter(), [2, [0, 1]]) == (2, frozenset({0, 1}))
    with pytest.raises(ParseError):
        gio.element_from_json(Dihedral(4), "[1,")
    with pytest.raises(ParseError):
        gio.element_from_json(Dihedral(4), "[1, 5]")
