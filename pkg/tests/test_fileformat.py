from fractions import Fraction

import pytest

from poissonenv.fileformat import (
    FileFormatError,
    bundled_path,
    load_bundled_algebra,
    parse_algebra_file,
    parse_module_file,
    parse_rational,
    serialize_algebra,
    serialize_module,
)
from poissonenv.ncpa import validate_ncpa
from poissonenv.poisson_modules import regular_module

MINIMAL = """
{
  "name": "kxk",
  "dim": 2,
  "basis": ["e1", "e2"],
  "unit": ["1", "1"],
  "mul": [[0, 0, 0, "1"], [1, 1, 1, "1"]],
  "bracket": []
}
"""


def test_parse_minimal_and_validate():
    pres = parse_algebra_file(MINIMAL)
    assert pres.dim == 2
    A = validate_ncpa(pres)
    assert A.name == "kxk"


def test_rational_parsing():
    assert parse_rational("3/4") == Fraction(3, 4)
    assert parse_rational("-2/4") == Fraction(-1, 2)
    assert parse_rational("1/-2") == Fraction(-1, 2)  # canonicalized
    assert parse_rational(5) == Fraction(5)
    with pytest.raises(FileFormatError):
        parse_rational("1/0")
    with pytest.raises(FileFormatError):
        parse_rational("a/b")
    with pytest.raises(FileFormatError):
        parse_rational(1.5)


def test_zero_denominator_in_file():
    bad = MINIMAL.replace('[0, 0, 0, "1"]', '[0, 0, 0, "1/0"]')
    with pytest.raises(FileFormatError, match="malformed rational"):
        parse_algebra_file(bad)


def test_index_out_of_range():
    bad = MINIMAL.replace("[1, 1, 1,", "[1, 5, 1,")
    with pytest.raises(FileFormatError, match="out of range"):
        parse_algebra_file(bad)


def test_duplicate_key_rejected():
    bad = MINIMAL.replace(
        '"mul": [[0, 0, 0, "1"],', '"mul": [[0, 0, 0, "1"], [0, 0, 0, "2"],'
    )
    with pytest.raises(FileFormatError, match="duplicate"):
        parse_algebra_file(bad)


def test_syntax_error_reports_position():
    with pytest.raises(FileFormatError, match=r"line \d+"):
        parse_algebra_file("{ not json")


def test_missing_key():
    with pytest.raises(FileFormatError, match="missing key"):
        parse_algebra_file('{"name": "x"}')


def test_unreduced_input_canonicalized():
    text = MINIMAL.replace('[0, 0, 0, "1"]', '[0, 0, 0, "2/2"]')
    pres = parse_algebra_file(text)
    assert pres.mul[(0, 0)].get(0) == 1
    out = serialize_algebra(pres)
    assert '"2/2"' not in out


def test_algebra_roundtrip_bundled():
    for name in (
        "kxk.alg",
        "m2std.alg",
        "trunc2-n2.alg",
        "bad-antisym.alg",
        "bad-jacobi.alg",
        "bad-leibniz.alg",
    ):
        text = bundled_path(name).read_text("utf-8")
        pres = parse_algebra_file(text)
        again = parse_algebra_file(serialize_algebra(pres))
        assert again.name == pres.name
        assert again.dim == pres.dim
        assert again.basis_labels == pres.basis_labels
        assert again.unit == pres.unit
        assert again.mul == pres.mul
        assert again.bracket == pres.bracket


def test_module_roundtrip(kxk):
    M = regular_module(kxk)
    text = serialize_module(M)
    back = parse_module_file(text, kxk)
    assert back.equal_actions(M)


def test_module_wrong_algebra_name(kxk, m2):
    M = regular_module(kxk)
    with pytest.raises(FileFormatError, match="names algebra"):
        parse_module_file(serialize_module(M), m2)


def test_module_bad_matrix_index(kxk):
    import json

    doc = json.loads(serialize_module(regular_module(kxk)))
    doc["left"][0][0][0] = 9
    with pytest.raises(FileFormatError, match="out of range"):
        parse_module_file(json.dumps(doc), kxk)


def test_bundled_violation_fixtures_parse():
    for name in ("bad-antisym.alg", "bad-jacobi.alg", "bad-leibniz.alg"):
        pres = load_bundled_algebra(name)
        assert pres.dim >= 2
