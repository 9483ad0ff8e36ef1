import copy
import json
from pathlib import Path

import pytest

from degen import fixtures as fx
from degen.fiber import realize_simple
from degen.degdata import encode
from degen.serialize import FORMAT_VERSION, ParseError, document, dumps, loads, parse
from degen.validate import check

DATA = Path(__file__).resolve().parent.parent / "data" / "fixtures"
ALL = {**fx.SIMPLE, **fx.DOUBLE, **fx.GLOBAL, **fx.REJECTED, "F2_CONCRETE": fx.f2_concrete}


def _doc(name="F2", p=3):
    ctx, d = ALL[name](p)
    return json.loads(dumps(ctx, d))


@pytest.mark.parametrize("p", [3, 5])
@pytest.mark.parametrize("name", sorted(ALL))
def test_round_trip(p, name):
    ctx, d = ALL[name](p)
    text = dumps(ctx, d)
    ctx2, d2 = loads(text)
    assert ctx2 == ctx
    assert encode(d2) == encode(d)
    assert dumps(ctx2, d2) == text
    assert check(ctx2, d2) == check(ctx, d)


def test_cover_round_trip():
    ctx, cover = fx.frobenius_cover(3)
    ctx2, kind, cover2 = parse(dumps(ctx, cover))
    assert kind == "cover" and cover2 == cover


def test_compact_dump_is_single_line():
    ctx, d = fx.f2(3)
    assert "\n" not in dumps(ctx, d, indent=None)


def test_fiber_documents_are_output_only():
    ctx, d = fx.f2(3)
    doc = document(ctx, realize_simple(ctx, d))
    assert "fiber" in doc
    with pytest.raises(ParseError, match="output only"):
        parse(doc)


def test_invalid_json():
    with pytest.raises(ParseError, match="invalid JSON") as info:
        parse("{not json")
    assert info.value.path == "$"


def test_version_check():
    doc = _doc()
    doc["format_version"] = "2.0"
    with pytest.raises(ParseError) as info:
        parse(doc)
    assert info.value.path == "$.format_version"
    doc["format_version"] = "1.7"
    parse(doc)


def test_schema_errors_carry_paths():
    doc = _doc()
    doc["simple"]["vertices"]["X1"]["kind"] = "bogus"
    with pytest.raises(ParseError) as info:
        parse(doc)
    assert info.value.path == "$.simple.vertices.X1.kind"
    doc = _doc()
    del doc["simple"]["origin"]["delta"]
    with pytest.raises(ParseError) as info:
        parse(doc)
    assert info.value.path == "$.simple.origin"
    doc = _doc()
    doc["simple"]["extra"] = 1
    with pytest.raises(ParseError):
        parse(doc)


def test_bad_prime_context():
    doc = _doc()
    doc["prime_context"] = {"p": 4, "vKp": 6}
    with pytest.raises(ParseError) as info:
        parse(doc)
    assert info.value.path == "$.prime_context"


def test_element_range():
    doc = _doc("F2_CONCRETE")
    doc["simple"]["vertices"]["X1"]["rep"]["num"] = [{"deg": 2, "code": 9}]
    with pytest.raises(ParseError, match="out of range") as info:
        parse(doc)
    assert info.value.path == "$.simple.vertices.X1.rep.num[0]"
    doc["simple"]["vertices"]["X1"]["rep"]["num"] = [3]
    with pytest.raises(ParseError, match="prime-field"):
        parse(doc)


def test_reducible_place_polynomial():
    doc = _doc("F2_CONCRETE")
    # t^2 - 1 = (t - 1)(t + 1) over F_3
    doc["simple"]["vertices"]["X1"]["rep"]["punctures"][1] = {"poly": [2, 0, 1], "index": 0}
    with pytest.raises(ParseError, match="irreducible") as info:
        parse(doc)
    assert info.value.path.endswith("punctures[1].poly")


def test_oversized_field_is_a_parse_error():
    doc = _doc("F2_CONCRETE")
    doc["simple"]["vertices"]["X1"]["rep"]["num"] = [{"deg": 30, "code": 1}]
    with pytest.raises(ParseError, match="exceeds"):
        parse(doc)


def test_thickness_not_multiple_of_p_parses_and_fails_a7():
    doc = _doc()
    doc["simple"]["edges"][0]["e"] = 7
    ctx, d = loads(doc)
    assert "A7" in check(ctx, d).failed()


def test_parse_accepts_text_and_bytes():
    text = dumps(*fx.f1(3))
    assert parse(text)[1] == parse(text.encode())[1] == "simple"
    assert FORMAT_VERSION.startswith("1.")


def test_stored_fixture_files_match_the_builders(tmp_path):
    for p in (3, 5):
        names = fx.write_documents(tmp_path, p)
        for name in names:
            assert (DATA / name).read_text() == (tmp_path / name).read_text(), name
    assert sorted(x.name for x in DATA.iterdir()) == sorted(x.name for x in tmp_path.iterdir())


def test_documents_do_not_alias_inputs():
    doc = _doc()
    before = copy.deepcopy(doc)
    parse(doc)
    assert doc == before
