import json

import pytest

from sl2swc.characters import char_table, regular_rep, symmetrize, trivial_rep
from sl2swc.cli import (
    RepSyntaxError,
    UnknownIrreducible,
    _RepParser,
    get_table,
    load_cached_table,
    parse_rep,
    print_rep_terms,
    run,
    serialize_table,
    store_table,
)
from sl2swc.characters import BadConstructionParams
from sl2swc.groups import build_sl2


def _run(capsys, *argv):
    code = run(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


# ---------------------------------------------------------------------------
# parsing
# ---------------------------------------------------------------------------

def test_parse_reg():
    t = char_table(build_sl2(3))
    pi = parse_rep("reg", t)
    assert pi.mults == t.degrees


def test_parse_combination():
    t = char_table(build_sl2(3))
    pi = parse_rep("S(X4) + 2*X1", t)
    expected = symmetrize(parse_rep("X4", t)) + parse_rep("X1", t).scaled(2)
    assert pi == expected


def test_parse_whitespace_insensitive():
    t = char_table(build_sl2(3))
    assert parse_rep(" S( X4 )+2 * X1 ", t) == parse_rep("S(X4) + 2*X1", t)


def test_parse_subtraction():
    t = char_table(build_sl2(3))
    pi = parse_rep("reg - triv", t)
    assert pi == regular_rep(t) - trivial_rep(t)


def test_parse_roundtrip():
    t = char_table(build_sl2(5))
    for src in ("reg", "S(X2) + 2*X1 - X3", "3*S(cusp(1)) - ps(1)", "0*triv - X1"):
        terms = _RepParser(src).parse()
        printed = print_rep_terms(terms)
        assert _RepParser(printed).parse() == terms
        assert parse_rep(printed, t) == parse_rep(src, t)


def test_parse_errors():
    t = char_table(build_sl2(3))
    with pytest.raises(RepSyntaxError):
        parse_rep("reg +", t)
    with pytest.raises(RepSyntaxError):
        parse_rep("2 ** X1", t)
    with pytest.raises(RepSyntaxError):
        parse_rep("frob", t)
    with pytest.raises(UnknownIrreducible):
        parse_rep("X99", t)
    with pytest.raises(BadConstructionParams):
        parse_rep("ps(0)", char_table(build_sl2(5)))


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------

def test_swc_subcommand(capsys, tmp_path):
    code, out, err = _run(capsys, "swc", "--q", "3", "--rep", "reg",
                          "--cache-dir", str(tmp_path))
    assert code == 0
    doc = json.loads(out)
    assert doc["schema"] == "sl2swc/1"
    assert doc["r_or_m"] == 3
    assert doc["total"] == {"0": ["1"], "4": ["e"], "8": ["e^2"], "12": ["e^3"]}


def test_dickson_subcommand(capsys):
    code, out, _ = _run(capsys, "dickson", "--rank", "2")
    assert code == 0
    doc = json.loads(out)
    assert doc["dickson"]["d1"] == "v1^2 + v1*v2 + v2^2"
    assert doc["dickson"]["d2"] == "v1^2*v2 + v1*v2^2"


def test_cohomology_subcommand(capsys):
    code, out, _ = _run(capsys, "cohomology", "--group", "Q8", "--max-degree", "8")
    assert code == 0
    doc = json.loads(out)
    assert doc["dims"] == [1, 2, 2, 1, 1, 2, 2, 1, 1]
    code, out, _ = _run(capsys, "cohomology", "--group", "c2:3", "--max-degree", "3")
    assert json.loads(out)["dims"] == [1, 3, 6, 10]


def test_verify_subcommand_exit_codes(capsys):
    code, out, _ = _run(capsys, "verify", "--q", "5", "--suite", "gow")
    assert code == 0
    doc = json.loads(out)
    assert doc["ok"] is True
    assert doc["suites"][0]["suite"] == "gow"
    assert doc["suites"][0]["failures"] == []


def test_usage_errors(capsys):
    code, out, err = _run(capsys, "swc", "--q", "3")
    assert code == 2
    assert json.loads(err)["error"] == "UsageError"
    code, _, err = _run(capsys, "swc", "--q", "3", "--rep", "X99")
    assert code == 2
    assert json.loads(err)["error"] == "UnknownIrreducible"
    code, _, err = _run(capsys, "cohomology", "--group", "bogus", "--max-degree", "4")
    assert code == 2
    code, _, err = _run(capsys, "swc", "--q", "4", "--rep", "ps(1)")
    assert code == 2
    assert json.loads(err)["error"] == "BadConstructionParams"


def test_table_subcommand_and_determinism(capsys, tmp_path):
    args = ("table", "--q", "3", "--cache-dir", str(tmp_path))
    code1, out1, _ = _run(capsys, *args)
    code2, out2, _ = _run(capsys, *args)   # second call hits the cache
    assert code1 == code2 == 0
    assert out1 == out2
    doc = json.loads(out1)
    assert doc["degrees"] == [1, 1, 1, 2, 2, 2, 3]
    assert doc["digest"]


def test_cache_roundtrip(tmp_path):
    table = char_table(build_sl2(2))
    store_table(tmp_path, table)
    build_sl2.cache_clear()       # force a fresh group object
    loaded = load_cached_table(tmp_path, "sl2", 2)
    build_sl2.cache_clear()
    fresh = get_table("sl2", 2, None)
    assert loaded is not None
    assert serialize_table(loaded) == serialize_table(fresh)


def test_cache_rejects_corruption(tmp_path):
    from sl2swc.cli import cache_path

    table = char_table(build_sl2(2))
    store_table(tmp_path, table)
    path = cache_path(tmp_path, "sl2", 2)
    doc = json.loads(path.read_text())
    doc["degrees"][0] = 999
    path.write_text(json.dumps(doc))
    build_sl2.cache_clear()
    assert load_cached_table(tmp_path, "sl2", 2) is None
