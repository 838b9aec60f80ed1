"""Parse-tree export/import: round-trips and schema rejection."""

import json
from pathlib import Path

import pytest

from psgkit.errors import SchemaError
from psgkit.parser import export_parse_tree, import_parse_tree, parse

CORPUS = sorted(Path(__file__).resolve().parent.parent.joinpath("corpus").glob("*.c"))


def test_corpus_exists():
    assert len(CORPUS) == 2


@pytest.mark.parametrize("path", CORPUS, ids=lambda p: p.name)
def test_round_trip_equality(path):
    tree = parse(path.read_text())
    doc = export_parse_tree(tree)
    assert import_parse_tree(doc) == tree


@pytest.mark.parametrize("path", CORPUS, ids=lambda p: p.name)
def test_round_trip_through_json_text(path):
    tree = parse(path.read_text())
    text = json.dumps(export_parse_tree(tree))
    assert import_parse_tree(json.loads(text)) == tree


def test_exported_leaf_shape():
    doc = export_parse_tree(parse("int f() { return 1; }"))
    assert doc["category"] == "translation-unit"
    assert doc["token"] is None
    fn = doc["children"][0]
    assert fn["children"][0] == {
        "category": "keyword",
        "token": {"kind": "keyword", "text": "int"},
        "children": [],
    }


def test_non_object_rejected():
    with pytest.raises(SchemaError, match=r"\$: expected an object"):
        import_parse_tree([1, 2])


def test_unknown_category_rejected():
    with pytest.raises(SchemaError, match="unknown category"):
        import_parse_tree({"category": "ternary-expression", "token": None, "children": []})


def test_missing_token_key_rejected():
    with pytest.raises(SchemaError, match=r"\$\.token: missing"):
        import_parse_tree({"category": "block", "children": []})


def test_internal_with_token_rejected():
    with pytest.raises(SchemaError, match="takes no token"):
        import_parse_tree({
            "category": "block",
            "token": {"kind": "punctuation", "text": "{"},
            "children": [],
        })


def test_leaf_with_children_rejected():
    with pytest.raises(SchemaError, match="leaves take no children"):
        import_parse_tree({
            "category": "keyword",
            "token": {"kind": "keyword", "text": "if"},
            "children": [{"category": "block", "token": None, "children": []}],
        })


def test_kind_category_mismatch_rejected():
    with pytest.raises(SchemaError, match="does not fit category"):
        import_parse_tree({
            "category": "identifier-expression",
            "token": {"kind": "keyword", "text": "if"},
            "children": [],
        })


def test_token_text_reinferred():
    with pytest.raises(SchemaError, match="is not a keyword"):
        import_parse_tree({
            "category": "keyword",
            "token": {"kind": "keyword", "text": "frobnicate"},
            "children": [],
        })
    with pytest.raises(SchemaError, match="is not an identifier"):
        import_parse_tree({
            "category": "identifier-expression",
            "token": {"kind": "identifier", "text": "while"},
            "children": [],
        })
    with pytest.raises(SchemaError, match="is not an integer literal"):
        import_parse_tree({
            "category": "literal-expression",
            "token": {"kind": "int-literal", "text": "1.5"},
            "children": [],
        })


def test_error_path_names_offending_child():
    doc = export_parse_tree(parse("int f() { return 1; }"))
    doc["children"][0]["children"][2]["category"] = "no-such-thing"
    with pytest.raises(SchemaError, match=r"\$\.children\[0\]\.children\[2\]\.category"):
        import_parse_tree(doc)
