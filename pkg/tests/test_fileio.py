"""Input parsing: error classification, path resolution, choice files."""

import json

import pytest

import corpus
from loccat import (ParseError, ValidationError, load_cat, load_choice,
                    load_functor)


def write(tmp_path, name, payload):
    path = tmp_path / name
    path.write_text(json.dumps(payload) if not isinstance(payload, str)
                    else payload, encoding="utf-8")
    return str(path)


GOOD_CAT = {
    "objects": ["a", "b"],
    "generators": [{"name": "u", "src": "a", "dst": "b"}],
    "relations": [],
    "denominators": {"words": [], "include_identities": True,
                     "close_under_composition": False},
}


class TestLoadCat:
    def test_corpus_loads(self):
        for name in corpus.CAT_NAMES:
            c = corpus.cat(name)
            assert c.cat.objects

    def test_malformed_json_is_parse_error(self, tmp_path):
        path = write(tmp_path, "bad.cat.json", "{nope")
        with pytest.raises(ParseError):
            load_cat(path)

    def test_missing_key_is_parse_error(self, tmp_path):
        payload = {k: v for k, v in GOOD_CAT.items() if k != "generators"}
        path = write(tmp_path, "nogen.cat.json", payload)
        with pytest.raises(ParseError):
            load_cat(path)

    def test_wrong_type_is_parse_error(self, tmp_path):
        payload = dict(GOOD_CAT, objects="ab")
        path = write(tmp_path, "badobj.cat.json", payload)
        with pytest.raises(ParseError):
            load_cat(path)

    def test_unknown_endpoint_is_validation_error(self, tmp_path):
        payload = dict(GOOD_CAT, generators=[
            {"name": "u", "src": "a", "dst": "zzz"}])
        path = write(tmp_path, "dangling.cat.json", payload)
        with pytest.raises(ValidationError):
            load_cat(path)

    def test_empty_denominator_word_rejected_with_hint(self, tmp_path):
        payload = dict(GOOD_CAT, denominators={
            "words": [[]], "include_identities": False,
            "close_under_composition": False})
        path = write(tmp_path, "emptyword.cat.json", payload)
        with pytest.raises(ValidationError, match="include_identities"):
            load_cat(path)

    def test_identity_relation_side(self, tmp_path):
        payload = dict(GOOD_CAT,
                       generators=[{"name": "t", "src": "a", "dst": "a"}],
                       relations=[{"lhs": ["t", "t"], "rhs": []}])
        c = load_cat(write(tmp_path, "endo.cat.json", payload))
        rel = c.cat.relations[0]
        assert rel.rhs.is_identity_word
        assert rel.rhs.src == "a"

    def test_two_empty_relation_sides_rejected(self, tmp_path):
        payload = dict(GOOD_CAT, relations=[{"lhs": [], "rhs": []}])
        path = write(tmp_path, "noop.cat.json", payload)
        with pytest.raises((ParseError, ValidationError)):
            load_cat(path)


class TestLoadFunctor:
    def test_paths_resolve_relative_to_functor_file(self, tmp_path):
        sub = tmp_path / "nested"
        sub.mkdir()
        cat_path = write(sub, "c.cat.json", GOOD_CAT)
        fun_path = write(sub, "f.fun.json", {
            "source": "c.cat.json", "target": "c.cat.json",
            "object_map": {"a": "a", "b": "b"},
            "generator_map": {"u": ["u"]}})
        f = load_functor(fun_path)
        assert f.object_map == {"a": "a", "b": "b"}

    def test_empty_generator_image_needs_matching_endpoints(self, tmp_path):
        cat_path = write(tmp_path, "c.cat.json", GOOD_CAT)
        fun_path = write(tmp_path, "collapse.fun.json", {
            "source": "c.cat.json", "target": "c.cat.json",
            "object_map": {"a": "a", "b": "b"},
            "generator_map": {"u": []}})
        with pytest.raises(ValidationError):
            load_functor(fun_path)

    def test_unknown_generator_image_letters(self, tmp_path):
        cat_path = write(tmp_path, "c.cat.json", GOOD_CAT)
        fun_path = write(tmp_path, "bad.fun.json", {
            "source": "c.cat.json", "target": "c.cat.json",
            "object_map": {"a": "a", "b": "b"},
            "generator_map": {"u": ["nope"]}})
        with pytest.raises(ValidationError):
            load_functor(fun_path)


class TestLoadChoice:
    def test_alt_choice_loads(self):
        s = corpus.setting("E7b")
        choice = load_choice(str(corpus.FIXTURES / "E7b-alt.choice.json"),
                             s.f, s.rs_tgt)
        assert choice.get("bl").q.letters == ("v_left2",)

    def test_choice_with_wrong_source_object_rejected(self, tmp_path):
        s = corpus.setting("E7b")
        raw = json.loads((corpus.FIXTURES / "E7b-alt.choice.json").read_text())
        raw["bl"]["x"] = "x1"  # v_left2 does not start at F x1
        path = write(tmp_path, "bad.choice.json", raw)
        with pytest.raises(ValidationError):
            load_choice(path, s.f, s.rs_tgt)

    def test_choice_q_normalized(self, tmp_path):
        s = corpus.setting("E5")
        path = write(tmp_path, "e5.choice.json",
                     {"•": {"x": "•", "q": ["d", "d", "d"]}})
        choice = load_choice(path, s.f, s.rs_tgt)
        assert choice.get("•").q.letters == ("d",)
