"""Multiplicativity, isosaturation, functor and transformation validation."""

import corpus
from loccat import (FunctorData, TransformationData, check_isosaturated,
                    check_multiplicative, check_reflects_denominators,
                    check_transformation, identity_functor, validate_functor)


class TestMultiplicative:
    def test_corpus_verdicts(self):
        expected = {
            "terminal": True, "E1": True, "E1sub": True, "E2": True,
            "E3C": True, "E3D": True, "E4": True, "E5": True,
            "E6": False, "E7C": True, "E7D": True, "E7bD": True, "E8": True,
        }
        for name, want in expected.items():
            got, _ = check_multiplicative(corpus.cat(name), corpus.rs(name))
            assert got == want, name

    def test_witness_names_missing_identity(self):
        ok, witness = check_multiplicative(corpus.cat("E6"), corpus.rs("E6"))
        assert not ok
        assert witness == {
            "kind": "identity-not-denominator", "object": "a",
            "word": {"src": "a", "dst": "a", "letters": []}}

    def test_composite_witness(self):
        # identities included but composites not closed: d.e escapes
        import json
        from loccat.fileio import load_cat
        raw = json.loads(open(corpus.cat_path("E6")).read())
        raw["denominators"]["include_identities"] = True
        path = "/tmp/E6ids.cat.json"
        with open(path, "w") as fh:
            json.dump(raw, fh)
        c = load_cat(path)
        from loccat import complete
        rs = complete(c.cat)
        ok, witness = check_multiplicative(c, rs)
        assert not ok and witness["kind"] == "composite-not-denominator"
        assert witness["first"]["letters"] == ["d"]
        assert witness["second"]["letters"] == ["e"]


class TestIsosaturated:
    def test_corpus_verdicts(self):
        # E6 lacks identity denominators, and identities are isomorphisms
        expected = {name: True for name in corpus.CAT_NAMES}
        expected["E6"] = False
        for name, want in expected.items():
            got, _ = check_isosaturated(corpus.cat(name), corpus.rs(name))
            assert got == want, name

    def test_witness_is_an_isomorphism(self):
        ok, witness = check_isosaturated(corpus.cat("E6"), corpus.rs("E6"))
        assert not ok
        assert witness["kind"] == "isomorphism-not-denominator"
        assert witness["word"]["letters"] == []


class TestValidateFunctor:
    def test_corpus_functors_valid(self):
        for name in corpus.FUN_NAMES:
            f = corpus.fun(name)
            s = corpus.setting(name)
            assert validate_functor(f, s.rs_src, s.rs_tgt) == []

    def test_missing_generator_image(self):
        f = corpus.fun("E3")
        bad = FunctorData(source=f.source, target=f.target,
                          object_map=f.object_map,
                          gen_map={"f1": f.gen_map["f1"]})
        s = corpus.setting("E3")
        problems = validate_functor(bad, s.rs_src, s.rs_tgt)
        assert any(p["kind"] == "generator-not-mapped" for p in problems)

    def test_endpoint_mismatch(self):
        f = corpus.fun("E7")
        tgt = f.target.cat
        bad = FunctorData(source=f.source, target=f.target,
                          object_map=f.object_map,
                          gen_map={"f": tgt.word(["v_left"])})
        s = corpus.setting("E7")
        problems = validate_functor(bad, s.rs_src, s.rs_tgt)
        assert any(p["kind"] == "generator-image-endpoints" for p in problems)

    def test_relation_violation_detected(self):
        # E5 requires d.d = 1; a free loop target cannot satisfy that
        from loccat import (CatPresentation, CatWithDenoms, DenomSet,
                            GenArrow, complete)
        c5 = corpus.cat("E5")
        loop = CatWithDenoms(
            CatPresentation(("x",), (GenArrow("t", "x", "x"),), ()),
            DenomSet((), True, False))
        rs_loop = complete(loop.cat)
        f = FunctorData(source=c5, target=loop,
                        object_map={"•": "x"},
                        gen_map={"d": loop.cat.word(["t"])})
        problems = validate_functor(f, corpus.rs("E5"), rs_loop)
        assert any(p["kind"] == "relation-not-preserved" for p in problems)

    def test_denominator_preservation_checked(self):
        # E2's d is a denominator; send it somewhere non-denominator
        c2 = corpus.cat("E2")
        c3 = corpus.cat("E3C")
        f = FunctorData(source=c2, target=c3,
                        object_map={"a": "X0", "b": "X1"},
                        gen_map={"d": c3.cat.word(["f1"])})
        problems = validate_functor(f, corpus.rs("E2"), corpus.rs("E3C"))
        assert any(p["kind"] == "denominator-not-preserved" for p in problems)


class TestReflectsDenominators:
    def test_identity_functor_reflects(self):
        f = corpus.fun("E7")
        s = corpus.setting("E7")
        ok, _ = check_reflects_denominators(f, s.rs_src, s.rs_tgt)
        assert ok

    def test_collapse_does_not_reflect(self):
        # E3C -> E3D sends the non-denominator f1 to the denominator... g is
        # not a denominator in E3D either, so build one that fails honestly:
        # E2 -> E2 localisation-like self map is fine; instead send E3C's f1
        # into E5's denominator d.
        c3 = corpus.cat("E3C")
        c5 = corpus.cat("E5")
        f = FunctorData(source=c3, target=c5,
                        object_map={"X0": "•", "X1": "•"},
                        gen_map={"f1": c5.cat.word(["d"]),
                                 "f2": c5.cat.word(["d"])})
        ok, witness = check_reflects_denominators(f, corpus.rs("E3C"),
                                                  corpus.rs("E5"))
        assert not ok
        assert witness["kind"] == "denominator-not-reflected"


class TestTransformation:
    def test_natural_transformation_accepted(self):
        # identity transformation on the E7 functor
        f = corpus.fun("E7")
        tgt = f.target.cat
        t = TransformationData(
            frm=f, to=f,
            components={"x0": tgt.identity("tl"), "x1": tgt.identity("tr")})
        assert check_transformation(t, corpus.setting("E7").rs_tgt) == []

    def test_component_endpoints_checked(self):
        f = corpus.fun("E7")
        tgt = f.target.cat
        t = TransformationData(
            frm=f, to=f,
            components={"x0": tgt.identity("bl"), "x1": tgt.identity("tr")})
        problems = check_transformation(t, corpus.setting("E7").rs_tgt)
        assert any(p["kind"] == "component-endpoints" for p in problems)

    def test_unnatural_components_rejected(self):
        # two embeddings of the free arrow into the parallel pair disagree:
        # the only well-typed components are identities, and naturality would
        # force f1 = f2
        arrow = corpus.cat("E1sub")
        pair = corpus.cat("E3C")
        pick1 = FunctorData(source=arrow, target=pair,
                            object_map={"a": "X0", "b": "X1"},
                            gen_map={"u": pair.cat.word(["f1"])})
        pick2 = FunctorData(source=arrow, target=pair,
                            object_map={"a": "X0", "b": "X1"},
                            gen_map={"u": pair.cat.word(["f2"])})
        t = TransformationData(
            frm=pick1, to=pick2,
            components={"a": pair.cat.identity("X0"),
                        "b": pair.cat.identity("X1")})
        problems = check_transformation(t, corpus.rs("E3C"))
        assert any(p["kind"] == "naturality-fails" for p in problems)
