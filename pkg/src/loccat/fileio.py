"""JSON file formats for categories, functors and replacement choices.

Shape errors (bad JSON, wrong types, missing keys) raise
:class:`ParseError`; semantically invalid but well-shaped data raises
:class:`ValidationError` from the structural validators.
"""

from __future__ import annotations

import json
from pathlib import Path

from .presentation import (
    CatPresentation,
    CatWithDenoms,
    DenomSet,
    FunctorData,
    GenArrow,
    LoccatError,
    PathWord,
    Relation,
    ValidationError,
    validate_cat_with_denoms,
)
from .replacement import ReplacementChoice, SReplacement
from .rewrite import RewriteSystem, normalize


class ParseError(LoccatError):
    """The input file could not be read as the expected JSON shape."""


def _read_json(path: str | Path) -> object:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as e:
        raise ParseError(f"cannot read {path}: {e}") from e
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise ParseError(f"{path} is not valid JSON: {e}") from e


def _expect(cond: bool, message: str):
    if not cond:
        raise ParseError(message)


def _string_list(value: object, what: str) -> list[str]:
    _expect(isinstance(value, list)
            and all(isinstance(x, str) for x in value), f"{what} must be a "
            "list of strings")
    return list(value)


def _relation_side(p: CatPresentation, letters: list[str], other: list[str],
                   index: int) -> PathWord:
    if letters:
        return p.word(letters)
    # an empty side is an identity; endpoints come from the other side
    if not other:
        raise ValidationError(
            f"relation {index} has two empty sides and no endpoints")
    partner = p.word(other)
    return p.identity(partner.src) if partner.src == partner.dst else \
        _raise_endpoint(index)


def _raise_endpoint(index: int) -> PathWord:
    raise ValidationError(
        f"relation {index} equates a non-endo word with an identity")


def load_cat(path: str | Path) -> CatWithDenoms:
    """Load a category with denominators from a JSON file."""
    data = _read_json(path)
    _expect(isinstance(data, dict), f"{path}: top level must be an object")
    for key in ("objects", "generators", "relations", "denominators"):
        _expect(key in data, f"{path}: missing key {key!r}")

    objects = tuple(_string_list(data["objects"], f"{path}: objects"))

    _expect(isinstance(data["generators"], list), f"{path}: generators must "
            "be a list")
    gens = []
    for i, entry in enumerate(data["generators"]):
        _expect(isinstance(entry, dict)
                and all(isinstance(entry.get(k), str)
                        for k in ("name", "src", "dst")),
                f"{path}: generator {i} must have string name, src, dst")
        gens.append(GenArrow(entry["name"], entry["src"], entry["dst"]))

    _expect(isinstance(data["relations"], list), f"{path}: relations must be "
            "a list")
    raw_relations = []
    for i, entry in enumerate(data["relations"]):
        _expect(isinstance(entry, dict) and "lhs" in entry and "rhs" in entry,
                f"{path}: relation {i} must have lhs and rhs")
        raw_relations.append((_string_list(entry["lhs"], f"{path}: relation {i} lhs"),
                              _string_list(entry["rhs"], f"{path}: relation {i} rhs")))

    denoms = data["denominators"]
    _expect(isinstance(denoms, dict), f"{path}: denominators must be an object")
    for key in ("words", "include_identities", "close_under_composition"):
        _expect(key in denoms, f"{path}: denominators missing key {key!r}")
    _expect(isinstance(denoms["include_identities"], bool)
            and isinstance(denoms["close_under_composition"], bool),
            f"{path}: denominator flags must be booleans")
    _expect(isinstance(denoms["words"], list), f"{path}: denominator words "
            "must be a list")
    raw_words = [_string_list(w, f"{path}: denominator word {i}")
                 for i, w in enumerate(denoms["words"])]

    # structural validation below here: failures are semantic, not parse
    bare = CatPresentation(objects=objects, generators=tuple(gens),
                           relations=())
    from .presentation import validate_presentation
    problems = validate_presentation(bare)
    if problems:
        raise ValidationError(f"{path}: {problems}")

    relations = []
    for i, (lhs, rhs) in enumerate(raw_relations):
        left = _relation_side(bare, lhs, rhs, i)
        right = _relation_side(bare, rhs, lhs, i)
        if (left.src, left.dst) != (right.src, right.dst):
            raise ValidationError(f"{path}: relation {i} sides not parallel")
        relations.append(Relation(left, right))

    words = []
    for i, letters in enumerate(raw_words):
        if not letters:
            raise ValidationError(
                f"{path}: denominator word {i} is empty; use "
                "include_identities for identity denominators")
        words.append(bare.word(letters))

    cat = CatPresentation(objects=objects, generators=tuple(gens),
                          relations=tuple(relations))
    cwd = CatWithDenoms(cat, DenomSet(
        explicit=tuple(words),
        include_identities=denoms["include_identities"],
        close_under_composition=denoms["close_under_composition"]))
    problems = validate_cat_with_denoms(cwd)
    if problems:
        raise ValidationError(f"{path}: {problems}")
    return cwd


def load_functor(path: str | Path) -> FunctorData:
    """Load a functor; source and target paths resolve relative to the file."""
    data = _read_json(path)
    _expect(isinstance(data, dict), f"{path}: top level must be an object")
    for key in ("source", "target", "object_map", "generator_map"):
        _expect(key in data, f"{path}: missing key {key!r}")
    _expect(isinstance(data["source"], str) and isinstance(data["target"], str),
            f"{path}: source and target must be paths")
    base = Path(path).parent
    source = load_cat(base / data["source"])
    target = load_cat(base / data["target"])

    _expect(isinstance(data["object_map"], dict)
            and all(isinstance(k, str) and isinstance(v, str)
                    for k, v in data["object_map"].items()),
            f"{path}: object_map must map strings to strings")
    _expect(isinstance(data["generator_map"], dict),
            f"{path}: generator_map must be an object")

    gen_map: dict[str, PathWord] = {}
    for name, letters in data["generator_map"].items():
        letters = _string_list(letters, f"{path}: generator_map[{name!r}]")
        gen = source.cat.gen_by_name.get(name)
        if gen is None:
            raise ValidationError(f"{path}: generator_map names unknown "
                                  f"generator {name!r}")
        if letters:
            gen_map[name] = target.cat.word(letters)
        else:
            image = data["object_map"].get(gen.src)
            if image is None or image != data["object_map"].get(gen.dst):
                raise ValidationError(
                    f"{path}: empty image for {name!r} needs equal mapped "
                    "endpoints")
            gen_map[name] = target.cat.identity(image)
    return FunctorData(source=source, target=target,
                       object_map=dict(data["object_map"]), gen_map=gen_map)


def load_choice(path: str | Path, f: FunctorData,
                rs_tgt: RewriteSystem) -> ReplacementChoice:
    """Load a replacement choice file against a functor."""
    data = _read_json(path)
    _expect(isinstance(data, dict), f"{path}: top level must be an object")
    assignment = []
    for y, entry in data.items():
        _expect(isinstance(entry, dict) and isinstance(entry.get("x"), str)
                and isinstance(entry.get("q"), list),
                f"{path}: choice for {y!r} must have x and q")
        letters = _string_list(entry["q"], f"{path}: choice q for {y!r}")
        if y not in f.target.cat.obj_index:
            raise ValidationError(f"{path}: unknown target object {y!r}")
        if entry["x"] not in f.source.cat.obj_index:
            raise ValidationError(f"{path}: unknown source object "
                                  f"{entry['x']!r}")
        fx = f.object_map[entry["x"]]
        if letters:
            q = f.target.cat.word(letters)
            if (q.src, q.dst) != (fx, y):
                raise ValidationError(
                    f"{path}: q for {y!r} must run {fx!r} -> {y!r}")
        else:
            if fx != y:
                raise ValidationError(
                    f"{path}: empty q for {y!r} needs F x == {y!r}")
            q = f.target.cat.identity(y)
        assignment.append((y, SReplacement(target=y, source=entry["x"],
                                           q=normalize(rs_tgt, q))))
    return ReplacementChoice(tuple(assignment))
