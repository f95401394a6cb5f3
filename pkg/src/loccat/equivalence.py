"""Density, fullness and faithfulness of a functor relative to denominators.

All three checks quantify over 2-arrows ``(g, b)`` with ``g: F x -> y``
arbitrary and ``b: F x' -> y`` a denominator of the target.  A fill for
such a 2-arrow is a localised morphism ``phi: x -> x'`` of the source
with ``loc(g) = (GZ F)(phi) . loc(b)``; since ``loc(b)`` is invertible
this says exactly ``loc(g) . loc(b)^{-1} = (GZ F)(phi)``.

Relative fullness asks every 2-arrow to have a fill, relative
faithfulness asks for at most one, relative density asks every target
object to admit a replacement.  All three are decided by bounded
enumeration of the finitely presented hom-sets.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass

from .axioms import validate_functor, word_json
from .gz import LocalisedCategory, gz_compose, induced_functor, loc_map
from .presentation import (
    CatWithDenoms,
    FunctorData,
    PathWord,
    ValidationError,
)
from .replacement import has_enough
from .rewrite import (
    COMPLETE,
    DEFAULT_LIMITS,
    BOUNDED_INCOMPLETE,
    DenomDecider,
    ResourceLimits,
    RewriteSystem,
    complete,
    find_inverse,
    homset,
    normalize,
)


@dataclass(frozen=True)
class STwoArrow:
    """A 2-arrow ``(g, b)`` from ``x`` to ``x_prime`` over some wedge object.

    ``g: F x -> y`` and ``b: F x_prime -> y`` with ``b`` a denominator.
    """

    x: str
    x_prime: str
    g: PathWord
    b: PathWord

    def to_json(self) -> dict:
        return {"x": self.x, "x_prime": self.x_prime,
                "g": word_json(self.g), "b": word_json(self.b)}


@dataclass
class CheckReport:
    """Outcome of a decidable check with provenance of the bounds used."""

    check: str
    verdict: bool
    witness: dict | None
    bounds_used: dict
    decidability_status: str
    details: dict

    def to_json(self) -> dict:
        return {"check": self.check, "verdict": self.verdict,
                "witness": self.witness, "bounds_used": self.bounds_used,
                "decidability_status": self.decidability_status,
                "details": self.details}


@dataclass
class GzSetting:
    """Completed and localised data for one functor, built once."""

    f: FunctorData
    limits: ResourceLimits
    rs_src: RewriteSystem
    rs_tgt: RewriteSystem
    dec_tgt: DenomDecider
    lc_src: LocalisedCategory
    lc_tgt: LocalisedCategory
    gz_f: FunctorData

    @property
    def decidability_status(self) -> str:
        systems = (self.rs_src, self.rs_tgt, self.lc_src.rs, self.lc_tgt.rs)
        return COMPLETE if all(rs.status == COMPLETE for rs in systems) \
            else BOUNDED_INCOMPLETE


def prepare(f: FunctorData, limits: ResourceLimits = DEFAULT_LIMITS) -> GzSetting:
    """Complete, localise and induce; raises on an invalid functor."""
    from .gz import localise
    rs_src = complete(f.source.cat, limits)
    rs_tgt = complete(f.target.cat, limits)
    problems = validate_functor(f, rs_src, rs_tgt, limits)
    if problems:
        raise ValidationError(f"invalid functor: {problems}")
    lc_src = localise(f.source, rs_src, limits)
    lc_tgt = localise(f.target, rs_tgt, limits)
    gz_f = induced_functor(f, lc_src, lc_tgt, limits)
    return GzSetting(f=f, limits=limits, rs_src=rs_src, rs_tgt=rs_tgt,
                     dec_tgt=DenomDecider(f.target, rs_tgt, limits),
                     lc_src=lc_src, lc_tgt=lc_tgt, gz_f=gz_f)


def enumerate_s_two_arrows(setting: GzSetting):
    """All 2-arrows between materialized hom-sets, in a fixed order."""
    f = setting.f
    src_objects = f.source.cat.objects
    tgt_objects = f.target.cat.objects
    for x in src_objects:
        for x_prime in src_objects:
            fx, fx_prime = f.object_map[x], f.object_map[x_prime]
            for y in tgt_objects:
                for g in homset(setting.rs_tgt, fx, y, setting.limits):
                    for b in setting.dec_tgt.denominators_between(fx_prime, y):
                        yield STwoArrow(x=x, x_prime=x_prime, g=g, b=b)


def solve_fill(setting: GzSetting, arrow: STwoArrow) -> tuple[PathWord, ...]:
    """All localised ``phi: x -> x_prime`` with ``loc g = (GZ F) phi . loc b``.

    Returned in shortlex order of the localised source presentation.
    """
    lhs = loc_map(setting.lc_tgt, arrow.g)
    loc_b = loc_map(setting.lc_tgt, arrow.b)
    fills = []
    for phi in homset(setting.lc_src.rs, arrow.x, arrow.x_prime, setting.limits):
        value = gz_compose(setting.lc_tgt, setting.gz_f.apply_word(phi), loc_b)
        if value == lhs:
            fills.append(phi)
    return tuple(fills)


def _bounds(limits: ResourceLimits) -> dict:
    return asdict(limits)


def check_s_dense(f: FunctorData, limits: ResourceLimits = DEFAULT_LIMITS,
                  setting: GzSetting | None = None) -> CheckReport:
    """Does every target object admit a replacement along ``f``?"""
    setting = setting or prepare(f, limits)
    ok, witness = has_enough(f, setting.rs_tgt, limits)
    return CheckReport(
        check="s-dense", verdict=ok, witness=witness,
        bounds_used=_bounds(limits),
        decidability_status=setting.decidability_status,
        details={"objects_checked": len(f.target.cat.objects)})


def _fill_survey(setting: GzSetting) -> tuple[dict | None, dict | None, int]:
    """One pass over all 2-arrows, returning fullness and faithfulness
    witnesses (or None) and the number of arrows surveyed."""
    no_fill_witness = None
    ambiguous_witness = None
    count = 0
    for arrow in enumerate_s_two_arrows(setting):
        count += 1
        fills = solve_fill(setting, arrow)
        if not fills and no_fill_witness is None:
            no_fill_witness = {"kind": "no-fill", "arrow": arrow.to_json()}
        if len(fills) > 1 and ambiguous_witness is None:
            ambiguous_witness = {
                "kind": "distinct-fills", "arrow": arrow.to_json(),
                "first": word_json(fills[0]), "second": word_json(fills[1])}
    return no_fill_witness, ambiguous_witness, count


def check_s_full(f: FunctorData, limits: ResourceLimits = DEFAULT_LIMITS,
                 setting: GzSetting | None = None) -> CheckReport:
    """Does every 2-arrow admit a fill?"""
    setting = setting or prepare(f, limits)
    no_fill, _, count = _fill_survey(setting)
    return CheckReport(
        check="s-full", verdict=no_fill is None, witness=no_fill,
        bounds_used=_bounds(limits),
        decidability_status=setting.decidability_status,
        details={"arrows_checked": count})


def check_s_faithful(f: FunctorData, limits: ResourceLimits = DEFAULT_LIMITS,
                     setting: GzSetting | None = None) -> CheckReport:
    """Does every 2-arrow admit at most one fill?"""
    setting = setting or prepare(f, limits)
    _, ambiguous, count = _fill_survey(setting)
    return CheckReport(
        check="s-faithful", verdict=ambiguous is None, witness=ambiguous,
        bounds_used=_bounds(limits),
        decidability_status=setting.decidability_status,
        details={"arrows_checked": count})


def classical_full(f: FunctorData, rs_src: RewriteSystem, rs_tgt: RewriteSystem,
                   limits: ResourceLimits = DEFAULT_LIMITS) -> tuple[bool, dict | None]:
    for x in f.source.cat.objects:
        for x_prime in f.source.cat.objects:
            images = {normalize(rs_tgt, f.apply_word(w))
                      for w in homset(rs_src, x, x_prime, limits)}
            for h in homset(rs_tgt, f.object_map[x], f.object_map[x_prime], limits):
                if h not in images:
                    return False, {"kind": "not-full", "x": x, "x_prime": x_prime,
                                   "morphism": word_json(h)}
    return True, None


def classical_faithful(f: FunctorData, rs_src: RewriteSystem,
                       rs_tgt: RewriteSystem,
                       limits: ResourceLimits = DEFAULT_LIMITS) -> tuple[bool, dict | None]:
    for x in f.source.cat.objects:
        for x_prime in f.source.cat.objects:
            seen: dict[PathWord, PathWord] = {}
            for w in homset(rs_src, x, x_prime, limits):
                image = normalize(rs_tgt, f.apply_word(w))
                if image in seen:
                    return False, {"kind": "not-faithful",
                                   "first": word_json(seen[image]),
                                   "second": word_json(w)}
                seen[image] = w
    return True, None


def classical_dense(f: FunctorData, rs_src: RewriteSystem,
                    rs_tgt: RewriteSystem,
                    limits: ResourceLimits = DEFAULT_LIMITS) -> tuple[bool, dict | None]:
    """Essential surjectivity on objects."""
    for y in f.target.cat.objects:
        hit = False
        for x in f.source.cat.objects:
            for w in homset(rs_tgt, f.object_map[x], y, limits):
                if find_inverse(rs_tgt, w, limits) is not None:
                    hit = True
                    break
            if hit:
                break
        if not hit:
            return False, {"kind": "not-essentially-surjective", "object": y}
    return True, None


def classical_equivalence(f: FunctorData, rs_src: RewriteSystem,
                          rs_tgt: RewriteSystem,
                          limits: ResourceLimits = DEFAULT_LIMITS
                          ) -> tuple[bool, dict]:
    """Fullness, faithfulness and essential surjectivity of ``f`` itself."""
    full, w_full = classical_full(f, rs_src, rs_tgt, limits)
    faithful, w_faithful = classical_faithful(f, rs_src, rs_tgt, limits)
    dense, w_dense = classical_dense(f, rs_src, rs_tgt, limits)
    details = {"full": full, "faithful": faithful, "dense": dense}
    for key, witness in (("full_witness", w_full),
                         ("faithful_witness", w_faithful),
                         ("dense_witness", w_dense)):
        if witness is not None:
            details[key] = witness
    return full and faithful and dense, details


def check_s_equivalence(f: FunctorData, limits: ResourceLimits = DEFAULT_LIMITS,
                        setting: GzSetting | None = None) -> CheckReport:
    """Relative density plus equivalence of the induced localised functor.

    When the target denominators are multiplicative this is also
    equivalent to relative density, fullness and faithfulness together;
    the agreement of the two routes is recorded in the details.
    """
    setting = setting or prepare(f, limits)
    dense = check_s_dense(f, limits, setting)
    gz_ok, gz_details = classical_equivalence(
        setting.gz_f, setting.lc_src.rs, setting.lc_tgt.rs, limits)
    verdict = dense.verdict and gz_ok
    witness = None
    if not dense.verdict:
        witness = dense.witness
    elif not gz_ok:
        witness = {k: v for k, v in gz_details.items() if k.endswith("_witness")}
    details: dict = {"s_dense": dense.verdict, "gz_equivalence": gz_ok,
                     "gz_details": gz_details}

    from .axioms import check_multiplicative
    mult, _ = check_multiplicative(setting.f.target, setting.rs_tgt, limits,
                                   setting.dec_tgt)
    details["target_multiplicative"] = mult
    if mult:
        full = check_s_full(f, limits, setting)
        faithful = check_s_faithful(f, limits, setting)
        threefold = dense.verdict and full.verdict and faithful.verdict
        details["s_full"] = full.verdict
        details["s_faithful"] = faithful.verdict
        details["characterisation_agrees"] = threefold == verdict
    return CheckReport(
        check="s-equivalence", verdict=verdict, witness=witness,
        bounds_used=_bounds(limits),
        decidability_status=setting.decidability_status,
        details=details)
