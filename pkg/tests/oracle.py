"""Brute-force word-problem oracle used to cross-check the rewrite engine.

Everything here is deliberately independent of the package under test: it
parses fixture JSON itself, enumerates typed words directly, and decides
equality by saturating a union-find over the finite word universe rather
than by oriented rewriting.  Slow and simple on purpose — agreement with
the package is only evidence if the two share no machinery.

Two comparisons are supported:

* **engine agreement** — hand the oracle the *same* presentation the
  package completed and check that both induce the same partition of the
  word universe into equality classes;
* **construction agreement** — let the oracle build its *own* presentation
  of the localised category (formal inverse per denominator class) and
  check that per-hom-set class counts match the package's normal-form
  counts.

Boundary caveat: a word near the length bound may have *no* single-step
edge inside the universe (every insertion overshoots), leaving it in a
spurious singleton class.  Comparisons therefore restrict to words of
length <= ``max_len // 2`` (the *margin*), where the universe leaves room
for the joining derivations that occur in this corpus.
"""

from __future__ import annotations

import json
from pathlib import Path

DEFAULT_MAX_LEN = 8


class UnionFind:
    def __init__(self) -> None:
        self.parent: dict = {}

    def add(self, x) -> None:
        self.parent.setdefault(x, x)

    def find(self, x):
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, a, b) -> None:
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[rb] = ra


class Oracle:
    """Congruence classes of typed words of length <= ``max_len``.

    Words are keyed ``(src, letters)``; the destination follows from the
    letters.  The congruence is the reflexive-transitive closure of single
    relation applications (both directions, every position) that stay
    inside the universe.
    """

    def __init__(self, objects, generators, relations,
                 max_len: int = DEFAULT_MAX_LEN) -> None:
        self.objects = list(objects)
        self.generators = [(n, s, d) for n, s, d in generators]
        self.gen = {n: (s, d) for n, s, d in self.generators}
        self.relations = [(tuple(l), tuple(r)) for l, r in relations]
        self.max_len = max_len
        self._enumerate()
        self._saturate()

    # -- universe ----------------------------------------------------------

    def _enumerate(self) -> None:
        by_src: dict[str, list[tuple[str, str]]] = {}
        for n, s, d in self.generators:
            by_src.setdefault(s, []).append((n, d))
        words: dict[tuple[str, tuple[str, ...]], str] = {}
        layer = [(x, x, ()) for x in self.objects]
        for src, dst, letters in layer:
            words[(src, letters)] = dst
        for _ in range(self.max_len):
            nxt = []
            for src, dst, letters in layer:
                for n, d2 in by_src.get(dst, ()):
                    key = (src, letters + (n,))
                    if key not in words:
                        words[key] = d2
                        nxt.append((src, d2, letters + (n,)))
            layer = nxt
        self.words = words

    def _obj_at(self, src: str, letters: tuple[str, ...], i: int) -> str:
        return src if i == 0 else self.gen[letters[i - 1]][1]

    def _occurrences(self, src, letters, side, rel_obj):
        if side:
            return [j for j in range(len(letters) - len(side) + 1)
                    if letters[j:j + len(side)] == side]
        return [j for j in range(len(letters) + 1)
                if self._obj_at(src, letters, j) == rel_obj]

    def _saturate(self) -> None:
        uf = UnionFind()
        for key in self.words:
            uf.add(key)
        rels = []
        for lhs, rhs in self.relations:
            nonempty = lhs or rhs
            if not nonempty:
                continue
            rel_obj = self.gen[nonempty[0]][0]
            rels.append((lhs, rhs, rel_obj))
        for (src, letters) in list(self.words):
            for lhs, rhs, rel_obj in rels:
                for a, b in ((lhs, rhs), (rhs, lhs)):
                    for j in self._occurrences(src, letters, a, rel_obj):
                        new = letters[:j] + b + letters[j + len(a):]
                        if len(new) <= self.max_len:
                            uf.union((src, letters), (src, new))
        self.uf = uf

    # -- queries -----------------------------------------------------------

    def rep(self, src, letters):
        key = (src, tuple(letters))
        if key not in self.words:
            raise KeyError(f"word outside oracle universe: {key}")
        return self.uf.find(key)

    def equal(self, src, letters1, letters2) -> bool:
        return self.rep(src, letters1) == self.rep(src, letters2)

    def hom_classes(self, x: str, y: str) -> set:
        return {self.uf.find(k) for k, dst in self.words.items()
                if k[0] == x and dst == y}

    def hom_count(self, x: str, y: str) -> int:
        return len(self.hom_classes(x, y))

    def partition(self) -> set[frozenset]:
        """The universe as a set of equality classes (frozensets of keys)."""
        fibers: dict = {}
        for key in self.words:
            fibers.setdefault(self.uf.find(key), []).append(key)
        return {frozenset(v) for v in fibers.values()}

    def class_min_word(self, rep_key):
        members = [k for k in self.words if self.uf.find(k) == rep_key]
        return min(members, key=lambda k: (len(k[1]), k[1]))

    # -- denominators ------------------------------------------------------

    def denominator_classes(self, words, include_identities: bool,
                            close: bool) -> dict:
        """Map class representative -> (src, dst, minimal letters)."""
        chosen: set = set()
        for letters in words:
            letters = tuple(letters)
            src = self.gen[letters[0]][0]
            chosen.add(self.rep(src, letters))
        if include_identities:
            for x in self.objects:
                chosen.add(self.rep(x, ()))
        if close:
            while True:
                fresh = set()
                info = {r: self._class_endpoints(r) for r in chosen}
                for r1 in chosen:
                    for r2 in chosen:
                        (s1, d1, w1), (s2, d2, w2) = info[r1], info[r2]
                        if d1 != s2 or len(w1) + len(w2) > self.max_len:
                            continue
                        r = self.rep(s1, w1 + w2)
                        if r not in chosen and r not in fresh:
                            fresh.add(r)
                if not fresh:
                    break
                chosen |= fresh
        return {r: self._class_endpoints(r) for r in chosen}

    def _class_endpoints(self, rep_key):
        src, letters = self.class_min_word(rep_key)
        return src, self.words[(src, letters)], letters


# -- fixture parsing (the oracle's own, on purpose) --------------------------

def load_fixture(path):
    data = json.loads(Path(path).read_text(encoding="utf-8"))
    objects = list(data["objects"])
    generators = [(g["name"], g["src"], g["dst"]) for g in data["generators"]]
    relations = [(tuple(r["lhs"]), tuple(r["rhs"])) for r in data["relations"]]
    d = data["denominators"]
    denoms = ([tuple(w) for w in d["words"]], bool(d["include_identities"]),
              bool(d["close_under_composition"]))
    return objects, generators, relations, denoms


def oracle_for(path, max_len: int = DEFAULT_MAX_LEN) -> Oracle:
    objects, generators, relations, _ = load_fixture(path)
    return Oracle(objects, generators, relations, max_len)


def localised_oracle(path, max_len: int = DEFAULT_MAX_LEN) -> Oracle:
    """The oracle's own presentation of the localised category.

    One formal inverse generator per non-identity denominator *class*
    (composite classes included), with the two invertibility relations.
    This deliberately differs from the package's inverse scheme; the two
    presentations present the same category, so per-hom-set class counts
    must agree with the package's normal-form counts.
    """
    objects, generators, relations, (dwords, incl, close) = load_fixture(path)
    base = Oracle(objects, generators, relations, max_len)
    gens2 = list(generators)
    rels2 = list(relations)
    classes = sorted(base.denominator_classes(dwords, incl, close).values())
    k = 0
    for src, dst, letters in classes:
        if not letters:
            continue
        name = f"inv{k}"
        k += 1
        gens2.append((name, dst, src))
        rels2.append((letters + (name,), ()))
        rels2.append(((name,) + letters, ()))
    return Oracle(objects, gens2, rels2, max_len)
