"""Polygon triangulations and the universal non-embeddable gluings.

A triangulation of the (n+1)-gon on vertices 0..n is a set of n-1 vertex
triples.  Full binary parenthesizations of n symbols correspond to such
triangulations (leaf i spans the polygon side (i-1, i)); two of them glued
along the shared spine give a partial groupoid whose spine word has the
two long edges as its only values, the universal witness that the word
admits two different products.

Naming in glued models: spine edges s1..sn, diagonals dT_ij / dT'_ij per
triangulation copy, long edges lT / lT' (merged to a single edge l when
gluing along the circular spine).  Digits are concatenated in diagonal
names, so gluings are limited to n <= 9, far beyond desk scale here.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from . import words as _words
from .model import SYMMETRIC, Hom, ModelError, TruncatedModel, identity_name, iter_homs


class TriangulationError(ValueError):
    """Not a triangulation of the polygon."""


class GluingError(ValueError):
    """The requested gluing is not permitted for this pair."""


@dataclass(frozen=True)
class Triangulation:
    """n-1 triangles covering the (n+1)-gon with vertices 0..n."""

    n: int
    triples: frozenset[tuple[int, int, int]]

    @classmethod
    def of(cls, n: int, triples) -> "Triangulation":
        t = cls(n, frozenset(tuple(sorted(tri)) for tri in triples))
        t.check()
        return t

    def check(self) -> None:
        if self.n < 2:
            raise TriangulationError("polygon needs n >= 2")
        if len(self.triples) != self.n - 1:
            raise TriangulationError(
                f"expected {self.n - 1} triangles, got {len(self.triples)}")
        edge_count: dict[tuple[int, int], int] = {}
        for tri in self.triples:
            if len(set(tri)) != 3 or not all(0 <= v <= self.n for v in tri):
                raise TriangulationError(f"bad triple {tri}")
            i, j, k = sorted(tri)
            for e in ((i, j), (j, k), (i, k)):
                edge_count[e] = edge_count.get(e, 0) + 1
        for e, cnt in edge_count.items():
            want = 1 if e in self.sides() else 2
            if cnt != want:
                raise TriangulationError(f"edge {e} appears {cnt} times")
        if set(self.sides()) - set(edge_count):
            raise TriangulationError("triangles do not cover the polygon")
        diags = sorted(self.diagonals())
        for a in range(len(diags)):
            for b in range(a + 1, len(diags)):
                if _crosses(diags[a], diags[b]):
                    raise TriangulationError(
                        f"diagonals {diags[a]} and {diags[b]} cross")

    def sides(self) -> tuple[tuple[int, int], ...]:
        return tuple((i, i + 1) for i in range(self.n)) + ((0, self.n),)

    def diagonals(self) -> frozenset[tuple[int, int]]:
        sides = set(self.sides())
        out = set()
        for tri in self.triples:
            i, j, k = sorted(tri)
            for e in ((i, j), (j, k), (i, k)):
                if e not in sides:
                    out.add(e)
        return frozenset(out)

    def key(self):
        return tuple(sorted(self.triples))

    def __lt__(self, other):
        return self.key() < other.key()

    def __repr__(self):
        return f"Triangulation({self.n}, {self.key()})"


def _crosses(d1, d2):
    i, j = d1
    k, l = d2
    return (i < k < j < l) or (k < i < l < j)


@lru_cache(maxsize=None)
def enumerate_triangulations(n: int) -> tuple[Triangulation, ...]:
    """All triangulations of the (n+1)-gon, in canonical order."""
    if n < 2:
        raise TriangulationError("polygon needs n >= 2")

    def rec(vs):
        if len(vs) < 3:
            return [frozenset()]
        out = []
        lo, hi = vs[0], vs[-1]
        for idx in range(1, len(vs) - 1):
            mid = vs[idx]
            for left in rec(vs[: idx + 1]):
                for right in rec(vs[idx:]):
                    out.append(left | right | {(lo, mid, hi)})
        return out

    tris = [Triangulation.of(n, t) for t in rec(tuple(range(n + 1)))]
    return tuple(sorted(tris))


# -- Tamari side: parenthesizations <-> triangulations --------------------------


def parse_parenthesization(text: str):
    """Parse "((1 2) 3)" into nested tuples with 1-based integer leaves."""
    tokens = text.replace("(", " ( ").replace(")", " ) ").split()
    pos = 0

    def parse():
        nonlocal pos
        if pos >= len(tokens):
            raise TriangulationError("unbalanced parenthesization")
        tok = tokens[pos]
        pos += 1
        if tok == "(":
            left = parse()
            right = parse()
            if pos >= len(tokens) or tokens[pos] != ")":
                raise TriangulationError("expected closing paren")
            pos += 1
            return (left, right)
        if tok == ")":
            raise TriangulationError("unexpected closing paren")
        if not tok.isdigit():
            raise TriangulationError(f"bad leaf {tok!r}")
        return int(tok)

    tree = parse()
    if pos != len(tokens):
        raise TriangulationError("trailing tokens in parenthesization")
    return tree


def _tree_leaves(tree):
    if isinstance(tree, int):
        return [tree]
    if not (isinstance(tree, tuple) and len(tree) == 2):
        raise TriangulationError(f"bad parenthesization node {tree!r}")
    return _tree_leaves(tree[0]) + _tree_leaves(tree[1])


def tamari_to_triangulation(tree) -> Triangulation:
    """Leaf i covers the side (i-1, i); a node spanning leaves i..j covers
    the chord (i-1, j), so each internal node contributes one triangle."""
    leaves = _tree_leaves(tree)
    n = len(leaves)
    if leaves != list(range(1, n + 1)):
        raise TriangulationError("leaves must read 1..n left to right")
    triples = []

    def span(node):
        if isinstance(node, int):
            return (node - 1, node)
        (a, _), (_, b) = span(node[0]), span(node[1])
        mid = span(node[0])[1]
        triples.append((a, mid, b))
        return (a, b)

    span(tree)
    return Triangulation.of(n, triples)


def triangulation_to_tamari(t: Triangulation):
    """Inverse of :func:`tamari_to_triangulation`."""
    by_chord = {}
    for tri in t.triples:
        i, j, k = sorted(tri)
        by_chord[(i, k)] = j

    def build(a, b):
        if b == a + 1:
            return b
        mid = by_chord[(a, b)]
        return (build(a, mid), build(mid, b))

    return build(0, t.n)


# -- pair classification ---------------------------------------------------------


INCOMPATIBLE = "incompatible"
COMPATIBLE = "compatible"
WELL_BEHAVED = "well_behaved"


def _shared_linear_ear(t: Triangulation, t2: Triangulation):
    shared = t.triples & t2.triples
    for i in range(1, t.n):
        ear = (i - 1, i, i + 1)
        if ear in shared:
            return ear
    return None


def pair_classify(t: Triangulation, t2: Triangulation) -> str:
    """incompatible / compatible / well_behaved, per the shared-ear tests.

    A shared straight ear (i-1, i, i+1) forces a spine collision in the
    plain gluing; the two wrap-around triangles do the same for the
    circular-spine gluing.
    """
    if t.n != t2.n:
        raise TriangulationError("pair classification needs equal n")
    if _shared_linear_ear(t, t2) is not None:
        return INCOMPATIBLE
    shared = t.triples & t2.triples
    n = t.n
    wrap1 = tuple(sorted((n - 1, n, 0)))
    wrap2 = tuple(sorted((n, 0, 1)))
    if wrap1 in shared or wrap2 in shared:
        return COMPATIBLE
    return WELL_BEHAVED


def flip_adjacent(t: Triangulation, t2: Triangulation) -> bool:
    if t.n != t2.n:
        raise TriangulationError("flip adjacency needs equal n")
    return len(t.diagonals() ^ t2.diagonals()) == 2


# -- glued models -----------------------------------------------------------------


@dataclass(frozen=True)
class GluedModel:
    model: TruncatedModel
    n: int
    variant: str
    t: Triangulation
    t2: Triangulation
    spine: tuple[str, ...]
    long_t: str
    long_t2: str


def _edge_name(n, prefix, i, j, circular):
    """Name of the copy of edge (i, j) inside one triangulation's half."""
    if j == i + 1:
        return f"s{j}"
    if (i, j) == (0, n):
        return "l" if circular else "l" + prefix
    return f"d{prefix}_{i}{j}"


def build_raw_gluing(t: Triangulation, t2: Triangulation,
                     circular: bool = False) -> TruncatedModel:
    """Glue the two triangle complexes along the (circular) spine.

    No permission check and no validation: for a bad pair the result is
    exactly the non-spiny pushout, and ``validate()`` reports the spine
    collision.
    """
    if t.n != t2.n:
        raise TriangulationError("gluing needs equal n")
    n = t.n
    if n > 9:
        raise TriangulationError("glued edge names support n <= 9 only")
    objects = [str(v) for v in range(n + 1)]
    edge_pairs = {}
    triangles = []
    for prefix, tri_set in (("T", t.triples), ("T'", t2.triples)):
        for tri in sorted(tri_set):
            i, j, k = sorted(tri)
            names = []
            for (p, q) in ((i, j), (j, k), (i, k)):
                name = _edge_name(n, prefix, p, q, circular)
                edge_pairs[name] = (name, str(p), str(q))
                names.append(name)
            triangles.append(tuple(names))
    ordered = [edge_pairs[k] for k in sorted(edge_pairs)]
    return TruncatedModel.symmetric(objects, ordered, triangles)


def build_glued(t: Triangulation, t2: Triangulation,
                variant: str = "na") -> GluedModel:
    """NA (spine gluing, compatible pairs) or A (circular, well-behaved)."""
    if variant not in ("na", "a"):
        raise GluingError(f"unknown variant {variant!r}")
    cls = pair_classify(t, t2)
    if variant == "na" and cls == INCOMPATIBLE:
        raise GluingError("NA gluing needs a compatible pair")
    if variant == "a" and cls != WELL_BEHAVED:
        raise GluingError("A gluing needs a well-behaved pair")
    circular = variant == "a"
    model = build_raw_gluing(t, t2, circular=circular)
    report = model.validate()
    if not report.ok:
        raise GluingError(f"gluing is not spiny: {report.summary()}")
    n = t.n
    return GluedModel(
        model=model,
        n=n,
        variant=variant,
        t=t,
        t2=t2,
        spine=tuple(f"s{i}" for i in range(1, n + 1)),
        long_t="l" if circular else "lT",
        long_t2="l" if circular else "lT'",
    )


# -- peeling off shared wrap triangles ---------------------------------------------


@dataclass
class PeelResult:
    t: Triangulation
    t2: Triangulation
    hom: Hom
    target: TruncatedModel
    steps: int


def _delete_vertex_n(t: Triangulation) -> Triangulation:
    wrap = tuple(sorted((t.n - 1, t.n, 0)))
    return Triangulation.of(t.n - 1, [x for x in t.triples if x != wrap])


def _delete_vertex_0(t: Triangulation) -> Triangulation:
    wrap = tuple(sorted((t.n, 0, 1)))
    kept = [tuple(v - 1 for v in x) for x in t.triples if x != wrap]
    return Triangulation.of(t.n - 1, kept)


def peel_step(t: Triangulation, t2: Triangulation, hom: Hom,
              target: TruncatedModel):
    """One peel: drop the shared wrap triangle and restrict the map.

    Returns the smaller pair with the composite map NA(S,S') -> X.
    Identification of the long edges is preserved, which is exactly the
    two-sided cancellation law of the target.
    """
    n = t.n
    shared = t.triples & t2.triples
    wrap_n = tuple(sorted((n - 1, n, 0)))
    wrap_0 = tuple(sorted((n, 0, 1)))
    if wrap_n in shared:
        s, s2 = _delete_vertex_n(t), _delete_vertex_n(t2)
        shift = 0
    elif wrap_0 in shared:
        s, s2 = _delete_vertex_0(t), _delete_vertex_0(t2)
        shift = 1
    else:
        raise GluingError("pair is already well-behaved, nothing to peel")
    small = build_glued(s, s2, variant="na")
    big_names = {}
    for prefix in ("T", "T'"):
        for i in range(s.n + 1):
            for j in range(i + 1, s.n + 1):
                small_name = _edge_name(s.n, prefix, i, j, False)
                big_names[small_name] = _edge_name(n, prefix, i + shift,
                                                   j + shift, False)
    vmap, emap = {}, {}
    for v in range(s.n + 1):
        vmap[str(v)] = hom.vertex(str(v + shift))
    for name in small.model.edges:
        e = small.model.edge(name)
        if e.is_identity:
            emap[name] = identity_name(vmap[e.src])
        elif name.endswith("^"):
            emap[name] = target.inv(hom.edge(big_names[name[:-1]]))
        else:
            emap[name] = hom.edge(big_names[name])
    composite = Hom.of(vmap, emap)
    return small, composite


def peel(t: Triangulation, t2: Triangulation, hom: Hom,
         target: TruncatedModel) -> PeelResult:
    """Iterate peel steps until the pair is well-behaved."""
    cls = pair_classify(t, t2)
    if cls == INCOMPATIBLE:
        raise GluingError("peel needs a compatible pair")
    if cls == WELL_BEHAVED:
        raise GluingError("pair is already well-behaved, nothing to peel")
    steps = 0
    while pair_classify(t, t2) != WELL_BEHAVED:
        glued, hom = peel_step(t, t2, hom, target)
        t, t2 = glued.t, glued.t2
        steps += 1
    return PeelResult(t, t2, hom, target, steps)


# -- the orthogonality harness -------------------------------------------------


def factor_through_circular(glued: GluedModel, hom: Hom) -> Hom:
    """Factor a long-edge-identifying map through the circular gluing.

    The spine gluing maps onto the circular one cell by cell, so the
    factorization is unique: it keeps every edge image and sends the
    merged long edge to the common image of the two long edges.
    """
    if glued.variant != "na":
        raise GluingError("factoring starts from a spine gluing")
    if hom.edge(glued.long_t) != hom.edge(glued.long_t2):
        raise GluingError("map does not identify the long edges")
    emap = {}
    for name, img in hom.edges.items():
        base = name[:-1] if name.endswith("^") else name
        suffix = "^" if name.endswith("^") else ""
        if base in (glued.long_t, glued.long_t2):
            emap["l" + suffix] = img
        else:
            emap[name] = img
    return Hom.of(hom.vertices, emap)


@dataclass
class OrthogonalityResult:
    ok: bool
    max_n: int
    violator: tuple[Triangulation, Triangulation, Hom] | None = None
    pairs_checked: int = 0
    homs_checked: int = 0


def orthogonality_check(target: TruncatedModel, max_n: int) -> OrthogonalityResult:
    """Test every map from a glued NA model into the target.

    For every well-behaved pair with 3 <= n <= max_n and every hom
    NA -> target, the two long edges must land on the same edge
    (equivalently the map factors through the circular-spine gluing A).
    The first hom violating this is returned.
    """
    if target.mode != SYMMETRIC:
        raise ModelError("orthogonality check needs a symmetric target")
    pairs = homs = 0
    for n in range(3, max_n + 1):
        tris = enumerate_triangulations(n)
        for t in tris:
            for t2 in tris:
                if pair_classify(t, t2) != WELL_BEHAVED:
                    continue
                pairs += 1
                glued = build_glued(t, t2, variant="na")
                for hom in iter_homs(glued.model, target):
                    homs += 1
                    if hom.edge(glued.long_t) != hom.edge(glued.long_t2):
                        return OrthogonalityResult(False, max_n, (t, t2, hom),
                                                   pairs, homs)
    return OrthogonalityResult(True, max_n, None, pairs, homs)


def violator_from_mean_word(target: TruncatedModel, word) -> tuple[
        Triangulation, Triangulation, Hom]:
    """Turn a mean word into a glued pair and a long-edge-splitting map.

    Two parenthesizations with distinct values are shortened (any grouping
    of adjacent letters shared by both trees is contracted) until they share
    none, so the associated triangulations form a compatible pair; the word
    then defines a hom out of the NA gluing sending the long edges to the
    two values.
    """
    word = _words.check_word(target, word)
    while True:
        trees = _words.value_trees(target, word)
        vals = sorted(trees)
        if len(vals) < 2:
            raise GluingError("word is not mean")
        v1, v2 = vals[0], vals[1]
        shared = _shared_grouping(trees[v1], trees[v2])
        if shared is None:
            break
        word = _words.contract(target, word, shared)
        if word is None:
            raise AssertionError("shared grouping did not contract")
    if len(word) < 3:
        raise GluingError("mean words have length at least 3")
    t = tamari_to_triangulation(trees[v1])
    t2 = tamari_to_triangulation(trees[v2])
    if pair_classify(t, t2) == INCOMPATIBLE:
        raise AssertionError("shortened parenthesizations still share an ear")
    glued = build_glued(t, t2, variant="na")
    hom = _hom_from_evaluation(glued, target, word, trees[v1], trees[v2])
    return t, t2, hom


def _shared_grouping(tree1, tree2):
    """1-based position of a leaf pair grouped by both trees, or None."""

    def groupings(node, acc):
        if isinstance(node, int):
            return
        left, right = node
        if isinstance(left, int) and isinstance(right, int):
            acc.add(left)
        groupings(left, acc)
        groupings(right, acc)

    a, b = set(), set()
    groupings(tree1, a)
    groupings(tree2, b)
    common = a & b
    return min(common) if common else None


def _subtree_values(target, word, tree):
    """Map chord (i, j) -> evaluated edge, for every node of the tree."""
    out = {}

    def walk(node):
        if isinstance(node, int):
            out[(node - 1, node)] = word[node - 1]
            return (node - 1, node)
        (a, m) = walk(node[0])
        (m2, b) = walk(node[1])
        h = target.mult(out[(a, m)], out[(m2, b)])
        if h is None:
            raise AssertionError("derivation tree does not evaluate")
        out[(a, b)] = h
        return (a, b)

    walk(tree)
    return out


def _hom_from_evaluation(glued: GluedModel, target: TruncatedModel,
                         word, tree1, tree2) -> Hom:
    n = glued.n
    eval1 = _subtree_values(target, word, tree1)
    eval2 = _subtree_values(target, word, tree2)
    vmap = {"0": _words.word_src(target, word)}
    for i in range(1, n + 1):
        vmap[str(i)] = target.edge(word[i - 1]).tgt
    emap = {}
    for prefix, table in (("T", eval1), ("T'", eval2)):
        for (i, j), value in table.items():
            name = _edge_name(n, prefix, i, j, False)
            emap[name] = value
    for name in glued.model.edges:
        e = glued.model.edge(name)
        if e.is_identity:
            emap[name] = identity_name(vmap[e.src])
        elif name.endswith("^"):
            emap[name] = target.inv(emap[name[:-1]])
    hom = Hom.of(vmap, emap)
    return hom
