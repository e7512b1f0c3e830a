"""Independent oracles and generators shared by the test modules.

The oracles deliberately avoid the code paths they check: word values are
recomputed by enumerating one-step contraction sequences, triangulations
by filtering non-crossing diagonal subsets, and categories come from a
pool of hand-rolled constructions.
"""
from __future__ import annotations

import itertools

import pgroupoid as pg
from pgroupoid import fixtures
from pgroupoid.category import FiniteCategory, IDENTITY_PREFIX


# -- contraction-sequence oracle -------------------------------------------------


def brute_values(model, word, _memo=None):
    """Values by exhaustive one-step contraction sequences (no interval DP)."""
    if _memo is None:
        _memo = {}
    word = tuple(word)
    if word in _memo:
        return _memo[word]
    if len(word) == 1:
        out = frozenset(word)
    else:
        acc = set()
        for i in range(1, len(word)):
            h = model.mult(word[i - 1], word[i])
            if h is None:
                continue
            acc |= brute_values(model, word[: i - 1] + (h,) + word[i + 1 :], _memo)
        out = frozenset(acc)
    _memo[word] = out
    return out


def all_composable_words(model, max_len, include_identities=False):
    """Every composable word up to the length bound, valued or not."""
    if include_identities:
        starts = sorted(model.edges)
    else:
        starts = model.nonidentity_edges()

    def extend(word):
        yield word
        if len(word) == max_len:
            return
        tgt = model.edge(word[-1]).tgt
        for nxt in model.out_edges(tgt):
            if not include_identities and model.is_identity(nxt):
                continue
            yield from extend(word + (nxt,))

    for e in starts:
        yield from extend((e,))


# -- triangulation oracle ----------------------------------------------------------


def oracle_diagonal_sets(n):
    """All maximal non-crossing diagonal sets of the (n+1)-gon."""
    diagonals = []
    for i in range(n + 1):
        for j in range(i + 2, n + 1):
            if (i, j) != (0, n):
                diagonals.append((i, j))

    def crosses(d1, d2):
        i, j = d1
        k, l = d2
        return (i < k < j < l) or (k < i < l < j)

    out = set()
    for combo in itertools.combinations(diagonals, n - 2):
        if all(not crosses(a, b) for a, b in itertools.combinations(combo, 2)):
            out.add(frozenset(combo))
    return out


# -- category pool -----------------------------------------------------------------


def disjoint_union(cat1, cat2, tag1="L", tag2="R"):
    """Coproduct of finite categories, with names prefixed per summand."""

    def renamed(cat, tag):
        objects = [f"{tag}{o}" for o in cat.objects]
        morphs, table = [], {}

        def fix(name):
            if name.startswith(IDENTITY_PREFIX):
                return IDENTITY_PREFIX + tag + name[len(IDENTITY_PREFIX):]
            return tag + name

        for m in cat.nonidentity_morphisms():
            mor = cat.morphism(m)
            morphs.append((tag + m, tag + mor.src, tag + mor.tgt))
        for f in cat.nonidentity_morphisms():
            for g in cat.nonidentity_morphisms():
                if cat.morphism(f).tgt == cat.morphism(g).src:
                    table[(tag + g, tag + f)] = fix(cat.compose(g, f))
        return objects, morphs, table

    o1, m1, t1 = renamed(cat1, tag1)
    o2, m2, t2 = renamed(cat2, tag2)
    return FiniteCategory(o1 + o2, m1 + m2, {**t1, **t2})


def groupoid_pool():
    pool = [
        pg.cyclic_group(2),
        pg.cyclic_group(3),
        pg.cyclic_group(4),
        pg.cyclic_group(5),
        pg.interval_groupoid(),
        pg.pair_groupoid(["a", "b"]),
        pg.pair_groupoid(["a", "b", "c"]),
        disjoint_union(pg.cyclic_group(2), pg.interval_groupoid()),
        disjoint_union(pg.cyclic_group(3), pg.pair_groupoid(["a", "b"])),
        disjoint_union(pg.pair_groupoid(["a", "b"]), pg.cyclic_group(4)),
    ]
    return pool


def category_pool():
    chain = pg.path_category(["0", "1", "2", "3"],
                             [("u", "0", "1"), ("v", "1", "2"), ("w", "2", "3")])
    fork = pg.path_category(["0", "1", "2"],
                            [("a", "0", "1"), ("b", "0", "1"), ("c", "1", "2")])
    square = pg.path_category(["0", "1", "2", "3"],
                              [("n", "0", "1"), ("e", "1", "3"),
                               ("w", "0", "2"), ("s", "2", "3")])
    doubled = pg.path_category(["0", "1"],
                               [("a", "0", "1"), ("b", "0", "1"),
                                ("c", "0", "1")])
    pool = groupoid_pool() + [
        chain, fork, square, doubled,
        disjoint_union(chain, pg.cyclic_group(2)),
        disjoint_union(fork, pg.interval_groupoid()),
        disjoint_union(square, doubled, "P", "Q"),
        disjoint_union(chain, fork, "P", "Q"),
        disjoint_union(doubled, pg.cyclic_group(3), "P", "Q"),
        disjoint_union(pg.pair_groupoid(["a", "b"]), square, "P", "Q"),
    ]
    return pool


def random_string(rng, cat, max_len=8):
    names = sorted(cat.morphisms)
    length = rng.randrange(0, max_len + 1)
    return tuple(rng.choice(names) for _ in range(length))


# -- fixture shorthands --------------------------------------------------------------


def load(name):
    return fixtures.load_model(name)


def example1_symmetric():
    return pg.symmetrize(load("example1.pgd"))


def horn_symmetric():
    return pg.symmetrize(load("horn.pgd"))


def square_pair():
    tris = pg.enumerate_triangulations(3)
    return tris[0], tris[1]


def pentagon_figure_pair():
    t = pg.Triangulation.of(4, [(0, 1, 4), (1, 3, 4), (1, 2, 3)])
    t2 = pg.Triangulation.of(4, [(0, 1, 2), (0, 2, 4), (2, 3, 4)])
    return t, t2


def pentagon_incompatible_pair():
    t = pg.Triangulation.of(4, [(0, 1, 4), (1, 2, 4), (2, 3, 4)])
    t2 = pg.Triangulation.of(4, [(0, 1, 2), (0, 2, 4), (2, 3, 4)])
    return t, t2


MODEL_FIXTURES = (
    "example1.pgd",
    "example2.pgd",
    "horn.pgd",
    "na_square.pgd",
    "a_square.pgd",
    "na_pentagon.pgd",
    "free_one_generator.pgd",
)
