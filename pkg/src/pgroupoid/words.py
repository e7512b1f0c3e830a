"""The word-contraction calculus on a truncated model.

A word is a nonempty tuple of edge names forming a composable chain.
Contraction replaces an adjacent pair by its product when the model has a
2-simplex (stored or degenerate) with that spine; iterating contractions
down to a single edge evaluates one full parenthesization of the word.
``values(w)`` is the set of edges obtainable this way; a word with two or
more values is *mean*, otherwise *kind*.  An edge is *sad* when it is a
value of some mean word, and a model embeds into the nerve of its
fundamental groupoid exactly when every edge is happy, so the bounded
scan below is the embeddability probe of the package.

Searches are deterministic: witnesses are the shortest mean word, and
among those the one with the fewest inverse-marked letters, ties broken
lexicographically.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from itertools import chain

from .model import SYMMETRIC, TruncatedModel, identity_name


class WordError(ValueError):
    """Malformed word or an operation applied outside its precondition."""


def word_sort_key(word):
    """Canonical order on same-length words: positively oriented first.

    Words with fewer inverse-marked letters come first, ties broken
    lexicographically, so spine-style witnesses beat their inverted
    variants.
    """
    return (sum(1 for t in word if t.endswith("^")), word)


# -- basic word plumbing ------------------------------------------------------


def check_word(model: TruncatedModel, word) -> tuple[str, ...]:
    word = tuple(word)
    if not word:
        raise WordError("words must be nonempty")
    for name in word:
        model.edge(name)
    for a, b in zip(word, word[1:]):
        if not model.composable(a, b):
            raise WordError(f"edges {a} and {b} do not compose in sequence")
    return word


def word_src(model: TruncatedModel, word) -> str:
    return model.edge(word[0]).src


def word_tgt(model: TruncatedModel, word) -> str:
    return model.edge(word[-1]).tgt


def word_inverse(model: TruncatedModel, word) -> tuple[str, ...]:
    if model.mode != SYMMETRIC:
        raise WordError("word inversion needs a symmetric model")
    return tuple(model.inv(e) for e in reversed(word))


def contract(model: TruncatedModel, word, i: int):
    """One inner face: merge positions i, i+1 (1-based), or None if undefined."""
    word = check_word(model, word)
    if not 1 <= i < len(word):
        raise WordError(f"contraction index {i} out of range for length {len(word)}")
    h = model.mult(word[i - 1], word[i])
    if h is None:
        return None
    return word[: i - 1] + (h,) + word[i + 1 :]


def contractions(model: TruncatedModel, word):
    """All one-step contractions, index order.  The word is trusted."""
    out = []
    for i in range(1, len(word)):
        h = model.mult(word[i - 1], word[i])
        if h is not None:
            out.append(word[: i - 1] + (h,) + word[i + 1 :])
    return out


# -- full-contraction values (interval dynamic programming) -------------------


def values(model: TruncatedModel, word) -> frozenset[str]:
    """The set of edges the word contracts to, over all parenthesizations.

    Interval DP: V[i,i] = {w_i}, V[i,j] = union over splits k of the
    defined products of V[i,k] with V[k+1,j]; degenerate products count.
    """
    word = check_word(model, word)
    n = len(word)
    table = {(i, i): frozenset((word[i],)) for i in range(n)}
    for span in range(2, n + 1):
        for i in range(n - span + 1):
            j = i + span - 1
            acc = set()
            for k in range(i, j):
                for u in table[(i, k)]:
                    prods = model.products_from(u)
                    for v in table[(k + 1, j)]:
                        h = prods.get(v)
                        if h is not None:
                            acc.add(h)
            table[(i, j)] = frozenset(acc)
    return table[(0, n - 1)]


def value_trees(model: TruncatedModel, word) -> dict[str, object]:
    """One parenthesization per value, as nested tuples over leaves 1..n.

    The tree for a value is the first derivation in deterministic order
    (split position ascending, then sorted sub-values); leaves are 1-based
    positions, internal nodes are pairs (left, right).
    """
    word = check_word(model, word)
    n = len(word)
    table = {(i, i): {word[i]: None} for i in range(n)}
    for span in range(2, n + 1):
        for i in range(n - span + 1):
            j = i + span - 1
            acc = {}
            for k in range(i, j):
                for u in sorted(table[(i, k)]):
                    prods = model.products_from(u)
                    for v in sorted(table[(k + 1, j)]):
                        h = prods.get(v)
                        if h is not None and h not in acc:
                            acc[h] = (k, u, v)
            table[(i, j)] = acc

    def tree(i, j, val):
        if i == j:
            return i + 1
        k, u, v = table[(i, j)][val]
        return (tree(i, k, u), tree(k + 1, j, v))

    return {val: tree(0, n - 1, val) for val in sorted(table[(0, n - 1)])}


def is_mean(model: TruncatedModel, word) -> bool:
    return len(values(model, word)) >= 2


# -- bottom-up table of valued words ------------------------------------------


class ValueTable:
    """All words with at least one value, layered by length.

    Words whose value set is empty can never witness meanness, so the scan
    below only ever generates valued words: layer L is built from
    productive splits of lower layers.  Once a dyadic window of layers is
    empty every later layer is empty too, which lets bounded scans finish
    early on models whose composable chains are short.
    """

    def __init__(self, model: TruncatedModel, allow_identities: bool = False):
        self.model = model
        if allow_identities:
            letters = tuple(sorted(model.edges))
        else:
            letters = model.nonidentity_edges()
        first = {(e,): frozenset((e,)) for e in letters}
        self._layers: list[dict] = [{}, first]
        self._by_value = [None, self._index(first)]
        self._exhausted = False

    @staticmethod
    def _index(layer):
        idx = {}
        for w in sorted(layer):
            for v in layer[w]:
                idx.setdefault(v, []).append(w)
        return {v: tuple(ws) for v, ws in idx.items()}

    def layer(self, length: int) -> dict[tuple[str, ...], frozenset[str]]:
        while len(self._layers) <= length:
            self._build_next()
        return self._layers[length]

    def _build_next(self):
        size = len(self._layers)
        if self._exhausted:
            self._layers.append({})
            self._by_value.append({})
            return
        acc: dict[tuple, set] = {}
        for k in range(1, size):
            lower = self._layers[k]
            complement = self._by_value[size - k]
            for w1, vals in lower.items():
                for v1 in vals:
                    for v2, h in self.model.products_from(v1).items():
                        for w2 in complement.get(v2, ()):
                            acc.setdefault(w1 + w2, set()).add(h)
        layer = {w: frozenset(vs) for w, vs in acc.items()}
        self._layers.append(layer)
        self._by_value.append(self._index(layer))
        window = range((size + 1) // 2, size + 1)
        if all(not self._layers[j] for j in window):
            self._exhausted = True

    def exhausted_at(self, length: int) -> bool:
        """True when every layer beyond ``length`` is known to be empty.

        Valid once layer ``length`` has been built: if a dyadic window of
        layers is empty then every longer word lacks a productive split.
        """
        return self._exhausted


# -- mean/kind scan ------------------------------------------------------------


@dataclass
class MeanScanResult:
    """Outcome of a bounded search for mean words.

    ``witness`` is None for a bounded-kind verdict; otherwise it is the
    first mean word in canonical order (see :func:`word_sort_key`) and
    ``witness_values`` holds its full value set.  ``sad_edges`` is the
    union of values of the discovered mean words (all of them under
    ``collect_all``).
    """

    bound: int
    witness: tuple[str, ...] | None = None
    witness_values: tuple[str, ...] = ()
    sad_edges: tuple[str, ...] = ()
    mean_word_count: int = 0

    @property
    def is_kind(self) -> bool:
        return self.witness is None


def mean_scan(model: TruncatedModel, max_len: int, *,
              allow_identities: bool = False,
              collect_all: bool = False) -> MeanScanResult:
    """Search composable words of length 2..max_len for a mean word."""
    if max_len < 2:
        raise WordError("mean scan needs max_len >= 2")
    table = ValueTable(model, allow_identities)
    result = MeanScanResult(bound=max_len)
    sad: set[str] = set()
    for length in range(2, max_len + 1):
        layer = table.layer(length)
        for w in sorted(layer, key=word_sort_key):
            vals = layer[w]
            if len(vals) < 2:
                continue
            if result.witness is None:
                result.witness = w
                result.witness_values = tuple(sorted(vals))
                assert tuple(sorted(values(model, w))) == result.witness_values
            result.mean_word_count += 1
            sad.update(vals)
            if not collect_all:
                break
        if result.witness is not None and not collect_all:
            break
        if table.exhausted_at(length):
            break
    result.sad_edges = tuple(sorted(sad))
    return result


# -- zigzags and mountains -----------------------------------------------------


@dataclass(frozen=True)
class Zigzag:
    """An alternating chain w_0 <~ w_1 ~> w_2 <~ ... ~> w_{2n}.

    Peaks sit at odd indices; every arrow is a (possibly multi-step)
    contraction, verified by :func:`verify_zigzag`.
    """

    entries: tuple[tuple[str, ...], ...]

    @property
    def peak_count(self) -> int:
        return (len(self.entries) - 1) // 2

    @property
    def peaks(self) -> tuple[tuple[str, ...], ...]:
        return self.entries[1::2]


def contracts_to(model: TruncatedModel, word, target) -> bool:
    """Whether word ~>* target through one-step contractions."""
    word, target = tuple(word), tuple(target)
    if len(word) <= len(target):
        return False
    seen = set()
    stack = [word]
    while stack:
        w = stack.pop()
        if w in seen:
            continue
        seen.add(w)
        for nxt in contractions(model, w):
            if nxt == target:
                return True
            if len(nxt) > len(target):
                stack.append(nxt)
    return False


def verify_zigzag(model: TruncatedModel, zigzag: Zigzag) -> None:
    entries = zigzag.entries
    if len(entries) < 3 or len(entries) % 2 == 0:
        raise WordError("a zigzag has entries w_0..w_{2n} with n >= 1")
    for w in entries:
        check_word(model, w)
    for k in range(0, len(entries) - 1, 2):
        valley, peak = entries[k], entries[k + 1]
        if not contracts_to(model, peak, valley):
            raise WordError(f"claimed contraction {peak} ~> {valley} fails")
        after = entries[k + 2]
        if not contracts_to(model, peak, after):
            raise WordError(f"claimed contraction {peak} ~> {after} fails")


def mountain_from_zigzag(model: TruncatedModel, zigzag: Zigzag) -> tuple[str, ...]:
    """Concatenate the peaks, alternately inverted, into one word.

    With n peaks the word is w_1 w_3^{-1} w_5 ... ; for even n the final
    valley w_{2n} is appended after the inverted last peak.  The result w
    satisfies w ~>* w_0 and w ~>* w_{2n}, so the values of both ends are
    among the values of w; this postcondition is checked.
    """
    if model.mode != SYMMETRIC:
        raise WordError("mountains from zigzags need a symmetric model")
    verify_zigzag(model, zigzag)
    parts = []
    for idx, peak in enumerate(zigzag.peaks):
        parts.append(peak if idx % 2 == 0 else word_inverse(model, peak))
    if zigzag.peak_count % 2 == 0:
        parts.append(zigzag.entries[-1])
    word = tuple(chain.from_iterable(parts))
    ends = values(model, zigzag.entries[0]) | values(model, zigzag.entries[-1])
    got = values(model, word)
    if not ends <= got:
        raise WordError("zigzag postcondition failed: end values not reached")
    return word


def _zigzag_neighbors(model, word, cap):
    out = contractions(model, word)
    if len(word) < cap:
        for j in range(len(word)):
            for f, g in model.products_to(word[j]):
                out.append(word[:j] + (f, g) + word[j + 1 :])
    return out


def find_zigzag(model: TruncatedModel, f: str, g: str, peak_cap: int,
                node_cap: int = 100_000) -> Zigzag | None:
    """Breadth-first search in the contraction graph from (f) to (g).

    Expansion steps replace a letter by a stored spine with that product,
    keeping words at length <= peak_cap.  The discovered path is compressed
    into an alternating zigzag.
    """
    start, goal = (f,), (g,)
    if start == goal:
        raise WordError("zigzag search needs distinct ends")
    parents: dict[tuple, tuple | None] = {start: None}
    queue = deque((start,))
    found = None
    while queue and found is None:
        w = queue.popleft()
        for nb in _zigzag_neighbors(model, w, peak_cap):
            if nb in parents:
                continue
            parents[nb] = w
            if nb == goal:
                found = nb
                break
            if len(parents) < node_cap:
                queue.append(nb)
    if found is None:
        return None
    path = []
    node = found
    while node is not None:
        path.append(node)
        node = parents[node]
    path.reverse()
    entries = [path[0]]
    for k in range(1, len(path) - 1):
        prev, cur, nxt = len(path[k - 1]), len(path[k]), len(path[k + 1])
        if (prev < cur > nxt) or (prev > cur < nxt):
            entries.append(path[k])
    entries.append(path[-1])
    return Zigzag(tuple(entries))


def mountain(model: TruncatedModel, f: str, g: str, max_len: int, *,
             allow_identities: bool = False) -> tuple[str, ...] | None:
    """A word of length <= max_len with both f and g among its values.

    For f = g the degenerate word (id, f) does the job.  In symmetric mode
    a zigzag between f and g is searched first and folded into a mountain;
    when that fails or overshoots the bound, the bounded exhaustive scan
    decides (so an absent verdict is exhaustive at the bound).
    """
    ef, eg = model.edge(f), model.edge(g)
    if (ef.src, ef.tgt) != (eg.src, eg.tgt):
        raise WordError("mountain needs parallel edges")
    if max_len < 2:
        raise WordError("mountain search needs max_len >= 2")
    if f == g:
        return (identity_name(ef.src), f)
    if model.mode == SYMMETRIC:
        zz = find_zigzag(model, f, g, peak_cap=max_len)
        if zz is not None:
            word = mountain_from_zigzag(model, zz)
            if len(word) <= max_len:
                return word
    table = ValueTable(model, allow_identities)
    target = {f, g}
    for length in range(2, max_len + 1):
        layer = table.layer(length)
        for w in sorted(layer, key=word_sort_key):
            if target <= layer[w]:
                return w
        if table.exhausted_at(length):
            break
    return None


# -- presentation of the fundamental groupoid ----------------------------------


@dataclass(frozen=True)
class Presentation:
    """Generators and relations of the fundamental groupoid.

    One generator per involution orbit of nondegenerate edges (the lex-least
    name is the chosen orientation); one relation per triangle orbit, the
    three-letter loop h^ g f, plus a square relation per self-inverse edge.
    Relation letters use the trailing ``^`` convention for inverses.
    """

    generators: tuple[str, ...]
    relations: tuple[tuple[str, ...], ...]

    def format(self) -> str:
        gens = " ".join(self.generators)
        rels = ", ".join(" ".join(r) for r in self.relations)
        return f"< {gens} | {rels} >" if rels else f"< {gens} | >"


def tau_presentation(model: TruncatedModel) -> Presentation:
    if model.mode != SYMMETRIC:
        raise WordError("presentations need a symmetric model")
    pairs = model.edge_pairs()
    generators = tuple(p[0] for p in pairs)
    oriented = {}
    for p in pairs:
        oriented[p[0]] = p[0]
        if len(p) == 2:
            oriented[p[1]] = p[0] + "^"

    def render(edge):
        token = oriented.get(edge)
        if token is None:
            raise WordError(f"edge {edge} has no orientation (identity in relation?)")
        return token

    def invert(edge):
        return render(model.inv(edge))

    relations = []
    for p in pairs:
        if len(p) == 1:
            relations.append((p[0], p[0]))
    for f, g, h in model.triangle_orbits():
        relations.append((invert(h), render(g), render(f)))
    return Presentation(generators, tuple(relations))


# -- bounded reflection ----------------------------------------------------------


@dataclass
class ReflectResult:
    model: TruncatedModel
    bound: int
    identified: tuple[tuple[str, str], ...]
    rounds: int
    complete_at_bound: bool = True


def reflect_bounded(model: TruncatedModel, max_len: int) -> ReflectResult:
    """Quotient by discovered mean words until the bounded scan is clean.

    Each round merges the value set of the first mean word found at the
    bound (together with the inverse edges), then resolves any spine
    collisions the merge creates by further identification: a collision
    (f,g) -> {h, h'} is exactly a length-2 mean word, so h and h' merge.
    The returned model passes ``mean_scan`` at the same bound; the flag
    records that embeddability is only known up to that bound.
    """
    if model.mode != SYMMETRIC:
        raise WordError("reflection needs a symmetric model")
    current = model
    identified: dict[str, str] = {}
    rounds = 0
    while True:
        scan = mean_scan(current, max_len)
        if scan.witness is None:
            break
        rounds += 1
        current, step = _merge_parallel_edges(current, scan.witness_values)
        for old, new in step.items():
            if old != new:
                identified[old] = new
        for old in list(identified):
            identified[old] = step.get(identified[old], identified[old])
    return ReflectResult(current, max_len, tuple(sorted(identified.items())), rounds)


def _merge_parallel_edges(model, names):
    parent = {e: e for e in model.edges}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(a, b):
        ra, rb = find(a), find(b)
        if ra == rb:
            return False
        if rb < ra:
            ra, rb = rb, ra
        parent[rb] = ra
        return True

    def union_pair(a, b):
        changed = union(a, b)
        changed |= union(model.inv(a), model.inv(b))
        return changed

    base = sorted(names)
    for other in base[1:]:
        union_pair(base[0], other)

    # Stabilize: merges may force further identifications through collisions.
    while True:
        rep = {e: find(e) for e in model.edges}
        changed = False
        spines: dict[tuple[str, str], str] = {}
        mapped = set()
        for f, g, h in sorted(model.triangles):
            mapped.add((rep[f], rep[g], rep[h]))
        inv_rep = {rep[e]: rep[model.inv(e)] for e in model.edges}
        id_rep = {find(identity_name(o)) for o in model.objects}
        for f, g, h in sorted(mapped):
            if f in id_rep:
                expected = g
            elif g in id_rep:
                expected = f
            elif g == inv_rep[f]:
                # reps are names of the original model, so endpoints resolve
                expected = find(identity_name(model.edge(f).src))
            else:
                expected = None
            if expected is not None:
                if expected != h:
                    changed |= union_pair(h, expected)
                continue
            if (f, g) in spines and spines[(f, g)] != h:
                changed |= union_pair(spines[(f, g)], h)
            spines.setdefault((f, g), h)
        if not changed:
            break

    classes: dict[str, list[str]] = {}
    for e in sorted(model.edges):
        classes.setdefault(find(e), []).append(e)

    # Pick representatives pairwise so merged involution pairs stay named
    # (r, r^): the partner class of a class with rep r gets rep inv(r).
    assigned: dict[str, str] = {}
    for key in sorted(classes):
        if key in assigned:
            continue
        members = classes[key]
        ids = [m for m in members if model.edge(m).is_identity]
        r = ids[0] if ids else members[0]
        assigned[key] = r
        partner_key = find(model.inv(members[0]))
        if partner_key not in assigned:
            assigned[partner_key] = model.inv(r)
    rename = {m: assigned[find(m)] for m in model.edges}

    from .model import Edge  # local import to avoid a cycle at module load

    edges = []
    for members in sorted(classes.values()):
        r = rename[members[0]]
        first = model.edge(members[0])
        for m in members[1:]:
            e = model.edge(m)
            if (e.src, e.tgt) != (first.src, first.tgt):
                raise WordError(f"refused to merge non-parallel edges {members}")
        edges.append(Edge(r, first.src, first.tgt,
                          inv=rename[model.inv(members[0])],
                          is_identity=any(model.edge(m).is_identity
                                          for m in members)))
    triangles = set()
    for f, g, h in model.triangles:
        triangles.add((rename[f], rename[g], rename[h]))
    shell = TruncatedModel(SYMMETRIC, model.objects, edges, ())
    closed = shell._close_triangles(triangles)
    merged = TruncatedModel(SYMMETRIC, model.objects, edges, closed)
    report = merged.validate()
    if not report.ok:
        raise WordError(f"merge left an invalid model: {report.summary()}")
    return merged, rename


# -- the single-axiom pregroup probe --------------------------------------------


@dataclass
class PregroupReport:
    ok: bool
    counterexample: tuple[str, str, str] | None = None
    left: str | None = None   # (ab)c when defined
    right: str | None = None  # a(bc) when defined


def pregroup_axiom_check(model: TruncatedModel) -> PregroupReport:
    """Scan triples with ab and bc defined for an associativity fault.

    Reports the first triple (a, b, c), in lexicographic order over
    nonidentity edges, where exactly one of (ab)c, a(bc) is defined or
    both are defined and differ.  Triples with an identity entry can
    never violate the axiom and are skipped.
    """
    for a in model.nonidentity_edges():
        prods_a = model.products_from(a)
        for b in sorted(prods_a):
            if model.is_identity(b):
                continue
            ab = prods_a[b]
            prods_b = model.products_from(b)
            for c in sorted(prods_b):
                if model.is_identity(c):
                    continue
                bc = prods_b[c]
                left = model.products_from(ab).get(c)
                right = prods_a.get(bc)
                if left != right:
                    return PregroupReport(False, (a, b, c), left, right)
    return PregroupReport(True)
