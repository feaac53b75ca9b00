"""Finite-presentation simplicial sets and maps.

A simplicial set is presented by its nondegenerate generators up to a
dimension bound together with a face table; arbitrary simplices are
references ``(generator, word)`` where the word is a strictly decreasing
tuple of degeneracy indices (the Eilenberg-Zilber normal form).  A word is
literally the set of collapsed gaps of the corresponding monotone
surjection, which makes degeneracy bookkeeping set arithmetic.

Everything is immutable after construction and all operations are pure;
memo caches key on structural fingerprints.
"""

from __future__ import annotations

from collections import namedtuple
from functools import lru_cache
from itertools import combinations

from .fincat import FinCategory

SimplexRef = namedtuple("SimplexRef", ["gen", "word"])


def _insert_degeneracy(word, a):
    """Normal form of ``s_a`` composed onto a decreasing word."""
    out = []
    i = 0
    word = list(word)
    # s_a s_j = s_{j+1} s_a for a <= j: bubble a past larger-or-equal indices
    while i < len(word) and a <= word[i]:
        out.append(word[i] + 1)
        i += 1
    out.append(a)
    out.extend(word[i:])
    return tuple(out)


class SSet:
    """A simplicial set presented by generators and a face table."""

    def __init__(self, d_max, generators, faces, name=""):
        self.d_max = d_max
        self.generators = {n: tuple(gs) for n, gs in dict(generators).items()}
        for n in range(d_max + 1):
            self.generators.setdefault(n, ())
        self.faces = dict(faces)
        self.dim_of = {g: n for n, gs in self.generators.items() for g in gs}
        self.name = name
        self._key = None

    @property
    def key(self):
        if self._key is None:
            gens = tuple((n, self.generators[n]) for n in sorted(self.generators))
            faces = tuple(sorted(self.faces.items(), key=repr))
            self._key = (self.d_max, gens, faces)
        return self._key

    def gen_dim(self, g):
        return self.dim_of[g]

    def ref(self, g):
        return SimplexRef(g, ())

    def ref_dim(self, ref):
        return self.dim_of[ref.gen] + len(ref.word)

    def face(self, ref, i):
        """The i-th face of a simplex reference."""
        gen, word = ref
        prefix = []
        for pos, j in enumerate(word):
            if i < j:
                prefix.append(j - 1)
            elif i in (j, j + 1):
                return SimplexRef(gen, tuple(prefix) + word[pos + 1 :])
            else:
                prefix.append(j)
                i -= 1
        target = self.faces[(gen, i)]
        word2 = target.word
        for a in reversed(prefix):
            word2 = _insert_degeneracy(word2, a)
        return SimplexRef(target.gen, word2)

    def degeneracy(self, ref, i):
        return SimplexRef(ref.gen, _insert_degeneracy(ref.word, i))

    def simplices(self, n):
        """All n-simplices: generators of dimension <= n with filling words."""
        out = []
        for m in range(min(n, self.d_max), -1, -1):
            for g in self.generators[m]:
                for gaps in combinations(range(n - 1, -1, -1), n - m):
                    out.append(SimplexRef(g, gaps))
        return out

    def vertices_of(self, ref):
        """The tuple of vertex generators of a simplex, in order."""
        n = self.ref_dim(ref)
        out = []
        for i in range(n + 1):
            cur = ref
            for _ in range(n - i):
                cur = self.face(cur, self.ref_dim(cur))
            for _ in range(i):
                cur = self.face(cur, 0)
            out.append(cur.gen)
        return tuple(out)

    def __eq__(self, other):
        return isinstance(other, SSet) and self.key == other.key

    def __hash__(self):
        return hash(self.key)

    def __repr__(self):
        counts = [len(self.generators[n]) for n in range(self.d_max + 1)]
        return f"SSet({self.name or 'anon'}: {counts})"


def validate_sset(x: SSet):
    """Check the face table: well-formed references and simplicial identities."""
    bad = []
    for (g, i), ref in x.faces.items():
        n = x.gen_dim(g)
        if not 0 <= i <= n:
            bad.append(("face-index", g, i))
            continue
        if ref.gen not in x.dim_of:
            bad.append(("dangling-face", g, i))
            continue
        if x.ref_dim(ref) != n - 1:
            bad.append(("face-dimension", g, i))
        if any(a <= b for a, b in zip(ref.word, ref.word[1:])):
            bad.append(("word-not-decreasing", g, i))
    for n, gs in x.generators.items():
        for g in gs:
            if n > 0 and any((g, i) not in x.faces for i in range(n + 1)):
                bad.append(("missing-face", g))
    if bad:
        return bad
    for n, gs in x.generators.items():
        if n < 2:
            continue
        for g in gs:
            ref = x.ref(g)
            for j in range(n + 1):
                for i in range(j):
                    if x.face(x.face(ref, j), i) != x.face(x.face(ref, i), j - 1):
                        bad.append(("simplicial-identity", g, i, j))
    return bad


def is_degenerate_at(x: SSet, ref, j):
    return x.degeneracy(x.face(ref, j), j) == ref


def normalize_ref(x: SSet, ref):
    """Peel all degeneracies: returns ``(word, nondegenerate ref)``."""
    word = []
    cur = ref
    while cur.word:
        word.append(cur.word[0])
        cur = x.face(cur, cur.word[0])
    return tuple(word), cur


class SMap:
    """A simplicial map, as an assignment of references to generators."""

    def __init__(self, dom: SSet, cod: SSet, mapping, name=""):
        self.dom = dom
        self.cod = cod
        self.mapping = dict(mapping)
        self.name = name
        self._key = None

    @property
    def key(self):
        if self._key is None:
            self._key = (self.dom.key, self.cod.key, tuple(sorted(self.mapping.items(), key=repr)))
        return self._key

    def apply(self, ref):
        target = self.mapping[ref.gen]
        word = target.word
        for a in reversed(ref.word):
            word = _insert_degeneracy(word, a)
        return SimplexRef(target.gen, word)

    def __eq__(self, other):
        return isinstance(other, SMap) and self.key == other.key

    def __hash__(self):
        return hash(self.key)


def identity_smap(x: SSet) -> SMap:
    return SMap(x, x, {g: x.ref(g) for g in x.dim_of}, name="id")


def compose_smaps(g: SMap, f: SMap) -> SMap:
    if f.cod.key != g.dom.key:
        raise ValueError("maps not composable")
    return SMap(f.dom, g.cod, {gen: g.apply(ref) for gen, ref in f.mapping.items()})


def validate_smap(f: SMap):
    bad = []
    for g, ref in f.mapping.items():
        n = f.dom.gen_dim(g)
        if f.cod.ref_dim(ref) != n:
            bad.append(("dimension", g))
            continue
        for i in (range(n + 1) if n > 0 else ()):
            if f.apply(f.dom.face(f.dom.ref(g), i)) != f.cod.face(ref, i):
                bad.append(("face-compat", g, i))
    missing = set(f.dom.dim_of) - set(f.mapping)
    bad.extend(("missing", g) for g in sorted(missing, key=repr))
    return bad


# ---------------------------------------------------------------------------
# nerves


def _strip_identities(c: FinCategory, arrows):
    """Express a composable string with identities as a degenerate reference
    to its identity-free core."""
    arrows = list(arrows)
    word = []
    for pos in range(len(arrows) - 1, -1, -1):
        if c.is_identity(arrows[pos]):
            word.append(pos)
            del arrows[pos]
    word.sort(reverse=True)
    return tuple(word), tuple(arrows)


def nerve(c: FinCategory, d_max=4, cap=100_000) -> SSet:
    """The nerve: n-generators are strings of n composable non-identity morphisms.

    Vertex generators are ``("v", object)``; higher generators ``("c", arrows)``.
    """
    gens = {0: tuple(("v", o) for o in c.objects)}
    faces = {}
    prev = [(o, ()) for o in c.objects]  # (current target, arrows)
    total = len(prev)
    for n in range(1, d_max + 1):
        nxt = []
        for tgt, arrows in prev:
            for m in c.nonidentity_morphisms():
                if c.src(m) == tgt:
                    nxt.append((c.tgt(m), arrows + (m,)))
        total += len(nxt)
        if total > cap:
            raise RuntimeError(f"nerve exceeds size cap {cap}")
        gens[n] = tuple(("c", arrows) for _, arrows in nxt)
        prev = nxt
    for n in range(1, d_max + 1):
        for g in gens[n]:
            arrows = g[1]
            for i in range(n + 1):
                if i == 0:
                    rest = arrows[1:]
                elif i == n:
                    rest = arrows[:-1]
                else:
                    rest = arrows[: i - 1] + (c.compose(arrows[i], arrows[i - 1]),) + arrows[i + 1 :]
                word, core = _strip_identities(c, rest)
                if core:
                    ref = SimplexRef(("c", core), word)
                else:
                    obj = c.src(arrows[0]) if i > 0 else c.tgt(arrows[0])
                    if rest:
                        obj = c.src(rest[0])
                    ref = SimplexRef(("v", obj), word)
                faces[(g, i)] = ref
    return SSet(d_max, gens, faces, name=f"N({c.name})")


def nerve_ref_from_row(c: FinCategory, x: SSet, row):
    """The simplex of the nerve given by a string of arrows (identities allowed).

    ``row`` is ``(first_object, arrows)``; returns a SimplexRef of ``x``.
    """
    obj, arrows = row
    word, core = _strip_identities(c, arrows)
    if core:
        return SimplexRef(("c", core), word)
    return SimplexRef(("v", obj), word)


def row_from_nerve_ref(c: FinCategory, x: SSet, ref):
    """Inverse of :func:`nerve_ref_from_row`."""
    n = x.ref_dim(ref)
    objs = [v[1] for v in x.vertices_of(ref)]
    arrows = []
    for i in range(n):
        edge = ref
        for _ in range(n - i - 1):
            edge = x.face(edge, x.ref_dim(edge))
        for _ in range(i):
            edge = x.face(edge, 0)
        if edge.word:
            arrows.append(c.identity(objs[i]))
        else:
            arrows.append(edge.gen[1][0])
    return objs[0], tuple(arrows)


# ---------------------------------------------------------------------------
# standard simplices, boundaries, horns


@lru_cache(maxsize=None)
def standard_simplex(n) -> SSet:
    """The n-simplex: generators are the strictly increasing vertex tuples."""
    gens = {m: tuple(combinations(range(n + 1), m + 1)) for m in range(n + 1)}
    faces = {}
    for m in range(1, n + 1):
        for g in gens[m]:
            for i in range(m + 1):
                faces[(g, i)] = SimplexRef(g[:i] + g[i + 1 :], ())
    return SSet(n, gens, faces, name=f"D{n}")


def _subcomplex(x: SSet, keep, name):
    gens = {n: tuple(g for g in gs if g in keep) for n, gs in x.generators.items()}
    faces = {(g, i): r for (g, i), r in x.faces.items() if g in keep}
    sub = SSet(x.d_max, gens, faces, name=name)
    incl = SMap(sub, x, {g: x.ref(g) for g in keep}, name=f"{name}-incl")
    return sub, incl


def boundary(n):
    """The boundary of the n-simplex with its inclusion."""
    if n < 1:
        raise ValueError("boundary needs n >= 1")
    full = standard_simplex(n)
    keep = {g for g in full.dim_of if len(g) <= n}
    return _subcomplex(full, keep, f"dD{n}")


def inner_horn(n, k):
    """The inner horn missing the k-th face, with its inclusion."""
    if not 0 < k < n:
        raise ValueError("inner horn needs 0 < k < n")
    full = standard_simplex(n)
    top = tuple(range(n + 1))
    missing = top[:k] + top[k + 1 :]
    keep = {g for g in full.dim_of if g not in (top, missing)}
    return _subcomplex(full, keep, f"L{n}_{k}")


def simplex_vertex_map(n, i) -> SMap:
    """The vertex ``i`` as a map from the 0-simplex into the n-simplex."""
    return SMap(standard_simplex(0), standard_simplex(n), {(0,): SimplexRef((i,), ())})


def coface_map(n, i) -> SMap:
    """The inclusion of the (n-1)-simplex as the i-th face of the n-simplex."""
    src = standard_simplex(n - 1)
    table = tuple(v if v < i else v + 1 for v in range(n))
    return SMap(src, standard_simplex(n), {g: SimplexRef(tuple(table[v] for v in g), ()) for g in src.dim_of})


def codegeneracy_map(n, i) -> SMap:
    """The collapse of the (n+1)-simplex onto the n-simplex repeating vertex i."""
    src = standard_simplex(n + 1)
    table = tuple(v if v <= i else v - 1 for v in range(n + 2))
    mapping = {}
    for g in src.dim_of:
        img = tuple(table[v] for v in g)
        gaps = tuple(j for j in range(len(img) - 1) if img[j] == img[j + 1])
        core = tuple(dict.fromkeys(img))
        mapping[g] = SimplexRef(core, tuple(sorted(gaps, reverse=True)))
    return SMap(src, standard_simplex(n), mapping)


# ---------------------------------------------------------------------------
# products, pullbacks, equalizers


def _pair_normalize(x: SSet, y: SSet, rx, ry):
    """Eilenberg-Zilber form of a pair: ``(word, (core_x, core_y))`` with the common
    degeneracies peeled off."""
    word = []
    common = set(rx.word) & set(ry.word)
    while common:
        u = max(common)
        rx = x.face(rx, u)
        ry = y.face(ry, u)
        word.append(u)
        common = set(rx.word) & set(ry.word)
    return tuple(word), (rx, ry)


def sset_product(x: SSet, y: SSet, d_max=None):
    """The product, with projection maps.

    Generators in dimension m are the shuffles: pairs of references with
    disjoint degeneracy words filling dimension m.
    """
    if d_max is None:
        d_max = min(x.d_max, y.d_max)
    d_max = min(d_max, x.d_max + y.d_max)
    gens = {}
    for m in range(d_max + 1):
        out = []
        for rx in x.simplices(m):
            for ry in y.simplices(m):
                if not set(rx.word) & set(ry.word):
                    out.append((rx, ry))
        gens[m] = tuple(out)
    faces = {}
    for m in range(1, d_max + 1):
        for g in gens[m]:
            rx, ry = g
            for i in range(m + 1):
                word, core = _pair_normalize(x, y, x.face(rx, i), y.face(ry, i))
                faces[(g, i)] = SimplexRef(core, word)
    prod = SSet(d_max, gens, faces, name=f"{x.name}*{y.name}")
    p1 = SMap(prod, x, {g: g[0] for g in prod.dim_of}, name="pr1")
    p2 = SMap(prod, y, {g: g[1] for g in prod.dim_of}, name="pr2")
    return prod, p1, p2


def smap_product(f: SMap, g: SMap, dom_prod=None, cod_prod=None) -> SMap:
    """The product of two maps between given product presentations."""
    if dom_prod is None:
        dom_prod = sset_product(f.dom, g.dom)[0]
    if cod_prod is None:
        cod_prod = sset_product(f.cod, g.cod)[0]
    mapping = {}
    for gen in dom_prod.dim_of:
        rx, ry = gen
        word, core = _pair_normalize(f.cod, g.cod, f.apply(rx), g.apply(ry))
        mapping[gen] = SimplexRef(core, word)
    return SMap(dom_prod, cod_prod, mapping)


def sset_pullback(f: SMap, g: SMap, d_max=None):
    """The pullback of ``f: X -> A`` against ``g: Y -> A`` with projections."""
    if f.cod.key != g.cod.key:
        raise ValueError("pullback needs a common codomain")
    x, y = f.dom, g.dom
    if d_max is None:
        d_max = min(x.d_max, y.d_max)
    gens = {}
    for m in range(d_max + 1):
        out = []
        for rx in x.simplices(m):
            fx = f.apply(rx)
            for ry in y.simplices(m):
                if set(rx.word) & set(ry.word):
                    continue
                if fx == g.apply(ry):
                    out.append((rx, ry))
        gens[m] = tuple(out)
    faces = {}
    for m in range(1, d_max + 1):
        for gen in gens[m]:
            rx, ry = gen
            for i in range(m + 1):
                word, core = _pair_normalize(x, y, x.face(rx, i), y.face(ry, i))
                faces[(gen, i)] = SimplexRef(core, word)
    pb = SSet(d_max, gens, faces, name=f"pb({f.name},{g.name})")
    p1 = SMap(pb, x, {g_: g_[0] for g_ in pb.dim_of}, name="pr1")
    p2 = SMap(pb, y, {g_: g_[1] for g_ in pb.dim_of}, name="pr2")
    return pb, p1, p2


def sset_equalizer(f: SMap, g: SMap):
    """The equalizer of a parallel pair, as a subcomplex with inclusion."""
    if f.dom.key != g.dom.key or f.cod.key != g.cod.key:
        raise ValueError("equalizer needs a parallel pair")
    keep = {gen for gen in f.dom.dim_of if f.apply(f.dom.ref(gen)) == g.apply(g.dom.ref(gen))}
    return _subcomplex(f.dom, keep, f"eq({f.name},{g.name})")


def empty_sset(d_max=4) -> SSet:
    return SSet(d_max, {}, {}, name="empty")


def opposite_sset(x: SSet) -> SSet:
    """Reverse simplex orientation: the i-th face becomes the (n-i)-th."""
    faces = {}
    for (g, i), ref in x.faces.items():
        n = x.gen_dim(g)
        m = x.ref_dim(ref)
        word = tuple(sorted((m - 1 - u for u in ref.word), reverse=True))
        faces[(g, n - i)] = SimplexRef(ref.gen, word)
    return SSet(x.d_max, x.generators, faces, name=f"{x.name}^op")


def opposite_smap(f: SMap, dom_op=None, cod_op=None) -> SMap:
    dom_op = dom_op or opposite_sset(f.dom)
    cod_op = cod_op or opposite_sset(f.cod)
    mapping = {}
    for g, ref in f.mapping.items():
        n = f.cod.ref_dim(ref)
        word = tuple(sorted((n - 1 - u for u in ref.word), reverse=True))
        mapping[g] = SimplexRef(ref.gen, word)
    return SMap(dom_op, cod_op, mapping)


# ---------------------------------------------------------------------------
# mapping spaces


_smap_cache = {}


def enumerate_smaps(x: SSet, a: SSet, d_bound=None):
    """All simplicial maps ``x -> a`` defined on generators up to the bound,
    by backtracking in order of dimension."""
    d_bound = min(x.d_max, a.d_max) if d_bound is None else d_bound
    cache_key = (x.key, a.key, d_bound)
    if cache_key in _smap_cache:
        return _smap_cache[cache_key]
    gens = [g for n in range(d_bound + 1) for g in x.generators.get(n, ())]
    out = []
    assignment = {}

    def extend(idx):
        if idx == len(gens):
            out.append(SMap(x, a, dict(assignment)))
            return
        g = gens[idx]
        n = x.gen_dim(g)
        required = None
        candidates = None
        if n > 0:
            required = []
            for i in range(n + 1):
                fr = x.face(x.ref(g), i)
                target = assignment[fr.gen]
                word = target.word
                for w in reversed(fr.word):
                    word = _insert_degeneracy(word, w)
                required.append(SimplexRef(target.gen, word))
            candidates = [
                ref
                for ref in a.simplices(n)
                if all(a.face(ref, i) == required[i] for i in range(n + 1))
            ]
        else:
            candidates = a.simplices(0)
        for ref in candidates:
            assignment[g] = ref
            extend(idx + 1)
            del assignment[g]

    extend(0)
    _smap_cache[cache_key] = out
    return out


_mapping_space_cache = {}
_product_cache = {}


def cached_product(x: SSet, y: SSet, d_max=None):
    key = (x.key, y.key, d_max)
    if key not in _product_cache:
        _product_cache[key] = sset_product(x, y, d_max)
    return _product_cache[key]


def mapping_space(x: SSet, a: SSet, d_max=None):
    """The cotensor ``a^x``: n-simplices are maps from the n-simplex times x.

    Returns ``(sset, simplex_of_map, map_of_gen)`` where the two dicts
    mediate between mapping-space generators and honest simplicial maps.
    Exact for nerve-like ``a``, whose simplices are determined in bounded
    dimensions.
    """
    if d_max is None:
        d_max = a.d_max
    key = (x.key, a.key, d_max)
    if key in _mapping_space_cache:
        return _mapping_space_cache[key]
    level_maps = {}
    for n in range(d_max + 1):
        prod = cached_product(standard_simplex(n), x, d_max)[0]
        level_maps[n] = enumerate_smaps(prod, a)
    gens = {}
    map_key_to_ref = {}
    map_of_gen = {}

    def map_key(f):
        return tuple(sorted(f.mapping.items(), key=repr))

    # a map is degenerate at j precisely when s_j(d_j(f)) == f
    for n in range(d_max + 1):
        gs = []
        for f in level_maps[n]:
            degenerate = False
            for j in range(n):
                faceted = _precompose_simplex_op(f, coface_map(n, j), x, n - 1, d_max)
                lifted = _precompose_simplex_op(faceted, codegeneracy_map(n - 1, j), x, n, d_max)
                if map_key(lifted) == map_key(f):
                    degenerate = True
                    break
            if not degenerate:
                gs.append(("m", n, map_key(f)))
                map_of_gen[("m", n, map_key(f))] = f
        gens[n] = tuple(gs)
    faces = {}
    for n in range(1, d_max + 1):
        for g in gens[n]:
            f = map_of_gen[g]
            for i in range(n + 1):
                fi = _precompose_simplex_op(f, coface_map(n, i), x, n - 1, d_max)
                faces[(g, i)] = _identify_map(fi, gens, map_of_gen, x, n - 1, map_key, d_max)
    space = SSet(d_max, gens, faces, name=f"{a.name}^{x.name}")
    result = (space, map_of_gen)
    _mapping_space_cache[key] = result
    return result


def _precompose_simplex_op(f: SMap, op: SMap, x: SSet, target_n: int, bound) -> SMap:
    """Precompose a map out of ``D^n x X`` with ``op x id_X``."""
    dom_prod = cached_product(standard_simplex(target_n), x, bound)[0]
    cod_prod = f.dom
    induced = smap_product(op, identity_smap(x), dom_prod, cod_prod)
    return compose_smaps(f, induced)


def _identify_map(f: SMap, gens, map_of_gen, x, n, map_key, bound):
    """Express a map ``D^n x X -> a`` as a reference to a mapping-space generator."""
    word = []
    cur, cur_n = f, n
    changed = True
    while changed:
        changed = False
        for j in range(cur_n - 1, -1, -1):
            faceted = _precompose_simplex_op(cur, coface_map(cur_n, j), x, cur_n - 1, bound)
            lifted = _precompose_simplex_op(faceted, codegeneracy_map(cur_n - 1, j), x, cur_n, bound)
            if map_key(lifted) == map_key(cur):
                word.append(j)
                cur, cur_n = faceted, cur_n - 1
                changed = True
                break
    gen = ("m", cur_n, map_key(cur))
    assert gen in map_of_gen, "map does not identify against the enumerated space"
    w = ()
    for a_ in reversed(word):
        w = _insert_degeneracy(w, a_)
    return SimplexRef(gen, w)


def mapping_space_vertex(space_data, f: SMap):
    """The vertex of a mapping space corresponding to a map ``D^0 x X -> a``."""
    space, map_of_gen = space_data
    key = tuple(sorted(f.mapping.items(), key=repr))
    gen = ("m", 0, key)
    if gen not in space.dim_of:
        raise KeyError("map is not a vertex of this mapping space")
    return gen


def restriction_map(incl: SMap, a: SSet, d_max=None) -> SMap:
    """Precomposition ``a^Y -> a^X`` along an inclusion ``X -> Y``."""
    if d_max is None:
        d_max = a.d_max
    src_data = mapping_space(incl.cod, a, d_max)
    tgt_data = mapping_space(incl.dom, a, d_max)
    src, src_maps = src_data
    tgt, tgt_maps = tgt_data

    def map_key(f):
        return tuple(sorted(f.mapping.items(), key=repr))

    mapping = {}
    for g in src.dim_of:
        n = src.gen_dim(g)
        f = src_maps[g]
        prod_dom = cached_product(standard_simplex(n), incl.dom, d_max)[0]
        induced = smap_product(identity_smap(standard_simplex(n)), incl, prod_dom, f.dom)
        restricted = compose_smaps(f, induced)
        mapping[g] = _identify_map(restricted, tgt.generators, tgt_maps, incl.dom, n, map_key, d_max)
    return SMap(src, tgt, mapping, name="restrict")


def constant_diagram_map(a: SSet, x: SSet, d_max=None) -> SMap:
    """The map ``a -> a^x`` sending a simplex to the diagram constant at it."""
    if d_max is None:
        d_max = a.d_max
    space, map_of_gen = mapping_space(x, a, d_max)

    def map_key(f):
        return tuple(sorted(f.mapping.items(), key=repr))

    mapping = {}
    for g in a.dim_of:
        n = a.gen_dim(g)
        prod, p1, _ = cached_product(standard_simplex(n), x, d_max)
        simplex_map = _simplex_as_map(a, SimplexRef(g, ()), n)
        m = {gen: simplex_map.apply(p1.apply(prod.ref(gen))) for gen in prod.dim_of}
        proj_then_g = SMap(prod, a, m)
        mapping[g] = _identify_map(proj_then_g, space.generators, map_of_gen, x, n, map_key, d_max)
    return SMap(a, space, mapping, name="const")


def _simplex_as_map(a: SSet, ref, n) -> SMap:
    """An n-simplex of ``a`` as a map from the standard n-simplex."""
    source = standard_simplex(n)
    mapping = {}
    for g in source.dim_of:
        cur = ref
        m = len(g) - 1
        # iterated faces picking out the sub-simplex on the vertex subset g
        remaining = list(range(n + 1))
        while len(remaining) > len(g):
            for idx, v in enumerate(remaining):
                if v not in g:
                    cur_ = cur
                    cur = a.face(cur_, idx)
                    remaining.pop(idx)
                    break
        mapping[g] = cur
    return SMap(source, a, mapping)


# ---------------------------------------------------------------------------
# horn filling, isofibrations


def sphere_tuples(x: SSet, n):
    """All spheres: compatible families ``(x_0, ..., x_n)`` of (n-1)-simplices."""
    lower = x.simplices(n - 1)
    out = []

    def extend(chosen):
        j = len(chosen)
        if j == n + 1:
            out.append(tuple(chosen))
            return
        for cand in lower:
            ok = True
            for i in range(j):
                if x.face(chosen[i], j - 1) != x.face(cand, i):
                    ok = False
                    break
            if ok:
                chosen.append(cand)
                extend(chosen)
                chosen.pop()

    extend([])
    return out


def horn_tuples(x: SSet, n, k):
    """All inner-horn families: as spheres but with slot k left as None."""
    lower = x.simplices(n - 1)
    out = []

    def extend(chosen):
        slot = len(chosen)
        if slot == n + 1:
            out.append(tuple(chosen))
            return
        if slot == k:
            chosen.append(None)
            extend(chosen)
            chosen.pop()
            return
        for cand in lower:
            ok = True
            for i in range(slot):
                if chosen[i] is None:
                    continue
                if x.face(chosen[i], slot - 1) != x.face(cand, i):
                    ok = False
                    break
            if ok:
                chosen.append(cand)
                extend(chosen)
                chosen.pop()

    extend([])
    return out


def fillers(x: SSet, faces_tuple, skip=None):
    """All n-simplices whose faces match the tuple (ignoring index ``skip``)."""
    n = len(faces_tuple) - 1
    out = []
    for ref in x.simplices(n):
        if all(
            i == skip or x.face(ref, i) == faces_tuple[i] for i in range(n + 1)
        ):
            out.append(ref)
    return out


def is_quasi_category(a: SSet, d_check=3) -> bool:
    """Inner horns up to the bound admit fillers."""
    for n in range(2, d_check + 1):
        for k in range(1, n):
            for horn in horn_tuples(a, n, k):
                if not fillers(a, horn, skip=k):
                    return False
    return True


def homotopy_classes(a: SSet):
    """Edges modulo the 2-simplex homotopy relation, with composition.

    Exact for nerve-like inputs; in general this is the 2-truncated
    homotopy category.
    """
    edges = a.simplices(1)
    parent = {e: e for e in edges}

    def find(e):
        while parent[e] != e:
            parent[e] = parent[parent[e]]
            e = parent[e]
        return e

    def union(e, f):
        parent[find(e)] = find(f)

    for tri in a.simplices(2):
        d0, d1, d2 = (a.face(tri, i) for i in range(3))
        if d0.word:  # degenerate third edge: d2 ~ d1 as maps from the same source
            union(d2, d1)
        if d2.word:
            union(d0, d1)
    comp = {}
    for tri in a.simplices(2):
        d0, d1, d2 = (a.face(tri, i) for i in range(3))
        comp[(find(d0), find(d2))] = find(d1)
    return find, comp


def invertible_edges(a: SSet):
    """Edges invertible in the 2-truncated homotopy category."""
    find, comp = homotopy_classes(a)
    idents = {}
    for v in (g for g in a.generators[0]):
        idents[v] = find(SimplexRef(v, (0,)))
    out = set()
    for e in a.simplices(1):
        src, tgt = a.vertices_of(e)
        ce = find(e)
        for f in a.simplices(1):
            fsrc, ftgt = a.vertices_of(f)
            if fsrc != tgt or ftgt != src:
                continue
            cf = find(f)
            if comp.get((cf, ce)) == idents[src] and comp.get((ce, cf)) == idents[tgt]:
                out.add(e)
                break
    return out


def is_isofibration(p: SMap, d_check=3) -> bool:
    """Inner-horn lifting plus lifting of invertible edges at their target."""
    e, b = p.dom, p.cod
    for n in range(2, d_check + 1):
        for k in range(1, n):
            for horn in horn_tuples(e, n, k):
                image = tuple(p.apply(r) if r is not None else None for r in horn)
                for base_filler in fillers(b, image, skip=k):
                    if not any(
                        p.apply(top) == base_filler for top in fillers(e, horn, skip=k)
                    ):
                        return False
    inv_b = invertible_edges(b)
    inv_e = invertible_edges(e)
    for v in e.generators[0]:
        pv = p.apply(e.ref(v))
        for beta in inv_b:
            if b.face(beta, 0) != pv:  # target of the edge
                continue
            lifted = False
            for edge in inv_e:
                if e.face(edge, 0) == e.ref(v) and p.apply(edge) == beta:
                    lifted = True
                    break
            if lifted:
                continue
            return False
    return True


def iso_search(x: SSet, y: SSet):
    """Backtracking search for an isomorphism of presentations."""
    if sorted(x.generators) != sorted(y.generators):
        return None
    for n in x.generators:
        if len(x.generators[n]) != len(y.generators.get(n, ())):
            return None
    dims = sorted(x.generators)
    assignment = {}

    def extend(dim_idx, gen_idx):
        if dim_idx == len(dims):
            return dict(assignment)
        n = dims[dim_idx]
        gx = x.generators[n]
        if gen_idx == len(gx):
            return extend(dim_idx + 1, 0)
        g = gx[gen_idx]
        used = set(assignment.values())
        for cand in y.generators[n]:
            if cand in used:
                continue
            if n > 0:
                ok = True
                for i in range(n + 1):
                    fx = x.face(x.ref(g), i)
                    fy = y.face(y.ref(cand), i)
                    if fx.word != fy.word or assignment.get(fx.gen) != fy.gen:
                        ok = False
                        break
                if not ok:
                    continue
            assignment[g] = cand
            result = extend(dim_idx, gen_idx + 1)
            if result is not None:
                return result
            del assignment[g]
        return None

    return extend(0, 0)
