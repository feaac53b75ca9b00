"""Finite categories, functors and natural transformations.

Everything here is a finite table: objects and morphism ids are opaque
strings, composition is a dense dict keyed by pairs of morphism ids, and
every axiom is checkable by an exhaustive loop.  All values are immutable
after construction; operations are pure functions.
"""

from __future__ import annotations

from collections import namedtuple
from itertools import product as iproduct

DEFAULT_MORPHISM_CAP = 10_000


class SizeCapError(RuntimeError):
    """Raised when a construction would exceed the configured size cap."""


class FinCategory:
    """A finite category given by explicit object/morphism/composition tables.

    ``morphisms`` maps a morphism id to ``(src, tgt)``; ``identities`` maps
    an object to its identity morphism id; ``composition`` maps ``(g, f)``
    to the id of ``g after f`` for every composable pair.
    """

    def __init__(self, objects, morphisms, identities, composition, name=""):
        self.objects = tuple(objects)
        self.morphisms = {str(m): (str(s), str(t)) for m, (s, t) in dict(morphisms).items()}
        self.identities = {str(o): str(m) for o, m in dict(identities).items()}
        self.composition = {(str(g), str(f)): str(h) for (g, f), h in dict(composition).items()}
        self.name = name
        self._key = (
            tuple(sorted(self.objects)),
            tuple(sorted(self.morphisms.items())),
            tuple(sorted(self.identities.items())),
            tuple(sorted(self.composition.items())),
        )

    def src(self, m):
        return self.morphisms[m][0]

    def tgt(self, m):
        return self.morphisms[m][1]

    def identity(self, obj):
        return self.identities[obj]

    def is_identity(self, m):
        return self.identities.get(self.morphisms[m][0]) == m

    def compose(self, g, f):
        """The composite ``g after f``."""
        return self.composition[(g, f)]

    def hom(self, a, b):
        return tuple(m for m, (s, t) in sorted(self.morphisms.items()) if s == a and t == b)

    def composable_pairs(self):
        """All pairs ``(g, f)`` with ``tgt(f) == src(g)``."""
        by_src = {}
        for m, (s, _) in self.morphisms.items():
            by_src.setdefault(s, []).append(m)
        for f, (_, t) in sorted(self.morphisms.items()):
            for g in sorted(by_src.get(t, ())):
                yield g, f

    def nonidentity_morphisms(self):
        return tuple(m for m in sorted(self.morphisms) if not self.is_identity(m))

    def __eq__(self, other):
        return isinstance(other, FinCategory) and self._key == other._key

    def __hash__(self):
        return hash(self._key)

    def __repr__(self):
        return f"FinCategory({self.name or len(self.objects)}: {len(self.objects)} objects, {len(self.morphisms)} morphisms)"


ValidationReport = namedtuple("ValidationReport", ["ok", "violations"])


def validate_category(c: FinCategory) -> ValidationReport:
    """Exhaustively check the category axioms, listing every violation."""
    bad = []
    for o in c.objects:
        i = c.identities.get(o)
        if i is None or i not in c.morphisms:
            bad.append(("missing-identity", o))
        elif c.morphisms[i] != (o, o):
            bad.append(("identity-endpoints", o, i))
    for m, (s, t) in sorted(c.morphisms.items()):
        if s not in c.objects or t not in c.objects:
            bad.append(("dangling-endpoints", m))
    for g, f in c.composable_pairs():
        h = c.composition.get((g, f))
        if h is None:
            bad.append(("missing-composite", g, f))
            continue
        if h not in c.morphisms:
            bad.append(("composite-not-a-morphism", g, f, h))
            continue
        if c.morphisms[h] != (c.src(f), c.tgt(g)):
            bad.append(("composite-endpoints", g, f, h))
    for (g, f), h in sorted(c.composition.items()):
        if g not in c.morphisms or f not in c.morphisms or c.tgt(f) != c.src(g):
            bad.append(("spurious-composite", g, f, h))
    # unit laws
    for m, (s, t) in sorted(c.morphisms.items()):
        if c.composition.get((m, c.identities.get(s))) != m:
            bad.append(("right-unit", m))
        if c.composition.get((c.identities.get(t), m)) != m:
            bad.append(("left-unit", m))
    # associativity over every composable triple
    for g, f in c.composable_pairs():
        if (g, f) not in c.composition:
            continue
        for h in sorted(c.morphisms):
            if c.src(h) != c.tgt(g):
                continue
            left = c.composition.get((h, c.composition[(g, f)]))
            hg = c.composition.get((h, g))
            right = c.composition.get((hg, f)) if hg is not None else None
            if left != right or left is None:
                bad.append(("associativity", h, g, f))
    return ValidationReport(not bad, tuple(bad))


def poset_category(elements, hasse, name="poset") -> FinCategory:
    """The category of a poset presented by a Hasse relation.

    ``hasse`` is an iterable of ``(a, b)`` pairs meaning ``a < b`` covers;
    the order is its reflexive-transitive closure.  Morphism ids have the
    form ``"a<=b"``.
    """
    elements = [str(e) for e in elements]
    le = {(e, e) for e in elements}
    edges = {(str(a), str(b)) for a, b in hasse}
    changed = True
    le |= edges
    while changed:
        changed = False
        for (a, b) in list(le):
            for (b2, c) in list(le):
                if b == b2 and (a, c) not in le:
                    le.add((a, c))
                    changed = True
    morphisms = {f"{a}<={b}": (a, b) for (a, b) in le}
    identities = {e: f"{e}<={e}" for e in elements}
    composition = {}
    for (a, b) in le:
        for (b2, c) in le:
            if b == b2:
                composition[(f"{b}<={c}", f"{a}<={b}")] = f"{a}<={c}"
    return FinCategory(elements, morphisms, identities, composition, name=name)


def poset_le(c: FinCategory, a, b) -> bool:
    """Order relation of a poset-shaped category (hom sets of size <= 1)."""
    return bool(c.hom(a, b))


def chain_poset(labels, name=None) -> FinCategory:
    labels = [str(x) for x in labels]
    return poset_category(labels, zip(labels, labels[1:]), name=name or f"chain{len(labels)}")


def diamond_poset(name="diamond") -> FinCategory:
    """The four element lattice bottom < x, y < top."""
    return poset_category(
        ["bot", "x", "y", "top"],
        [("bot", "x"), ("bot", "y"), ("x", "top"), ("y", "top")],
        name=name,
    )


def discrete_category(labels, name=None) -> FinCategory:
    labels = [str(x) for x in labels]
    return FinCategory(
        labels,
        {f"id_{o}": (o, o) for o in labels},
        {o: f"id_{o}" for o in labels},
        {(f"id_{o}", f"id_{o}"): f"id_{o}" for o in labels},
        name=name or f"discrete{len(labels)}",
    )


def terminal_category() -> FinCategory:
    return discrete_category(["*"], name="terminal")


class Functor:
    def __init__(self, dom: FinCategory, cod: FinCategory, object_map, morphism_map, name=""):
        self.dom = dom
        self.cod = cod
        self.object_map = {str(a): str(b) for a, b in dict(object_map).items()}
        self.morphism_map = {str(f): str(g) for f, g in dict(morphism_map).items()}
        self.name = name
        self._key = (
            tuple(sorted(self.object_map.items())),
            tuple(sorted(self.morphism_map.items())),
        )

    def on_obj(self, a):
        return self.object_map[a]

    def on_mor(self, f):
        return self.morphism_map[f]

    def __eq__(self, other):
        return (
            isinstance(other, Functor)
            and self.dom == other.dom
            and self.cod == other.cod
            and self._key == other._key
        )

    def __hash__(self):
        return hash(self._key)

    def __repr__(self):
        return f"Functor({self.name or self._key!r})"


def identity_functor(c: FinCategory) -> Functor:
    return Functor(c, c, {o: o for o in c.objects}, {m: m for m in c.morphisms}, name="id")


def compose_functors(g: Functor, f: Functor) -> Functor:
    """The composite ``g after f``."""
    if f.cod != g.dom:
        raise ValueError("functors not composable")
    return Functor(
        f.dom,
        g.cod,
        {a: g.on_obj(f.on_obj(a)) for a in f.dom.objects},
        {m: g.on_mor(f.on_mor(m)) for m in f.dom.morphisms},
    )


def validate_functor(f: Functor) -> ValidationReport:
    bad = []
    for a in f.dom.objects:
        if f.object_map.get(a) not in f.cod.objects:
            bad.append(("object-map", a))
    for m, (s, t) in sorted(f.dom.morphisms.items()):
        fm = f.morphism_map.get(m)
        if fm is None or fm not in f.cod.morphisms:
            bad.append(("morphism-map", m))
            continue
        if f.cod.morphisms[fm] != (f.object_map[s], f.object_map[t]):
            bad.append(("endpoints", m))
    for o in f.dom.objects:
        if f.morphism_map.get(f.dom.identity(o)) != f.cod.identity(f.object_map[o]):
            bad.append(("identity", o))
    for g, h in f.dom.composable_pairs():
        want = f.morphism_map[f.dom.compose(g, h)]
        got = f.cod.composition.get((f.morphism_map[g], f.morphism_map[h]))
        if want != got:
            bad.append(("composition", g, h))
    return ValidationReport(not bad, tuple(bad))


class NatTransf:
    """A natural transformation between parallel functors, as a component table."""

    def __init__(self, dom: Functor, cod: Functor, components, name=""):
        self.dom = dom
        self.cod = cod
        self.components = {str(a): str(m) for a, m in dict(components).items()}
        self.name = name
        self._key = tuple(sorted(self.components.items()))

    def at(self, obj):
        return self.components[obj]

    def __eq__(self, other):
        return (
            isinstance(other, NatTransf)
            and self.dom == other.dom
            and self.cod == other.cod
            and self._key == other._key
        )

    def __hash__(self):
        return hash(self._key)


def validate_nat_transf(n: NatTransf) -> ValidationReport:
    bad = []
    if n.dom.dom != n.cod.dom or n.dom.cod != n.cod.cod:
        return ValidationReport(False, (("not-parallel",),))
    base, target = n.dom.dom, n.dom.cod
    for a in base.objects:
        comp = n.components.get(a)
        if comp is None or comp not in target.morphisms:
            bad.append(("missing-component", a))
            continue
        if target.morphisms[comp] != (n.dom.on_obj(a), n.cod.on_obj(a)):
            bad.append(("component-endpoints", a))
    for m, (s, t) in sorted(base.morphisms.items()):
        if ("missing-component", s) in bad or ("missing-component", t) in bad:
            continue
        left = target.composition.get((n.components[t], n.dom.on_mor(m)))
        right = target.composition.get((n.cod.on_mor(m), n.components[s]))
        if left != right or left is None:
            bad.append(("naturality", m))
    return ValidationReport(not bad, tuple(bad))


def enumerate_functors(d: FinCategory, c: FinCategory, cap=DEFAULT_MORPHISM_CAP):
    """All functors ``d -> c``, by backtracking over non-identity morphisms."""
    out = []
    nonid = d.nonidentity_morphisms()
    n_obj_maps = len(c.objects) ** len(d.objects)
    if n_obj_maps > cap:
        raise SizeCapError(f"{n_obj_maps} object maps exceeds cap {cap}")
    for objs in iproduct(c.objects, repeat=len(d.objects)):
        omap = dict(zip(d.objects, objs))
        mmap = {d.identity(o): c.identity(omap[o]) for o in d.objects}

        def extend(i):
            if i == len(nonid):
                f = Functor(d, c, omap, dict(mmap))
                if not validate_functor(f).ok:
                    return
                out.append(f)
                return
            m = nonid[i]
            s, t = d.morphisms[m]
            for cand in c.hom(omap[s], omap[t]):
                mmap[m] = cand
                extend(i + 1)
                del mmap[m]

        extend(0)
    return out


def enumerate_nat_transfs(f: Functor, g: Functor):
    """All natural transformations ``f => g`` between parallel functors."""
    base, target = f.dom, f.cod
    choices = [target.hom(f.on_obj(a), g.on_obj(a)) for a in base.objects]
    out = []
    for combo in iproduct(*choices):
        n = NatTransf(f, g, dict(zip(base.objects, combo)))
        if validate_nat_transf(n).ok:
            out.append(n)
    return out


FunctorCategoryResult = namedtuple("FunctorCategoryResult", ["category", "functors", "transformations"])


def _functor_id(f: Functor) -> str:
    objs = ",".join(f"{a}>{b}" for a, b in sorted(f.object_map.items()))
    mors = ",".join(f"{a}>{b}" for a, b in sorted(f.morphism_map.items()))
    return f"F[{objs}|{mors}]"


def _nt_id(src_id, tgt_id, n: NatTransf) -> str:
    comps = ",".join(f"{a}:{m}" for a, m in sorted(n.components.items()))
    return f"N[{src_id}=>{tgt_id}|{comps}]"


def functor_category(d: FinCategory, c: FinCategory, cap=DEFAULT_MORPHISM_CAP) -> FunctorCategoryResult:
    """The category of functors ``d -> c`` with natural transformations.

    Returns the category together with lookup tables recovering the functor
    behind each object id and the transformation behind each morphism id.
    """
    functors = enumerate_functors(d, c, cap=cap)
    obj_ids = {}
    functors_by_id = {}
    for f in functors:
        fid = _functor_id(f)
        obj_ids[f] = fid
        functors_by_id[fid] = f
    morphisms, identities, composition = {}, {}, {}
    transfs_by_id = {}
    nts = {}
    count = 0
    for f in functors:
        for g in functors:
            ns = enumerate_nat_transfs(f, g)
            count += len(ns)
            if count > cap:
                raise SizeCapError(f"functor category exceeds morphism cap {cap}")
            nts[(obj_ids[f], obj_ids[g])] = ns
            for n in ns:
                nid = _nt_id(obj_ids[f], obj_ids[g], n)
                morphisms[nid] = (obj_ids[f], obj_ids[g])
                transfs_by_id[nid] = n
    for f in functors:
        fid = obj_ids[f]
        ident = NatTransf(f, f, {a: c.identity(f.on_obj(a)) for a in d.objects})
        identities[fid] = _nt_id(fid, fid, ident)
    for (fid, gid), ns1 in nts.items():
        for n1 in ns1:
            for (gid2, hid), ns2 in nts.items():
                if gid2 != gid:
                    continue
                for n2 in ns2:
                    comp = NatTransf(
                        n1.dom,
                        n2.cod,
                        {a: c.compose(n2.at(a), n1.at(a)) for a in d.objects},
                    )
                    composition[(_nt_id(gid, hid, n2), _nt_id(fid, gid, n1))] = _nt_id(fid, hid, comp)
    cat = FinCategory(
        sorted(functors_by_id), morphisms, identities, composition, name=f"[{d.name},{c.name}]"
    )
    return FunctorCategoryResult(cat, functors_by_id, transfs_by_id)


ProductCategoryResult = namedtuple("ProductCategoryResult", ["category", "proj1", "proj2"])


def _pair(a, b):
    return f"({a},{b})"


def product_category(c: FinCategory, d: FinCategory) -> ProductCategoryResult:
    """The product category with its two projection functors."""
    objects = [_pair(a, b) for a in c.objects for b in d.objects]
    morphisms = {
        _pair(m, n): (_pair(s1, s2), _pair(t1, t2))
        for m, (s1, t1) in c.morphisms.items()
        for n, (s2, t2) in d.morphisms.items()
    }
    identities = {_pair(a, b): _pair(c.identity(a), d.identity(b)) for a in c.objects for b in d.objects}
    composition = {}
    for (g1, f1), h1 in c.composition.items():
        for (g2, f2), h2 in d.composition.items():
            composition[(_pair(g1, g2), _pair(f1, f2))] = _pair(h1, h2)
    cat = FinCategory(objects, morphisms, identities, composition, name=f"{c.name}x{d.name}")
    p1 = Functor(
        cat, c,
        {_pair(a, b): a for a in c.objects for b in d.objects},
        {_pair(m, n): m for m in c.morphisms for n in d.morphisms},
        name="pr1",
    )
    p2 = Functor(
        cat, d,
        {_pair(a, b): b for a in c.objects for b in d.objects},
        {_pair(m, n): n for m in c.morphisms for n in d.morphisms},
        name="pr2",
    )
    return ProductCategoryResult(cat, p1, p2)


def opposite_category(c: FinCategory) -> FinCategory:
    """Reverse all morphisms.  Applying this twice gives back ``c`` on the nose."""
    morphisms = {m: (t, s) for m, (s, t) in c.morphisms.items()}
    composition = {(f, g): h for (g, f), h in c.composition.items()}
    return FinCategory(c.objects, morphisms, c.identities, composition, name=f"{c.name}^op")
