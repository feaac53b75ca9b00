"""Classical monads on finite categories and their simplicial shadows.

A monad is an endofunctor with unit and multiplication tables whose laws are
checked componentwise by exhaustive loops.  The Eilenberg-Moore category is
built directly from algebra pairs and serves as the independent oracle for
the weighted-limit tower.  A monad also induces an action of the ordinal-sum
monoid: a monotone map ``[p] -> [q]`` is interpreted as a natural
transformation ``t^{p+1} => t^{q+1}`` by inserting units and multiplying.
"""

from __future__ import annotations

from collections import namedtuple

from .fincat import (
    FinCategory,
    Functor,
    NatTransf,
    ValidationReport,
    compose_functors,
    functor_category,
    identity_functor,
    validate_category,
    validate_functor,
    validate_nat_transf,
)
from .squiggles import OrdMap


class Monad:
    def __init__(self, base: FinCategory, t: Functor, unit: NatTransf, mult: NatTransf, name=""):
        self.base = base
        self.t = t
        self.unit = unit
        self.mult = mult
        self.name = name

    def __repr__(self):
        return f"Monad({self.name or self.base.name})"


def check_monad_laws(m: Monad) -> ValidationReport:
    """Unit and associativity laws, componentwise over every object."""
    bad = []
    c, t = m.base, m.t
    if t.dom != c or t.cod != c:
        return ValidationReport(False, (("not-an-endofunctor",),))
    for rep, n in (("unit", m.unit), ("mult", m.mult)):
        ok = validate_nat_transf(n)
        if not ok.ok:
            bad.append((f"{rep}-not-natural", ok.violations))
    if bad:
        return ValidationReport(False, tuple(bad))
    for a in c.objects:
        ta = t.on_obj(a)
        mu, eta = m.mult.at(a), m.unit.at(a)
        if c.compose(mu, m.unit.at(ta)) != c.identity(ta):
            bad.append(("unit-law-left", a))
        if c.compose(mu, t.on_mor(eta)) != c.identity(ta):
            bad.append(("unit-law-right", a))
        if c.compose(mu, m.mult.at(ta)) != c.compose(mu, t.on_mor(mu)):
            bad.append(("associativity", a))
    return ValidationReport(not bad, tuple(bad))


def identity_monad(c: FinCategory) -> Monad:
    t = identity_functor(c)
    unit = NatTransf(t, t, {a: c.identity(a) for a in c.objects})
    mult = NatTransf(compose_functors(t, t), t, {a: c.identity(a) for a in c.objects})
    return Monad(c, t, unit, mult, name=f"id[{c.name}]")


def closure_monad(poset_cat: FinCategory, closure: dict, name="") -> Monad:
    """The monad of a closure operator on a poset-shaped category.

    ``closure`` maps each object to its closure; monotone, inflationary and
    idempotent by the monad laws, which remain checked rather than assumed.
    """
    c = poset_cat
    omap = {a: closure[a] for a in c.objects}
    mmap = {}
    for f, (s, t) in c.morphisms.items():
        hom = c.hom(omap[s], omap[t])
        if not hom:
            raise ValueError(f"closure not monotone across {f}")
        mmap[f] = hom[0]
    t_fun = Functor(c, c, omap, mmap, name="closure")
    unit = NatTransf(identity_functor(c), t_fun, {a: c.hom(a, omap[a])[0] for a in c.objects})
    mult = NatTransf(
        compose_functors(t_fun, t_fun),
        t_fun,
        {a: c.hom(omap[omap[a]], omap[a])[0] for a in c.objects},
    )
    return Monad(c, t_fun, unit, mult, name=name or f"closure[{c.name}]")


# ---------------------------------------------------------------------------
# Eilenberg-Moore category (the oracle)

EMResult = namedtuple("EMResult", ["category", "forgetful", "algebras"])


def algebra_object_id(a, h):
    return f"alg({a};{h})"


def em_category(m: Monad) -> EMResult:
    """The classical category of algebras ``(a, h: ta -> a)``.

    Objects are the pairs satisfying the unit and multiplication laws;
    morphisms are the base morphisms commuting with the structure maps.
    """
    c, t = m.base, m.t
    algebras = []
    for a in c.objects:
        ta = t.on_obj(a)
        for h in c.hom(ta, a):
            if c.compose(h, m.unit.at(a)) != c.identity(a):
                continue
            if c.compose(h, t.on_mor(h)) != c.compose(h, m.mult.at(a)):
                continue
            algebras.append((a, h))
    objects = [algebra_object_id(a, h) for a, h in algebras]
    morphisms, identities, composition = {}, {}, {}
    mor_data = {}
    for a, h in algebras:
        for b, k in algebras:
            for f in c.hom(a, b):
                if c.compose(f, h) != c.compose(k, t.on_mor(f)):
                    continue
                mid = f"{f}:{algebra_object_id(a, h)}->{algebra_object_id(b, k)}"
                morphisms[mid] = (algebra_object_id(a, h), algebra_object_id(b, k))
                mor_data[mid] = (f, (a, h), (b, k))
    for a, h in algebras:
        identities[algebra_object_id(a, h)] = (
            f"{c.identity(a)}:{algebra_object_id(a, h)}->{algebra_object_id(a, h)}"
        )
    for mid, (f, src, tgt) in mor_data.items():
        for nid, (g, src2, tgt2) in mor_data.items():
            if tgt == src2:
                comp = c.compose(g, f)
                composition[(nid, mid)] = (
                    f"{comp}:{algebra_object_id(*src)}->{algebra_object_id(*tgt2)}"
                )
    cat = FinCategory(objects, morphisms, identities, composition, name=f"EM({m.name})")
    forgetful = Functor(
        cat,
        c,
        {algebra_object_id(a, h): a for a, h in algebras},
        {mid: f for mid, (f, _, _) in mor_data.items()},
        name="forget",
    )
    return EMResult(cat, forgetful, tuple(algebras))


def fixed_points(m: Monad):
    """Objects where the unit component is an identity; for closure operators
    on posets these are exactly the algebra carriers."""
    c = m.base
    return tuple(a for a in c.objects if m.unit.at(a) == c.identity(a))


# ---------------------------------------------------------------------------
# the induced ordinal action


class HCAction:
    """Interpretation of the ordinal-sum monoid generated by a monad.

    Ordinal ``[p]`` acts as ``t^{p+1}``; element ``j`` of the ordinal indexes
    the j-th copy of ``t`` counted from the outside.  A coface inserts a unit
    at its position, a codegeneracy multiplies two adjacent copies.
    """

    def __init__(self, m: Monad, power_cap=6):
        self.monad = m
        self.power_cap = power_cap
        self._interp_cache = {}

    def power_obj(self, k, a):
        if k > self.power_cap:
            raise ValueError(f"power {k} exceeds cap {self.power_cap}")
        for _ in range(k):
            a = self.monad.t.on_obj(a)
        return a

    def power_mor(self, k, f):
        if k > self.power_cap:
            raise ValueError(f"power {k} exceeds cap {self.power_cap}")
        for _ in range(k):
            f = self.monad.t.on_mor(f)
        return f

    def _generator_component(self, kind, j, p, a):
        """Component at ``a`` of the coface (insert unit) or codegeneracy
        (multiply) generator at position j, out of ``t^{p+1}``."""
        m = self.monad
        if kind == "coface":
            inner = self.power_obj(p + 1 - j, a)
            return self.power_mor(j, m.unit.at(inner))
        inner = self.power_obj(p - j, a)
        return self.power_mor(j, m.mult.at(inner))

    def interpret(self, alpha: OrdMap):
        """The natural transformation ``t^{p+1} => t^{q+1}`` of a monotone map,
        as a component table object -> morphism."""
        key = (alpha.dom, alpha.cod, alpha.table)
        if key in self._interp_cache:
            return self._interp_cache[key]
        c = self.monad.base
        comps = {a: c.identity(self.power_obj(alpha.dom + 1, a)) for a in c.objects}
        cur = alpha
        # peel codegeneracies (collapses), then cofaces (insertions), composing
        while True:
            collapse = None
            for j in range(cur.dom):
                if cur.table[j] == cur.table[j + 1]:
                    collapse = j
                    break
            if collapse is None:
                break
            for a in c.objects:
                step = self._generator_component("codegeneracy", collapse, cur.dom - 1, a)
                comps[a] = c.compose(step, comps[a])
            table = cur.table[:collapse] + cur.table[collapse + 1 :]
            cur = OrdMap(cur.dom - 1, cur.cod, table)
        missing = [v for v in range(cur.cod + 1) if v not in cur.table]
        for v in sorted(missing):
            for a in c.objects:
                step = self._generator_component("coface", v, cur.dom, a)
                comps[a] = c.compose(step, comps[a])
            cur = OrdMap(cur.dom + 1, cur.cod, tuple(sorted(cur.table + (v,))))
        self._interp_cache[key] = comps
        return comps


def action_eval(action: HCAction, chain, row):
    """Evaluate the simplicial action of an ordinal-chain on a nerve simplex.

    ``chain`` is ``(vertices, arrows)`` in the ordinal category; ``row`` is
    ``(first_object, base_arrows)`` in the nerve.  Returns a row.
    """
    (pverts, pmaps) = chain
    obj0, arrows = row
    c = action.monad.base
    if len(pverts) != len(arrows) + 1:
        raise ValueError("dimension mismatch")
    objs = [obj0]
    for f in arrows:
        objs.append(c.tgt(f))
    out_obj0 = action.power_obj(pverts[0] + 1, obj0)
    out_arrows = []
    for i, f in enumerate(arrows):
        powered = action.power_mor(pverts[i] + 1, f)
        step = action.interpret(pmaps[i])[objs[i + 1]]
        out_arrows.append(c.compose(step, powered))
    return out_obj0, tuple(out_arrows)


# ---------------------------------------------------------------------------
# pointwise monads on functor categories


PointwiseResult = namedtuple("PointwiseResult", ["monad", "diagrams", "constant_functor"])


def pointwise_monad(m: Monad, shape: FinCategory, cap=10_000) -> PointwiseResult:
    """The monad induced on diagrams by postcomposition.

    Also returns the constant-diagram functor, which is a strict map of
    monads (the defining square commutes on the nose).
    """
    base = m.base
    diag = functor_category(shape, base, cap=cap)
    cat, functors, transfs = diag

    def functor_obj_id(f):
        from .fincat import _functor_id

        return _functor_id(f)

    def transf_id(src, tgt, n):
        from .fincat import _nt_id

        return _nt_id(functor_obj_id(src), functor_obj_id(tgt), n)

    def post_t(f: Functor) -> Functor:
        return compose_functors(m.t, f)

    omap = {}
    for fid, f in functors.items():
        omap[fid] = functor_obj_id(post_t(f))
    mmap = {}
    for nid, n in transfs.items():
        whiskered = NatTransf(
            post_t(n.dom), post_t(n.cod), {x: m.t.on_mor(n.at(x)) for x in shape.objects}
        )
        mmap[nid] = transf_id(whiskered.dom, whiskered.cod, whiskered)
    t_fun = Functor(cat, cat, omap, mmap, name="pointwise-t")
    unit_components, mult_components = {}, {}
    for fid, f in functors.items():
        tf = post_t(f)
        ttf = post_t(tf)
        unit_n = NatTransf(f, tf, {x: m.unit.at(f.on_obj(x)) for x in shape.objects})
        mult_n = NatTransf(ttf, tf, {x: m.mult.at(f.on_obj(x)) for x in shape.objects})
        unit_components[fid] = transf_id(f, tf, unit_n)
        mult_components[fid] = transf_id(ttf, tf, mult_n)
    unit = NatTransf(identity_functor(cat), t_fun, unit_components)
    mult = NatTransf(compose_functors(t_fun, t_fun), t_fun, mult_components)
    monad = Monad(cat, t_fun, unit, mult, name=f"{m.name}^{shape.name}")

    const_omap = {}
    const_mmap = {}
    for a in base.objects:
        const_f = Functor(
            shape, base, {x: a for x in shape.objects}, {g: base.identity(a) for g in shape.morphisms}
        )
        const_omap[a] = functor_obj_id(const_f)
    for f, (s, t) in base.morphisms.items():
        src_f = functors[const_omap[s]]
        tgt_f = functors[const_omap[t]]
        n = NatTransf(src_f, tgt_f, {x: f for x in shape.objects})
        const_mmap[f] = transf_id(src_f, tgt_f, n)
    const = Functor(base, cat, const_omap, const_mmap, name="const")
    return PointwiseResult(monad, diag, const)


def is_strict_monad_map(f: Functor, m_dom: Monad, m_cod: Monad) -> bool:
    """Whether ``f`` strictly commutes with the functor parts, units and
    multiplications of the two monads."""
    if f.dom != m_dom.base or f.cod != m_cod.base:
        return False
    left = compose_functors(m_cod.t, f)
    right = compose_functors(f, m_dom.t)
    if left != right:
        return False
    for a in m_dom.base.objects:
        if f.on_mor(m_dom.unit.at(a)) != m_cod.unit.at(f.on_obj(a)):
            return False
        if f.on_mor(m_dom.mult.at(a)) != m_cod.mult.at(f.on_obj(a)):
            return False
    return True
