"""Strictly undulating squiggles and the ordinal-sum monoid.

A squiggle of dimension n is a zigzag of levels drawn on ``n + 1`` lines,
encoded as the integer sequence of its turning points: entries lie in
``0 .. n+1``, the left end sits at the top level ``n + 1`` and the right
end at ``0``.  Interior entries are strict local extrema alternating
min/max.  These sequences encode simplices of the simplicial set of finite
nonempty ordinals with top-preserving maps, on which the monoid of all
finite ordinals under ordinal sum acts on the left; that action is
concatenation of squiggles at the shared top level.

Plus-squiggles (both ends at the top level) play the role of the acting
monoid.  The crucial combinatorial notions are *width* (number of entries
minus one), *atomicity* (no interior entry at the top level) and the
*cells*: atomic nondegenerate squiggles not in the monoid's own image,
which generate everything else under the action, faces and degeneracies.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .fincat import FinCategory


# ---------------------------------------------------------------------------
# validity


def undulation_violation(levels, dim):
    """Index of the first undulation failure, or None if valid as a zigzag.

    Checks entries in range, consecutive entries distinct, and every
    interior entry a strict local extremum (which forces alternation).
    End values are checked by the callers since they differ by flavour.
    """
    top = dim + 1
    for i, v in enumerate(levels):
        if not 0 <= v <= top:
            return i
    for i in range(1, len(levels)):
        if levels[i] == levels[i - 1]:
            return i
    for i in range(1, len(levels) - 1):
        a, b, c = levels[i - 1], levels[i], levels[i + 1]
        if not (b > a and b > c) and not (b < a and b < c):
            return i
    return None


@dataclass(frozen=True)
class Squiggle:
    """A simplex of the weight carrier: runs from the top level down to 0."""

    dim: int
    levels: tuple

    def __post_init__(self):
        object.__setattr__(self, "levels", tuple(self.levels))
        bad = undulation_violation(self.levels, self.dim)
        if bad is not None:
            raise ValueError(f"not strictly undulating at position {bad}: {self.levels}")
        if self.levels[0] != self.dim + 1:
            raise ValueError(f"left end must be {self.dim + 1}: {self.levels}")
        if self.levels[-1] != 0:
            raise ValueError(f"right end must be 0: {self.levels}")

    @property
    def width(self):
        return len(self.levels) - 1

    def __repr__(self):
        return f"Squiggle(dim={self.dim}, {','.join(map(str, self.levels))})"


@dataclass(frozen=True)
class PlusSquiggle:
    """A simplex of the acting monoid: both ends at the top level."""

    dim: int
    levels: tuple

    def __post_init__(self):
        object.__setattr__(self, "levels", tuple(self.levels))
        bad = undulation_violation(self.levels, self.dim)
        if bad is not None:
            raise ValueError(f"not strictly undulating at position {bad}: {self.levels}")
        top = self.dim + 1
        if self.levels[0] != top or self.levels[-1] != top:
            raise ValueError(f"both ends must be {top}: {self.levels}")

    @property
    def width(self):
        return len(self.levels) - 1

    def __repr__(self):
        return f"PlusSquiggle(dim={self.dim}, {','.join(map(str, self.levels))})"


U = Squiggle(0, (1, 0))


def unit_plus(dim) -> PlusSquiggle:
    """The monoid unit: the empty squiggle at the given dimension."""
    return PlusSquiggle(dim, (dim + 1,))


# ---------------------------------------------------------------------------
# faces and degeneracies


def _straighten(levels):
    """Collapse equal neighbours and delete interior non-extrema until stable."""
    seq = list(levels)
    changed = True
    while changed:
        changed = False
        out = [seq[0]]
        for v in seq[1:]:
            if v != out[-1]:
                out.append(v)
        if len(out) != len(seq):
            seq, changed = out, True
            continue
        for i in range(1, len(seq) - 1):
            a, b, c = seq[i - 1], seq[i], seq[i + 1]
            if (a < b < c) or (a > b > c):
                del seq[i]
                changed = True
                break
    return tuple(seq)


def _relabel_face(levels, i):
    return tuple(v if v <= i else v - 1 for v in levels)


def _relabel_degeneracy(levels, i):
    return tuple(v if v <= i else v + 1 for v in levels)


def squiggle_face(s, i):
    """The i-th face: merge levels i and i+1, then straighten."""
    if s.dim < 1:
        raise ValueError("0-dimensional squiggles have no faces")
    if not 0 <= i <= s.dim:
        raise ValueError(f"face index {i} out of range for dimension {s.dim}")
    seq = _straighten(_relabel_face(s.levels, i))
    return type(s)(s.dim - 1, seq)


def squiggle_degeneracy(s, i):
    """The i-th degeneracy: split level i."""
    if not 0 <= i <= s.dim:
        raise ValueError(f"degeneracy index {i} out of range for dimension {s.dim}")
    return type(s)(s.dim + 1, _relabel_degeneracy(s.levels, i))


# ---------------------------------------------------------------------------
# the monoid action


def plus_concat(x: PlusSquiggle, y: PlusSquiggle) -> PlusSquiggle:
    """Monoid multiplication: concatenate at the shared top level."""
    if x.dim != y.dim:
        raise ValueError("dimension mismatch")
    return PlusSquiggle(x.dim, x.levels + y.levels[1:])


def act(x: PlusSquiggle, s: Squiggle) -> Squiggle:
    """Left action of a plus-squiggle: concatenate at the shared top level."""
    if x.dim != s.dim:
        raise ValueError("dimension mismatch")
    return Squiggle(s.dim, x.levels + s.levels[1:])


def decompose(s: Squiggle):
    """Split ``s = act(x, a)`` with ``a`` atomic, cutting at the last interior top.

    Returns ``(unit, s)`` when ``s`` is already atomic.
    """
    top = s.dim + 1
    cut = None
    for i in range(1, len(s.levels) - 1):
        if s.levels[i] == top:
            cut = i
    if cut is None:
        return unit_plus(s.dim), s
    return PlusSquiggle(s.dim, s.levels[: cut + 1]), Squiggle(s.dim, s.levels[cut:])


# ---------------------------------------------------------------------------
# classification

def is_atomic(s) -> bool:
    """No interior entry at the top level."""
    top = s.dim + 1
    return all(v != top for v in s.levels[1:-1])


def is_nondegenerate(s) -> bool:
    """Every level 1..n appears as an interior turn-around point."""
    interior = set(s.levels[1:-1])
    return all(lvl in interior for lvl in range(1, s.dim + 1))


def in_plus_image(s: Squiggle) -> bool:
    """Whether the squiggle lies in the monoid's own image: its entry
    before the final descent is the top level."""
    return len(s.levels) >= 2 and s.levels[-2] == s.dim + 1


def missing_levels(s):
    present = set(s.levels)
    return tuple(lvl for lvl in range(1, s.dim + 1) if lvl not in present)


def normalize(s):
    """Eilenberg-Zilber form: ``(word, core)`` with ``s = s_word(core)``.

    The word is a strictly decreasing tuple of degeneracy indices and the
    core is nondegenerate.  A level absent from the sequence is witnessed
    by one degeneracy peel.
    """
    word = []
    cur = s
    while True:
        miss = missing_levels(cur)
        if not miss:
            return tuple(word), cur
        lvl = miss[-1]
        word.append(lvl - 1)
        cur = type(cur)(cur.dim - 1, _relabel_face(cur.levels, lvl - 1))


def vertex_ordinal(s, i) -> int:
    """The ordinal at vertex ``i``: one less than the number of maximal runs
    of entries at most ``i``.  For plus-squiggles this can be ``-1``."""
    if not 0 <= i <= s.dim:
        raise ValueError(f"vertex {i} out of range")
    runs = 0
    low = False
    for v in s.levels:
        if v <= i and not low:
            runs += 1
            low = True
        elif v > i:
            low = False
    return runs - 1


def final_vertex(s: Squiggle) -> Squiggle:
    """The last vertex as a 0-dimensional squiggle."""
    m = vertex_ordinal(s, s.dim)
    return Squiggle(0, (1, 0) * (m + 1))


@dataclass(frozen=True)
class SquiggleInfo:
    undulating: bool
    nondegenerate: bool
    atomic: bool
    in_plus_image: bool
    width: int
    final_vertex: tuple
    violation_at: int | None = None


def classify(levels, dim) -> SquiggleInfo:
    """Classify a raw level sequence at the given dimension."""
    levels = tuple(levels)
    bad = undulation_violation(levels, dim)
    if bad is None and (levels[0] != dim + 1 or levels[-1] != 0):
        bad = 0 if levels[0] != dim + 1 else len(levels) - 1
    if bad is not None:
        return SquiggleInfo(False, False, False, False, len(levels) - 1, (), violation_at=bad)
    s = Squiggle(dim, levels)
    return SquiggleInfo(
        True,
        is_nondegenerate(s),
        is_atomic(s),
        in_plus_image(s),
        s.width,
        final_vertex(s).levels,
    )


# ---------------------------------------------------------------------------
# enumeration


def _zigzags(top, length, first, last, interior_max=None):
    """All strictly undulating sequences of the given length with entries in
    ``0..top`` and prescribed endpoints.  ``interior_max`` caps the interior
    entries (used to enumerate atomic squiggles directly)."""
    cap = top if interior_max is None else interior_max
    out = []

    def extend(seq):
        pos = len(seq)
        if pos == length - 1:
            prev = seq[-1]
            if last == prev:
                return
            if pos >= 2:
                a, b = seq[-2], prev
                if not ((b > a and b > last) or (b < a and b < last)):
                    return
            out.append(tuple(seq) + (last,))
            return
        for v in range(cap + 1):
            if v == seq[-1]:
                continue
            if pos >= 2:
                a, b = seq[-2], seq[-1]
                if not ((b > a and b > v) or (b < a and b < v)):
                    continue
            seq.append(v)
            extend(seq)
            seq.pop()

    if length == 1:
        if first == last:
            out.append((first,))
    else:
        extend([first])
    return out


def enumerate_squiggles(dim, width) -> list:
    """All squiggles of exactly this dimension and width."""
    top = dim + 1
    return [Squiggle(dim, seq) for seq in _zigzags(top, width + 1, top, 0)]


def enumerate_plus_squiggles(dim, width) -> list:
    top = dim + 1
    return [PlusSquiggle(dim, seq) for seq in _zigzags(top, width + 1, top, top)]


@lru_cache(maxsize=None)
def enumerate_cells(width_max, dim_max=None) -> tuple:
    """The cells: atomic nondegenerate squiggles outside the monoid image,
    ordered by width, then dimension, then lexicographically.

    An atomic squiggle of width w has at most ``w - 1`` interior turning
    points, so its dimension is below w; the default dimension bound is
    therefore ``width_max - 1``.
    """
    if dim_max is None:
        dim_max = width_max - 1
    cells = []
    for width in range(1, width_max + 1):
        for dim in range(1, min(dim_max, width) + 1):
            top = dim + 1
            for seq in _zigzags(top, width + 1, top, 0, interior_max=dim):
                s = Squiggle(dim, seq)
                if is_nondegenerate(s) and not in_plus_image(s):
                    cells.append(s)
    cells.sort(key=lambda s: (s.width, s.dim, s.levels))
    return tuple(cells)


# ---------------------------------------------------------------------------
# ordinals and ordinal sum


@dataclass(frozen=True)
class OrdMap:
    """A monotone map of finite ordinals ``[dom] -> [cod]`` (``-1`` is empty)."""

    dom: int
    cod: int
    table: tuple

    def __post_init__(self):
        object.__setattr__(self, "table", tuple(self.table))
        if self.dom < -1 or self.cod < -1:
            raise ValueError("ordinals start at -1")
        if len(self.table) != self.dom + 1:
            raise ValueError("table length must be dom + 1")
        for v in self.table:
            if not 0 <= v <= self.cod:
                raise ValueError("value out of range")
        if any(a > b for a, b in zip(self.table, self.table[1:])):
            raise ValueError("not monotone")

    def __call__(self, j):
        return self.table[j]

    @property
    def top_preserving(self):
        if self.dom == -1:
            return self.cod == -1
        return self.cod >= 0 and self.table[-1] == self.cod

    def then(self, other: "OrdMap") -> "OrdMap":
        if self.cod != other.dom:
            raise ValueError("not composable")
        return OrdMap(self.dom, other.cod, tuple(other.table[v] for v in self.table))


def identity_ordmap(n) -> OrdMap:
    return OrdMap(n, n, tuple(range(n + 1)))


def ordinal_sum(x, y):
    """Ordinal sum: on ordinals ``[m] + [n] = [m + n + 1]``, on maps block sum."""
    if isinstance(x, int) and isinstance(y, int):
        return x + y + 1
    if isinstance(x, OrdMap) and isinstance(y, OrdMap):
        table = x.table + tuple(v + x.cod + 1 for v in y.table)
        return OrdMap(x.dom + y.dom + 1, x.cod + y.cod + 1, table)
    raise TypeError("ordinal_sum takes two ints or two OrdMaps")


def enumerate_ordmaps(m, n):
    """All monotone maps ``[m] -> [n]``."""
    if m == -1:
        return [OrdMap(-1, n, ())]
    if n == -1:
        return []
    out = []

    def extend(table):
        if len(table) == m + 1:
            out.append(OrdMap(m, n, tuple(table)))
            return
        lo = table[-1] if table else 0
        for v in range(lo, n + 1):
            table.append(v)
            extend(table)
            table.pop()

    extend([])
    return out


def _ordmap_id(f: OrdMap) -> str:
    return f"[{f.dom}]->[{f.cod}]:{','.join(map(str, f.table))}"


def _ordinal_name(n) -> str:
    return f"[{n}]"


def _ordinal_category(lo, hi, predicate, name) -> FinCategory:
    objects = [_ordinal_name(n) for n in range(lo, hi + 1)]
    morphisms, identities, composition = {}, {}, {}
    maps = {}
    for m in range(lo, hi + 1):
        for n in range(lo, hi + 1):
            for f in enumerate_ordmaps(m, n):
                if predicate(f):
                    maps[_ordmap_id(f)] = f
                    morphisms[_ordmap_id(f)] = (_ordinal_name(m), _ordinal_name(n))
    for n in range(lo, hi + 1):
        identities[_ordinal_name(n)] = _ordmap_id(identity_ordmap(n))
    for fid, f in maps.items():
        for gid, g in maps.items():
            if f.cod == g.dom:
                composition[(gid, fid)] = _ordmap_id(f.then(g))
    return FinCategory(objects, morphisms, identities, composition, name=name)


def delta_plus_truncation(max_ordinal) -> FinCategory:
    """Finite ordinals ``[-1] .. [max]`` with all monotone maps."""
    return _ordinal_category(-1, max_ordinal, lambda f: True, f"delta_plus<={max_ordinal}")


def delta_t_truncation(max_ordinal) -> FinCategory:
    """Nonempty ordinals ``[0] .. [max]`` with top-preserving monotone maps."""
    return _ordinal_category(0, max_ordinal, lambda f: f.top_preserving, f"delta_t<={max_ordinal}")


# ---------------------------------------------------------------------------
# reading a squiggle as a string of ordinal maps


def edge_ordmap(s, i) -> OrdMap:
    """The arrow between vertices ``i`` and ``i + 1``, read off from runs.

    Each maximal run of entries at most ``i`` sits inside a unique maximal
    run of entries at most ``i + 1``; runs are ordered left to right.
    """
    if not 0 <= i < s.dim:
        raise ValueError("edge index out of range")
    lo_runs, hi_runs = [], []
    for threshold, runs in ((i, lo_runs), (i + 1, hi_runs)):
        inside = False
        for pos, v in enumerate(s.levels):
            if v <= threshold and not inside:
                runs.append([pos, pos])
                inside = True
            elif v <= threshold:
                runs[-1][1] = pos
            else:
                inside = False
    table = []
    for lo_start, _ in lo_runs:
        for j, (hi_start, hi_end) in enumerate(hi_runs):
            if hi_start <= lo_start <= hi_end:
                table.append(j)
                break
    return OrdMap(len(lo_runs) - 1, len(hi_runs) - 1, tuple(table))


def to_chain(s):
    """The squiggle as a string of composable ordinal maps.

    Returns ``(vertices, arrows)`` where ``vertices[i]`` is the ordinal at
    vertex ``i`` and ``arrows[i]`` maps vertex ``i`` to vertex ``i + 1``.
    """
    vertices = tuple(vertex_ordinal(s, i) for i in range(s.dim + 1))
    arrows = tuple(edge_ordmap(s, i) for i in range(s.dim))
    return vertices, arrows


def render(levels, dim) -> str:
    """ASCII sketch of a squiggle: one row per level, top level first."""
    top = dim + 1
    cols = len(levels)
    rows = []
    for lvl in range(top, -1, -1):
        row = []
        for j, v in enumerate(levels):
            row.append("o" if v == lvl else " ")
        rows.append(f"{lvl:2d} " + " ".join(row))
    return "\n".join(rows)
