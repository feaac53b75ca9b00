import pytest

from qcatlab.fincat import validate_category
from qcatlab.squiggles import (
    U,
    OrdMap,
    PlusSquiggle,
    Squiggle,
    act,
    classify,
    decompose,
    delta_plus_truncation,
    delta_t_truncation,
    edge_ordmap,
    enumerate_cells,
    enumerate_ordmaps,
    enumerate_plus_squiggles,
    enumerate_squiggles,
    final_vertex,
    identity_ordmap,
    in_plus_image,
    is_atomic,
    is_nondegenerate,
    normalize,
    ordinal_sum,
    plus_concat,
    squiggle_degeneracy,
    squiggle_face,
    to_chain,
    unit_plus,
    vertex_ordinal,
)

WIDTH_BOUND = 7
DIM_BOUND = 4


def all_squiggles(width_max=WIDTH_BOUND, dim_max=DIM_BOUND):
    for dim in range(0, dim_max + 1):
        for width in range(1, width_max + 1):
            yield from enumerate_squiggles(dim, width)


def all_plus_squiggles(width_max=WIDTH_BOUND, dim_max=DIM_BOUND):
    for dim in range(0, dim_max + 1):
        for width in range(0, width_max + 1):
            yield from enumerate_plus_squiggles(dim, width)


# --- independent oracle: squiggles as strings of monotone maps -------------


def chain_face(vertices, arrows, i):
    """Face of a string of composable maps: compose at i, or drop an end."""
    n = len(vertices) - 1
    if i == 0:
        return vertices[1:], arrows[1:]
    if i == n:
        return vertices[:-1], arrows[:-1]
    merged = arrows[i - 1].then(arrows[i])
    return (
        vertices[:i] + vertices[i + 1 :],
        arrows[: i - 1] + (merged,) + arrows[i + 1 :],
    )


def chain_degeneracy(vertices, arrows, i):
    return (
        vertices[: i + 1] + vertices[i:],
        arrows[:i] + (identity_ordmap(vertices[i]),) + arrows[i:],
    )


# --- simplicial identities (acceptance criterion 1 backbone) ----------------


def test_simplicial_identities_exhaustive():
    checked = 0
    for s in list(all_squiggles()) + list(all_plus_squiggles()):
        n = s.dim
        # (1) d_i d_j = d_{j-1} d_i, i < j
        if n >= 2:
            for j in range(n + 1):
                for i in range(j):
                    assert squiggle_face(squiggle_face(s, j), i) == squiggle_face(
                        squiggle_face(s, i), j - 1
                    )
                    checked += 1
        for j in range(n + 1):
            sj = squiggle_degeneracy(s, j)
            # (3) d_j s_j = id = d_{j+1} s_j
            assert squiggle_face(sj, j) == s
            assert squiggle_face(sj, j + 1) == s
            # (2) d_i s_j = s_{j-1} d_i, i < j
            for i in range(j):
                assert squiggle_face(sj, i) == squiggle_degeneracy(squiggle_face(s, i), j - 1)
            # (4) d_i s_j = s_j d_{i-1}, i > j + 1
            for i in range(j + 2, n + 2):
                assert squiggle_face(sj, i) == squiggle_degeneracy(squiggle_face(s, i - 1), j)
            # (5) s_i s_j = s_{j+1} s_i, i <= j
            for i in range(j + 1):
                assert squiggle_degeneracy(sj, i) == squiggle_degeneracy(
                    squiggle_degeneracy(s, i), j + 1
                )
            checked += 1
    assert checked > 1000


def test_faces_and_degeneracies_match_chain_semantics():
    """Two routes to the same answer: squiggle combinatorics vs strings of maps."""
    for s in all_squiggles(width_max=7, dim_max=3):
        chain = to_chain(s)
        for i in range(s.dim + 1):
            if s.dim >= 1:
                assert to_chain(squiggle_face(s, i)) == chain_face(*chain, i)
            assert to_chain(squiggle_degeneracy(s, i)) == chain_degeneracy(*chain, i)


# --- the worked examples ----------------------------------------------------


def test_paper_figure_classifications():
    five = classify((6, 2, 5, 3, 4, 0, 6, 1, 3, 0), 5)
    assert five.undulating and five.nondegenerate and not five.atomic

    three = classify((4, 2, 4, 0, 2, 1, 4, 0), 3)
    assert three.undulating and not three.nondegenerate and three.in_plus_image

    atomic5 = classify((6, 2, 5, 3, 4, 0, 5, 1, 3, 0), 5)
    assert atomic5.undulating and atomic5.nondegenerate and atomic5.atomic
    assert atomic5.final_vertex == (1, 0)


def test_first_cell_faces():
    a0 = Squiggle(1, (2, 0, 1, 0))
    assert squiggle_face(a0, 0) == U
    assert squiggle_face(a0, 1) == Squiggle(0, (1, 0, 1, 0))


def test_face_degeneracy_identity_on_u():
    assert squiggle_face(squiggle_degeneracy(U, 0), 0) == U


def test_decompose_cuts_at_last_interior_top():
    s = Squiggle(5, (6, 2, 5, 3, 4, 0, 6, 1, 3, 0))
    x, a = decompose(s)
    assert x.levels == (6, 2, 5, 3, 4, 0, 6)
    assert a.levels == (6, 1, 3, 0)
    assert is_atomic(a)
    assert act(x, a) == s


def test_decompose_roundtrip_exhaustive():
    for s in all_squiggles():
        x, a = decompose(s)
        assert is_atomic(a)
        assert act(x, a) == s
        if is_atomic(s):
            assert x == unit_plus(s.dim)


def test_action_unital_and_associative():
    for s in all_squiggles(width_max=5, dim_max=3):
        assert act(unit_plus(s.dim), s) == s
    for dim in range(0, 3):
        xs = [x for w in range(0, 5) for x in enumerate_plus_squiggles(dim, w)]
        ss = [s for w in range(1, 4) for s in enumerate_squiggles(dim, w)]
        for x in xs[:12]:
            for y in xs[:12]:
                for s in ss[:8]:
                    assert act(plus_concat(x, y), s) == act(x, act(y, s))


def test_action_commutes_with_faces_and_degeneracies():
    """The action is levelwise: operators act diagonally on both factors."""
    for dim in range(1, 4):
        xs = [x for w in range(0, 5) for x in enumerate_plus_squiggles(dim, w)]
        ss = [s for w in range(1, 5) for s in enumerate_squiggles(dim, w)]
        for x in xs[:20]:
            for s in ss[:20]:
                both = act(x, s)
                for i in range(dim + 1):
                    assert squiggle_face(both, i) == act(squiggle_face(x, i), squiggle_face(s, i))
                    assert squiggle_degeneracy(both, i) == act(
                        squiggle_degeneracy(x, i), squiggle_degeneracy(s, i)
                    )


def test_nonatomic_is_translate_of_atomic():
    for s in all_squiggles(width_max=7, dim_max=3):
        if not is_atomic(s):
            x, a = decompose(s)
            assert x.width >= 1


# --- enumeration -------------------------------------------------------------


def test_first_cell_and_no_width_two():
    cells = enumerate_cells(3)
    assert cells[0] == Squiggle(1, (2, 0, 1, 0))
    # no squiggles at all have width 2: descents and ascents alternate
    for dim in range(0, 5):
        assert enumerate_squiggles(dim, 2) == []
    assert [c for c in enumerate_cells(9) if c.width == 2] == []


def test_dimension_zero_count():
    # one squiggle per ordinal: widths 1, 3, 5, ...
    for M in range(5):
        found = [s for w in range(1, 2 * M + 2) for s in enumerate_squiggles(0, w)]
        assert len(found) == M + 1


def test_cells_have_final_vertex_u_and_positive_dimension():
    for cell in enumerate_cells(7):
        assert final_vertex(cell) == U
        assert cell.dim >= 1


def test_cell_order_is_width_dim_lex():
    cells = enumerate_cells(7)
    keys = [(c.width, c.dim, c.levels) for c in cells]
    assert keys == sorted(keys)
    assert len(set(keys)) == len(keys)


def test_cell_faces_land_strictly_earlier():
    cells = enumerate_cells(9)
    index = {c.levels: k for k, c in enumerate(cells)}
    for k, cell in enumerate(cells):
        for i in range(cell.dim + 1):
            face = squiggle_face(cell, i)
            _, atom = decompose(face)
            word, core = normalize(atom)
            if core == U:
                continue
            assert core.levels in index, (cell, i, core)
            assert index[core.levels] < k


# --- normalization ------------------------------------------------------------


def test_normalize_peels_degeneracies():
    s = Squiggle(3, (4, 2, 4, 0, 2, 1, 4, 0))
    word, core = normalize(s)
    assert is_nondegenerate(core)
    rebuilt = core
    for j in reversed(word):
        rebuilt = squiggle_degeneracy(rebuilt, j)
    assert rebuilt == s


def test_normalize_roundtrip_exhaustive():
    for s in all_squiggles(width_max=6, dim_max=4):
        word, core = normalize(s)
        assert is_nondegenerate(core)
        assert tuple(sorted(word, reverse=True)) == word
        rebuilt = core
        for j in reversed(word):
            rebuilt = squiggle_degeneracy(rebuilt, j)
        assert rebuilt == s


# --- ordinals -----------------------------------------------------------------


def test_ordinal_sum_unit_and_cardinality():
    assert ordinal_sum(-1, 4) == 4
    assert ordinal_sum(0, 0) == 1


def test_ordinal_sum_on_maps():
    collapse = OrdMap(1, 0, (0, 0))
    s = ordinal_sum(identity_ordmap(0), collapse)
    assert (s.dom, s.cod) == (2, 1)
    assert s.table == (0, 1, 1)


def test_truncation_hom_counts():
    assert len(enumerate_ordmaps(1, 1)) == 3
    assert len([f for f in enumerate_ordmaps(1, 1) if f.top_preserving]) == 2
    assert len(enumerate_ordmaps(1, 2)) == 6


def test_truncations_are_valid_categories():
    assert validate_category(delta_plus_truncation(2)).ok
    assert validate_category(delta_t_truncation(2)).ok
    dt = delta_t_truncation(1)
    assert len(dt.hom("[1]", "[1]")) == 2


def test_vertex_ordinals_of_u_translates():
    assert vertex_ordinal(U, 0) == 0
    assert vertex_ordinal(Squiggle(0, (1, 0, 1, 0)), 0) == 1
    # the unit plus-squiggle sits at the empty ordinal
    assert vertex_ordinal(unit_plus(0), 0) == -1


def test_edge_maps_compose_with_ordinal_sum():
    # acting concatenates on the left, which ordinal-sums the chains blockwise
    for dim in range(1, 3):
        xs = [x for w in range(0, 5) for x in enumerate_plus_squiggles(dim, w)]
        ss = [s for w in range(1, 5) for s in enumerate_squiggles(dim, w)]
        for x in xs[:15]:
            for s in ss[:15]:
                vx, ax = to_chain(x)
                vs, as_ = to_chain(s)
                vb, ab = to_chain(act(x, s))
                assert vb == tuple(ordinal_sum(p, q) for p, q in zip(vx, vs))
                assert ab == tuple(ordinal_sum(f, g) for f, g in zip(ax, as_))


def test_classify_rejects_bad_sequence_with_position():
    info = classify((2, 0, 0, 1, 0), 1)
    assert not info.undulating
    assert info.violation_at == 2
