"""Shelling combinators and move expansion.

Fixture notes, verified by hand:

* suspension of a hexagon: poles 0/1 over the 6-cycle 2-3-4-5-6-7.
  lk(pole) is the hexagon itself -- no simplex-boundary join factor --
  so starring a pole forces the witness recursion, and every searched
  witness move trades an absent chord (case: traded simplex absent).
* twisted octahedron: poles 0/1 over the 4-cycle 2-4-3-5.  The edge
  (4,5) IS present (facets 145, 345), so the hand witness move
  (2,) -> (4,5) trades a simplex already in the ambient complex and
  forces the detach-a-vertex branch."""

import itertools

import pytest

from pachner.core import (
    BudgetExhaustedError,
    Complex,
    full_simplex,
    is_simplex_boundary,
    simplex_boundary,
)
from pachner.expander import (
    ExpansionSession,
    LinkFactorization,
    Witness,
    ball_to_cone_transcript,
    cone_shelling,
    exchange_to_bistellar,
    expand_exchange,
    factor_link,
    join_boundary_shelling,
    search_witness,
    star_move_transcript,
    subdivision_to_bistellar,
)
from pachner.moves import (
    Bistellar,
    Exchange,
    IllegalMoveError,
    Shell,
    Star,
    Transcript,
    apply_move,
    apply_transcript,
    derived_subdivision,
    derived_subdivision_transcript,
    dumps_transcript,
    enumerate_moves,
)
from pachner.recognize import ShellingSequence, find_shelling, replay_shelling

from conftest import shellable_ball_fixtures

EMPTY = Complex.from_facets([])


def suspended_hexagon():
    rim = [(i, 2 + (i - 1) % 6) for i in range(2, 8)]
    return simplex_boundary([0, 1]).join(Complex.from_facets(rim))


def twisted_octahedron():
    return Complex.from_facets(
        [(0, 2, 4), (0, 3, 4), (0, 3, 5), (0, 2, 5),
         (1, 2, 4), (1, 2, 5), (1, 4, 5), (3, 4, 5)])


# -- shelling combinators -------------------------------------------------


def test_cone_shelling_of_ball():
    disk = Complex.from_facets([(0, 1, 2), (1, 2, 3), (1, 3, 4)])
    sh = find_shelling(disk)
    lifted = cone_shelling(disk, sh, 9)
    cone = full_simplex((9,)).join(disk)
    assert replay_shelling(cone, lifted).facets == {lifted.terminal}
    assert len(lifted.steps) == len(disk.facets) - 1
    assert all(9 in mv.A for mv in lifted.steps)


def test_cone_shelling_of_sphere(sphere2):
    sh = find_shelling(sphere2)
    assert sh.initial is not None
    lifted = cone_shelling(sphere2, sh, 7)
    assert lifted.initial is None
    cone = full_simplex((7,)).join(sphere2)
    assert replay_shelling(cone, lifted).facets == {lifted.terminal}
    assert len(lifted.steps) == len(sphere2.facets) - 1
    assert lifted.steps[0] == Shell((7,), sh.initial)


def test_cone_shelling_rejects_used_apex(sphere2):
    with pytest.raises(ValueError):
        cone_shelling(sphere2, find_shelling(sphere2), 2)


def test_join_boundary_shelling_suspension_of_interval():
    path = Complex.from_facets([(0, 1), (1, 2)])
    sh = find_shelling(path)
    out = join_boundary_shelling(1, path, sh)
    join = simplex_boundary((3, 4)).join(path)
    assert replay_shelling(join, out).facets == {out.terminal}
    assert out.initial is None
    assert len(out.steps) == len(join.facets) - 1


def test_join_boundary_shelling_sphere_mode():
    two_points = simplex_boundary((0, 1))
    sh = find_shelling(two_points)
    out = join_boundary_shelling(2, two_points, sh, labels=(5, 6, 7))
    join = simplex_boundary((5, 6, 7)).join(two_points)
    assert out.initial is not None
    assert replay_shelling(join, out).facets == {out.terminal}
    # one facet removed up front, one left at the end
    assert 2 + len(out.steps) == len(join.facets)


def test_join_boundary_shelling_degenerate_base():
    out = join_boundary_shelling(3, EMPTY, ShellingSequence((), ()))
    sphere = simplex_boundary((0, 1, 2, 3))
    assert replay_shelling(sphere, out).facets == {out.terminal}


def test_join_boundary_shelling_r_zero_is_identity(sphere2):
    sh = find_shelling(sphere2)
    assert join_boundary_shelling(0, sphere2, sh) is sh


# -- ball-to-cone transcripts ----------------------------------------------


def test_ball_to_cone_single_triangle():
    tri = Complex.from_facets([(0, 1, 2)])
    t = ball_to_cone_transcript(tri, find_shelling(tri), 5)
    assert list(t.moves) == [Bistellar((5,), (0, 1, 2))]
    start = simplex_boundary((0, 1, 2)).join(full_simplex((5,)))
    assert apply_transcript(start, t) == tri


def test_ball_to_cone_on_fixture_balls():
    for name, ball in shellable_ball_fixtures():
        sh = find_shelling(ball)
        v = ball.fresh_vertex()
        t = ball_to_cone_transcript(ball, sh, v)
        assert len(t) == len(ball.facets), name
        start = ball.boundary().join(full_simplex((v,)))
        assert apply_transcript(start, t) == ball, name


def test_ball_to_cone_rejects_sphere_mode(sphere2):
    sh = find_shelling(sphere2)
    with pytest.raises(ValueError):
        ball_to_cone_transcript(sphere2, sh, 9)


def test_ball_to_cone_inverse_starts_by_starring_terminal():
    disk = Complex.from_facets([(0, 1, 2), (1, 2, 3)])
    sh = find_shelling(disk)
    t = ball_to_cone_transcript(disk, sh, 7)
    last = t.moves[-1]
    assert last == Bistellar((7,), sh.terminal)


# -- starring expansion ----------------------------------------------------


def test_star_move_transcript_every_simplex_of_sphere(sphere2):
    for A in sorted(f for f in sphere2.faces() if f):
        t = star_move_transcript(sphere2, A)
        target = apply_move(sphere2, Star(A, sphere2.fresh_vertex()))
        assert apply_transcript(sphere2, t) == target
        assert all(isinstance(mv, Bistellar) for mv in t.moves)
        if len(A) == 3:
            assert len(t) == 1


def test_star_move_transcript_respects_at(sphere2):
    t = star_move_transcript(sphere2, (0, 1), at=9)
    assert apply_transcript(sphere2, t) == apply_move(sphere2, Star((0, 1), 9))
    with pytest.raises(ValueError):
        star_move_transcript(sphere2, (0, 1), at=3)


def test_star_move_transcript_needs_closed_link():
    ball = Complex.from_facets([(0, 1, 2), (1, 2, 3)])
    with pytest.raises(ValueError):
        star_move_transcript(ball, (0, 1))


def test_star_move_transcript_budget_error(sphere3):
    with pytest.raises(BudgetExhaustedError):
        star_move_transcript(sphere3, (0,), budget=1)


def test_subdivision_to_bistellar_matches_derived(sphere2):
    stars = derived_subdivision_transcript(sphere2)
    t = subdivision_to_bistellar(sphere2, stars)
    assert apply_transcript(sphere2, t) == derived_subdivision(sphere2)
    # 4 facet starrings cost one move each; the 6 edge starrings then
    # see two triangles around each edge
    assert len(t) == 16


# -- link factorization and witnesses ---------------------------------------


def test_factor_link_octahedron():
    octa = (simplex_boundary((0, 1))
            .join(simplex_boundary((2, 3)))
            .join(simplex_boundary((4, 5))))
    core, spheres = factor_link(octa)
    assert core == EMPTY
    assert spheres == ((0, 1), (2, 3), (4, 5))


def test_factor_link_mixed():
    hexagon = Complex.from_facets(
        [(i, 2 + (i - 1) % 6) for i in range(2, 8)])
    L = simplex_boundary((8, 9)).join(hexagon)
    core, spheres = factor_link(L)
    assert spheres == ((8, 9),)
    assert core == hexagon
    assert factor_link(hexagon) == (hexagon, ())
    assert factor_link(EMPTY) == (EMPTY, ())


def test_search_witness_reduces_hexagon():
    hexagon = Complex.from_facets(
        [(i, 2 + (i - 1) % 6) for i in range(2, 8)])
    w = search_witness(hexagon)
    cur = hexagon
    for mv in w.moves:
        cur = apply_move(cur, mv)
    assert is_simplex_boundary(cur)
    assert search_witness(EMPTY).moves == ()


def test_search_witness_budget_error(torus7):
    with pytest.raises(BudgetExhaustedError):
        search_witness(torus7, budget=30)


# -- exchange expansion ------------------------------------------------------


def test_exchange_to_bistellar_short_circuit(sphere2):
    for mv in enumerate_moves(sphere2, "bistellar"):
        t = expand_exchange(sphere2, mv.A, mv.B)
        assert list(t.moves) == [Bistellar(mv.A, mv.B)]


def test_expand_exchange_join_factor_base_case():
    octa = (simplex_boundary((0, 1))
            .join(simplex_boundary((2, 3)))
            .join(simplex_boundary((4, 5))))
    t = expand_exchange(octa, (0,), (2, 3))
    assert apply_transcript(octa, t) == apply_move(octa, Exchange((0,), (2, 3)))
    assert all(isinstance(mv, Bistellar) for mv in t.moves)
    assert len(t) > 1


def test_expand_exchange_recursive_case(sphere2):
    M = suspended_hexagon()
    t = expand_exchange(M, (0,), (8,))
    assert apply_transcript(M, t) == apply_move(M, Exchange((0,), (8,)))
    assert all(isinstance(mv, Bistellar) for mv in t.moves)


def test_exchange_expansion_traded_simplex_present():
    M = twisted_octahedron()
    core = M.link((0,))
    assert core == Complex.from_facets([(2, 4), (3, 4), (2, 5), (3, 5)])
    witness = Witness((Exchange((2,), (4, 5)),))
    assert (4, 5) in M  # forces the detach-a-vertex branch
    t = exchange_to_bistellar(
        M, (0,), (9,), LinkFactorization((9,), core), witness)
    assert apply_transcript(M, t) == apply_move(M, Exchange((0,), (9,)))
    assert all(isinstance(mv, Bistellar) for mv in t.moves)


def test_exchange_expansion_witness_label_collision():
    M = suspended_hexagon()
    core = M.link((0,))
    # the first witness move mints label 1, which names a pole of M;
    # the expansion must substitute a fresh label through the tail
    witness = Witness((
        Exchange((3,), (1,)),
        Exchange((1,), (2, 4)),
        Exchange((5,), (4, 6)),
        Exchange((6,), (4, 7)),
    ))
    assert (1,) in M
    t = exchange_to_bistellar(
        M, (0,), (8,), LinkFactorization((8,), core), witness)
    assert apply_transcript(M, t) == apply_move(M, Exchange((0,), (8,)))


def test_exchange_to_bistellar_rejects_bad_inputs(sphere2):
    M = suspended_hexagon()
    core = M.link((0,))
    good = search_witness(core)
    with pytest.raises(IllegalMoveError):
        exchange_to_bistellar(
            M, (0,), (2,), LinkFactorization((2,), core), good)
    with pytest.raises(ValueError):
        exchange_to_bistellar(
            M, (0,), (8,), LinkFactorization((8,), EMPTY), Witness(()))
    with pytest.raises(ValueError):
        exchange_to_bistellar(
            M, (0,), (8,), LinkFactorization((8,), core), Witness(()))


def test_expansion_is_deterministic():
    M = suspended_hexagon()
    t1 = expand_exchange(M, (0,), (8,))
    t2 = expand_exchange(M, (0,), (8,))
    assert dumps_transcript(t1) == dumps_transcript(t2)


def test_expansion_session_labels_are_monotone():
    s = ExpansionSession(floor=5)
    s.absorb_labels((11, 3))
    assert s.fresh() == 12
    assert s.fresh() == 13
    s.absorb(full_simplex((20,)))
    assert s.fresh() == 21


def test_expansion_budget_guard():
    M = suspended_hexagon()
    with pytest.raises(BudgetExhaustedError):
        core = M.link((0,))
        exchange_to_bistellar(
            M, (0,), (8,), LinkFactorization((8,), core),
            search_witness(core), budget=2)
