"""Exact homology, verdicts, shelling search.

The Smith-form engine is checked against two independent oracles:
determinantal divisors (gcd of k x k minors) and rank over the
rationals via Fraction Gauss elimination.
"""

import itertools
import math
import random
from fractions import Fraction

import pytest

from pachner.core import (
    BudgetExhaustedError,
    Complex,
    full_simplex,
    is_simplex_boundary,
    simplex_boundary,
    standard_sphere,
)
from pachner.moves import Transcript, apply_move, apply_transcript
from pachner.recognize import (
    BALL,
    HomologyProfile,
    MANIFOLD,
    NOT_MANIFOLD,
    OTHER,
    SPHERE,
    ShellingSequence,
    UNKNOWN,
    boundary_matrix,
    find_shelling,
    homology,
    is_closed_pseudomanifold,
    recognize_ball_or_sphere,
    replay_shelling,
    smith_normal_form,
    verify_combinatorial_manifold,
)
from conftest import csaszar_torus, shellable_ball_fixtures
from walk import seeded_walk


# -- Smith normal form oracles -----------------------------------------


def det_int(rows):
    """Exact integer determinant by cofactor expansion (small k only)."""
    k = len(rows)
    if k == 0:
        return 1
    if k == 1:
        return rows[0][0]
    total = 0
    for j in range(k):
        if rows[0][j]:
            minor = [r[:j] + r[j + 1:] for r in rows[1:]]
            total += (-1) ** j * rows[0][j] * det_int(minor)
    return total


def minor_gcd_factors(rows):
    """Invariant factors via determinantal divisors: d_k = gcd of all
    k x k minors, f_k = d_k / d_{k-1}."""
    m, n = len(rows), len(rows[0]) if rows else 0
    factors = []
    prev = 1
    for k in range(1, min(m, n) + 1):
        g = 0
        for ri in itertools.combinations(range(m), k):
            for ci in itertools.combinations(range(n), k):
                sub = [[rows[i][j] for j in ci] for i in ri]
                g = math.gcd(g, det_int(sub))
        if g == 0:
            break
        factors.append(g // prev)
        prev = g
    return factors


def rank_over_rationals(rows):
    A = [[Fraction(x) for x in r] for r in rows]
    rank = 0
    cols = len(A[0]) if A else 0
    for c in range(cols):
        pivot = next((i for i in range(rank, len(A)) if A[i][c]), None)
        if pivot is None:
            continue
        A[rank], A[pivot] = A[pivot], A[rank]
        for i in range(len(A)):
            if i != rank and A[i][c]:
                f = A[i][c] / A[rank][c]
                A[i] = [a - f * b for a, b in zip(A[i], A[rank])]
        rank += 1
    return rank


def test_smith_form_hand_cases():
    assert smith_normal_form([]) == []
    assert smith_normal_form([[0, 0]]) == []
    assert smith_normal_form([[1]]) == [1]
    assert smith_normal_form([[-2]]) == [2]
    # gcd of entries 2, |det| = 24, so factors (2, 12)
    assert smith_normal_form([[4, 0], [0, 6]]) == [2, 12]
    # d1 = 1, |det| = 2
    assert smith_normal_form([[1, 2], [3, 4]]) == [1, 2]


def test_smith_form_against_minor_gcd_oracle():
    rng = random.Random(991)
    for _ in range(60):
        m = rng.randrange(1, 5)
        n = rng.randrange(1, 5)
        rows = [[rng.randrange(-4, 5) for _ in range(n)] for _ in range(m)]
        got = smith_normal_form([r[:] for r in rows])
        assert got == minor_gcd_factors(rows), rows
        assert len(got) == rank_over_rationals(rows), rows
        for a, b in zip(got, got[1:]):
            assert b % a == 0, rows


def test_boundary_matrix_of_an_edge():
    K = full_simplex([0, 1])
    # rows ordered by sorted vertex list; d(01) = (1) - (0)
    assert boundary_matrix(K, 1) == [[-1], [1]]


# -- homology ----------------------------------------------------------


def rp2_six_vertices():
    """Minimal 6-vertex projective plane (all 15 pairs are edges)."""
    return Complex.from_facets([
        (1, 2, 3), (1, 3, 4), (1, 4, 5), (1, 5, 6), (1, 2, 6),
        (2, 3, 5), (3, 4, 6), (2, 4, 5), (3, 5, 6), (2, 4, 6),
    ])


def test_homology_frozen_values(sphere3, torus7):
    assert homology(sphere3) == HomologyProfile(
        (1, 0, 0, 1), ((), (), (), ()))
    assert homology(full_simplex([0, 1, 2, 3])) == HomologyProfile(
        (1, 0, 0, 0), ((), (), (), ()))
    square = simplex_boundary([0, 1]).join(simplex_boundary([2, 3]))
    assert homology(square) == HomologyProfile((1, 1), ((), ()))
    assert homology(torus7) == HomologyProfile((1, 2, 1), ((), (), ()))


def test_homology_projective_plane_torsion():
    rp2 = rp2_six_vertices()
    assert rp2.f_vector().counts == (6, 15, 10)
    assert rp2.f_vector().euler == 1
    assert is_closed_pseudomanifold(rp2)
    assert homology(rp2) == HomologyProfile((1, 0, 0), ((), (2,), ()))


def test_homology_edge_cases():
    assert homology(Complex.from_facets([])) == HomologyProfile((), ())
    assert homology(full_simplex([5])) == HomologyProfile((1,), ((),))
    two_circles = Complex.from_facets(
        [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)])
    assert homology(two_circles) == HomologyProfile((2, 2), ((), ()))


def test_homology_cell_budget(sphere3):
    with pytest.raises(BudgetExhaustedError):
        homology(sphere3, max_cells=5)


def test_homology_invariant_under_seeded_walks(sphere2, sphere3, torus7):
    for M in (sphere2, sphere3, torus7):
        start = homology(M)
        for _, nxt in seeded_walk(M, 50, seed=424242, cap=11):
            assert homology(nxt) == start


# -- pseudomanifold test -----------------------------------------------


def test_is_closed_pseudomanifold(sphere3, torus7):
    assert is_closed_pseudomanifold(sphere3)
    assert is_closed_pseudomanifold(torus7)
    assert is_closed_pseudomanifold(simplex_boundary([0, 1]))
    assert is_closed_pseudomanifold(
        simplex_boundary([0, 1]).join(simplex_boundary([2, 3])))
    assert not is_closed_pseudomanifold(full_simplex([0, 1, 2]))
    assert not is_closed_pseudomanifold(
        Complex.from_facets([(0, 1, 2), (2, 3, 4)]))
    assert not is_closed_pseudomanifold(
        Complex.from_facets([(0,), (1,), (2,)]))
    assert not is_closed_pseudomanifold(Complex.from_facets([]))
    # two disjoint triangle boundaries: closed but not connected
    assert not is_closed_pseudomanifold(Complex.from_facets(
        [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)]))


# -- ball/sphere verdicts ----------------------------------------------


def test_recognize_trivial_complexes(sphere2, sphere3):
    v = recognize_ball_or_sphere(sphere2)
    assert v.value == SPHERE and len(v.evidence) == 0
    assert recognize_ball_or_sphere(sphere3).value == SPHERE
    assert recognize_ball_or_sphere(Complex.from_facets([])).value == SPHERE
    assert recognize_ball_or_sphere(full_simplex([7])).value == BALL
    assert recognize_ball_or_sphere(simplex_boundary([0, 1])).value == SPHERE
    assert recognize_ball_or_sphere(
        Complex.from_facets([(0,), (1,), (2,)])).value == OTHER


def test_recognize_graphs():
    path = Complex.from_facets([(0, 1), (1, 2), (2, 3)])
    assert recognize_ball_or_sphere(path).value == BALL
    cycle = Complex.from_facets([(i, (i + 1) % 6) for i in range(6)])
    assert recognize_ball_or_sphere(cycle).value == SPHERE
    two = Complex.from_facets(
        [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)])
    assert recognize_ball_or_sphere(two).value == OTHER
    wedge = Complex.from_facets(
        [(0, 1), (1, 2), (0, 2), (0, 3), (3, 4), (0, 4)])
    assert recognize_ball_or_sphere(wedge).value == OTHER
    lollipop = Complex.from_facets([(0, 1), (1, 2), (0, 2), (0, 3)])
    assert recognize_ball_or_sphere(lollipop).value == OTHER


def test_recognize_surfaces(sphere2, torus7):
    disk = Complex.from_facets([(0, 1, 6), (1, 2, 6), (2, 3, 6),
                                (3, 4, 6), (4, 5, 6), (0, 5, 6)])
    assert recognize_ball_or_sphere(disk).value == BALL
    assert recognize_ball_or_sphere(full_simplex([0, 1, 2])).value == BALL
    assert recognize_ball_or_sphere(torus7).value == OTHER
    assert recognize_ball_or_sphere(rp2_six_vertices()).value == OTHER
    annulus = Complex.from_facets([(0, 1, 3), (1, 3, 4), (1, 2, 4),
                                   (2, 4, 5), (0, 2, 5), (0, 3, 5)])
    assert recognize_ball_or_sphere(annulus).value == OTHER
    # non-pure: a triangle with a dangling edge
    impure = Complex.from_facets([(0, 1, 2), (2, 3)])
    assert recognize_ball_or_sphere(impure).value == OTHER


def test_recognize_rejects_pinched_euler_2_complex(sphere2):
    """Vertex-connected, every edge in two triangles, chi = 2, yet not
    a sphere: a tetrahedron boundary and an octahedron sharing exactly
    two non-adjacent vertices.  Vertex links must be inspected, not
    just chi.  (The two parts share no edge, so the facet-adjacency
    graph is disconnected and the pseudomanifold test already fails.)"""
    octa = simplex_boundary([0, 1]).join(
        simplex_boundary([4, 5])).join(simplex_boundary([6, 7]))
    pinched = Complex.from_facets(set(sphere2.facets) | set(octa.facets))
    assert pinched.f_vector().euler == 2
    edge_deg = {}
    for F in pinched.facets:
        for i in range(3):
            e = F[:i] + F[i + 1:]
            edge_deg[e] = edge_deg.get(e, 0) + 1
    assert all(d == 2 for d in edge_deg.values())
    assert not is_closed_pseudomanifold(pinched)
    verdict = recognize_ball_or_sphere(pinched)
    assert verdict.value == OTHER
    assert "link of vertex" in verdict.reason


def test_recognize_low_dim_sphere_evidence_reduces(sphere2):
    from pachner.moves import derived_subdivision
    sd = derived_subdivision(sphere2)
    v = recognize_ball_or_sphere(sd)
    assert v.value == SPHERE
    assert len(v.evidence) > 0
    end = apply_transcript(sd, v.evidence)
    assert is_simplex_boundary(end)


def test_recognize_dim3_sphere_by_reduction(sphere3):
    from pachner.moves import enumerate_moves
    grown = apply_move(sphere3, enumerate_moves(sphere3, "bistellar")[0])
    v = recognize_ball_or_sphere(grown)
    assert v.value == SPHERE
    assert is_simplex_boundary(apply_transcript(grown, v.evidence))


def test_recognize_dim3_balls():
    tet = full_simplex([0, 1, 2, 3])
    assert recognize_ball_or_sphere(tet).value == BALL
    two = Complex.from_facets([(0, 1, 2, 3), (1, 2, 3, 4)])
    assert recognize_ball_or_sphere(two).value == BALL
    cone = full_simplex([9]).join(
        Complex.from_facets([(0, 1, 6), (1, 2, 6), (2, 3, 6),
                             (3, 4, 6), (4, 5, 6), (0, 5, 6)]))
    assert recognize_ball_or_sphere(cone).value == BALL


def test_recognize_never_sphere_on_wrong_homology(torus7):
    susp = simplex_boundary([90, 91]).join(torus7)
    assert susp.dim == 3
    v = recognize_ball_or_sphere(susp, budget=300)
    assert v.value in (OTHER, UNKNOWN)
    assert v.value != SPHERE


def test_recognize_budget_monotone(sphere2):
    from pachner.moves import derived_subdivision
    sd = derived_subdivision(sphere2)
    small = recognize_ball_or_sphere(sd, budget=5)
    large = recognize_ball_or_sphere(sd, budget=5000)
    assert small.value == large.value == SPHERE


# -- combinatorial manifold verification --------------------------------


def test_verify_manifold_spheres(sphere3, torus7):
    assert verify_combinatorial_manifold(sphere3).value == MANIFOLD
    assert verify_combinatorial_manifold(torus7).value == MANIFOLD
    two_tets = Complex.from_facets([(0, 1, 2, 3), (1, 2, 3, 4)])
    assert verify_combinatorial_manifold(two_tets).value == MANIFOLD


def test_verify_manifold_counterexample():
    wedge = Complex.from_facets([(0, 1, 2), (0, 3, 4)])
    v = verify_combinatorial_manifold(wedge)
    assert v.value == NOT_MANIFOLD
    assert v.evidence == (0,)


def test_verify_manifold_audits_all_links(sphere3, torus7):
    for M in (sphere3, torus7):
        v = verify_combinatorial_manifold(M, audit_all_links=True)
        assert v.value == MANIFOLD
        for A in M.faces():
            if A:
                sub = recognize_ball_or_sphere(M.link(A))
                assert sub.value in (SPHERE, BALL)


# -- shelling search -----------------------------------------------------


def test_find_shelling_single_simplex():
    sh = find_shelling(full_simplex([0, 1, 2, 3]))
    assert sh == ShellingSequence((), (0, 1, 2, 3), None)


def test_find_shelling_sphere_mode(sphere2):
    sh = find_shelling(sphere2)
    assert sh.initial in sphere2.facets
    assert len(sh.steps) == 2
    final = replay_shelling(sphere2, sh)
    assert final.facets == frozenset({sh.terminal})


def test_find_shelling_fixture_balls():
    for name, X in shellable_ball_fixtures():
        sh = find_shelling(X)
        assert sh is not None, name
        assert sh.initial is None
        final = replay_shelling(X, sh)
        assert final.facets == frozenset({sh.terminal}), name
        assert len(sh.steps) == len(X.facets) - 1, name


def test_find_shelling_octahedron():
    octa = simplex_boundary([0, 1]).join(
        simplex_boundary([2, 3])).join(simplex_boundary([4, 5]))
    sh = find_shelling(octa)
    assert sh is not None and sh.initial is not None
    assert len(replay_shelling(octa, sh).facets) == 1


def test_find_shelling_budget_and_impossibility():
    two = Complex.from_facets([(0, 1, 2), (3, 4, 5)])
    assert find_shelling(two) is None
    with pytest.raises(BudgetExhaustedError):
        find_shelling(standard_sphere(3), budget=2)


def test_find_shelling_empty_complex():
    sh = find_shelling(Complex.from_facets([]))
    assert sh == ShellingSequence((), (), None)
