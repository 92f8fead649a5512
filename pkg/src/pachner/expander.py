"""Constructive expansion of composite moves into bistellar transcripts.

Shelling combinators lift a shelling of X to shellings of the cone over
X and of (boundary of a simplex) * X.  On top of them, a shelling of a
ball X converts the cone over its boundary into X by one bistellar move
per facet; starrings expand by running that conversion backwards inside
the star; and a general exchange expands by recursion on a witness -- a
sequence of exchanges reducing the residual link factor to a simplex
boundary.

Every constructed object is certified on the spot: shellings and
transcripts are replayed move by move (apply_move re-checks legality),
and each splice point is compared for exact labeled equality.
"""

from __future__ import annotations

from dataclasses import dataclass

from .core import (
    BudgetExhaustedError,
    Complex,
    fmt_simplex,
    full_simplex,
    is_simplex_boundary,
    simplex,
    simplex_boundary,
)
from .flipsearch import Schedule, reduce as _flip_reduce
from .moves import (
    Bistellar,
    Exchange,
    IllegalAtStepError,
    IllegalMoveError,
    Shell,
    Star,
    Transcript,
    _minimal_nonfaces,
    apply_move,
    apply_transcript,
    check_move,
    invert_transcript,
)
from .recognize import ShellingSequence, find_shelling

WITNESS_SEED = 271828
DEFAULT_EXPANSION_BUDGET = 100_000

_EMPTY = Complex.from_facets([])


# -- shelling combinators -----------------------------------------------


def _validate_shelling(X, sh, what="shelling"):
    """Replay sh on X, raising on any illegal step or a wrong ending."""
    M = X
    if sh.initial is not None:
        if sh.initial not in M.facets:
            raise ValueError(
                f"{what}: initial {fmt_simplex(sh.initial)} is not a facet")
        M = Complex.from_facets(set(M.facets) - {sh.initial})
    for i, mv in enumerate(sh.steps):
        rep = check_move(M, mv)
        if not rep.legal:
            raise IllegalAtStepError(i, mv, rep)
        M = apply_move(M, mv)
    if M.facets != frozenset({sh.terminal}):
        raise ValueError(f"{what} does not end at its terminal facet")
    return M


def cone_shelling(X, sh, v):
    """Lift a shelling of X to a shelling of the cone over X, apex v.

    Each step (A, B) becomes (v+A, B); a sphere-mode shelling first
    spends the initial facet as the step (v alone, initial)."""
    if v in set(X.vertices()):
        raise ValueError(f"apex {v} already labels a vertex of the base")
    _validate_shelling(X, sh)
    steps = []
    if sh.initial is not None:
        steps.append(Shell((v,), sh.initial))
    steps.extend(
        Shell(tuple(sorted((v,) + mv.A)), mv.B) for mv in sh.steps)
    out = ShellingSequence(
        tuple(steps), tuple(sorted((v,) + sh.terminal)), None)
    _validate_shelling(full_simplex((v,)).join(X), out, "cone shelling")
    return out


def join_boundary_shelling(r, X, sh, labels=None):
    """Shelling of (boundary of an r-simplex) * X from a shelling of X.

    The r-simplex uses `labels` (r + 1 of them, fresh by default).  The
    construction peels the facets missing the last label first, then
    cones the remainder over that label recursively."""
    if r < 0:
        raise ValueError("r must be nonnegative")
    if r == 0:
        _validate_shelling(X, sh)
        return sh
    if labels is None:
        f = X.fresh_vertex()
        labels = tuple(range(f, f + r + 1))
    W = simplex(labels)
    if len(W) != r + 1:
        raise ValueError(f"need {r + 1} distinct labels, got {len(W)}")
    if set(W) & set(X.vertices()):
        raise ValueError("simplex labels collide with the base complex")
    _validate_shelling(X, sh)
    if X.dim == -1:
        # the join is just the simplex boundary itself
        return find_shelling(simplex_boundary(W))
    join = simplex_boundary(W).join(X)
    if sh.initial is not None:
        C, v = W[:-1], W[-1]
        D = sh.initial
        shC = find_shelling(simplex_boundary(C))
        steps = []
        if shC.initial is not None:
            steps.append(Shell((v,), tuple(sorted(shC.initial + D))))
        steps.extend(
            Shell(tuple(sorted((v,) + mv.A)), tuple(sorted(mv.B + D)))
            for mv in shC.steps)
        steps.append(Shell(tuple(sorted((v,) + shC.terminal)), D))
        ball = Complex.from_facets(set(X.facets) - {D})
        tail = _join_ball(ball, ShellingSequence(sh.steps, sh.terminal), W)
        out = ShellingSequence(
            tuple(steps) + tail.steps, tail.terminal, tuple(sorted(C + D)))
    else:
        out = _join_ball(X, sh, W)
    _validate_shelling(join, out, "join shelling")
    return out


def _join_ball(X, sh, W):
    """Ball case of join_boundary_shelling, X already open."""
    C, v = W[:-1], W[-1]
    steps = [Shell(mv.A, tuple(sorted(mv.B + C))) for mv in sh.steps]
    steps.append(Shell(sh.terminal, C))
    inner = join_boundary_shelling(len(C) - 1, X, sh, labels=C)
    lifted = cone_shelling(simplex_boundary(C).join(X), inner, v)
    return ShellingSequence(
        tuple(steps) + lifted.steps, lifted.terminal, None)


# -- shelled balls vs cones over their boundaries ------------------------


def ball_to_cone_transcript(X, sh, v):
    """Bistellar transcript carrying (v * boundary of X) to X itself.

    Requires a ball-mode shelling of X; produces exactly one move per
    facet of X, the i-th move gluing back the i-th shelled facet.  The
    inverse transcript therefore starts by starring the terminal facet
    at v."""
    if sh.initial is not None:
        raise ValueError("a ball shelling is required, not sphere mode")
    if v in set(X.vertices()):
        raise ValueError(f"apex {v} already labels a vertex of the ball")
    _validate_shelling(X, sh)
    moves = [Bistellar(tuple(sorted((v,) + mv.B)), mv.A) for mv in sh.steps]
    moves.append(Bistellar((v,), sh.terminal))
    t = Transcript(tuple(moves))
    start = X.boundary().join(full_simplex((v,)))
    if apply_transcript(start, t) != X:
        raise RuntimeError("cone transcript does not replay to the ball")
    return t


def _link_is_closed(K):
    """Every ridge in exactly two facets; vacuously true for {-}.

    This is the condition under which the boundary of A * K is exactly
    (boundary of A) * K, which the starring expansion relies on.  Note
    that Complex.boundary() cannot be used here: a single point and a
    closed complex both report the {-} boundary."""
    if K.dim < 0:
        return True
    if not K.is_pure():
        return False
    deg = {}
    for f in K.facets:
        for i in range(len(f)):
            r = f[:i] + f[i + 1:]
            deg[r] = deg.get(r, 0) + 1
    return all(d == 2 for d in deg.values())


def star_move_transcript(M, A, budget=DEFAULT_EXPANSION_BUDGET, at=None):
    """Bistellar transcript realizing the starring of A on M.

    Needs lk(A) closed and shellable: the shelling of the star A * lk(A)
    is built by iterated coning, converted to a transcript from the
    star to (new vertex * its boundary), and inverted.  The new vertex
    is `at` when given (must be unused), the least fresh label
    otherwise."""
    A = simplex(A)
    if not A:
        raise ValueError("cannot star the empty simplex")
    lk = M.link(A)
    if not _link_is_closed(lk):
        raise ValueError(
            f"lk({fmt_simplex(A)}) is not closed; this starring has no "
            "bistellar expansion")
    try:
        sh = find_shelling(lk, budget)
    except BudgetExhaustedError:
        raise BudgetExhaustedError(
            f"shelling search for lk({fmt_simplex(A)}) exhausted its "
            f"budget of {budget}") from None
    if sh is None:
        raise ValueError(
            f"lk({fmt_simplex(A)}) is unshellable; cannot expand this "
            "starring")
    return _star_from_link_shelling(M, A, lk, sh, at)


def _star_from_link_shelling(M, A, lk, sh, at):
    """Shared tail of the starring expansions: cone the link shelling
    over A, convert, invert, and certify against the one-move result."""
    X, shX = lk, sh
    for w in reversed(A):
        shX = cone_shelling(X, shX, w)
        X = full_simplex((w,)).join(X)
    a = M.fresh_vertex() if at is None else at
    if a in set(M.vertices()):
        raise ValueError(f"starring label {a} is already in use")
    t = invert_transcript(ball_to_cone_transcript(X, shX, a))
    if apply_transcript(M, t) != apply_move(M, Star(A, a)):
        raise RuntimeError("starring expansion does not replay correctly")
    return t


def subdivision_to_bistellar(M, transcript, budget=DEFAULT_EXPANSION_BUDGET):
    """Expand a transcript of starrings into one bistellar transcript."""
    out = Transcript()
    cur = M
    for i, mv in enumerate(transcript.moves):
        if not isinstance(mv, Star):
            raise ValueError(f"move {i} is not a starring: {mv}")
        try:
            out = out + star_move_transcript(cur, mv.A, budget, at=mv.a)
        except BudgetExhaustedError as exc:
            raise BudgetExhaustedError(f"starring {i}: {exc}") from None
        cur = apply_move(cur, mv)
    return out


# -- exchange expansion ---------------------------------------------------


@dataclass(frozen=True)
class LinkFactorization:
    """lk(A) split as (boundary of B) * core * boundaries of the
    simplexes in `spheres`; the data driving an exchange expansion."""

    B: tuple
    core: Complex
    spheres: tuple = ()


@dataclass(frozen=True)
class Witness:
    """Exchange moves replaying the factorization core down to a
    simplex boundary; drives the expansion recursion."""

    moves: tuple = ()

    def __len__(self):
        return len(self.moves)


class ExpansionSession:
    """Bookkeeping for one expansion: a monotone fresh-label counter,
    so labels minted at different recursion depths never collide, plus
    a shared work budget over recursion nodes."""

    def __init__(self, budget=DEFAULT_EXPANSION_BUDGET, floor=0):
        self._next = floor
        self.remaining = budget

    def absorb(self, K):
        vs = K.vertices()
        if vs:
            self._next = max(self._next, vs[-1] + 1)

    def absorb_labels(self, labels):
        for v in labels:
            self._next = max(self._next, v + 1)

    def fresh(self):
        v = self._next
        self._next += 1
        return v

    def charge(self):
        self.remaining -= 1
        if self.remaining < 0:
            raise BudgetExhaustedError("expansion work budget exhausted")


def factor_link(L, session=None):
    """Greedily split off simplex-boundary join factors of L.

    Returns (core, spheres) with L equal to the join of `core` and the
    boundaries of the `spheres` simplexes, and no such factor left in
    the core.  Candidates are minimal nonfaces, largest first."""
    spheres = []
    while True:
        if L.vertices() and is_simplex_boundary(L):
            spheres.append(L.vertices())
            L = _EMPTY
            break
        try:
            cands = _minimal_nonfaces(L)
        except NotImplementedError:
            break
        found = None
        verts = set(L.vertices())
        for W in sorted(cands, key=lambda w: (-len(w), w)):
            rest = L.restrict(verts - set(W))
            if simplex_boundary(W).join(rest) == L:
                found = (W, rest)
                break
        if found is None:
            break
        spheres.append(found[0])
        L = found[1]
    return L, tuple(spheres)


def search_witness(L, budget=DEFAULT_EXPANSION_BUDGET):
    """Find a witness for the core L by seeded bistellar annealing.

    Raises BudgetExhaustedError when the reduction does not reach a
    simplex boundary within the proposal budget."""
    if is_simplex_boundary(L):
        return Witness(())
    end, t = _flip_reduce(L, Schedule(seed=WITNESS_SEED, max_moves=budget))
    if not is_simplex_boundary(end):
        raise BudgetExhaustedError(
            "witness search stalled on a link core with f-vector "
            f"{L.f_vector().counts} after {budget} proposals")
    return Witness(tuple(Exchange(mv.A, mv.B) for mv in t.moves))


def _validate_witness(core, witness):
    cur = core
    for i, mv in enumerate(witness.moves):
        if not isinstance(mv, (Exchange, Bistellar)):
            raise ValueError(f"witness move {i} is not an exchange: {mv}")
        rep = check_move(cur, mv)
        if not rep.legal:
            raise IllegalAtStepError(i, mv, rep)
        cur = apply_move(cur, mv)
    if not is_simplex_boundary(cur):
        raise ValueError("witness does not end at a simplex boundary")


def _relabel_witness_move(mv, ren):
    return type(mv)(simplex(ren.get(v, v) for v in mv.A),
                    simplex(ren.get(v, v) for v in mv.B))


def _star_via_factors(M, A, B, spheres, a):
    """Starring expansion for lk(A) = dB * join of sphere boundaries:
    the link shelling is assembled structurally, no search involved."""
    X = _EMPTY
    sh = ShellingSequence((), ())
    for W in (B,) + tuple(spheres):
        if len(W) < 2:
            continue
        sh = join_boundary_shelling(len(W) - 1, X, sh, labels=W)
        X = simplex_boundary(W).join(X)
    lk = M.link(A)
    if X != lk:
        raise RuntimeError("factor join does not rebuild the link")
    return _star_from_link_shelling(M, A, lk, sh, a)


def _expand(M, A, B, core, spheres, wmoves, session):
    session.charge()
    # the exchange is already bistellar: single move
    if core == _EMPTY and not spheres:
        return Transcript((Bistellar(A, B),))
    # a spherical core is one more join factor; the witness is spent
    if core.vertices() and is_simplex_boundary(core):
        spheres = spheres + (core.vertices(),)
        core = _EMPTY
        wmoves = ()
    if core == _EMPTY:
        # base: lk(A) is a join of simplex boundaries, hence a shellable
        # sphere; star A and B over the same fresh vertex and splice
        a = session.fresh()
        Mp = apply_move(M, Exchange(A, B))
        t1 = _star_via_factors(M, A, B, spheres, a)
        t2 = _star_via_factors(Mp, B, A, spheres, a)
        if apply_transcript(M, t1) != apply_transcript(Mp, t2):
            raise RuntimeError("starred forms disagree in the base case")
        return t1 + invert_transcript(t2)
    if not wmoves:
        raise ValueError(
            "witness exhausted before the core became a simplex boundary")
    first, rest = wmoves[0], wmoves[1:]
    C, D = simplex(first.A), simplex(first.B)
    if len(D) == 1:
        # a singleton traded simplex is a label the witness minted (it
        # cannot be a vertex of the core, or the move would be illegal
        # there); it may collide with ambient or planned labels, so
        # substitute a session-fresh one throughout the witness tail
        d2 = session.fresh()
        ren = {D[0]: d2}
        D = (d2,)
        rest = tuple(_relabel_witness_move(mv, ren) for mv in rest)
        first = Exchange(C, D)
    lkC = core.link(C)
    sub = lkC.restrict(set(lkC.vertices()) - set(D))
    sub_witness = search_witness(sub, session.remaining + 1)
    with_B = spheres + ((B,) if len(B) >= 2 else ())
    with_A = spheres + ((A,) if len(A) >= 2 else ())
    if D not in M:
        # traded simplex absent from the ambient complex: exchange it in
        # around A*C, finish the inner witness, and come back around B*C
        AC = tuple(sorted(A + C))
        BC = tuple(sorted(B + C))
        t_a1 = _expand(M, AC, D, sub, with_B, sub_witness.moves, session)
        M1 = apply_move(M, Exchange(AC, D))
        core1 = apply_move(core, first)
        t_a2 = _expand(M1, A, B, core1, spheres, rest, session)
        M2 = apply_move(M1, Exchange(A, B))
        Mp = apply_move(M, Exchange(A, B))
        t_b = _expand(Mp, BC, D, sub, with_A, sub_witness.moves, session)
        if apply_move(Mp, Exchange(BC, D)) != M2:
            raise RuntimeError("exchange square does not commute")
        return t_a1 + t_a2 + invert_transcript(t_b)
    # traded simplex already present: detach one of its vertices first
    # by starring around it, which frees the witness move to proceed
    u = min(D)
    v = session.fresh()
    lk_u = core.link((u,))
    u_witness = search_witness(lk_u, session.remaining + 1)
    Au = tuple(sorted(A + (u,)))
    Bu = tuple(sorted(B + (u,)))
    t_hat = _expand(M, Au, (v,), lk_u, with_B, u_witness.moves, session)
    Mh = apply_move(M, Exchange(Au, (v,)))
    ren = {u: v}
    core_ren = core.relabel(ren)
    w_mid = tuple(_relabel_witness_move(mv, ren) for mv in wmoves)
    t_mid = _expand(Mh, A, B, core_ren, spheres, w_mid, session)
    M2 = apply_move(Mh, Exchange(A, B))
    Mp = apply_move(M, Exchange(A, B))
    t_hat_p = _expand(Mp, Bu, (v,), lk_u, with_A, u_witness.moves, session)
    if apply_move(Mp, Exchange(Bu, (v,))) != M2:
        raise RuntimeError("starred exchange square does not commute")
    return t_hat + t_mid + invert_transcript(t_hat_p)


def exchange_to_bistellar(M, A, B, factorization, witness,
                          budget=DEFAULT_EXPANSION_BUDGET, session=None):
    """Expand a legal exchange into a bistellar transcript.

    `factorization` must rebuild lk(A) exactly and `witness` must
    replay its core to a simplex boundary; both are checked before any
    work.  The result replays M to the exchange result, and is exactly
    [Bistellar(A, B)] whenever the move is already bistellar."""
    A = simplex(A)
    B = simplex(B)
    mv = Exchange(A, B)
    rep = check_move(M, mv)
    if not rep.legal:
        raise IllegalMoveError(mv, rep)
    if simplex(factorization.B) != B:
        raise ValueError("factorization B-part differs from the move")
    built = simplex_boundary(B).join(factorization.core)
    for W in factorization.spheres:
        built = built.join(simplex_boundary(W))
    if built != M.link(A):
        raise ValueError("factorization does not rebuild lk(A)")
    _validate_witness(factorization.core, witness)
    if session is None:
        session = ExpansionSession(budget)
    session.absorb(M)
    session.absorb_labels(B)
    for w in witness.moves:
        session.absorb_labels(w.A)
        session.absorb_labels(w.B)
    out = _expand(M, A, B, factorization.core,
                  tuple(factorization.spheres), tuple(witness.moves),
                  session)
    if apply_transcript(M, out) != apply_move(M, mv):
        raise RuntimeError("expansion does not replay to the exchange")
    return out


def expand_exchange(M, A, B, budget=DEFAULT_EXPANSION_BUDGET):
    """One-call exchange expansion: factor the link residue, search a
    witness for the core, and expand."""
    A = simplex(A)
    B = simplex(B)
    mv = Exchange(A, B)
    rep = check_move(M, mv)
    if not rep.legal:
        raise IllegalMoveError(mv, rep)
    core, spheres = factor_link(rep.link_factor)
    witness = search_witness(core, budget)
    return exchange_to_bistellar(
        M, A, B, LinkFactorization(B, core, spheres), witness, budget)
