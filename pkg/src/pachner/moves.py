"""Moves on simplicial complexes, as replayable data.

Five families, all exact surgeries on labelled face sets:

* ``Star(A, a)``     -- stellar subdivision: replace st(A, M) by
  a * dA * lk(A, M), where a is a label not used by M.
* ``Weld(a, A)``     -- the inverse: legal when lk(a, M) = dA * L with
  A absent from M; replaces st(a, M) by A * L.
* ``Bistellar(A, B)`` -- legal when lk(A, M) = dB exactly and B is
  absent from M; removes A * dB, inserts dA * B.
* ``Exchange(A, B)`` -- stellar exchange: legal when lk(A, M) factors
  as dB * L with B absent; removes A * dB * L, inserts dA * B * L.
  Star, Weld and Bistellar are the special cases B a new vertex,
  A a vertex, and L = {-}.
* ``Shell(A, B)`` / ``Unshell(A, B)`` -- elementary shelling of the
  facet A * B (A half-interior: A's closure meets the boundary exactly
  in dA, and B * dA lies in the boundary) and its gluing inverse.

``check_move`` never raises: it returns a LegalityReport.  ``apply_move``
checks first and raises IllegalMoveError (carrying the report) on
failure.  Every apply is pure; complexes are immutable.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .core import (
    Complex,
    EMPTY,
    fmt_simplex,
    simplex,
    simplex_boundary,
    NotPseudomanifoldError,
)


@dataclass(frozen=True)
class Star:
    A: tuple
    a: int

    def __str__(self):
        return f"STAR {fmt_simplex(self.A)} {self.a}"


@dataclass(frozen=True)
class Weld:
    a: int
    A: tuple

    def __str__(self):
        return f"WELD {self.a} {fmt_simplex(self.A)}"


@dataclass(frozen=True)
class Bistellar:
    A: tuple
    B: tuple

    def __str__(self):
        return f"FLIP {fmt_simplex(self.A)} ; {fmt_simplex(self.B)}"


@dataclass(frozen=True)
class Exchange:
    A: tuple
    B: tuple

    def __str__(self):
        return f"XCHG {fmt_simplex(self.A)} ; {fmt_simplex(self.B)}"


@dataclass(frozen=True)
class Shell:
    A: tuple
    B: tuple

    def __str__(self):
        return f"SHELL {fmt_simplex(self.A)} ; {fmt_simplex(self.B)}"


@dataclass(frozen=True)
class Unshell:
    A: tuple
    B: tuple

    def __str__(self):
        return f"UNSHELL {fmt_simplex(self.A)} ; {fmt_simplex(self.B)}"


MOVE_KINDS = ("star", "weld", "bistellar", "exchange", "shell", "unshell")


@dataclass(frozen=True)
class LegalityReport:
    """Outcome of a legality check; `link_factor` is the complex L in
    the factorisation lk(A, M) = dB * L when one was established."""

    legal: bool
    reason: str = ""
    link_factor: Complex | None = None


class IllegalMoveError(ValueError):
    """Raised by apply_move; carries the move and its LegalityReport."""

    def __init__(self, move, report):
        super().__init__(f"illegal move {move}: {report.reason}")
        self.move = move
        self.report = report


class IllegalAtStepError(ValueError):
    """A transcript replay failed; carries the zero-based step index."""

    def __init__(self, index, move, report):
        super().__init__(f"step {index}: illegal move {move}: {report.reason}")
        self.index = index
        self.move = move
        self.report = report


# -- legality ----------------------------------------------------------


def _check_exchange(M, A, B):
    """Shared legality core: lk(A, M) = dB * L with B absent from M."""
    if not A:
        return LegalityReport(False, "A must be nonempty")
    if A not in M:
        return LegalityReport(False, f"A = {fmt_simplex(A)} is not in the complex")
    if set(A) & set(B):
        return LegalityReport(False, "A and B share vertices")
    if B in M:
        # covers B = () too: the empty simplex is in every complex
        return LegalityReport(False, f"B = {fmt_simplex(B)} is already in the complex")
    lk = M.link(A)
    L = lk.restrict(set(lk.vertices()) - set(B))
    try:
        joined = simplex_boundary(B).join(L)
    except Exception:  # pragma: no cover - disjoint by construction
        return LegalityReport(False, "B cannot join the residual link factor")
    if joined != lk:
        return LegalityReport(
            False,
            f"lk(A) does not factor as d{fmt_simplex(B)} * L",
        )
    return LegalityReport(True, link_factor=L)


def _check_shell(M, A, B):
    if not A or not B:
        return LegalityReport(False, "A and B must both be nonempty")
    if set(A) & set(B):
        return LegalityReport(False, "A and B share vertices")
    F = tuple(sorted(A + B))
    if F not in M.facets:
        return LegalityReport(False, f"A*B = {fmt_simplex(F)} is not a facet")
    try:
        dM = M.boundary()
    except NotPseudomanifoldError as exc:
        return LegalityReport(False, f"boundary undefined: {exc}")
    boundary_faces = dM.faces()
    closure_A = set()
    for r in range(len(A) + 1):
        closure_A.update(itertools.combinations(A, r))
    dA = closure_A - {tuple(A)}
    if (closure_A & boundary_faces) != dA:
        return LegalityReport(
            False, "closure(A) must meet the boundary exactly in dA")
    for r in range(len(B) + 1):
        for b in itertools.combinations(B, r):
            for a in dA:
                if tuple(sorted(a + b)) not in boundary_faces:
                    return LegalityReport(
                        False, "B * dA is not contained in the boundary")
    return LegalityReport(True)


def _check_unshell(M, A, B):
    if not A or not B:
        return LegalityReport(False, "A and B must both be nonempty")
    if set(A) & set(B):
        return LegalityReport(False, "A and B share vertices")
    F = tuple(sorted(A + B))
    if F in M:
        return LegalityReport(False, f"glued facet {fmt_simplex(F)} already present")
    closure_F = set()
    for r in range(len(F) + 1):
        closure_F.update(itertools.combinations(F, r))
    expected = set()
    for r in range(len(A) + 1):
        for a in itertools.combinations(A, r):
            for s in range(len(B)):
                for b in itertools.combinations(B, s):
                    expected.add(tuple(sorted(a + b)))
    if (closure_F & M.faces()) != expected:
        return LegalityReport(
            False, "the glued facet must meet the complex exactly in A * dB")
    glued = Complex.from_facets(set(M.facets) | {F})
    back = _check_shell(glued, A, B)
    if not back.legal:
        return LegalityReport(False, f"gluing is not a shelling inverse: {back.reason}")
    if Complex.from_facets(set(glued.facets) - {F}) != M:
        return LegalityReport(
            False, "removing the glued facet does not restore the complex")
    return LegalityReport(True)


def check_move(M, move):
    """Legality report for `move` on M.  Never raises."""
    try:
        if isinstance(move, Star):
            return _check_exchange(M, move.A, (move.a,))
        if isinstance(move, Weld):
            return _check_exchange(M, (move.a,), move.A)
        if isinstance(move, Bistellar):
            rep = _check_exchange(M, move.A, move.B)
            if rep.legal and rep.link_factor != Complex.from_facets([]):
                return LegalityReport(
                    False, "lk(A) is not exactly dB (residual factor present)",
                    rep.link_factor)
            return rep
        if isinstance(move, Exchange):
            return _check_exchange(M, move.A, move.B)
        if isinstance(move, Shell):
            return _check_shell(M, move.A, move.B)
        if isinstance(move, Unshell):
            return _check_unshell(M, move.A, move.B)
    except Exception as exc:  # malformed data must yield a report, not a throw
        return LegalityReport(False, f"check failed: {exc}")
    return LegalityReport(False, f"unknown move type {type(move).__name__}")


# -- application -------------------------------------------------------


def _exchange_result(M, A, B, L):
    """Facet-level surgery for a legal exchange: drop the facets
    containing A, insert (A - v) * B * C over v in A, C a facet of L."""
    sa = set(A)
    keep = [f for f in M.facets if not sa <= set(f)]
    new = set()
    for i in range(len(A)):
        rest = A[:i] + A[i + 1:]
        for C in L.facets:
            new.add(tuple(sorted(rest + B + C)))
    return Complex(frozenset(keep) | new, _trusted=True)


def apply_move(M, move):
    """Apply a legal move; raises IllegalMoveError otherwise."""
    report = check_move(M, move)
    if not report.legal:
        raise IllegalMoveError(move, report)
    if isinstance(move, Star):
        return _exchange_result(M, move.A, (move.a,), report.link_factor)
    if isinstance(move, Weld):
        return _exchange_result(M, (move.a,), move.A, report.link_factor)
    if isinstance(move, (Bistellar, Exchange)):
        return _exchange_result(M, move.A, move.B, report.link_factor)
    if isinstance(move, Shell):
        F = tuple(sorted(move.A + move.B))
        return Complex(frozenset(M.facets) - {F}, _trusted=True)
    if isinstance(move, Unshell):
        F = tuple(sorted(move.A + move.B))
        return Complex.from_facets(set(M.facets) | {F})
    raise IllegalMoveError(move, LegalityReport(False, "unknown move type"))


def invert(move):
    """The move undoing `move` on its result complex."""
    if isinstance(move, Star):
        return Weld(move.a, move.A)
    if isinstance(move, Weld):
        return Star(move.A, move.a)
    if isinstance(move, Bistellar):
        return Bistellar(move.B, move.A)
    if isinstance(move, Exchange):
        return Exchange(move.B, move.A)
    if isinstance(move, Shell):
        return Unshell(move.A, move.B)
    if isinstance(move, Unshell):
        return Shell(move.A, move.B)
    raise TypeError(f"unknown move type {type(move).__name__}")


# -- enumeration -------------------------------------------------------


def _minimal_nonfaces(L, max_vertices=16):
    """Vertex sets that are not simplexes of L though every proper
    subset is.  These are the only candidates B with dB contained in L."""
    vs = L.vertices()
    if len(vs) > max_vertices:
        raise NotImplementedError("link too large for nonface enumeration")
    faces = L.faces()
    out = []
    for s in range(2, len(vs) + 1):
        for S in itertools.combinations(vs, s):
            if S in faces:
                continue
            if all(S[:i] + S[i + 1:] in faces for i in range(s)):
                out.append(S)
    return out


def enumerate_moves(M, kind):
    """All legal moves of one family, sorted by (A, B)-data.

    Moves that introduce a new vertex use fresh_vertex(M); the legality
    checker accepts any unused label, but enumeration is canonical.
    """
    fresh = M.fresh_vertex()
    out = []
    if kind == "star":
        for A in sorted(f for f in M.faces() if f):
            out.append(Star(A, fresh))
        return out
    if kind == "weld":
        for a in M.vertices():
            lk = M.link((a,))
            candidates = [(fresh,)] + _minimal_nonfaces(lk)
            for A in candidates:
                mv = Weld(a, A)
                if check_move(M, mv).legal:
                    out.append(mv)
        return sorted(out, key=lambda m: (m.a, m.A))
    if kind == "bistellar":
        from .core import is_simplex_boundary
        for A in sorted(f for f in M.faces() if f):
            lk = M.link(A)
            if not is_simplex_boundary(lk):
                continue
            B = lk.vertices() or (fresh,)
            mv = Bistellar(A, tuple(B))
            if check_move(M, mv).legal:
                out.append(mv)
        return out
    if kind == "exchange":
        for A in sorted(f for f in M.faces() if f):
            lk = M.link(A)
            for B in [(fresh,)] + _minimal_nonfaces(lk):
                mv = Exchange(A, tuple(B))
                if check_move(M, mv).legal:
                    out.append(mv)
        return sorted(out, key=lambda m: (m.A, m.B))
    if kind == "shell":
        for F in M.facet_list():
            for r in range(1, len(F)):
                for A in itertools.combinations(F, r):
                    B = tuple(v for v in F if v not in A)
                    mv = Shell(A, B)
                    if check_move(M, mv).legal:
                        out.append(mv)
        return sorted(out, key=lambda m: (m.A, m.B))
    if kind == "unshell":
        try:
            rim = M.boundary()
        except NotPseudomanifoldError:
            return []
        seen = set()
        for R in rim.facets:
            if not R:
                continue
            for w in list(M.vertices()) + [fresh]:
                if w in R:
                    continue
                F = tuple(sorted(R + (w,)))
                if F in seen:
                    continue
                seen.add(F)
                for r in range(1, len(F)):
                    for A in itertools.combinations(F, r):
                        B = tuple(v for v in F if v not in A)
                        mv = Unshell(A, B)
                        if check_move(M, mv).legal:
                            out.append(mv)
        return sorted(set(out), key=lambda m: (m.A, m.B))
    raise ValueError(f"unknown move kind {kind!r}; expected one of {MOVE_KINDS}")


# -- transcripts -------------------------------------------------------


class TranscriptParseError(ValueError):
    pass


@dataclass(frozen=True)
class Transcript:
    """An ordered list of moves with optional per-move annotation tags."""

    moves: tuple = ()
    notes: tuple = ()

    def __post_init__(self):
        moves = tuple(self.moves)
        notes = tuple(self.notes)
        if len(notes) < len(moves):
            notes = notes + (None,) * (len(moves) - len(notes))
        if len(notes) != len(moves):
            raise ValueError("more notes than moves")
        object.__setattr__(self, "moves", moves)
        object.__setattr__(self, "notes", notes)

    def __len__(self):
        return len(self.moves)

    def __iter__(self):
        return iter(self.moves)

    def __add__(self, other):
        return Transcript(self.moves + other.moves, self.notes + other.notes)


def invert_transcript(t):
    """Reverse the order and invert every move (undoes a replay)."""
    return Transcript(tuple(invert(m) for m in reversed(t.moves)),
                      tuple(reversed(t.notes)))


def apply_transcript(M, t):
    """Replay every move in order; IllegalAtStepError names the first
    failing step."""
    for i, move in enumerate(t.moves):
        report = check_move(M, move)
        if not report.legal:
            raise IllegalAtStepError(i, move, report)
        M = apply_move(M, move)
    return M


def _parse_bracket(tok, where):
    tok = tok.strip()
    if not (tok.startswith("[") and tok.endswith("]")):
        raise TranscriptParseError(f"{where}: expected [..], got {tok!r}")
    inner = tok[1:-1].strip()
    try:
        return simplex(int(x) for x in inner.split()) if inner else EMPTY
    except Exception as exc:
        raise TranscriptParseError(f"{where}: bad simplex {tok!r}") from exc


def _parse_pair(rest, where):
    if ";" not in rest:
        raise TranscriptParseError(f"{where}: expected 'A ; B'")
    left, right = rest.split(";", 1)
    return _parse_bracket(left, where), _parse_bracket(right, where)


def parse_simplex(text):
    """Parse a simplex written as `[v0 v1 ...]` or bare `v0 v1 ...`.

    An empty string (or `[]`) is the empty simplex.  Raises
    TranscriptParseError on anything else.
    """
    tok = text.strip()
    if not tok.startswith("["):
        tok = "[" + tok + "]"
    return _parse_bracket(tok, f"simplex {text!r}")


def parse_move(text):
    """Parse one move line (without annotation)."""
    parts = text.strip().split(None, 1)
    if len(parts) != 2:
        raise TranscriptParseError(f"unparseable move line {text!r}")
    kind, rest = parts[0].upper(), parts[1].strip()
    where = f"move {text!r}"
    if kind == "STAR":
        head, _, tail = rest.rpartition("]")
        A = _parse_bracket(head + "]", where)
        try:
            return Star(A, int(tail.strip()))
        except ValueError as exc:
            raise TranscriptParseError(f"{where}: bad vertex") from exc
    if kind == "WELD":
        head, _, tail = rest.partition("[")
        try:
            a = int(head.strip())
        except ValueError as exc:
            raise TranscriptParseError(f"{where}: bad vertex") from exc
        return Weld(a, _parse_bracket("[" + tail, where))
    if kind == "FLIP":
        return Bistellar(*_parse_pair(rest, where))
    if kind == "XCHG":
        return Exchange(*_parse_pair(rest, where))
    if kind == "SHELL":
        return Shell(*_parse_pair(rest, where))
    if kind == "UNSHELL":
        return Unshell(*_parse_pair(rest, where))
    raise TranscriptParseError(f"unknown move keyword {kind!r}")


def loads_transcript(text):
    moves, notes = [], []
    for raw in text.splitlines():
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if " # " in line:
            line, note = line.split(" # ", 1)
            notes.append(note.strip())
        else:
            notes.append(None)
        moves.append(parse_move(line))
    return Transcript(tuple(moves), tuple(notes))


def dumps_transcript(t):
    lines = []
    for move, note in zip(t.moves, t.notes):
        lines.append(f"{move} # {note}" if note else str(move))
    return "\n".join(lines) + ("\n" if lines else "")


def load_transcript(path):
    with open(path, encoding="utf-8") as fh:
        return loads_transcript(fh.read())


def dump_transcript(t, path):
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dumps_transcript(t))


# -- derived subdivision ----------------------------------------------


def derived_subdivision_transcript(K):
    """Starring every simplex of dimension >= 1 in decreasing dimension
    order (lexicographic within a dimension) produces the first derived
    subdivision; the new labels are handed out by the fresh counter."""
    moves = []
    M = K
    for d in range(K.dim, 0, -1):
        for A in K.faces_of_dim(d):
            mv = Star(A, M.fresh_vertex())
            moves.append(mv)
            M = apply_move(M, mv)
    return Transcript(tuple(moves))


def derived_subdivision(K):
    """The first derived (barycentric) subdivision of K."""
    return apply_transcript(K, derived_subdivision_transcript(K))
