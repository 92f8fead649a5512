"""Abstract simplicial complexes stored by their facets.

A simplex is a strictly increasing tuple of non-negative integer vertex
labels.  The empty tuple () is the empty simplex; every complex contains
it, so the complex written {-} below (facet set {()}) is the smallest
complex of all.  It behaves as the boundary of a point: joining with it
is the identity, and it is the link of every facet.  Keeping it a
first-class citizen is what lets the move calculus treat degenerate
link factors uniformly instead of special-casing them.

A complex is determined by its facets (inclusion-maximal simplexes).
All vertex labels are non-negative integers; `fresh_vertex` hands out
1 + the largest label in use, and 0 for {-}.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass


class MalformedSimplexError(ValueError):
    """A simplex literal with duplicate, negative, or non-integer labels."""


class AbsentSimplexError(KeyError):
    """An operation referenced a simplex the complex does not contain."""


class JoinCollisionError(ValueError):
    """Join of complexes whose vertex label sets overlap."""


class NotPseudomanifoldError(ValueError):
    """Boundary undefined: input not pure, or a ridge lies in 3+ facets."""


class BudgetExhaustedError(RuntimeError):
    """A bounded search ran out of budget before reaching a verdict."""


# A simplex is just a sorted tuple of ints; these helpers keep the
# convention honest at module boundaries.

EMPTY = ()


def simplex(vertices):
    """Normalise `vertices` into a simplex tuple, validating labels."""
    vs = tuple(sorted(vertices))
    for v in vs:
        if not isinstance(v, int) or isinstance(v, bool) or v < 0:
            raise MalformedSimplexError(f"bad vertex label {v!r}")
    for a, b in zip(vs, vs[1:]):
        if a == b:
            raise MalformedSimplexError(f"duplicate vertex {a} in {vertices!r}")
    return vs


def fmt_simplex(s):
    """Render a simplex as `[v0 v1 ...]` (the transcript-file syntax)."""
    return "[" + " ".join(str(v) for v in s) + "]"


def merge_simplexes(a, b):
    """Union of two disjoint simplexes, kept sorted."""
    if set(a) & set(b):
        raise JoinCollisionError(f"simplexes {a} and {b} share vertices")
    return tuple(sorted(a + b))


def faces_of_simplex(s):
    """All subsets of a simplex, including () and s itself."""
    out = []
    for r in range(len(s) + 1):
        out.extend(itertools.combinations(s, r))
    return out


def proper_faces(s):
    """All subsets of s except s itself (the boundary of the simplex)."""
    out = []
    for r in range(len(s)):
        out.extend(itertools.combinations(s, r))
    return out


@dataclass(frozen=True)
class FVector:
    """Face counts by dimension (0..n) and the Euler characteristic."""

    counts: tuple
    euler: int

    def __str__(self):
        return f"f = ({', '.join(str(c) for c in self.counts)}); chi = {self.euler}"


class Complex:
    """An abstract simplicial complex, immutable, stored by facets.

    Construct via `from_facets`; the raw constructor trusts its input to
    be normalised (sorted tuples, mutually incomparable, nonempty set).
    """

    __slots__ = ("_facets", "_facet_sets", "_faces", "_by_dim", "_vertices",
                 "_boundary")

    def __init__(self, facets, _trusted=False):
        if not _trusted:
            raise TypeError("use Complex.from_facets(...)")
        self._facets = facets            # frozenset of sorted tuples
        self._facet_sets = None          # list of (tuple, frozenset) pairs
        self._faces = None               # frozenset of all faces incl. ()
        self._by_dim = None              # dict dim -> sorted tuple of faces
        self._vertices = None
        self._boundary = None            # cached boundary complex

    @staticmethod
    def from_facets(facets):
        """Build a complex from an iterable of vertex collections.

        Non-maximal entries are dropped.  No entries at all gives {-},
        the complex whose only simplex is the empty one.
        """
        normalised = {simplex(f) for f in facets}
        if not normalised:
            return Complex(frozenset({EMPTY}), _trusted=True)
        keep = []
        as_sets = []
        for f in sorted(normalised, key=len, reverse=True):
            fs = set(f)
            if not any(fs <= other for other in as_sets):
                keep.append(f)
                as_sets.append(fs)
        return Complex(frozenset(keep), _trusted=True)

    # -- basic queries ------------------------------------------------

    @property
    def facets(self):
        return self._facets

    def facet_list(self):
        """Facets in deterministic (length, lexicographic) order."""
        return sorted(self._facets, key=lambda f: (len(f), f))

    @property
    def dim(self):
        return max(len(f) for f in self._facets) - 1

    def faces(self):
        """Every simplex of the complex, the empty one included."""
        if self._faces is None:
            out = set()
            for f in self._facets:
                for r in range(len(f) + 1):
                    out.update(itertools.combinations(f, r))
            self._faces = frozenset(out)
        return self._faces

    def faces_of_dim(self, d):
        """Sorted tuple of the d-dimensional simplexes (d = -1 gives ())."""
        if self._by_dim is None:
            by = {}
            for f in self.faces():
                by.setdefault(len(f) - 1, []).append(f)
            self._by_dim = {d: tuple(sorted(v)) for d, v in by.items()}
        return self._by_dim.get(d, ())

    def vertices(self):
        if self._vertices is None:
            vs = set()
            for f in self._facets:
                vs.update(f)
            self._vertices = tuple(sorted(vs))
        return self._vertices

    def __contains__(self, s):
        return tuple(s) in self.faces()

    def n_faces(self):
        """Number of nonempty faces."""
        return len(self.faces()) - 1

    def f_vector(self):
        counts = [0] * (self.dim + 1)
        for f in self.faces():
            if f:
                counts[len(f) - 1] += 1
        euler = sum(c if d % 2 == 0 else -c for d, c in enumerate(counts))
        return FVector(tuple(counts), euler)

    def is_pure(self):
        return len({len(f) for f in self._facets}) == 1

    def fresh_vertex(self):
        """Smallest label strictly above every label in use (0 for {-})."""
        vs = self.vertices()
        return vs[-1] + 1 if vs else 0

    # -- constructions ------------------------------------------------

    def _facet_pairs(self):
        if self._facet_sets is None:
            self._facet_sets = [(f, frozenset(f)) for f in self._facets]
        return self._facet_sets

    def link(self, a):
        """lk(a, K): all b with a*b in K.  lk((), K) = K."""
        a = tuple(a)
        if a not in self:
            raise AbsentSimplexError(f"{a} is not a simplex of the complex")
        sa = set(a)
        tops = [tuple(v for v in f if v not in sa)
                for f, fs in self._facet_pairs() if sa <= fs]
        # facets containing `a` give mutually incomparable remainders
        return Complex(frozenset(tops), _trusted=True)

    def star(self, a):
        """st(a, K) = a * lk(a, K): closure of the facets containing a."""
        a = tuple(a)
        if a not in self:
            raise AbsentSimplexError(f"{a} is not a simplex of the complex")
        sa = set(a)
        tops = [f for f, fs in self._facet_pairs() if sa <= fs]
        return Complex(frozenset(tops), _trusted=True)

    def join(self, other):
        """K * L: all unions a+b; label sets must be disjoint."""
        if set(self.vertices()) & set(other.vertices()):
            raise JoinCollisionError("join arguments share vertex labels")
        tops = frozenset(tuple(sorted(f + g))
                         for f in self._facets for g in other._facets)
        return Complex(tops, _trusted=True)

    def boundary(self):
        """Subcomplex of ridges lying in exactly one facet, closed up.

        Defined for pure complexes whose ridges lie in at most two
        facets; {-} is returned when every ridge is interior.
        """
        if self._boundary is not None:
            return self._boundary
        if not self.is_pure():
            raise NotPseudomanifoldError("boundary of a non-pure complex")
        if self.dim < 0:
            out = Complex(frozenset({EMPTY}), _trusted=True)
            self._boundary = out
            return out
        degree = {}
        for f in self._facets:
            for r in itertools.combinations(f, len(f) - 1):
                degree[r] = degree.get(r, 0) + 1
        bad = [r for r, d in degree.items() if d > 2]
        if bad:
            raise NotPseudomanifoldError(
                f"ridge {bad[0]} lies in {degree[bad[0]]} facets")
        rim = [r for r, d in degree.items() if d == 1]
        out = (Complex(frozenset({EMPTY}), _trusted=True) if not rim
               else Complex(frozenset(rim), _trusted=True))
        self._boundary = out
        return out

    def relabel(self, mapping):
        """Apply a vertex relabelling {old: new}; must stay injective."""
        tops = set()
        for f in self._facets:
            g = tuple(sorted(mapping.get(v, v) for v in f))
            if len(set(g)) != len(f):
                raise MalformedSimplexError("relabelling collapses a simplex")
            tops.add(g)
        out = Complex.from_facets(tops)
        if len(out.faces()) != len(self.faces()):
            raise MalformedSimplexError("relabelling is not injective")
        return out

    def restrict(self, verts):
        """Induced subcomplex on the given vertex set."""
        w = set(verts)
        return Complex.from_facets(
            tuple(v for v in f if v in w) for f in self._facets)

    # -- identity -----------------------------------------------------

    def __eq__(self, other):
        return isinstance(other, Complex) and self._facets == other._facets

    def __hash__(self):
        return hash(self._facets)

    def __repr__(self):
        fs = self.facet_list()
        shown = ", ".join(fmt_simplex(f) for f in fs[:6])
        if len(fs) > 6:
            shown += f", ... ({len(fs)} facets)"
        return f"Complex<{shown or '-'}>"


# -- canonical small complexes ---------------------------------------


def full_simplex(verts):
    """The closure of a single simplex on the given labels."""
    return Complex.from_facets([simplex(verts)])


def simplex_boundary(verts):
    """The boundary complex of a simplex: every proper subset of `verts`.

    With no vertices this is {-}, the boundary of a point.
    """
    vs = simplex(verts)
    if not vs:
        return Complex.from_facets([])
    return Complex.from_facets(itertools.combinations(vs, len(vs) - 1))


def standard_sphere(n, offset=0):
    """Boundary of the (n+1)-simplex on labels offset..offset+n+1."""
    return simplex_boundary(range(offset, offset + n + 2))


def is_simplex_boundary(K):
    """True iff K is the full boundary complex of the simplex on its
    own vertex set (a minimal sphere, any labels)."""
    vs = K.vertices()
    if not vs:
        return len(K.faces()) == 1  # {-}: boundary of a point
    if len(vs) > 24:
        return False
    return len(K.faces()) == 2 ** len(vs) - 1 and tuple(vs) not in K


# -- isomorphism ------------------------------------------------------


def _vertex_profiles(K):
    prof = {v: [0] * (K.dim + 1) for v in K.vertices()}
    for f in K.faces():
        for v in f:
            prof[v][len(f) - 1] += 1
    base = {v: tuple(p) for v, p in prof.items()}
    # one refinement round: fold in the multiset of neighbour profiles
    adj = {v: [] for v in K.vertices()}
    for e in K.faces_of_dim(1):
        adj[e[0]].append(e[1])
        adj[e[1]].append(e[0])
    return {v: (base[v], tuple(sorted(base[u] for u in adj[v])))
            for v in K.vertices()}


def isomorphic(K, L, budget=500_000):
    """Search for a vertex bijection identifying K with L.

    Returns the mapping {v_K: v_L} or None.  Backtracking with
    profile-class pruning; raises BudgetExhaustedError (carrying the
    partial assignment) if the node budget runs out first.
    """
    if K.f_vector() != L.f_vector():
        return None
    pk, pl = _vertex_profiles(K), _vertex_profiles(L)
    classes = {}
    for v, p in pl.items():
        classes.setdefault(p, []).append(v)
    if sorted(pk.values()) != sorted(pl.values()):
        return None

    faces_l = L.faces()
    by_vertex = {v: [] for v in K.vertices()}
    for f in K.faces():
        for v in f:
            by_vertex[v].append(f)

    # most-constrained vertices first
    order = sorted(K.vertices(), key=lambda v: (len(classes[pk[v]]), v))
    mapping = {}
    used = set()
    nodes = 0

    def consistent(v):
        for f in by_vertex[v]:
            img = []
            for u in f:
                w = mapping.get(u)
                if w is None:
                    break
                img.append(w)
            else:
                if tuple(sorted(img)) not in faces_l:
                    return False
        return True

    def extend(i):
        nonlocal nodes
        if i == len(order):
            return True
        v = order[i]
        for w in classes[pk[v]]:
            if w in used:
                continue
            nodes += 1
            if nodes > budget:
                raise BudgetExhaustedError(
                    f"isomorphism search exceeded {budget} nodes",
                    dict(mapping))
            mapping[v] = w
            used.add(w)
            if consistent(v) and extend(i + 1):
                return True
            del mapping[v]
            used.discard(w)
        return False

    return dict(mapping) if extend(0) else None


# -- facet files ------------------------------------------------------
#
# One facet per line, vertex labels as space-separated decimal numbers.
# Blank lines and lines starting with '#' are ignored.


def loads_complex(text):
    tops = []
    for ln, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        try:
            tops.append([int(tok) for tok in line.split()])
        except ValueError as exc:
            raise MalformedSimplexError(f"line {ln}: {raw!r}") from exc
    return Complex.from_facets(tops)


def dumps_complex(K):
    lines = [" ".join(str(v) for v in f) for f in K.facet_list() if f]
    if not lines:
        return "# empty complex\n"
    return "\n".join(lines) + "\n"


def load_complex(path):
    with open(path, encoding="utf-8") as fh:
        return loads_complex(fh.read())


def dump_complex(K, path):
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dumps_complex(K))
