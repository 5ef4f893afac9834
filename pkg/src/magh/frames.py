"""Frames, geodesically simple chains, four-cuts, and the invariant m_X.

The frame of a proper chain keeps the endpoints and every interior point
that is NOT strictly smooth between its neighbors. A chain is geodesically
simple when it has the same length as its frame. For each length grading,
the geodesically simple chains split by frame into subcomplexes whose
direct sum computes magnitude homology below the threshold m_X, the
minimum length of a four-cut.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .algebra import ChainComplexZ, SparseIntMatrix
from .chains import (
    ProperChain,
    boundary,
    chain_length,
    enumerate_proper_chains,
    is_strictly_smooth,
)
from .errors import NotASubcomplex
from .metric import format_rational


def singular_positions(space, points):
    """Indices into the chain that survive into the frame."""
    keep = [0]
    for i in range(1, len(points) - 1):
        if not is_strictly_smooth(space, points[i - 1], points[i], points[i + 1]):
            keep.append(i)
    if len(points) > 1:
        keep.append(len(points) - 1)
    return tuple(keep)


def frame(space, chain):
    """The subtuple of singular points of a proper chain.

    For a geodesically simple chain the frame is itself a proper chain with
    the same endpoints. Without simplicity the subtuple can fail properness
    (adjacent equal entries), so this returns a bare tuple and properness
    is only asserted where the decomposition relies on it.
    """
    pts = chain.points if isinstance(chain, ProperChain) else tuple(chain)
    return tuple(pts[i] for i in singular_positions(space, pts))


def is_geodesically_simple(space, chain):
    """True when the chain's length equals its frame's length."""
    if not isinstance(chain, ProperChain):
        chain = ProperChain.from_points(space, chain)
    return chain_length(space, frame(space, chain)) == chain.length


def is_frame(space, points):
    """True when the tuple is a proper chain equal to its own frame.

    Exactly these tuples appear as frames of geodesically simple chains,
    and only for them does the frame subcomplex have the chain itself as
    bottom generator.
    """
    pts = tuple(points)
    if len(pts) < 2:
        return False
    if any(a == b for a, b in zip(pts, pts[1:])):
        return False
    ch = ProperChain(pts, chain_length(space, pts))
    return frame(space, ch) == pts


def _strictly_between(space, a, b):
    """Points c distinct from a, b with d(a,b) = d(a,c) + d(c,b)."""
    dist = space.dist
    dab = dist[a][b]
    return [
        c
        for c in range(space.n)
        if c != a and c != b and dab == dist[a][c] + dist[c][b]
    ]


def is_realized_frame(space, points):
    """True when inserting interval points into segments preserves the frame.

    The tuple must equal its own frame, and no interior frame point may be
    smoothable by insertions: for a junction x_i, no pair (L, R), with L
    the frame point x_{i-1} or any point strictly between x_{i-1} and x_i,
    and R likewise on the other side, may satisfy d(L, R) = d(L, x_i) +
    d(x_i, R). Under exactly this condition the geodesically simple chains
    with frame F are all ascending-chain insertions into F, which is what
    the interval-poset tensor model counts. A junction of length >= m_X
    can be smoothable: on the 6-cycle, inserting 2 after the 1 in frame
    (0, 1, 4) smooths the 1, and the two homology routes genuinely
    disagree at degree 3. Pair frames have no junctions and always
    qualify.
    """
    pts = tuple(points)
    if not is_frame(space, pts):
        return False
    dist = space.dist
    for i in range(1, len(pts) - 1):
        xi = pts[i]
        left = [pts[i - 1]] + _strictly_between(space, pts[i - 1], xi)
        right = [pts[i + 1]] + _strictly_between(space, xi, pts[i + 1])
        for lpt in left:
            for rpt in right:
                if lpt == pts[i - 1] and rpt == pts[i + 1]:
                    continue
                if dist[lpt][rpt] == dist[lpt][xi] + dist[xi][rpt]:
                    return False
    return True


def simple_chains_by_frame(space, l, n_top, cap=None):
    """Geodesically simple chains of length l, keyed by frame then degree.

    Degrees run 1..n_top; degree-0 chains carry no frame data and are
    excluded. Keys are sorted lexicographically, bases lexicographically
    within each degree.
    """
    l = Fraction(l)
    partition = {}
    for n in range(1, n_top + 1):
        for ch in enumerate_proper_chains(space, n, cap).get(l, []):
            f = frame(space, ch)
            if chain_length(space, f) != ch.length:
                continue
            # simple chains have proper frames
            assert all(a != b for a, b in zip(f, f[1:]))
            partition.setdefault(f, {}).setdefault(n, []).append(ch)
    return {f: partition[f] for f in sorted(partition)}


def _complex_from_bases(space, bases_by_degree, lo, hi):
    """Assemble the subcomplex spanned by the given chains, checking closure.

    Every boundary term of every basis element must again lie in the basis
    one degree down (NotASubcomplex otherwise); at the bottom degree the
    boundary must vanish outright.
    """
    sizes = []
    boundaries = {}
    index = {}
    for k in range(lo, hi + 1):
        basis = bases_by_degree.get(k, [])
        sizes.append(len(basis))
        index[k] = {ch.points: r for r, ch in enumerate(basis)}
    for k in range(lo, hi + 1):
        basis = bases_by_degree.get(k, [])
        if k == lo:
            for ch in basis:
                if boundary(space, ch):
                    raise NotASubcomplex(
                        f"chain {ch.points} at bottom degree {k} has nonzero boundary"
                    )
            continue
        mat = SparseIntMatrix(sizes[k - 1 - lo], len(basis))
        for c, ch in enumerate(basis):
            for term, coeff in boundary(space, ch).items():
                r = index[k - 1].get(term.points)
                if r is None:
                    raise NotASubcomplex(
                        f"boundary term {term.points} of {ch.points} "
                        f"is outside the subcomplex basis at degree {k - 1}"
                    )
                mat.add(r, c, coeff)
        boundaries[k] = mat
    return ChainComplexZ(lo, sizes, boundaries)


def frame_subcomplex(space, f, n_top, cap=None):
    """The subcomplex of geodesically simple chains with the given frame.

    Degrees run from the frame's own degree up to n_top. The basis at each
    degree is filtered out of the full enumeration, independently of any
    structure theory about where inserted points may sit.
    """
    f = tuple(f)
    l = chain_length(space, f)
    lo = len(f) - 1
    if lo < 1:
        raise ValueError(f"a frame needs at least two points, got {f}")
    if n_top < lo:
        raise ValueError(f"n_top {n_top} below frame degree {lo}")
    bases = {}
    for n in range(lo, n_top + 1):
        bases[n] = [
            ch
            for ch in enumerate_proper_chains(space, n, cap).get(l, [])
            if frame(space, ch) == f and chain_length(space, f) == ch.length
        ]
    return _complex_from_bases(space, bases, lo, n_top)


def simp_decomposition(space, l, n_top, cap=None):
    """All frame subcomplexes of one length grading, keyed by frame.

    The bases partition the geodesically simple chains of length l with
    degrees 1..n_top. For l = 0 there are no positive-degree chains and the
    map is empty.
    """
    l = Fraction(l)
    if l <= 0:
        return {}
    out = {}
    for f, by_degree in simple_chains_by_frame(space, l, n_top, cap).items():
        lo = len(f) - 1
        out[f] = _complex_from_bases(space, by_degree, lo, n_top)
    return out


@dataclass(frozen=True)
class FourCut:
    """A proper 3-chain whose frame is just its endpoints, cut short.

    Both interior points are strictly smooth, yet d(x_0, x_3) is strictly
    less than the chain's length: the two geodesic segments do not
    concatenate to a geodesic.
    """

    points: tuple
    length: Fraction

    def to_json_dict(self):
        return {"points": list(self.points), "length": format_rational(self.length)}


def four_cuts(space):
    """All four-cuts, sorted by (length, points)."""
    n = space.n
    dist = space.dist
    out = []
    for x0 in range(n):
        for x1 in range(n):
            if x1 == x0:
                continue
            for x2 in range(n):
                if x2 == x1:
                    continue
                if not is_strictly_smooth(space, x0, x1, x2):
                    continue
                base = dist[x0][x2]
                for x3 in range(n):
                    if x3 == x2:
                        continue
                    if not is_strictly_smooth(space, x1, x2, x3):
                        continue
                    total = base + dist[x2][x3]
                    if dist[x0][x3] < total:
                        out.append(FourCut((x0, x1, x2, x3), total))
    out.sort(key=lambda c: (c.length, c.points))
    return out


@dataclass(frozen=True)
class MxResult:
    """The invariant m_X: minimum four-cut length, or None for +infinity."""

    value: object
    witness: object

    @property
    def is_infinite(self):
        return self.value is None

    def to_json_dict(self):
        return {
            "m_x": "inf" if self.value is None else format_rational(self.value),
            "witness": None if self.witness is None else list(self.witness),
        }


def m_x(space):
    """Minimum length of a four-cut, with a lexicographically-first witness.

    Spaces without four-cuts (trees, complete graphs, ...) get value None,
    an explicit infinity: the frame decomposition then computes magnitude
    homology at every positive grading.
    """
    cuts = four_cuts(space)
    if not cuts:
        return MxResult(None, None)
    first = cuts[0]
    return MxResult(first.length, first.points)
