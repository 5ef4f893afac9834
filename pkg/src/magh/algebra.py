"""Exact integer linear algebra and chain complexes over Z.

Everything here is exact: Smith normal form by integer row/column
operations, homology of finitely generated complexes as (betti, torsion),
and tensor products of complexes. Degrees may be negative; reduced
complexes of order complexes start at degree -1.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction

from .errors import DegreeOutOfRange
from .metric import format_rational, parse_rational
from . import chains as _chains


class SparseIntMatrix:
    """A rows x cols integer matrix stored as {(r, c): nonzero int}."""

    def __init__(self, rows, cols, entries=None):
        if rows < 0 or cols < 0:
            raise ValueError("matrix dimensions must be nonnegative")
        self.rows = rows
        self.cols = cols
        self.entries = {}
        if entries:
            for (r, c), v in entries.items():
                self.add(r, c, v)
        self._by_col = None

    @classmethod
    def from_dense(cls, dense):
        rows = len(dense)
        cols = len(dense[0]) if rows else 0
        m = cls(rows, cols)
        for r, row in enumerate(dense):
            if len(row) != cols:
                raise ValueError("ragged dense matrix")
            for c, v in enumerate(row):
                if v:
                    m.add(r, c, v)
        return m

    @classmethod
    def zero(cls, rows, cols):
        return cls(rows, cols)

    def add(self, r, c, v):
        if not 0 <= r < self.rows or not 0 <= c < self.cols:
            raise IndexError(f"({r}, {c}) outside {self.rows}x{self.cols}")
        if not isinstance(v, int):
            raise TypeError(f"entries must be int, got {type(v).__name__}")
        new = self.entries.get((r, c), 0) + v
        if new:
            self.entries[(r, c)] = new
        else:
            self.entries.pop((r, c), None)
        self._by_col = None

    def __getitem__(self, key):
        return self.entries.get(key, 0)

    def is_zero(self):
        return not self.entries

    @property
    def nnz(self):
        return len(self.entries)

    def column_entries(self, c):
        """List of (row, value) for one column, cached for repeated use."""
        if self._by_col is None:
            by_col = [[] for _ in range(self.cols)]
            for (r, cc), v in sorted(self.entries.items()):
                by_col[cc].append((r, v))
            self._by_col = by_col
        return self._by_col[c]

    def matmul(self, other):
        if self.cols != other.rows:
            raise ValueError(
                f"cannot multiply {self.rows}x{self.cols} by {other.rows}x{other.cols}"
            )
        out = SparseIntMatrix(self.rows, other.cols)
        other_rows = {}
        for (r, c), v in other.entries.items():
            other_rows.setdefault(r, []).append((c, v))
        acc = {}
        for (r, k), v in self.entries.items():
            for c, w in other_rows.get(k, ()):
                key = (r, c)
                acc[key] = acc.get(key, 0) + v * w
        for key, v in acc.items():
            if v:
                out.entries[key] = v
        return out

    def transpose(self):
        out = SparseIntMatrix(self.cols, self.rows)
        out.entries = {(c, r): v for (r, c), v in self.entries.items()}
        return out

    def to_dense(self):
        dense = [[0] * self.cols for _ in range(self.rows)]
        for (r, c), v in self.entries.items():
            dense[r][c] = v
        return dense

    def __eq__(self, other):
        if not isinstance(other, SparseIntMatrix):
            return NotImplemented
        return (
            self.rows == other.rows
            and self.cols == other.cols
            and self.entries == other.entries
        )

    def __repr__(self):
        return f"<SparseIntMatrix {self.rows}x{self.cols} nnz={self.nnz}>"


def snf(matrix):
    """Invariant factors of an integer matrix (Smith normal form diagonal).

    Returns a tuple (d_1, ..., d_r) of positive integers with d_i | d_{i+1};
    r is the rank. Pivoting always picks a minimum-magnitude nonzero entry,
    which keeps intermediate integers small on the matrices this package
    produces.
    """
    if isinstance(matrix, SparseIntMatrix):
        a = matrix.to_dense()
        m, n = matrix.rows, matrix.cols
    else:
        a = [list(row) for row in matrix]
        m = len(a)
        n = len(a[0]) if m else 0
    factors = []
    t = 0
    while t < m and t < n:
        best = None
        for i in range(t, m):
            row = a[i]
            for j in range(t, n):
                v = row[j]
                if v and (best is None or abs(v) < best[0]):
                    best = (abs(v), i, j)
                    if best[0] == 1:
                        break
            if best and best[0] == 1:
                break
        if best is None:
            break
        _, bi, bj = best
        if bi != t:
            a[t], a[bi] = a[bi], a[t]
        if bj != t:
            for row in a:
                row[t], row[bj] = row[bj], row[t]
        while True:
            if a[t][t] < 0:
                a[t] = [-v for v in a[t]]
            p = a[t][t]
            # clear column t; floor quotients leave remainders in [0, p)
            dirty = None
            for i in range(t + 1, m):
                v = a[i][t]
                if v:
                    qt = v // p
                    if qt:
                        pivot_row = a[t]
                        a[i] = [x - qt * y for x, y in zip(a[i], pivot_row)]
                    if a[i][t]:
                        dirty = i
            if dirty is not None:
                a[t], a[dirty] = a[dirty], a[t]
                continue
            # column t is now p*e_t, so clearing row t only touches row t
            dirty = None
            for j in range(t + 1, n):
                v = a[t][j]
                if v:
                    a[t][j] = v % p
                    if a[t][j]:
                        dirty = j
            if dirty is not None:
                for row in a:
                    row[t], row[dirty] = row[dirty], row[t]
                continue
            # cross is clean; enforce divisibility across the rest
            bad = None
            for i in range(t + 1, m):
                row = a[i]
                for j in range(t + 1, n):
                    if row[j] % p:
                        bad = i
                        break
                if bad is not None:
                    break
            if bad is None:
                break
            pivot_row = a[t]
            a[t] = [x + y for x, y in zip(pivot_row, a[bad])]
        factors.append(a[t][t])
        t += 1
    for d, e in zip(factors, factors[1:]):
        assert e % d == 0
    return tuple(factors)


def integer_rank(matrix):
    """Rank of an integer matrix (number of invariant factors)."""
    return len(snf(matrix))


def _factorize(n):
    """Prime factorization of a positive integer by trial division."""
    out = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1 if d == 2 else 2
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def merge_invariant_factors(factor_lists):
    """Invariant factors of a direct sum given each summand's factors.

    Splits everything into prime-power elementary divisors, then rebuilds
    the divisibility chain by pairing the k-th largest power of each prime.
    """
    exps = {}
    for factors in factor_lists:
        for f in factors:
            if f == 1:
                continue
            for p, e in _factorize(f).items():
                exps.setdefault(p, []).append(e)
    if not exps:
        return ()
    for p in exps:
        exps[p].sort(reverse=True)
    width = max(len(v) for v in exps.values())
    chain = []
    for k in range(width):
        val = 1
        for p, powers in exps.items():
            if k < len(powers):
                val *= p ** powers[k]
        chain.append(val)
    chain.reverse()
    return tuple(chain)


@dataclass(frozen=True)
class HomologyGroup:
    """A finitely generated abelian group: Z^betti + sum of Z/d_i."""

    betti: int
    torsion: tuple = ()

    def __post_init__(self):
        for d, e in zip(self.torsion, self.torsion[1:]):
            assert e % d == 0, f"torsion {self.torsion} is not a divisor chain"
        assert all(d > 1 for d in self.torsion)

    def is_trivial(self):
        return self.betti == 0 and not self.torsion

    def __str__(self):
        parts = []
        if self.betti == 1:
            parts.append("Z")
        elif self.betti > 1:
            parts.append(f"Z^{self.betti}")
        parts.extend(f"Z/{d}" for d in self.torsion)
        return " + ".join(parts) if parts else "0"

    @staticmethod
    def direct_sum(groups):
        groups = list(groups)
        betti = sum(g.betti for g in groups)
        torsion = merge_invariant_factors([g.torsion for g in groups])
        return HomologyGroup(betti, torsion)


TRIVIAL_GROUP = HomologyGroup(0, ())


class ChainComplexZ:
    """A bounded chain complex of free Z-modules.

    Degrees run lo..hi inclusive. `boundaries[k]` is the map from degree k
    to degree k-1 for lo < k <= hi; the map out of degree lo is zero by
    convention (there is nothing below). Construction checks the square of
    the boundary unless told not to.
    """

    def __init__(self, lo, sizes, boundaries=None, check=True):
        self.lo = lo
        self.sizes = list(sizes)
        if any(s < 0 for s in self.sizes):
            raise ValueError("negative dimension")
        self.boundaries = {}
        boundaries = boundaries or {}
        for k in range(lo + 1, lo + len(self.sizes)):
            mat = boundaries.get(k)
            if mat is None:
                mat = SparseIntMatrix.zero(self.size(k - 1), self.size(k))
            if mat.rows != self.size(k - 1) or mat.cols != self.size(k):
                raise ValueError(
                    f"boundary at degree {k} is {mat.rows}x{mat.cols}, "
                    f"expected {self.size(k - 1)}x{self.size(k)}"
                )
            self.boundaries[k] = mat
        for k in list(boundaries):
            if not lo < k <= self.hi:
                raise ValueError(f"boundary at degree {k} outside range")
        if check:
            self.check_d_squared()
        self._snf_cache = {}

    @property
    def hi(self):
        return self.lo + len(self.sizes) - 1

    def degrees(self):
        return range(self.lo, self.hi + 1)

    def size(self, k):
        if not self.lo <= k <= self.hi:
            return 0
        return self.sizes[k - self.lo]

    def boundary(self, k):
        if not self.lo < k <= self.hi:
            raise DegreeOutOfRange(k, self.lo + 1, self.hi)
        return self.boundaries[k]

    def check_d_squared(self):
        for k in range(self.lo + 2, self.hi + 1):
            prod = self.boundaries[k - 1].matmul(self.boundaries[k])
            if not prod.is_zero():
                raise ValueError(f"boundary squared is nonzero at degree {k}")

    def _factors(self, k):
        """Invariant factors of the boundary map at degree k (cached)."""
        if not self.lo < k <= self.hi:
            return ()
        if k not in self._snf_cache:
            self._snf_cache[k] = snf(self.boundaries[k])
        return self._snf_cache[k]

    def homology(self, k):
        if not self.lo <= k <= self.hi:
            raise DegreeOutOfRange(k, self.lo, self.hi)
        rank_out = len(self._factors(k))
        factors_in = self._factors(k + 1)
        betti = self.size(k) - rank_out - len(factors_in)
        assert betti >= 0
        torsion = tuple(d for d in factors_in if d > 1)
        return HomologyGroup(betti, torsion)

    def homology_or_trivial(self, k):
        """Homology at k, with degrees outside the range counting as 0."""
        if not self.lo <= k <= self.hi:
            return TRIVIAL_GROUP
        return self.homology(k)

    def homology_all(self):
        return {k: self.homology(k) for k in self.degrees()}

    def euler_characteristic(self):
        return sum((1 if k % 2 == 0 else -1) * self.size(k) for k in self.degrees())

    def total_dimension(self):
        return sum(self.sizes)

    def __repr__(self):
        return f"<ChainComplexZ degrees {self.lo}..{self.hi} sizes {self.sizes}>"


def complex_homology(complex_, degree):
    """Homology of a chain complex at one degree, as a HomologyGroup."""
    return complex_.homology(degree)


def tensor(a, b):
    """Tensor product of two chain complexes over Z.

    Degree k of the product is the direct sum of A_i (x) B_j over i+j=k,
    with d(x (x) y) = dx (x) y + (-1)^i x (x) dy for x in degree i. Basis
    order within a degree: blocks by ascending i, row-major within a block.
    """

    def blocks(k):
        out = []
        for i in range(max(a.lo, k - b.hi), min(a.hi, k - b.lo) + 1):
            out.append((i, k - i))
        return out

    lo = a.lo + b.lo
    hi = a.hi + b.hi
    sizes = []
    offsets = {}
    for k in range(lo, hi + 1):
        off = {}
        total = 0
        for i, j in blocks(k):
            off[(i, j)] = total
            total += a.size(i) * b.size(j)
        offsets[k] = off
        sizes.append(total)

    boundaries = {}
    for k in range(lo + 1, hi + 1):
        mat = SparseIntMatrix(sizes[k - 1 - lo], sizes[k - lo])
        src_off = offsets[k]
        dst_off = offsets[k - 1]
        for i, j in blocks(k):
            na, nb = a.size(i), b.size(j)
            if na == 0 or nb == 0:
                continue
            base = src_off[(i, j)]
            sign = 1 if i % 2 == 0 else -1
            da = a.boundaries.get(i)
            db = b.boundaries.get(j)
            for p in range(na):
                for qcol in range(nb):
                    col = base + p * nb + qcol
                    if da is not None:
                        dbase = dst_off.get((i - 1, j))
                        if dbase is not None:
                            for r, v in da.column_entries(p):
                                mat.add(dbase + r * nb + qcol, col, v)
                    if db is not None:
                        dbase = dst_off.get((i, j - 1))
                        if dbase is not None:
                            nb1 = b.size(j - 1)
                            for s, v in db.column_entries(qcol):
                                mat.add(dbase + p * nb1 + s, col, sign * v)
        boundaries[k] = mat
    return ChainComplexZ(lo, sizes, boundaries)


def tensor_many(complexes):
    out = None
    for c in complexes:
        out = c if out is None else tensor(out, c)
    if out is None:
        raise ValueError("tensor_many needs at least one complex")
    return out


def magnitude_complex(space, l, n_top, cap=None):
    """The chain complex of proper chains of one exact length.

    Degrees 0..n_top; basis at degree n is the lexicographically ordered
    list of proper n-chains of length l. Returns (complex, bases).
    """
    l = Fraction(l)
    if l < 0:
        raise ValueError(f"length must be >= 0, got {l}")
    if n_top < 0:
        raise ValueError(f"n_top must be >= 0, got {n_top}")
    bases = {}
    for n in range(n_top + 1):
        buckets = _chains.enumerate_proper_chains(space, n, cap)
        bases[n] = buckets.get(l, [])
    boundaries = {}
    for n in range(1, n_top + 1):
        index = {ch.points: r for r, ch in enumerate(bases[n - 1])}
        mat = SparseIntMatrix(len(bases[n - 1]), len(bases[n]))
        for c, ch in enumerate(bases[n]):
            for term, coeff in _chains.boundary(space, ch).items():
                # the enumeration is complete, so every face is present
                mat.add(index[term.points], c, coeff)
        boundaries[n] = mat
    cx = ChainComplexZ(0, [len(bases[n]) for n in range(n_top + 1)], boundaries)
    return cx, bases


@dataclass(frozen=True)
class HomologyRow:
    """One (length, degree) entry of a magnitude homology table."""

    l: Fraction
    n: int
    group: HomologyGroup

    def to_json_dict(self):
        return {
            "l": format_rational(self.l),
            "n": self.n,
            "betti": self.group.betti,
            "torsion": list(self.group.torsion),
        }

    @classmethod
    def from_json_dict(cls, d):
        return cls(
            l=parse_rational(d["l"]),
            n=int(d["n"]),
            group=HomologyGroup(int(d["betti"]), tuple(int(t) for t in d["torsion"])),
        )


def magnitude_homology(space, l, n_max, cap=None):
    """Magnitude homology rows of one length grading, degrees 0..n_max.

    The underlying complex extends one degree above n_max so the incoming
    boundary at n_max is part of the computation.
    """
    cx, _ = magnitude_complex(space, l, n_max + 1, cap)
    return [HomologyRow(Fraction(l), n, cx.homology(n)) for n in range(n_max + 1)]


class HomologyTable:
    """Rows of magnitude homology sorted by (length, degree)."""

    def __init__(self, rows):
        self.rows = sorted(rows, key=lambda r: (r.l, r.n))

    def __iter__(self):
        return iter(self.rows)

    def __len__(self):
        return len(self.rows)

    def group(self, l, n):
        l = Fraction(l)
        for row in self.rows:
            if row.l == l and row.n == n:
                return row.group
        return None

    def to_json(self, indent=None):
        return json.dumps(
            [r.to_json_dict() for r in self.rows], indent=indent, sort_keys=True
        )

    @classmethod
    def from_json(cls, text):
        data = json.loads(text)
        return cls([HomologyRow.from_json_dict(d) for d in data])

    def to_csv(self):
        lines = ["l,n,betti,torsion"]
        for r in self.rows:
            tor = ";".join(str(t) for t in r.group.torsion)
            lines.append(f"{format_rational(r.l)},{r.n},{r.group.betti},{tor}")
        return "\n".join(lines) + "\n"

    @classmethod
    def from_csv(cls, text):
        rows = []
        lines = [ln for ln in text.strip().splitlines() if ln]
        for ln in lines[1:]:
            l, n, betti, tor = ln.split(",")
            torsion = tuple(int(t) for t in tor.split(";") if t)
            rows.append(HomologyRow(parse_rational(l), int(n), HomologyGroup(int(betti), torsion)))
        return cls(rows)

    def to_table(self):
        """Human-readable fixed-width rendering."""
        header = ("l", "n", "betti", "torsion")
        body = []
        for r in self.rows:
            tor = ";".join(str(t) for t in r.group.torsion) or "-"
            body.append((format_rational(r.l), str(r.n), str(r.group.betti), tor))
        widths = [
            max(len(header[c]), *(len(row[c]) for row in body)) if body else len(header[c])
            for c in range(4)
        ]
        lines = ["  ".join(h.ljust(w) for h, w in zip(header, widths)).rstrip()]
        for row in body:
            lines.append("  ".join(v.ljust(w) for v, w in zip(row, widths)).rstrip())
        return "\n".join(lines) + "\n"
