"""Generic matrices over any exact scalar domain, elementary factors,
LDU without pivoting, twists, and planar-network minors.

Entries may be ints, ``Fraction``s, :class:`~flagmirror.scalars.RationalFunction`
values, :class:`~flagmirror.scalars.PuiseuxSeries`, or floats; the code only
uses ``+ - * /`` and zero tests.  Integer entries are lifted to ``Fraction``
wherever division happens so exactness is never lost by accident.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import (
    SingularMatrix,
    SingularPrincipalMinor,
    SizeMismatch,
    UnknownValuation,
)
from .scalars import PuiseuxSeries, RationalFunction
from . import weyl


def scalar_is_zero(x):
    if isinstance(x, RationalFunction):
        return x.is_zero()
    if isinstance(x, PuiseuxSeries):
        if x.terms:
            return False
        if x.truncation is None:
            return True
        raise UnknownValuation(
            "truncated series with no visible term used where a zero test "
            "is required")
    return x == 0


def _norm(v):
    """Normalize RationalFunction intermediates; other scalars pass through."""
    return v.normalized() if isinstance(v, RationalFunction) else v


def _lift(x):
    return Fraction(x) if isinstance(x, int) else x


class Matrix:
    """An immutable dense matrix with duck-typed scalar entries."""

    __slots__ = ("rows",)

    def __init__(self, rows):
        self.rows = tuple(tuple(r) for r in rows)
        if self.rows:
            w = len(self.rows[0])
            if any(len(r) != w for r in self.rows):
                raise SizeMismatch("ragged rows")

    @staticmethod
    def identity(n, like=1):
        zero = like * 0
        one = zero + 1
        return Matrix([[one if i == j else zero for j in range(n)]
                       for i in range(n)])

    @staticmethod
    def diagonal(entries):
        entries = list(entries)
        zero = entries[0] * 0
        n = len(entries)
        return Matrix([[entries[i] if i == j else zero for j in range(n)]
                       for i in range(n)])

    @property
    def shape(self):
        return (len(self.rows), len(self.rows[0]) if self.rows else 0)

    def entry(self, i, j):
        """1-based entry access."""
        return self.rows[i - 1][j - 1]

    def transpose(self):
        m, n = self.shape
        return Matrix([[self.rows[i][j] for i in range(m)] for j in range(n)])

    def map(self, fn):
        return Matrix([[fn(x) for x in row] for row in self.rows])

    def lifted(self):
        return self.map(_lift)

    def __mul__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        m, k = self.shape
        k2, n = other.shape
        if k != k2:
            raise SizeMismatch(f"cannot multiply {self.shape} by {other.shape}")
        out = []
        for i in range(m):
            row = []
            for j in range(n):
                acc = self.rows[i][0] * other.rows[0][j]
                for r in range(1, k):
                    acc = acc + self.rows[i][r] * other.rows[r][j]
                row.append(_norm(acc))
            out.append(row)
        return Matrix(out)

    def __add__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        if self.shape != other.shape:
            raise SizeMismatch("shape mismatch in addition")
        return Matrix([[a + b for a, b in zip(r1, r2)]
                       for r1, r2 in zip(self.rows, other.rows)])

    def __sub__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        if self.shape != other.shape:
            raise SizeMismatch("shape mismatch in subtraction")
        return Matrix([[a - b for a, b in zip(r1, r2)]
                       for r1, r2 in zip(self.rows, other.rows)])

    def scaled(self, c):
        return self.map(lambda x: x * c)

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        if self.shape != other.shape:
            return False
        for r1, r2 in zip(self.rows, other.rows):
            for a, b in zip(r1, r2):
                if isinstance(a, RationalFunction) or isinstance(b, RationalFunction):
                    if not (RationalFunction(a) if not isinstance(a, RationalFunction) else a) \
                            == (RationalFunction(b) if not isinstance(b, RationalFunction) else b):
                        return False
                elif a != b:
                    return False
        return True

    def __hash__(self):
        return hash(self.rows)

    def submatrix(self, rows, cols):
        """1-based row/column index collections, kept in sorted order."""
        rows = sorted(rows)
        cols = sorted(cols)
        m, n = self.shape
        if any(not 1 <= i <= m for i in rows) or any(not 1 <= j <= n for j in cols):
            raise SizeMismatch("submatrix indices out of range")
        return Matrix([[self.rows[i - 1][j - 1] for j in cols] for i in rows])

    def det(self):
        m, n = self.shape
        if m != n:
            raise SizeMismatch("determinant of a non-square matrix")
        a = [list(r) for r in self.lifted().rows]
        sign = 1
        det = None
        for k in range(n):
            piv = None
            for r in range(k, n):
                if not scalar_is_zero(a[r][k]):
                    piv = r
                    break
            if piv is None:
                return a[k][k] * 0
            if piv != k:
                a[k], a[piv] = a[piv], a[k]
                sign = -sign
            for r in range(k + 1, n):
                if scalar_is_zero(a[r][k]):
                    continue
                f = _norm(a[r][k] / a[k][k])
                a[r] = [_norm(a[r][j] - f * a[k][j]) for j in range(n)]
        for k in range(n):
            det = a[k][k] if det is None else _norm(det * a[k][k])
        return det if sign > 0 else -det

    def inverse(self):
        m, n = self.shape
        if m != n:
            raise SizeMismatch("inverse of a non-square matrix")
        a = [list(r) for r in self.lifted().rows]
        eye = Matrix.identity(n, like=_lift(self.rows[0][0]))
        b = [list(r) for r in eye.rows]
        for k in range(n):
            piv = None
            for r in range(k, n):
                if not scalar_is_zero(a[r][k]):
                    piv = r
                    break
            if piv is None:
                raise SingularMatrix("matrix is not invertible")
            if piv != k:
                a[k], a[piv] = a[piv], a[k]
                b[k], b[piv] = b[piv], b[k]
            p = a[k][k]
            a[k] = [_norm(x / p) for x in a[k]]
            b[k] = [_norm(x / p) for x in b[k]]
            for r in range(n):
                if r == k or scalar_is_zero(a[r][k]):
                    continue
                f = a[r][k]
                a[r] = [_norm(a[r][j] - f * a[k][j]) for j in range(n)]
                b[r] = [_norm(b[r][j] - f * b[k][j]) for j in range(n)]
        return Matrix(b)

    def ldu(self):
        """Factor as L * D * U with L, U unitriangular and D diagonal,
        using the leading principal minors (no pivoting).

        Raises :class:`SingularPrincipalMinor` carrying the size k of the
        first vanishing leading principal minor.
        """
        m, n = self.shape
        if m != n:
            raise SizeMismatch("LDU of a non-square matrix")
        a = [list(r) for r in self.lifted().rows]
        zero = _lift(a[0][0]) * 0
        one = zero + 1
        low = [[one if i == j else zero for j in range(n)] for i in range(n)]
        for k in range(n):
            if scalar_is_zero(a[k][k]):
                raise SingularPrincipalMinor(k + 1)
            for r in range(k + 1, n):
                if scalar_is_zero(a[r][k]):
                    continue
                f = _norm(a[r][k] / a[k][k])
                a[r] = [_norm(a[r][j] - f * a[k][j]) for j in range(n)]
                low[r][k] = f
        d = [a[k][k] for k in range(n)]
        up = [[_norm(a[i][j] / d[i]) if j > i else (one if i == j else zero)
               for j in range(n)] for i in range(n)]
        return Matrix(low), Matrix.diagonal(d), Matrix(up)

    def is_identity(self):
        m, n = self.shape
        if m != n:
            return False
        for i in range(n):
            for j in range(n):
                want_one = i == j
                x = self.rows[i][j]
                diff = x - 1 if want_one else x
                if isinstance(diff, RationalFunction):
                    if not diff.is_zero():
                        return False
                elif isinstance(diff, PuiseuxSeries):
                    if not diff.is_exact_zero():
                        return False
                elif diff != 0:
                    return False
        return True

    def str_rows(self):
        return [[str(x) for x in row] for row in self.rows]

    def __repr__(self):
        body = "; ".join(", ".join(r) for r in self.str_rows())
        return f"Matrix[{body}]"


def minor(g, rows, cols):
    """Exact minor with 1-based sorted index sets."""
    rows, cols = sorted(rows), sorted(cols)
    if len(rows) != len(cols):
        raise SizeMismatch("minor needs equally many rows and columns")
    return g.submatrix(rows, cols).det()


# ------------------------------------------------------ elementary factors ---

@dataclass(frozen=True)
class Factor:
    """One elementary factor of a factorization.

    kind: "x" | "y" | "x_neg" | "torus" | "sbar" | "sdot".
    For the unipotent kinds ``i`` is the simple-root index and ``arg`` the
    parameter; for "torus" ``arg`` is the tuple of diagonal entries.
    """

    kind: str
    i: int = 0
    arg: object = None


def x_el(i, z, n):
    rows = [[1 if r == c else 0 for c in range(n)] for r in range(n)]
    rows[i - 1][i] = z
    return Matrix(rows)


def y_el(i, z, n):
    rows = [[1 if r == c else 0 for c in range(n)] for r in range(n)]
    rows[i][i - 1] = z
    return Matrix(rows)


def torus(entries):
    return Matrix.diagonal(list(entries))


def x_neg_el(i, z, n):
    """The negative elementary factor, normalized so that its transpose is
    ``torus_i(1/z) x_i(z)``: a 2x2 block [[1/z, 0], [1, z]]."""
    inv = 1 / z
    rows = [[1 if r == c else 0 for c in range(n)] for r in range(n)]
    rows[i - 1][i - 1] = inv
    rows[i][i - 1] = 1
    rows[i][i] = z
    return Matrix(rows)


def sbar(i, n):
    rows = [[1 if r == c else 0 for c in range(n)] for r in range(n)]
    rows[i - 1][i - 1] = 0
    rows[i][i] = 0
    rows[i - 1][i] = -1
    rows[i][i - 1] = 1
    return Matrix(rows)


def sdot(i, n):
    rows = [[1 if r == c else 0 for c in range(n)] for r in range(n)]
    rows[i - 1][i - 1] = 0
    rows[i][i] = 0
    rows[i - 1][i] = 1
    rows[i][i - 1] = -1
    return Matrix(rows)


def x_cap(i, alpha, z, n):
    """Height-alpha upper elementary: identity plus z in entry
    (i - alpha + 1, i + 1).  For alpha = 1 this is x_i(z)."""
    rows = [[1 if r == c else 0 for c in range(n)] for r in range(n)]
    rows[i - alpha][i] = z
    return Matrix(rows)


def elementary(f, n):
    if f.kind == "x":
        return x_el(f.i, f.arg, n)
    if f.kind == "y":
        return y_el(f.i, f.arg, n)
    if f.kind == "x_neg":
        return x_neg_el(f.i, f.arg, n)
    if f.kind == "torus":
        return torus(f.arg)
    if f.kind == "sbar":
        return sbar(f.i, n)
    if f.kind == "sdot":
        return sdot(f.i, n)
    raise ValueError(f"unknown factor kind {f.kind!r}")


def word_product(factors, n):
    acc = Matrix.identity(n)
    for f in factors:
        acc = acc * elementary(f, n)
    return acc


def x_word(word, args, n):
    return word_product([Factor("x", i, z) for i, z in zip(word, args, strict=True)], n)


def y_word(word, args, n):
    return word_product([Factor("y", i, z) for i, z in zip(word, args, strict=True)], n)


def x_neg_word(word, args, n):
    return word_product([Factor("x_neg", i, z)
                         for i, z in zip(word, args, strict=True)], n)


def transpose_network_factors(word, args, n):
    """Factor list (x/torus only) whose product is ``x_neg_word(word, args, n)``
    transposed, using x_neg_i(z)^T = torus_i(1/z) x_i(z)."""
    out = []
    for i, z in reversed(list(zip(word, args, strict=True))):
        entries = [z * 0 + 1 for _ in range(n)]
        entries[i - 1] = 1 / z
        entries[i] = z
        out.append(Factor("torus", 0, tuple(entries)))
        out.append(Factor("x", i, z))
    return out


def sbar_word(word, n):
    return word_product([Factor("sbar", i) for i in word], n)


def sdot_word(word, n):
    return word_product([Factor("sdot", i) for i in word], n)


def w0bar(n):
    return sbar_word(weyl.word_i0(n), n)


def wp_representative(parabolic):
    """The product of block longest-element representatives (dotted)."""
    return sdot_word(parabolic.wp_word(), parabolic.n)


# ----------------------------------------------------------------- twists ---

def twist_eta(b):
    """The upper-unitriangular part of (w0bar b^T)^{-1}."""
    n = b.shape[0]
    g = (w0bar(n) * b.transpose()).inverse()
    _, _, u = g.ldu()
    return u


def iota(g):
    """The twisted transpose (w0bar g^{-1} w0bar^{-1})^T."""
    n = g.shape[0]
    w = w0bar(n)
    return (w * g.inverse() * w.inverse()).transpose()


# ---------------------------------------------------------- planar network ---

class PathGraph:
    """Planar network of a factorization into x and torus factors.

    Lines are numbered 1..n; each "x" factor contributes one column with a
    slanted edge from line i to line i+1 of the given weight, each "torus"
    factor a column that scales line j by its j-th diagonal entry.
    """

    def __init__(self, factors, n):
        for f in factors:
            if f.kind not in ("x", "torus"):
                raise ValueError(
                    f"path graphs are built from x/torus factors, got {f.kind}")
        self.factors = tuple(factors)
        self.n = n

    def paths(self, src, dst):
        """All source-to-sink paths as (line-sequence, weight) pairs.

        The line sequence has one entry per column boundary (so length
        #factors + 1) and is used for vertex-disjointness tests.
        """
        out = []

        def walk(col, line, trace, weight):
            if col == len(self.factors):
                if line == dst:
                    out.append((tuple(trace), weight))
                return
            f = self.factors[col]
            if f.kind == "torus":
                walk(col + 1, line, trace + [line], weight * f.arg[line - 1])
                return
            # f.kind == "x": optionally take the slant i -> i+1
            walk(col + 1, line, trace + [line], weight)
            if line == f.i:
                walk(col + 1, line + 1, trace + [line + 1], weight * f.arg)

        walk(0, src, [src], 1)
        return out

    def minor(self, rows, cols):
        """Lindstrom/Gessel-Viennot: the minor on sorted row set J and column
        set K equals the weighted count of vertex-disjoint path families
        connecting J to K in order."""
        rows, cols = sorted(rows), sorted(cols)
        if len(rows) != len(cols):
            raise SizeMismatch("minor needs equally many rows and columns")
        fams = [self.paths(j, k) for j, k in zip(rows, cols)]
        total = 0
        boundaries = len(self.factors) + 1

        def occupied(trace):
            return {(c, trace[c]) for c in range(boundaries)}

        def rec(idx, used, weight):
            nonlocal total
            if idx == len(fams):
                total = total + weight
                return
            for trace, w in fams[idx]:
                occ = occupied(trace)
                if used & occ:
                    continue
                rec(idx + 1, used | occ, weight * w)

        rec(0, set(), 1)
        return total


def path_graph(factors, n):
    return PathGraph(factors, n)


def minor_via_paths(graph, rows, cols):
    return graph.minor(rows, cols)
