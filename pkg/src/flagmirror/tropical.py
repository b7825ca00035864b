"""Ideal fillings, superpotential polytopes, and tropical critical points.

On every toric chart the superpotential restricts to a finite sum of Laurent
monomials with positive integer coefficients, so its tropicalization is a
finite min of affine forms in the coordinate valuations (plus a part linear
in the weight); asking every form to be nonnegative cuts out a convex
polytope.  The quiver chart makes this particularly concrete: all arrow
coordinates and vertex potentials are single Laurent monomials in (d, m), so
the polytope inequalities and the piecewise-linear weight projection read
straight off the generic decoration.

The combinatorial counterpart is the *ideal filling*: a grid of nonnegative
rationals n_ij over the boxes (i, j) whose positions straddle two different
blocks, subject to n_ij = max(n_{i+1,j}, n_{i,j-1}) (absent neighbours
dropped).  Fillings "for lambda" additionally satisfy the linear condition
sum n_ij alpha_ij + ell sum eps_i = lambda with ell the block-size weighted
mean of lambda; there is exactly one such filling per dominant weight, and
its entries are the coordinate valuations of the positive critical point of
the superpotential.  This module computes the filling directly (by an exact
case split over the orderings of the superdiagonal values at the block
breaks), converts between fillings and tropical quiver data, and applies the
piecewise-linear braid moves that relate the polytopes of different reduced
words.
"""

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from .errors import (
    InvalidMove,
    NoSolution,
    NonDominant,
    PreconditionViolated,
    UnboundedOrEmpty,
    WordNotSupported,
)
from .scalars import AffineForm, LamForm, RationalFunction, tropicalize
from .weyl import Parabolic, apply_braid_move, root_order, word_i0
from .charts import ideal_chart, ideal_point, string_chart, string_point, \
    weight_matrix_string
from .quiver import build_topology, gamma, symbolic_decoration


def _frac(x):
    if isinstance(x, Fraction):
        return x
    if isinstance(x, float):
        raise TypeError("tropical data is exact; pass Fraction or int, not float")
    return Fraction(x)


# ---------------------------------------------------------------------------
# boxes and weights


def box_positions(parabolic):
    """The boxes (i, j), i < j, whose rows straddle two different blocks;
    these are exactly the pairs carrying an ideal coordinate (a dot vertex
    sits at matrix position (j, i))."""
    P = parabolic
    return tuple((i, j) for i in range(1, P.n)
                 for j in range(i + 1, P.n + 1)
                 if P.block_of(i) != P.block_of(j))


def flat_index(parabolic, i, j):
    """The flat ideal-coordinate index s_i + (j - i) of box (i, j)."""
    return parabolic.s_offset(i) + (j - i)


def full_weight(parabolic, lam):
    """Coerce a weight to a length-n tuple of Fractions, accepting either n
    entries or one entry per block; raise NonDominant unless it is weakly
    decreasing and constant on the blocks."""
    P = parabolic
    lam = tuple(_frac(x) for x in lam)
    if len(lam) == P.l + 1:
        lam = P.pad_weight(lam)
    if len(lam) != P.n:
        raise NonDominant(
            f"weight needs {P.n} (or {P.l + 1}) entries, got {len(lam)}")
    if any(lam[i] < lam[i + 1] for i in range(P.n - 1)):
        raise NonDominant(f"{lam} is not weakly decreasing")
    for p in range(2, P.n + 1):
        if P.block_of(p) == P.block_of(p - 1) and lam[p - 1] != lam[p - 2]:
            raise NonDominant(f"{lam} is not constant on the blocks of {P}")
    return lam


def ell_for(parabolic, lam):
    """The mean ell = (1/n) sum_i lambda_i of the full weight."""
    lam = full_weight(parabolic, lam)
    return Fraction(sum(lam), parabolic.n)


# ---------------------------------------------------------------------------
# ideal fillings


@dataclass(frozen=True)
class IdealFilling:
    """Nonnegative rationals on the boxes of a parabolic, together with the
    weight they realize and its mean ell."""

    parabolic: Parabolic
    entries: dict
    lam: tuple
    ell: Fraction

    def boxes(self):
        return tuple(sorted(self.entries))

    def value(self, i, j):
        return self.entries[(i, j)]

    def mu(self):
        """The entries keyed by flat ideal-coordinate index."""
        P = self.parabolic
        return {flat_index(P, i, j): v for (i, j), v in self.entries.items()}

    def ideal_violations(self):
        """Boxes where n_ij differs from the max of its present neighbours
        below and to the left (in matrix terms: (i+1, j) and (i, j-1))."""
        bad = []
        for (i, j) in self.boxes():
            if j - i < 2:
                continue
            near = [self.entries[p] for p in ((i + 1, j), (i, j - 1))
                    if p in self.entries]
            if near and self.entries[(i, j)] != max(near):
                bad.append((i, j))
        return tuple(bad)

    def is_ideal(self):
        return not self.ideal_violations() and \
            all(v >= 0 for v in self.entries.values())

    def weight(self):
        """The weight realized by the entries: lambda_p =
        sum_{j} n_pj - sum_{i} n_ip + ell."""
        out = []
        for p in range(1, self.parabolic.n + 1):
            acc = self.ell
            for (i, j), v in self.entries.items():
                if i == p:
                    acc += v
                elif j == p:
                    acc -= v
            out.append(acc)
        return tuple(out)

    def fmt(self):
        """Row-by-row grid, one line per row index i, blanks at non-boxes."""
        n = self.parabolic.n
        cells = {}
        for (i, j), v in self.entries.items():
            cells[(i, j)] = str(v)
        width = max((len(s) for s in cells.values()), default=1)
        lines = []
        for i in range(1, n):
            row = []
            for j in range(2, n + 1):
                row.append(cells.get((i, j), "").rjust(width))
            lines.append(" ".join(row).rstrip())
        return "\n".join(lines)


def _weak_orderings(items):
    """Ordered set partitions of ``items``, groups listed from the smallest
    value class to the largest."""
    items = list(items)
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for parts in _weak_orderings(rest):
        for g in range(len(parts)):
            yield parts[:g] + [parts[g] + [first]] + parts[g + 1:]
            yield parts[:g] + [[first]] + parts[g:]
        yield parts + [[first]]


def ideal_filling_for_lambda(parabolic, lam):
    """The unique ideal filling realizing a dominant block-constant weight.

    Every entry equals the largest superdiagonal entry c_k over the break
    positions k between its row indices, so the filling is determined by the
    c_k.  We enumerate the weak orderings of the c_k; each ordering turns
    the weight condition into a linear system for the distinct values, which
    is solved exactly and kept only if the solution respects the assumed
    strict ordering and is nonnegative.  Exactly one ordering survives.
    """
    P = parabolic
    lam = full_weight(P, lam)
    ell = Fraction(sum(lam), P.n)
    boxes = box_positions(P)
    if not boxes:
        return IdealFilling(P, {}, lam, ell)
    breaks = list(P.breaks)

    solutions = []
    for parts in _weak_orderings(breaks):
        group_of = {k: gi for gi, grp in enumerate(parts) for k in grp}
        t = len(parts)

        def box_group(i, j):
            return max(group_of[k] for k in breaks if i <= k < j)

        rows, rhs = [], []
        for p in range(1, P.n + 1):
            row = [Fraction(0)] * t
            for (i, j) in boxes:
                if i == p:
                    row[box_group(i, j)] += 1
                elif j == p:
                    row[box_group(i, j)] -= 1
            rows.append(row)
            rhs.append(lam[p - 1] - ell)
        status, vs = _solve_system(rows, rhs)
        if status == "many":
            raise NoSolution(
                f"degenerate weight system for ordering {parts}; "
                "cannot certify uniqueness")
        if status != "unique":
            continue
        if vs[0] < 0 or any(vs[g] >= vs[g + 1] for g in range(t - 1)):
            continue
        solutions.append({(i, j): vs[box_group(i, j)] for (i, j) in boxes})

    if len(solutions) != 1:
        raise NoSolution(
            f"expected exactly one ideal filling for lambda={lam}, "
            f"found {len(solutions)}")
    filling = IdealFilling(P, solutions[0], lam, ell)
    assert filling.is_ideal() and filling.weight() == lam
    return filling


# ---------------------------------------------------------------------------
# fillings <-> tropical quiver data


@dataclass(frozen=True)
class TropQuiverPoint:
    """A vertex potential assignment delta on the quiver of ``parabolic``;
    arrow coordinates are the head/tail differences."""

    parabolic: Parabolic
    delta: dict
    lam: tuple
    ell: Fraction

    def rho(self):
        topo = build_topology(self.parabolic)
        return {(t, h): self.delta[h] - self.delta[t] for (t, h) in topo.arrows}


def trop_critical_ok(parabolic, rho):
    """min over incoming = min over outgoing arrow values at every dot."""
    topo = build_topology(parabolic)
    for v in topo.dots:
        inn = min(r for a, r in rho.items() if a[1] == v)
        out = min(r for a, r in rho.items() if a[0] == v)
        if inn != out:
            return False
    return True


def filling_to_quiver_point(filling, lam=None):
    """Vertex potentials from a filling: stars carry the block weight, and
    the dot for box (i, j) carries H^h_ij - H^v_ij + ell, where H^h sums the
    entries strictly right of the box in its row and H^v the entries
    strictly above it in its column.  The resulting arrow differences
    satisfy the tropical critical conditions whenever the filling is ideal.
    """
    P = filling.parabolic
    if lam is not None and full_weight(P, lam) != filling.lam:
        raise PreconditionViolated(
            f"filling realizes {filling.lam}, not {tuple(lam)}")
    if not filling.is_ideal() or filling.weight() != filling.lam:
        raise PreconditionViolated(
            "the filling is not an ideal filling for its weight")
    topo = build_topology(P)
    ell = filling.ell
    delta = {}
    for pos, kind in topo.vertices.items():
        if kind == "star":
            delta[pos] = filling.lam[P.ns[topo.stars[pos] - 1]]
        else:
            row, col = pos
            i, j = col, row
            hh = sum(v for (a, b), v in filling.entries.items()
                     if a == i and b > j)
            hv = sum(v for (a, b), v in filling.entries.items()
                     if b == j and a < i)
            delta[pos] = hh - hv + ell
    point = TropQuiverPoint(P, delta, filling.lam, ell)
    assert trop_critical_ok(P, point.rho())
    return point


def quiver_point_to_filling(point):
    """Read a filling off tropical quiver data: the entry at box (i, j) is
    the min of the arrow values entering its dot.  Requires the tropical
    critical conditions; the result is then automatically ideal."""
    P = point.parabolic
    topo = build_topology(P)
    rho = point.rho()
    if not trop_critical_ok(P, rho):
        raise PreconditionViolated(
            "arrow data does not satisfy the tropical critical conditions")
    entries = {}
    for (row, col) in topo.dots:
        entries[(col, row)] = min(r for a, r in rho.items()
                                  if a[1] == (row, col))
    filling = IdealFilling(P, entries, point.lam, point.ell)
    assert filling.is_ideal()
    return filling


@dataclass(frozen=True)
class TropCriticalPoint:
    """Coordinate valuations of the positive critical point in the fiber
    over t^lambda, keyed by flat ideal-coordinate index."""

    parabolic: Parabolic
    mu: dict
    lam: tuple
    ell: Fraction

    def by_root(self):
        P = self.parabolic
        return {(i, j): self.mu[flat_index(P, i, j)]
                for (i, j) in box_positions(P)}

    def vector(self):
        return tuple(self.mu[k] for k in sorted(self.mu))


def tropical_critical_point(parabolic, lam):
    """The valuation vector of the positive critical point: the entries of
    the ideal filling for lambda under box (i, j) -> flat index s_i+(j-i)."""
    filling = ideal_filling_for_lambda(parabolic, lam)
    filling_to_quiver_point(filling)  # asserts the critical conditions
    return TropCriticalPoint(parabolic, filling.mu(), filling.lam, filling.ell)


# ---------------------------------------------------------------------------
# tropicalized charts and polytopes


_QUIVER_TROP = {}
_CHART_TROP = {}


def _lam_exponents(parabolic):
    P = parabolic
    return {f"d{r}": LamForm.unit(P.ns[r - 1] + 1, P.n)
            for r in range(1, P.l + 2)}


def _single_form(e, coords, texp, n):
    e = e if isinstance(e, RationalFunction) else RationalFunction(e)
    expr = tropicalize(e, coords, texp, n_lambda=n)
    assert len(expr.forms) == 1, "expected a Laurent monomial"
    return expr.forms[0]


@dataclass(frozen=True)
class TropicalQuiverData:
    """Tropicalizations of the generic quiver decoration: one affine form
    per vertex potential, arrow coordinate, and weight-matrix entry."""

    parabolic: Parabolic
    coords: tuple
    x_forms: dict
    r_forms: dict
    gamma_forms: tuple


def tropical_quiver_data(parabolic):
    if parabolic in _QUIVER_TROP:
        return _QUIVER_TROP[parabolic]
    dec = symbolic_decoration(parabolic)
    coords = tuple(f"m{k}" for k in sorted(dec.m))
    texp = _lam_exponents(parabolic)
    n = parabolic.n
    x_forms = {pos: _single_form(v, coords, texp, n) for pos, v in dec.x.items()}
    r_forms = {a: _single_form(v, coords, texp, n) for a, v in dec.r.items()}
    g = gamma(dec)
    gamma_forms = tuple(_single_form(g.entry(i, i), coords, texp, n)
                        for i in range(1, n + 1))
    data = TropicalQuiverData(parabolic, coords, x_forms, r_forms, gamma_forms)
    _QUIVER_TROP[parabolic] = data
    return data


def _chart_superpotential_forms(n, chart, word):
    """Tropical forms of the superpotential on a string or general-word
    ideal chart of the full flag variety; coordinates are named
    positionally along the word."""
    key = (chart, n, word)
    if key in _CHART_TROP:
        return _CHART_TROP[key]
    N = n * (n - 1) // 2
    d = tuple(RationalFunction.var(f"d{j}") for j in range(1, n + 1))
    texp = {f"d{j}": LamForm.unit(j, n) for j in range(1, n + 1)}
    if chart == "string":
        coords = tuple(f"z{k}" for k in range(1, N + 1))
        z = tuple(RationalFunction.var(c) for c in coords)
        w = string_chart(string_point(d, z, word)).superpotential()
    else:
        coords = tuple(f"m{k}" for k in range(1, N + 1))
        m = {root: RationalFunction.var(coords[k])
             for k, root in enumerate(root_order(word, n))}
        w = ideal_chart(ideal_point(d, m, word)).superpotential()
    expr = tropicalize(w, coords, texp, n_lambda=n)
    _CHART_TROP[key] = (coords, expr.forms)
    return _CHART_TROP[key]


def _form_key(f):
    return (f.coeffs, f.lam.coeffs, f.lam.const)


@dataclass(frozen=True)
class Polytope:
    """Intersection of half-spaces ``form >= 0``: integer coefficients on
    the named coordinates plus a lambda-linear constant, with the weight
    bound at construction.  The inequality list is deduplicated."""

    coords: tuple
    forms: tuple
    lam: tuple

    def __post_init__(self):
        object.__setattr__(self, "coords", tuple(self.coords))
        object.__setattr__(
            self, "forms", tuple(sorted(set(self.forms), key=_form_key)))
        object.__setattr__(self, "lam", tuple(_frac(x) for x in self.lam))

    @property
    def dim(self):
        return len(self.coords)

    def _point(self, point):
        if isinstance(point, dict):
            by_suffix = {}
            for idx, name in enumerate(self.coords):
                by_suffix[int(name.lstrip("mz"))] = idx
            out = [None] * len(self.coords)
            for k, v in point.items():
                idx = self.coords.index(k) if isinstance(k, str) else by_suffix[k]
                out[idx] = _frac(v)
            if any(v is None for v in out):
                raise KeyError("point does not cover every coordinate")
            return tuple(out)
        point = tuple(_frac(x) for x in point)
        if len(point) != len(self.coords):
            raise ValueError(
                f"expected {len(self.coords)} coordinates, got {len(point)}")
        return point

    def values(self, point):
        p = self._point(point)
        return tuple(f.evaluate(p, self.lam) for f in self.forms)

    def membership(self, point):
        return all(v >= 0 for v in self.values(point))

    def interior(self, point):
        return all(v > 0 for v in self.values(point))

    def vertices(self):
        """All vertices, by exhausting dim-subsets of the inequalities.

        Raises UnboundedOrEmpty when the region is empty or has a
        nontrivial recession cone (detected exactly: a recession direction
        survives the rank test or appears as a kernel ray)."""
        d = self.dim
        if d > 4:
            raise PreconditionViolated(
                "vertex enumeration is limited to four coordinates")
        A = [tuple(Fraction(c) for c in f.coeffs) for f in self.forms]
        b = [f.lam(self.lam) for f in self.forms]
        if _rank(A) < d:
            raise UnboundedOrEmpty("the recession cone contains a line")
        for S in combinations(range(len(A)), d - 1):
            v = _kernel_direction([A[i] for i in S], d)
            if v is None:
                continue
            for w in (v, tuple(-x for x in v)):
                if all(_dot(row, w) >= 0 for row in A):
                    raise UnboundedOrEmpty(f"unbounded along {w}")
        found = set()
        for S in combinations(range(len(A)), d):
            status, x = _solve_system([list(A[i]) for i in S],
                                      [-b[i] for i in S])
            if status != "unique":
                continue
            if all(_dot(row, x) + bb >= 0 for row, bb in zip(A, b)):
                found.add(tuple(x))
        if not found:
            raise UnboundedOrEmpty("the polytope is empty")
        return tuple(sorted(found))

    def fmt(self, lam_names=None):
        return tuple(f"{f.fmt(self.coords, lam_names)} >= 0"
                     for f in self.forms)


def superpotential_polytope(parabolic, chart, lam, word=None):
    """The polytope cut out by the tropicalized superpotential monomials.

    ``chart`` is "ideal" or "string".  With no word, the ideal chart uses
    the quiver decoration (any parabolic); an explicit word, like the string
    chart, needs the full flag variety.  Coordinates are the m (resp. z)
    valuations; the weight enters through the lambda-linear constants.
    """
    P = parabolic
    lam = full_weight(P, lam)
    if chart == "ideal":
        if word is None:
            data = tropical_quiver_data(P)
            return Polytope(data.coords, tuple(data.r_forms.values()), lam)
        if not P.is_borel():
            raise WordNotSupported(
                "general-word ideal charts are specific to P = B")
        coords, forms = _chart_superpotential_forms(P.n, "ideal", tuple(word))
        return Polytope(coords, forms, lam)
    if chart == "string":
        if not P.is_borel():
            raise WordNotSupported("the string chart is specific to P = B")
        word = word_i0(P.n) if word is None else tuple(word)
        coords, forms = _chart_superpotential_forms(P.n, "string", word)
        return Polytope(coords, forms, lam)
    raise ValueError(f"unknown chart {chart!r}")


def tropical_weight(point, parabolic=None, chart="ideal", lam=None):
    """The tropicalized weight-matrix diagonal at a chart point.

    ``point`` may be a TropCriticalPoint (which fixes parabolic and lambda)
    or raw coordinates (sequence, or dict keyed by name/flat index) with
    ``lam`` supplied.  At the tropical critical point the result is
    (ell, ..., ell)."""
    if isinstance(point, TropCriticalPoint):
        parabolic = parabolic or point.parabolic
        lam = point.lam if lam is None else lam
        point = point.mu
    if parabolic is None or lam is None:
        raise PreconditionViolated("raw points need a parabolic and a weight")
    lam = full_weight(parabolic, lam)
    if chart == "ideal":
        data = tropical_quiver_data(parabolic)
        p = _align(point, data.coords)
        return tuple(f.evaluate(p, lam) for f in data.gamma_forms)
    if chart == "string":
        if not parabolic.is_borel():
            raise WordNotSupported("the string chart is specific to P = B")
        forms = _string_weight_forms(parabolic.n)
        p = _align(point, tuple(f"z{k}" for k in
                                range(1, parabolic.n * (parabolic.n - 1) // 2 + 1)))
        return tuple(f.evaluate(p, lam) for f in forms)
    raise ValueError(f"unknown chart {chart!r}")


def _string_weight_forms(n):
    key = ("string-weight", n)
    if key in _CHART_TROP:
        return _CHART_TROP[key]
    N = n * (n - 1) // 2
    coords = tuple(f"z{k}" for k in range(1, N + 1))
    d = tuple(RationalFunction.var(f"d{j}") for j in range(1, n + 1))
    z = tuple(RationalFunction.var(c) for c in coords)
    texp = {f"d{j}": LamForm.unit(j, n) for j in range(1, n + 1)}
    t = weight_matrix_string(string_point(d, z))
    forms = tuple(_single_form(t.entry(i, i), coords, texp, n)
                  for i in range(1, n + 1))
    _CHART_TROP[key] = forms
    return forms


def _align(point, coords):
    if isinstance(point, dict):
        out = []
        for name in coords:
            if name in point:
                out.append(_frac(point[name]))
            else:
                out.append(_frac(point[int(name.lstrip("mz"))]))
        return tuple(out)
    point = tuple(_frac(x) for x in point)
    if len(point) != len(coords):
        raise ValueError(f"expected {len(coords)} coordinates, got {len(point)}")
    return point


# ---------------------------------------------------------------------------
# piecewise-linear braid moves


def _root_sum(alpha, beta):
    (i1, j1), (i2, j2) = alpha, beta
    if j1 == i2:
        return (i1, j2)
    if j2 == i1:
        return (i2, j1)
    return None


def trop_braid_transform(word, pos, mu):
    """Transport root-keyed valuations across one braid move of ``word``.

    A 2-move leaves the values untouched.  A 3-move at roots
    (alpha, alpha+beta, beta) sends

        mu_alpha        -> mu_{alpha+beta} + min(mu_alpha, mu_beta) - mu_beta
        mu_{alpha+beta} -> mu_alpha + mu_beta - min(mu_alpha, mu_beta)
        mu_beta         -> mu_{alpha+beta} + min(mu_alpha, mu_beta) - mu_alpha

    (the valuations of the corresponding rational move).  Any point with
    mu_{alpha+beta} = max(mu_alpha, mu_beta) is fixed."""
    word = tuple(word)
    n = max(word) + 1
    if pos < 0 or pos >= len(word) - 1:
        raise InvalidMove(f"no move window starts at position {pos}")
    if abs(word[pos] - word[pos + 1]) >= 2:
        return dict(mu)
    if pos + 2 < len(word) and word[pos] == word[pos + 2] and \
            abs(word[pos] - word[pos + 1]) == 1:
        roots = root_order(word, n)
        alpha, mid, beta = roots[pos], roots[pos + 1], roots[pos + 2]
        if _root_sum(alpha, beta) != mid:
            raise InvalidMove(
                f"roots at positions {pos}..{pos + 2} do not form an "
                "(a, a+b, b) triple")
        a, c, b = _frac(mu[alpha]), _frac(mu[mid]), _frac(mu[beta])
        lo = min(a, b)
        out = dict(mu)
        out[alpha] = c + lo - b
        out[mid] = a + b - lo
        out[beta] = c + lo - a
        return out
    raise InvalidMove(f"letters {word[pos:pos + 3]} at position {pos} admit no move")


def trop_braid_path(word, path, mu):
    """Apply a whole braid path (as produced by weyl.braid_path); returns
    the final word and the transported root-keyed values."""
    word = tuple(word)
    out = dict(mu)
    for kind, p in path:
        if kind == "braid":
            out = trop_braid_transform(word, p, out)
        word = apply_braid_move(word, kind, p)
    return word, out


# ---------------------------------------------------------------------------
# exact linear algebra (small dense systems)


def _solve_system(rows, rhs):
    """Gaussian elimination over the rationals.  Returns ("unique", xs),
    ("none", None) or ("many", None)."""
    m = [list(map(Fraction, row)) + [Fraction(r)] for row, r in zip(rows, rhs)]
    ncols = len(rows[0]) if rows else 0
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        m[r] = [v / m[r][c] for v in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    for i in range(r, len(m)):
        if m[i][ncols] != 0:
            return ("none", None)
    if len(pivots) < ncols:
        return ("many", None)
    xs = [Fraction(0)] * ncols
    for i, c in enumerate(pivots):
        xs[c] = m[i][ncols]
    return ("unique", xs)


def _rank(rows):
    if not rows:
        return 0
    m = [list(map(Fraction, row)) for row in rows]
    ncols = len(m[0])
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        m[r] = [v / m[r][c] for v in m[r]]
        for i in range(r + 1, len(m)):
            if m[i][c] != 0:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        r += 1
        if r == len(m):
            break
    return r


def _kernel_direction(rows, d):
    """A nonzero kernel vector when the nullity is exactly one, else None."""
    m = [list(map(Fraction, row)) for row in rows]
    pivots = {}
    r = 0
    for c in range(d):
        piv = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        m[r] = [v / m[r][c] for v in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots[c] = r
        r += 1
        if r == len(m):
            break
    free = [c for c in range(d) if c not in pivots]
    if len(free) != 1:
        return None
    v = [Fraction(0)] * d
    v[free[0]] = Fraction(1)
    for c, i in pivots.items():
        v[c] = -m[i][free[0]]
    return tuple(v)


def _dot(a, b):
    return sum(x * y for x, y in zip(a, b))


# ---------------------------------------------------------------------------
# serialization


def filling_json(filling):
    P = filling.parabolic
    return {
        "n": P.n,
        "IP": list(P.breaks),
        "lambda": [str(x) for x in filling.lam],
        "ell": str(filling.ell),
        "entries": [{"i": i, "j": j, "value": str(v)}
                    for (i, j), v in sorted(filling.entries.items())],
    }


def polytope_json(polytope):
    ineqs = []
    for f in polytope.forms:
        ineqs.append({
            "coeffs": {name: c for name, c in zip(polytope.coords, f.coeffs) if c},
            "lam": {f"L{i + 1}": str(c)
                    for i, c in enumerate(f.lam.coeffs) if c},
            "const": str(f.lam.const),
        })
    return {
        "coords": list(polytope.coords),
        "lambda": [str(x) for x in polytope.lam],
        "inequalities": ineqs,
    }
