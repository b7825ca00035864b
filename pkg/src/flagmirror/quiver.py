"""Givental-style ladder quivers for GL_n/P and their decorations.

The quiver of a parabolic P sits inside the lower triangle of an n x n grid:
one *star* vertex at the lower-left corner of each diagonal block square, and
one *dot* vertex at every matrix position strictly below the block diagonal.
Arrows point up and to the left.  A decoration assigns a coordinate to every
arrow and a "potential" to every vertex so that each arrow carries the ratio
of its head and tail potentials; the superpotential is the sum of all arrow
coordinates, and the critical-point conditions say that at every dot the
incoming and outgoing coordinates balance.

The decoration built here from highest-weight coordinates ``d`` and ideal
coordinates ``m`` makes the quiver a bookkeeping device for the ideal chart:
reading column by column one extracts a factorization of a totally positive
unipotent ``u_L`` (and its decorated companion ``g_L``), a torus element
``kappa``, and - after reflecting the quiver across the antidiagonal - a
second unipotent ``u_R``.  The product ``u_L kappa wdot_P w0bar u_R`` then
lands in the lower-triangular Borel, with diagonal part the weight matrix
``gamma``.  Whether the reflected quiver's ``u_R`` agrees with the one forced
by lower-triangularity is known for Grassmannians and for P = B, and open in
general; :func:`check_conjecture` tests it on explicit decorations.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import (
    InconsistentBoxRelations,
    InvalidIndex,
    PreconditionViolated,
)
from .scalars import RationalFunction
from .weyl import Parabolic
from .matrices import (
    Factor,
    Matrix,
    scalar_is_zero,
    sdot,
    sdot_word,
    w0bar,
    wp_representative,
    x_cap,
    x_el,
    word_product,
)


def _as_scalar(v):
    if isinstance(v, int):
        return Fraction(v)
    return v


def reflect_position(n, pos):
    """Antidiagonal reflection (i, j) -> (n+1-j, n+1-i)."""
    i, j = pos
    return (n + 1 - j, n + 1 - i)


def reversed_parabolic(parabolic):
    """The parabolic whose block sizes are those of ``parabolic`` reversed."""
    n = parabolic.n
    return Parabolic(n, tuple(n - b for b in parabolic.breaks))


# ---------------------------------------------------------------- topology ---

class QuiverTopology:
    """Vertices, arrows and circled-reflection placements for one parabolic.

    Vertices are matrix positions ``(i, j)`` (row, column, 1-based).  The
    star of block r sits at ``(ns[r], ns[r-1]+1)``; dots fill every position
    strictly below the block diagonal.  Arrows join horizontally or
    vertically adjacent vertices, pointing up and to the left.  ``circles``
    records the circled s_i markers: the strip between rows i and i+1 inside
    block square r carries one marker per column ``ns[r-1]+1 .. i``.
    """

    def __init__(self, parabolic):
        P = parabolic
        n = P.n
        self.parabolic = P
        self.n = n
        self.stars = {(P.ns[r], P.ns[r - 1] + 1): r for r in range(1, P.l + 2)}
        self.vertices = {}
        for i in range(1, n + 1):
            r = P.block_of(i)
            for j in range(1, i + 1):
                if j > P.ns[r - 1]:
                    if (i, j) in self.stars:
                        self.vertices[(i, j)] = "star"
                else:
                    self.vertices[(i, j)] = "dot"
        self.dots = tuple(sorted(v for v, kind in self.vertices.items()
                                 if kind == "dot"))
        self.vertical = tuple(((i, j), (i - 1, j)) for (i, j) in sorted(self.vertices)
                              if (i - 1, j) in self.vertices)
        self.horizontal = tuple(((i, j), (i, j - 1)) for (i, j) in sorted(self.vertices)
                                if (i, j - 1) in self.vertices)
        self.arrows = self.vertical + self.horizontal
        circles = []
        for r in range(1, P.l + 2):
            for i in range(P.ns[r - 1] + 1, P.ns[r]):
                for c in range(P.ns[r - 1] + 1, i + 1):
                    circles.append((i, c))
        self.circles = tuple(circles)

    def ka(self, i, j):
        """Column/offset label (k, a) of the vertex at matrix position (i, j)."""
        return (j, i - j)

    def m_index(self, i, j):
        """Flat ideal-coordinate index s_k + a of the vertex at (i, j)."""
        k, a = self.ka(i, j)
        return self.parabolic.s_offset(k) + a

    def star_of_block(self, r):
        P = self.parabolic
        return (P.ns[r], P.ns[r - 1] + 1)

    def dots_in_column(self, c):
        return tuple(i for (i, j) in self.dots if j == c)

    def circles_in_column(self, c):
        return tuple(i for (i, cc) in self.circles if cc == c)

    def one_path(self, i, j):
        """The minimal path from dot (i, j) using exactly one vertical arrow:
        left along horizontals to the first column with an upward arrow, then
        up.  Returns ``(end, alpha, row)`` with ``alpha`` the arrow count and
        ``row`` the strip index the vertical arrow crosses."""
        jj = j
        while (i - 1, jj) not in self.vertices:
            jj -= 1
        return (i - 1, jj), j - jj + 1, i - 1

    def one_path_arrows(self, i, j):
        """The arrows of :meth:`one_path` in travel order."""
        (end, alpha, _row) = self.one_path(i, j)
        jj = end[1]
        out = [((i, c), (i, c - 1)) for c in range(j, jj, -1)]
        out.append(((i, jj), (i - 1, jj)))
        return tuple(out)


def build_topology(parabolic):
    return QuiverTopology(parabolic)


# -------------------------------------------------------------- decoration ---

@dataclass(frozen=True, eq=False)
class QuiverDecoration:
    """A fully decorated quiver: vertex potentials ``x`` and arrow
    coordinates ``r`` (always the head/tail potential ratio), together with
    the highest-weight entries ``d`` and the ideal coordinates ``m`` (keyed
    by flat index s_k + a) that produced them."""

    topology: QuiverTopology
    d: tuple
    m: dict
    x: dict
    r: dict


def box_relation_failures(topology, r):
    """Positions (i, j) of box lower-right corners where the two ways around
    the box disagree, given arrow coordinates ``r``."""
    bad = []
    for (i, j) in sorted(topology.vertices):
        corners = [(i, j), (i - 1, j), (i, j - 1), (i - 1, j - 1)]
        if not all(c in topology.vertices for c in corners):
            continue
        lhs = r[((i, j), (i, j - 1))] * r[((i, j - 1), (i - 1, j - 1))]
        rhs = r[((i, j), (i - 1, j))] * r[((i - 1, j), (i - 1, j - 1))]
        if not scalar_is_zero(lhs - rhs):
            bad.append((i, j))
    return tuple(bad)


def decorate(parabolic, d, m):
    """Decorate the quiver of ``parabolic`` from highest-weight coordinates
    ``d`` (one per block) and ideal coordinates ``m`` (a dict keyed by flat
    index s_k + a, or a sequence in increasing index order).

    Vertical arrows in column 1 carry m_a; each further column multiplies the
    arrow one step left by the ratio of its own coordinate to the previous
    column's.  The top dot of a column that does not sit under its block's
    star connects leftward instead, with the analogous rule.  Star potentials
    are the d's, every other potential follows by division, and all remaining
    arrows carry potential ratios, so the box relations hold by construction.
    """
    P = parabolic
    n = P.n
    topo = build_topology(P)
    d = tuple(_as_scalar(v) for v in d)
    if len(d) != P.l + 1:
        raise InvalidIndex(f"need {P.l + 1} highest-weight entries, got {len(d)}")
    expected = sorted(topo.m_index(i, j) for (i, j) in topo.dots)
    if isinstance(m, dict):
        mm = {int(k): _as_scalar(v) for k, v in m.items()}
    else:
        m = list(m)
        if len(m) != len(expected):
            raise InvalidIndex(
                f"need {len(expected)} ideal coordinates, got {len(m)}")
        mm = {k: _as_scalar(v) for k, v in zip(expected, m)}
    if sorted(mm) != expected:
        raise InvalidIndex(
            f"ideal coordinates keyed by {sorted(mm)}, expected {expected}")

    vval = {}

    def vertical_value(i, j):
        # the arrow (i, j) -> (i-1, j), leaving the dot v_(k, a) with k = j
        if (i, j) not in vval:
            k, a = j, i - j
            if k == 1:
                vval[(i, j)] = mm[a]
            else:
                vval[(i, j)] = (vertical_value(i, j - 1)
                                * mm[P.s_offset(k) + a] / mm[P.s_offset(k - 1) + a])
        return vval[(i, j)]

    for (tail, _head) in topo.vertical:
        vertical_value(*tail)

    hval = {}
    for b in range(1, P.l + 2):
        i0 = P.ns[b] + 1
        if i0 > n:
            continue
        for k in range(P.ns[b - 1] + 2, P.ns[b] + 1):
            a = P.ns[b] - k + 1
            idx = P.s_offset(k) + a
            if b == 1:
                hval[(i0, k)] = mm[idx]
            else:
                kp = P.ns[b - 1]
                hval[(i0, k)] = (vertical_value(kp + a + 1, kp)
                                 * mm[idx] / mm[P.s_offset(kp) + a])

    x = {topo.star_of_block(r): d[r - 1] for r in range(1, P.l + 2)}
    for c in range(1, n + 1):
        for i in topo.dots_in_column(c):
            if (i - 1, c) in topo.vertices:
                x[(i, c)] = _maybe_norm(x[(i - 1, c)] / vval[(i, c)])
            else:
                x[(i, c)] = _maybe_norm(x[(i, c - 1)] / hval[(i, c)])

    r = {}
    for (tail, head) in topo.arrows:
        r[(tail, head)] = _maybe_norm(x[head] / x[tail])
    for (tail, head) in topo.vertical:
        assert scalar_is_zero(r[(tail, head)] - vval[tail])
    for tail, declared in hval.items():
        assert scalar_is_zero(r[(tail, (tail[0], tail[1] - 1))] - declared)
    failures = box_relation_failures(topo, r)
    if failures:
        raise InconsistentBoxRelations(f"box relations fail at {failures}")
    return QuiverDecoration(topology=topo, d=d, m=mm, x=x, r=r)


def _maybe_norm(v):
    return v.normalized() if isinstance(v, RationalFunction) else v


def symbolic_decoration(parabolic, d_prefix="d", m_prefix="m"):
    """The generic decoration with formal variables d1, d2, ... and m_i
    named by flat index."""
    topo = build_topology(parabolic)
    d = tuple(RationalFunction.var(f"{d_prefix}{r}")
              for r in range(1, parabolic.l + 2))
    m = {topo.m_index(i, j): RationalFunction.var(f"{m_prefix}{topo.m_index(i, j)}")
         for (i, j) in topo.dots}
    return decorate(parabolic, d, m)


# ------------------------------------------------- superpotential and tori ---

def superpotential_F(dec):
    """The sum of all arrow coordinates."""
    arrows = sorted(dec.r)
    total = dec.r[arrows[0]]
    for a in arrows[1:]:
        total = total + dec.r[a]
    return total


def kappa(dec):
    """The torus element with the star potential of block r repeated along
    the rows of block r."""
    P = dec.topology.parabolic
    entries = [dec.x[dec.topology.star_of_block(P.block_of(j))]
               for j in range(1, P.n + 1)]
    return Matrix.diagonal(entries)


def _xi(dec, i):
    """Product of potentials along the i-th diagonal, substituting the block
    star for positions swallowed by a block square."""
    topo = dec.topology
    P = topo.parabolic
    total = None
    for row in range(i, P.n + 1):
        pos = (row, row - i + 1)
        if pos not in topo.vertices:
            pos = topo.star_of_block(P.block_of(row))
        v = dec.x[pos]
        total = v if total is None else total * v
    return total if total is not None else Fraction(1)


def gamma(dec):
    """The weight matrix diag(t_1, ..., t_n), t_i = Xi_i / Xi_{i+1}.

    Computed both as a ratio of diagonal potential products and through the
    one-vertical-path formula; the two must agree entry by entry.
    """
    topo = dec.topology
    P = topo.parabolic
    n = P.n
    xi = [_xi(dec, i) for i in range(1, n + 1)] + [Fraction(1)]
    ts = [_maybe_norm(xi[i] / xi[i + 1]) for i in range(n)]
    for i in range(1, n + 1):
        bottom = (n, n - i + 1)
        if bottom not in topo.vertices:
            bottom = topo.star_of_block(P.l + 1)
        t = dec.x[bottom]
        for row in range(i + 1, n + 1):
            pos = (row, row - i)
            if pos in topo.vertices and topo.vertices[pos] == "dot":
                end, _alpha, _row = topo.one_path(*pos)
                t = t * dec.x[end] / dec.x[pos]
        assert scalar_is_zero(ts[i - 1] - t)
    return Matrix.diagonal(ts)


# --------------------------------------------------------- critical points ---

@dataclass(frozen=True)
class CriticalReport:
    residuals: dict
    satisfied: bool


def critical_residuals(dec):
    """Incoming-minus-outgoing arrow sums at every dot vertex."""
    topo = dec.topology
    residuals = {}
    satisfied = True
    for v in topo.dots:
        total = Fraction(0)
        for (tail, head), val in dec.r.items():
            if head == v:
                total = total + val
            elif tail == v:
                total = total - val
        total = _maybe_norm(total)
        residuals[v] = total
        if not scalar_is_zero(total):
            satisfied = False
    return CriticalReport(residuals=residuals, satisfied=satisfied)


def verify_sum_at_vertex(dec):
    """On a critical decoration, check that the outgoing sum at each dot is
    its own ideal coordinate.  Returns ``{dot: bool}``."""
    if not critical_residuals(dec).satisfied:
        raise PreconditionViolated(
            "sum-at-vertex requires the critical point conditions")
    topo = dec.topology
    out = {}
    for v in topo.dots:
        total = Fraction(0)
        for (tail, _head), val in dec.r.items():
            if tail == v:
                total = total + val
        out[v] = scalar_is_zero(total - dec.m[topo.m_index(*v)])
    return out


def coroot_ratios_from_critical_m(parabolic, m_prefix="m"):
    """Monomials in formal ideal coordinates that recover the star-potential
    ratios of consecutive columns on any critical decoration.

    On a critical decoration the bottom-wall horizontal into column j carries
    the coordinate of the dot it feeds, which pins the ratio of the stars
    over columns j and j+1 - for the full flag variety this is the simple
    coroot value d_j/d_{j+1}.  Only these ratios are visible: the individual
    d's are not recoverable from the m's.  Returns ``{j: monomial}``.
    """
    P = parabolic
    ones = (Fraction(1),) * (P.l + 1)
    topo = build_topology(P)
    m = {topo.m_index(i, j): RationalFunction.var(f"{m_prefix}{topo.m_index(i, j)}")
         for (i, j) in topo.dots}
    dec = decorate(P, ones, m)
    n = P.n
    out = {}
    for j in range(1, n):
        arrow = ((n, j + 1), (n, j))
        if arrow not in dec.r:
            continue
        out[j] = _maybe_norm(dec.m[topo.m_index(n, j)] / dec.r[arrow])
    return out


# ------------------------------------------------- column factorizations ---

def x_cap_factors(i, alpha, args):
    """Elementary x-factors whose product is the height-``alpha`` matrix
    ``x_cap(i, alpha, prod(args))``, via the commutator doubling recursion.
    ``args`` carries one coordinate per arrow of the corresponding path."""
    args = tuple(args)
    if len(args) != alpha:
        raise InvalidIndex(f"need {alpha} path coordinates, got {len(args)}")

    def rec(j, vals):
        if j == 1:
            return [Factor("x", i - alpha + 1, vals[0])]
        head = rec(j - 1, vals[: j - 1])
        flipped = rec(j - 1, vals[: j - 2] + (-vals[j - 2],))
        return (head + [Factor("x", i - alpha + j, vals[j - 1])]
                + flipped + [Factor("x", i - alpha + j, -vals[j - 1])])

    return rec(alpha, args)


def _gl_column_data(dec):
    """Per-column path and circle data for the left factorization, in
    product order: columns left to right, dots bottom to top, then the
    column's circled markers."""
    topo = dec.topology
    P = topo.parabolic
    cols = []
    for c in range(1, P.ns[P.l] + 1):
        paths = []
        for i in sorted(topo.dots_in_column(c), reverse=True):
            end, alpha, row = topo.one_path(i, c)
            arg = _maybe_norm(dec.x[end] / dec.x[(i, c)])
            paths.append(((i, c), end, alpha, row, arg))
        circles = tuple(sorted(topo.circles_in_column(c), reverse=True))
        cols.append((c, paths, circles))
    return cols


def matrices_gl_ul(dec):
    """The decorated and plain unipotent column factorizations ``(g_L, u_L)``
    of the quiver read left of the last block square.

    ``g_L`` takes one elementary factor per one-vertical-path and one dotted
    reflection per circled marker; ``u_L`` drops the reflections and widens
    each length-``alpha`` path factor to height ``alpha``.  They satisfy
    ``g_L wdot_{L_{l+1}} = u_L wdot_P`` exactly.
    """
    topo = dec.topology
    P = topo.parabolic
    n = P.n
    g = Matrix.identity(n)
    u = Matrix.identity(n)
    for (_c, paths, circles) in _gl_column_data(dec):
        for (_start, _end, alpha, row, arg) in paths:
            g = g * x_el(row, arg, n)
            u = u * x_cap(row, alpha, arg, n)
        for i in circles:
            g = g * sdot(i, n)
    wl_last = sdot_word(P.wl_word(P.l + 1), n)
    assert g * wl_last == u * wp_representative(P)
    return g, u


def ul_factor_list(dec):
    """``u_L`` as a flat list of elementary x-factors (heights expanded by
    the doubling recursion), suitable for planar-network path counting."""
    topo = dec.topology
    out = []
    for (_c, paths, circles) in _gl_column_data(dec):
        for (start, _end, alpha, row, _arg) in paths:
            if alpha == 1:
                arrows = topo.one_path_arrows(*start)
                out.append(Factor("x", row, dec.r[arrows[0]]))
            else:
                args = [dec.r[a] for a in topo.one_path_arrows(*start)]
                out.extend(x_cap_factors(row, alpha, args))
    return out


def matrices_gr_ur(dec):
    """The reflected-quiver factorizations ``(g_R, u_R~, marker_word)``.

    The quiver is reflected across the antidiagonal (arrows now point down
    and right, potentials carried along); ``g_R`` collects, over columns
    right to left, the column's circled markers and then one elementary
    factor per path ending at each dot, top to bottom.  ``u_R~`` drops the
    markers and widens a length-``alpha`` factor to height ``alpha`` with
    argument sign ``(-1)^(alpha-1)``.  They satisfy ``g_R = wdot_R u_R~``
    with ``wdot_R`` the product of the markers in collection order, returned
    as ``marker_word``.
    """
    topo = dec.topology
    P = topo.parabolic
    n = P.n
    Pr = reversed_parabolic(P)
    topoR = build_topology(Pr)
    xR = {v: dec.x[reflect_position(n, v)] for v in topoR.vertices}
    g = Matrix.identity(n)
    u = Matrix.identity(n)
    word = []
    for c in range(Pr.ns[Pr.l], 0, -1):
        for i in topoR.circles_in_column(c):
            g = g * sdot(i, n)
            word.append(i)
        for i in topoR.dots_in_column(c):
            jj = c
            while (i - 1, jj) not in topoR.vertices:
                jj -= 1
            alpha = c - jj + 1
            row = i - 1
            arg = _maybe_norm(xR[(i, c)] / xR[(i - 1, jj)])
            g = g * x_el(row, arg, n)
            u = u * x_cap(row, alpha, arg if alpha % 2 else -arg, n)
    wR = sdot_word(tuple(word), n)
    assert g == wR * u
    return g, u, tuple(word)


# ------------------------------------------------------------- chart and b ---

@dataclass(frozen=True)
class ZPElement:
    """A point of the lower-triangular target chart, with its factorization
    pieces: ``b = u_l kappa wdot_P w0bar u_r`` and ``gamma`` its diagonal."""

    b: Matrix
    u_l: Matrix
    kappa: Matrix
    u_r: Matrix
    gamma: Matrix
    parabolic: Parabolic

    def check(self):
        n = self.parabolic.n
        prod = (self.u_l * self.kappa * wp_representative(self.parabolic)
                * w0bar(n) * self.u_r)
        lower = all(scalar_is_zero(self.b.entry(i, j))
                    for i in range(1, n + 1) for j in range(i + 1, n + 1))
        return prod == self.b and lower


def quiver_chart_theta(dec):
    """The chart map of the decoration: the unique completion of
    ``u_L kappa wdot_P w0bar`` by an upper-unitriangular ``u_R`` landing in
    the lower-triangular Borel.  The diagonal of the result is ``gamma``.

    Raises :class:`SingularPrincipalMinor` when no such completion exists.
    """
    P = dec.topology.parabolic
    n = P.n
    _gl, ul = matrices_gl_ul(dec)
    kap = kappa(dec)
    M = ul * kap * wp_representative(P) * w0bar(n)
    low, diag, up = M.ldu()
    gam = gamma(dec)
    assert diag == gam
    return ZPElement(b=low * diag, u_l=ul, kappa=kap, u_r=up.inverse(),
                     gamma=gam, parabolic=P)


@dataclass(frozen=True)
class ConjectureReport:
    """Outcome of comparing the reflected-quiver unipotent against the one
    forced by lower-triangularity, for one explicit decoration."""

    parabolic: Parabolic
    holds: bool
    u_r_forced: Matrix
    u_r_quiver: Matrix

    def __bool__(self):
        return self.holds


def check_conjecture(dec):
    """Does the reflected-quiver ``u_R~`` complete the chart product into the
    lower-triangular Borel?  Exact comparison; proven for Grassmannians and
    the full flag variety, open in general."""
    theta = quiver_chart_theta(dec)
    _gr, ur, _word = matrices_gr_ur(dec)
    return ConjectureReport(parabolic=dec.topology.parabolic,
                            holds=theta.u_r == ur,
                            u_r_forced=theta.u_r,
                            u_r_quiver=ur)


# ------------------------------------------------------------------ export ---

def quiver_json(dec):
    """JSON-ready description: vertices with their labels and potentials,
    arrows with their coordinates, all values as canonical strings."""
    topo = dec.topology
    P = topo.parabolic
    vertices = []
    for (i, j) in sorted(topo.vertices):
        k, a = topo.ka(i, j)
        vertices.append({
            "kind": topo.vertices[(i, j)],
            "i": i, "j": j, "k": k, "a": a,
            "value": str(dec.x[(i, j)]),
        })
    arrows = [{"from": list(tail), "to": list(head), "value": str(dec.r[(tail, head)])}
              for (tail, head) in sorted(dec.r)]
    return {
        "n": P.n,
        "breaks": list(P.breaks),
        "vertices": vertices,
        "arrows": arrows,
    }


def quiver_dot(dec):
    """Graphviz source for the decorated quiver (stars boxed, dots round)."""
    topo = dec.topology
    lines = ["digraph quiver {", "  rankdir=LR;", "  node [fontsize=10];"]
    for (i, j) in sorted(topo.vertices):
        k, a = topo.ka(i, j)
        shape = "box" if topo.vertices[(i, j)] == "star" else "circle"
        lines.append(
            f'  v{i}_{j} [label="v({k},{a})\\n{dec.x[(i, j)]}", shape={shape},'
            f' pos="{j},{-i}!"];')
    for (tail, head) in sorted(dec.r):
        (ti, tj), (hi, hj) = tail, head
        lines.append(
            f'  v{ti}_{tj} -> v{hi}_{hj} [label="{dec.r[(tail, head)]}"];')
    lines.append("}")
    return "\n".join(lines)
