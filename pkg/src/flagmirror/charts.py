"""Toric charts on the mirror variety Z and the coordinate changes between them.

Z sits inside GL_n as B_- intersected with B w0bar B.  An element b of Z
factors in two ways:

    b = u1 * diag(d) * w0bar * u2        (u1, u2 upper unitriangular)
    b = [b]_- * t_R                      (lower unitriangular times diagonal)

The *string chart* parametrises b by (d, z) through the unipotent element
x_{-i_1}(z_1) ... x_{-i_N}(z_N) and the eta/iota twists; the *ideal chart*
parametrises the same b by (d, m) through a product of simple lower
elementary matrices y_i(1/m) against the universal weight matrix.  The m
coordinates are keyed by positive roots, which makes the braid-move
transition rules position-free.

All coordinate changes here are subtraction-free (positive) rational maps.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import (
    InvalidMove,
    NotReduced,
    WordNotSupported,
    ZeroChamberMinor,
)
from .weyl import (
    all_positive_roots,
    apply_braid_move,
    braid_path,
    is_reduced,
    longest_element,
    perm_from_word,
    perm_id,
    perm_mul,
    root_order,
    root_str,
    simple,
    word_i0,
)
from .matrices import (
    Matrix,
    minor,
    scalar_is_zero,
    w0bar,
    x_neg_word,
    y_el,
    iota,
    twist_eta,
)


def _n_from_count(N):
    # N = n(n-1)/2
    n = int(round((1 + (1 + 8 * N) ** 0.5) / 2))
    if n * (n - 1) // 2 != N:
        raise ValueError(f"{N} is not of the form n(n-1)/2")
    return n


def s_offset(n, k):
    """s_k = sum_{j<k} (n-j); the start offset of the k-th run of i0."""
    return sum(n - j for j in range(1, k))


def word_i0_prime(n):
    """The word (n-1,...,1, n-1,...,2, ..., n-1) used for the x-factorization of u1."""
    out = []
    for k in range(1, n):
        out.extend(range(n - 1, k - 1, -1))
    return tuple(out)


# ---------------------------------------------------------------------------
# chart points


@dataclass(frozen=True)
class StringPoint:
    d: tuple
    z: tuple
    word: tuple

    def __post_init__(self):
        n = len(self.d)
        N = n * (n - 1) // 2
        if len(self.z) != N:
            raise ValueError(f"expected {N} z-coordinates for n={n}, got {len(self.z)}")
        if len(self.word) != N or not is_reduced(self.word, n) or \
                perm_from_word(self.word, n) != longest_element(n):
            raise NotReduced(f"word {self.word} is not a reduced word for w0 in S_{n}")


@dataclass(frozen=True)
class IdealPoint:
    d: tuple
    m: dict
    word: tuple

    def __post_init__(self):
        n = len(self.d)
        N = n * (n - 1) // 2
        if len(self.word) != N or not is_reduced(self.word, n) or \
                perm_from_word(self.word, n) != longest_element(n):
            raise NotReduced(f"word {self.word} is not a reduced word for w0 in S_{n}")
        if set(self.m) != set(all_positive_roots(n)):
            raise ValueError("m must carry exactly one value per positive root")


def string_point(d, z, word=None):
    d = tuple(d)
    word = word_i0(len(d)) if word is None else tuple(word)
    return StringPoint(d, tuple(z), word)


def ideal_point(d, m, word=None):
    d = tuple(d)
    word = word_i0(len(d)) if word is None else tuple(word)
    return IdealPoint(d, dict(m), word)


# ---------------------------------------------------------------------------
# the chart element


def _chi(u):
    """Sum of the entries just above the diagonal (the principal character)."""
    n = u.shape[0]
    total = 0
    for i in range(1, n):
        total = u.entry(i, i + 1) + total
    return total


@dataclass(frozen=True)
class ZElement:
    b: Matrix
    u1: Matrix
    d: tuple
    u2: Matrix
    lower: Matrix
    t_R: Matrix

    def superpotential(self):
        return _chi(self.u1) + _chi(self.u2)

    def check(self):
        """Both factorizations multiply back to b."""
        n = len(self.d)
        lhs = self.u1 * Matrix.diagonal(self.d) * w0bar(n) * self.u2
        return lhs == self.b and self.lower * self.t_R == self.b


def _factor_b(b, d):
    """Recover (u1, u2) with b = u1 diag(d) w0bar u2 from b and d alone.

    w0bar b^{-1} = (w0bar u2^{-1} w0bar^{-1}) diag(d)^{-1} u1^{-1} is an
    LDU-decomposable product, so one triangular factorization suffices.
    """
    n = len(d)
    w = w0bar(n)
    L0, D0, U0 = (w * b.inverse()).ldu()
    u1 = U0.inverse()
    u2 = w.inverse() * L0.inverse() * w
    return u1, u2


def string_chart(p: StringPoint) -> ZElement:
    n = len(p.d)
    u = x_neg_word(p.word, p.z, n)
    u1 = iota(twist_eta(u))
    M = u1 * Matrix.diagonal(p.d) * w0bar(n)
    L, D, U = M.ldu()
    return ZElement(b=L * D, u1=u1, d=tuple(p.d), u2=U.inverse(), lower=L, t_R=D)


def ideal_chart(p: IdealPoint) -> ZElement:
    n = len(p.d)
    roots = root_order(p.word, n)
    low = Matrix.identity(n)
    for letter, alpha in zip(p.word, roots):
        low = low * y_el(letter, 1 / _as_scalar(p.m[alpha]), n)
    t_R = universal_weight_matrix(p.d, p.m)
    b = low * t_R
    u1, u2 = _factor_b(b, p.d)
    return ZElement(b=b, u1=u1, d=tuple(p.d), u2=u2, lower=low, t_R=t_R)


def _as_scalar(v):
    if isinstance(v, int):
        return Fraction(v)
    return v


# ---------------------------------------------------------------------------
# weight matrices


def universal_weight_matrix(d, m):
    """Diagonal matrix whose (n-j+1)-th entry is
    d_j * prod_{l<j} m_{(l,j)} / prod_{l>=j} m_{(j,l+1)}."""
    n = len(d)
    entries = [None] * n
    for j in range(1, n + 1):
        v = _as_scalar(d[j - 1])
        for l in range(1, j):
            v = v * _as_scalar(m[(l, j)])
        for l in range(j, n):
            v = v / _as_scalar(m[(j, l + 1)])
        entries[n - j] = v
    return Matrix.diagonal(entries)


def weight_matrix_string(p: StringPoint):
    """t_R in string coordinates; only available for the word i0."""
    n = len(p.d)
    if tuple(p.word) != word_i0(n):
        raise WordNotSupported(
            "the closed-form weight matrix in z-coordinates is specific to the word i0")
    entries = [None] * n
    for j in range(1, n + 1):
        v = _as_scalar(p.d[j - 1])
        for pos, letter in enumerate(p.word):
            if letter == j - 1:
                v = v * _as_scalar(p.z[pos])
            elif letter == j:
                v = v / _as_scalar(p.z[pos])
        entries[n - j] = v
    return Matrix.diagonal(entries)


# ---------------------------------------------------------------------------
# coordinate changes (word i0)


def string_to_ideal(z):
    """Monomial change from i0-string coordinates to root-keyed ideal coordinates.

    m at the root (k, k+a) is z_{1+s_{n-a}} when k = 1 and
    z_{k+s_{n-k-a+1}} / z_{k-1+s_{n-k-a+1}} otherwise.
    """
    n = _n_from_count(len(z))
    out = {}
    for k in range(1, n):
        for a in range(1, n - k + 1):
            if k == 1:
                v = _as_scalar(z[s_offset(n, n - a)])
            else:
                j = s_offset(n, n - k - a + 1)
                v = _as_scalar(z[k + j - 1]) / _as_scalar(z[k - 1 + j - 1])
            out[(k, k + a)] = v
    return out


def ideal_to_string(m):
    """Inverse of string_to_ideal; telescoping products along columns of roots.

    z_{k+s_j} = m_{(1, n-j+1)} m_{(2, n-j+1)} ... m_{(k, n-j+1)}.
    """
    n = _n_from_count(len(m))
    z = [None] * (n * (n - 1) // 2)
    for j in range(1, n):
        acc = None
        for k in range(1, n - j + 1):
            v = _as_scalar(m[(k, n - j + 1)])
            acc = v if acc is None else acc * v
            z[k + s_offset(n, j) - 1] = acc
    return tuple(z)


def p_coords(z):
    """Coordinates of u1 along the word word_i0_prime(n):
    p_{s_k+a} = z_{k+s_a}  (k=1),  z_{k+s_a}/z_{k-1+s_{a+1}}  otherwise."""
    n = _n_from_count(len(z))
    p = [None] * len(z)
    for k in range(1, n):
        for a in range(1, n - k + 1):
            num = _as_scalar(z[k + s_offset(n, a) - 1])
            if k == 1:
                v = num
            else:
                v = num / _as_scalar(z[k - 1 + s_offset(n, a + 1) - 1])
            p[s_offset(n, k) + a - 1] = v
    return tuple(p)


# ---------------------------------------------------------------------------
# braid moves


def _root_sum(alpha, beta):
    (i1, j1), (i2, j2) = alpha, beta
    if j1 == i2:
        return (i1, j2)
    if j2 == i1:
        return (i2, j1)
    return None


def braid_transform_m(word, pos, m):
    """Transport root-keyed ideal coordinates across one braid move of `word`.

    A 2-move leaves the root-keyed values untouched.  A 3-move at roots
    (alpha, alpha+beta, beta) sends

        m_alpha      -> m_{alpha+beta} (m_alpha + m_beta) / m_beta
        m_{alpha+beta} -> m_alpha m_beta / (m_alpha + m_beta)
        m_beta       -> m_{alpha+beta} (m_alpha + m_beta) / m_alpha.
    """
    word = tuple(word)
    n = max(word) + 1
    if pos < 0 or pos >= len(word) - 1:
        raise InvalidMove(f"no move window starts at position {pos}")
    if abs(word[pos] - word[pos + 1]) >= 2:
        return dict(m)
    if pos + 2 < len(word) and word[pos] == word[pos + 2] and \
            abs(word[pos] - word[pos + 1]) == 1:
        roots = root_order(word, n)
        alpha, mid, beta = roots[pos], roots[pos + 1], roots[pos + 2]
        if _root_sum(alpha, beta) != mid:
            raise InvalidMove(
                f"roots at positions {pos}..{pos + 2} do not form an (a, a+b, b) triple")
        a, c, b = _as_scalar(m[alpha]), _as_scalar(m[mid]), _as_scalar(m[beta])
        s = a + b
        out = dict(m)
        out[alpha] = c * s / b
        out[mid] = a * b / s
        out[beta] = c * s / a
        return out
    raise InvalidMove(f"letters {word[pos:pos + 3]} at position {pos} admit no move")


def braid_transform_z(word, pos, z):
    """Transport string coordinates across one braid move of `word`.

    These are the transition rules for products of the lower elementary
    factors x_{-i}(z): a 2-move swaps the two arguments, a 3-move sends
    (a, b, c) to (bc/(b+ac), ac, (b+ac)/c).
    """
    word = tuple(word)
    z = list(z)
    if pos < 0 or pos >= len(word) - 1:
        raise InvalidMove(f"no move window starts at position {pos}")
    if abs(word[pos] - word[pos + 1]) >= 2:
        z[pos], z[pos + 1] = z[pos + 1], z[pos]
        return tuple(z)
    if pos + 2 < len(word) and word[pos] == word[pos + 2] and \
            abs(word[pos] - word[pos + 1]) == 1:
        a, b, c = (_as_scalar(v) for v in z[pos:pos + 3])
        den = b + a * c
        z[pos:pos + 3] = [b * c / den, a * c, den / c]
        return tuple(z)
    raise InvalidMove(f"letters {word[pos:pos + 3]} at position {pos} admit no move")


def string_to_ideal_general(word, z):
    """The map from string to root-keyed ideal coordinates for any reduced word.

    Factors through i0: push z along braid moves to i0-string coordinates,
    apply the closed monomial change there, then transport the root-keyed m
    back along the reversed moves.
    """
    word = tuple(word)
    n = max(word) + 1
    i0 = word_i0(n)
    if word == i0:
        return string_to_ideal(z)
    path = braid_path(word, i0, n)
    w, zz = word, tuple(z)
    for kind, p in path:
        zz = braid_transform_z(w, p, zz)
        w = apply_braid_move(w, kind, p)
    m = string_to_ideal(zz)
    back = braid_path(i0, word, n)
    w = i0
    for kind, p in back:
        m = braid_transform_m(w, p, m)
        w = apply_braid_move(w, kind, p)
    return m


# ---------------------------------------------------------------------------
# the chamber formula


def flag_minor(g, perm, j):
    """Minor of g on rows 1..j and columns perm({1..j})."""
    n = g.shape[0]
    if j <= 0 or j >= n:
        return Fraction(1)
    cols = tuple(sorted(perm[i] for i in range(j)))
    return minor(g, tuple(range(1, j + 1)), cols)


def chamber_ansatz_coords(u1, word):
    """The y-arguments t_k with u1 w0bar B+ = y_{i_1}(t_1)...y_{i_N}(t_N) B+.

    t_k is a quotient of four flag minors of u1 taken at the partial products
    of `word`; for the ideal chart these are exactly the inverses 1/m of the
    root-keyed coordinates read in word order.
    """
    n = u1.shape[0]
    word = tuple(word)
    if not is_reduced(word, n) or perm_from_word(word, n) != longest_element(n):
        raise NotReduced(f"word {word} is not a reduced word for w0 in S_{n}")
    perms = [perm_id(n)]
    for letter in word:
        perms.append(perm_mul(perms[-1], simple(letter, n)))
    cache = {}

    def D(k, j):
        if j <= 0 or j >= n:
            return Fraction(1)
        key = (tuple(sorted(perms[k][i] for i in range(j))), j)
        if key not in cache:
            cache[key] = minor(u1, tuple(range(1, j + 1)), key[0])
        return cache[key]

    out = []
    for k in range(1, len(word) + 1):
        i = word[k - 1]
        den1, den2 = D(k, i), D(k - 1, i)
        if scalar_is_zero(den1) or scalar_is_zero(den2):
            raise ZeroChamberMinor(
                f"chamber minor vanishes at position {k} of word {word}")
        out.append(D(k, i - 1) * D(k, i + 1) / (den1 * den2))
    return tuple(out)


# ---------------------------------------------------------------------------
# serialization


def chart_json(point, zel):
    """CLI-facing dictionary with canonical strings for all entries."""
    if isinstance(point, StringPoint):
        kind = "string"
        coords = {f"z{k + 1}": str(v) for k, v in enumerate(point.z)}
    else:
        kind = "ideal"
        coords = {root_str(alpha): str(point.m[alpha])
                  for alpha in sorted(point.m)}
    return {
        "chart": kind,
        "word": list(point.word),
        "d": [str(v) for v in point.d],
        "coords": coords,
        "b": [[str(zel.b.entry(i, j)) for j in range(1, len(point.d) + 1)]
              for i in range(1, len(point.d) + 1)],
        "superpotential": str(zel.superpotential()),
    }
