"""Symmetric-group combinatorics: reduced words, root orders, braid moves,
and block data for standard parabolics of GL(n).

Permutations are one-line tuples ``w`` with ``w[i-1] = w(i)``; words are
tuples of simple-reflection indices in ``1..n-1``; positive roots are pairs
``(i, j)`` with ``i < j``.
"""

from __future__ import annotations

from collections import deque

from .errors import DifferentTargets, InvalidIndex, NotReduced


# ----------------------------------------------------------- permutations ---

def perm_id(n):
    return tuple(range(1, n + 1))

def perm_mul(u, v):
    """(u v)(i) = u(v(i))."""
    return tuple(u[v[i] - 1] for i in range(len(u)))

def perm_inverse(u):
    out = [0] * len(u)
    for i, ui in enumerate(u, start=1):
        out[ui - 1] = i
    return tuple(out)

def simple(i, n):
    if not 1 <= i <= n - 1:
        raise InvalidIndex(f"simple reflection s_{i} undefined for n={n}")
    w = list(range(1, n + 1))
    w[i - 1], w[i] = w[i], w[i - 1]
    return tuple(w)

def inversions(w):
    n = len(w)
    return sum(1 for i in range(n) for j in range(i + 1, n) if w[i] > w[j])

def perm_from_word(word, n):
    w = perm_id(n)
    for i in word:
        w = perm_mul(w, simple(i, n))
    return w

def longest_element(n):
    return tuple(range(n, 0, -1))


# ----------------------------------------------------------------- words ---

def word_i0(n):
    """The standard reduced word for w0: (1..n-1, 1..n-2, ..., 1 2, 1)."""
    out = []
    for k in range(n - 1, 0, -1):
        out.extend(range(1, k + 1))
    return tuple(out)

def is_reduced(word, n):
    return inversions(perm_from_word(word, n)) == len(word)

def root_order(word, n):
    """The positive roots in the order induced by the reduced word.

    The j-th root is the image of the j-th simple root under the length-(j-1)
    prefix; for a reduced word these are distinct positive roots and exhaust
    the inversion set of the full product.
    """
    if not is_reduced(word, n):
        raise NotReduced(f"{word} is not reduced for n={n}")
    prefix = perm_id(n)
    roots = []
    for i in word:
        a, b = prefix[i - 1], prefix[i]
        if a > b:
            raise NotReduced(f"{word} is not reduced for n={n}")
        roots.append((a, b))
        prefix = perm_mul(prefix, simple(i, n))
    return tuple(roots)

def root_str(root):
    i, j = root
    return f"a_{{{i},{j}}}"

def all_positive_roots(n):
    return tuple((i, j) for i in range(1, n) for j in range(i + 1, n + 1))


# ----------------------------------------------------------- braid moves ---

def braid_moves(word):
    """All moves applicable to the word: ``("swap", p)`` exchanges commuting
    letters at positions p, p+1; ``("braid", p)`` rewrites i j i -> j i j at
    positions p, p+1, p+2 (0-based)."""
    out = []
    for p in range(len(word) - 1):
        if abs(word[p] - word[p + 1]) >= 2:
            out.append(("swap", p))
    for p in range(len(word) - 2):
        if word[p] == word[p + 2] and abs(word[p] - word[p + 1]) == 1:
            out.append(("braid", p))
    return out

def apply_braid_move(word, kind, p):
    word = tuple(word)
    if kind == "swap":
        if p < 0 or p + 1 >= len(word) or abs(word[p] - word[p + 1]) < 2:
            raise InvalidIndex(f"no commuting pair at position {p}")
        return word[:p] + (word[p + 1], word[p]) + word[p + 2:]
    if kind == "braid":
        if (p < 0 or p + 2 >= len(word) or word[p] != word[p + 2]
                or abs(word[p] - word[p + 1]) != 1):
            raise InvalidIndex(f"no braid triple at position {p}")
        i, j = word[p], word[p + 1]
        return word[:p] + (j, i, j) + word[p + 3:]
    raise InvalidIndex(f"unknown move kind {kind!r}")

def apply_braid_path(word, path):
    for kind, p in path:
        word = apply_braid_move(word, kind, p)
    return word

def braid_path(a, b, n):
    """A sequence of braid/commutation moves turning word a into word b.

    Both words must be reduced expressions for the same permutation.  Found
    by breadth-first search over the graph of reduced words, which is
    connected by the Tits theorem; fine in practice up to n = 6.
    """
    a, b = tuple(a), tuple(b)
    if not is_reduced(a, n):
        raise NotReduced(f"{a} is not reduced for n={n}")
    if not is_reduced(b, n):
        raise NotReduced(f"{b} is not reduced for n={n}")
    if perm_from_word(a, n) != perm_from_word(b, n):
        raise DifferentTargets("the two words express different permutations")
    if a == b:
        return []
    parent = {a: None}
    queue = deque([a])
    while queue:
        w = queue.popleft()
        for kind, p in braid_moves(w):
            w2 = apply_braid_move(w, kind, p)
            if w2 in parent:
                continue
            parent[w2] = (w, (kind, p))
            if w2 == b:
                path = []
                cur = w2
                while parent[cur] is not None:
                    prev, move = parent[cur]
                    path.append(move)
                    cur = prev
                path.reverse()
                return path
            queue.append(w2)
    raise DifferentTargets("braid search exhausted without reaching the target")


# ------------------------------------------------------------- parabolics ---

class Parabolic:
    """A standard parabolic of GL(n), recorded by its break set
    ``n_1 < ... < n_l`` (the complement of the parabolic's simple roots).

    ``ns`` prepends 0 and appends n, so block r spans rows/columns
    ``ns[r-1]+1 .. ns[r]`` for r = 1..l+1.
    """

    def __init__(self, n, breaks=()):
        breaks = tuple(sorted(set(int(b) for b in breaks)))
        if any(not 0 < b < n for b in breaks):
            raise InvalidIndex(f"break set {breaks} out of range for n={n}")
        self.n = n
        self.breaks = breaks
        self.ns = (0,) + breaks + (n,)
        self.blocks = tuple(self.ns[r + 1] - self.ns[r] for r in range(len(breaks) + 1))
        self.l = len(breaks)

    @staticmethod
    def borel(n):
        return Parabolic(n, range(1, n))

    @staticmethod
    def grassmannian(k, n):
        return Parabolic(n, (k,))

    def __repr__(self):
        return f"Parabolic(n={self.n}, breaks={self.breaks})"

    def __eq__(self, other):
        return (isinstance(other, Parabolic)
                and (self.n, self.breaks) == (other.n, other.breaks))

    def __hash__(self):
        return hash((self.n, self.breaks))

    def is_borel(self):
        return self.l == self.n - 1

    def block_of(self, j):
        """1-based block index of row/column j."""
        if not 1 <= j <= self.n:
            raise InvalidIndex(f"index {j} out of range for n={self.n}")
        for r in range(1, self.l + 2):
            if j <= self.ns[r]:
                return r
        raise AssertionError

    def s_offset(self, k):
        """Offset of column k's coordinate indices: the column's entries are
        m_{s_k+1}, m_{s_k+2}, ...  with s_k = (n-1) + (n-2) + ... + (n-k+1)."""
        n = self.n
        return sum(n - j for j in range(1, k))

    def first_dot_row(self, k):
        """Topmost row strictly below the diagonal square containing column k."""
        return self.ns[self.block_of(k)] + 1

    def dot_rows(self, k):
        return tuple(range(self.first_dot_row(k), self.n + 1))

    def coordinate_count(self):
        return sum(len(self.dot_rows(k)) for k in range(1, self.n))

    def wp_w0_word(self):
        """Reduced word for w_P w0 read off column by column: column k
        contributes one letter a per box strictly below its diagonal square,
        from the top box down, namely a = row - k."""
        out = []
        for k in range(1, self.n):
            for i in self.dot_rows(k):
                out.append(i - k)
        return tuple(out)

    def wl_word(self, r):
        """Reduced word for the longest element of the r-th diagonal block."""
        lo, hi = self.ns[r - 1] + 1, self.ns[r]
        out = []
        for start in range(lo, hi):
            out.extend(range(hi - 1, start - 1, -1))
        return tuple(out)

    def wp_word(self):
        """Reduced word for w_P (concatenated longest block elements)."""
        out = []
        for r in range(1, self.l + 2):
            out.extend(self.wl_word(r))
        return tuple(out)

    def pad_weight(self, lam):
        """Expand a length-(l+1) block weight to a length-n weight."""
        lam = tuple(lam)
        if len(lam) != self.l + 1:
            raise InvalidIndex(
                f"need {self.l + 1} block weight entries, got {len(lam)}")
        out = []
        for r, size in enumerate(self.blocks):
            out.extend([lam[r]] * size)
        return tuple(out)

    def dominant_ok(self, lam):
        """Is a length-(l+1) block weight strictly dominant across blocks?"""
        lam = tuple(lam)
        return all(lam[i] > lam[i + 1] for i in range(len(lam) - 1))
