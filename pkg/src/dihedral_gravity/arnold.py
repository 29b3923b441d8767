"""Orlik-Solomon model of the cohomology of M_{0,n}.

With ``(z_1, ..., z_n) = (inf, 0, t_1, ..., t_{n-3}, 1)`` the moduli space is
the complement of the hyperplanes ``t_i = 0``, ``t_i = 1`` and ``t_i = t_j``.
Every such hyperplane is ``z_a = z_b`` for a pair ``2 <= a < b <= n``, so the
coned arrangement is the graphic arrangement of the complete graph on
``{2, ..., n}``; the extra edge ``{2, n}`` is the hyperplane at infinity.
Circuits are cycles of that graph, and the affine algebra is the quotient of
the central one by the generator at infinity.  Putting that generator first in
the order, the nbc sets avoiding it form a basis of the quotient.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from typing import Iterable, Sequence

import numpy as np

from . import cache
from .polygon import chord_table


@dataclass(frozen=True)
class ModuliArrangement:
    n: int
    pairs: tuple[tuple[int, int], ...]  # z-index pair (a, b) of each hyperplane z_a = z_b
    labels: tuple[str, ...]

    @property
    def dim(self) -> int:
        return self.n - 3

    @property
    def normals(self) -> list[tuple[tuple[Fraction, ...], Fraction]]:
        """Each hyperplane as ``(normal vector in t-coordinates, constant)``."""
        m = self.dim
        out = []
        for a, b in self.pairs:
            vec = [Fraction(0)] * m
            const = Fraction(0)
            for z, sgn in ((b, 1), (a, -1)):
                if z == self.n:
                    const += sgn
                elif z > 2:
                    vec[z - 3] += sgn
            out.append((tuple(vec), const))
        return out

    def __len__(self):
        return len(self.pairs)


@lru_cache(maxsize=None)
def moduli_arrangement(n: int) -> ModuliArrangement:
    if n < 3:
        raise ValueError(f"M_0,n needs n >= 3, got {n}")
    m = n - 3
    pairs, labels = [], []
    for i in range(1, m + 1):
        pairs.append((2, i + 2))
        labels.append(f"t{i}")
    for i in range(1, m + 1):
        pairs.append((i + 2, n))
        labels.append(f"t{i}-1")
    for i, j in combinations(range(1, m + 1), 2):
        pairs.append((i + 2, j + 2))
        labels.append(f"t{i}-t{j}")
    return ModuliArrangement(n, tuple(pairs), tuple(labels))


# ---------------------------------------------------------------------------
# reduction to the nbc basis
#
# Internally hyperplane h is graph edge h + 1 and edge 0 is {2, n}.


@lru_cache(maxsize=None)
def _edges(n: int) -> tuple[tuple[int, int], ...]:
    return ((2, n),) + moduli_arrangement(n).pairs


def sort_sign(seq: Sequence[int]) -> tuple[int, tuple[int, ...]]:
    """Sign of the permutation sorting ``seq`` (0 on repeats) and the sorted tuple."""
    s = list(seq)
    sign = 1
    for i in range(1, len(s)):
        j = i
        while j > 0 and s[j - 1] > s[j]:
            s[j - 1], s[j] = s[j], s[j - 1]
            sign = -sign
            j -= 1
    if any(s[i] == s[i + 1] for i in range(len(s) - 1)):
        return 0, tuple(s)
    return sign, tuple(s)


def _forest_path(n: int, S: tuple[int, ...], u: int, v: int):
    """Edges of the path from u to v in forest S, or None if disconnected."""
    edges = _edges(n)
    adj: dict[int, list[tuple[int, int]]] = {}
    for e in S:
        a, b = edges[e]
        adj.setdefault(a, []).append((b, e))
        adj.setdefault(b, []).append((a, e))
    prev = {u: None}
    stack = [u]
    while stack:
        x = stack.pop()
        if x == v:
            break
        for y, e in adj.get(x, ()):
            if y not in prev:
                prev[y] = (x, e)
                stack.append(y)
    if v not in prev:
        return None
    path = []
    x = v
    while prev[x] is not None:
        x, e = prev[x]
        path.append(e)
    return path


def _is_forest(n: int, S: tuple[int, ...]) -> bool:
    parent: dict[int, int] = {}

    def find(x):
        while parent.get(x, x) != x:
            x = parent[x]
        return x

    for e in S:
        a, b = _edges(n)[e]
        ra, rb = find(a), find(b)
        if ra == rb:
            return False
        parent[ra] = rb
    return True


def _broken_circuit(n: int, S: tuple[int, ...]):
    """Smallest edge ``e`` outside S closing a cycle whose other edges are all larger."""
    members = set(S)
    for e, (a, b) in enumerate(_edges(n)):
        if e in members or e > S[-1]:
            continue
        path = _forest_path(n, S, a, b)
        if path is not None and e < min(path):
            return e, path
    return None


@lru_cache(maxsize=None)
def _reduce(n: int, S: tuple[int, ...]) -> tuple[tuple[tuple[int, ...], int], ...]:
    """Class of ``e_S`` (S sorted, internal edge ids) in the nbc basis of the quotient."""
    if not S:
        return (((), 1),)
    if S[0] == 0 or not _is_forest(n, S):
        return ()
    found = _broken_circuit(n, S)
    if found is None:
        return ((S, 1),)
    e, path = found
    path_set = set(path)
    P = tuple(sorted(path_set))
    R = tuple(x for x in S if x not in path_set)
    # S is sorted, so e_S = sign(P + R) e_P e_R
    sgn = sort_sign(P + R)[0]
    C = (e,) + P  # e is the minimum of the circuit
    acc: dict[tuple[int, ...], int] = {}
    for i in range(1, len(C)):
        T = C[:i] + C[i + 1:]
        s2, U = sort_sign(T + R)
        if s2 == 0:
            continue
        coeff = sgn * (-1) ** (i + 1) * s2
        for key, val in _reduce(n, U):
            acc[key] = acc.get(key, 0) + coeff * val
    return tuple((k, v) for k, v in sorted(acc.items()) if v)


# ---------------------------------------------------------------------------
# public classes


@dataclass
class OSClass:
    """Element of H^k(M_{0,n}) in nbc coordinates (sets of hyperplane indices)."""

    n: int
    degree: int
    coeffs: dict[tuple[int, ...], Fraction] = field(default_factory=dict)

    def __post_init__(self):
        self.coeffs = {k: Fraction(v) for k, v in self.coeffs.items() if v}

    def __add__(self, other: "OSClass") -> "OSClass":
        self._check(other)
        acc = dict(self.coeffs)
        for k, v in other.coeffs.items():
            acc[k] = acc.get(k, 0) + v
        return OSClass(self.n, self.degree, acc)

    def __sub__(self, other: "OSClass") -> "OSClass":
        return self + other.scale(-1)

    def __neg__(self):
        return self.scale(-1)

    def scale(self, a) -> "OSClass":
        return OSClass(self.n, self.degree, {k: a * v for k, v in self.coeffs.items()})

    def _check(self, other):
        if (self.n, self.degree) != (other.n, other.degree):
            raise ValueError("classes live in different spaces")

    def wedge(self, other: "OSClass") -> "OSClass":
        if self.n != other.n:
            raise ValueError("classes live on different moduli spaces")
        acc: dict[tuple[int, ...], Fraction] = {}
        for s, a in self.coeffs.items():
            for t, b in other.coeffs.items():
                for key, v in os_reduce(list(s) + list(t), self.n).coeffs.items():
                    acc[key] = acc.get(key, 0) + a * b * v
        return OSClass(self.n, self.degree + other.degree, acc)

    def is_zero(self) -> bool:
        return not self.coeffs

    def vector(self) -> list[Fraction]:
        basis = nbc_basis(self.n, self.degree)
        return [self.coeffs.get(s, Fraction(0)) for s in basis]

    def __eq__(self, other):
        if not isinstance(other, OSClass):
            return NotImplemented
        return (self.n, self.degree, self.coeffs) == (other.n, other.degree, other.coeffs)


def unit(n: int) -> OSClass:
    return OSClass(n, 0, {(): 1})


def os_reduce(index_list: Sequence[int], n: int) -> OSClass:
    """Class of ``e_{i_1} ... e_{i_k}`` (hyperplane indices, given order) in nbc coordinates."""
    N = len(moduli_arrangement(n))
    for h in index_list:
        if not 0 <= h < N:
            raise IndexError(f"no hyperplane {h} in the M_0,{n} arrangement")
    k = len(index_list)
    sign, S = sort_sign([h + 1 for h in index_list])
    if sign == 0:
        return OSClass(n, k)
    return OSClass(n, k, {tuple(e - 1 for e in key): sign * v for key, v in _reduce(n, S)})


def _is_nbc(n: int, S: tuple[int, ...]) -> bool:
    return _reduce(n, S) == ((S, 1),)


@lru_cache(maxsize=None)
def _nbc_sets(n: int, k: int) -> tuple[tuple[int, ...], ...]:
    """nbc k-sets as hyperplane index tuples, in lexicographic order."""
    if k == 0:
        return ((),)
    if n < 4 or k > n - 3:
        return ()
    key = f"nbc-n{n}-k{k}"
    stored = cache.load(key)
    if stored is not None and _nbc_valid(n, k, stored):
        return tuple(tuple(S) for S in stored)
    N = len(moduli_arrangement(n))
    out = []
    for S in _nbc_sets(n, k - 1):
        start = S[-1] + 1 if S else 0
        for h in range(start, N):
            if _is_nbc(n, tuple(e + 1 for e in S + (h,))):
                out.append(S + (h,))
    cache.store(key, [list(S) for S in out])
    return tuple(out)


def _nbc_valid(n: int, k: int, stored) -> bool:
    """Cheap revalidation of a cached basis: right size, sorted, every set nbc."""
    coeffs = [1]
    for j in range(2, n - 1):
        coeffs = [a + j * b for a, b in zip(coeffs + [0], [0] + coeffs)]
    expected = coeffs[k]
    try:
        sets = [tuple(int(h) for h in S) for S in stored]
    except (TypeError, ValueError):
        return False
    N = len(moduli_arrangement(n))
    if len(sets) != expected or sets != sorted(set(sets)):
        return False
    return all(
        len(S) == k and list(S) == sorted(S) and all(0 <= h < N for h in S)
        and _is_nbc(n, tuple(h + 1 for h in S))
        for S in sets
    )


def nbc_basis(arr: ModuliArrangement | int, k: int) -> list[tuple[int, ...]]:
    n = arr.n if isinstance(arr, ModuliArrangement) else arr
    return list(_nbc_sets(n, k))


@lru_cache(maxsize=None)
def nbc_index(n: int, k: int) -> dict[tuple[int, ...], int]:
    return {s: i for i, s in enumerate(_nbc_sets(n, k))}


def betti_moduli(n: int) -> list[int]:
    if n < 3:
        raise ValueError(f"M_0,n needs n >= 3, got {n}")
    return [len(_nbc_sets(n, k)) for k in range(n - 2)]


# ---------------------------------------------------------------------------
# dlog of marked point differences and chord forms


def dlog_difference(a: int, b: int, n: int) -> OSClass:
    """dlog(z_a - z_b) for marked points 1..n; zero if it involves infinity or is constant."""
    if a == b:
        raise ValueError("dlog(z_a - z_a) is undefined")
    if not (1 <= a <= n and 1 <= b <= n):
        raise ValueError(f"marked points are numbered 1..{n}")
    a, b = min(a, b), max(a, b)
    if a == 1 or (a, b) == (2, n):
        return OSClass(n, 1)
    h = moduli_arrangement(n).pairs.index((a, b))
    return OSClass(n, 1, {(h,): 1})


@lru_cache(maxsize=None)
def chord_form_terms(n: int, pair: tuple[int, int], sign: int = 1) -> tuple[tuple[int, int], ...]:
    """omega_c as ``((hyperplane, coefficient), ...)``.

    For the chord between vertices ``v_i`` and ``v_j`` (0-based), with
    ``a = i + 1`` and ``b = j + 1`` in 1-based marked point labels:
    ``dlog(z_a - z_{b+1}) + dlog(z_{a+1} - z_b) - dlog(z_a - z_b) - dlog(z_{a+1} - z_{b+1})``.
    ``sign = -1`` flips every chord form (the u_c <-> 1/u_c convention).
    """
    i, j = pair
    if (i, j) not in set(chord_table(n)):
        raise ValueError(f"{pair} is not a chord of the {n}-gon")
    nxt = lambda x: x % n + 1
    a, b = i + 1, j + 1
    acc: dict[int, int] = {}
    for (x, y), s in (((a, nxt(b)), 1), ((nxt(a), b), 1), ((a, b), -1), ((nxt(a), nxt(b)), -1)):
        for (h,), v in dlog_difference(x, y, n).coeffs.items():
            acc[h] = acc.get(h, 0) + s * int(v) * sign
    return tuple(sorted((h, v) for h, v in acc.items() if v))


def chord_form(c, n: int | None = None, sign: int = 1) -> OSClass:
    if n is None:
        n = c.n
    pair = c.vertices if hasattr(c, "vertices") else tuple(sorted(c))
    return OSClass(n, 1, {(h,): v for h, v in chord_form_terms(n, pair, sign)})


@lru_cache(maxsize=None)
def _mult_table(n: int, k: int) -> tuple[tuple[tuple[tuple[int, int], ...], ...], ...]:
    """``table[s][h]``: e_S ^ e_h for nbc set number s, as ((index in degree k+1, coeff), ...)."""
    N = len(moduli_arrangement(n))
    target = nbc_index(n, k + 1)
    out = []
    for S in _nbc_sets(n, k):
        row = []
        for h in range(N):
            cls = os_reduce(list(S) + [h], n)
            row.append(tuple((target[key], int(v)) for key, v in cls.coeffs.items()))
        out.append(tuple(row))
    return tuple(out)


@lru_cache(maxsize=None)
def chord_operator(n: int, k: int, pair: tuple[int, int], sign: int = 1):
    """Sparse matrix of right multiplication by omega_c from degree k to k+1."""
    from scipy.sparse import csr_matrix

    table = _mult_table(n, k)
    rows, cols, vals = [], [], []
    for s, per_h in enumerate(table):
        for h, coeff in chord_form_terms(n, pair, sign):
            for t, v in per_h[h]:
                rows.append(t)
                cols.append(s)
                vals.append(coeff * v)
    shape = (len(_nbc_sets(n, k + 1)), len(_nbc_sets(n, k)))
    mat = csr_matrix((np.array(vals, dtype=np.int64), (rows, cols)), shape=shape)
    mat.sum_duplicates()
    return mat


def eval_monomial(chord_list: Sequence, n: int, sign: int = 1) -> OSClass:
    """omega_{c_1} ^ ... ^ omega_{c_k} (in the given order) in nbc coordinates."""
    pairs = [c.vertices if hasattr(c, "vertices") else tuple(sorted(c)) for c in chord_list]
    if len(set(pairs)) < len(pairs):
        return OSClass(n, len(pairs))
    vec = np.array([1], dtype=object)
    for k, pair in enumerate(pairs):
        vec = _apply(chord_operator(n, k, pair, sign), vec)
    basis = _nbc_sets(n, len(pairs))
    return OSClass(n, len(pairs), {basis[i]: int(v) for i, v in enumerate(vec) if v})


def _apply(mat, vec: np.ndarray) -> np.ndarray:
    """Exact sparse mat-vec with Python ints when the int64 bound is not provably safe."""
    bound = int(np.abs(mat).sum(axis=1).max()) if mat.nnz else 0
    vmax = int(max((abs(int(v)) for v in vec), default=0))
    if bound * vmax < 2**62:
        return mat.dot(vec.astype(np.int64)).astype(object)
    out = np.zeros(mat.shape[0], dtype=object)
    coo = mat.tocoo()
    for r, c, v in zip(coo.row, coo.col, coo.data):
        out[r] += int(v) * vec[c]
    return out


def eval_columns(n: int, k: int, monomials: Sequence[Sequence[int]], sign: int = 1) -> np.ndarray:
    """Evaluate many sorted chord-id monomials of degree k at once (prefix sharing).

    Returns an object array of shape ``(b_k, len(monomials))`` of Python ints.
    """
    table = chord_table(n)
    dim = len(_nbc_sets(n, k))
    out = np.zeros((dim, len(monomials)), dtype=object)
    cache: dict[tuple[int, ...], np.ndarray] = {(): np.array([1], dtype=object)}

    def prefix(ids: tuple[int, ...]) -> np.ndarray:
        got = cache.get(ids)
        if got is None:
            got = _apply(chord_operator(n, len(ids) - 1, table[ids[-1]], sign), prefix(ids[:-1]))
            cache[ids] = got
        return got

    for col, mono in enumerate(monomials):
        mono = tuple(mono)
        if len(mono) != k:
            raise ValueError("monomial of the wrong degree")
        out[:, col] = prefix(mono)
        # keep memory bounded: only prefixes sharing the current head survive
        if len(cache) > 50_000:
            cache = {(): cache[()]}
    return out
