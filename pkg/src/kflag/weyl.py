"""Root systems, Weyl groups, Bruhat order, and parabolic cosets.

Everything is carried out in the basis of fundamental weights: a weight is a
tuple of integers ``(c_1, ..., c_n)`` standing for ``sum c_i omega_i``.  With
this choice the pairing with a simple coroot is a coordinate lookup,
``<lam, alpha_i^vee> = lam[i]``, and the simple reflection is
``s_i(lam) = lam - lam[i] * alpha_i``.

The Cartan matrix is stored so that ``cartan[i][j] = <alpha_j, alpha_i^vee>``;
equivalently column ``j`` is the simple root ``alpha_j`` written in the
fundamental-weight basis.  A matrix is accepted only if its symmetrization is
positive definite (finite type), so the Weyl group is finite and is enumerated
once up front.  All group data (lengths, reduced words, multiplication by
generators, inverses) is tabulated on the :class:`RootSystem`; a
:class:`WeylElt` is just a handle into those tables.  Root systems and their
elements are immutable, so they can be shared freely between threads; the
memo caches on the root system are append-only dicts.

Named systems follow the rank-two conventions used throughout this package's
reference tables: ``B2`` has Cartan matrix ``[[2,-2],[-1,2]]`` (short first
root; some references label this C2) and ``G2`` has ``[[2,-3],[-1,2]]``.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

Weight = tuple  # of ints (Fractions appear only inside the path model)


def wadd(a: Weight, b: Weight) -> Weight:
    return tuple(x + y for x, y in zip(a, b))


def wsub(a: Weight, b: Weight) -> Weight:
    return tuple(x - y for x, y in zip(a, b))


def wneg(a: Weight) -> Weight:
    return tuple(-x for x in a)


def wscale(c, a: Weight) -> Weight:
    return tuple(c * x for x in a)


class CartanError(ValueError):
    """Raised for input that is not a finite-type Cartan matrix."""


# Braid order m_ij from the product a_ij * a_ji.
_MIJ = {0: 2, 1: 3, 2: 4, 3: 6}


def _named_cartan(name: str) -> tuple[tuple[int, ...], ...]:
    """Cartan matrix for a named type such as "A2", "B3", "G2", "F4"."""
    name = name.strip().upper()
    if len(name) < 2 or name[0] not in "ABCDEFG" or not name[1:].isdigit():
        raise CartanError(f"unknown root system name {name!r}")
    family, n = name[0], int(name[1:])
    if n < 1:
        raise CartanError(f"rank must be positive in {name!r}")

    def simply_laced(n):
        return [[2 if i == j else (-1 if abs(i - j) == 1 else 0) for j in range(n)]
                for i in range(n)]

    if family == "A":
        m = simply_laced(n)
    elif family == "B":
        if n == 1:
            m = [[2]]
        elif n == 2:
            # convention of the rank-two tables: alpha_1 short, alpha_2 long
            m = [[2, -2], [-1, 2]]
        else:
            m = simply_laced(n)
            m[n - 2][n - 1] = -2  # alpha_n is the short root
    elif family == "C":
        if n == 1:
            m = [[2]]
        else:
            m = simply_laced(n)
            m[n - 1][n - 2] = -2
    elif family == "D":
        if n < 4:
            raise CartanError(f"type D needs rank >= 4, got {name!r}")
        m = simply_laced(n)
        m[n - 1][n - 2] = m[n - 2][n - 1] = 0
        m[n - 3][n - 1] = m[n - 1][n - 3] = -1
    elif family == "E":
        if n not in (6, 7, 8):
            raise CartanError(f"type E needs rank 6, 7 or 8, got {name!r}")
        m = simply_laced(n)
        m[n - 1][n - 2] = m[n - 2][n - 1] = 0
        m[2][n - 1] = m[n - 1][2] = -1
    elif family == "F":
        if n != 4:
            raise CartanError(f"type F needs rank 4, got {name!r}")
        m = simply_laced(4)
        m[1][2] = -2
    elif family == "G":
        if n != 2:
            raise CartanError(f"type G needs rank 2, got {name!r}")
        m = [[2, -3], [-1, 2]]
    else:  # pragma: no cover
        raise CartanError(f"unknown family {family!r}")
    return tuple(tuple(row) for row in m)


def _validate_cartan(cartan: tuple[tuple[int, ...], ...]) -> None:
    n = len(cartan)
    for i, row in enumerate(cartan):
        if len(row) != n:
            raise CartanError("Cartan matrix must be square")
        if row[i] != 2:
            raise CartanError(f"diagonal entry a_{i}{i} = {row[i]} != 2")
        for j, a in enumerate(row):
            if i == j:
                continue
            if a > 0:
                raise CartanError(f"off-diagonal entry a_{i}{j} = {a} > 0")
            if (a == 0) != (cartan[j][i] == 0):
                raise CartanError(f"a_{i}{j} and a_{j}{i} must vanish together")
            if a * cartan[j][i] not in _MIJ:
                raise CartanError(f"a_{i}{j} * a_{j}{i} = {a * cartan[j][i]} not in {{0,1,2,3}}")
    # Symmetrizer d_i > 0 with d_i a_ij = d_j a_ji, found by walking the
    # Coxeter graph; then finite type <=> the symmetrized matrix is positive
    # definite (checked via leading principal minors).
    d = [None] * n
    for start in range(n):
        if d[start] is not None:
            continue
        d[start] = Fraction(1)
        stack = [start]
        while stack:
            i = stack.pop()
            for j in range(n):
                if i == j or cartan[i][j] == 0:
                    continue
                dj = d[i] * Fraction(cartan[i][j], cartan[j][i])
                if d[j] is None:
                    d[j] = dj
                    stack.append(j)
                elif d[j] != dj:
                    raise CartanError("Cartan matrix is not symmetrizable")
    sym = [[d[i] * cartan[i][j] for j in range(n)] for i in range(n)]
    for k in range(1, n + 1):
        if _det_fraction([row[:k] for row in sym[:k]]) <= 0:
            raise CartanError("Cartan matrix is not of finite type "
                              "(symmetrization not positive definite)")


def _det_fraction(m: list[list[Fraction]]) -> Fraction:
    m = [row[:] for row in m]
    n = len(m)
    det = Fraction(1)
    for c in range(n):
        piv = next((r for r in range(c, n) if m[r][c] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != c:
            m[c], m[piv] = m[piv], m[c]
            det = -det
        det *= m[c][c]
        for r in range(c + 1, n):
            f = Fraction(m[r][c], m[c][c])
            for k in range(c, n):
                m[r][k] -= f * m[c][k]
    return det


def _invert_fraction(m: Sequence[Sequence[int]]) -> list[list[Fraction]]:
    n = len(m)
    a = [[Fraction(m[i][j]) for j in range(n)] + [Fraction(i == j) for j in range(n)]
         for i in range(n)]
    for c in range(n):
        piv = next(r for r in range(c, n) if a[r][c] != 0)
        a[c], a[piv] = a[piv], a[c]
        pv = a[c][c]
        a[c] = [x / pv for x in a[c]]
        for r in range(n):
            if r != c and a[r][c] != 0:
                f = a[r][c]
                a[r] = [x - f * y for x, y in zip(a[r], a[c])]
    return [row[n:] for row in a]


class RootSystem:
    """A finite root system with its Weyl group fully enumerated.

    Attributes of interest: ``rank``, ``cartan``, ``simple_roots`` (tuples in
    the omega-basis), ``rho``, ``positive_roots``, ``m`` (braid orders),
    ``order`` (size of W), ``w0`` (longest element).
    """

    def __init__(self, cartan: Iterable[Iterable[int]], name: str = ""):
        cartan = tuple(tuple(int(x) for x in row) for row in cartan)
        _validate_cartan(cartan)
        self.name = name
        self.cartan = cartan
        self.rank = n = len(cartan)
        self.simple_roots = tuple(tuple(cartan[i][j] for i in range(n)) for j in range(n))
        self.rho = tuple([1] * n)
        self.m = tuple(tuple(_MIJ[cartan[i][j] * cartan[j][i]] if i != j else 1
                             for j in range(n)) for i in range(n))
        self._cartan_inv = _invert_fraction(cartan)
        self._enumerate_group()
        self._find_positive_roots()
        if len(self.positive_roots) != self.length(self.w0_index):
            raise AssertionError("|R+| must equal the length of w0")
        # memo caches (append-only; harmless to race under the GIL)
        self._bruhat_cache: dict[tuple[int, int], bool] = {}
        self._caches: dict[str, dict] = {}

    # -- group enumeration -------------------------------------------------

    def _simple_matrix(self, i: int) -> tuple[tuple[int, ...], ...]:
        n = self.rank
        alpha = self.simple_roots[i]
        return tuple(tuple((1 if k == j else 0) - (alpha[k] if j == i else 0)
                           for j in range(n)) for k in range(n))

    @staticmethod
    def _mat_act(mat, lam):
        return tuple(sum(row[j] * lam[j] for j in range(len(lam))) for row in mat)

    @staticmethod
    def _mat_mul(a, b):
        n = len(a)
        return tuple(tuple(sum(a[i][k] * b[k][j] for k in range(n)) for j in range(n))
                     for i in range(n))

    def _enumerate_group(self) -> None:
        n = self.rank
        ident = tuple(tuple(int(i == j) for j in range(n)) for i in range(n))
        smats = [self._simple_matrix(i) for i in range(n)]
        mats = [ident]
        index = {self.rho: 0}
        lengths = [0]
        frontier = [0]
        while frontier:
            new = []
            for w in frontier:
                for i in range(n):
                    m = self._mat_mul(smats[i], mats[w])
                    key = self._mat_act(m, self.rho)
                    if key not in index:
                        index[key] = len(mats)
                        mats.append(m)
                        lengths.append(lengths[w] + 1)
                        new.append(index[key])
            frontier = new
        self.order = len(mats)
        self._mats = mats
        self._index = index
        self._lengths = lengths
        # canonical reduced words by greedy descent on the left,
        # smallest simple index first
        words = []
        for w in range(self.order):
            key = self._mat_act(mats[w], self.rho)
            word = []
            while key != self.rho:
                i = next(k for k in range(n) if key[k] < 0)
                key = self._mat_act(smats[i], key)
                word.append(i)
            words.append(tuple(word))
        self._words = words
        # generator multiplication tables
        # _rmul[w][i] = w * s_i ; _lmul[i][w] = s_i * w
        self._rmul = [[index[self._mat_act(self._mat_mul(mats[w], smats[i]), self.rho)]
                       for i in range(n)] for w in range(self.order)]
        self._lmul = [[index[self._mat_act(self._mat_mul(smats[i], mats[w]), self.rho)]
                       for w in range(self.order)] for i in range(n)]
        inv = [0] * self.order
        for w in range(self.order):
            u = 0
            for i in reversed(words[w]):
                u = self._rmul[u][i]
            inv[w] = u
        self._inv = inv
        self.w0_index = max(range(self.order), key=lambda w: lengths[w])
        if sum(1 for w in range(self.order)
               if lengths[w] == lengths[self.w0_index]) != 1:
            raise AssertionError("longest element must be unique")

    def _find_positive_roots(self) -> None:
        # Orbit of the simple roots; a root is positive iff its coordinates in
        # the alpha-basis are all nonnegative.  Each positive root carries one
        # presentation beta = w(alpha_i), which determines its coroot.
        seen: dict[Weight, tuple[int, int]] = {}
        frontier = {self.simple_roots[i]: (0, i) for i in range(self.rank)}
        while frontier:
            seen.update(frontier)
            nxt: dict[Weight, tuple[int, int]] = {}
            for beta, (w, i) in frontier.items():
                for j in range(self.rank):
                    im = self._mat_act(self._mats[self._lmul[j][0]], beta)
                    if im not in seen and im not in nxt:
                        nxt[im] = (self._lmul[j][w], i)
            frontier = nxt
        pos = []
        for beta, (w, i) in seen.items():
            coords = self.root_coords(beta)
            if all(c >= 0 for c in coords):
                pos.append((sum(coords), beta, (w, i)))
        pos.sort(key=lambda t: (t[0], t[1]))
        self.positive_roots = tuple(b for _, b, _ in pos)
        self._root_presentation = {b: wi for _, b, wi in pos}

    # -- basic queries ------------------------------------------------------

    def root_coords(self, lam: Weight) -> tuple[Fraction, ...]:
        """Coordinates of a weight in the simple-root basis (rational)."""
        return tuple(sum(self._cartan_inv[i][j] * lam[j] for j in range(self.rank))
                     for i in range(self.rank))

    def coroot_pairing(self, lam: Weight, beta: Weight):
        """``<lam, beta^vee>`` for a root beta of this system."""
        w, i = self._root_presentation[beta]
        return self.act(self._inv[w], lam)[i]

    def act(self, w: int, lam: Weight) -> Weight:
        return self._mat_act(self._mats[w], lam)

    def length(self, w: int) -> int:
        return self._lengths[w]

    def word(self, w: int) -> tuple[int, ...]:
        return self._words[w]

    def mul(self, u: int, v: int) -> int:
        w = u
        for i in self._words[v]:
            w = self._rmul[w][i]
        return w

    def inverse(self, w: int) -> int:
        return self._inv[w]

    def from_word(self, word: Iterable[int]) -> int:
        w = 0
        for i in word:
            if not 0 <= i < self.rank:
                raise ValueError(f"simple index {i} out of range")
            w = self._rmul[w][i]
        return w

    def elements(self) -> list["WeylElt"]:
        return [WeylElt(self, w) for w in range(self.order)]

    @property
    def one(self) -> "WeylElt":
        return WeylElt(self, 0)

    @property
    def w0(self) -> "WeylElt":
        return WeylElt(self, self.w0_index)

    def simple(self, i: int) -> "WeylElt":
        return WeylElt(self, self._rmul[0][i])

    def cache(self, tag: str) -> dict:
        return self._caches.setdefault(tag, {})

    # -- Bruhat order --------------------------------------------------------

    def bruhat_leq(self, u: int, w: int) -> bool:
        """u <= w in Bruhat order (recursive rule, memoized)."""
        if u == 0:
            return True
        if self._lengths[u] > self._lengths[w]:
            return False
        if u == w:
            return True
        key = (u, w)
        cached = self._bruhat_cache.get(key)
        if cached is not None:
            return cached
        i = self._words[w][0]  # s_i w < w
        su = self._lmul[i][u]
        res = self.bruhat_leq(su if self._lengths[su] < self._lengths[u] else u,
                              self._lmul[i][w])
        self._bruhat_cache[key] = res
        return res

    def bruhat_leq_subword(self, u: int, w: int) -> bool:
        """Independent oracle: u <= w iff some subword of a reduced word of w
        is a reduced word for u."""
        reachable = {0}
        for i in self._words[w]:
            extra = set()
            for v in reachable:
                vi = self._rmul[v][i]
                if self._lengths[vi] > self._lengths[v]:
                    extra.add(vi)
            reachable |= extra
        return u in reachable

    def __repr__(self):
        return f"RootSystem({self.name or self.cartan!r}, |W|={self.order})"


class WeylElt:
    """An element of a Weyl group: a handle into the group tables.

    The canonical form is the image of rho (a regular weight), so equality and
    hashing are cheap; the cached reduced word uses the greedy-descent,
    smallest-index-first convention.
    """

    __slots__ = ("rs", "idx")

    def __init__(self, rs: RootSystem, idx: int):
        self.rs = rs
        self.idx = idx

    @property
    def length(self) -> int:
        return self.rs.length(self.idx)

    @property
    def word(self) -> tuple[int, ...]:
        return self.rs.word(self.idx)

    @property
    def sign(self) -> int:
        return -1 if self.length % 2 else 1

    def act(self, lam: Weight) -> Weight:
        return self.rs.act(self.idx, lam)

    def inverse(self) -> "WeylElt":
        return WeylElt(self.rs, self.rs.inverse(self.idx))

    def __mul__(self, other: "WeylElt") -> "WeylElt":
        if self.rs is not other.rs:
            raise ValueError("elements of different root systems")
        return WeylElt(self.rs, self.rs.mul(self.idx, other.idx))

    def times_simple(self, i: int) -> "WeylElt":
        return WeylElt(self.rs, self.rs._rmul[self.idx][i])

    def simple_times(self, i: int) -> "WeylElt":
        return WeylElt(self.rs, self.rs._lmul[i][self.idx])

    def right_descents(self) -> list[int]:
        r = self.rs
        return [i for i in range(r.rank)
                if r.length(r._rmul[self.idx][i]) < self.length]

    def left_descents(self) -> list[int]:
        r = self.rs
        return [i for i in range(r.rank)
                if r.length(r._lmul[i][self.idx]) < self.length]

    def __eq__(self, other):
        return isinstance(other, WeylElt) and self.rs is other.rs and self.idx == other.idx

    def __hash__(self):
        return hash((id(self.rs), self.idx))

    def __le__(self, other: "WeylElt") -> bool:
        return self.rs.bruhat_leq(self.idx, other.idx)

    def __lt__(self, other: "WeylElt") -> bool:
        return self.idx != other.idx and self.rs.bruhat_leq(self.idx, other.idx)

    def __repr__(self):
        return "1" if self.idx == 0 else "*".join(f"s{i + 1}" for i in self.word)


def build_root_system(spec, name: str = "") -> RootSystem:
    """Build a root system from a named type ("A2", "G2", ...) or an explicit
    Cartan matrix (iterable of integer rows).  Named systems are cached."""
    if isinstance(spec, str):
        key = spec.strip().upper()
        cached = _SYSTEMS.get(key)
        if cached is None:
            cached = _SYSTEMS[key] = RootSystem(_named_cartan(key), name=key)
        return cached
    return RootSystem(spec, name=name)


_SYSTEMS: dict[str, RootSystem] = {}


def inversion_set(w: WeylElt) -> set[Weight]:
    """{alpha in R+ : w(alpha) < 0}; its size is the length of w."""
    rs = w.rs
    out = set()
    for beta in rs.positive_roots:
        coords = rs.root_coords(w.act(beta))
        if all(c <= 0 for c in coords):
            out.add(beta)
    return out


def inversion_set_from_word(rs: RootSystem, word: Sequence[int]) -> list[Weight]:
    """The telescoping form {alpha_{i_p}, s_{i_p} alpha_{i_{p-1}}, ...} of the
    inversion set of s_{i_1} ... s_{i_p} (the word need not be canonical)."""
    out = []
    v = 0  # running product s_{i_p} ... s_{i_{k+1}}
    for k in range(len(word) - 1, -1, -1):
        out.append(rs.act(v, rs.simple_roots[word[k]]))
        v = rs.mul(v, rs._rmul[0][word[k]])
    return out


def steinberg_weight(w: WeylElt, convention: str = "thm17") -> Weight:
    """The weight lambda_w attached to a Weyl group element.

    ``"thm17"``  : w^{-1} . sum of omega_i over left descents of w (the
                   assignment entering the central-expansion theorem).
    ``"tables5"``: w . sum of omega_i over right ascents of w (the assignment
                   listed in the rank-two tables).
    Both families {lambda_w} index unit-determinant line-bundle bases.
    """
    rs = w.rs
    if convention == "thm17":
        s = [0] * rs.rank
        for i in w.left_descents():
            s[i] = 1
        return w.inverse().act(tuple(s))
    if convention == "tables5":
        s = [1] * rs.rank
        for i in w.right_descents():
            s[i] = 0
        return w.act(tuple(s))
    raise ValueError(f"unknown convention {convention!r}")


class ParabolicCoset:
    """A coset w W_J of a standard parabolic subgroup, held by its minimal
    representative.  Cosets are ordered by Bruhat comparison of minimal
    representatives."""

    __slots__ = ("rs", "J", "min_rep")

    def __init__(self, rs: RootSystem, J: Iterable[int], w: WeylElt):
        self.rs = rs
        self.J = frozenset(J)
        m = w.idx
        changed = True
        while changed:
            changed = False
            for j in self.J:
                mj = rs._rmul[m][j]
                if rs.length(mj) < rs.length(m):
                    m = mj
                    changed = True
        self.min_rep = WeylElt(rs, m)

    def subgroup(self) -> list[WeylElt]:
        """Elements of W_J (enumerated once per (rs, J) and cached)."""
        cache = self.rs.cache("parabolic_subgroup")
        got = cache.get(self.J)
        if got is None:
            seen = {0}
            frontier = [0]
            while frontier:
                nxt = []
                for w in frontier:
                    for j in self.J:
                        wj = self.rs._rmul[w][j]
                        if wj not in seen:
                            seen.add(wj)
                            nxt.append(wj)
                frontier = nxt
            got = cache[self.J] = sorted(seen, key=lambda w: (self.rs.length(w), w))
        return [WeylElt(self.rs, w) for w in got]

    def elements(self) -> list[WeylElt]:
        return [self.min_rep * u for u in self.subgroup()]

    def max_rep(self) -> WeylElt:
        longest = max(self.subgroup(), key=lambda u: u.length)
        return self.min_rep * longest

    def max_rep_below(self, bound: WeylElt) -> WeylElt | None:
        """The maximal element of the coset that is <= bound, or None.

        The candidates below the bound always have a unique Bruhat-maximum
        here; this is asserted rather than assumed.
        """
        below = [x for x in self.elements() if x <= bound]
        if not below:
            return None
        top = max(below, key=lambda x: x.length)
        if not all(x <= top for x in below):
            raise AssertionError(f"coset {self} has no maximum below {bound}")
        return top

    def __eq__(self, other):
        return (isinstance(other, ParabolicCoset) and self.rs is other.rs
                and self.J == other.J and self.min_rep == other.min_rep)

    def __hash__(self):
        return hash((id(self.rs), self.J, self.min_rep.idx))

    def __le__(self, other: "ParabolicCoset") -> bool:
        return self.min_rep <= other.min_rep

    def __lt__(self, other: "ParabolicCoset") -> bool:
        return self.min_rep != other.min_rep and self.min_rep <= other.min_rep

    def __repr__(self):
        return f"{self.min_rep!r}*W{sorted(i + 1 for i in self.J)}"


def stabilizer_indices(rs: RootSystem, lam: Weight) -> frozenset[int]:
    """Simple indices generating the stabilizer W_lam of a dominant weight."""
    return frozenset(i for i in range(rs.rank) if lam[i] == 0)


def coset_of(rs: RootSystem, lam_or_J, w: WeylElt) -> ParabolicCoset:
    """The coset w W_J, where J is given directly or as the stabilizer of a
    dominant weight."""
    if isinstance(lam_or_J, (set, frozenset, list)):
        J = frozenset(lam_or_J)
    else:
        J = stabilizer_indices(rs, lam_or_J)
    return ParabolicCoset(rs, J, w)
