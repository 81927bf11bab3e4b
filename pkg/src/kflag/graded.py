"""The graded nil-Hecke algebra, equivariant cohomology, and the truncated
Chern character.

The graded algebra has generators ``t_i`` (with ``t_i^2 = 0`` and the braid
relations) and additive lattice symbols ``x_lam``, subject to

    x_lam t_i = t_i x_{s_i lam} + <lam, alpha_i^vee>.

Coefficients are sparse polynomials in degree-one symbols ``x_1..x_n`` and
central ``y_1..y_n``.  The cohomology module has basis ``[X_w]`` over the
y-polynomials with ``x_i [X_1] = y_i [X_1]`` and ``t_i [X_w] = [X_{w s_i}]``
when that raises length, else 0; its grading puts ``[X_w]`` in degree
``l(w0) - l(w)``.

The Chern character maps the K-side algebra in by ``X^lam -> exp(x_lam)`` and
``T_i -> t_i x_{alpha_i} / (1 - exp(x_{alpha_i}))``, computed as truncated
power series with exact rational coefficients.  Ring structure constants on
the cohomology side are obtained with the same representative-and-act
strategy as in K-theory; the polynomial representative of ``[X_w]`` is the
lowest-degree homogeneous component of the Chern character of its K-side
line-bundle representative, and is verified exactly against the module
before use (this sidesteps integrality failures of naive monomial
transition matrices while keeping every product exact).
"""

from __future__ import annotations

from fractions import Fraction

from .nilhecke import NilHeckeElt
from .ring import RXElt
from .schubert import KClass, representative, schubert_class
from .weyl import RootSystem, Weight, WeylElt

XExp = tuple
YExp = tuple


class SPoly:
    """Sparse polynomial in x_1..x_n and y_1..y_n with exact coefficients."""

    __slots__ = ("rs", "terms")

    def __init__(self, rs: RootSystem, terms=None):
        self.rs = rs
        self.terms = {k: v for k, v in (terms or {}).items() if v}

    @classmethod
    def const(cls, rs, c) -> "SPoly":
        z = (0,) * rs.rank
        return cls(rs, {(z, z): c})

    @classmethod
    def x_linear(cls, rs, lam: Weight) -> "SPoly":
        """The additive symbol x_lam = sum lam_j x_j."""
        z = (0,) * rs.rank
        out = {}
        for j, c in enumerate(lam):
            if c:
                out[(tuple(1 if k == j else 0 for k in range(rs.rank)), z)] = c
        return cls(rs, out)

    @classmethod
    def y_linear(cls, rs, mu: Weight) -> "SPoly":
        z = (0,) * rs.rank
        out = {}
        for j, c in enumerate(mu):
            if c:
                out[(z, tuple(1 if k == j else 0 for k in range(rs.rank)))] = c
        return cls(rs, out)

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if isinstance(other, int):
            return self == SPoly.const(self.rs, other)
        return isinstance(other, SPoly) and _eq_terms(self.terms, other.terms)

    def __hash__(self):
        return hash(frozenset((k, Fraction(v)) for k, v in self.terms.items()))

    def __add__(self, other):
        out = dict(self.terms)
        for k, v in other.terms.items():
            out[k] = out.get(k, 0) + v
        return SPoly(self.rs, out)

    def __neg__(self):
        return SPoly(self.rs, {k: -v for k, v in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> "SPoly":
        return SPoly(self.rs, {k: v * c for k, v in self.terms.items()})

    def mul(self, other: "SPoly", trunc: int | None = None) -> "SPoly":
        out: dict = {}
        for (x1, y1), v1 in self.terms.items():
            for (x2, y2), v2 in other.terms.items():
                xk = tuple(a + b for a, b in zip(x1, x2))
                yk = tuple(a + b for a, b in zip(y1, y2))
                if trunc is not None and sum(xk) + sum(yk) > trunc:
                    continue
                k = (xk, yk)
                out[k] = out.get(k, 0) + v1 * v2
        return SPoly(self.rs, out)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return self.mul(other)

    __rmul__ = __mul__

    def degree_filter(self, keep) -> "SPoly":
        return SPoly(self.rs, {k: v for k, v in self.terms.items()
                               if keep(sum(k[0]) + sum(k[1]))})

    def homogeneous_part(self, d: int) -> "SPoly":
        return self.degree_filter(lambda t: t == d)

    def min_degree(self) -> int | None:
        if not self.terms:
            return None
        return min(sum(x) + sum(y) for x, y in self.terms)

    def x_to_y(self) -> "SPoly":
        """Evaluate x_j -> y_j (the module's bottom-class rule)."""
        out: dict = {}
        for (x, y), v in self.terms.items():
            k = ((0,) * self.rs.rank, tuple(a + b for a, b in zip(x, y)))
            out[k] = out.get(k, 0) + v
        return SPoly(self.rs, out)

    def y_at_zero(self) -> "SPoly":
        zero = (0,) * self.rs.rank
        return SPoly(self.rs, {k: v for k, v in self.terms.items() if k[1] == zero})

    def is_integral(self) -> bool:
        return all(Fraction(v).denominator == 1 for v in self.terms.values())

    def normalized_int(self) -> "SPoly":
        if not self.is_integral():
            raise ArithmeticError(f"non-integral polynomial {self!r}")
        return SPoly(self.rs, {k: int(v) for k, v in self.terms.items()})

    def __repr__(self):
        if not self.terms:
            return "0"
        bits = []
        for (x, y), v in sorted(self.terms.items()):
            factors = [] if v == 1 and (any(x) or any(y)) else [str(v)]
            factors += [f"x{j + 1}" + (f"^{e}" if e > 1 else "")
                        for j, e in enumerate(x) if e]
            factors += [f"y{j + 1}" + (f"^{e}" if e > 1 else "")
                        for j, e in enumerate(y) if e]
            bits.append("*".join(factors))
        return " + ".join(bits).replace("+ -", "- ")


def _eq_terms(a, b):
    keys = set(a) | set(b)
    return all(Fraction(a.get(k, 0)) == Fraction(b.get(k, 0)) for k in keys)


def _si_linear(rs: RootSystem, i: int, j: int) -> dict[XExp, int]:
    """s_i(x_j) = x_j - delta_ij x_{alpha_i} as a dict of x-exponents."""
    n = rs.rank
    ej = tuple(1 if k == j else 0 for k in range(n))
    out = {ej: 1}
    if i == j:
        for k, c in enumerate(rs.simple_roots[i]):
            if c:
                ek = tuple(1 if t == k else 0 for t in range(n))
                out[ek] = out.get(ek, 0) - c
    return {k: v for k, v in out.items() if v}


def _mono_mul(a: dict, b: dict) -> dict:
    out: dict = {}
    for k1, v1 in a.items():
        for k2, v2 in b.items():
            k = tuple(x + y for x, y in zip(k1, k2))
            out[k] = out.get(k, 0) + v1 * v2
    return {k: v for k, v in out.items() if v}


def _si_mono(rs: RootSystem, i: int, m: XExp) -> dict[XExp, int]:
    cache = rs.cache("graded_si")
    key = (i, m)
    got = cache.get(key)
    if got is None:
        n = rs.rank
        got = {(0,) * n: 1}
        for j, e in enumerate(m):
            lin = _si_linear(rs, i, j)
            for _ in range(e):
                got = _mono_mul(got, lin)
        cache[key] = got
    return got


def _di_mono(rs: RootSystem, i: int, m: XExp) -> dict[XExp, int]:
    """The divided difference del_i(x^m) = (x^m - s_i x^m)/x_{alpha_i} via
    the twisted Leibniz rule; always polynomial with integer coefficients."""
    cache = rs.cache("graded_di")
    key = (i, m)
    got = cache.get(key)
    if got is not None:
        return got
    n = rs.rank
    j = next((t for t, e in enumerate(m) if e), None)
    if j is None:
        got = {}
    else:
        rest = tuple(e - 1 if t == j else e for t, e in enumerate(m))
        # del_i(x_j g) = delta_ij g + s_i(x_j) del_i(g)
        got = {}
        if i == j:
            for k, v in {rest: 1}.items():
                got[k] = got.get(k, 0) + v
        for k, v in _mono_mul(_si_linear(rs, i, j), _di_mono(rs, i, rest)).items():
            got[k] = got.get(k, 0) + v
        got = {k: v for k, v in got.items() if v}
    cache[key] = got
    return got


def si_poly(f: SPoly, i: int) -> SPoly:
    out: dict = {}
    for (x, y), v in f.terms.items():
        for k, c in _si_mono(f.rs, i, x).items():
            kk = (k, y)
            out[kk] = out.get(kk, 0) + v * c
    return SPoly(f.rs, out)


def di_poly(f: SPoly, i: int) -> SPoly:
    out: dict = {}
    for (x, y), v in f.terms.items():
        for k, c in _di_mono(f.rs, i, x).items():
            kk = (k, y)
            out[kk] = out.get(kk, 0) + v * c
    return SPoly(f.rs, out)


def is_x_invariant(f: SPoly) -> bool:
    return all(si_poly(f, i) == f for i in range(f.rs.rank))


def _xmono_through_tword(rs: RootSystem, m: XExp, w: int) -> dict[int, dict[XExp, int]]:
    """x^m t_w = sum_z t_z f_z(x) in the graded algebra (integer data)."""
    cache = rs.cache("graded_push")
    key = (m, w)
    got = cache.get(key)
    if got is not None:
        return got
    if w == 0:
        got = {0: {m: 1}}
        cache[key] = got
        return got
    i = rs.word(w)[0]
    rest = rs._lmul[i][w]
    out: dict[int, dict[XExp, int]] = {}
    for mono, c0 in _si_mono(rs, i, m).items():
        for z, f in _xmono_through_tword(rs, mono, rest).items():
            zz = rs._lmul[i][z]
            if rs.length(zz) <= rs.length(z):
                continue  # t_i t_z = 0
            dst = out.setdefault(zz, {})
            for k, c in f.items():
                dst[k] = dst.get(k, 0) + c0 * c
    for mono, c0 in _di_mono(rs, i, m).items():
        for z, f in _xmono_through_tword(rs, mono, rest).items():
            dst = out.setdefault(z, {})
            for k, c in f.items():
                dst[k] = dst.get(k, 0) + c0 * c
    got = {z: {k: c for k, c in f.items() if c} for z, f in out.items()}
    got = {z: f for z, f in got.items() if f}
    cache[key] = got
    return got


class GradedElt:
    """Normal-form element sum_w t_w f_w(x, y) of the graded algebra."""

    __slots__ = ("rs", "terms")

    def __init__(self, rs: RootSystem, terms: dict[int, SPoly] | None = None):
        self.rs = rs
        self.terms = {w: f for w, f in (terms or {}).items() if f}

    @classmethod
    def zero(cls, rs):
        return cls(rs, {})

    @classmethod
    def one(cls, rs):
        return cls(rs, {0: SPoly.const(rs, 1)})

    @classmethod
    def t(cls, rs, w) -> "GradedElt":
        if isinstance(w, WeylElt):
            return cls(rs, {w.idx: SPoly.const(rs, 1)})
        out = cls.one(rs)
        for i in w:
            out = out.mul(cls(rs, {rs.simple(i).idx: SPoly.const(rs, 1)}))
        return out

    @classmethod
    def scalar(cls, f: SPoly) -> "GradedElt":
        return cls(f.rs, {0: f})

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if isinstance(other, int) and other == 0:
            return not self.terms
        return (isinstance(other, GradedElt) and set(self.terms) == set(other.terms)
                and all(self.terms[w] == other.terms[w] for w in self.terms))

    def __add__(self, other):
        out = dict(self.terms)
        for w, f in other.terms.items():
            out[w] = out[w] + f if w in out else f
        return GradedElt(self.rs, out)

    def __neg__(self):
        return GradedElt(self.rs, {w: -f for w, f in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> "GradedElt":
        return GradedElt(self.rs, {w: f.scale(c) for w, f in self.terms.items()})

    def mul(self, other: "GradedElt", trunc: int | None = None) -> "GradedElt":
        """Product with x-symbols pushed through t-letters; t-words fold with
        t_u t_v = t_{uv} when lengths add, else 0."""
        rs = self.rs
        out: dict[int, SPoly] = {}
        for w, f in self.terms.items():
            for v, g in other.terms.items():
                for (x, y), c in f.terms.items():
                    for z, h in _xmono_through_tword(rs, x, v).items():
                        wz = _graded_fold(rs, w, z)
                        if wz is None:
                            continue
                        carried = SPoly(rs, {(k, y): c * ck for k, ck in h.items()})
                        add = carried.mul(g, trunc)
                        out[wz] = out[wz] + add if wz in out else add
        return GradedElt(rs, out)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        if isinstance(other, SPoly):
            other = GradedElt.scalar(other)
        return self.mul(other)

    def __repr__(self):
        if not self.terms:
            return "0"
        rs = self.rs
        bits = []
        for w in sorted(self.terms, key=lambda w: (rs.length(w), rs.word(w))):
            word = "".join(f"t{i + 1}" for i in rs.word(w)) or "1"
            bits.append(f"{word}*({self.terms[w]!r})")
        return " + ".join(bits)


def _graded_fold(rs: RootSystem, w: int, z: int) -> int | None:
    """t_w t_z = t_{wz} when lengths add, else None (meaning 0)."""
    cur = w
    for i in rs.word(z):
        nxt = rs._rmul[cur][i]
        if rs.length(nxt) <= rs.length(cur):
            return None
        cur = nxt
    return cur


def graded_normalize(factors) -> GradedElt:
    """Multiply out a sequence of GradedElt factors (elements are always kept
    in normal form, so normalization is just evaluation)."""
    it = iter(factors)
    out = next(it)
    for f in it:
        out = out * f
    return out


class HClass:
    """Coordinates in the cohomology Schubert basis [X_w] over y-polynomials."""

    __slots__ = ("rs", "coeffs")

    def __init__(self, rs: RootSystem, coeffs: dict[int, SPoly] | None = None):
        self.rs = rs
        self.coeffs = {w: c for w, c in (coeffs or {}).items() if c}

    @classmethod
    def basis(cls, rs, w: WeylElt) -> "HClass":
        return cls(rs, {w.idx: SPoly.const(rs, 1)})

    def __bool__(self):
        return bool(self.coeffs)

    def __eq__(self, other):
        return (isinstance(other, HClass) and set(self.coeffs) == set(other.coeffs)
                and all(self.coeffs[w] == other.coeffs[w] for w in self.coeffs))

    def __add__(self, other):
        out = dict(self.coeffs)
        for w, c in other.coeffs.items():
            out[w] = out[w] + c if w in out else c
        return HClass(self.rs, out)

    def __sub__(self, other):
        return self + other.scale(-1)

    def scale(self, c) -> "HClass":
        return HClass(self.rs, {w: f * c if isinstance(c, (int, Fraction)) else f.mul(c)
                                for w, f in self.coeffs.items()})

    def degree_of(self, w: int) -> int:
        return self.rs.length(self.rs.w0_index) - self.rs.length(w)

    def homogeneous_part(self, d: int) -> "HClass":
        out = {}
        for w, c in self.coeffs.items():
            part = c.homogeneous_part(d - self.degree_of(w))
            if part:
                out[w] = part
        return HClass(self.rs, out)

    def min_degree(self) -> int | None:
        degs = [c.min_degree() + self.degree_of(w) for w, c in self.coeffs.items() if c]
        return min(degs) if degs else None

    def at_y0(self) -> dict[int, Fraction]:
        out = {}
        zero = (0,) * self.rs.rank
        for w, c in self.coeffs.items():
            v = c.terms.get((zero, zero), 0)
            if v:
                out[w] = v
        return out

    def __repr__(self):
        if not self.coeffs:
            return "0"
        rs = self.rs
        bits = []
        for w in sorted(self.coeffs, key=lambda w: (rs.length(w), rs.word(w))):
            word = "".join(f"s{i + 1}" for i in rs.word(w)) or "1"
            bits.append(f"({self.coeffs[w]!r})*[{word}]")
        return " + ".join(bits)


def h_act(h: GradedElt, c: HClass) -> HClass:
    """Module action: write c = sum r_v t_{v^{-1}} [X_1], multiply, evaluate."""
    rs = h.rs
    hs = GradedElt(rs, {rs.inverse(v): r for v, r in c.coeffs.items()})
    out: dict[int, SPoly] = {}
    for z, g in (h * hs).terms.items():
        zi = rs.inverse(z)
        add = g.x_to_y()
        out[zi] = out[zi] + add if zi in out else add
    return HClass(rs, out)


def h_bottom(rs: RootSystem) -> HClass:
    return HClass.basis(rs, rs.one)


def phi_graded(f: SPoly | GradedElt) -> HClass:
    """Phi(f) = f t_{w0} [X_1]."""
    rs = f.rs
    if isinstance(f, SPoly):
        f = GradedElt.scalar(f)
    return h_act(f * GradedElt.t(rs, rs.w0), h_bottom(rs))


# -- truncated Chern character -------------------------------------------------

def _series_x_over_expm1(D: int) -> list[Fraction]:
    """Coefficients of t/(e^t - 1) up to degree D (exact rationals)."""
    u = [Fraction(1, _factorial(r + 1)) for r in range(D + 1)]  # (e^t-1)/t
    c = [Fraction(0)] * (D + 1)
    c[0] = Fraction(1)
    for r in range(1, D + 1):
        c[r] = -sum(u[k] * c[r - k] for k in range(1, r + 1))
    return c


def _factorial(n: int) -> int:
    out = 1
    for k in range(2, n + 1):
        out *= k
    return out


def _exp_series(lin: SPoly, D: int) -> SPoly:
    out = SPoly.const(lin.rs, 1)
    power = SPoly.const(lin.rs, 1)
    for r in range(1, D + 1):
        power = power.mul(lin, D)
        if not power:
            break
        out = out + power.scale(Fraction(1, _factorial(r)))
    return out


def ch_X(rs: RootSystem, lam: Weight, D: int) -> GradedElt:
    """ch(X^lam) = exp(x_lam), truncated past total degree D."""
    if D < 1:
        raise ValueError("truncation degree must be at least 1")
    return GradedElt.scalar(_exp_series(SPoly.x_linear(rs, lam), D))


def ch_e(rs: RootSystem, mu: Weight, D: int) -> SPoly:
    return _exp_series(SPoly.y_linear(rs, mu), D)


def ch_T(rs: RootSystem, i: int, D: int) -> GradedElt:
    """ch(T_i) = t_i x_{alpha_i}/(1 - exp(-x_{alpha_i})) as a truncated
    series; the x_{alpha_i} cancellation is symbolic, so no negative powers
    appear.  The minus sign in the exponential is forced: it is the unique
    choice whose constant term +1 makes the commutation relation and the
    lowest-degree property of Schubert classes come out right.
    """
    cache = rs.cache("ch_T")
    got = cache.get((i, D))
    if got is None:
        coeffs = _series_x_over_expm1(D)  # x/(1-e^{-x}) alternates its signs
        lin = SPoly.x_linear(rs, rs.simple_roots[i])
        acc = SPoly.const(rs, 0)
        power = SPoly.const(rs, 1)
        for r in range(D + 1):
            acc = acc + power.scale(coeffs[r] if r % 2 == 0 else -coeffs[r])
            power = power.mul(lin, D)
            if not power:
                break
        got = cache[(i, D)] = GradedElt(rs, {rs.simple(i).idx: acc})
    return got


def ch_T_word(rs: RootSystem, word, D: int) -> GradedElt:
    out = GradedElt.one(rs)
    for i in word:
        out = out.mul(ch_T(rs, i, D), trunc=D)
    return out


def ch_nilhecke(h: NilHeckeElt, D: int) -> GradedElt:
    """The Chern character of a nil-Hecke element, truncated at degree D."""
    rs = h.rs
    out = GradedElt.zero(rs)
    for w, f in h.terms.items():
        tw = ch_T_word(rs, rs.word(w), D)
        for (mu, lam), c in f.terms.items():
            coeff = ch_e(rs, mu, D).mul(_exp_series(SPoly.x_linear(rs, lam), D), D)
            out = out + tw.mul(GradedElt.scalar(coeff), trunc=D).scale(c)
    return out


def ch_rx(f: RXElt, D: int) -> GradedElt:
    return ch_nilhecke(NilHeckeElt(f.rs, {0: f}), D)


def ch_schubert_class(w: WeylElt, D: int) -> HClass:
    """ch([O_w]) = ch(T_{w^{-1}}) [X_1], truncated."""
    rs = w.rs
    elt = ch_T_word(rs, rs.word(rs.inverse(w.idx)), D)
    return h_act(elt, h_bottom(rs))


def ch_kclass(c: KClass, D: int) -> HClass:
    """The Chern character of a K-class (coefficients e^mu -> exp(y_mu))."""
    rs = c.rs
    out = HClass(rs)
    for v, r in c.coeffs.items():
        base = ch_schubert_class(WeylElt(rs, v), D)
        acc = HClass(rs)
        for mu, cc in r.terms.items():
            acc = acc + base.scale(ch_e(rs, mu, D).scale(cc))
        out = out + acc
    return out


def lowest_degree(c: HClass) -> HClass:
    d = c.min_degree()
    return HClass(c.rs) if d is None else c.homogeneous_part(d)


# -- ring structure on the cohomology side ------------------------------------

def graded_representative(w: WeylElt) -> SPoly:
    """A polynomial representative g with Phi(g) = [X_w], homogeneous of
    degree l(w0) - l(w): the lowest homogeneous component of ch of the
    K-side representative.  Verified exactly against the module action."""
    rs = w.rs
    cache = rs.cache("graded_rep")
    got = cache.get(w.idx)
    if got is None:
        d = rs.length(rs.w0_index) - w.length
        chrep = ch_rx(representative(w), max(d, 1))
        g = chrep.terms.get(0, SPoly.const(rs, 0)).homogeneous_part(d)
        if phi_graded(g) != HClass.basis(rs, w):
            raise ArithmeticError(f"graded representative for {w!r} failed verification")
        got = cache[w.idx] = g
    return got


def h_product(w: WeylElt, v: WeylElt) -> HClass:
    """[X_w][X_v] in the Schubert basis of equivariant cohomology; the
    structure constants are integral y-polynomials, homogeneous of degree
    d(w) + d(v) - d(z)."""
    rs = w.rs
    cache = rs.cache("h_product")
    key = (w.idx, v.idx)
    got = cache.get(key)
    if got is not None:
        return got
    g = graded_representative(w)
    out = h_act(GradedElt.scalar(g), HClass.basis(rs, v))
    checked = {}
    dw = rs.length(rs.w0_index) - w.length
    dv = rs.length(rs.w0_index) - v.length
    for z, c in out.coeffs.items():
        dz = rs.length(rs.w0_index) - rs.length(z)
        if c.homogeneous_part(dw + dv - dz) != c:
            raise ArithmeticError(f"inhomogeneous structure constant at {z}")
        checked[z] = c.normalized_int()
    got = cache[key] = HClass(rs, checked)
    return got


def h_product_table(rs: RootSystem) -> dict[tuple[int, int], HClass]:
    table = {}
    for w in range(rs.order):
        for v in range(w, rs.order):
            cls = h_product(WeylElt(rs, w), WeylElt(rs, v))
            table[(w, v)] = cls
            table[(v, w)] = cls
    return table


# -- the specialization square -------------------------------------------------

def specialize_kclass(c: KClass) -> dict[int, int]:
    """K_T -> K: every e^mu -> 1."""
    return c.at_e1()


def specialize_hclass(c: HClass) -> dict[int, Fraction]:
    """H*_T -> H*: every y_i -> 0."""
    return c.at_y0()


def chern_lowest_is_schubert(w: WeylElt, D: int) -> bool:
    """(The graded shadow of a Schubert class.)  ch([O_w]) must be [X_w] plus
    strictly higher-degree terms."""
    rs = w.rs
    c = ch_schubert_class(w, D)
    d = rs.length(rs.w0_index) - w.length
    return c.min_degree() == d and c.homogeneous_part(d) == HClass.basis(rs, w)
