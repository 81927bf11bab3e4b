"""The affine nil-Hecke algebra over the two-alphabet coefficient ring.

Elements are kept in the normal form ``sum_w T_w f_w(e, X)`` (T's on the
left), which is the form that evaluates directly on the Schubert module:
``T_z X^mu`` applied to the bottom class reads off as ``e^mu`` times a basis
class.  The rewriting engine pushes X-monomials rightward through T-letters
one generator at a time using the commutation rule

    X^lam T_i  =  T_i X^{s_i lam}  +  (X^lam - X^{s_i lam}) / (1 - X^{-alpha_i}),

and folds T-words with the idempotent (0-Hecke) product ``T_u T_v = T_{u*v}``.
The opposite normal form ``sum_w g_w T_w`` is available as a conversion, and
a textual format ``coef * e[mu] * X[lam] * T[word]`` round-trips through
:func:`parse` and :func:`format_elt`.
"""

from __future__ import annotations

import re

from .ring import GroupAlgElt, RXElt, geometric_quotient
from .weyl import RootSystem, Weight, WeylElt


def hecke_word_product(u: WeylElt, v: WeylElt) -> WeylElt:
    """The Demazure product u * v defined by folding: T_u T_v = T_{u*v}."""
    rs = u.rs
    return WeylElt(rs, _star(rs, u.idx, v.idx))


def _star(rs: RootSystem, u: int, v: int) -> int:
    cache = rs.cache("hecke_star")
    key = (u, v)
    got = cache.get(key)
    if got is None:
        w = u
        for i in rs.word(v):
            wi = rs._rmul[w][i]
            if rs.length(wi) > rs.length(w):
                w = wi
        got = cache[key] = w
    return got


def _simple_star(rs: RootSystem, i: int, z: int) -> int:
    """T_i T_z = T_{s_i z} if that is longer, else T_z."""
    zi = rs._lmul[i][z]
    return zi if rs.length(zi) > rs.length(z) else z


def _mono_through_word(rs: RootSystem, lam: Weight, w: int) -> dict[int, dict[Weight, int]]:
    """X^lam T_w as {z: Z[X] terms}, meaning sum_z T_z f_z(X).  Memoized."""
    cache = rs.cache("x_through_t")
    key = (lam, w)
    got = cache.get(key)
    if got is not None:
        return got
    if w == 0:
        got = {0: {lam: 1}}
        cache[key] = got
        return got
    i = rs.word(w)[0]
    rest = rs._lmul[i][w]  # w = s_i * rest with length additive
    out: dict[int, dict[Weight, int]] = {}
    for z, f in _mono_through_word(rs, rs.act(rs._rmul[0][i], lam), rest).items():
        zz = _simple_star(rs, i, z)
        dst = out.setdefault(zz, {})
        for k, c in f.items():
            dst[k] = dst.get(k, 0) + c
    for nu, c0 in geometric_quotient(rs, lam, i).terms.items():
        for z, f in _mono_through_word(rs, nu, rest).items():
            dst = out.setdefault(z, {})
            for k, c in f.items():
                dst[k] = dst.get(k, 0) + c0 * c
    got = {z: {k: c for k, c in f.items() if c} for z, f in out.items()}
    got = {z: f for z, f in got.items() if f}
    cache[key] = got
    return got


class NilHeckeElt:
    """Normal-form element: sparse map from Weyl elements to RX coefficients,
    standing for ``sum_w T_w f_w(e, X)``."""

    __slots__ = ("rs", "terms")

    def __init__(self, rs: RootSystem, terms: dict[int, RXElt] | None = None):
        self.rs = rs
        self.terms = {w: f for w, f in (terms or {}).items() if f}

    # -- constructors -------------------------------------------------------

    @classmethod
    def zero(cls, rs) -> "NilHeckeElt":
        return cls(rs, {})

    @classmethod
    def one(cls, rs) -> "NilHeckeElt":
        return cls(rs, {0: RXElt.one(rs)})

    @classmethod
    def T(cls, rs, w) -> "NilHeckeElt":
        """T_w for a WeylElt, a simple index, or an explicit word."""
        if isinstance(w, WeylElt):
            return cls(rs, {w.idx: RXElt.one(rs)})
        if isinstance(w, int):
            return cls(rs, {rs.simple(w).idx: RXElt.one(rs)})
        out = cls.one(rs)
        for i in w:
            out = out * cls.T(rs, i)
        return out

    @classmethod
    def X(cls, rs, lam: Weight) -> "NilHeckeElt":
        return cls(rs, {0: RXElt.from_x(GroupAlgElt.monomial(rs, lam))})

    @classmethod
    def E(cls, rs, mu: Weight) -> "NilHeckeElt":
        return cls(rs, {0: RXElt.from_e(GroupAlgElt.monomial(rs, mu))})

    @classmethod
    def from_x_poly(cls, f: GroupAlgElt) -> "NilHeckeElt":
        return cls(f.rs, {0: RXElt.from_x(f)})

    # -- ring structure ------------------------------------------------------

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if isinstance(other, int) and other == 0:
            return not self.terms
        return isinstance(other, NilHeckeElt) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset((w, f) for w, f in self.terms.items()))

    def __add__(self, other):
        out = dict(self.terms)
        for w, f in other.terms.items():
            out[w] = out[w] + f if w in out else f
        return NilHeckeElt(self.rs, out)

    def __neg__(self):
        return NilHeckeElt(self.rs, {w: -f for w, f in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        rs = self.rs
        if isinstance(other, int):
            return NilHeckeElt(rs, {w: f * other for w, f in self.terms.items()})
        if isinstance(other, (GroupAlgElt, RXElt)):
            if isinstance(other, GroupAlgElt):
                other = RXElt.from_e(other)
            return NilHeckeElt(rs, {w: f * other for w, f in self.terms.items()})
        out: dict[int, RXElt] = {}
        for w, f in self.terms.items():
            for v, g in other.terms.items():
                # T_w f T_v g: push each X-monomial of f through T_v
                for (mu, lam), c in f.terms.items():
                    for z, h in _mono_through_word(rs, lam, v).items():
                        wz = _star(rs, w, z)
                        add = RXElt(rs, {(mu, k): c * ck for k, ck in h.items()}) * g
                        out[wz] = out[wz] + add if wz in out else add
        return NilHeckeElt(rs, out)

    def __rmul__(self, other):
        if isinstance(other, int):
            return self * other
        if isinstance(other, GroupAlgElt):
            return self * other  # e-coefficients are central
        if isinstance(other, RXElt):
            return NilHeckeElt(self.rs, {0: other}) * self
        raise TypeError(f"cannot multiply {type(other)} with NilHeckeElt")

    # -- conversions ---------------------------------------------------------

    def to_right_form(self) -> dict[int, RXElt]:
        """Convert to the opposite normal form ``sum_w g_w(e,X) T_w``.

        Uses the mirrored commutation T_i X^mu = X^{s_i mu} T_i - Q(s_i mu, i),
        pushing X's leftward letter by letter.
        """
        rs = self.rs
        out: dict[int, RXElt] = {}

        def word_times_mono(w: int, lam: Weight) -> dict[int, dict[Weight, int]]:
            if w == 0:
                return {0: {lam: 1}}
            word = rs.word(w)
            i = word[-1]
            head = rs._rmul[w][i]  # w = head * s_i
            res: dict[int, dict[Weight, int]] = {}
            si_lam = rs.act(rs._rmul[0][i], lam)
            for z, f in word_times_mono(head, si_lam).items():
                zz = _right_simple_star(rs, z, i)
                dst = res.setdefault(zz, {})
                for k, c in f.items():
                    dst[k] = dst.get(k, 0) + c
            for nu, c0 in geometric_quotient(rs, si_lam, i).terms.items():
                for z, f in word_times_mono(head, nu).items():
                    dst = res.setdefault(z, {})
                    for k, c in f.items():
                        dst[k] = dst.get(k, 0) - c0 * c
            return res

        for w, f in self.terms.items():
            for (mu, lam), c in f.terms.items():
                for z, h in word_times_mono(w, lam).items():
                    add = RXElt(rs, {(mu, k): c * ck for k, ck in h.items()})
                    out[z] = out[z] + add if z in out else add
        return {z: g for z, g in out.items() if g}

    @classmethod
    def from_right_form(cls, rs: RootSystem, terms: dict[int, RXElt]) -> "NilHeckeElt":
        out = cls.zero(rs)
        for w, g in terms.items():
            out = out + cls(rs, {0: g}) * cls(rs, {w: RXElt.one(rs)})
        return out

    def coefficient(self, w: WeylElt) -> RXElt:
        return self.terms.get(w.idx, RXElt(self.rs))

    def evaluate_operator(self, e_point, x_point) -> dict[int, "Fraction"]:
        """Per-T_w rational value of the coefficient at the given point."""
        return {w: f.evaluate(e_point, x_point) for w, f in self.terms.items()}

    def __repr__(self):
        return format_elt(self)


def _right_simple_star(rs: RootSystem, z: int, i: int) -> int:
    """T_z T_i = T_{z s_i} if that is longer, else T_z."""
    zi = rs._rmul[z][i]
    return zi if rs.length(zi) > rs.length(z) else z


def commute_once(rs: RootSystem, lam: Weight, i: int) -> NilHeckeElt:
    """X^lam T_i rewritten as T_i X^{s_i lam} + geometric quotient."""
    si_lam = rs.act(rs._rmul[0][i], tuple(lam))
    out = NilHeckeElt(rs, {rs.simple(i).idx: RXElt.from_x(GroupAlgElt.monomial(rs, si_lam))})
    return out + NilHeckeElt.from_x_poly(geometric_quotient(rs, tuple(lam), i))


def epsilon(w: WeylElt) -> NilHeckeElt:
    """epsilon_w = product of (1 - T_i) along a reduced word; equals
    sum_{v <= w} (-1)^{l(v)} T_v."""
    rs = w.rs
    cache = rs.cache("epsilon")
    got = cache.get(w.idx)
    if got is None:
        out = NilHeckeElt.one(rs)
        for i in w.word:
            out = out * (NilHeckeElt.one(rs) - NilHeckeElt.T(rs, i))
        got = cache[w.idx] = out
    return got


def epsilon_by_sum(w: WeylElt) -> NilHeckeElt:
    """The closed form sum_{v <= w} (-1)^{l(v)} T_v (independent of the
    product route; used as an oracle)."""
    rs = w.rs
    terms = {}
    for v in range(rs.order):
        if rs.bruhat_leq(v, w.idx):
            terms[v] = RXElt.one(rs) * (-1 if rs.length(v) % 2 else 1)
    return NilHeckeElt(rs, terms)


def t_from_epsilons(w: WeylElt) -> NilHeckeElt:
    """The inverse identity T_w = sum_{v <= w} (-1)^{l(v)} epsilon_v."""
    rs = w.rs
    out = NilHeckeElt.zero(rs)
    for v in range(rs.order):
        if rs.bruhat_leq(v, w.idx):
            sgn = -1 if rs.length(v) % 2 else 1
            out = out + epsilon(WeylElt(rs, v)) * sgn
    return out


def is_central(f: GroupAlgElt | RXElt | NilHeckeElt) -> bool:
    """True iff f commutes with every T_i (f taken in the X-alphabet)."""
    rs = f.rs
    if isinstance(f, GroupAlgElt):
        f = NilHeckeElt.from_x_poly(f)
    elif isinstance(f, RXElt):
        f = NilHeckeElt(rs, {0: f})
    for i in range(rs.rank):
        t = NilHeckeElt.T(rs, i)
        if f * t != t * f:
            return False
    return True


# -- textual format ---------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(?P<num>[+-]?\d+)|(?P<sym>[eXT])\[(?P<args>[-\d,\s]*)\]"
                    r"|(?P<op>[*+-]))")


def format_elt(h: NilHeckeElt) -> str:
    """Render in the normal form ``sum coef * T[word] * e[mu] * X[lam]``."""
    if not h.terms:
        return "0"
    bits = []
    for w in sorted(h.terms, key=lambda w: (h.rs.length(w), h.rs.word(w))):
        f = h.terms[w]
        word = ",".join(str(i + 1) for i in h.rs.word(w))
        for (mu, lam), c in f.to_pairs():
            parts = [str(c)]
            if word:
                parts.append(f"T[{word}]")
            if any(mu):
                parts.append("e[" + ",".join(map(str, mu)) + "]")
            if any(lam):
                parts.append("X[" + ",".join(map(str, lam)) + "]")
            bits.append(" * ".join(parts))
    return "  +  ".join(bits)


def parse(rs: RootSystem, text: str) -> NilHeckeElt:
    """Parse the textual element format; inverse of :func:`format_elt`.

    Grammar: terms separated by + or -, each term a * -separated product of
    integer literals, ``e[c1,...,cn]``, ``X[c1,...,cn]`` and ``T[i1,...,ip]``
    (1-based simple indices, not necessarily reduced).
    """
    pos = 0
    total = NilHeckeElt.zero(rs)
    current: NilHeckeElt | None = None
    sign = 1
    pending_sign = 1

    def flush():
        nonlocal total, current
        if current is not None:
            total = total + current
        current = None

    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            if text[pos:].strip():
                raise ValueError(f"parse error at {text[pos:pos + 20]!r}")
            break
        pos = m.end()
        if m.group("op") == "+":
            flush()
            pending_sign = 1
            continue
        if m.group("op") == "-":
            flush()
            pending_sign = -1
            continue
        if m.group("op") == "*":
            continue
        if current is None:
            current = NilHeckeElt.one(rs) * pending_sign
        if m.group("num") is not None:
            current = current * int(m.group("num"))
            continue
        args = [int(a) for a in m.group("args").split(",") if a.strip()]
        sym = m.group("sym")
        if sym == "e":
            current = current * NilHeckeElt.E(rs, tuple(args))
        elif sym == "X":
            current = current * NilHeckeElt.X(rs, tuple(args))
        else:
            current = current * NilHeckeElt.T(rs, [i - 1 for i in args])
    flush()
    return total
