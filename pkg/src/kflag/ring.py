"""Exact sparse Laurent arithmetic over the weight lattice.

Two element types live here.  :class:`GroupAlgElt` is a sparse
integer-coefficient element of the group algebra of the weight lattice; the
same representation serves both the coefficient ring (spanned by ``e^lam``)
and the operator ring (spanned by ``X^lam``).  :class:`RXElt` is the
two-alphabet ring spanned by ``e^mu X^lam``: the e-alphabet is central and
the X-alphabet carries the Weyl action and the Demazure operators.

Only two divisions exist, both closed-form telescoping quotients
(:func:`geometric_quotient` and :func:`demazure`), plus
:func:`divexact` which performs verified exact division (used by the
fraction-free linear algebra).  Terms are keyed by coordinate tuples in the
fundamental-weight basis; canonical order is lexicographic on those tuples.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable

from .weyl import RootSystem, Weight, WeylElt, wadd, wneg


class GroupAlgElt:
    """Sparse Z-linear combination of lattice monomials, keyed by weight."""

    __slots__ = ("rs", "terms")

    def __init__(self, rs: RootSystem, terms: dict[Weight, int] | None = None):
        self.rs = rs
        self.terms = {k: v for k, v in (terms or {}).items() if v}

    @classmethod
    def monomial(cls, rs: RootSystem, lam: Weight, coeff: int = 1) -> "GroupAlgElt":
        return cls(rs, {tuple(lam): coeff})

    @classmethod
    def one(cls, rs: RootSystem) -> "GroupAlgElt":
        return cls(rs, {tuple([0] * rs.rank): 1})

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if isinstance(other, int):
            if other == 0:
                return not self.terms
            other = GroupAlgElt.monomial(self.rs, (0,) * self.rs.rank, other)
        return isinstance(other, GroupAlgElt) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __add__(self, other: "GroupAlgElt") -> "GroupAlgElt":
        out = dict(self.terms)
        for k, v in other.terms.items():
            out[k] = out.get(k, 0) + v
        return GroupAlgElt(self.rs, out)

    def __neg__(self):
        return GroupAlgElt(self.rs, {k: -v for k, v in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, int):
            return GroupAlgElt(self.rs, {k: v * other for k, v in self.terms.items()})
        out: dict[Weight, int] = {}
        for k1, v1 in self.terms.items():
            for k2, v2 in other.terms.items():
                k = wadd(k1, k2)
                out[k] = out.get(k, 0) + v1 * v2
        return GroupAlgElt(self.rs, out)

    __rmul__ = __mul__

    def w_act(self, w: WeylElt) -> "GroupAlgElt":
        return GroupAlgElt(self.rs, {w.act(k): v for k, v in self.terms.items()})

    def is_w_invariant(self) -> bool:
        return all(self.w_act(self.rs.simple(i)) == self for i in range(self.rs.rank))

    def evaluate(self, point) -> Fraction:
        """Evaluate at X^{omega_i} -> point[i] (nonzero rationals)."""
        point = [Fraction(p) for p in point]
        if any(p == 0 for p in point):
            raise ZeroDivisionError("evaluation point must be nonzero")
        total = Fraction(0)
        for k, v in self.terms.items():
            m = Fraction(v)
            for p, ex in zip(point, k):
                m *= p ** ex
            total += m
        return total

    def to_pairs(self) -> list[tuple[Weight, int]]:
        """Canonical serialization: (coordinate vector, coefficient) pairs."""
        return sorted(self.terms.items())

    @classmethod
    def from_pairs(cls, rs: RootSystem, pairs) -> "GroupAlgElt":
        out: dict[Weight, int] = {}
        for coords, c in pairs:
            k = tuple(int(x) for x in coords)
            out[k] = out.get(k, 0) + int(c)
        return cls(rs, out)

    def leading(self) -> tuple[Weight, int]:
        """Lexicographically largest monomial (term-order used by divexact)."""
        k = max(self.terms)
        return k, self.terms[k]

    def __repr__(self):
        if not self.terms:
            return "0"
        bits = []
        for k, v in self.to_pairs():
            if all(x == 0 for x in k):
                bits.append(f"{v}")
            else:
                mono = "e[" + ",".join(map(str, k)) + "]"
                bits.append(mono if v == 1 else f"{v}*{mono}")
        return " + ".join(bits).replace("+ -", "- ")


def divexact(f: GroupAlgElt, g: GroupAlgElt) -> GroupAlgElt:
    """Exact division f / g in the Laurent ring; raises if not divisible.

    Leading-term elimination in lexicographic order.  Termination is
    guaranteed when the quotient exists (each step strictly lowers the
    leading monomial of the remainder); a step count bounds runaway
    non-exact input.
    """
    if not g:
        raise ZeroDivisionError("division by zero element")
    rs = f.rs
    q: dict[Weight, int] = {}
    r = f
    gk, gc = g.leading()
    steps = 0
    limit = 16 * (len(f.terms) + len(g.terms) + 4) ** 2
    while r:
        steps += 1
        if steps > limit:
            raise ArithmeticError("divexact: input is not exactly divisible")
        rk, rc = r.leading()
        if rc % gc:
            raise ArithmeticError("divexact: leading coefficient does not divide")
        t = (tuple(a - b for a, b in zip(rk, gk)), rc // gc)
        q[t[0]] = q.get(t[0], 0) + t[1]
        r = r - GroupAlgElt.monomial(rs, t[0], t[1]) * g
    return GroupAlgElt(rs, q)


class RXElt:
    """Element of the two-alphabet ring: sparse sum of ``c * e^mu X^lam``."""

    __slots__ = ("rs", "terms")

    def __init__(self, rs: RootSystem, terms: dict[tuple[Weight, Weight], int] | None = None):
        self.rs = rs
        self.terms = {k: v for k, v in (terms or {}).items() if v}

    @classmethod
    def monomial(cls, rs, mu: Weight, lam: Weight, coeff: int = 1) -> "RXElt":
        return cls(rs, {(tuple(mu), tuple(lam)): coeff})

    @classmethod
    def one(cls, rs) -> "RXElt":
        z = tuple([0] * rs.rank)
        return cls(rs, {(z, z): 1})

    @classmethod
    def from_e(cls, f: GroupAlgElt) -> "RXElt":
        z = tuple([0] * f.rs.rank)
        return cls(f.rs, {(k, z): v for k, v in f.terms.items()})

    @classmethod
    def from_x(cls, f: GroupAlgElt) -> "RXElt":
        z = tuple([0] * f.rs.rank)
        return cls(f.rs, {(z, k): v for k, v in f.terms.items()})

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        return isinstance(other, RXElt) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __add__(self, other):
        out = dict(self.terms)
        for k, v in other.terms.items():
            out[k] = out.get(k, 0) + v
        return RXElt(self.rs, out)

    def __neg__(self):
        return RXElt(self.rs, {k: -v for k, v in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, int):
            return RXElt(self.rs, {k: v * other for k, v in self.terms.items()})
        if isinstance(other, GroupAlgElt):  # treat as central e-coefficients
            other = RXElt.from_e(other)
        out: dict[tuple[Weight, Weight], int] = {}
        for (m1, l1), v1 in self.terms.items():
            for (m2, l2), v2 in other.terms.items():
                k = (wadd(m1, m2), wadd(l1, l2))
                out[k] = out.get(k, 0) + v1 * v2
        return RXElt(self.rs, out)

    __rmul__ = __mul__

    def w_act(self, w: WeylElt) -> "RXElt":
        """Weyl action on the X-alphabet only; e-coefficients are scalars."""
        return RXElt(self.rs, {(mu, w.act(lam)): v for (mu, lam), v in self.terms.items()})

    def x_to_e(self) -> GroupAlgElt:
        """The evaluation map X^lam -> e^lam (landing in the e-alphabet)."""
        out: dict[Weight, int] = {}
        for (mu, lam), v in self.terms.items():
            k = wadd(mu, lam)
            out[k] = out.get(k, 0) + v
        return GroupAlgElt(self.rs, out)

    def e_part_of_x(self, lam: Weight) -> GroupAlgElt:
        lam = tuple(lam)
        return GroupAlgElt(self.rs, {mu: v for (mu, l), v in self.terms.items() if l == lam})

    def x_support(self) -> set[Weight]:
        return {lam for (_, lam) in self.terms}

    def evaluate(self, e_point, x_point) -> Fraction:
        e_point = [Fraction(p) for p in e_point]
        x_point = [Fraction(p) for p in x_point]
        if any(p == 0 for p in e_point) or any(p == 0 for p in x_point):
            raise ZeroDivisionError("evaluation point must be nonzero")
        total = Fraction(0)
        for (mu, lam), v in self.terms.items():
            m = Fraction(v)
            for p, ex in zip(e_point, mu):
                m *= p ** ex
            for p, ex in zip(x_point, lam):
                m *= p ** ex
            total += m
        return total

    def to_pairs(self):
        return sorted(self.terms.items())

    def __repr__(self):
        if not self.terms:
            return "0"
        bits = []
        for (mu, lam), v in self.to_pairs():
            parts = [] if v == 1 else [str(v)]
            if any(mu):
                parts.append("e[" + ",".join(map(str, mu)) + "]")
            if any(lam):
                parts.append("X[" + ",".join(map(str, lam)) + "]")
            bits.append("*".join(parts) or "1")
        return " + ".join(bits).replace("+ -", "- ")


def geometric_quotient(rs: RootSystem, lam: Weight, i: int) -> GroupAlgElt:
    """(X^lam - X^{s_i lam}) / (1 - X^{-alpha_i}), in closed form.

    With m = <lam, alpha_i^vee>:  m >= 0 gives sum_{k=0}^{m-1} X^{lam - k alpha_i}
    (empty when m = 0); m < 0 gives -sum_{k=1}^{-m} X^{lam + k alpha_i}.
    """
    lam = tuple(lam)
    m = lam[i]
    alpha = rs.simple_roots[i]
    out: dict[Weight, int] = {}
    if m >= 0:
        key = lam
        for _ in range(m):
            out[key] = out.get(key, 0) + 1
            key = wadd(key, wneg(alpha))
    else:
        key = lam
        for _ in range(-m):
            key = wadd(key, alpha)
            out[key] = out.get(key, 0) - 1
    return GroupAlgElt(rs, out)


def _demazure_monomial(rs: RootSystem, lam: Weight, i: int) -> dict[Weight, int]:
    # T_i . X^lam = (X^{alpha_i + lam} - X^{s_i lam}) / (X^{alpha_i} - 1):
    # m >= 0 -> sum_{k=0}^m X^{lam - k alpha_i};  m = -1 -> 0;
    # m <= -2 -> -sum_{k=1}^{-m-1} X^{lam + k alpha_i}.
    m = lam[i]
    alpha = rs.simple_roots[i]
    out: dict[Weight, int] = {}
    if m >= 0:
        key = lam
        for _ in range(m + 1):
            out[key] = out.get(key, 0) + 1
            key = wadd(key, wneg(alpha))
    elif m <= -2:
        key = lam
        for _ in range(-m - 1):
            key = wadd(key, alpha)
            out[key] = out.get(key, 0) - 1
    return out


def demazure(i: int, f: GroupAlgElt | RXElt):
    """The Demazure operator ``T_i . f = (X^{alpha_i} f - s_i f)/(X^{alpha_i}-1)``,
    acting on the X-alphabet, extended linearly.  It is a projector."""
    rs = f.rs
    if isinstance(f, GroupAlgElt):
        out: dict[Weight, int] = {}
        for lam, v in f.terms.items():
            for k, c in _demazure_monomial(rs, lam, i).items():
                out[k] = out.get(k, 0) + v * c
        return GroupAlgElt(rs, out)
    out2: dict[tuple[Weight, Weight], int] = {}
    for (mu, lam), v in f.terms.items():
        for k, c in _demazure_monomial(rs, lam, i).items():
            out2[(mu, k)] = out2.get((mu, k), 0) + v * c
    return RXElt(rs, out2)


def orbit_sum(rs: RootSystem, lam: Weight) -> GroupAlgElt:
    """Sum of X^{w lam} over the orbit (a W-invariant element)."""
    orbit = {rs.act(w, tuple(lam)) for w in range(rs.order)}
    return GroupAlgElt(rs, {k: 1 for k in orbit})
