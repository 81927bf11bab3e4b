"""The Littelmann path model: piecewise-linear paths and root operators.

A path is stored as segments ``(direction, length)`` with integral weight
directions and exact rational lengths summing to 1; the path is the
concatenation of the straight pieces ``length * direction``.  The crystal of
shape ``lam`` (dominant) is generated from the straight path ``t -> t lam``
by the lowering operators ``f_i``; their construction is the usual one: take
the height function ``h(t) = <p(t), alpha_i^vee>``, cut at the last minimum
and the first return to ``min + 1``, and reflect the enclosed piece.  All
break points are exact rationals, so equality of paths is literal equality of
the merged segment lists.

Independent oracles for the generated crystals live here too: the Weyl
dimension formula and the Weyl character formula (evaluated at rational
points).
"""

from __future__ import annotations

from fractions import Fraction

from .ring import GroupAlgElt
from .weyl import (ParabolicCoset, RootSystem, Weight, WeylElt, coset_of,
                   stabilizer_indices, wadd, wscale, wsub)


class LSPath:
    """A piecewise-linear path from the origin: merged (direction, length)
    segments with rational lengths summing to one; directions are integral
    weights and adjacent directions differ."""

    __slots__ = ("rs", "segments")

    def __init__(self, rs: RootSystem, segments):
        merged: list[tuple[Weight, Fraction]] = []
        for d, a in segments:
            a = Fraction(a)
            if a == 0:
                continue
            if a < 0:
                raise ValueError("segment lengths must be positive")
            d = tuple(d)
            if merged and merged[-1][0] == d:
                merged[-1] = (d, merged[-1][1] + a)
            else:
                merged.append((d, a))
        if sum((a for _, a in merged), Fraction(0)) != 1:
            raise ValueError("total path length must be 1")
        self.rs = rs
        self.segments = tuple(merged)

    def endpoint(self) -> Weight:
        """p(1) = sum a_j d_j; integral for crystal members."""
        end = tuple([Fraction(0)] * self.rs.rank)
        for d, a in self.segments:
            end = wadd(end, wscale(a, d))
        if all(x.denominator == 1 for x in end):
            return tuple(int(x) for x in end)
        return end

    def first_direction(self) -> Weight:
        return self.segments[0][0]

    def last_direction(self) -> Weight:
        return self.segments[-1][0]

    def __eq__(self, other):
        return isinstance(other, LSPath) and self.segments == other.segments

    def __hash__(self):
        return hash(self.segments)

    def __repr__(self):
        return " | ".join(f"{d}x{a}" for d, a in self.segments)

    # -- the height function h_i --------------------------------------------

    def _nodes(self, i: int):
        """Times t_0=0 < ... < t_r=1 and values of h_i(t) = <p(t), alpha_i^vee>
        at them.  h_i is linear between consecutive nodes."""
        ts = [Fraction(0)]
        hs = [Fraction(0)]
        for d, a in self.segments:
            ts.append(ts[-1] + a)
            hs.append(hs[-1] + a * d[i])
        return ts, hs

    def _slice(self, t0: Fraction, t1: Fraction, reflect_i: int | None = None):
        """Segments of the restriction to [t0, t1] (directions reflected by
        s_i when requested)."""
        out = []
        pos = Fraction(0)
        for d, a in self.segments:
            lo, hi = max(pos, t0), min(pos + a, t1)
            if lo < hi:
                dd = self.rs.act(self.rs._rmul[0][reflect_i], d) if reflect_i is not None else d
                out.append((dd, hi - lo))
            pos += a
        return out


def straight_path(rs: RootSystem, lam: Weight) -> LSPath:
    """The straight path to a dominant weight (the zero weight degenerates to
    the single zero segment)."""
    lam = tuple(lam)
    if any(c < 0 for c in lam):
        raise ValueError(f"{lam} is not dominant")
    return LSPath(rs, [(lam, Fraction(1))])


def _cut_times(p: LSPath, i: int, lowering: bool):
    ts, hs = p._nodes(i)
    m = min(hs)
    if lowering:
        if hs[-1] - m < 1:
            return None
        k = max(idx for idx, h in enumerate(hs) if h == m)
        t1 = ts[k]
        # first return to m+1 after t1
        for j in range(k, len(ts) - 1):
            if hs[j + 1] >= m + 1:
                slope = (hs[j + 1] - hs[j]) / (ts[j + 1] - ts[j])
                return t1, ts[j] + (m + 1 - hs[j]) / slope
        return None  # unreachable when hs[-1] - m >= 1
    else:
        if -m < 1:
            return None
        k = min(idx for idx, h in enumerate(hs) if h == m)
        t0 = ts[k]
        # last visit to m+1 before t0
        for j in range(k, 0, -1):
            if hs[j - 1] >= m + 1:
                slope = (hs[j] - hs[j - 1]) / (ts[j] - ts[j - 1])
                return ts[j - 1] + (m + 1 - hs[j - 1]) / slope, t0
        return None


def root_f(p: LSPath, i: int) -> LSPath | None:
    """Lowering operator; None when undefined.  The endpoint drops by
    alpha_i."""
    cut = _cut_times(p, i, lowering=True)
    if cut is None:
        return None
    t1, t0 = cut
    segs = p._slice(Fraction(0), t1) + p._slice(t1, t0, reflect_i=i) + p._slice(t0, Fraction(1))
    return LSPath(p.rs, segs)


def root_e(p: LSPath, i: int) -> LSPath | None:
    """Raising operator, the partial inverse of :func:`root_f`."""
    cut = _cut_times(p, i, lowering=False)
    if cut is None:
        return None
    t1, t0 = cut
    segs = p._slice(Fraction(0), t1) + p._slice(t1, t0, reflect_i=i) + p._slice(t0, Fraction(1))
    return LSPath(p.rs, segs)


class Crystal:
    """The path model of a dominant shape: closure of the straight path under
    the lowering operators, in deterministic BFS order."""

    def __init__(self, rs: RootSystem, lam: Weight):
        lam = tuple(lam)
        self.rs = rs
        self.shape = lam
        self.J = stabilizer_indices(rs, lam)
        start = straight_path(rs, lam)
        order = [start]
        seen = {start}
        frontier = [start]
        while frontier:
            nxt = []
            for p in frontier:
                for i in range(rs.rank):
                    q = root_f(p, i)
                    if q is not None and q not in seen:
                        seen.add(q)
                        nxt.append(q)
            nxt.sort(key=lambda q: q.segments)
            order.extend(nxt)
            frontier = nxt
        self.paths = tuple(order)
        self._set = seen

    def __len__(self):
        return len(self.paths)

    def __iter__(self):
        return iter(self.paths)

    def __contains__(self, p):
        return p in self._set

    def highest(self) -> LSPath:
        return self.paths[0]

    def character(self) -> GroupAlgElt:
        """sum of e^{p(1)} over the crystal (the character of L(shape))."""
        out: dict[Weight, int] = {}
        for p in self.paths:
            k = p.endpoint()
            out[k] = out.get(k, 0) + 1
        return GroupAlgElt(self.rs, out)

    def i_strings(self, i: int) -> list[list[LSPath]]:
        """Partition of the crystal into maximal i-strings."""
        strings = []
        for p in self.paths:
            if root_e(p, i) is None:
                strings.append(i_string(p, i))
        return strings


def generate_crystal(rs: RootSystem, lam: Weight) -> Crystal:
    cache = rs.cache("crystal")
    lam = tuple(lam)
    got = cache.get(lam)
    if got is None:
        got = cache[lam] = Crystal(rs, lam)
    return got


def i_string(h: LSPath, i: int) -> list[LSPath]:
    """The maximal string {h, f_i h, ..., f_i^m h} of a string head h."""
    if root_e(h, i) is not None:
        raise ValueError("not the head of its string: e_i does not vanish")
    out = [h]
    while True:
        nxt = root_f(out[-1], i)
        if nxt is None:
            return out
        out.append(nxt)


def direction_coset(rs: RootSystem, lam: Weight, d: Weight) -> ParabolicCoset:
    """The coset in W/W_lam of a direction d in the orbit W lam."""
    lam = tuple(lam)
    best = None
    for w in range(rs.order):
        if rs.act(w, lam) == tuple(d):
            if best is None or rs.length(w) < rs.length(best):
                best = w
    if best is None:
        raise ValueError(f"{d} is not in the orbit of {lam}")
    return coset_of(rs, lam, WeylElt(rs, best))


def initial_direction(p: LSPath, lam: Weight) -> ParabolicCoset:
    return direction_coset(p.rs, lam, p.first_direction())


def final_direction(p: LSPath, lam: Weight) -> ParabolicCoset:
    return direction_coset(p.rs, lam, p.last_direction())


def ls_chain(p: LSPath, lam: Weight) -> list[ParabolicCoset]:
    """The chain of direction cosets w_1 >= w_2 >= ... >= w_r of an LS path."""
    return [direction_coset(p.rs, lam, d) for d, _ in p.segments]


def dual_path(p: LSPath) -> LSPath:
    """The dual path p*: p reversed and negated, so that p*(1) = -p(1),
    the initial direction of p* is phi(p) w0, and the final is iota(p) w0."""
    segs = [(tuple(-x for x in d), a) for d, a in reversed(p.segments)]
    return LSPath(p.rs, segs)


# -- independent oracles ------------------------------------------------------

def weyl_dimension(rs: RootSystem, lam: Weight) -> int:
    """dim L(lam) by the Weyl dimension formula (exact)."""
    lam = tuple(lam)
    num = den = Fraction(1)
    lr = wadd(lam, rs.rho)
    for beta in rs.positive_roots:
        num *= rs.coroot_pairing(lr, beta)
        den *= rs.coroot_pairing(rs.rho, beta)
    val = num / den
    if val.denominator != 1:
        raise AssertionError("Weyl dimension did not come out integral")
    return int(val)


def weyl_character_value(rs: RootSystem, lam: Weight, point) -> Fraction:
    """The Weyl character formula as a ratio of alternating orbit sums,
    evaluated at e^{omega_i} -> point[i]."""
    lam = tuple(lam)
    point = [Fraction(q) for q in point]

    def alt(mu):
        total = Fraction(0)
        for w in range(rs.order):
            sgn = -1 if rs.length(w) % 2 else 1
            total += sgn * GroupAlgElt.monomial(rs, rs.act(w, mu)).evaluate(point)
        return total

    den = alt(rs.rho)
    if den == 0:
        raise ZeroDivisionError("character evaluation point is degenerate")
    return alt(wadd(lam, rs.rho)) / den
