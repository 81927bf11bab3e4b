"""Pieri-Chevalley engines driven by the path model.

The two expansions computed here,

    X^lam T_{w^{-1}}       -> sum over paths p with iota(p) <= w W_lam of
                              T_{final-rep(p)^{-1}} X^{p(1)},
    X^lam eps_{w^{-1}}     -> sum over paths with iota(p) = w W_lam and cosets
                              z <= phi(p), with alternating signs,

must coincide term-for-term with the nil-Hecke normal forms of the same
products; that cross-validation is the central test of the whole package.
Chain representatives are chosen left-to-right: starting from the bound w,
each direction coset contributes its maximal representative below the
previous one; a path whose chain breaks contributes nothing.

Negative and w0-twisted expansions are obtained through the algebra
involution T_w -> eps_w, X^lam -> X^{-lam}, which on the path side is the
dual-path bijection p -> p* into the model of shape -w0(lam).  Grouping
expansions by their T-part and applying X^mu -> e^mu yields the
line-bundle-times-Schubert coefficients, the codimension-one classes, and
the Monk-type rule.
"""

from __future__ import annotations

from .nilhecke import NilHeckeElt, epsilon
from .paths import Crystal, generate_crystal, ls_chain
from .ring import GroupAlgElt, RXElt
from .schubert import KClass, act, bottom_class, line_bundle_class, schubert_class, x_act
from .weyl import ParabolicCoset, RootSystem, Weight, WeylElt, coset_of, wneg

Expansion = dict[tuple[int, Weight], int]  # (z index, mu) -> integer coefficient


def _require_dominant(rs: RootSystem, lam: Weight) -> Weight:
    lam = tuple(lam)
    if any(c < 0 for c in lam):
        raise ValueError(f"{lam} is not dominant")
    return lam


def _chain_reps(rs: RootSystem, chain: list[ParabolicCoset], bound: WeylElt):
    """Maximal representatives bound >= w~_1 >= ... >= w~_r, or None if some
    step has no representative below the previous one."""
    reps = []
    cur = bound
    for coset in chain:
        cur = coset.max_rep_below(cur)
        if cur is None:
            return None
        reps.append(cur)
    return reps


def expand_XT(rs: RootSystem, lam: Weight, w: WeylElt) -> Expansion:
    """Path-model expansion of X^lam T_{w^{-1}} in the basis T_{z^{-1}} X^mu."""
    lam = _require_dominant(rs, lam)
    crystal = generate_crystal(rs, lam)
    wcoset = coset_of(rs, lam, w)
    out: Expansion = {}
    for p in crystal:
        chain = ls_chain(p, lam)
        if not chain[0] <= wcoset:
            continue
        reps = _chain_reps(rs, chain, w)
        if reps is None:
            continue
        key = (reps[-1].idx, p.endpoint())
        out[key] = out.get(key, 0) + 1
    return {k: c for k, c in out.items() if c}


def _xeps_T_basis(rs: RootSystem, lam: Weight, w: WeylElt) -> Expansion:
    """X^lam eps_{w^{-1}} written in the basis T_{y^{-1}} X^mu.

    For w minimal in its coset the inner z-sum of the signed path expansion
    runs over all representatives below the final chain element, so it
    collapses to (-1)^{l(w)} T_{w~_r(p)^{-1}}.  A general w factors as w' u
    with w' coset-minimal and u in the stabilizer; X^lam commutes with the
    stabilizer's eps-letters (their geometric quotients vanish), leaving a
    0-Hecke fold of eps_{u^{-1}} against the minimal-case expansion.
    """
    lam = _require_dominant(rs, lam)
    crystal = generate_crystal(rs, lam)
    wcoset = coset_of(rs, lam, w)
    wmin = wcoset.min_rep
    u_inv = (wmin.inverse() * w).inverse()  # eps_{w^{-1}} = eps_{u^{-1}} eps_{w'^{-1}}
    if wmin.length + u_inv.length != w.length:
        raise AssertionError("coset factorization must be length-additive")
    sign_min = -1 if wmin.length % 2 else 1
    base: Expansion = {}
    for p in crystal:
        chain = ls_chain(p, lam)
        if chain[0] != wcoset:
            continue
        reps = _chain_reps(rs, chain, wmin)
        if reps is None:
            continue
        key = (reps[-1].idx, p.endpoint())
        base[key] = base.get(key, 0) + sign_min
    if u_inv.idx == 0:
        return {k: c for k, c in base.items() if c}
    from .nilhecke import _star
    out: Expansion = {}
    for v in range(rs.order):
        if not rs.bruhat_leq(v, u_inv.idx):
            continue
        sgn = -1 if rs.length(v) % 2 else 1
        for (t, mu), c in base.items():
            y = rs.inverse(_star(rs, v, rs.inverse(t)))  # T_v T_{t^{-1}} = T_{y^{-1}}
            key = (y, mu)
            out[key] = out.get(key, 0) + sgn * c
    return {k: c for k, c in out.items() if c}


def _fan_to_lower(rs: RootSystem, base: Expansion, negate_mu: bool) -> Expansion:
    """Replace each T/eps head by its alternating lower-interval expansion:
    both basis changes T <-> eps use sum over z <= y of (-1)^{l(z)}."""
    out: Expansion = {}
    for (y, mu), c in base.items():
        key_mu = wneg(mu) if negate_mu else mu
        for z in range(rs.order):
            if rs.bruhat_leq(z, y):
                sgn = -1 if rs.length(z) % 2 else 1
                key = (z, key_mu)
                out[key] = out.get(key, 0) + sgn * c
    return {k: c for k, c in out.items() if c}


def expand_Xeps(rs: RootSystem, lam: Weight, w: WeylElt) -> Expansion:
    """Path-model expansion of X^lam eps_{w^{-1}} in the signed basis
    eps_{z^{-1}} X^mu."""
    return _fan_to_lower(rs, _xeps_T_basis(rs, lam, w), negate_mu=False)


def expand_negative(rs: RootSystem, lam: Weight, w: WeylElt) -> Expansion:
    """Path-model expansion of X^{-lam} T_{w^{-1}} (lam dominant) in the
    basis T_{z^{-1}} X^mu.

    Computed by applying the involution T -> eps, X -> X^{-1} to the signed
    expansion of X^lam eps_{w^{-1}}; under the dual-path bijection p -> p*
    this is the sum over paths of shape -w0(lam) with final direction w w0.
    """
    return _fan_to_lower(rs, _xeps_T_basis(rs, lam, w), negate_mu=True)


def expand_w0_dominant(rs: RootSystem, mu: Weight, w: WeylElt) -> Expansion:
    """Expansion of X^{w0 mu} T_{w^{-1}} for dominant mu (the second twisted
    identity; it is the negative expansion of -w0(mu))."""
    mu = _require_dominant(rs, mu)
    lam = wneg(rs.w0.act(mu))
    return expand_negative(rs, lam, w)


def expansion_to_nilhecke(rs: RootSystem, exp: Expansion, basis: str = "T") -> NilHeckeElt:
    """Materialize an expansion as a nil-Hecke element (basis "T" or "eps")."""
    out = NilHeckeElt.zero(rs)
    for (z, mu), c in exp.items():
        head = (NilHeckeElt.T(rs, WeylElt(rs, rs.inverse(z))) if basis == "T"
                else epsilon(WeylElt(rs, rs.inverse(z))))
        out = out + head * RXElt.from_x(GroupAlgElt.monomial(rs, mu, c))
    return out


# -- coefficients of [X^lam][O_w] --------------------------------------------

def _group_to_class(rs: RootSystem, exp: Expansion) -> KClass:
    """Apply both sides to [O_1]: T_{z^{-1}} X^mu [O_1] = e^mu [O_z]."""
    out: dict[int, GroupAlgElt] = {}
    for (z, mu), c in exp.items():
        add = GroupAlgElt.monomial(rs, mu, c)
        out[z] = out[z] + add if z in out else add
    return KClass(rs, out)


def pieri_coeffs(rs: RootSystem, lam: Weight, w: WeylElt) -> dict[int, GroupAlgElt]:
    """The coefficients c^z in [X^lam][O_w] = sum_z c^z [O_z], computed from
    the path model.  Supported chambers: lam dominant (direct sum over paths
    with w W_lam >= iota(p), grouped by final representative), anti-dominant,
    and w0-dominant (via the sign-twisted dualities)."""
    lam = tuple(lam)
    if all(c >= 0 for c in lam):
        exp = expand_XT(rs, lam, w)
    elif all(c <= 0 for c in lam):
        exp = expand_negative(rs, wneg(lam), w)
    else:
        mu = rs.w0.act(lam)
        if any(c < 0 for c in mu):
            raise ValueError(f"{lam} is not dominant, anti-dominant or w0-dominant")
        exp = expand_w0_dominant(rs, mu, w)
    cls = _group_to_class(rs, exp)
    return dict(cls.coeffs)


def pieri_coeff_dual_w0(rs: RootSystem, lam: Weight, w: WeylElt, z: WeylElt) -> GroupAlgElt:
    """The right side of c_{w0 lam, w}^z = (-1)^{l(w)+l(z)} c_{lam, z w0}^{w w0}
    (lam dominant), with the inner coefficient taken from the path model."""
    lam = _require_dominant(rs, lam)
    inner = pieri_coeffs(rs, lam, z * rs.w0)
    c = inner.get(rs.mul(w.idx, rs.w0_index), GroupAlgElt(rs))
    return c * (-1 if (w.length + z.length) % 2 else 1)


def pieri_coeff_dual_neg(rs: RootSystem, lam: Weight, w: WeylElt, z: WeylElt) -> GroupAlgElt:
    """The right side of c_{-lam, w}^z = (-1)^{l(w)+l(z)} c_{-w0 lam, z w0}^{w w0}
    (lam dominant; -w0(lam) is again dominant)."""
    lam = _require_dominant(rs, lam)
    mu = wneg(rs.w0.act(lam))
    inner = pieri_coeffs(rs, mu, z * rs.w0)
    c = inner.get(rs.mul(w.idx, rs.w0_index), GroupAlgElt(rs))
    return c * (-1 if (w.length + z.length) % 2 else 1)


def x_act_paths(rs: RootSystem, mu: Weight, c: KClass) -> KClass:
    """X^mu acting on a class through the path model only: mu is split as a
    difference of dominant weights and each factor acts by its path
    expansion."""
    mu = tuple(mu)
    pos = tuple(max(x, 0) for x in mu)
    neg = tuple(max(-x, 0) for x in mu)
    out = c
    if any(neg):
        out = _apply_expansion_map(rs, lambda v: expand_negative(rs, neg, v), out)
    if any(pos):
        out = _apply_expansion_map(rs, lambda v: expand_XT(rs, pos, v), out)
    return out


def _apply_expansion_map(rs, expander, c: KClass) -> KClass:
    out = KClass(rs)
    for v, r in c.coeffs.items():
        cls = _group_to_class(rs, expander(WeylElt(rs, v)))
        out = out + cls.scale(r)
    return out


def product_paths(w: WeylElt, v: WeylElt, convention: str = "tables5") -> KClass:
    """[O_w][O_v] computed with path-model commutation only (the dual-method
    route used to confirm suspected table errata)."""
    from .schubert import schubert_in_line_bundles, steinberg_lambdas
    rs = w.rs
    lambdas = steinberg_lambdas(rs, convention)
    target = schubert_class(v)
    out = KClass(rs)
    for u, n_u in schubert_in_line_bundles(w, convention).items():
        out = out + x_act_paths(rs, wneg(lambdas[u]), target).scale(n_u)
    return out


# -- codimension one ----------------------------------------------------------

def codim_one_class(rs: RootSystem, i: int) -> KClass:
    """[O_{w0 s_i}] = 1 - e^{w0 omega_i} [X^{-omega_i}] (an exact identity in
    the Schubert basis)."""
    omega = tuple(1 if j == i else 0 for j in range(rs.rank))
    shift = GroupAlgElt.monomial(rs, rs.w0.act(omega))
    return schubert_class(rs.w0) - line_bundle_class(rs, wneg(omega)).scale(shift)


def monk_coeffs(rs: RootSystem, i: int, w: WeylElt) -> dict[int, GroupAlgElt]:
    """Coefficients c^z in [O_{w0 s_i}][O_w], by the codimension-one rule:
    the diagonal term is -(e^{-(w omega_i - w0 omega_i)} - 1) and the rest is
    a sign-twisted path sum in the model of shape -w0(omega_i)."""
    omega = tuple(1 if j == i else 0 for j in range(rs.rank))
    shift = GroupAlgElt.monomial(rs, rs.w0.act(omega))
    neg = pieri_coeffs(rs, wneg(omega), w)
    out = {w.idx: GroupAlgElt.one(rs)}
    for z, c in neg.items():
        add = -(shift * c)
        out[z] = out[z] + add if z in out else add
    return {z: c for z, c in out.items() if c}


def monk_diagonal(rs: RootSystem, i: int, w: WeylElt) -> GroupAlgElt:
    """The closed-form diagonal coefficient -(e^{-(w omega_i - w0 omega_i)} - 1)."""
    omega = tuple(1 if j == i else 0 for j in range(rs.rank))
    ex = wneg(tuple(a - b for a, b in zip(w.act(omega), rs.w0.act(omega))))
    return -(GroupAlgElt.monomial(rs, ex) - GroupAlgElt.one(rs))
