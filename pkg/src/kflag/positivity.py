"""Sign and positivity checking for the structure constants.

The prediction under test: every structure constant factors as
``c = (-1)^{d(w)+d(v)-d(z)} f`` where ``d(w) = l(w0) - l(w)`` and ``f`` is a
polynomial with nonnegative integer coefficients in the variables

    a_beta = e^{-beta} - 1     and     y_beta = e^{-beta},   beta a positive root.

Two checkers are provided.  :func:`sign_check` is the cheap necessary
condition: evaluate the sign-normalized constant at sample points where every
``e^{-beta} > 1`` (so all a's and y's are positive) and demand nonnegativity.
:func:`find_certificate` searches for an actual nonnegative-integer
representation by depth-first search on the "deepest" unmatched lattice
point: every candidate monomial contributes its total root-sum exponent with
coefficient +1 and everything else strictly higher, so the deepest point of
the residual pins down the root-sum of the next monomial to use.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .ring import GroupAlgElt
from .weyl import RootSystem, Weight, WeylElt

# A certificate monomial: ((kind, root index) sorted tuple) with kind "a"|"y".
Monomial = tuple


def d_value(w: WeylElt) -> int:
    return w.rs.length(w.rs.w0_index) - w.length


def root_lattice_coords(rs: RootSystem, lam: Weight) -> tuple[int, ...]:
    """Coordinates of a weight in the simple-root basis; raises if the weight
    is not in the root lattice."""
    coords = rs.root_coords(lam)
    if any(c.denominator != 1 for c in coords):
        raise ValueError(f"{lam} is not in the root lattice")
    return tuple(int(c) for c in coords)


def support_in_root_lattice(c: GroupAlgElt) -> bool:
    try:
        for k in c.terms:
            root_lattice_coords(c.rs, k)
    except ValueError:
        return False
    return True


def _sample_points(rs: RootSystem, count: int, seed: int):
    """Assignments of e^{omega_i} making every e^{-beta} > 1: set
    e^{-alpha_j} = q_j > 1 on the simple roots, which forces it on all of R+.
    Weights outside the root lattice never appear in the constants checked
    here, so rational q-powers are not needed: evaluation goes through the
    root-lattice coordinates directly.
    """
    import random
    rng = random.Random(seed)
    return [tuple(Fraction(rng.randint(3, 12), rng.randint(1, 2)) for _ in range(rs.rank))
            for _ in range(count)]


def eval_root_lattice(c: GroupAlgElt, q) -> Fraction:
    """Evaluate with e^{-alpha_j} -> q_j (entries of q), via root coordinates."""
    rs = c.rs
    total = Fraction(0)
    for k, v in c.terms.items():
        coords = root_lattice_coords(rs, k)
        m = Fraction(v)
        for qj, cj in zip(q, coords):
            m *= qj ** (-cj)
        total += m
    return total


@dataclass
class SignReport:
    w: WeylElt
    v: WeylElt
    z: WeylElt
    sign: int
    constant: GroupAlgElt
    samples_checked: int
    passed: bool
    certificate: dict[Monomial, int] | None = None
    note: str = ""


def sign_check(w: WeylElt, v: WeylElt, z: WeylElt, c: GroupAlgElt,
               samples: int = 4, seed: int = 11) -> SignReport:
    """Necessary positivity condition for c = c_{wv}^z: the sign-normalized
    value is nonnegative wherever every e^{-beta} > 1."""
    rs = w.rs
    sign = -1 if (d_value(w) + d_value(v) - d_value(z)) % 2 else 1
    if not c:
        return SignReport(w, v, z, sign, c, 0, True, note="zero constant")
    if not support_in_root_lattice(c):
        return SignReport(w, v, z, sign, c, 0, False,
                          note="support leaves the root lattice")
    ok = True
    pts = _sample_points(rs, samples, seed)
    for q in pts:
        if sign * eval_root_lattice(c, q) < 0:
            ok = False
            break
    return SignReport(w, v, z, sign, c, len(pts), ok)


# -- exact certificate search -------------------------------------------------

def expand_monomial(rs: RootSystem, mono: Monomial) -> dict[tuple[int, ...], int]:
    """Expansion of a product of a_beta / y_beta in the root lattice
    (coordinates in the simple-root basis, all nonpositive)."""
    cache = rs.cache("positivity_expand")
    got = cache.get(mono)
    if got is not None:
        return got
    out = {(0,) * rs.rank: 1}
    for kind, ridx in mono:
        beta = root_lattice_coords(rs, rs.positive_roots[ridx])
        shifted = {}
        for k, v in out.items():
            km = tuple(a - b for a, b in zip(k, beta))
            shifted[km] = shifted.get(km, 0) + v
            if kind == "a":
                shifted[k] = shifted.get(k, 0) - v
        out = {k: v for k, v in shifted.items() if v}
    cache[mono] = out
    return out


def _root_multiset_decompositions(rs: RootSystem, target: tuple[int, ...],
                                  max_parts: int, start: int = 0):
    """Multisets of positive-root indices (nondecreasing) summing to target."""
    if all(t == 0 for t in target):
        yield ()
        return
    if max_parts == 0:
        return
    roots = rs.positive_roots
    for ridx in range(start, len(roots)):
        beta = root_lattice_coords(rs, roots[ridx])
        rem = tuple(t - b for t, b in zip(target, beta))
        if any(r < 0 for r in rem):
            continue
        for rest in _root_multiset_decompositions(rs, rem, max_parts - 1, ridx):
            yield (ridx,) + rest


def _candidates_for_depth(rs: RootSystem, depth: tuple[int, ...],
                          support_bound: int) -> list[Monomial]:
    """All degree-bounded monomials whose total root-sum is -depth."""
    cache = rs.cache("positivity_cands")
    key = (depth, support_bound)
    got = cache.get(key)
    if got is not None:
        return got
    target = tuple(-d for d in depth)
    monos = []
    for dec in _root_multiset_decompositions(rs, target, support_bound):
        for mask in range(1 << len(dec)):
            mono = tuple(sorted(("a" if (mask >> t) & 1 else "y", r)
                                for t, r in enumerate(dec)))
            monos.append(mono)
    got = cache[key] = sorted(set(monos))
    return got


def _deepest(rs: RootSystem, residual: dict[tuple[int, ...], int]):
    return min(residual, key=lambda k: (sum(k), k))


def find_certificate(c: GroupAlgElt, sign: int, support_bound: int = 6,
                     node_budget: int = 500_000) -> dict[Monomial, int] | None:
    """Search for nonnegative integers n_m with sum n_m * m = sign * c, over
    monomials m in the a/y variables of total degree <= support_bound.

    Returns the certificate as {monomial: multiplicity}, or None when no
    representation exists within the bound (a report, not a failure).  Found
    certificates are re-substituted exactly before being returned.

    Search: depth-first on the deepest unmatched lattice point, with two
    cuts.  All a/y variables are positive wherever every e^{-beta} > 1, so a
    residual that evaluates negative at such a point can never be completed
    and is pruned.  Candidates are tried best-coverage-first (how much of the
    candidate's expansion is actually present in the residual), which finds
    the typical all-a products immediately.
    """
    import sys
    rs = c.rs
    target: dict[tuple[int, ...], int] = {}
    for k, v in (c * sign).terms.items():
        target[root_lattice_coords(rs, k)] = v
    target = {k: v for k, v in target.items() if v}
    points = [tuple(Fraction(3, 2) for _ in range(rs.rank)),
              tuple(Fraction(5 + j) for j in range(rs.rank))]

    def value_at(terms: dict, q) -> Fraction:
        total = Fraction(0)
        for k, v in terms.items():
            m = Fraction(v)
            for qj, cj in zip(q, k):
                m *= qj ** (-cj)
            total += m
        return total

    mono_values: dict[Monomial, tuple] = {}

    def coverage(exp: dict, residual: dict) -> int:
        return sum(1 for k, v in exp.items() if residual.get(k, 0) * v > 0)

    failed: set = set()
    budget = [node_budget]
    limit = sys.getrecursionlimit()
    sys.setrecursionlimit(max(limit, 20000))

    def dfs(residual: dict, values: tuple, acc: list) -> bool:
        if not residual:
            return True
        if budget[0] <= 0:
            return False
        budget[0] -= 1
        if any(v < 0 for v in values):
            return False
        key = frozenset(residual.items())
        if key in failed:
            return False
        deep = _deepest(rs, residual)
        if residual[deep] < 0 or any(x > 0 for x in deep):
            failed.add(key)
            return False
        cands = _candidates_for_depth(rs, deep, support_bound)
        scored = []
        for mono in cands:
            exp = expand_monomial(rs, mono)
            scored.append((-coverage(exp, residual), mono, exp))
        scored.sort(key=lambda t: (t[0], t[1]))
        for _, mono, exp in scored:
            mv = mono_values.get(mono)
            if mv is None:
                mv = mono_values[mono] = tuple(value_at(exp, q) for q in points)
            nvalues = tuple(v - m for v, m in zip(values, mv))
            if any(v < 0 for v in nvalues):
                continue
            nxt = dict(residual)
            for k, v in exp.items():
                nxt[k] = nxt.get(k, 0) - v
                if not nxt[k]:
                    del nxt[k]
            acc.append(mono)
            if dfs(nxt, nvalues, acc):
                return True
            acc.pop()
        failed.add(key)
        return False

    acc: list = []
    found = dfs(target, tuple(value_at(target, q) for q in points), acc)
    sys.setrecursionlimit(limit)
    if not found:
        return None
    cert: dict[Monomial, int] = {}
    for m in acc:
        cert[m] = cert.get(m, 0) + 1
    verify_certificate(rs, cert, c, sign)
    return cert


def verify_certificate(rs: RootSystem, cert: dict[Monomial, int],
                       c: GroupAlgElt, sign: int) -> None:
    """Exact re-substitution check: sum n_m m == sign * c, n_m >= 0."""
    total: dict[tuple[int, ...], int] = {}
    for mono, n in cert.items():
        if n < 0:
            raise AssertionError("certificate multiplicities must be nonnegative")
        for k, v in expand_monomial(rs, mono).items():
            total[k] = total.get(k, 0) + n * v
    want = {root_lattice_coords(rs, k): v for k, v in (c * sign).terms.items()}
    want = {k: v for k, v in want.items() if v}
    if {k: v for k, v in total.items() if v} != want:
        raise AssertionError("certificate does not re-substitute to the constant")


def certificate_string(rs: RootSystem, cert: dict[Monomial, int]) -> str:
    if not cert:
        return "0"
    bits = []
    for mono, n in sorted(cert.items()):
        factors = []
        for kind, ridx in mono:
            coords = root_lattice_coords(rs, rs.positive_roots[ridx])
            sub = "".join(str(x) for x in coords)
            factors.append(f"{kind}[{sub}]")
        term = "*".join(factors) or "1"
        bits.append(term if n == 1 else f"{n}*{term}")
    return " + ".join(bits)


def check_product_positivity(w: WeylElt, v: WeylElt, product_class,
                             support_bound: int = 6) -> list[SignReport]:
    """Run sign_check and the certificate search on every nonzero structure
    constant of one product."""
    rs = w.rs
    out = []
    for z_idx, c in product_class.coeffs.items():
        z = WeylElt(rs, z_idx)
        rep = sign_check(w, v, z, c)
        if rep.passed and c:
            rep.certificate = find_certificate(c, rep.sign, support_bound)
            if rep.certificate is None:
                rep.passed = False
                rep.note = f"no certificate within degree {support_bound}"
        out.append(rep)
    return out
