"""The equivariant K-module of the flag variety and its ring structure.

Classes are exact coordinate vectors in the Schubert basis ``[O_w]`` over the
coefficient ring spanned by ``e^lam``.  The module action is

    X^lam [O_1] = e^lam [O_1],      T_i [O_w] = [O_{w s_i}] if longer else [O_w],

with ``[O_w] = T_{w^{-1}} [O_1]``; the top class ``[O_{w0}]`` is the ring
identity.  Products are computed by expanding one factor in the line-bundle
(Steinberg) basis ``{X^{-lambda_v}}`` — the transition matrix has unit
determinant ``+-(e^rho)^{|W|/2}`` — and letting the resulting Laurent
polynomial act on the other factor through the nil-Hecke commutation rules.

Matrix work is fraction-free Bareiss elimination over the Laurent ring with
verified exact divisions; the unit determinant guarantees the inverse lies in
the ring.  Matrix routines are guarded to ``|W| <= 50``.
"""

from __future__ import annotations

import random
from fractions import Fraction

from .nilhecke import NilHeckeElt, epsilon, _mono_through_word
from .ring import GroupAlgElt, RXElt, divexact
from .weyl import RootSystem, Weight, WeylElt, steinberg_weight, wneg, wscale

MATRIX_GUARD = 50


class OversizeError(ValueError):
    """Raised when a matrix routine is asked for a Weyl group beyond the guard."""


class KClass:
    """Exact coordinates in the Schubert basis, coefficients in Z[e^P]."""

    __slots__ = ("rs", "coeffs")

    def __init__(self, rs: RootSystem, coeffs: dict[int, GroupAlgElt] | None = None):
        self.rs = rs
        self.coeffs = {w: c for w, c in (coeffs or {}).items() if c}

    @classmethod
    def basis(cls, rs, w: WeylElt) -> "KClass":
        return cls(rs, {w.idx: GroupAlgElt.one(rs)})

    def __bool__(self):
        return bool(self.coeffs)

    def __eq__(self, other):
        return isinstance(other, KClass) and self.coeffs == other.coeffs

    def __add__(self, other):
        out = dict(self.coeffs)
        for w, c in other.coeffs.items():
            out[w] = out[w] + c if w in out else c
        return KClass(self.rs, out)

    def __sub__(self, other):
        return self + other.scale(-1)

    def scale(self, r) -> "KClass":
        if isinstance(r, int):
            r = GroupAlgElt.one(self.rs) * r
        return KClass(self.rs, {w: r * c for w, c in self.coeffs.items()})

    def coefficient(self, w: WeylElt) -> GroupAlgElt:
        return self.coeffs.get(w.idx, GroupAlgElt(self.rs))

    def evaluate(self, e_point) -> dict[int, Fraction]:
        return {w: c.evaluate(e_point) for w, c in self.coeffs.items()}

    def at_e1(self) -> dict[int, int]:
        """Specialization to ordinary K-theory: every e^mu -> 1."""
        out = {}
        for w, c in self.coeffs.items():
            v = sum(c.terms.values())
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


def bottom_class(rs: RootSystem) -> KClass:
    return KClass.basis(rs, rs.one)


def schubert_class(w: WeylElt) -> KClass:
    """[O_w] = T_{w^{-1}} [O_1], the w-th basis vector."""
    return KClass.basis(w.rs, w)


def act(h: NilHeckeElt, c: KClass) -> KClass:
    """Module action of a nil-Hecke element on a class."""
    rs = c.rs
    hs = NilHeckeElt(rs, {rs.inverse(v): RXElt.from_e(r) for v, r in c.coeffs.items()})
    out: dict[int, GroupAlgElt] = {}
    for z, g in (h * hs).terms.items():
        zi = rs.inverse(z)
        add = g.x_to_e()
        out[zi] = out[zi] + add if zi in out else add
    return KClass(rs, out)


def ideal_class(w: WeylElt) -> KClass:
    """The boundary-ideal class epsilon_{w^{-1}} [O_1] = sum_{v<=w} (-1)^{l(v)} [O_v]."""
    return act(epsilon(w.inverse()), bottom_class(w.rs))


def x_act(rs: RootSystem, lam: Weight, c: KClass) -> KClass:
    """X^lam acting on a class (nil-Hecke commutation route)."""
    lam = tuple(lam)
    out: dict[int, GroupAlgElt] = {}
    for v, r in c.coeffs.items():
        for z, f in _mono_through_word(rs, lam, rs.inverse(v)).items():
            zi = rs.inverse(z)
            add = r * GroupAlgElt(rs, f)  # X -> e on the pushed-through part
            out[zi] = out[zi] + add if zi in out else add
    return KClass(rs, out)


def line_bundle_class(rs: RootSystem, lam: Weight) -> KClass:
    """[X^lam] = X^lam [O_{w0}], in Schubert coordinates."""
    return x_act(rs, lam, schubert_class(rs.w0))


# -- fraction-free linear algebra over the Laurent ring ----------------------

def bareiss_solve(rs: RootSystem, M: list[list[GroupAlgElt]],
                  B: list[list[GroupAlgElt]]):
    """Solve M X = B exactly over the Laurent ring; return (X, det).

    Fraction-free (Bareiss) forward elimination with exact divisions by the
    previous pivot, then back substitution whose divisions are verified exact
    (the callers guarantee ring-valued solutions).  Raises ArithmeticError on
    a singular matrix or a non-ring solution.
    """
    n = len(M)
    if n > MATRIX_GUARD:
        raise OversizeError(f"matrix size {n} exceeds guard {MATRIX_GUARD}")
    m = len(B[0]) if B else 0
    aug = [[M[i][j] for j in range(n)] + [B[i][j] for j in range(m)] for i in range(n)]
    sign = 1
    prev = GroupAlgElt.one(rs)
    for k in range(n):
        piv = next((r for r in range(k, n) if aug[r][k]), None)
        if piv is None:
            raise ArithmeticError("singular matrix")
        if piv != k:
            aug[k], aug[piv] = aug[piv], aug[k]
            sign = -sign
        for i in range(k + 1, n):
            row_i, row_k = aug[i], aug[k]
            lead = row_i[k]
            for j in range(k + 1, n + m):
                num = row_k[k] * row_i[j] - lead * row_k[j]
                row_i[j] = divexact(num, prev) if prev != 1 else num
            row_i[k] = GroupAlgElt(rs)
        prev = aug[k][k]
    det = aug[n - 1][n - 1] * sign
    X = [[GroupAlgElt(rs) for _ in range(m)] for _ in range(n)]
    for col in range(m):
        for i in range(n - 1, -1, -1):
            acc = aug[i][n + col]
            for j in range(i + 1, n):
                acc = acc - aug[i][j] * X[j][col]
            X[i][col] = divexact(acc, aug[i][i])
    return X, det


def det_bareiss(rs: RootSystem, M: list[list[GroupAlgElt]]) -> GroupAlgElt:
    _, det = bareiss_solve(rs, [row[:] for row in M], [[] for _ in M])
    return det


# -- the Steinberg (line-bundle) basis ---------------------------------------

def steinberg_lambdas(rs: RootSystem, convention: str = "tables5") -> list[Weight]:
    return [steinberg_weight(WeylElt(rs, w), convention) for w in range(rs.order)]


def steinberg_matrix(rs: RootSystem, convention: str = "tables5"):
    """Transition matrix: column v holds the Schubert coordinates of
    [X^{-lambda_v}], together with its exact inverse and determinant.

    The determinant must be the unit +-(e^rho)^{|W|/2}; anything else signals
    a convention error and raises.
    """
    if rs.order > MATRIX_GUARD:
        raise OversizeError(f"|W| = {rs.order} exceeds matrix guard {MATRIX_GUARD}")
    cache = rs.cache("steinberg_matrix")
    got = cache.get(convention)
    if got is not None:
        return got
    lambdas = steinberg_lambdas(rs, convention)
    cols = [line_bundle_class(rs, wneg(lam)) for lam in lambdas]
    M = [[cols[v].coeffs.get(z, GroupAlgElt(rs)) for v in range(rs.order)]
         for z in range(rs.order)]
    ident = [[GroupAlgElt.one(rs) if i == j else GroupAlgElt(rs)
              for j in range(rs.order)] for i in range(rs.order)]
    inv, det = bareiss_solve(rs, [row[:] for row in M], ident)
    expected = wscale(rs.order // 2, rs.rho)
    unit = list(det.terms.items())
    if len(unit) != 1 or unit[0][1] not in (1, -1) or unit[0][0] != expected:
        raise ArithmeticError(
            f"Steinberg determinant {det!r} is not +-(e^rho)^{{|W|/2}}; "
            f"convention {convention!r} is broken")
    got = cache[convention] = (M, inv, det)
    return got


def schubert_in_line_bundles(w: WeylElt, convention: str = "tables5") -> dict[int, GroupAlgElt]:
    """[O_w] = sum_v n_v X^{-lambda_v}: the w-th column of the inverse
    transition matrix, as a map v -> n_v."""
    rs = w.rs
    _, inv, _ = steinberg_matrix(rs, convention)
    return {v: inv[v][w.idx] for v in range(rs.order) if inv[v][w.idx]}


def representative(w: WeylElt, convention: str = "tables5") -> RXElt:
    """A Laurent-polynomial representative f with f T_{w0} [O_1] = [O_w]."""
    rs = w.rs
    lambdas = steinberg_lambdas(rs, convention)
    out = RXElt(rs)
    for v, n_v in schubert_in_line_bundles(w, convention).items():
        out = out + RXElt.from_e(n_v) * RXElt.from_x(
            GroupAlgElt.monomial(rs, wneg(lambdas[v])))
    return out


def phi(rs: RootSystem, f: RXElt) -> KClass:
    """The surjection Phi(f) = f T_{w0} [O_1] onto the K-module."""
    return act(NilHeckeElt(rs, {0: f}) * NilHeckeElt.T(rs, rs.w0), bottom_class(rs))


def product(w: WeylElt, v: WeylElt, convention: str = "tables5") -> KClass:
    """[O_w] [O_v] in the Schubert basis (structure constants c_{wv}^z)."""
    rs = w.rs
    cache = rs.cache("k_product")
    key = (w.idx, v.idx, convention)
    got = cache.get(key)
    if got is not None:
        return got
    lambdas = steinberg_lambdas(rs, convention)
    target = schubert_class(v)
    out = KClass(rs)
    for u, n_u in schubert_in_line_bundles(w, convention).items():
        out = out + x_act(rs, wneg(lambdas[u]), target).scale(n_u)
    cache[key] = out
    return out


def product_table(rs: RootSystem, convention: str = "tables5",
                  jobs: int = 1) -> dict[tuple[int, int], KClass]:
    """All products [O_w][O_v]; embarrassingly parallel over pairs."""
    pairs = [(w, v) for w in range(rs.order) for v in range(rs.order) if w <= v]
    if jobs > 1:
        from concurrent.futures import ThreadPoolExecutor
        with ThreadPoolExecutor(max_workers=jobs) as ex:
            results = list(ex.map(
                lambda p: product(WeylElt(rs, p[0]), WeylElt(rs, p[1]), convention), pairs))
    else:
        results = [product(WeylElt(rs, a), WeylElt(rs, b), convention) for a, b in pairs]
    table = {}
    for (a, b), cls in zip(pairs, results):
        table[(a, b)] = cls
        table[(b, a)] = cls
    return table


def steinberg_decompose(rs: RootSystem, f: GroupAlgElt) -> dict[int, GroupAlgElt]:
    """Expand f in Z[X] uniquely as sum_w f_w X^{-lambda_w} with each f_w
    W-invariant (lambda_w in the "thm17" convention).

    Solved from the |W| x |W| system over Z[X] whose rows are the W-translates
    of the equation; the result is verified by invariance and reassembly.
    """
    if rs.order > MATRIX_GUARD:
        raise OversizeError(f"|W| = {rs.order} exceeds matrix guard {MATRIX_GUARD}")
    lambdas = steinberg_lambdas(rs, "thm17")
    els = [WeylElt(rs, u) for u in range(rs.order)]
    B = [[GroupAlgElt.monomial(rs, u.act(wneg(lam))) for lam in lambdas] for u in els]
    F = [[f.w_act(u)] for u in els]
    X, _ = bareiss_solve(rs, B, F)
    out = {}
    residual = f
    for w in range(rs.order):
        fw = X[w][0]
        if not fw:
            continue
        if not fw.is_w_invariant():
            raise ArithmeticError(f"component at {els[w]!r} is not W-invariant")
        out[w] = fw
        residual = residual - fw * GroupAlgElt.monomial(rs, wneg(lambdas[w]))
    if residual:
        raise ArithmeticError("reassembly residual is nonzero")
    return out


# -- eigenbasis verification (fraction-field side, numeric-exact) ------------

def _frac_mat_mul(A, B):
    n, k, m = len(A), len(B), len(B[0])
    return [[sum(A[i][t] * B[t][j] for t in range(k)) for j in range(m)] for i in range(n)]


def _frac_mat_inv(A):
    n = len(A)
    a = [row[:] + [Fraction(i == j) for j in range(n)] for i, row in enumerate(A)]
    for c in range(n):
        piv = next((r for r in range(c, n) if a[r][c] != 0), None)
        if piv is None:
            raise ZeroDivisionError("singular matrix")
        a[c], a[piv] = a[piv], a[c]
        pv = a[c][c]
        a[c] = [x / pv for x in a[c]]
        for r in range(n):
            if r != c and a[r][c] != 0:
                fct = a[r][c]
                a[r] = [x - fct * y for x, y in zip(a[r], a[c])]
    return [row[n:] for row in a]


def _x_matrix(rs: RootSystem, lam: Weight, point) -> list[list[Fraction]]:
    """Matrix of X^lam on Schubert coordinates, evaluated at the point."""
    n = rs.order
    out = [[Fraction(0)] * n for _ in range(n)]
    for v in range(n):
        cls = x_act(rs, lam, KClass.basis(rs, WeylElt(rs, v)))
        for z, c in cls.coeffs.items():
            out[z][v] = c.evaluate(point)
    return out


def _t_matrix(rs: RootSystem, i: int) -> list[list[Fraction]]:
    n = rs.order
    out = [[Fraction(0)] * n for _ in range(n)]
    for v in range(n):
        vs = rs._rmul[v][i]
        out[vs if rs.length(vs) > rs.length(v) else v][v] = Fraction(1)
    return out


def eigen_verify(rs: RootSystem, trials: int = 5, seed: int = 0) -> dict:
    """Verify the eigenbasis picture at random exact-rational points.

    Checks, per sampled point: tau_i = T_i - 1/(1 - X^{-alpha_i}) maps b_w to
    b_{w s_i}; X^lam b_w = e^{w lam} b_w; tau braid relations and
    tau_i^2 = 1/((X^{alpha_i}-1)(X^{-alpha_i}-1)); and the expansion
    [O_{w0}] = sum_w c_w b_w with c_{w0 v^{-1}} = prod_{alpha in R(v)}
    1/(1 - e^{w0 alpha}).  Near-singular points are resampled.
    """
    rng = random.Random(seed)
    n = rs.order
    report = {"system": rs.name or str(rs.cartan), "points": [],
              "eigen_ok": True, "tau_sq_ok": True, "braid_ok": True,
              "expansion_ok": True, "c_w0_is_one": True}
    done = 0
    while done < trials:
        point = tuple(Fraction(rng.randint(2, 40), rng.randint(1, 7)) for _ in range(rs.rank))
        try:
            taus = []
            for i in range(rs.rank):
                m_neg = _x_matrix(rs, wneg(rs.simple_roots[i]), point)
                one_minus = [[Fraction(r == c) - m_neg[r][c] for c in range(n)] for r in range(n)]
                resolvent = _frac_mat_inv(one_minus)
                ti = _t_matrix(rs, i)
                taus.append([[ti[r][c] - resolvent[r][c] for c in range(n)] for r in range(n)])
            # b_w = tau_{w^{-1}} b_1
            b = {0: [[Fraction(w == 0)] for w in range(n)]}
            for w in range(n):
                vec = b[0]
                for i in reversed(rs.word(rs.inverse(w))):
                    vec = _frac_mat_mul(taus[i], vec)
                b[w] = vec
            # eigen relations
            for w in range(n):
                for lam in [rs.simple_roots[i] for i in range(rs.rank)]:
                    mx = _frac_mat_mul(_x_matrix(rs, lam, point), b[w])
                    ev = GroupAlgElt.monomial(rs, rs.act(w, lam)).evaluate(point)
                    if any(mx[r][0] != ev * b[w][r][0] for r in range(n)):
                        report["eigen_ok"] = False
            # tau_i^2 identity
            for i in range(rs.rank):
                alpha = rs.simple_roots[i]
                lhs = _frac_mat_mul(taus[i], taus[i])
                a_pos = _x_matrix(rs, alpha, point)
                a_neg = _x_matrix(rs, wneg(alpha), point)
                prod_m = _frac_mat_mul(
                    [[a_pos[r][c] - Fraction(r == c) for c in range(n)] for r in range(n)],
                    [[a_neg[r][c] - Fraction(r == c) for c in range(n)] for r in range(n)])
                if lhs != _frac_mat_inv(prod_m):
                    report["tau_sq_ok"] = False
            # braid relations
            for i in range(rs.rank):
                for j in range(i + 1, rs.rank):
                    mij = rs.m[i][j]
                    left = right = [[Fraction(r == c) for c in range(n)] for r in range(n)]
                    seq_l = ([i, j] * mij)[:mij]
                    seq_r = ([j, i] * mij)[:mij]
                    for t in seq_l:
                        left = _frac_mat_mul(left, taus[t])
                    for t in seq_r:
                        right = _frac_mat_mul(right, taus[t])
                    if left != right:
                        report["braid_ok"] = False
            # [O_{w0}] = sum c_w b_w with the inversion-set product constants
            cs = {}
            for w in range(n):
                v = rs.mul(rs.inverse(w), rs.w0_index)  # w = w0 v^{-1}
                c = Fraction(1)
                for beta in _inversion_list(rs, v):
                    denom = 1 - GroupAlgElt.monomial(rs, rs.act(rs.w0_index, beta)).evaluate(point)
                    c /= denom
                cs[w] = c
            if cs[rs.w0_index] != 1:
                report["c_w0_is_one"] = False
            total = [Fraction(0)] * n
            for w in range(n):
                for r in range(n):
                    total[r] += cs[w] * b[w][r][0]
            expect = [Fraction(r == rs.w0_index) for r in range(n)]
            if total != expect:
                report["expansion_ok"] = False
        except ZeroDivisionError:
            continue  # degenerate point; resample
        report["points"].append([str(p) for p in point])
        done += 1
    report["ok"] = all(report[k] for k in
                       ("eigen_ok", "tau_sq_ok", "braid_ok", "expansion_ok", "c_w0_is_one"))
    return report


def _inversion_list(rs: RootSystem, v: int) -> list[Weight]:
    out = []
    for beta in rs.positive_roots:
        if all(c <= 0 for c in rs.root_coords(rs.act(v, beta))):
            out.append(beta)
    return out
