"""Numeric face weights, 2x2 fusion, Yang-Baxter residuals and the fused
Temperley-Lieb operator algebra.

Everything here is double precision with explicit tolerances; the identities
being checked are exact in exact arithmetic, so double precision leaves ample
headroom at these sizes.  The building block is

    s(u) = theta1(u, t) / theta1(lambda, t)

which degenerates to sin(u)/sin(lambda) at the critical point t = 0.

Face weights use the corner order W(a, b, c, d | u) = (bottom-left,
bottom-right, top-right, top-left); the weight vanishes unless consecutive
corners are adjacent at the set's fusion level.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Iterable

import numpy as np

from .model import ModelSpec, adjacent, neighbors


# ---------------------------------------------------------------------------
# Elliptic building blocks
# ---------------------------------------------------------------------------

def theta1(u: float, t: float, tol: float = 1e-15) -> float:
    """theta_1(u, t) = 2 t^{1/4} sin u  prod_n (1 - 2 t^{2n} cos 2u + t^{4n})(1 - t^{2n}).

    The product is truncated once t^{2n} < tol.  Requires 0 <= t < 1.
    """
    if not 0 <= t < 1:
        raise ValueError("nome t must satisfy 0 <= t < 1")
    if t == 0:
        return 0.0  # the t^{1/4} prefactor kills it; only ratios survive at t=0
    val = 2.0 * t ** 0.25 * math.sin(u)
    n = 1
    while True:
        t2n = t ** (2 * n)
        if t2n < tol:
            break
        val *= (1.0 - 2.0 * t2n * math.cos(2 * u) + t2n * t2n) * (1.0 - t2n)
        n += 1
    return val


def euler_e(w: complex, p: float, tol: float = 1e-15) -> complex:
    """E(w, p) = prod_{n>=1} (1 - p^{n-1} w)(1 - p^n / w)(1 - p^n)."""
    if not 0 <= p < 1:
        raise ValueError("nome p must satisfy 0 <= p < 1")
    val = 1.0 + 0j
    n = 1
    while True:
        pn = p ** n
        val *= (1.0 - p ** (n - 1) * w) * (1.0 - pn / w) * (1.0 - pn)
        if pn < tol:
            break
        n += 1
    return val


def make_s(lam: float, t: float) -> Callable[[float], float]:
    """The ratio s(u) = theta1(u, t)/theta1(lambda, t); sin(u)/sin(lambda) at t = 0."""
    if t == 0:
        sl = math.sin(lam)
        return lambda u: math.sin(u) / sl
    denom = theta1(lam, t)
    return lambda u: theta1(u, t) / denom


# ---------------------------------------------------------------------------
# Face weight sets
# ---------------------------------------------------------------------------

@dataclass
class FaceWeightSet:
    """Numeric face weights for one model at one nome.

    ``evaluator(a, b, c, d, u)`` returns W(a, b, c, d | u) for an admissible
    corner assignment and raises ValueError otherwise.
    """

    spec: ModelSpec
    t: float
    fusion: int
    evaluator: Callable[[int, int, int, int, float], float] = field(repr=False)
    gauge: dict[int, float] | None = None

    def weight(self, a: int, b: int, c: int, d: int, u: float) -> float:
        return self.evaluator(a, b, c, d, u)

    def admissible(self, a: int, b: int, c: int, d: int) -> bool:
        sp = self.spec
        return (adjacent(sp, a, b) and adjacent(sp, b, c)
                and adjacent(sp, c, d) and adjacent(sp, d, a))

    def corners(self) -> Iterable[tuple[int, int, int, int]]:
        sp = self.spec
        nbr = neighbors(sp)
        for a in sp.heights:
            for b in nbr[a]:
                for c in nbr[b]:
                    for d in nbr[c]:
                        if a in nbr[d]:
                            yield (a, b, c, d)


def weights_1x1(spec: ModelSpec, t: float = 0.0,
                gauge: dict[int, float] | None = None) -> FaceWeightSet:
    """Elementary face weights; ``gauge`` supplies the per-height factors g_a."""
    lam = spec.lambda_value()
    s = make_s(lam, t)
    g = gauge or {}

    def ga(a: int) -> float:
        return g.get(a, 1.0)

    sp1 = ModelSpec(spec.m, spec.m_prime, 1)

    def w(a: int, b: int, c: int, d: int, u: float) -> float:
        if not (adjacent(sp1, a, b) and adjacent(sp1, b, c)
                and adjacent(sp1, c, d) and adjacent(sp1, d, a)):
            raise ValueError(f"corners ({a},{b},{c},{d}) not admissible at fusion 1")
        if a == c:
            if b == d:
                # (A, B, A, B): straight crossing through height B
                return s(b * lam + (u if a == b + 1 else -u)) / s(b * lam)
            return s(lam - u)
        # a != c forces b == d (the midpoint)
        return -(ga(c) / ga(a)) * (s(c * lam) / s(b * lam)) * s(u)

    return FaceWeightSet(sp1, t, 1, w, gauge)


def weights_2x2_closed(spec: ModelSpec, t: float = 0.0,
                       sign_tol: float = 1e-9) -> FaceWeightSet:
    """The 19 normalised fused weights in closed form.

    The all-equal-corners weight has two equivalent sign expressions; both
    are evaluated, their agreement asserted to ``sign_tol``, and the average
    returned.
    """
    lam = spec.lambda_value()
    s = make_s(lam, t)
    sp2 = ModelSpec(spec.m, spec.m_prime, 2)

    def w(a: int, b: int, c: int, d: int, u: float) -> float:
        if not (adjacent(sp2, a, b) and adjacent(sp2, b, c)
                and adjacent(sp2, c, d) and adjacent(sp2, d, a)):
            raise ValueError(f"corners ({a},{b},{c},{d}) not admissible at fusion 2")
        db, dc, dd = b - a, c - a, d - a
        if dc == 0:
            if db == 0 and dd == 0:
                up = (s(a * lam + u) * s((a + 1) * lam - u)
                      / (s(a * lam) * s((a + 1) * lam))
                      + s((a + 1) * lam) * s((a - 2) * lam) * s(u) * s(u - lam)
                      / (s(2 * lam) * s(a * lam) * s((a - 1) * lam)))
                dn = (s(a * lam - u) * s((a - 1) * lam + u)
                      / (s(a * lam) * s((a - 1) * lam))
                      + s((a - 1) * lam) * s((a + 2) * lam) * s(u) * s(u - lam)
                      / (s(2 * lam) * s(a * lam) * s((a + 1) * lam)))
                if abs(up - dn) > sign_tol * max(1.0, abs(up), abs(dn)):
                    raise ValueError(
                        f"sign choices disagree at a={a}, u={u}: {up} vs {dn}")
                return 0.5 * (up + dn)
            if db != 0 and dd != 0:
                if db == dd:
                    # (A, B, A, B) with A = a, B = a -+ 2: straight crossing
                    B = b
                    sg = 1 if a > B else -1
                    return (s(B * lam + sg * u) * s((B + sg) * lam + sg * u)
                            / (s(B * lam) * s((B + sg) * lam)))
                # opposite wings: (a, a-+2, a, a+-2)
                return s(lam - u) * s(2 * lam - u) / s(2 * lam)
            # exactly one wing displaced: (a, a+-2, a, a) or (a, a, a, a+-2)
            x = b if db != 0 else d
            sg = 1 if x > a else -1
            return (s(lam - u) * s((a + sg) * lam - sg * u) / s((a + sg) * lam))
        if abs(dc) == 4:
            # straight diagonal (B+-2, B, B-+2, B), centred at B = b = d
            B = b
            sg = 1 if a > B else -1
            return (s((B - 2 * sg) * lam) * s((B - sg) * lam) * s(u) * s(lam + u)
                    / (s(2 * lam) * s(B * lam) * s((B + sg) * lam)))
        # |dc| == 2
        if db == 0 and dd == 0:
            # (B, B, C, B): lone displaced top corner
            sg = 1 if c > a else -1
            return -(s(2 * lam) * s((a + 2 * sg) * lam) * s(u)
                     * s(a * lam + sg * u)
                     / (s((a - 1) * lam) * s((a + 1) * lam)))
        if db == dc and dd == dc:
            # (A, B, B, B) with A = a: lone displaced bottom-left corner
            B = b
            sg = 1 if a > B else -1
            return -(s((B - sg) * lam) * s(u) * s(B * lam + sg * u)
                     / (s(2 * lam) * s(B * lam) * s((B + sg) * lam)))
        # adjacent equal pair: (B, C, C, B) or (B, B, C, C) with C = B +- 2
        sg = 1 if dc > 0 else -1
        return (s((a + 3 * sg) * lam) * s(u) * s(u - lam)
                / (s(2 * lam) * s((a + sg) * lam)))

    return FaceWeightSet(sp2, t, 2, w)


def fuse_2x2(w1: FaceWeightSet, tol: float = 1e-9) -> FaceWeightSet:
    """Assemble fused weights from 2x2 blocks of elementary weights.

    Spectral arguments run (u - lambda, u, u, u + lambda) over the block; the
    internal sites are summed, the common factor eta(u) = s(2l)s(u)s(u-l) is
    divided out, and independence of the two crossed boundary sites is
    verified to ``tol`` on every call (a failure signals a broken
    push-through property).
    """
    spec = w1.spec
    lam = spec.lambda_value()
    s = make_s(lam, w1.t)
    sp1 = ModelSpec(spec.m, spec.m_prime, 1)
    sp2 = ModelSpec(spec.m, spec.m_prime, 2)
    nbr1 = neighbors(sp1)

    def block(a, b, c, d, x1, x2, u):
        total = 0.0
        for p in nbr1[a]:
            if not adjacent(sp1, p, b):
                continue
            for q in nbr1[a]:
                if not adjacent(sp1, q, d):
                    continue
                for r in nbr1[p]:
                    if not (adjacent(sp1, r, q) and adjacent(sp1, r, x1)
                            and adjacent(sp1, r, x2)):
                        continue
                    total += (w1.weight(a, p, r, q, u - lam)
                              * w1.weight(p, b, x1, r, u)
                              * w1.weight(q, r, x2, d, u)
                              * w1.weight(r, x1, c, x2, u + lam))
        return total

    def w(a: int, b: int, c: int, d: int, u: float) -> float:
        if not (adjacent(sp2, a, b) and adjacent(sp2, b, c)
                and adjacent(sp2, c, d) and adjacent(sp2, d, a)):
            raise ValueError(f"corners ({a},{b},{c},{d}) not admissible at fusion 2")
        eta = s(2 * lam) * s(u) * s(u - lam)
        if abs(eta) < 1e-12:
            raise ValueError("u too close to a zero of eta^{2,2}(u)")
        x1s = [x for x in nbr1[b] if adjacent(sp1, x, c)]
        x2s = [x for x in nbr1[d] if adjacent(sp1, x, c)]
        vals = [block(a, b, c, d, x1, x2, u) / eta for x1 in x1s for x2 in x2s]
        lo, hi = min(vals), max(vals)
        if hi - lo > tol * max(1.0, abs(hi), abs(lo)):
            raise ValueError(
                f"fused weight depends on crossed heights at ({a},{b},{c},{d}): {vals}")
        return sum(vals) / len(vals)

    return FaceWeightSet(sp2, w1.t, 2, w, w1.gauge)


def ybe_residual(w: FaceWeightSet, u: float, v: float) -> float:
    """Max |LHS - RHS| of the face-form Yang-Baxter equation over all externals.

    With the face transfer convention X_j(u)[in -> out] =
    W(a_j, a_{j+1}, a_j', a_{j-1} | u), the two orderings compared are
    X1(u) X2(u+v) X1(v) and X2(v) X1(u+v) X2(u) on a four-site strip.
    """
    sp = ModelSpec(w.spec.m, w.spec.m_prime, w.fusion)
    nbr = neighbors(sp)
    corners = list(w.corners())
    wu = {q: w.weight(*q, u) for q in corners}
    wv = {q: w.weight(*q, v) for q in corners}
    wuv = {q: w.weight(*q, u + v) for q in corners}
    worst = 0.0
    for a0 in sp.heights:
        for a1 in nbr[a0]:
            for a2 in nbr[a1]:
                for a3 in nbr[a2]:
                    for b1 in nbr[a0]:
                        for b2 in (x for x in nbr[b1] if a3 in nbr[x]):
                            lhs = 0.0
                            for g in (x for x in nbr[a0]
                                      if a2 in nbr[x] and b2 in nbr[x]):
                                lhs += (wv[(a1, a2, g, a0)]
                                        * wuv[(a2, a3, b2, g)]
                                        * wu[(g, b2, b1, a0)])
                            rhs = 0.0
                            for g in (x for x in nbr[a1]
                                      if a3 in nbr[x] and b1 in nbr[x]):
                                rhs += (wu[(a2, a3, g, a1)]
                                        * wuv[(a1, g, b1, a0)]
                                        * wv[(g, a3, b2, b1)])
                            worst = max(worst, abs(lhs - rhs))
    return worst


# ---------------------------------------------------------------------------
# Fused <-> unfused comparison for m' = 2m + 1 models
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class GaugeEquivalenceReport:
    spec: ModelSpec
    equivalent: bool
    detail: str
    max_residual: float


def fusion_gauge_equivalence(spec: ModelSpec, t: float = 0.0,
                             u_samples: Iterable[float] = (0.31, 0.57, 0.83),
                             tol: float = 1e-8) -> GaugeEquivalenceReport:
    """Can a diagonal gauge plus a scalar map the fused weights onto the 1x1 ones?

    Both models are folded onto height classes {a, m'-a}; the fused odd
    sector is compared entry-by-entry with the folded elementary weights.
    Structural mismatch (a corner pattern allowed in one model only) or a
    ratio that no gauge can flatten means "not equivalent".

    The fit is linear in log-space: log|ratio| must be c(u) + f_c - f_a for
    per-class constants f (the per-height gauge enters a face weight through
    the top-right/bottom-left corners only).  Residuals above ``tol`` reject.
    """
    if spec.m_prime != 2 * spec.m + 1:
        raise ValueError("fused/unfused comparison implemented for m' = 2m+1")
    mp = spec.m_prime
    cls = {a: min(a, mp - a) for a in range(1, mp)}  # fold label: 1..m
    w1 = weights_1x1(spec, t)
    w2 = weights_2x2_closed(spec, t)
    sp1 = ModelSpec(spec.m, spec.m_prime, 1)
    sp2 = ModelSpec(spec.m, spec.m_prime, 2)

    # folded corner patterns of each model, as class 4-tuples
    pats1: dict[tuple, tuple] = {}
    for (a, b, c, d) in w1.corners():
        pats1.setdefault((cls[a], cls[b], cls[c], cls[d]), (a, b, c, d))
    pats2: dict[tuple, tuple] = {}
    for (a, b, c, d) in w2.corners():
        if a % 2 == 1:  # odd sector
            pats2.setdefault((cls[a], cls[b], cls[c], cls[d]), (a, b, c, d))

    if set(pats1) != set(pats2):
        return GaugeEquivalenceReport(
            spec, False,
            "adjacency structures differ after folding", float("inf"))

    # folding consistency: the 1x1 weight must not depend on the representative
    for pat, rep in pats1.items():
        reps = [q for q in w1.corners()
                if (cls[q[0]], cls[q[1]], cls[q[2]], cls[q[3]]) == pat]
        for u in u_samples:
            vals = [w1.weight(*q, u) for q in reps]
            if max(vals) - min(vals) > 1e-9 * max(1.0, *map(abs, vals)):
                return GaugeEquivalenceReport(
                    spec, False, f"folding inconsistent on {pat}", float("inf"))

    # joint fit: log|v2/v1|(u, pat) = c_u + f_c - f_a with the per-class
    # constants f shared across all spectral samples
    pats = sorted(pats1)
    classes = sorted({x for pat in pats for x in pat})
    u_list = list(u_samples)
    ncols = len(u_list) + len(classes)
    rows, rhs = [], []
    for ui, u in enumerate(u_list):
        for pat in pats:
            v1 = w1.weight(*pats1[pat], u)
            v2 = w2.weight(*pats2[pat], u)
            if abs(v1) < 1e-13 and abs(v2) < 1e-13:
                continue
            if abs(v1) < 1e-13 or abs(v2) < 1e-13 or (v1 < 0) != (v2 < 0):
                return GaugeEquivalenceReport(
                    spec, False, f"sign/zero mismatch on {pat} at u={u}",
                    float("inf"))
            row = [0.0] * ncols
            row[ui] = 1.0
            pa, _, pc, _ = pat
            row[len(u_list) + classes.index(pc)] += 1.0
            row[len(u_list) + classes.index(pa)] -= 1.0
            rows.append(row)
            rhs.append(math.log(abs(v2 / v1)))
    A = np.array(rows)
    y = np.array(rhs)
    sol, *_ = np.linalg.lstsq(A, y, rcond=None)
    resid = float(np.max(np.abs(A @ sol - y)))
    ok = resid < tol
    detail = "diagonal gauge found" if ok else "no diagonal gauge flattens the ratios"
    return GaugeEquivalenceReport(spec, ok, detail, resid)


# ---------------------------------------------------------------------------
# Fused Temperley-Lieb operator representation
# ---------------------------------------------------------------------------

@dataclass
class OperatorRep:
    """Matrices of I, E_j, Xi_j on the fused path basis with a_0 fixed.

    Matrix convention: column vectors, M[out, in]; products compose left to
    right as operator products.
    """

    spec: ModelSpec
    L: int
    a0: int
    basis: list[tuple[int, ...]]
    E: dict[int, np.ndarray]
    Xi: dict[int, np.ndarray]
    lam: float

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def beta(self) -> float:
        return 2 * math.cos(self.lam)

    @property
    def beta2(self) -> float:
        return math.sin(3 * self.lam) / math.sin(self.lam)

    @property
    def beta3(self) -> float:
        return math.sin(4 * self.lam) / math.sin(self.lam)

    def X(self, j: int) -> np.ndarray:
        return self.Xi[j] + self.E[j] / self.beta

    def identity(self) -> np.ndarray:
        return np.eye(self.dim)

    def face_operator(self, j: int, u: float) -> np.ndarray:
        """X_j(u) = s(l-u)s(2l-u)/s(2l) I + s(u)s(l-u) Xi_j + s(2u)/s(2l) E_j."""
        s = make_s(self.lam, 0.0)
        lam = self.lam
        return (s(lam - u) * s(2 * lam - u) / s(2 * lam) * self.identity()
                + s(u) * s(lam - u) * self.Xi[j]
                + s(2 * u) / s(2 * lam) * self.E[j])


def _s_norm(lam: float):
    sl = math.sin(lam)
    return lambda a: math.sin(a * lam) / sl


def build_operator_rep(spec: ModelSpec, L: int, a0: int) -> OperatorRep:
    """Construct E_j and Xi_j from the triangle-vector blocks, 1 <= j <= L-1.

    Near the strip boundary the three-component vectors lose the components
    whose heights fall outside 1..m'-1; the vanishing S factors make the
    retained blocks exactly right, which check_algebra re-verifies.
    """
    if L < 3:
        raise ValueError("need at least L = 3 sites")
    sp = ModelSpec(spec.m, spec.m_prime, 2)
    nbr = neighbors(sp)
    lam = sp.lambda_value()
    S = _s_norm(lam)

    basis: list[tuple[int, ...]] = []

    def grow(seq):
        if len(seq) == L + 1:
            basis.append(tuple(seq))
            return
        for y in nbr[seq[-1]]:
            grow(seq + [y])

    if not 1 <= a0 <= sp.m_prime - 1:
        raise ValueError("a0 outside the strip")
    grow([a0])
    index = {seq: i for i, seq in enumerate(basis)}
    dim = len(basis)

    E = {j: np.zeros((dim, dim)) for j in range(1, L)}
    Xi = {j: np.zeros((dim, dim)) for j in range(1, L)}
    beta = 2 * math.cos(lam)

    # Components are stored with common S factors cancelled so that boundary
    # blocks (where S(0) or S(m') would appear) never hit 0/0; a dropped
    # component's partner factor vanishes identically.
    def e_vec(a, x):
        if x == a + 2:
            return 1.0 / S(a + 1)
        if x == a:
            return S(a) / (S(a - 1) * S(a + 1))
        return 1.0 / S(a - 1)

    def et_vec(a, x):
        if x == a + 2:
            return S(a + 1) * S(a + 2) / S(a)
        if x == a:
            return S(a - 1) * S(a + 1) / S(a)
        return S(a - 2) * S(a - 1) / S(a)

    def x_vec(a, x):
        if x == a + 2:
            return -S(a - 1) / S(a + 1)
        if x == a:
            return S(2 * a) / (S(a - 1) * S(a + 1))
        return S(a + 1) / S(a - 1)

    def xt_vec(a, x):
        if x == a + 2:
            return -S(a + 2) / S(a)
        if x == a:
            return S(2 * a) / S(a) ** 2
        return S(a - 2) / S(a)

    def yt_vec(a, x):
        return (S(a + 2) if x == a + 1 else S(a - 2)) / S(a)

    for seq, i in index.items():
        for j in range(1, L):
            lo, me, hi = seq[j - 1], seq[j], seq[j + 1]
            outs = [x for x in nbr[lo] if hi in nbr[x]]
            if lo == hi:
                a = lo
                for out in outs:
                    k = index[seq[:j] + (out,) + seq[j + 1:]]
                    E[j][k, i] += e_vec(a, me) * et_vec(a, out)
                    Xi[j][k, i] += x_vec(a, me) * xt_vec(a, out) / beta
            elif abs(lo - hi) == 2:
                a = (lo + hi) // 2
                for out in outs:
                    k = index[seq[:j] + (out,) + seq[j + 1:]]
                    Xi[j][k, i] += 1.0 * yt_vec(a, out) / beta
            # |lo - hi| == 4: identity only; E and Xi vanish

    return OperatorRep(sp, L, a0, basis, E, Xi, lam)


@dataclass(frozen=True)
class AlgebraReport:
    spec: ModelSpec
    L: int
    a0: int
    residuals: dict[str, float]
    tol: float

    @property
    def passed(self) -> bool:
        return all(v <= self.tol for v in self.residuals.values())

    def failures(self) -> dict[str, float]:
        return {k: v for k, v in self.residuals.items() if v > self.tol}


def check_algebra(rep: OperatorRep, tol: float = 1e-10,
                  uv_samples: Iterable[tuple[float, float]] = ((0.23, 0.41),)
                  ) -> AlgebraReport:
    """Verify the loop contractions, cubic relations and the operator YBE.

    Y_j = beta Xi_j and Z_j = Y_j + E_j; residuals are max-abs matrix entries.
    """
    res: dict[str, float] = {}
    I = rep.identity()
    beta, beta2, beta3 = rep.beta, rep.beta2, rep.beta3
    c3 = beta3 / beta

    def put(name: str, lhs: np.ndarray, rhs: np.ndarray) -> None:
        r = float(np.max(np.abs(lhs - rhs))) if lhs.size else 0.0
        res[name] = max(res.get(name, 0.0), r)

    for j in range(1, rep.L):
        Ej, Xij = rep.E[j], rep.Xi[j]
        Yj = beta * Xij
        put("E^2 = beta2 E", Ej @ Ej, beta2 * Ej)
        put("beta^2 Xi^2 = beta3 Xi", beta * beta * (Xij @ Xij), beta3 * Xij)
        put("E Xi = 0", Ej @ Xij, np.zeros_like(Ej))
        put("Xi E = 0", Xij @ Ej, np.zeros_like(Ej))
        for i in (j - 1, j + 1):
            if not (1 <= i <= rep.L - 1):
                continue
            Ei, Xii = rep.E[i], rep.Xi[i]
            Yi = beta * Xii
            Zj, Zi = Yj + Ej, Yi + Ei
            put("E_j E_i E_j = E_j", Ej @ Ei @ Ej, Ej)
            put("beta E_j Xi_i E_j = (b3/b) E_j", beta * (Ej @ Xii @ Ej), c3 * Ej)
            put("Y_j E_i E_j = (Y_i+E_i-1) E_j", Yj @ Ei @ Ej,
                (Yi + Ei - I) @ Ej)
            put("Y_j Y_i E_j = (b3/b-1)(Y_i+E_i-1) E_j", Yj @ Yi @ Ej,
                (c3 - 1) * ((Yi + Ei - I) @ Ej))
            put("Z_j E_i Z_j = Z_i E_j Z_i", Zj @ Ei @ Zj, Zi @ Ej @ Zi)
            put("E_j Z_i E_j = beta2 E_j", Ej @ Zi @ Ej, beta2 * Ej)
            put("Z_j E_i E_j = Z_i E_j", Zj @ Ei @ Ej, Zi @ Ej)
            put("Z_j Z_i E_j = ((b2-1)Z_i+1) E_j", Zj @ Zi @ Ej,
                ((beta2 - 1) * Zi + I) @ Ej)
            # coefficient (x - 1/x)^2 = beta^2 - 4 = -4 sin^2(lambda); the
            # braid-like cubic fails numerically with beta^2 in its place
            put("YYY cubic", Yj @ Yi @ Yj - Yi @ Yj @ Yi,
                (beta ** 2 - 4) * (Ei @ Yj - Ej @ Yi + Yj @ Ei - Yi @ Ej + Ej - Ei)
                + Yj - Yi)
            for (u, v) in uv_samples:
                put("operator YBE",
                    rep.face_operator(j, u) @ rep.face_operator(i, u + v)
                    @ rep.face_operator(j, v),
                    rep.face_operator(i, v) @ rep.face_operator(j, u + v)
                    @ rep.face_operator(i, u))
    return AlgebraReport(rep.spec, rep.L, rep.a0, res, tol)


def allowed_a0(spec: ModelSpec) -> list[int]:
    """Heights that admit at least one fused neighbor (usable as a_0)."""
    sp = ModelSpec(spec.m, spec.m_prime, 2)
    nbr = neighbors(sp)
    return [a for a in sp.heights if nbr[a]]
