"""Normal-ordered differential operators on polynomials over V.

A WeylOp is a sparse sum of normal-ordered words x^A d^B (all multiplication
factors left of all derivatives) with exact complex-rational coefficients.
Composition uses the Leibniz exchange rule

    d^B x^C = sum_s  C(B,s) C!/(C-s)!  x^{C-s} d^{B-s}    (componentwise),

so equality of operators is coefficient equality of normal forms and every
commutation relation becomes a decidable exact check.

The nu-parametrized realization of the conformal algebra acts on states
psi = e^{-r} p with p polynomial; operators act on p through conjugation by
e^{r}, which is the constant shift d_a -> d_a - (Ge)_a.

As in the phase-space module, derivative slots are paired with the
metric-dual basis, so the Gram matrix of the rational frame appears
explicitly and all identities stay exact for every family.

Only the realization by differential operators on V is implemented; the dual
realization on V* is its Fourier transform and adds nothing checkable here.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .algebra import DomainError, Algebra, Element, MismatchError
from .scalars import CQ

_I = CQ(0, 1)


def _ff(c: int, s: int) -> int:
    """Falling factorial c (c-1) ... (c-s+1)."""
    out = 1
    for t in range(s):
        out *= c - t
    return out


class WeylOp:
    """Sparse normal-ordered operator: {(x exponents, d exponents): coeff}."""

    __slots__ = ("n", "terms")

    def __init__(self, n: int, terms: dict | None = None):
        self.n = n
        self.terms = {k: c for k, c in (terms or {}).items() if c}

    @classmethod
    def constant(cls, n, c) -> "WeylOp":
        z = (0,) * n
        return cls(n, {(z, z): c})

    @classmethod
    def x_mul(cls, n, a) -> "WeylOp":
        z = (0,) * n
        return cls(n, {(z[:a] + (1,) + z[a + 1:], z): Fraction(1)})

    @classmethod
    def d_op(cls, n, a) -> "WeylOp":
        z = (0,) * n
        return cls(n, {(z, z[:a] + (1,) + z[a + 1:]): Fraction(1)})

    def __add__(self, other):
        if isinstance(other, (int, Fraction, CQ)):
            other = WeylOp.constant(self.n, other)
        if self.n != other.n:
            raise MismatchError("operators over different variable counts")
        out = dict(self.terms)
        for k, c in other.terms.items():
            s = out.get(k, 0) + c
            if s:
                out[k] = s
            elif k in out:
                del out[k]
        return WeylOp(self.n, out)

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, (int, Fraction, CQ)):
            other = WeylOp.constant(self.n, other)
        return self + (-other)

    def __neg__(self):
        return WeylOp(self.n, {k: -c for k, c in self.terms.items()})

    def scaled(self, c):
        return WeylOp(self.n, {k: c * v for k, v in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, CQ)):
            return self.scaled(other)
        return compose(self, other)

    def __rmul__(self, other):
        return self.scaled(other)

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other):
        if isinstance(other, WeylOp):
            return (self - other).is_zero()
        return NotImplemented

    def __repr__(self):
        return f"WeylOp(n={self.n}, {len(self.terms)} terms)"


def compose(a: WeylOp, b: WeylOp) -> WeylOp:
    """Normal-ordered product ab."""
    if a.n != b.n:
        raise MismatchError("operators over different variable counts")
    out = {}
    for (A, B), ca in a.terms.items():
        for (C, D), cb in b.terms.items():
            base = ca * cb
            ranges = [range(min(bi, ci) + 1) for bi, ci in zip(B, C)]
            for s in itertools.product(*ranges):
                coef = base
                for bi, ci, si in zip(B, C, s):
                    if si:
                        coef = coef * (math.comb(bi, si) * _ff(ci, si))
                key = (tuple(ai + ci - si for ai, ci, si in zip(A, C, s)),
                       tuple(bi + di - si for bi, di, si in zip(B, D, s)))
                acc = out.get(key, 0) + coef
                if acc:
                    out[key] = acc
                elif key in out:
                    del out[key]
    return WeylOp(a.n, out)


def commutator(a: WeylOp, b: WeylOp) -> WeylOp:
    return compose(a, b) - compose(b, a)


class PolyState:
    """Polynomial p over V representing the state psi = e^{-r} p."""

    __slots__ = ("n", "terms")

    def __init__(self, n: int, terms: dict | None = None):
        self.n = n
        self.terms = {k: c for k, c in (terms or {}).items() if c}

    @classmethod
    def vacuum(cls, n) -> "PolyState":
        return cls(n, {(0,) * n: Fraction(1)})

    @classmethod
    def monomial(cls, n, exps, coeff=Fraction(1)) -> "PolyState":
        return cls(n, {tuple(exps): coeff})

    def __add__(self, other):
        out = dict(self.terms)
        for k, c in other.terms.items():
            s = out.get(k, 0) + c
            if s:
                out[k] = s
            elif k in out:
                del out[k]
        return PolyState(self.n, out)

    def __sub__(self, other):
        return self + other.scaled(-1)

    def scaled(self, c):
        return PolyState(self.n, {k: c * v for k, v in self.terms.items()})

    def is_zero(self) -> bool:
        return not self.terms

    def degree(self) -> int:
        return max((sum(k) for k in self.terms), default=0)

    def graded_part(self, d: int) -> "PolyState":
        return PolyState(self.n, {k: c for k, c in self.terms.items() if sum(k) == d})

    def __eq__(self, other):
        if isinstance(other, PolyState):
            return self.n == other.n and (self - other).is_zero()
        return NotImplemented

    def __repr__(self):
        return f"PolyState(n={self.n}, {len(self.terms)} terms)"


def apply_op(op: WeylOp, p: PolyState) -> PolyState:
    """Apply a normal-ordered operator to a plain polynomial."""
    if op.n != p.n:
        raise MismatchError("operator and state over different variable counts")
    out = {}
    for (A, B), c in op.terms.items():
        for C, pc in p.terms.items():
            if any(ci < bi for ci, bi in zip(C, B)):
                continue
            coef = c * pc
            for ci, bi in zip(C, B):
                if bi:
                    coef = coef * _ff(ci, bi)
            key = tuple(ai + ci - bi for ai, ci, bi in zip(A, C, B))
            acc = out.get(key, 0) + coef
            if acc:
                out[key] = acc
            elif key in out:
                del out[key]
    return PolyState(p.n, out)


# --- the nu-parametrized (acute) realization -----------------------------------

def _shift_coeffs(alg: Algebra) -> list:
    """d_a r = (Ge)_a: the constant shift produced by conjugating with e^r."""
    e = alg.identity()
    return [g * c for g, c in zip(alg.gram, e.coords)]


def gaussian_conjugate(alg: Algebra, op: WeylOp, outer_sign: int = 1) -> WeylOp:
    """e^{sr} op e^{-sr} with s = outer_sign: the substitution d_a -> d_a - s (Ge)_a."""
    sh = _shift_coeffs(alg)
    out = WeylOp(op.n)
    for (A, B), c in op.terms.items():
        ranges = [range(bi + 1) for bi in B]
        expanded = {}
        for s in itertools.product(*ranges):
            coef = c
            for a, (bi, si) in enumerate(zip(B, s)):
                if bi - si:
                    coef = coef * math.comb(bi, si) * (-outer_sign * sh[a]) ** (bi - si)
                elif si != bi:
                    coef = coef * math.comb(bi, si)
            key = (A, s)
            expanded[key] = expanded.get(key, 0) + coef
        out = out + WeylOp(op.n, expanded)
    return out


def apply_to_state(alg: Algebra, op: WeylOp, p: PolyState) -> PolyState:
    """Action on psi = e^{-r} p: returns q with op psi = e^{-r} q."""
    return apply_op(gaussian_conjugate(alg, op), p)


def acute_s(alg: Algebra, nu, u: Element, v: Element) -> WeylOp:
    """S_uv(nu) = -<S_uv(x)|D> - (nu/2) tr(uv)."""
    n = alg.dim
    s = alg.smul_matrix(u, v)
    z = (0,) * n
    terms = {}
    for a in range(n):
        for b in range(n):
            c = s[a, b]
            if c:
                key = (z[:b] + (1,) + z[b + 1:], z[:a] + (1,) + z[a + 1:])
                terms[key] = terms.get(key, 0) - Fraction(c)
    tr_uv = alg.rho * alg.inner(u, v)
    const = -Fraction(nu) * tr_uv / 2
    if const:
        terms[(z, z)] = terms.get((z, z), 0) + const
    return WeylOp(n, terms)


def acute_x(alg: Algebra, nu, u: Element) -> WeylOp:
    """X_u(nu) = i <x|{D u D}> + i nu tr(u D)."""
    n = alg.dim
    t = alg.dual_triple_tensor(u)
    z = (0,) * n
    terms = {}
    for a in range(n):
        for b in range(n):
            for g in range(n):
                c = t[a, b, g]
                if c:
                    de = list(z)
                    de[a] += 1
                    de[b] += 1
                    key = (z[:g] + (1,) + z[g + 1:], tuple(de))
                    terms[key] = terms.get(key, 0) + _I * c
    nur = Fraction(nu) * alg.rho
    if nur:
        for a in range(n):
            ua = u.coords[a]
            if ua:
                key = (z, z[:a] + (1,) + z[a + 1:])
                terms[key] = terms.get(key, 0) + _I * (nur * ua)
    return WeylOp(n, terms)


def acute_y(alg: Algebra, nu, v: Element) -> WeylOp:
    """Y_v(nu) = -i <x|v> (multiplication operator; nu-independent)."""
    n = alg.dim
    z = (0,) * n
    terms = {}
    for a in range(n):
        c = alg.gram[a] * v.coords[a]
        if c:
            terms[(z[:a] + (1,) + z[a + 1:], z)] = -_I * c
    return WeylOp(n, terms)


def acute_ops(alg: Algebra, nu, u: Element, v: Element):
    """(S_uv(nu), X_u(nu), Y_v(nu)) as normal-form operators; nu rational."""
    return acute_s(alg, nu, u, v), acute_x(alg, nu, u), acute_y(alg, nu, v)


_RELATIONS = ("XX", "YY", "XY", "SX", "SY", "SS")


def tkk_op_residual(alg: Algebra, name: str, nu, u, v, z, w) -> WeylOp:
    """Residual of one operator commutation-relation family (zero iff it holds)."""
    if name == "XX":
        return commutator(acute_x(alg, nu, u), acute_x(alg, nu, v))
    if name == "YY":
        return commutator(acute_y(alg, nu, u), acute_y(alg, nu, v))
    if name == "XY":
        return commutator(acute_x(alg, nu, u), acute_y(alg, nu, v)) + 2 * acute_s(alg, nu, u, v)
    if name == "SX":
        return commutator(acute_s(alg, nu, u, v), acute_x(alg, nu, z)) - acute_x(alg, nu, alg.triple(u, v, z))
    if name == "SY":
        return commutator(acute_s(alg, nu, u, v), acute_y(alg, nu, z)) + acute_y(alg, nu, alg.triple(v, u, z))
    if name == "SS":
        lhs = commutator(acute_s(alg, nu, u, v), acute_s(alg, nu, z, w))
        return lhs - acute_s(alg, nu, alg.triple(u, v, z), w) + acute_s(alg, nu, z, alg.triple(v, u, w))
    raise ValueError(f"unknown relation family {name!r}")


def verify_tkk_ops(alg: Algebra, nu, trials: int = 30, seed: int = 0) -> list:
    """Exact normal-form check of all six families on random rational 4-tuples."""
    rng = np.random.default_rng(seed)
    tuples = [tuple(alg.random_element(rng, span=4) for _ in range(4)) for _ in range(trials)]
    checks = []
    for name in _RELATIONS:
        witness = None
        for (u, v, z, w) in tuples:
            if not tkk_op_residual(alg, name, nu, u, v, z, w).is_zero():
                witness = {"relation": name, "nu": str(nu),
                           "u": [str(c) for c in u.coords], "v": [str(c) for c in v.coords],
                           "z": [str(c) for c in z.coords], "w": [str(c) for c in w.coords]}
                break
        checks.append({"name": f"operators:{name}", "status": "pass" if witness is None else "fail",
                       "metric": "exact", "witness": witness})
    return checks


# --- Wallach parameter -----------------------------------------------------------

@dataclass(frozen=True)
class WallachParam:
    """Nonzero Wallach parameter nu with its kind and associated cone rank."""

    value: object  # Fraction or float
    kind: str      # "discrete" or "continuous"
    k: int | None
    rho_of_nu: int

    @classmethod
    def make(cls, alg: Algebra, nu) -> "WallachParam":
        if isinstance(nu, WallachParam):
            return nu
        exact = isinstance(nu, (int, Fraction))
        nu_f = Fraction(nu) if exact else float(nu)
        if nu_f <= 0:
            raise DomainError(
                f"nu = {nu} is not in the nonzero Wallach set of {alg.spec}: need "
                f"nu = k*delta/2 (1 <= k < rho) or nu > (rho-1)*delta/2")
        top = Fraction(alg.rho - 1) * alg.delta / 2
        if nu_f > top:
            return cls(nu_f, "continuous", None, alg.rho)
        if exact:
            ratio = 2 * nu_f / alg.delta
            if ratio.denominator == 1 and 1 <= ratio <= alg.rho - 1:
                return cls(nu_f, "discrete", int(ratio), int(ratio))
        raise DomainError(
            f"nu = {nu} is not in the nonzero Wallach set of {alg.spec}: need "
            f"nu = k*delta/2 (1 <= k < rho) or nu > (rho-1)*delta/2 = {top}")


def bound_spectrum(alg: Algebra, nu, level: int):
    """Bound-state energy E_I = -(1/2) / (I + nu rho/2)^2."""
    if level < 0:
        raise DomainError("level index must be >= 0")
    param = WallachParam.make(alg, nu)
    shift = param.value * alg.rho / 2
    if isinstance(param.value, Fraction):
        return -Fraction(1, 2) / (level + shift) ** 2
    return -0.5 / float(level + shift) ** 2


# --- grading and lowest weight ----------------------------------------------------

def he_op(alg: Algebra, nu) -> WeylOp:
    """H_e realized: i (X_e(nu) + Y_e(nu))."""
    e = alg.identity()
    return _I * (acute_x(alg, nu, e) + acute_y(alg, nu, e))


def he_grading_check(alg: Algebra, nu, degree: int) -> dict:
    """Exact leading-term check: on homogeneous degree-I monomials, the
    conjugated H_e acts as 2I + nu rho plus lower-degree terms."""
    if degree < 0:
        raise DomainError("degree must be >= 0")
    n = alg.dim
    conj = gaussian_conjugate(alg, he_op(alg, nu))
    eig = 2 * degree + Fraction(nu) * alg.rho
    checked = 0
    witness = None
    for exps in _monomials_of_degree(n, degree):
        p = PolyState.monomial(n, exps)
        q = apply_op(conj, p)
        if q.degree() > degree or not (q.graded_part(degree) - p.scaled(eig)).is_zero():
            witness = {"monomial": list(exps)}
            break
        checked += 1
    return {"name": f"grading:I={degree}", "status": "pass" if witness is None else "fail",
            "metric": "exact", "eigenvalue": str(eig), "checked": checked, "witness": witness}


def lowest_weight_check(alg: Algebra, nu, seed: int = 0, trials: int = 8) -> dict:
    """psi_0 = e^{-r} is annihilated by the realized compact generators and by
    E_{-alpha_0}, and is an H_{alpha_0} eigenvector with eigenvalue nu."""
    n = alg.dim
    vac = PolyState.vacuum(n)
    rng = np.random.default_rng(seed)
    failures = []
    # derivation sector [L_u, L_v] = (S_uv - S_vu)/2
    for _ in range(trials):
        u = alg.random_element(rng, span=4)
        v = alg.random_element(rng, span=4)
        op = (acute_s(alg, nu, u, v) - acute_s(alg, nu, v, u)).scaled(Fraction(1, 2))
        if not apply_to_state(alg, op, vac).is_zero():
            failures.append({"check": "derivation", "u": [str(c) for c in u.coords]})
    # compact translations X_w + Y_w with w orthogonal to e
    for w in alg.e_perp_basis():
        op = acute_x(alg, nu, w) + acute_y(alg, nu, w)
        if not apply_to_state(alg, op, vac).is_zero():
            failures.append({"check": "compact-translation", "w": [str(c) for c in w.coords]})
    # alpha_0 sl2 data over the first frame idempotent
    c = alg.jordan_frame()[0]
    half_i = CQ(0, Fraction(1, 2))
    e_minus = (half_i * (acute_x(alg, nu, c) - acute_y(alg, nu, c))
               + acute_s(alg, nu, c, alg.identity()))
    if not apply_to_state(alg, e_minus, vac).is_zero():
        failures.append({"check": "E_-alpha0"})
    h_a0 = _I * (acute_x(alg, nu, c) + acute_y(alg, nu, c))
    got = apply_to_state(alg, h_a0, vac)
    if not (got - vac.scaled(Fraction(nu))).is_zero():
        failures.append({"check": "H_alpha0", "got": {str(k): str(v) for k, v in got.terms.items()}})
    return {"name": "lowest-weight", "status": "pass" if not failures else "fail",
            "metric": "exact", "weight": f"{nu}*lambda0", "witness": failures or None}


def _monomials_of_degree(n: int, d: int):
    if n == 1:
        yield (d,)
        return
    for first in range(d, -1, -1):
        for rest in _monomials_of_degree(n - 1, d - first):
            yield (first,) + rest


def _monomials_up_to(n: int, d: int) -> list:
    out = []
    for deg in range(d + 1):
        out.extend(_monomials_of_degree(n, deg))
    return out


# --- degeneracies by restriction rank ----------------------------------------------

def _restriction_ranks(alg: Algebra, param: WallachParam, degree: int,
                       samples: int | None, seed: int) -> tuple[int, int]:
    """(rank of degree <= I evaluations, rank of degree <= I-1 evaluations),
    cross-validated on two disjoint sample sets; instability raises."""
    from .cone import sample_cone_point

    n = alg.dim
    monos = _monomials_up_to(n, degree)
    ambient = len(monos)
    if samples is None:
        samples = 3 * ambient
    if samples < 3 * ambient:
        raise DomainError(f"need samples >= 3 x ambient dimension = {3 * ambient}")
    n_low = sum(1 for m in monos if sum(m) <= degree - 1)

    def ranks(point_seed_base):
        # r-normalize for conditioning, then re-dilate randomly: points on a
        # fixed r-slice would make r - const vanish identically and collapse
        # the degree filtration.
        pts = np.empty((samples, n))
        for i in range(samples):
            p = sample_cone_point(alg, param.rho_of_nu, point_seed_base + i)
            scale = np.random.default_rng(point_seed_base + 7 * i + 3).uniform(0.6, 1.6)
            pts[i] = p.x.coords * (scale / p.r)
        cols = np.empty((samples, ambient))
        for j, m in enumerate(monos):
            col = np.ones(samples)
            for a, e in enumerate(m):
                if e:
                    col = col * pts[:, a] ** e
            cols[:, j] = col
        sv_full = np.linalg.svd(cols, compute_uv=False)
        r_full = int(np.sum(sv_full > 1e-8 * sv_full[0]))
        if n_low:
            sv_low = np.linalg.svd(cols[:, :n_low], compute_uv=False)
            r_low = int(np.sum(sv_low > 1e-8 * sv_low[0]))
        else:
            r_low = 0
        return r_full, r_low

    base = np.random.SeedSequence(seed).generate_state(2)
    r1 = ranks(int(base[0]))
    r2 = ranks(int(base[1]))
    if r1 != r2:
        raise DomainError(f"restriction rank unstable across disjoint sample sets "
                          f"({r1} vs {r2}); increase samples")
    return r1


def restriction_rank(alg: Algebra, nu, degree: int, samples: int | None = None,
                     seed: int = 0) -> int:
    """SVD rank of the evaluation matrix of all degree <= I monomials at
    sampled points of the rank-rho(nu) cone."""
    param = WallachParam.make(alg, nu)
    if degree < 0:
        raise DomainError("degree must be >= 0")
    return _restriction_ranks(alg, param, degree, samples, seed)[0]


def restriction_degeneracy(alg: Algebra, nu, degree: int, samples: int | None = None,
                           seed: int = 0) -> int:
    """Dimension of the degree-I graded piece of polynomials restricted to the
    canonical cone of rank rho(nu), as a difference of SVD evaluation ranks."""
    param = WallachParam.make(alg, nu)
    if degree < 0:
        raise DomainError("degree must be >= 0")
    if degree == 0:
        return 1
    r_full, r_low = _restriction_ranks(alg, param, degree, samples, seed)
    return r_full - r_low
