"""Exact symbolic symplectic calculus on T*V.

Observables are sparse polynomials in position coordinates x^a and conjugate
momenta p_a with Fraction coefficients, extended by denominators that are
powers of r = <e|x>.  The canonical bracket is {x^a, p_b} = delta_ab; the
momentum covector p is identified with the tangent vector pi through the
inner product, so every inner-product contraction below carries the Gram
matrix explicitly (trivial for spin factors, diagonal rational otherwise).

The moment functions

    S_uv = <S_uv(x)|pi>,   X_u = <x|{pi u pi}>,   Y_v = <x|v>

realize the TKK bracket relations under the Poisson bracket, and the
classical Kepler data (universal hamiltonian, angular observables, Lenz
observables) is built from them.
"""
from __future__ import annotations

from fractions import Fraction

import numpy as np

from .algebra import Algebra, Element, MismatchError

_ZERO = Fraction(0)


class PhasePoly:
    """Sparse polynomial on T*V: {(x exponents, p exponents): coefficient}."""

    __slots__ = ("n", "terms")

    def __init__(self, n: int, terms: dict | None = None):
        self.n = n
        self.terms = {k: c for k, c in (terms or {}).items() if c}

    @classmethod
    def constant(cls, n, c) -> "PhasePoly":
        z = (0,) * n
        c = Fraction(c)
        return cls(n, {(z, z): c} if c else {})

    @classmethod
    def x_var(cls, n, a) -> "PhasePoly":
        z = (0,) * n
        e = z[:a] + (1,) + z[a + 1:]
        return cls(n, {(e, z): Fraction(1)})

    @classmethod
    def p_var(cls, n, a) -> "PhasePoly":
        z = (0,) * n
        e = z[:a] + (1,) + z[a + 1:]
        return cls(n, {(z, e): Fraction(1)})

    def _binop(self, other, sign):
        if isinstance(other, (int, Fraction)):
            other = PhasePoly.constant(self.n, other)
        if self.n != other.n:
            raise MismatchError("phase polynomials over different variable counts")
        out = dict(self.terms)
        for k, c in other.terms.items():
            out[k] = out.get(k, _ZERO) + sign * c
        return PhasePoly(self.n, out)

    def __add__(self, other):
        return self._binop(other, 1)

    __radd__ = __add__

    def __sub__(self, other):
        return self._binop(other, -1)

    def __rsub__(self, other):
        return (-self)._binop(other, 1)

    def __neg__(self):
        return PhasePoly(self.n, {k: -c for k, c in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return PhasePoly(self.n, {k: c * other for k, c in self.terms.items()})
        if isinstance(other, PhaseRational):
            return PhaseRational(other.algebra, self * other.num, other.rpow)
        out = {}
        for (a1, b1), c1 in self.terms.items():
            for (a2, b2), c2 in other.terms.items():
                k = (tuple(i + j for i, j in zip(a1, a2)), tuple(i + j for i, j in zip(b1, b2)))
                out[k] = out.get(k, _ZERO) + c1 * c2
        return PhasePoly(self.n, out)

    __rmul__ = __mul__

    def partial_x(self, a: int) -> "PhasePoly":
        out = {}
        for (xe, pe), c in self.terms.items():
            if xe[a]:
                k = (xe[:a] + (xe[a] - 1,) + xe[a + 1:], pe)
                out[k] = out.get(k, _ZERO) + c * xe[a]
        return PhasePoly(self.n, out)

    def partial_p(self, a: int) -> "PhasePoly":
        out = {}
        for (xe, pe), c in self.terms.items():
            if pe[a]:
                k = (xe, pe[:a] + (pe[a] - 1,) + pe[a + 1:])
                out[k] = out.get(k, _ZERO) + c * pe[a]
        return PhasePoly(self.n, out)

    def is_zero(self) -> bool:
        return not self.terms

    def value(self, xvals, pvals):
        acc = Fraction(0)
        for (xe, pe), c in self.terms.items():
            t = c
            for i, e in enumerate(xe):
                if e:
                    t *= xvals[i] ** e
            for i, e in enumerate(pe):
                if e:
                    t *= pvals[i] ** e
            acc += t
        return acc

    def __eq__(self, other):
        if isinstance(other, PhasePoly):
            return self.n == other.n and self.terms == other.terms
        return NotImplemented

    def __repr__(self):
        return f"PhasePoly(n={self.n}, {len(self.terms)} terms)"


def poisson_poly(f: PhasePoly, g: PhasePoly) -> PhasePoly:
    """Canonical bracket sum_a (df/dx^a dg/dp_a - df/dp_a dg/dx^a)."""
    if f.n != g.n:
        raise MismatchError("phase polynomials over different variable counts")
    out = PhasePoly(f.n)
    for a in range(f.n):
        fx, fp = f.partial_x(a), f.partial_p(a)
        if not (fx.is_zero() and fp.is_zero()):
            out = out + fx * g.partial_p(a) - fp * g.partial_x(a)
    return out


def _divmod_linear(poly: PhasePoly, lin: list, pivot: int):
    """Divide by the linear form sum_a lin[a] x^a; returns (quotient, remainder).

    Processes terms bucketed by descending pivot exponent: eliminating a term
    of pivot degree d only creates terms of degree d-1, so one sweep suffices.
    """
    cpiv = lin[pivot]
    others = [(a, la) for a, la in enumerate(lin) if la and a != pivot]
    buckets: dict[int, dict] = {}
    for (xe, pe), c in poly.terms.items():
        buckets.setdefault(xe[pivot], {})[(xe, pe)] = c
    quot: dict = {}
    while True:
        live = [d for d in buckets if d > 0 and buckets[d]]
        if not live:
            break
        d = max(live)
        level = buckets.pop(d)
        lower = buckets.setdefault(d - 1, {})
        for (xe, pe), c in level.items():
            if not c:
                continue
            qxe = xe[:pivot] + (d - 1,) + xe[pivot + 1:]
            qc = c / cpiv
            quot[(qxe, pe)] = quot.get((qxe, pe), _ZERO) + qc
            for a, la in others:
                k = (qxe[:a] + (qxe[a] + 1,) + qxe[a + 1:], pe)
                lower[k] = lower.get(k, _ZERO) - qc * la
    return PhasePoly(poly.n, quot), PhasePoly(poly.n, buckets.get(0, {}))


class PhaseRational:
    """Quotient N / r^m with N a PhasePoly and r = <e|x>; kept reduced."""

    __slots__ = ("algebra", "num", "rpow")

    def __init__(self, algebra: Algebra, num: PhasePoly, rpow: int = 0):
        self.algebra = algebra
        if num.is_zero():
            rpow = 0
        else:
            lin = _r_coeffs(algebra)
            pivot = next(a for a, c in enumerate(lin) if c)
            while rpow > 0:
                q, s = _divmod_linear(num, lin, pivot)
                if not s.is_zero():
                    break
                num = q
                rpow -= 1
        self.num = num
        self.rpow = rpow

    def __add__(self, other):
        other = _as_rational(self.algebra, other)
        m = max(self.rpow, other.rpow)
        r = r_poly(self.algebra)
        n1 = self.num
        for _ in range(m - self.rpow):
            n1 = n1 * r
        n2 = other.num
        for _ in range(m - other.rpow):
            n2 = n2 * r
        return PhaseRational(self.algebra, n1 + n2, m)

    __radd__ = __add__

    def __sub__(self, other):
        return self + (-_as_rational(self.algebra, other))

    def __neg__(self):
        return PhaseRational(self.algebra, -self.num, self.rpow)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return PhaseRational(self.algebra, self.num * other, self.rpow)
        other = _as_rational(self.algebra, other)
        return PhaseRational(self.algebra, self.num * other.num, self.rpow + other.rpow)

    __rmul__ = __mul__

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def __eq__(self, other):
        if isinstance(other, (PhaseRational, PhasePoly, int, Fraction)):
            return (self - other).is_zero()
        return NotImplemented

    def __repr__(self):
        return f"PhaseRational({self.algebra.spec}, {len(self.num.terms)} terms / r^{self.rpow})"


def _as_rational(alg: Algebra, f) -> PhaseRational:
    if isinstance(f, PhaseRational):
        return f
    if isinstance(f, (int, Fraction)):
        f = PhasePoly.constant(alg.dim, f)
    return PhaseRational(alg, f, 0)


def _r_coeffs(alg: Algebra) -> list:
    key = "phase_r_coeffs"
    if key not in alg._cache:
        e = alg.identity()
        alg._cache[key] = [g * c for g, c in zip(alg.gram, e.coords)]
    return alg._cache[key]


def r_poly(alg: Algebra) -> PhasePoly:
    """r = <e|x> as a PhasePoly."""
    n = alg.dim
    z = (0,) * n
    terms = {}
    for a, c in enumerate(_r_coeffs(alg)):
        if c:
            terms[(z[:a] + (1,) + z[a + 1:], z)] = c
    return PhasePoly(n, terms)


def poisson(f, g) -> PhaseRational:
    """Poisson bracket of phase observables (polynomials or r-power quotients).

    For f = N1/r^a, g = N2/r^b:
    {f, g} = (r {N1,N2} - a N1 {r,N2} + b N2 {r,N1}) / r^{a+b+1}.
    """
    if isinstance(f, PhasePoly) and isinstance(g, PhasePoly):
        raise TypeError("use poisson_poly for two plain polynomials")
    alg = f.algebra if isinstance(f, PhaseRational) else g.algebra
    f = _as_rational(alg, f)
    g = _as_rational(alg, g)
    r = r_poly(alg)
    num = r * poisson_poly(f.num, g.num)
    if f.rpow:
        num = num - f.rpow * (f.num * poisson_poly(r, g.num))
    if g.rpow:
        num = num + g.rpow * (g.num * poisson_poly(r, f.num))
    return PhaseRational(alg, num, f.rpow + g.rpow + 1)


# --- moment functions ---------------------------------------------------------

def momentum_observable(alg: Algebra, matrix) -> PhasePoly:
    """<M x | pi> = sum_a (Mx)^a p_a for an endomorphism M (exact matrix)."""
    n = alg.dim
    z = (0,) * n
    terms = {}
    for a in range(n):
        for b in range(n):
            c = matrix[a, b]
            if c:
                key = (z[:b] + (1,) + z[b + 1:], z[:a] + (1,) + z[a + 1:])
                terms[key] = terms.get(key, _ZERO) + Fraction(c)
    return PhasePoly(n, terms)


def moment_s(alg: Algebra, u: Element, v: Element) -> PhasePoly:
    """S_uv = <S_uv(x)|pi>."""
    return momentum_observable(alg, alg.smul_matrix(u, v))


def moment_x(alg: Algebra, u: Element) -> PhasePoly:
    """X_u = <x|{pi u pi}>."""
    n = alg.dim
    t = alg.dual_triple_tensor(u)
    z = (0,) * n
    terms = {}
    for a in range(n):
        for b in range(n):
            for g in range(n):
                c = t[a, b, g]
                if c:
                    pe = list(z)
                    pe[a] += 1
                    pe[b] += 1
                    key = (z[:g] + (1,) + z[g + 1:], tuple(pe))
                    terms[key] = terms.get(key, _ZERO) + c
    return PhasePoly(n, terms)


def moment_y(alg: Algebra, v: Element) -> PhasePoly:
    """Y_v = <x|v>."""
    n = alg.dim
    z = (0,) * n
    terms = {}
    for a in range(n):
        c = alg.gram[a] * v.coords[a]
        if c:
            terms[(z[:a] + (1,) + z[a + 1:], z)] = c
    return PhasePoly(n, terms)


def moments(alg: Algebra, u: Element, v: Element):
    """(S_uv, X_u, Y_v) as exact phase polynomials."""
    return moment_s(alg, u, v), moment_x(alg, u), moment_y(alg, v)


# --- TKK relation verification -------------------------------------------------

_RELATIONS = ("XX", "YY", "XY", "SX", "SY", "SS")


def poisson_relation_residual(alg: Algebra, name: str, u, v, z, w,
                              mutated_moment: bool = False) -> PhasePoly:
    """Residual polynomial of one bracket-relation family; zero iff it holds.

    mutated_moment flips the sign of S_uv inside the XY relation; it is a
    harness self-check hook and must make the residual nonzero.
    """
    if name == "XX":
        return poisson_poly(moment_x(alg, u), moment_x(alg, v))
    if name == "YY":
        return poisson_poly(moment_y(alg, u), moment_y(alg, v))
    if name == "XY":
        s = moment_s(alg, u, v)
        if mutated_moment:
            s = -s
        return poisson_poly(moment_x(alg, u), moment_y(alg, v)) + 2 * s
    if name == "SX":
        return poisson_poly(moment_s(alg, u, v), moment_x(alg, z)) - moment_x(alg, alg.triple(u, v, z))
    if name == "SY":
        return poisson_poly(moment_s(alg, u, v), moment_y(alg, z)) + moment_y(alg, alg.triple(v, u, z))
    if name == "SS":
        lhs = poisson_poly(moment_s(alg, u, v), moment_s(alg, z, w))
        return lhs - moment_s(alg, alg.triple(u, v, z), w) + moment_s(alg, z, alg.triple(v, u, w))
    raise ValueError(f"unknown relation family {name!r}")


def verify_poisson_tkk(alg: Algebra, trials: int = 50, seed: int = 0,
                       mutated_moment: bool = False) -> list:
    """Check all six Poisson bracket relation families on random rational
    4-tuples.  Returns one check dict per family with a witness on failure."""
    rng = np.random.default_rng(seed)
    tuples = []
    for _ in range(trials):
        tuples.append(tuple(alg.random_element(rng, span=4) for _ in range(4)))
    checks = []
    for name in _RELATIONS:
        witness = None
        for (u, v, z, w) in tuples:
            res = poisson_relation_residual(alg, name, u, v, z, w, mutated_moment=mutated_moment)
            if not res.is_zero():
                witness = {"relation": name,
                           "u": [str(c) for c in u.coords], "v": [str(c) for c in v.coords],
                           "z": [str(c) for c in z.coords], "w": [str(c) for c in w.coords]}
                break
        checks.append({"name": f"poisson:{name}", "status": "pass" if witness is None else "fail",
                       "metric": "exact", "witness": witness})
    return checks


# --- classical Kepler data ------------------------------------------------------
#
# Sign conventions.  With the canonical bracket {x^a, p_b} = +delta and the
# moment functions above, the bracket {A_u, A_v} of the Lenz observables is
# independent of any overall sign put on A (it is quadratic in A).  The free
# sign of the system therefore lives in the orientation of the rotation
# sector: classical_angular uses [L_v, L_u], which is the unique orientation
# for which the closed system
#
#     {H, L_{u,v}} = 0,  {H, A_u} = 0,  {A_u, A_v} = -2 H L_{u,v},
#     {L_{u,v}, A_z} = A_{[L_v, L_u] z}
#
# holds identically.  LENZ_SIGN matches the i-bookkeeping of the operator
# Lenz definition; all four identities hold for either value.

LENZ_SIGN = -1


def classical_hamiltonian(alg: Algebra) -> PhaseRational:
    """H = (1/2) <x|pi^2> / r - 1/r."""
    num = Fraction(1, 2) * moment_x(alg, alg.identity()) - PhasePoly.constant(alg.dim, 1)
    return PhaseRational(alg, num, 1)


def classical_angular(alg: Algebra, u: Element, v: Element) -> PhasePoly:
    """Angular observable of the pair (u, v): <[L_v, L_u] x | pi>."""
    lu, lv = alg.lmul_matrix(u), alg.lmul_matrix(v)
    return momentum_observable(alg, lv @ lu - lu @ lv)


def classical_lenz(alg: Algebra, u: Element) -> PhaseRational:
    """Lenz observable A_u = sign * (1/r) {L_u, r^2 H} with L_u = S_ue."""
    l_u = moment_s(alg, u, alg.identity())
    r = r_poly(alg)
    r2h = r * (Fraction(1, 2) * moment_x(alg, alg.identity()) - PhasePoly.constant(alg.dim, 1))
    return PhaseRational(alg, LENZ_SIGN * poisson_poly(l_u, r2h), 1)
