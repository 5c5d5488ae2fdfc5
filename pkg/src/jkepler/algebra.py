"""Simple euclidean Jordan algebras as explicit structure-constant tables.

The five families (with rank rho, degree delta, dimension n):

    gamma:k   spin factor R + R^k          (2, k-1, k+1)      k >= 2
    h:k:R     symmetric real k x k         (k, 1, k(k+1)/2)   k = 1 or k >= 3
    h:k:C     hermitian complex k x k      (k, 2, k^2)        k >= 3
    h:k:H     hermitian quaternion k x k   (k, 4, k(2k-1))    k >= 3
    h:3:O     hermitian octonion 3 x 3     (3, 8, 27)

Two coordinate frames are maintained.  Exact elements live in the *rational
frame* (diagonal matrix units E_ii and symmetrized off-diagonal units
F_ij^mu; the natural basis for spin factors), in which every structure
constant is rational with denominator dividing 2 and the invariant inner
product <u|v> = tr(uv)/rho has a diagonal rational Gram matrix.  Float
elements live in the *orthonormal frame*, the unit-normalized rescaling of
the same basis, where the Gram matrix is the identity.  Spin factors are
orthonormal in both frames.

The quaternionic and octonionic entries are realified; the trace is the real
diagonal sum.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import divalg
from .scalars import CQ
from .symfun import elementary_from_power, tau_poly

EXACT = "exact"
FLOAT = "float64"

_FAMILIES = ("gamma", "hr", "hc", "hh", "ho")
_DIVISION_DIM = {"hr": 1, "hc": 2, "hh": 4, "ho": 8}


class SpecificationError(ValueError):
    """Invalid algebra family or parameter."""


class MismatchError(ValueError):
    """Operands from different algebras or scalar modes."""


class DomainError(ValueError):
    """Input outside the mathematical domain of an operation."""


@dataclass(frozen=True)
class AlgebraSpec:
    """Family tag plus size parameter k."""

    family: str
    k: int

    def __post_init__(self):
        if self.family not in _FAMILIES:
            raise SpecificationError(f"unknown family {self.family!r}; expected one of {_FAMILIES}")
        k = self.k
        if self.family == "gamma" and k < 2:
            raise SpecificationError(f"spin factor gamma:{k} invalid: k >= 2 required (gamma(1) is not simple)")
        if self.family == "hr" and not (k == 1 or k >= 3):
            raise SpecificationError(f"h:{k}:R invalid: k = 1 or k >= 3 required (h:2:R duplicates gamma:2)")
        if self.family in ("hc", "hh") and k < 3:
            raise SpecificationError(f"{self} invalid: k >= 3 required (rank-2 cases duplicate spin factors)")
        if self.family == "ho" and k != 3:
            raise SpecificationError(f"h:{k}:O invalid: only k = 3 yields a Jordan algebra")

    @classmethod
    def parse(cls, text: str) -> "AlgebraSpec":
        """Parse spec strings: gamma:k, h:k:R, h:k:C, h:k:H, h:3:O."""
        parts = text.strip().split(":")
        try:
            if len(parts) == 2 and parts[0].lower() == "gamma":
                return cls("gamma", int(parts[1]))
            if len(parts) == 3 and parts[0].lower() == "h":
                fam = {"r": "hr", "c": "hc", "h": "hh", "o": "ho"}[parts[2].lower()]
                return cls(fam, int(parts[1]))
        except (KeyError, ValueError) as exc:
            if isinstance(exc, SpecificationError):
                raise
            raise SpecificationError(f"cannot parse algebra spec {text!r}; grammar: gamma:k | h:k:R|C|H|O") from exc
        raise SpecificationError(f"cannot parse algebra spec {text!r}; grammar: gamma:k | h:k:R|C|H|O")

    def __str__(self):
        if self.family == "gamma":
            return f"gamma:{self.k}"
        letter = {"hr": "R", "hc": "C", "hh": "H", "ho": "O"}[self.family]
        return f"h:{self.k}:{letter}"

    @property
    def table(self) -> tuple[int, int, int]:
        """(rho, delta, n) from the classification table."""
        k = self.k
        if self.family == "gamma":
            return 2, k - 1, k + 1
        delta = _DIVISION_DIM[self.family]
        return k, delta, k + k * (k - 1) * delta // 2


class Element:
    """Vector in a fixed algebra: exact Fraction/CQ coords or float64 coords."""

    __slots__ = ("algebra", "coords", "mode")

    def __init__(self, algebra: "Algebra", coords, mode: str):
        self.algebra = algebra
        if mode == EXACT:
            self.coords = tuple(coords)
        elif mode == FLOAT:
            self.coords = np.asarray(coords, dtype=np.float64)
        else:
            raise MismatchError(f"unknown scalar mode {mode!r}")
        self.mode = mode
        if len(self.coords) != algebra.dim:
            raise MismatchError(f"coords length {len(self.coords)} != dim {algebra.dim}")

    def _check(self, other: "Element"):
        if self.algebra is not other.algebra:
            raise MismatchError("elements belong to different algebras")
        if self.mode != other.mode:
            raise MismatchError("mixed-mode arithmetic is rejected")

    def __add__(self, other):
        self._check(other)
        if self.mode == EXACT:
            return Element(self.algebra, [a + b for a, b in zip(self.coords, other.coords)], EXACT)
        return Element(self.algebra, self.coords + other.coords, FLOAT)

    def __sub__(self, other):
        self._check(other)
        if self.mode == EXACT:
            return Element(self.algebra, [a - b for a, b in zip(self.coords, other.coords)], EXACT)
        return Element(self.algebra, self.coords - other.coords, FLOAT)

    def __neg__(self):
        if self.mode == EXACT:
            return Element(self.algebra, [-a for a in self.coords], EXACT)
        return Element(self.algebra, -self.coords, FLOAT)

    def __mul__(self, other):
        if isinstance(other, Element):
            return self.algebra.product(self, other)
        return self.scaled(other)

    def __rmul__(self, other):
        return self.scaled(other)

    def scaled(self, s):
        if self.mode == EXACT:
            if isinstance(s, float):
                raise MismatchError("float scalar on exact element")
            return Element(self.algebra, [s * a for a in self.coords], EXACT)
        return Element(self.algebra, float(s) * self.coords, FLOAT)

    def __eq__(self, other):
        if not isinstance(other, Element):
            return NotImplemented
        if self.algebra is not other.algebra or self.mode != other.mode:
            return False
        if self.mode == EXACT:
            return self.coords == other.coords
        return bool(np.array_equal(self.coords, other.coords))

    def is_zero(self) -> bool:
        if self.mode == EXACT:
            return all(not c for c in self.coords)
        return bool(np.all(self.coords == 0.0))

    def to_float(self) -> "Element":
        """Convert to the orthonormal float frame."""
        if self.mode == FLOAT:
            return self
        raw = np.array([float(c) for c in self.coords])
        return Element(self.algebra, raw * self.algebra._scale, FLOAT)

    def __repr__(self):
        return f"Element({self.algebra.spec}, {list(self.coords)!r}, {self.mode})"


@dataclass
class JordanFrame:
    """Complete system of orthogonal primitive idempotents."""

    idempotents: list

    def __len__(self):
        return len(self.idempotents)

    def __getitem__(self, i):
        return self.idempotents[i]

    def partial_unit(self, i: int) -> Element:
        """e[i] = e_11 + ... + e_ii."""
        acc = self.idempotents[0]
        for j in range(1, i):
            acc = acc + self.idempotents[j]
        return acc


def _coords_to_int(coords):
    """Clear denominators: tuple of Fractions -> (list of int, den)."""
    den = 1
    for c in coords:
        den = den * c.denominator // math.gcd(den, c.denominator)
    return [int(c.numerator * (den // c.denominator)) for c in coords], den


class Algebra:
    """A simple euclidean Jordan algebra with both coordinate frames built."""

    def __init__(self, spec: AlgebraSpec):
        self.spec = spec
        self.rho, self.delta, self.dim = spec.table
        if spec.family == "gamma":
            c2, gram, labels, ident = _build_spin(spec.k)
        else:
            c2, gram, labels, ident = _build_hermitian(spec.k, _DIVISION_DIM[spec.family])
        n = self.dim
        assert c2.shape == (n, n, n)
        self._c2 = c2
        self.gram = tuple(gram)
        self.basis = tuple(labels)
        self.identity_coords = tuple(ident)
        self._scale = np.sqrt(np.array([float(g) for g in gram]))
        half = c2.astype(np.float64) / 2.0
        self._con = half * self._scale[None, None, :] / (self._scale[:, None, None] * self._scale[None, :, None])
        self._c_obj = None
        self._cache = {}

    # --- constructors ---------------------------------------------------

    def element(self, coords, mode: str = EXACT) -> Element:
        if mode == EXACT:
            coords = [c if isinstance(c, CQ) else Fraction(c) for c in coords]
        return Element(self, coords, mode)

    def zero(self, mode: str = EXACT) -> Element:
        if mode == EXACT:
            return self.element([0] * self.dim)
        return Element(self, np.zeros(self.dim), FLOAT)

    def identity(self, mode: str = EXACT) -> Element:
        if mode == EXACT:
            return self.element(self.identity_coords)
        return Element(self, np.array([float(c) for c in self.identity_coords]) * self._scale, FLOAT)

    def basis_element(self, alpha: int, mode: str = EXACT) -> Element:
        coords = [Fraction(0)] * self.dim
        coords[alpha] = Fraction(1)
        e = self.element(coords)
        return e if mode == EXACT else e.to_float()

    def random_element(self, rng, mode: str = EXACT, span: int = 9, denominator: int = 1) -> Element:
        """Deterministic random element: integer coords in [-span, span] over
        the given denominator (exact) or standard normal coords (float)."""
        if mode == FLOAT:
            return Element(self, rng.standard_normal(self.dim), FLOAT)
        nums = rng.integers(-span, span + 1, self.dim)
        return self.element([Fraction(int(v), denominator) for v in nums])

    # --- products ---------------------------------------------------------

    def product(self, u: Element, v: Element) -> Element:
        u._check(v)
        if u.mode == FLOAT:
            w = np.einsum("abg,a,b->g", self._con, u.coords, v.coords)
            return Element(self, w, FLOAT)
        return Element(self, self._product_exact(u.coords, v.coords), EXACT)

    def _product_exact(self, uc, vc):
        if all(isinstance(c, Fraction) for c in uc) and all(isinstance(c, Fraction) for c in vc):
            unum, ud = _coords_to_int(uc)
            vnum, vd = _coords_to_int(vc)
            mu, mv = max(map(abs, unum), default=0), max(map(abs, vnum), default=0)
            den = 2 * ud * vd
            if mu * mv * 4 * self.dim * self.dim < 2**62 and mu < 2**31 and mv < 2**31:
                w = np.einsum("abg,a,b->g",
                              self._c2, np.asarray(unum, dtype=np.int64), np.asarray(vnum, dtype=np.int64))
                return tuple(Fraction(int(x), den) for x in w)
            uo = np.array(unum, dtype=object)
            vo = np.array(vnum, dtype=object)
            w = np.tensordot(self._c2_object(), uo, axes=([0], [0])).T @ vo
            return tuple(Fraction(x, den) for x in w)
        # generic path (CQ or mixed scalars)
        uo = np.array(uc, dtype=object)
        vo = np.array(vc, dtype=object)
        w = np.tensordot(self._c_object(), uo, axes=([0], [0])).T @ vo
        return tuple(w)

    def _c2_object(self):
        if self._c_obj is None:
            self._c_obj = self._c2.astype(object)
        return self._c_obj

    def lmul_matrix(self, u: Element):
        """Matrix of L_u: v -> uv, in the frame of u's mode."""
        if u.mode == FLOAT:
            return np.tensordot(self._con, u.coords, axes=([0], [0])).T
        if all(isinstance(c, Fraction) for c in u.coords):
            unum, ud = _coords_to_int(u.coords)
            m2 = np.tensordot(self._c2_object(), np.array(unum, dtype=object), axes=([0], [0])).T
            den = 2 * ud
            out = np.empty((self.dim, self.dim), dtype=object)
            for i in range(self.dim):
                for j in range(self.dim):
                    out[i, j] = Fraction(m2[i, j], den)
            return out
        uo = np.array(u.coords, dtype=object)
        return np.tensordot(self._c_object(), uo, axes=([0], [0])).T

    def _c_object(self):
        key = "c_object"
        if key not in self._cache:
            n = self.dim
            out = np.empty((n, n, n), dtype=object)
            for idx, v in np.ndenumerate(self._c2):
                out[idx] = Fraction(int(v), 2)
            self._cache[key] = out
        return self._cache[key]

    def smul_matrix(self, u: Element, v: Element):
        """S_uv = [L_u, L_v] + L_{uv}."""
        u._check(v)
        lu = self.lmul_matrix(u)
        lv = self.lmul_matrix(v)
        luv = self.lmul_matrix(self.product(u, v))
        return lu @ lv - lv @ lu + luv

    def triple(self, u: Element, v: Element, w: Element) -> Element:
        """Jordan triple product {uvw} = S_uv w = u(vw) - v(uw) + (uv)w."""
        p = self.product
        return p(u, p(v, w)) - p(v, p(u, w)) + p(p(u, v), w)

    def apply_matrix(self, m, x: Element) -> Element:
        if x.mode == FLOAT:
            return Element(self, m @ x.coords, FLOAT)
        xo = np.array(x.coords, dtype=object)
        return Element(self, m @ xo, EXACT)

    # --- trace, inner product, spectral invariants -------------------------

    def inner(self, u: Element, v: Element):
        """<u|v> = tr(uv)/rho."""
        u._check(v)
        if u.mode == FLOAT:
            return float(u.coords @ v.coords)
        acc = Fraction(0)
        for g, a, b in zip(self.gram, u.coords, v.coords):
            acc = acc + g * a * b
        return acc

    def trace(self, u: Element):
        e = self.identity(u.mode)
        return self.rho * self.inner(u, e)

    def quad_rep(self, x: Element):
        """P(x) = 2 L_x^2 - L_{x^2}."""
        lx = self.lmul_matrix(x)
        lx2 = self.lmul_matrix(self.product(x, x))
        return 2 * (lx @ lx) - lx2

    def power_traces(self, x: Element, m: int) -> list:
        """[tr x, tr x^2, ..., tr x^m]."""
        out = []
        p = x
        for j in range(m):
            out.append(self.trace(p))
            if j < m - 1:
                p = self.product(p, x)
        return out

    def power_trace(self, x: Element, m: int):
        if m < 1:
            raise DomainError("power_trace needs m >= 1")
        return self.power_traces(x, m)[-1]

    def sym_c(self, x: Element, k: int):
        """c_k(x): k-th elementary symmetric function of the Jordan eigenvalues,
        as the Newton polynomial in tr x .. tr x^k."""
        if not 1 <= k <= self.rho:
            raise DomainError(f"sym_c needs 1 <= k <= rho = {self.rho}")
        return elementary_from_power(self.power_traces(x, k), k)[-1]

    def sym_tau(self, x: Element, k: int):
        """tau_k(x) = prod_{i<j<=k} (lam_i + lam_j) via its power-sum polynomial."""
        if not 1 <= k <= self.rho:
            raise DomainError(f"sym_tau needs 1 <= k <= rho = {self.rho}")
        return tau_poly(k).value(self.power_traces(x, k))

    def det(self, x: Element):
        """det x = product of the Jordan eigenvalues = c_rho(x)."""
        return self.sym_c(x, self.rho)

    def eigenvalues(self, x: Element) -> np.ndarray:
        """Jordan eigenvalues (float, descending), as roots of the
        characteristic polynomial rebuilt from power traces."""
        xf = x.to_float()
        p = [float(t) for t in self.power_traces(xf, self.rho)]
        e = elementary_from_power(p, self.rho)
        coeffs = [1.0]
        for j, ej in enumerate(e):
            coeffs.append((-1) ** (j + 1) * ej)
        roots = np.roots(coeffs)
        if np.max(np.abs(roots.imag)) > 1e-7 * (1 + np.max(np.abs(roots.real))):
            raise DomainError("non-real Jordan eigenvalues; input is not a valid element")
        return np.sort(roots.real)[::-1]

    # --- frames and Peirce data -------------------------------------------

    def jordan_frame(self) -> JordanFrame:
        """Canonical frame: diagonal matrix units, or (1/2, +-1/2 e_1) for spin."""
        if self.spec.family == "gamma":
            n = self.dim
            c1 = [Fraction(0)] * n
            c2 = [Fraction(0)] * n
            c1[0] = c2[0] = Fraction(1, 2)
            c1[1] = Fraction(1, 2)
            c2[1] = Fraction(-1, 2)
            return JordanFrame([self.element(c1), self.element(c2)])
        idem = [self.basis_element(i) for i in range(self.rho)]
        return JordanFrame(idem)

    def jordan_basis(self, frame: JordanFrame | None = None) -> list:
        """Float-mode Jordan basis with Peirce labels.

        Returns (label, element) pairs; every vector has squared length 1/rho.
        Only the canonical frame is supported.
        """
        if frame is None:
            frame = self.jordan_frame()
        out = []
        inv_sqrt2 = 1.0 / math.sqrt(2.0)
        if self.spec.family == "gamma":
            out.append(("V11", frame[0].to_float()))
            out.append(("V22", frame[1].to_float()))
            for j in range(2, self.dim):
                out.append((f"V12:{j-2}", self.basis_element(j, FLOAT).scaled(inv_sqrt2)))
            return out
        k, d = self.spec.k, self.delta
        for i in range(k):
            out.append((f"V{i+1}{i+1}", frame[i].to_float()))
        pos = k
        for i in range(k):
            for j in range(i + 1, k):
                for mu in range(d):
                    out.append((f"V{i+1}{j+1}:{mu}", self.basis_element(pos, FLOAT).scaled(inv_sqrt2)))
                    pos += 1
        return out

    def peirce_projection(self, i: int, frame: JordanFrame | None = None):
        """Orthogonal projection onto V_i, the eigenvalue-1 eigenspace of
        L_{e[i]}: the spectral polynomial 2L^2 - L (eigenvalues 0, 1/2, 1)."""
        if frame is None:
            frame = self.jordan_frame()
        if not 1 <= i <= self.rho:
            raise DomainError(f"peirce_projection needs 1 <= i <= rho = {self.rho}")
        lm = self.lmul_matrix(frame.partial_unit(i))
        return 2 * (lm @ lm) - lm

    def principal_minor(self, x: Element, i: int):
        """Delta_i(x): determinant of the projection of x to the rank-i
        subalgebra V_i, computed inside that subalgebra."""
        if not 1 <= i <= self.rho:
            raise DomainError(f"principal_minor needs 1 <= i <= rho = {self.rho}")
        proj = self.peirce_projection(i)
        if x.mode == FLOAT:
            proj = _matrix_to_float(proj, self._scale)
        y = self.apply_matrix(proj, x)
        return elementary_from_power(self.power_traces(y, i), i)[-1]

    def delta_m(self, x: Element, m) -> object:
        """Delta_m = prod_i Delta_i^{m_i - m_{i+1}} for m_1 >= ... >= m_rho >= 0."""
        m = list(m)
        if len(m) != self.rho or any(m[i] < m[i + 1] for i in range(len(m) - 1)) or m[-1] < 0:
            raise DomainError("multi-index must satisfy m_1 >= ... >= m_rho >= 0")
        if not any(m):
            return Fraction(1) if x.mode == EXACT else 1.0
        acc = Fraction(1) if x.mode == EXACT else 1.0
        m.append(0)
        for i in range(1, self.rho + 1):
            power = m[i - 1] - m[i]
            if power:
                acc = acc * self.principal_minor(x, i) ** power
        return acc

    # --- automorphisms ------------------------------------------------------

    def automorphism_sample(self, seed: int, magnitude: float = 1.0) -> np.ndarray:
        """exp of a random derivation sum c_i [L_{u_i}, L_{v_i}] (float frame).

        Derivations are antisymmetric, so the result is orthogonal, fixes the
        identity and preserves Jordan products.
        """
        from scipy.linalg import expm

        rng = np.random.default_rng(seed)
        d = np.zeros((self.dim, self.dim))
        for _ in range(3):
            u = self.random_element(rng, FLOAT)
            v = self.random_element(rng, FLOAT)
            lu, lv = self.lmul_matrix(u), self.lmul_matrix(v)
            d += rng.uniform(-1.0, 1.0) * (lu @ lv - lv @ lu)
        norm = np.linalg.norm(d)
        if norm > 0:
            d *= magnitude / max(1.0, norm / 2.0)
        else:
            d *= magnitude
        return expm(d)

    # --- misc ----------------------------------------------------------------

    def dual_triple_tensor(self, u: Element):
        """T[a,b,g]: coefficient of x^g d_a d_b in <x|{D u D}> where D pairs
        derivatives with the metric-dual basis.  Exact object array."""
        n = self.dim
        t = np.empty((n, n, n), dtype=object)
        ginv = [1 / g for g in self.gram]
        for a in range(n):
            s = self.smul_matrix(self.basis_element(a), u)
            for b in range(n):
                for g in range(n):
                    t[a, b, g] = s[g, b] * self.gram[g] * ginv[a] * ginv[b]
        return t

    def e_perp_basis(self) -> list:
        """Rational elements spanning the trace-free hyperplane e-perp."""
        e = self.identity()
        out = []
        for a in range(self.dim):
            b = self.basis_element(a)
            w = b - e.scaled(self.inner(b, e))
            if not w.is_zero():
                out.append(w)
        return out

    def __repr__(self):
        return f"Algebra({self.spec}, rho={self.rho}, delta={self.delta}, n={self.dim})"


def _matrix_to_float(m, scale):
    """Rational-frame exact matrix -> orthonormal-frame float matrix."""
    mf = np.array([[float(x) for x in row] for row in m])
    return scale[:, None] * mf / scale[None, :]


def _build_spin(k: int):
    n = k + 1
    c2 = np.zeros((n, n, n), dtype=np.int64)
    c2[0, 0, 0] = 2
    for i in range(1, n):
        c2[0, i, i] = c2[i, 0, i] = 2
        c2[i, i, 0] = 2
    gram = [Fraction(1)] * n
    labels = ["s"] + [f"v{i}" for i in range(1, n)]
    ident = [Fraction(1)] + [Fraction(0)] * k
    return c2, gram, labels, ident


def _build_hermitian(k: int, ddim: int):
    basis, labels = _hermitian_basis(k, ddim)
    n = len(basis)
    c2 = np.zeros((n, n, n), dtype=np.int64)
    for a in range(n):
        for b in range(a, n):
            p = _sym_prod(basis[a], basis[b], k, ddim)
            co = _decompose(p, k, ddim)
            for g in range(n):
                c = co[g]
                if c:
                    twice = 2 * c
                    if twice.denominator != 1:
                        raise AssertionError("structure constant denominator exceeds 2")
                    c2[a, b, g] = c2[b, a, g] = int(twice)
    gram = [Fraction(1, k)] * k + [Fraction(2, k)] * (n - k)
    ident = [Fraction(1)] * k + [Fraction(0)] * (n - k)
    return c2, gram, labels, ident


def _hermitian_basis(k: int, ddim: int):
    basis, labels = [], []
    zrow = [divalg.zero(ddim)] * k

    def zmat():
        return [list(zrow) for _ in range(k)]

    for i in range(k):
        m = zmat()
        m[i][i] = divalg.unit(ddim)
        basis.append(m)
        labels.append(f"E{i+1}{i+1}")
    for i in range(k):
        for j in range(i + 1, k):
            for mu in range(ddim):
                q = divalg.unit(ddim, mu)
                m = zmat()
                m[i][j] = q
                m[j][i] = divalg.conj(q)
                basis.append(m)
                labels.append(f"F{i+1}{j+1}:{mu}")
    return basis, labels


def _sym_prod(a, b, k: int, ddim: int):
    out = [[divalg.zero(ddim) for _ in range(k)] for _ in range(k)]
    for i in range(k):
        for j in range(k):
            acc = divalg.zero(ddim)
            for l in range(k):
                acc = divalg.add(acc, divalg.mul(a[i][l], b[l][j], ddim))
                acc = divalg.add(acc, divalg.mul(b[i][l], a[l][j], ddim))
            out[i][j] = divalg.scale(Fraction(1, 2), acc)
    return out


def _decompose(m, k: int, ddim: int):
    coords = []
    for i in range(k):
        if any(m[i][i][t] for t in range(1, ddim)):
            raise AssertionError("hermitian product has non-real diagonal")
        coords.append(m[i][i][0])
    for i in range(k):
        for j in range(i + 1, k):
            coords.extend(m[i][j])
    return coords


def make_algebra(spec) -> Algebra:
    """Build an algebra from an AlgebraSpec or a spec string."""
    if isinstance(spec, str):
        spec = AlgebraSpec.parse(spec)
    return Algebra(spec)
