"""The conformal (TKK) Lie algebra co(V) = V + str(V) + V* as a bracket algebra.

Elements are triples (X_u part, structure-algebra part, Y_v part).  The
bracket is fixed by

    [X_u, X_v] = 0,  [Y_u, Y_v] = 0,  [X_u, Y_v] = -2 S_uv,
    [S, X_z] = X_{Sz},  [S, Y_z] = -Y_{S'z},  [S, S'] = matrix commutator,

where S' denotes the adjoint with respect to <.|.>.  Structure-algebra parts
are certified to lie in span{S_uv} at construction: exact solve against a
row-reduced basis in rational mode, least-squares residual in float mode.

Complexified generators (the sl2 root triples, which carry an explicit i)
are represented over complex-rational scalars.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .algebra import EXACT, FLOAT, Algebra, Element, MismatchError
from .scalars import CQ


class ConsistencyError(RuntimeError):
    """A bracket left the certified structure-algebra span."""


# --- structure-algebra span ---------------------------------------------------

class _ExactSpan:
    """Row-reduced spanning set over Q with exact membership tests."""

    def __init__(self, vectors):
        self.rows = {}  # pivot index -> reduced row (object ndarray)
        for v in vectors:
            self.insert(v)

    def _reduce(self, v):
        v = np.array(v, dtype=object)
        for piv, row in self.rows.items():
            c = v[piv]
            if c:
                v = v - c * row
        return v

    def insert(self, v) -> bool:
        v = self._reduce(v)
        piv = next((i for i, c in enumerate(v) if c), None)
        if piv is None:
            return False
        self.rows[piv] = v * (1 / Fraction(v[piv]))
        return True

    def contains(self, v) -> bool:
        return all(not c for c in self._reduce(v))

    @property
    def rank(self) -> int:
        return len(self.rows)


def _str_span_exact(alg: Algebra) -> _ExactSpan:
    key = "str_span_exact"
    if key not in alg._cache:
        gens = []
        for a in range(alg.dim):
            ba = alg.basis_element(a)
            for b in range(alg.dim):
                s = alg.smul_matrix(ba, alg.basis_element(b))
                gens.append(s.reshape(-1))
        alg._cache[key] = _ExactSpan(gens)
    return alg._cache[key]


def _str_span_float(alg: Algebra) -> np.ndarray:
    """Orthonormal basis (columns) of the flattened float S_uv span."""
    key = "str_span_float"
    if key not in alg._cache:
        n = alg.dim
        gens = np.empty((n * n, n * n))
        col = 0
        for a in range(n):
            ba = alg.basis_element(a, FLOAT)
            for b in range(n):
                s = alg.smul_matrix(ba, alg.basis_element(b, FLOAT))
                gens[:, col] = s.reshape(-1)
                col += 1
        u, sv, _ = np.linalg.svd(gens, full_matrices=False)
        rank = int(np.sum(sv > 1e-8 * sv[0]))
        alg._cache[key] = u[:, :rank]
    return alg._cache[key]


def dim_str(alg: Algebra) -> int:
    """Dimension of the structure algebra span{S_uv} (float SVD rank)."""
    return _str_span_float(alg).shape[1]


def dim_co(alg: Algebra) -> int:
    """dim co(V) = 2 dim V + dim str(V)."""
    return 2 * alg.dim + dim_str(alg)


def _certify(alg: Algebra, matrix, mode: str):
    if mode == FLOAT:
        q = _str_span_float(alg)
        flat = np.asarray(matrix, dtype=np.float64).reshape(-1)
        resid = flat - q @ (q.T @ flat)
        scale = max(1.0, float(np.linalg.norm(flat)))
        if np.linalg.norm(resid) > 1e-10 * scale:
            raise ConsistencyError("matrix is not in span{S_uv} (residual too large)")
        return
    span = _str_span_exact(alg)
    flat = np.asarray(matrix, dtype=object).reshape(-1)
    if any(isinstance(c, CQ) for c in flat):
        re = np.array([c.re if isinstance(c, CQ) else Fraction(c) for c in flat], dtype=object)
        im = np.array([c.im if isinstance(c, CQ) else Fraction(0) for c in flat], dtype=object)
        if not (span.contains(re) and span.contains(im)):
            raise ConsistencyError("matrix is not in span{S_uv}")
        return
    if not span.contains(flat):
        raise ConsistencyError("matrix is not in span{S_uv}")


class StrElement:
    """Endomorphism certified to lie in the structure algebra."""

    __slots__ = ("algebra", "matrix", "mode")

    def __init__(self, algebra: Algebra, matrix, mode: str, _certified: bool = False):
        self.algebra = algebra
        self.mode = mode
        if mode == FLOAT:
            self.matrix = np.asarray(matrix, dtype=np.float64)
        else:
            self.matrix = np.asarray(matrix, dtype=object)
        if not _certified:
            _certify(algebra, self.matrix, mode)

    @classmethod
    def zero(cls, algebra: Algebra, mode: str = EXACT):
        n = algebra.dim
        if mode == FLOAT:
            return cls(algebra, np.zeros((n, n)), mode, _certified=True)
        z = np.full((n, n), Fraction(0), dtype=object)
        return cls(algebra, z, mode, _certified=True)

    def adjoint_matrix(self):
        """Adjoint with respect to <.|.>: diagonal-Gram conjugated transpose."""
        if self.mode == FLOAT:
            return self.matrix.T.copy()
        g = self.algebra.gram
        n = self.algebra.dim
        out = np.empty((n, n), dtype=object)
        for i in range(n):
            for j in range(n):
                out[i, j] = self.matrix[j, i] * g[j] / g[i]
        return out

    def is_zero(self) -> bool:
        if self.mode == FLOAT:
            return bool(np.all(self.matrix == 0.0))
        return all(not c for c in self.matrix.flat)


class CoElement:
    """(u, M, v) in V + str(V) + V*: coefficients of X_u, an endomorphism, Y_v."""

    __slots__ = ("algebra", "x_part", "str_part", "y_part", "mode")

    def __init__(self, x_part: Element, str_part: StrElement, y_part: Element):
        if x_part.algebra is not str_part.algebra or x_part.algebra is not y_part.algebra:
            raise MismatchError("CoElement parts belong to different algebras")
        if not (x_part.mode == str_part.mode == y_part.mode):
            raise MismatchError("CoElement parts have mixed scalar modes")
        self.algebra = x_part.algebra
        self.x_part = x_part
        self.str_part = str_part
        self.y_part = y_part
        self.mode = x_part.mode

    @classmethod
    def x(cls, u: Element):
        return cls(u, StrElement.zero(u.algebra, u.mode), u.algebra.zero(u.mode))

    @classmethod
    def y(cls, v: Element):
        return cls(v.algebra.zero(v.mode), StrElement.zero(v.algebra, v.mode), v)

    @classmethod
    def s(cls, u: Element, v: Element):
        m = u.algebra.smul_matrix(u, v)
        return cls(u.algebra.zero(u.mode),
                   StrElement(u.algebra, m, u.mode, _certified=True),
                   u.algebra.zero(u.mode))

    @classmethod
    def from_matrix(cls, alg: Algebra, m, mode: str = EXACT):
        return cls(alg.zero(mode), StrElement(alg, m, mode), alg.zero(mode))

    def __add__(self, other: "CoElement"):
        return CoElement(self.x_part + other.x_part,
                         StrElement(self.algebra, self.str_part.matrix + other.str_part.matrix,
                                    self.mode, _certified=True),
                         self.y_part + other.y_part)

    def __sub__(self, other: "CoElement"):
        return CoElement(self.x_part - other.x_part,
                         StrElement(self.algebra, self.str_part.matrix - other.str_part.matrix,
                                    self.mode, _certified=True),
                         self.y_part - other.y_part)

    def __neg__(self):
        return self.scaled(-1)

    def scaled(self, c):
        return CoElement(self.x_part.scaled(c),
                         StrElement(self.algebra, c * self.str_part.matrix, self.mode, _certified=True),
                         self.y_part.scaled(c))

    def is_zero(self) -> bool:
        return self.x_part.is_zero() and self.str_part.is_zero() and self.y_part.is_zero()

    def __eq__(self, other):
        if not isinstance(other, CoElement):
            return NotImplemented
        return (self - other).is_zero()

    def __repr__(self):
        return f"CoElement({self.algebra.spec}, x={list(self.x_part.coords)}, y={list(self.y_part.coords)})"


def co_bracket(a: CoElement, b: CoElement) -> CoElement:
    """Lie bracket on co(V); antisymmetric, satisfies the Jacobi identity."""
    if a.algebra is not b.algebra:
        raise MismatchError("CoElements belong to different algebras")
    if a.mode != b.mode:
        raise MismatchError("mixed-mode bracket is rejected")
    alg = a.algebra
    m1, m2 = a.str_part.matrix, b.str_part.matrix
    x_out = alg.apply_matrix(m1, b.x_part) - alg.apply_matrix(m2, a.x_part)
    y_out = alg.apply_matrix(b.str_part.adjoint_matrix(), a.y_part) \
        - alg.apply_matrix(a.str_part.adjoint_matrix(), b.y_part)
    m_out = m1 @ m2 - m2 @ m1 \
        - 2 * alg.smul_matrix(a.x_part, b.y_part) \
        + 2 * alg.smul_matrix(b.x_part, a.y_part)
    return CoElement(x_out, StrElement(alg, m_out, a.mode), y_out)


def cartan_involution(a: CoElement) -> CoElement:
    """theta: X_u -> Y_u, Y_u -> X_u, S_uv -> -S_vu (adjoint negation)."""
    return CoElement(a.y_part,
                     StrElement(a.algebra, -a.str_part.adjoint_matrix(), a.mode, _certified=True),
                     a.x_part)


@dataclass
class RootData:
    """Distinguished sl2 triples: the center direction and the alpha_0 root."""

    h_e: CoElement
    e_plus: CoElement
    e_minus: CoElement
    h_alpha0: CoElement
    e_plus_alpha0: CoElement
    e_minus_alpha0: CoElement


def root_data(alg: Algebra, frame=None) -> RootData:
    """H_e = i(X_e + Y_e), E_+- = (i/2)(X_e - Y_e) -+ S_ee, and the same
    construction over the first frame idempotent for the alpha_0 triple."""
    if frame is None:
        frame = alg.jordan_frame()
    i = CQ(0, 1)
    half_i = CQ(0, Fraction(1, 2))

    def triple_for(c: Element):
        h = CoElement.x(c.scaled(i)) + CoElement.y(c.scaled(i))
        s = CoElement.s(c, alg.identity())
        e_p = CoElement.x(c.scaled(half_i)) - CoElement.y(c.scaled(half_i)) - s
        e_m = CoElement.x(c.scaled(half_i)) - CoElement.y(c.scaled(half_i)) + s
        return h, e_p, e_m

    h_e, e_plus, e_minus = triple_for(alg.identity())
    h_a, e_pa, e_ma = triple_for(frame[0])
    return RootData(h_e, e_plus, e_minus, h_a, e_pa, e_ma)


def random_co_element(alg: Algebra, rng, span: int = 5) -> CoElement:
    """Random exact CoElement with a certified random structure part."""
    x = alg.random_element(rng, span=span)
    y = alg.random_element(rng, span=span)
    m = CoElement.s(alg.random_element(rng, span=span), alg.random_element(rng, span=span))
    return CoElement.x(x) + CoElement.y(y) + m
