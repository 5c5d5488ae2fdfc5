from fractions import Fraction as Fr

import numpy as np
import pytest

from jkepler.algebra import (FLOAT, AlgebraSpec, Element, MismatchError,
                             DomainError, SpecificationError, make_algebra)

ALL_SPECS = ["gamma:2", "gamma:3", "gamma:5", "h:1:R", "h:3:R", "h:3:C", "h:3:H", "h:3:O"]

TABLE = {
    "gamma:2": (2, 1, 3),
    "gamma:3": (2, 2, 4),
    "gamma:5": (2, 4, 6),
    "h:1:R": (1, 1, 1),
    "h:3:R": (3, 1, 6),
    "h:3:C": (3, 2, 9),
    "h:3:H": (3, 4, 15),
    "h:3:O": (3, 8, 27),
}


# --- spec parsing and the classification table ----------------------------------

@pytest.mark.parametrize("spec,expected", sorted(TABLE.items()))
def test_rank_degree_dimension(algebra, spec, expected):
    alg = algebra(spec)
    assert (alg.rho, alg.delta, alg.dim) == expected
    # Peirce dimension count
    assert alg.dim == alg.rho + alg.rho * (alg.rho - 1) * alg.delta // 2


@pytest.mark.parametrize("bad", ["gamma:1", "h:2:R", "h:2:C", "h:1:H", "h:4:O", "h:2:O"])
def test_invalid_specs_rejected(bad):
    with pytest.raises(SpecificationError):
        make_algebra(bad)


def test_parse_grammar():
    assert str(AlgebraSpec.parse("gamma:7")) == "gamma:7"
    assert str(AlgebraSpec.parse("h:3:H")) == "h:3:H"
    assert str(AlgebraSpec.parse("H:3:o")) == "h:3:O"
    with pytest.raises(SpecificationError):
        AlgebraSpec.parse("spin:3")
    with pytest.raises(SpecificationError):
        AlgebraSpec.parse("h:3")


def test_sym_real_1_is_the_reals(algebra):
    alg = algebra("h:1:R")
    assert alg.dim == 1
    e = alg.identity()
    assert e.coords == (Fr(1),)
    assert alg.det(e) == 1


# --- element algebra --------------------------------------------------------------

@pytest.mark.parametrize("spec", ALL_SPECS)
def test_identity_and_axioms_random(algebra, spec):
    alg = algebra(spec)
    e = alg.identity()
    assert alg.inner(e, e) == 1
    rng = np.random.default_rng(11)
    for _ in range(50):
        u = alg.random_element(rng)
        v = alg.random_element(rng)
        w = alg.random_element(rng, denominator=3)
        assert alg.product(e, u) == u
        assert u * v == v * u
        u2 = u * u
        assert u * (u2 * w) == u2 * (u * w)
        assert alg.inner(v * u, w) == alg.inner(v, u * w)


def test_l_e_is_identity_matrix(algebra):
    alg = algebra("h:3:C")
    le = alg.lmul_matrix(alg.identity())
    n = alg.dim
    for i in range(n):
        for j in range(n):
            assert le[i, j] == (1 if i == j else 0)


def test_mode_and_algebra_mismatch(algebra):
    a3 = algebra("gamma:3")
    a2 = algebra("gamma:2")
    rng = np.random.default_rng(0)
    u = a3.random_element(rng)
    with pytest.raises(MismatchError):
        u * a2.random_element(rng)
    with pytest.raises(MismatchError):
        u * a3.random_element(rng, FLOAT)
    with pytest.raises(MismatchError):
        u.scaled(0.5)


def test_spin_product_closed_form(algebra):
    # (lam, u)(mu, v) = (lam mu + u.v, lam v + mu u)
    alg = algebra("gamma:5")
    rng = np.random.default_rng(1)
    for _ in range(20):
        a = alg.random_element(rng)
        b = alg.random_element(rng)
        lam, mu = a.coords[0], b.coords[0]
        uvec, vvec = a.coords[1:], b.coords[1:]
        got = (a * b).coords
        assert got[0] == lam * mu + sum(x * y for x, y in zip(uvec, vvec))
        assert got[1:] == tuple(lam * y + mu * x for x, y in zip(uvec, vvec))


def _clifford_gammas(k):
    """Hermitian anticommuting gamma_i for R^k (complex, for the oracle only)."""
    sx = np.array([[0, 1], [1, 0]], dtype=complex)
    sy = np.array([[0, -1j], [1j, 0]], dtype=complex)
    sz = np.array([[1, 0], [0, -1]], dtype=complex)
    gammas = [sx, sy, sz]
    while len(gammas) < k:
        old = gammas
        m = old[0].shape[0]
        gammas = [np.kron(g, sz) for g in old[:-1]]
        gammas += [np.kron(old[-1], sz)]
        gammas += [np.kron(np.eye(m, dtype=complex), sx), np.kron(np.eye(m, dtype=complex), sy)]
    return gammas[:k]


@pytest.mark.parametrize("spec", ["gamma:3", "gamma:5"])
def test_spin_product_against_clifford_oracle(algebra, spec):
    alg = algebra(spec)
    k = alg.spec.k
    gam = _clifford_gammas(k)
    m = gam[0].shape[0]
    for i in range(k):
        for j in range(k):
            want = 2 * np.eye(m) if i == j else np.zeros((m, m))
            assert np.allclose(gam[i] @ gam[j] + gam[j] @ gam[i], want)

    def embed(el):
        c = [float(x) for x in el.coords]
        return c[0] * np.eye(m, dtype=complex) + sum(ci * g for ci, g in zip(c[1:], gam))

    rng = np.random.default_rng(4)
    for _ in range(10):
        a = alg.random_element(rng)
        b = alg.random_element(rng)
        mprod = 0.5 * (embed(a) @ embed(b) + embed(b) @ embed(a))
        got = embed(a * b)
        assert np.allclose(mprod, got, atol=1e-9)


def test_symreal3_product_matches_matrix_oracle(algebra):
    alg = algebra("h:3:R")
    rng = np.random.default_rng(5)

    def to_matrix(el):
        c = el.coords
        return np.array([[c[0], c[3], c[4]],
                         [c[3], c[1], c[5]],
                         [c[4], c[5], c[2]]], dtype=object)

    def from_matrix(m):
        return alg.element([m[0, 0], m[1, 1], m[2, 2], m[0, 1], m[0, 2], m[1, 2]])

    for _ in range(15):
        a = alg.random_element(rng)
        b = alg.random_element(rng)
        am, bm = to_matrix(a), to_matrix(b)
        sym = (am @ bm + bm @ am)
        sym = np.array([[x / 2 for x in row] for row in sym], dtype=object)
        assert from_matrix(sym) == a * b


# --- triple product and S-operators ----------------------------------------------

@pytest.mark.parametrize("spec", ["gamma:3", "h:3:R", "h:3:C"])
def test_triple_product_identities(algebra, spec):
    alg = algebra(spec)
    rng = np.random.default_rng(6)
    e = alg.identity()
    for _ in range(15):
        u, v, z, w = (alg.random_element(rng, span=4) for _ in range(4))
        # {u e w} = uw
        assert alg.triple(u, e, w) == u * w
        # S_ue = L_u
        assert np.array_equal(alg.smul_matrix(u, e), alg.lmul_matrix(u))
        # adjoint: <S_uv x | y> = <x | S_vu y>
        suv, svu = alg.smul_matrix(u, v), alg.smul_matrix(v, u)
        assert alg.inner(alg.apply_matrix(suv, z), w) == alg.inner(z, alg.apply_matrix(svu, w))
        # [S_uv, S_zw] = S_{uvz},w - S_z,{vuw}
        szw = alg.smul_matrix(z, w)
        lhs = suv @ szw - szw @ suv
        rhs = alg.smul_matrix(alg.triple(u, v, z), w) - alg.smul_matrix(z, alg.triple(v, u, w))
        assert all(x == y for x, y in zip(lhs.flat, rhs.flat))


def test_smul_adjoint_transpose_relation_for_100_pairs(algebra):
    alg = algebra("gamma:3")
    rng = np.random.default_rng(7)
    g = alg.gram
    n = alg.dim
    for _ in range(100):
        u, v = alg.random_element(rng), alg.random_element(rng)
        suv, svu = alg.smul_matrix(u, v), alg.smul_matrix(v, u)
        for i in range(n):
            for j in range(n):
                assert g[i] * suv[i, j] == g[j] * svu[j, i]


# --- trace, inner product, quadratic representation --------------------------------

def test_spin_trace_formula(algebra):
    alg = algebra("gamma:4")
    u = alg.element([Fr(5, 2), 1, 2, 3, 4])
    assert alg.trace(u) == 5


def test_quad_rep_of_identity(algebra):
    alg = algebra("h:3:H")
    p = alg.quad_rep(alg.identity())
    n = alg.dim
    for i in range(n):
        for j in range(n):
            assert p[i, j] == (1 if i == j else 0)


def test_quad_rep_fundamental_identity_float(algebra):
    # Str-characterizing identity P(P(x)y) = P(x)P(y)P(x)
    alg = algebra("h:3:R")
    rng = np.random.default_rng(8)
    x = alg.random_element(rng, FLOAT)
    y = alg.random_element(rng, FLOAT)
    px = alg.quad_rep(x)
    pxy = alg.quad_rep(Element(alg, px @ y.coords, FLOAT))
    rhs = px @ alg.quad_rep(y) @ px
    assert np.allclose(pxy, rhs, atol=1e-9)


# --- spectral invariants -------------------------------------------------------------

def test_c2_and_tau1(algebra):
    alg = algebra("h:3:C")
    rng = np.random.default_rng(9)
    x = alg.random_element(rng)
    p1 = alg.power_trace(x, 1)
    p2 = alg.power_trace(x, 2)
    assert alg.sym_c(x, 2) == (p1 * p1 - p2) / 2
    assert alg.sym_tau(x, 1) == 1


def test_det_identity_element(algebra):
    for spec in ALL_SPECS:
        alg = algebra(spec)
        assert alg.det(alg.identity()) == 1


def test_spin_det_and_minimal_polynomial(algebra):
    alg = algebra("gamma:3")
    rng = np.random.default_rng(10)
    for _ in range(20):
        x = alg.random_element(rng)
        lam = x.coords[0]
        norm2 = sum(c * c for c in x.coords[1:])
        d = alg.det(x)
        assert d == lam * lam - norm2
        # minimal polynomial oracle: x^2 - (tr x) x + det(x) e = 0
        e = alg.identity()
        resid = x * x - x.scaled(alg.trace(x)) + e.scaled(d)
        assert resid.is_zero()


def test_spin_eigenvalues(algebra):
    alg = algebra("gamma:5")
    x = alg.element([Fr(3), 2, 0, 0, 1, 2])
    ev = alg.eigenvalues(x)
    assert np.allclose(sorted(ev), sorted([6.0, 0.0]))


def test_matrix_eigenvalues_match_numpy(algebra):
    alg = algebra("h:3:R")
    rng = np.random.default_rng(12)
    x = alg.random_element(rng)
    c = [float(t) for t in x.coords]
    m = np.array([[c[0], c[3], c[4]], [c[3], c[1], c[5]], [c[4], c[5], c[2]]])
    assert np.allclose(np.sort(alg.eigenvalues(x)), np.sort(np.linalg.eigvalsh(m)), atol=1e-8)


def test_sym_c_range_errors(algebra):
    alg = algebra("gamma:3")
    x = alg.identity()
    with pytest.raises(DomainError):
        alg.sym_c(x, 0)
    with pytest.raises(DomainError):
        alg.sym_tau(x, 3)


# --- frames, Jordan bases, Peirce data -----------------------------------------------

@pytest.mark.parametrize("spec", ALL_SPECS)
def test_frame_invariants(algebra, spec):
    alg = algebra(spec)
    fr = alg.jordan_frame()
    assert len(fr) == alg.rho
    total = alg.zero()
    for i, ei in enumerate(fr.idempotents):
        assert (ei * ei - ei).is_zero()
        assert alg.trace(ei) == 1
        for j in range(i):
            assert (ei * fr[j]).is_zero()
        total = total + ei
    assert total == alg.identity()


def test_symreal3_frame_is_diagonal_units(algebra):
    alg = algebra("h:3:R")
    fr = alg.jordan_frame()
    for i in range(3):
        expected = [Fr(0)] * 6
        expected[i] = Fr(1)
        assert list(fr[i].coords) == expected


def test_jordan_basis_lengths_and_peirce_dims(algebra):
    for spec in ["gamma:3", "gamma:4", "h:3:R", "h:3:O"]:
        alg = algebra(spec)
        jb = alg.jordan_basis()
        assert len(jb) == alg.dim
        for label, b in jb:
            assert abs(alg.inner(b, b) - 1.0 / alg.rho) < 1e-12
        off = [lab for lab, _ in jb if ":" in lab]
        diag = [lab for lab, _ in jb if ":" not in lab]
        assert len(diag) == alg.rho
        assert len(off) == alg.rho * (alg.rho - 1) * alg.delta // 2
    # V_12 of gamma:4 has dimension delta = 3
    alg = algebra("gamma:4")
    assert sum(1 for lab, _ in alg.jordan_basis() if lab.startswith("V12")) == 3


# --- principal minors ------------------------------------------------------------------

def test_principal_minor_basics(algebra):
    alg = algebra("h:3:R")
    e = alg.identity()
    rng = np.random.default_rng(14)
    x = alg.random_element(rng)
    for i in (1, 2, 3):
        assert alg.principal_minor(e, i) == 1
    assert alg.principal_minor(x, 3) == alg.det(x)


def test_principal_minor_on_diagonal_elements(algebra):
    alg = algebra("h:3:C")
    fr = alg.jordan_frame()
    x = fr[0].scaled(Fr(2)) + fr[1].scaled(Fr(-3)) + fr[2].scaled(Fr(7))
    assert alg.principal_minor(x, 1) == 2
    assert alg.principal_minor(x, 2) == -6
    assert alg.principal_minor(x, 3) == -42


def test_delta_m_homogeneity(algebra):
    alg = algebra("h:3:R")
    rng = np.random.default_rng(15)
    x = alg.random_element(rng)
    m = (3, 1, 0)
    t = Fr(7, 5)
    assert alg.delta_m(x.scaled(t), m) == t ** 4 * alg.delta_m(x, m)
    with pytest.raises(DomainError):
        alg.delta_m(x, (1, 2, 0))
    with pytest.raises(DomainError):
        alg.delta_m(x, (1, 0, -1))


# --- automorphisms ------------------------------------------------------------------------

@pytest.mark.parametrize("spec", ["gamma:3", "h:3:R", "h:3:O"])
def test_automorphism_sample(algebra, spec):
    alg = algebra(spec)
    g = alg.automorphism_sample(21)
    n = alg.dim
    assert np.allclose(g @ g.T, np.eye(n), atol=1e-10)
    ef = alg.identity(FLOAT)
    assert np.allclose(g @ ef.coords, ef.coords, atol=1e-10)
    rng = np.random.default_rng(3)
    u = alg.random_element(rng, FLOAT)
    v = alg.random_element(rng, FLOAT)
    gu = Element(alg, g @ u.coords, FLOAT)
    gv = Element(alg, g @ v.coords, FLOAT)
    lhs = g @ (u * v).coords
    rhs = (gu * gv).coords
    assert np.max(np.abs(lhs - rhs)) <= 1e-10 * max(1.0, np.max(np.abs(lhs)))
    # preserves inner products and determinants
    assert abs(alg.inner(gu, gv) - alg.inner(u, v)) < 1e-10
    assert abs(alg.det(gu) - alg.det(u)) <= 1e-8 * (1 + abs(alg.det(u)))


def test_automorphism_zero_magnitude_is_identity(algebra):
    alg = algebra("gamma:3")
    assert np.allclose(alg.automorphism_sample(5, magnitude=0.0), np.eye(alg.dim))


# --- frames across modes --------------------------------------------------------------------

def test_float_frame_consistency(algebra):
    for spec in ["gamma:3", "h:3:H"]:
        alg = algebra(spec)
        rng = np.random.default_rng(2)
        u = alg.random_element(rng)
        v = alg.random_element(rng)
        exact_then_convert = (u * v).to_float().coords
        convert_then_multiply = (u.to_float() * v.to_float()).coords
        assert np.allclose(exact_then_convert, convert_then_multiply, atol=1e-12)
        assert abs(float(alg.inner(u, v)) - alg.inner(u.to_float(), v.to_float())) < 1e-12
        assert abs(float(alg.det(u)) - alg.det(u.to_float())) < 1e-9 * (1 + abs(float(alg.det(u))))


def test_newton_route_matches_eigenvalue_route_on_frame_diagonal(algebra):
    # float mode, frame-diagonal elements: c_k two ways within 1e-9 relative
    from itertools import combinations
    for spec in ["gamma:3", "h:3:C", "h:3:O"]:
        alg = algebra(spec)
        fr = alg.jordan_frame()
        rng = np.random.default_rng(17)
        for _ in range(25):
            lam = rng.uniform(-2.0, 2.0, alg.rho)
            x = alg.zero(FLOAT)
            for li, ei in zip(lam, fr.idempotents):
                x = x + ei.to_float().scaled(float(li))
            for k in range(1, alg.rho + 1):
                eig_route = sum(float(np.prod(lam[list(s)]))
                                for s in combinations(range(alg.rho), k))
                newton_route = alg.sym_c(x, k)
                assert abs(newton_route - eig_route) <= 1e-9 * max(1.0, abs(eig_route))


def test_octonion_fano_convention():
    # oriented triples (1,2,3),(1,4,5),(1,7,6),(2,4,6),(2,5,7),(3,4,7),(3,6,5)
    from jkepler import divalg
    def mul_units(i, j):
        return divalg.mul(divalg.unit(8, i), divalg.unit(8, j), 8)
    for (a, b, c) in divalg.FANO_TRIPLES:
        assert mul_units(a, b) == divalg.unit(8, c)
        assert mul_units(b, c) == divalg.unit(8, a)
        assert mul_units(c, a) == divalg.unit(8, b)
        assert mul_units(b, a) == divalg.scale(-1, divalg.unit(8, c))
    for i in range(1, 8):
        assert mul_units(i, i) == divalg.scale(-1, divalg.unit(8, 0))
    # norm composition over random integer octonions
    rng = np.random.default_rng(19)
    for _ in range(30):
        a = tuple(Fr(int(x)) for x in rng.integers(-5, 6, 8))
        b = tuple(Fr(int(x)) for x in rng.integers(-5, 6, 8))
        ab = divalg.mul(a, b, 8)
        assert sum(c * c for c in ab) == sum(c * c for c in a) * sum(c * c for c in b)
