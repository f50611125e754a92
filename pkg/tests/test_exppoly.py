"""Exact calculus on the polynomial-times-Gaussian class, with quadrature oracles."""

import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from scipy import integrate as sint

from superstar.errors import DivergenceError
from superstar.exppoly import (
    ExpPolyFunction,
    ExpPolyTerm,
    ep_derive,
    ep_equal,
    ep_integrate,
    ep_integrate_partial,
    ep_max_dev,
    ep_mul,
    ep_translate,
)

RNG = np.random.default_rng(20260817)


def quad_oracle(f: ExpPolyFunction, lim: float = 30.0) -> complex:
    """Adaptive quadrature over R^d for d in {1, 2} (test oracle only)."""
    if f.d == 1:
        re, _ = sint.quad(lambda x: f.eval(np.array([[x]]))[0].real, -lim, lim, limit=400)
        im, _ = sint.quad(lambda x: f.eval(np.array([[x]]))[0].imag, -lim, lim, limit=400)
        return complex(re, im)
    if f.d == 2:
        re, _ = sint.dblquad(lambda y, x: f.eval(np.array([[x, y]]))[0].real,
                             -lim, lim, -lim, lim)
        im, _ = sint.dblquad(lambda y, x: f.eval(np.array([[x, y]]))[0].imag,
                             -lim, lim, -lim, lim)
        return complex(re, im)
    raise NotImplementedError


def random_integrable(rng, d: int, nterms: int = 1, *, max_deg: int = 2,
                      imag_quad: float = 0.3) -> ExpPolyFunction:
    """Random absolutely integrable function: Re(A) strictly negative definite."""
    terms = []
    for _ in range(nterms):
        L = rng.normal(size=(d, d)) * 0.5
        S = rng.normal(size=(d, d)) * imag_quad
        A = -(L @ L.T + 0.4 * np.eye(d)) + 1j * (S + S.T) / 2
        b = rng.normal(size=d) + 1j * rng.normal(size=d)
        alpha = tuple(int(a) for a in rng.integers(0, max_deg + 1, size=d))
        c = complex(rng.normal(), rng.normal())
        from superstar.exppoly import _ut_from_matrix  # test-local shortcut
        terms.append(ExpPolyTerm(c, alpha, _ut_from_matrix(A), tuple(map(complex, b))))
    return ExpPolyFunction(d, terms)


# ---------------------------------------------------------------------------
# integration examples


def test_gaussian_integral_sqrt_pi():
    f = ExpPolyFunction.gaussian(1, [[-1.0]])
    assert abs(ep_integrate(f) - math.sqrt(math.pi)) < 1e-12
    assert abs(ep_integrate(f) - quad_oracle(f)) < 1e-12


def test_odd_moment_vanishes():
    f = ExpPolyFunction.coordinate(1, 0) * ExpPolyFunction.gaussian(1, [[-1.0]])
    assert abs(ep_integrate(f)) < 1e-14


def test_even_moments_match_known_values():
    g = ExpPolyFunction.gaussian(1, [[-1.0]])
    x2 = ExpPolyFunction.monomial(1, (2,)) * g
    x4 = ExpPolyFunction.monomial(1, (4,)) * g
    assert abs(ep_integrate(x2) - math.sqrt(math.pi) / 2) < 1e-12
    assert abs(ep_integrate(x4) - 3 * math.sqrt(math.pi) / 4) < 1e-12


@pytest.mark.parametrize("b", [0.3, 1.1, 2.5])
def test_shifted_gaussian(b):
    f = ExpPolyFunction.gaussian(1, [[-1.0]], [b])
    want = math.sqrt(math.pi) * math.exp(b * b / 4)
    assert abs(ep_integrate(f) - want) < 1e-12 * want
    assert abs(ep_integrate(f) - quad_oracle(f)) < 1e-9 * want


def test_divergent_integrals_raise():
    with pytest.raises(DivergenceError):
        ep_integrate(ExpPolyFunction.gaussian(1, [[0.0]], [1.0]))  # e^x
    with pytest.raises(DivergenceError):
        ep_integrate(ExpPolyFunction.one(1))
    with pytest.raises(DivergenceError):
        ep_integrate(ExpPolyFunction.plane_wave(1, [2.0]))


def test_fresnel_integral():
    # int e^{i x^2} dx = sqrt(pi) e^{i pi/4}
    f = ExpPolyFunction.gaussian(1, [[1j]])
    want = math.sqrt(math.pi) * np.exp(1j * math.pi / 4)
    assert abs(ep_integrate(f) - want) < 1e-12
    # epsilon-regularized oracle: A = i - eps, analytic value for each eps
    for eps in [1e-3, 1e-5]:
        reg = ExpPolyFunction.gaussian(1, [[1j - eps]])
        assert abs(ep_integrate(reg) - math.sqrt(math.pi) / np.sqrt(eps - 1j)) < 1e-12


def test_fresnel_with_coupled_real_direction():
    # e^{-x^2 + 2ixy}: Re(A) is singular PSD but A invertible; the y-integral
    # of the x-Gaussian times plane wave must agree with the iterated value
    # int dx dy e^{-x^2+2ixy} g(y) computed against an explicit narrow Gaussian.
    A = np.array([[-1.0, 1j], [1j, 0.0]])
    f = ExpPolyFunction.gaussian(2, A)
    assert f.fresnel_ok and not f.integrable
    # int dx e^{-x^2+2ixy} = sqrt(pi) e^{-y^2}; then int dy sqrt(pi) e^{-y^2} = pi
    assert abs(ep_integrate(f) - math.pi) < 1e-12


def test_integrability_flags():
    assert ExpPolyFunction.gaussian(1, [[-2.0]]).terms[0].integrable
    t = ExpPolyFunction.gaussian(1, [[1j]]).terms[0]
    assert not t.integrable and t.fresnel
    t0 = ExpPolyFunction.one(1).terms[0]
    assert not t0.integrable and not t0.fresnel


def test_quadrature_agreement_random():
    rng = np.random.default_rng(7)
    for i in range(25):
        d = 1 + (i % 2)
        f = random_integrable(rng, d, nterms=1 + (i % 2))
        exact = ep_integrate(f)
        approx = quad_oracle(f)
        assert abs(exact - approx) <= 1e-9 * max(1.0, abs(exact)), (i, d)


def test_translation_invariance_of_integral():
    rng = np.random.default_rng(11)
    for i in range(50):
        d = 1 + (i % 3)
        f = random_integrable(rng, d, nterms=1 + (i % 2))
        a = rng.normal(size=d)
        lhs = ep_integrate(ep_translate(f, a))
        rhs = ep_integrate(f)
        assert abs(lhs - rhs) <= 1e-12 * max(1.0, abs(rhs)), (i, d)


def test_integral_of_derivative_vanishes():
    rng = np.random.default_rng(13)
    for i in range(50):
        d = 1 + (i % 3)
        f = random_integrable(rng, d)
        mu = int(rng.integers(0, d))
        val = ep_integrate(ep_derive(f, mu))
        assert abs(val) <= 1e-12 * max(1.0, _scale_of(f)), (i, d)


def _scale_of(f):
    return max((abs(t.c) for t in f.terms), default=1.0)


def test_partial_integration_consistency():
    rng = np.random.default_rng(17)
    for _ in range(10):
        f = random_integrable(rng, 3)
        full = ep_integrate(f)
        partial = ep_integrate(ep_integrate_partial(f, [1]))
        assert abs(full - partial) <= 1e-11 * max(1.0, abs(full))
        # integrate axes one at a time in a different order
        step = ep_integrate_partial(ep_integrate_partial(f, [2]), [0])
        assert abs(ep_integrate(step) - full) <= 1e-11 * max(1.0, abs(full))


def test_partial_integration_pointwise_against_quadrature():
    rng = np.random.default_rng(19)
    f = random_integrable(rng, 2)
    g = ep_integrate_partial(f, [0])  # function of the old axis 1
    for y in [-0.7, 0.0, 1.3]:
        section_re, _ = sint.quad(
            lambda x: f.eval(np.array([[x, y]]))[0].real, -30, 30, limit=400)
        section_im, _ = sint.quad(
            lambda x: f.eval(np.array([[x, y]]))[0].imag, -30, 30, limit=400)
        assert abs(g.eval(np.array([y])) - complex(section_re, section_im)) < 1e-9


# ---------------------------------------------------------------------------
# algebra: product, translate, derive


def test_mul_examples():
    x = ExpPolyFunction.coordinate(1, 0)
    pw = ExpPolyFunction.plane_wave(1, [2.0])
    assert ep_mul(x * pw, x) == ep_mul(ExpPolyFunction.monomial(1, (2,)), pw)
    g = ExpPolyFunction.gaussian(1, [[-1.0]])
    assert ep_mul(g, g) == ExpPolyFunction.gaussian(1, [[-2.0]])


def test_mul_merges_duplicate_keys():
    x = ExpPolyFunction.coordinate(1, 0)
    s = x + x
    assert len(s.terms) == 1 and s.terms[0].c == 2


def random_exact_term(rng, d: int) -> ExpPolyFunction:
    """Term with small-integer data: float ops on it are exact, so structural
    equality of reassociated products is meaningful."""
    from superstar.exppoly import _ut_from_matrix
    A = rng.integers(-2, 3, size=(d, d)).astype(float)
    A = (A + A.T) / 2 + 1j * 0.0
    b = rng.integers(-2, 3, size=d).astype(complex)
    alpha = tuple(int(a) for a in rng.integers(0, 2, size=d))
    c = complex(int(rng.integers(-3, 4)) or 1)
    return ExpPolyFunction(d, [ExpPolyTerm(c, alpha, _ut_from_matrix(A), tuple(b))])


def test_mul_commutative_associative_structural():
    rng = np.random.default_rng(23)
    for _ in range(20):
        f = random_exact_term(rng, 2)
        g = random_exact_term(rng, 2)
        h = random_exact_term(rng, 2)
        assert ep_mul(f, g) == ep_mul(g, f)
        assert ep_mul(ep_mul(f, g), h) == ep_mul(f, ep_mul(g, h))
    # generic float data: commutative structurally, associative pointwise
    for _ in range(10):
        f = random_integrable(rng, 2)
        g = random_integrable(rng, 2)
        h = random_integrable(rng, 2)
        assert ep_mul(f, g) == ep_mul(g, f)
        assert ep_equal(ep_mul(ep_mul(f, g), h), ep_mul(f, ep_mul(g, h)), tol=1e-10)


def test_translate_examples():
    x2 = ExpPolyFunction.monomial(1, (2,))
    a = 0.7
    shifted = ep_translate(x2, [a])
    want = (ExpPolyFunction.monomial(1, (2,))
            + ExpPolyFunction.monomial(1, (1,), 2 * a)
            + ExpPolyFunction.const(1, a * a))
    assert shifted == want

    k = 1.3
    pw = ExpPolyFunction.plane_wave(1, [k])
    assert ep_equal(ep_translate(pw, [a]), pw.scale(np.exp(1j * k * a)), tol=1e-14)


def test_translate_group_law():
    rng = np.random.default_rng(29)
    for _ in range(10):
        f = random_integrable(rng, 2, nterms=2)
        a = rng.normal(size=2)
        assert ep_max_dev(ep_translate(ep_translate(f, a), -a), f) < 1e-12


def test_derive_examples():
    x2 = ExpPolyFunction.monomial(1, (2,))
    assert ep_derive(x2, 0) == ExpPolyFunction.monomial(1, (1,), 2.0)
    g = ExpPolyFunction.gaussian(1, [[-1.0]])
    want = ExpPolyFunction.monomial(1, (1,), -2.0) * g
    assert ep_derive(g, 0) == want


def test_derive_commutes_with_translate():
    rng = np.random.default_rng(31)
    for _ in range(10):
        f = random_integrable(rng, 2, nterms=2)
        a = rng.normal(size=2)
        lhs = ep_derive(ep_translate(f, a), 1)
        rhs = ep_translate(ep_derive(f, 1), a)
        assert ep_max_dev(lhs, rhs) < 1e-11


def test_affine_substitution_pointwise():
    rng = np.random.default_rng(37)
    f = random_integrable(rng, 2, nterms=2)
    M = rng.normal(size=(2, 3))
    v = rng.normal(size=2)
    g = f.affine(M, v, 3)
    pts = rng.normal(size=(20, 3))
    assert np.max(np.abs(g.eval(pts) - f.eval(pts @ M.T + v))) < 1e-10


@settings(max_examples=100, deadline=None)
@given(st.lists(st.tuples(st.integers(0, 2), st.integers(0, 2),
                          st.integers(-3, 3)), min_size=1, max_size=3),
       st.lists(st.tuples(st.integers(0, 2), st.integers(0, 2),
                          st.integers(-3, 3)), min_size=1, max_size=3))
def test_product_pointwise(spec_f, spec_g):
    def build(spec):
        f = ExpPolyFunction.zero(2)
        for a0, a1, c in spec:
            f = f + ExpPolyFunction.monomial(2, (a0, a1), float(c))
        return f
    f, g = build(spec_f), build(spec_g)
    pts = np.linspace(-1, 1, 7).reshape(-1, 1) * np.ones((1, 2))
    assert np.max(np.abs(ep_mul(f, g).eval(pts) - f.eval(pts) * g.eval(pts))) < 1e-12


# ---------------------------------------------------------------------------
# serialization & equality


def test_json_roundtrip():
    rng = np.random.default_rng(41)
    f = random_integrable(rng, 2, nterms=2)
    g = ExpPolyFunction.from_json_dict(f.to_json_dict())
    assert f == g


def test_ep_equal_structural_and_grid():
    x = ExpPolyFunction.coordinate(1, 0)
    assert ep_equal(x, x)
    # same function, structurally different term split
    f = ExpPolyFunction.monomial(1, (1,), 2.0)
    g = x + x
    assert ep_equal(f, g)
    assert not ep_equal(f, x)


def test_chop_drops_noise_terms():
    f = ExpPolyFunction.coordinate(1, 0) + ExpPolyFunction.const(1, 1e-18)
    assert len(f.chop().terms) == 1
