"""Closed even-variable function class: sums of c * x^alpha * exp(x^T A x + b.x).

The class is closed under products, affine substitutions, derivatives, and —
the point of the exercise — exact Gaussian/Fresnel integration over any subset
of variables.  Oscillatory (Fresnel) integrals are evaluated as the closed-form
epsilon-regularization limit A -> A - eps*Id, eps -> 0+, with the determinant
prefactor tracked per eigenvalue on the principal square-root branch; no
numeric limits anywhere.

Conventions: a term stores the quadratic form A as the upper triangle of a
symmetric matrix, so x^T A x carries the full cross coefficient (the (i,j) and
(j,i) entries both contribute).  ``b`` is the linear form, ``alpha`` the
monomial exponent.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import pi
from typing import Iterable, Mapping, Sequence

import numpy as np

from .errors import DivergenceError

__all__ = [
    "ExpPolyFunction",
    "ExpPolyTerm",
    "ep_derive",
    "ep_equal",
    "ep_integrate",
    "ep_integrate_partial",
    "ep_mul",
    "ep_translate",
]

# Relative threshold deciding "zero" for eigenvalue/definiteness questions.
_EIG_TOL = 1e-12
# Relative magnitude below which accumulated float-noise terms may be dropped
# by chop(); never applied implicitly.
_CHOP_REL = 1e-14


def _ut_index(i: int, j: int, d: int) -> int:
    """Index of (i,j), i <= j, in the row-major flattened upper triangle."""
    return i * d - (i * (i - 1)) // 2 + (j - i)


def _ut_from_matrix(A: np.ndarray) -> tuple[complex, ...]:
    d = A.shape[0]
    sym = 0.5 * (A + A.T)
    return tuple(complex(sym[i, j]) for i in range(d) for j in range(i, d))


def _matrix_from_ut(ut: Sequence[complex], d: int) -> np.ndarray:
    A = np.zeros((d, d), dtype=complex)
    k = 0
    for i in range(d):
        for j in range(i, d):
            A[i, j] = ut[k]
            A[j, i] = ut[k]
            k += 1
    return A


@dataclass(frozen=True)
class ExpPolyTerm:
    """One term c * x^alpha * exp(x^T A x + b.x) on R^d.

    ``A_ut`` is the flattened upper triangle of the symmetric matrix A.
    """

    c: complex
    alpha: tuple[int, ...]
    A_ut: tuple[complex, ...]
    b: tuple[complex, ...]

    @property
    def d(self) -> int:
        return len(self.alpha)

    def A_matrix(self) -> np.ndarray:
        return _matrix_from_ut(self.A_ut, self.d)

    @property
    def key(self):
        return (self.alpha, self.A_ut, self.b)

    @property
    def integrable(self) -> bool:
        """Absolutely integrable: Re(A) negative definite."""
        if self.d == 0:
            return True
        re = np.real(self.A_matrix())
        return bool(np.max(np.linalg.eigvalsh(re)) < -_EIG_TOL)

    @property
    def fresnel(self) -> bool:
        """Epsilon-regularized limit exists in closed form.

        Criterion: Re(A) negative semidefinite and A invertible.  Along
        A - eps*Id the Gaussian formula is exact for every eps > 0 and each
        determinant eigenvalue converges on the principal branch, so the
        limit exists iff no eigenvalue of A hits zero.
        """
        if self.d == 0:
            return True
        A = self.A_matrix()
        if np.max(np.linalg.eigvalsh(np.real(A))) > _EIG_TOL:
            return False
        mu = np.linalg.eigvals(-A)
        scale = max(1.0, float(np.max(np.abs(mu))) if mu.size else 1.0)
        return bool(np.min(np.abs(mu)) > _EIG_TOL * scale)

    def __repr__(self):
        return f"ExpPolyTerm(c={self.c!r}, alpha={self.alpha}, A_ut={self.A_ut}, b={self.b})"


def _merge_terms(d: int, terms: Iterable[ExpPolyTerm]) -> tuple[ExpPolyTerm, ...]:
    acc: dict[tuple, complex] = {}
    for t in terms:
        if len(t.alpha) != d:
            raise ValueError(f"term dimension {len(t.alpha)} != {d}")
        acc[t.key] = acc.get(t.key, 0j) + complex(t.c)
    out = [ExpPolyTerm(c, *key) for key, c in acc.items() if c != 0]
    out.sort(key=lambda t: (
        t.alpha,
        tuple((z.real, z.imag) for z in t.A_ut),
        tuple((z.real, z.imag) for z in t.b),
    ))
    return tuple(out)


class ExpPolyFunction:
    """Finite sum of :class:`ExpPolyTerm` on R^d, kept in merged normal form."""

    __slots__ = ("d", "terms")

    def __init__(self, d: int, terms: Iterable[ExpPolyTerm] = ()):
        if d < 0:
            raise ValueError("dimension must be >= 0")
        self.d = d
        self.terms = _merge_terms(d, terms)

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls, d: int) -> "ExpPolyFunction":
        return cls(d, ())

    @classmethod
    def const(cls, d: int, c) -> "ExpPolyFunction":
        zero_alpha = (0,) * d
        zero_A = (0j,) * (d * (d + 1) // 2)
        zero_b = (0j,) * d
        return cls(d, (ExpPolyTerm(complex(c), zero_alpha, zero_A, zero_b),))

    @classmethod
    def one(cls, d: int) -> "ExpPolyFunction":
        return cls.const(d, 1.0)

    @classmethod
    def monomial(cls, d: int, alpha: Sequence[int], c=1.0) -> "ExpPolyFunction":
        alpha = tuple(int(a) for a in alpha)
        if len(alpha) != d or any(a < 0 for a in alpha):
            raise ValueError("bad exponent")
        zero_A = (0j,) * (d * (d + 1) // 2)
        zero_b = (0j,) * d
        return cls(d, (ExpPolyTerm(complex(c), alpha, zero_A, zero_b),))

    @classmethod
    def coordinate(cls, d: int, axis: int) -> "ExpPolyFunction":
        alpha = [0] * d
        alpha[axis] = 1
        return cls.monomial(d, alpha)

    @classmethod
    def gaussian(cls, d: int, A, b=None, c=1.0) -> "ExpPolyFunction":
        """c * exp(x^T A x + b.x); A any square array-like (symmetrized)."""
        A = np.asarray(A, dtype=complex).reshape(d, d)
        bvec = np.zeros(d, dtype=complex) if b is None else np.asarray(b, dtype=complex)
        return cls(d, (ExpPolyTerm(complex(c), (0,) * d, _ut_from_matrix(A),
                                   tuple(complex(x) for x in bvec)),))

    @classmethod
    def plane_wave(cls, d: int, k: Sequence[float], c=1.0) -> "ExpPolyFunction":
        """c * exp(i k.x) for a real wave vector k."""
        b = tuple(1j * complex(ki) for ki in k)
        zero_A = (0j,) * (d * (d + 1) // 2)
        return cls(d, (ExpPolyTerm(complex(c), (0,) * d, zero_A, b),))

    # -- ring structure ------------------------------------------------------

    def __add__(self, other):
        if isinstance(other, ExpPolyFunction):
            if other.d != self.d:
                raise ValueError(f"dimension mismatch: {self.d} vs {other.d}")
            return ExpPolyFunction(self.d, self.terms + other.terms)
        return NotImplemented

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return self.scale(-1.0)

    def scale(self, c) -> "ExpPolyFunction":
        c = complex(c)
        return ExpPolyFunction(
            self.d, (ExpPolyTerm(c * t.c, t.alpha, t.A_ut, t.b) for t in self.terms))

    def __mul__(self, other):
        if isinstance(other, ExpPolyFunction):
            return ep_mul(self, other)
        return self.scale(other)

    def __rmul__(self, other):
        return self.scale(other)

    def conj(self) -> "ExpPolyFunction":
        """Pointwise complex conjugate (the argument x is real)."""
        return ExpPolyFunction(
            self.d,
            (ExpPolyTerm(t.c.conjugate(), t.alpha,
                         tuple(z.conjugate() for z in t.A_ut),
                         tuple(z.conjugate() for z in t.b))
             for t in self.terms))

    def chop(self, rel: float = _CHOP_REL) -> "ExpPolyFunction":
        """Drop terms whose coefficient is negligible relative to the largest."""
        if not self.terms:
            return self
        top = max(abs(t.c) for t in self.terms)
        keep = tuple(t for t in self.terms if abs(t.c) > rel * top)
        out = ExpPolyFunction.__new__(ExpPolyFunction)
        out.d = self.d
        out.terms = keep
        return out

    @property
    def is_zero(self) -> bool:
        return not self.terms

    @property
    def integrable(self) -> bool:
        return all(t.integrable for t in self.terms)

    @property
    def fresnel_ok(self) -> bool:
        return all(t.integrable or t.fresnel for t in self.terms)

    def max_degree(self) -> int:
        return max((sum(t.alpha) for t in self.terms), default=0)

    # -- calculus ------------------------------------------------------

    def derive(self, mu: int) -> "ExpPolyFunction":
        if not 0 <= mu < self.d:
            raise ValueError(f"axis {mu} out of range for d={self.d}")
        out = []
        for t in self.terms:
            A = t.A_matrix()
            if t.alpha[mu] > 0:
                alpha = list(t.alpha)
                alpha[mu] -= 1
                out.append(ExpPolyTerm(t.c * t.alpha[mu], tuple(alpha), t.A_ut, t.b))
            # chain rule: d/dx_mu exp(x^T A x + b.x) = (2(Ax)_mu + b_mu) * exp(..)
            if t.b[mu] != 0:
                out.append(ExpPolyTerm(t.c * t.b[mu], t.alpha, t.A_ut, t.b))
            for j in range(self.d):
                aij = A[mu, j]
                if aij != 0:
                    alpha = list(t.alpha)
                    alpha[j] += 1
                    out.append(ExpPolyTerm(2 * t.c * aij, tuple(alpha), t.A_ut, t.b))
        return ExpPolyFunction(self.d, out)

    def affine(self, M, v, new_d: int | None = None) -> "ExpPolyFunction":
        """Exact substitution x -> M y + v, returning a function of y.

        M has shape (self.d, new_d) and may be rectangular (embeddings,
        evaluations); v has length self.d.
        """
        v = np.asarray(v, dtype=complex).reshape(self.d)
        if new_d is None:
            M = np.asarray(M, dtype=complex).reshape(self.d, -1)
            new_d = M.shape[1]
        else:
            M = np.asarray(M, dtype=complex).reshape(self.d, new_d)
        out = []
        for t in self.terms:
            A = t.A_matrix()
            b = np.asarray(t.b)
            A_new = M.T @ A @ M
            b_new = M.T @ (2 * A @ v + b)
            c_exp = complex(v @ A @ v + b @ v)
            base_c = t.c * np.exp(c_exp)
            A_ut = _ut_from_matrix(A_new)
            b_t = tuple(complex(x) for x in b_new)
            # polynomial part: prod_i (M[i,:].y + v_i)^alpha_i
            rows = [(complex(v[i]), M[i, :]) for i in range(self.d) if t.alpha[i] > 0]
            powers = [t.alpha[i] for i in range(self.d) if t.alpha[i] > 0]
            for expo, coeff in _affine_monomial_expand(rows, powers, new_d).items():
                out.append(ExpPolyTerm(base_c * coeff, expo, A_ut, b_t))
        return ExpPolyFunction(new_d, out)

    def translate(self, a) -> "ExpPolyFunction":
        """f(x) -> f(x + a)."""
        return self.affine(np.eye(self.d), a, self.d)

    def integrate_partial(self, axes: Sequence[int]) -> "ExpPolyFunction":
        return ep_integrate_partial(self, axes)

    def integrate(self) -> complex:
        return ep_integrate(self)

    # -- evaluation / serialization ---------------------------------------

    def eval(self, points):
        """Evaluate at an (N, d) array of real points -> (N,) complex array.

        A single point (1-d array of length d) returns a complex scalar.
        """
        pts = np.asarray(points, dtype=float)
        if self.d == 0:
            total = complex(sum((t.c for t in self.terms), 0j))
            return total if pts.ndim <= 1 else np.full(pts.shape[0], total, dtype=complex)
        single = pts.ndim == 1
        if single:
            pts = pts.reshape(1, self.d)
        vals = np.zeros(pts.shape[0], dtype=complex)
        for t in self.terms:
            A = t.A_matrix()
            quad = np.einsum("ni,ij,nj->n", pts, A, pts) + pts @ np.asarray(t.b)
            mono = np.ones(pts.shape[0], dtype=complex)
            for i, a in enumerate(t.alpha):
                if a:
                    mono = mono * pts[:, i] ** a
            vals += t.c * mono * np.exp(quad)
        return complex(vals[0]) if single else vals

    def to_json_dict(self) -> dict:
        return {
            "d": self.d,
            "terms": [
                {
                    "c": [t.c.real, t.c.imag],
                    "alpha": list(t.alpha),
                    "A": [[[complex(z).real, complex(z).imag] for z in row]
                          for row in t.A_matrix().tolist()],
                    "b": [[z.real, z.imag] for z in t.b],
                }
                for t in self.terms
            ],
        }

    @classmethod
    def from_json_dict(cls, data: Mapping) -> "ExpPolyFunction":
        d = int(data["d"])
        terms = []
        for td in data["terms"]:
            c = complex(td["c"][0], td["c"][1])
            alpha = tuple(int(a) for a in td["alpha"])
            A = np.array([[complex(re, im) for re, im in row] for row in td["A"]],
                         dtype=complex).reshape(d, d)
            b = tuple(complex(re, im) for re, im in td["b"])
            terms.append(ExpPolyTerm(c, alpha, _ut_from_matrix(A), b))
        return cls(d, terms)

    def __eq__(self, other):
        if not isinstance(other, ExpPolyFunction):
            return NotImplemented
        return self.d == other.d and self.terms == other.terms

    def __hash__(self):  # pragma: no cover
        return hash((self.d, self.terms))

    def __repr__(self):
        if not self.terms:
            return f"ExpPolyFunction(d={self.d}, 0)"
        return f"ExpPolyFunction(d={self.d}, {len(self.terms)} terms)"


# ---------------------------------------------------------------------------
# products


def ep_mul(f: ExpPolyFunction, g: ExpPolyFunction) -> ExpPolyFunction:
    """Exact pointwise product: exponents add, quadratic/linear data add."""
    if f.d != g.d:
        raise ValueError(f"dimension mismatch: {f.d} vs {g.d}")
    out = []
    for s in f.terms:
        for t in g.terms:
            alpha = tuple(a + b for a, b in zip(s.alpha, t.alpha))
            A_ut = tuple(a + b for a, b in zip(s.A_ut, t.A_ut))
            b = tuple(a + b for a, b in zip(s.b, t.b))
            out.append(ExpPolyTerm(s.c * t.c, alpha, A_ut, b))
    return ExpPolyFunction(f.d, out)


def ep_translate(f: ExpPolyFunction, a) -> ExpPolyFunction:
    return f.translate(a)


def ep_derive(f: ExpPolyFunction, mu: int) -> ExpPolyFunction:
    return f.derive(mu)


# ---------------------------------------------------------------------------
# exact Gaussian/Fresnel integration


def _principal_sqrt(z: complex) -> complex:
    """Principal branch square root; on the epsilon path Re(z) >= 0 always."""
    return complex(np.sqrt(complex(z)))


def _poly_derive(H: dict, i: int) -> dict:
    out: dict[tuple, complex] = {}
    for gamma, h in H.items():
        if gamma[i]:
            g = list(gamma)
            g[i] -= 1
            key = tuple(g)
            out[key] = out.get(key, 0j) + h * gamma[i]
    return out


def _poly_mul_linear(H: dict, coeffs: np.ndarray) -> dict:
    """Multiply a polynomial in s by the linear form sum_j coeffs[j] * s_j."""
    out: dict[tuple, complex] = {}
    for gamma, h in H.items():
        for j, cj in enumerate(coeffs):
            if cj == 0:
                continue
            g = list(gamma)
            g[j] += 1
            key = tuple(g)
            out[key] = out.get(key, 0j) + h * cj
    return out


def _moment_poly(C: np.ndarray, beta: Sequence[int]) -> dict:
    """H_beta with int y^beta e^{y^T A y + s.y} dy = H_beta(s) * Z * e^{-s^T C s/4}.

    Recursion from differentiating under the integral in s:
    H_{beta+e_i} = dH/ds_i - (1/2)(C s)_i * H,  H_0 = 1,  C = A^{-1}.
    """
    ell = len(beta)
    H: dict[tuple, complex] = {(0,) * ell: 1.0 + 0j}
    for i in range(ell):
        for _ in range(beta[i]):
            dH = _poly_derive(H, i)
            lin = _poly_mul_linear(H, -0.5 * C[i, :])
            out = dict(dH)
            for k, v in lin.items():
                out[k] = out.get(k, 0j) + v
            H = {k: v for k, v in out.items() if v != 0}
    return H


def _affine_monomial_expand(rows, powers, k: int) -> dict[tuple, complex]:
    """Expand prod_i (const_i + vec_i . u)^{p_i} as {u-exponent: coeff} on R^k."""
    acc: dict[tuple, complex] = {(0,) * k: 1.0 + 0j}
    for (const, vec), p in zip(rows, powers):
        # linear factor as exponent dict
        factor: dict[tuple, complex] = {}
        if const != 0:
            factor[(0,) * k] = complex(const)
        for j in range(k):
            if vec[j] != 0:
                e = [0] * k
                e[j] = 1
                factor[tuple(e)] = complex(vec[j])
        for _ in range(p):
            nxt: dict[tuple, complex] = {}
            for e1, c1 in acc.items():
                for e2, c2 in factor.items():
                    e = tuple(a + b for a, b in zip(e1, e2))
                    nxt[e] = nxt.get(e, 0j) + c1 * c2
            acc = nxt
            if not acc:
                break
    return acc


def ep_integrate_partial(f: ExpPolyFunction, axes: Sequence[int]) -> ExpPolyFunction:
    """Integrate out the given axes exactly; remaining axes keep their order.

    Per term the integral over y (the selected axes) of
    y^beta e^{y^T Ayy y + s(u).y} is evaluated by the Gaussian moment formula
    with Z = pi^{l/2} / prod_j sqrt(mu_j), mu_j the eigenvalues of -Ayy on the
    principal square-root branch (the epsilon-regularization limit), and the
    moment polynomial recursion of :func:`_moment_poly`; the result is an
    ExpPolyFunction of the kept variables u.

    Raises DivergenceError when a term is neither integrable nor Fresnel on
    the integrated block.
    """
    axes = sorted(set(int(a) for a in axes))
    if any(a < 0 or a >= f.d for a in axes):
        raise ValueError(f"axes {axes} out of range for d={f.d}")
    if not axes:
        return f
    keep = [i for i in range(f.d) if i not in axes]
    k, ell = len(keep), len(axes)
    out_terms: list[ExpPolyTerm] = []
    for t in f.terms:
        A = t.A_matrix()
        b = np.asarray(t.b)
        Ayy = A[np.ix_(axes, axes)]
        # admissibility of the integrated block
        re_eigs = np.linalg.eigvalsh(np.real(Ayy))
        mu = np.linalg.eigvals(-Ayy)
        scale = max(1.0, float(np.max(np.abs(mu))))
        if np.max(re_eigs) > _EIG_TOL * scale or np.min(np.abs(mu)) <= _EIG_TOL * scale:
            raise DivergenceError(
                f"term neither integrable nor Fresnel on integrated block: {t!r}")
        Auu = A[np.ix_(keep, keep)]
        Auy = A[np.ix_(keep, axes)]
        C = np.linalg.inv(Ayy)
        Z = pi ** (ell / 2) / np.prod([_principal_sqrt(m) for m in mu])
        b_u = b[keep]
        b_y = b[axes]
        beta = [t.alpha[a] for a in axes]
        H = _moment_poly(C, beta)
        # s(u) = b_y + B u with B = 2 Auy^T
        B = 2.0 * Auy.T
        A_new = Auu - Auy @ C @ Auy.T
        b_new = b_u - Auy @ (C @ b_y)
        const = t.c * Z * np.exp(-0.25 * complex(b_y @ C @ b_y))
        A_ut = _ut_from_matrix(A_new) if k else ()
        b_t = tuple(complex(x) for x in b_new)
        alpha_u = tuple(t.alpha[i] for i in keep)
        for gamma, h in H.items():
            rows = [(complex(b_y[i]), B[i, :]) for i in range(ell) if gamma[i] > 0]
            powers = [gamma[i] for i in range(ell) if gamma[i] > 0]
            for expo, coeff in _affine_monomial_expand(rows, powers, k).items():
                total = tuple(a + e for a, e in zip(alpha_u, expo))
                out_terms.append(ExpPolyTerm(const * h * coeff, total, A_ut, b_t))
    return ExpPolyFunction(k, out_terms)


def ep_integrate(f: ExpPolyFunction) -> complex:
    """Exact integral over all of R^d."""
    if f.d == 0:
        return complex(sum((t.c for t in f.terms), 0j))
    reduced = ep_integrate_partial(f, range(f.d))
    return complex(sum((t.c for t in reduced.terms), 0j))


# ---------------------------------------------------------------------------
# equality


def sample_grid(d: int, npts: int = 64, span: float = 1.5) -> np.ndarray:
    """Deterministic comparison grid (fixed per dimension)."""
    rng = np.random.default_rng(12345 + d)
    return rng.uniform(-span, span, size=(npts, d))


def ep_equal(f: ExpPolyFunction, g: ExpPolyFunction, tol: float = 1e-10) -> bool:
    """Structural equality of normal forms, else pointwise on the fixed grid."""
    if f.d != g.d:
        return False
    if f.terms == g.terms:
        return True
    return ep_max_dev(f, g) <= tol


def ep_max_dev(f: ExpPolyFunction, g: ExpPolyFunction) -> float:
    """Max absolute deviation on the fixed comparison grid."""
    if f.d != g.d:
        raise ValueError("dimension mismatch")
    if f.d == 0:
        return abs(complex(sum(t.c for t in f.terms)) - complex(sum(t.c for t in g.terms)))
    grid = sample_grid(f.d)
    return float(np.max(np.abs(f.eval(grid) - g.eval(grid))))
