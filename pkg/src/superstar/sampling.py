"""Deterministic random samples for the verification suites.

Every sampler takes a numpy Generator; suites seed it from the CLI flag /
environment variable, so identical seeds reproduce identical reports.
"""

from __future__ import annotations

import numpy as np

from .exppoly import ExpPolyFunction
from .grassmann import AuxOddRing, GrassmannElement
from .starprod import DeformationContext
from .superfun import Superfunction

__all__ = [
    "random_even",
    "random_gaussian_even",
    "random_plane_wave_even",
    "random_poly_even",
    "random_star_factor",
    "random_oracle_factor",
    "random_integrable_factor",
    "random_odd_aux_shifts",
]


def _random_alpha(rng: np.random.Generator, d: int, max_total: int) -> tuple[int, ...]:
    """Exponent vector with bounded TOTAL degree.

    Chained deformed products multiply polynomial term counts, so samples keep
    the total degree small; the identities under test are about class mixing
    and signs, not about degree growth.
    """
    if d == 0:
        return ()
    alpha = [0] * d
    for _ in range(int(rng.integers(0, max_total + 1))):
        alpha[int(rng.integers(0, d))] += 1
    return tuple(alpha)


def random_gaussian_even(rng: np.random.Generator, d: int) -> ExpPolyFunction:
    """Absolutely integrable Gaussian term with mild oscillation and polynomial."""
    L = rng.normal(size=(d, d)) * 0.35
    S = rng.normal(size=(d, d)) * 0.2
    A = -(L @ L.T + 0.45 * np.eye(d)) + 0.5j * (S + S.T)
    b = 0.6 * (rng.normal(size=d) + 1j * rng.normal(size=d))
    alpha = _random_alpha(rng, d, 1)
    c = complex(rng.normal(), rng.normal())
    return ExpPolyFunction.monomial(d, alpha, c) * ExpPolyFunction.gaussian(d, A, b)


def random_plane_wave_even(rng: np.random.Generator, d: int,
                           nwaves: int = 1) -> ExpPolyFunction:
    out = ExpPolyFunction.zero(d)
    for _ in range(nwaves):
        k = rng.uniform(-2.0, 2.0, size=d)
        c = complex(rng.normal(), rng.normal())
        out = out + ExpPolyFunction.plane_wave(d, k, c)
    return out


def random_poly_even(rng: np.random.Generator, d: int, max_deg: int = 2) -> ExpPolyFunction:
    out = ExpPolyFunction.zero(d)
    for _ in range(int(rng.integers(1, 3))):
        alpha = _random_alpha(rng, d, max_deg)
        c = complex(rng.normal(), rng.normal())
        out = out + ExpPolyFunction.monomial(d, alpha, c)
    return out


def random_even(rng: np.random.Generator, d: int, kind: str) -> ExpPolyFunction:
    if kind == "gaussian":
        return random_gaussian_even(rng, d)
    if kind == "pw":
        return random_plane_wave_even(rng, d)
    if kind == "poly":
        return random_poly_even(rng, d)
    raise ValueError(f"unknown kind {kind!r}")


def random_star_factor(rng: np.random.Generator, ctx: DeformationContext,
                       kinds=("gaussian", "pw", "poly"), naux: int = 0,
                       max_words: int = 2) -> Superfunction:
    """Random factor mixing the even classes with odd monomials."""
    d = 2 * ctx.m
    width = ctx.n + naux
    terms = {}
    kind_of: dict[int, str] = {}
    for _ in range(int(rng.integers(1, max_words + 1))):
        word = int(rng.integers(0, 1 << width)) if width else 0
        # keep each coefficient in a single class so the series oracle accepts it
        kind = kind_of.setdefault(word, kinds[int(rng.integers(0, len(kinds)))])
        f = random_even(rng, d, kind)
        terms[word] = terms.get(word, ExpPolyFunction.zero(d)) + f
    return Superfunction(d, ctx.n, terms, naux)


def random_oracle_factor(rng: np.random.Generator, ctx: DeformationContext,
                         naux: int = 0) -> Superfunction:
    """Factor in the oracle overlap class: each coefficient pure poly or pure waves."""
    return random_star_factor(rng, ctx, kinds=("pw", "poly"), naux=naux)


def random_integrable_factor(rng: np.random.Generator, ctx: DeformationContext,
                             naux: int = 0) -> Superfunction:
    """Factor whose coefficients all decay (for tracial-property samples)."""
    return random_star_factor(rng, ctx, kinds=("gaussian",), naux=naux)


def random_odd_aux_shifts(rng: np.random.Generator, n: int,
                          ring: AuxOddRing) -> list[GrassmannElement]:
    """One odd auxiliary shift per ambient odd coordinate."""
    shifts = []
    for _ in range(n):
        s = ring.zero()
        for j in range(1, ring.N + 1):
            if rng.random() < 0.6:
                s = s + ring.gen(j).scale(complex(rng.normal(), rng.normal()))
        shifts.append(s)
    return shifts
