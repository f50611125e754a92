"""Inner products on superfunction spaces and superadjoints of graded operators.

Three products live here:

* ``inner_l2`` — the Berezin-Lebesgue pairing on R^{m|n}, antilinear in its
  first argument.  It is superhermitian but indefinite.
* ``scalar_J`` — the positive scalar product obtained by inserting the
  fundamental symmetry J (the odd-sector Hodge complement) in the second slot.
* ``inner_fock`` — the pairing on the holomorphic-in-zeta sector used by the
  oscillator representation: a Gaussian Berezin weight pairs each holomorphic
  generator with its conjugate.

Graded operators on finite bases get a superadjoint through the defining
relation <T' x, y> = (-1)^{|T||x|} <x, T y>, solved in closed form.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import DimensionError, ParityError, SingularityError
from .exppoly import ExpPolyFunction
from .grassmann import GrassmannElement, eps
from .superfun import Superfunction, sconj, sintegrate, smul

__all__ = [
    "inner_l2",
    "fundamental_symmetry",
    "scalar_J",
    "FockSuperfunction",
    "inner_fock",
    "GradedOperator",
    "superadjoint",
    "gram_matrix",
]


# ---------------------------------------------------------------------------
# L2 pairing and the fundamental symmetry


def inner_l2(f: Superfunction, g: Superfunction):
    """<f, g> = integral of conj(f) g over all even and odd coordinates.

    Antilinear in ``f``; returns a GrassmannElement when auxiliary odd
    parameters are present.
    """
    return sintegrate(smul(sconj(f), g))


def fundamental_symmetry(f: Superfunction) -> Superfunction:
    """J: send each ambient odd monomial to its signed complement.

    xi^I -> eps(I, I^c) xi^{I^c}.  Squares to (-1)^{(n+1)|I|} on monomials;
    no scalar twist is needed for <Jf, Jg> = <f, g> (verified over n <= 4).
    Auxiliary generators are spectators.
    """
    full = (1 << f.n) - 1
    out: dict[int, ExpPolyFunction] = {}
    for w, fn in f.terms.items():
        amb = w & full
        comp = full & ~amb
        sign = eps(amb, comp)
        nw = comp | (w & ~full)
        piece = fn.scale(sign)
        out[nw] = out[nw] + piece if nw in out else piece
    return Superfunction(f.m, f.n, out, f.naux)


def scalar_J(f: Superfunction, g: Superfunction):
    """Positive scalar product (f, g)_J = <f, J g>."""
    return inner_l2(f, fundamental_symmetry(g))


# ---------------------------------------------------------------------------
# Fock sector


@dataclass(frozen=True)
class FockSuperfunction:
    """Element of L^2(R^{m|r}) tensor the holomorphic odd sector on s generators.

    ``fun`` lives on R^{m | r+s}: bits 0..r-1 are the real odd generators,
    bits r..r+s-1 the holomorphic ones (their conjugates appear only inside
    ``inner_fock``).  Auxiliary bits ride above as usual.
    """

    m: int
    r: int
    s: int
    fun: Superfunction = field(compare=False)

    def __post_init__(self):
        if self.fun.m != self.m or self.fun.n != self.r + self.s:
            raise DimensionError(
                f"wrapped function on ({self.fun.m}|{self.fun.n}) does not match "
                f"(m, r, s) = ({self.m}, {self.r}, {self.s})")

    # -- constructors -------------------------------------------------------
    @classmethod
    def zero(cls, m: int, r: int, s: int) -> "FockSuperfunction":
        return cls(m, r, s, Superfunction.zero(m, r + s))

    @classmethod
    def one(cls, m: int, r: int, s: int) -> "FockSuperfunction":
        return cls(m, r, s, Superfunction.one(m, r + s))

    @classmethod
    def from_words(cls, m: int, r: int, s: int,
                   terms: dict[int, ExpPolyFunction],
                   naux: int = 0) -> "FockSuperfunction":
        return cls(m, r, s, Superfunction(m, r + s, terms, naux))

    @classmethod
    def xi(cls, m: int, r: int, s: int, index: int) -> "FockSuperfunction":
        if not 1 <= index <= r:
            raise ValueError(f"xi index {index} not in 1..{r}")
        return cls(m, r, s, Superfunction.xi(m, r + s, index))

    @classmethod
    def zeta(cls, m: int, r: int, s: int, index: int) -> "FockSuperfunction":
        if not 1 <= index <= s:
            raise ValueError(f"zeta index {index} not in 1..{s}")
        return cls(m, r, s, Superfunction.xi(m, r + s, r + index))

    # -- algebra ------------------------------------------------------------
    def _wrap(self, fun: Superfunction) -> "FockSuperfunction":
        return FockSuperfunction(self.m, self.r, self.s, fun)

    def __add__(self, other: "FockSuperfunction") -> "FockSuperfunction":
        return self._wrap(self.fun + other.fun)

    def __sub__(self, other: "FockSuperfunction") -> "FockSuperfunction":
        return self._wrap(self.fun - other.fun)

    def scale(self, c) -> "FockSuperfunction":
        return self._wrap(self.fun.scale(c))

    def mul(self, other: "FockSuperfunction") -> "FockSuperfunction":
        return self._wrap(smul(self.fun, other.fun))


def _embed_with_conjugates(phi: FockSuperfunction, naux: int,
                           conjugate: bool) -> Superfunction:
    """Relabel into the doubled odd algebra [xi | zeta1 zbar1 zeta2 zbar2 ...].

    The relabeling is monotone in the bit order, so no sign appears.  With
    ``conjugate`` the coefficients are conjugated and each holomorphic bit
    lands on its conjugate partner.
    """
    r, s = phi.r, phi.s
    W = r + 2 * s
    shift = 1 if conjugate else 0
    out: dict[int, ExpPolyFunction] = {}
    for word, fn in phi.fun.terms.items():
        big = 0
        w = word
        while w:
            k = (w & -w).bit_length() - 1
            w &= w - 1
            if k < r:
                big |= 1 << k
            elif k < r + s:
                big |= 1 << (r + 2 * (k - r) + shift)
            else:
                big |= 1 << (W + (k - r - s))
        piece = fn.conj() if conjugate else fn
        out[big] = out[big] + piece if big in out else piece
    return Superfunction(phi.m, W, out, naux)


def inner_fock(theta: float, phi: FockSuperfunction, psi: FockSuperfunction):
    """<phi, psi> = (2i)^s * integral of conj(phi) psi e^{(i/theta) zeta zbar}.

    The Gaussian weight is nilpotent, hence a finite product of pair factors;
    the Berezin orientation takes the coefficient of the ordered top monomial
    (zeta^a before zbar^a) with one factor -1 per holomorphic pair, the choice
    that makes the body pairing positive.  Returns a GrassmannElement when
    auxiliary parameters are present.
    """
    if (phi.m, phi.r, phi.s) != (psi.m, psi.r, psi.s):
        raise DimensionError("Fock factors live on different spaces")
    m, r, s = phi.m, phi.r, phi.s
    naux = max(phi.fun.naux, psi.fun.naux)
    W = r + 2 * s
    weight_terms: dict[int, ExpPolyFunction] = {}
    for S in range(1 << s):
        word = 0
        for a in range(s):
            if S >> a & 1:
                word |= 0b11 << (r + 2 * a)
        c = (1j / theta) ** int(S).bit_count()
        weight_terms[word] = ExpPolyFunction.const(m, c)
    weight = Superfunction(m, W, weight_terms, naux)
    big = smul(smul(_embed_with_conjugates(phi, naux, True),
                    _embed_with_conjugates(psi, naux, False)), weight)
    val = sintegrate(big)
    factor = (-1) ** s * (2j) ** s
    if isinstance(val, GrassmannElement):
        return val.scale(factor)
    return val * factor


# ---------------------------------------------------------------------------
# graded operators


@dataclass(frozen=True, eq=False)
class GradedOperator:
    """Matrix on a finite graded basis with a definite operator degree.

    Entry (i, j) may be nonzero only when parity(i) = parity(j) + degree.
    """

    matrix: np.ndarray
    parities: tuple[int, ...]
    degree: int

    def __post_init__(self):
        M = np.asarray(self.matrix, dtype=complex)
        k = len(self.parities)
        if M.shape != (k, k):
            raise DimensionError(f"matrix shape {M.shape} does not match basis size {k}")
        if self.degree not in (0, 1):
            raise ValueError("operator degree must be 0 or 1")
        if any(p not in (0, 1) for p in self.parities):
            raise ValueError("basis parities must be 0 or 1")
        scale = max(1.0, float(np.max(np.abs(M))) if M.size else 1.0)
        cleaned = M.copy()
        for i, pi in enumerate(self.parities):
            for j, pj in enumerate(self.parities):
                if (pi + pj + self.degree) % 2:
                    if abs(M[i, j]) > 1e-12 * scale:
                        raise ParityError(
                            f"entry ({i}, {j}) violates the degree-{self.degree} pattern")
                    cleaned[i, j] = 0.0
        cleaned.setflags(write=False)
        object.__setattr__(self, "matrix", cleaned)
        object.__setattr__(self, "parities", tuple(int(p) for p in self.parities))

    @classmethod
    def identity(cls, parities) -> "GradedOperator":
        k = len(parities)
        return cls(np.eye(k, dtype=complex), tuple(parities), 0)

    def compose(self, other: "GradedOperator") -> "GradedOperator":
        if self.parities != other.parities:
            raise DimensionError("operators on different graded bases")
        return GradedOperator(self.matrix @ other.matrix, self.parities,
                              (self.degree + other.degree) % 2)

    def scale(self, c) -> "GradedOperator":
        return GradedOperator(self.matrix * c, self.parities, self.degree)

    def __add__(self, other: "GradedOperator") -> "GradedOperator":
        if self.parities != other.parities or self.degree != other.degree:
            raise DimensionError("can only add operators of equal degree and basis")
        return GradedOperator(self.matrix + other.matrix, self.parities, self.degree)

    def __sub__(self, other: "GradedOperator") -> "GradedOperator":
        return self + other.scale(-1.0)


def _check_superhermitian(G: np.ndarray, parities, tol: float = 1e-10) -> None:
    scale = max(1.0, float(np.max(np.abs(G))))
    for i, pi in enumerate(parities):
        for j, pj in enumerate(parities):
            want = (-1) ** (pi * pj) * G[j, i]
            if abs(np.conj(G[i, j]) - want) > tol * scale:
                raise ValueError("gram matrix is not superhermitian")


def superadjoint(T: GradedOperator, gram) -> GradedOperator:
    """The unique S with <S x, y> = (-1)^{|T||x|} <x, T y> on the basis.

    With the pairing <x, y> = conj(x)^T G y (antilinear first slot) the
    relation reads S^H G = D G T, D = diag((-1)^{|T| p_i}), so
    S = (D G T G^{-1})^H.
    """
    G = np.asarray(gram, dtype=complex)
    k = len(T.parities)
    if G.shape != (k, k):
        raise DimensionError("gram matrix does not match the basis")
    _check_superhermitian(G, T.parities)
    if np.linalg.cond(G) > 1e12:
        raise SingularityError("gram matrix is numerically singular")
    D = np.diag([(-1.0) ** (T.degree * p) for p in T.parities])
    M = D @ G @ T.matrix @ np.linalg.inv(G)
    return GradedOperator(M.conj().T, T.parities, T.degree)


def gram_matrix(inner, basis) -> np.ndarray:
    """Matrix of a sesquilinear pairing on an explicit finite basis."""
    k = len(basis)
    G = np.zeros((k, k), dtype=complex)
    for i in range(k):
        for j in range(k):
            G[i, j] = inner(basis[i], basis[j])
    return G
