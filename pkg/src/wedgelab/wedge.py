"""Abstract wedge space: couples (x, sigma), twisted action, duality, stabilizers.

Group elements live in the defining matrix representation together with a
parity bit (the grading epsilon_G). Exact rational matrices are used whenever
possible; one-parameter groups exp(t x) generally need floats and yield
:class:`NumericCouple` objects compared at a fixed tolerance.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Union

import numpy as np
import scipy.linalg

from .euler import NotEuler, check_euler
from .exactla import RatMatrix, rat_inverse, rat_kernel
from .liealg import LieAlgebra, LieElement, ad

GROUP_TOL = 1e-12

Matrix = Union[RatMatrix, np.ndarray]


class NotInvolution(ValueError):
    pass


class NotFixed(ValueError):
    pass


class UnsupportedCone(ValueError):
    pass


def _to_array(m: Matrix) -> np.ndarray:
    return m.to_float() if isinstance(m, RatMatrix) else np.asarray(m, dtype=float)


@dataclass(frozen=True, eq=False)
class GradedGroupElement:
    matrix: Matrix
    parity: int = 1

    def __post_init__(self) -> None:
        if self.parity not in (1, -1):
            raise ValueError("parity must be +1 or -1")

    @property
    def is_exact(self) -> bool:
        return isinstance(self.matrix, RatMatrix)

    @property
    def size(self) -> int:
        return self.matrix.shape[0]

    def __matmul__(self, other: "GradedGroupElement") -> "GradedGroupElement":
        if self.is_exact and other.is_exact:
            m = self.matrix @ other.matrix
        else:
            m = _to_array(self.matrix) @ _to_array(other.matrix)
        return GradedGroupElement(m, self.parity * other.parity)

    def inverse(self) -> "GradedGroupElement":
        if self.is_exact:
            return GradedGroupElement(rat_inverse(self.matrix), self.parity)
        return GradedGroupElement(np.linalg.inv(self.matrix), self.parity)

    def conj(self, X: Matrix) -> Matrix:
        """g X g^{-1}."""
        if self.is_exact and isinstance(X, RatMatrix):
            return self.matrix @ X @ rat_inverse(self.matrix)
        g = _to_array(self.matrix)
        return g @ _to_array(X) @ np.linalg.inv(g)

    def ad_operator(self, A: LieAlgebra) -> RatMatrix:
        if not self.is_exact:
            raise TypeError("exact Ad needs an exact group element")
        return A.conjugation_operator(self.matrix)

    def is_identity(self) -> bool:
        if self.is_exact:
            return self.matrix == RatMatrix.identity(self.size) and self.parity == 1
        return self.parity == 1 and np.allclose(self.matrix, np.eye(self.size), atol=GROUP_TOL, rtol=0)

    def equals(self, other: "GradedGroupElement", tol: float = GROUP_TOL) -> bool:
        if self.parity != other.parity:
            return False
        if self.is_exact and other.is_exact:
            return self.matrix == other.matrix
        return np.allclose(_to_array(self.matrix), _to_array(other.matrix), atol=tol, rtol=0)


def identity(n: int) -> GradedGroupElement:
    return GradedGroupElement(RatMatrix.identity(n), 1)


def group_exp(X: RatMatrix, t=1) -> GradedGroupElement:
    """exp(t X) in the defining representation.

    Exact when t is rational and X is nilpotent (finite series); floating
    point otherwise.
    """
    n = X.rows
    if isinstance(t, (int, Fraction)) and not isinstance(t, bool):
        if t == 0:
            return identity(n)
        if X.power(n).is_zero():
            term = RatMatrix.identity(n)
            total = term
            for k in range(1, n):
                term = (term @ X).scale(Fraction(t) / k)
                total = total + term
            return GradedGroupElement(total, 1)
    Xf = X.to_float() * float(t)
    if X.is_diagonal():
        return GradedGroupElement(np.diag(np.exp(np.diag(Xf))), 1)
    return GradedGroupElement(scipy.linalg.expm(Xf), 1)


@dataclass(frozen=True, eq=False)
class WedgeCouple:
    x: LieElement
    sigma: GradedGroupElement
    euler: bool

    @property
    def algebra(self) -> LieAlgebra:
        return self.x.algebra

    def __eq__(self, other) -> bool:
        if not isinstance(other, WedgeCouple):
            return NotImplemented
        return self.x == other.x and self.sigma.equals(other.sigma)

    def __hash__(self) -> int:
        return hash((self.x, self.sigma.matrix if self.sigma.is_exact else None))


@dataclass(frozen=True)
class NumericCouple:
    """A couple moved by a floating-point group element."""
    algebra: LieAlgebra
    x: np.ndarray
    sigma: np.ndarray

    def close_to(self, W: "WedgeCouple | NumericCouple", tol: float = 1e-10) -> bool:
        x, s = _couple_arrays(W)
        return np.allclose(self.x, x, atol=tol, rtol=0) and np.allclose(self.sigma, s, atol=tol, rtol=0)


def _couple_arrays(W) -> tuple[np.ndarray, np.ndarray]:
    if isinstance(W, NumericCouple):
        return W.x, W.sigma
    return np.array([float(c) for c in W.x.coords]), _to_array(W.sigma.matrix)


def _euler_flag(x: LieElement, ad_sigma: RatMatrix) -> bool:
    try:
        e = check_euler(x, verify=False)
    except NotEuler:
        return False
    return ad_sigma == e.involution


def make_couple(x: LieElement, sigma: GradedGroupElement) -> WedgeCouple:
    """Validate (x, sigma) as a point of the abstract wedge space."""
    if sigma.parity != -1:
        raise ValueError("sigma must be an odd group element (parity -1)")
    if not sigma.is_exact:
        raise TypeError("couples are built from exact group elements")
    if not (sigma @ sigma).is_identity():
        raise NotInvolution("sigma^2 != e")
    ad_sigma = sigma.ad_operator(x.algebra)
    if ad_sigma.apply(x.coords) != x.coords:
        raise NotFixed("Ad(sigma) x != x")
    return WedgeCouple(x, sigma, _euler_flag(x, ad_sigma))


def twisted_ad(g: GradedGroupElement, x: LieElement):
    """Ad^eps(g) x = eps(g) Ad(g) x; exact coordinates or a float array."""
    A = x.algebra
    if g.is_exact:
        y = A.coords_of(g.conj(x.matrix))
        return A.element(y).scale(g.parity)
    m = g.conj(x.matrix)
    return g.parity * _float_coords(A, m)


def _float_coords(A: LieAlgebra, m: np.ndarray) -> np.ndarray:
    basis = np.array([b.to_float().ravel() for b in A.basis]).T
    coords, *_ = np.linalg.lstsq(basis, m.ravel(), rcond=None)
    return coords


def act(g: GradedGroupElement, W: WedgeCouple):
    """g.(x, sigma) = (Ad^eps(g) x, g sigma g^{-1})."""
    if g.is_exact:
        x = twisted_ad(g, W.x)
        sigma = g @ W.sigma @ g.inverse()
        return make_couple(x, sigma)
    x = twisted_ad(g, W.x)
    s = (g @ W.sigma @ g.inverse()).matrix
    return NumericCouple(W.algebra, np.asarray(x, dtype=float), np.asarray(s, dtype=float))


def dual(W: WedgeCouple) -> WedgeCouple:
    """W' = (-x, sigma)."""
    return WedgeCouple(-W.x, W.sigma, W.euler)


def lambda_w(W: WedgeCouple, t) -> GradedGroupElement:
    """The one-parameter group exp(t x) attached to W."""
    return group_exp(W.x.matrix, t)


def stabilizer_algebra(W: WedgeCouple) -> list[LieElement]:
    """Lie algebra of the stabilizer of W in the identity component.

    For Euler couples this is ker(ad x); in general one also needs
    Ad(sigma) y = y.
    """
    A = W.algebra
    M = ad(W.x)
    if not W.euler:
        fix = W.sigma.ad_operator(A) - RatMatrix.identity(A.dim)
        M = M.vstack(fix)
    return [A.element(v) for v in rat_kernel(M)]


@dataclass(frozen=True)
class ConeSpec:
    kind: str = "zero"          # "zero" or "forward_light_cone"
    dim: int = 3

    def contains(self, v) -> bool:
        v = np.asarray(v, dtype=float)
        if self.kind == "zero":
            return bool(np.all(v == 0))
        return bool(v[0] >= 0 and v[0] ** 2 - np.sum(v[1:] ** 2) >= 0)


ZERO_CONE = ConeSpec("zero")


def order_leq(W1: WedgeCouple, W2: WedgeCouple, cone: ConeSpec = ZERO_CONE) -> bool:
    """W1 <= W2 for the order induced by the cone; only C = {0} is supported."""
    if cone.kind != "zero":
        raise UnsupportedCone(f"order for cone {cone.kind!r} is not implemented")
    return W1 == W2
