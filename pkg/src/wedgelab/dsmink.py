"""Two-dimensional de Sitter space, its covering group SL2(R) and wedges.

Points of R^{1+2} are identified with traceless real 2x2 matrices through
``tilde``; SL2(R) acts by conjugation, which defines the covering map onto
SO(1,2)^up. A wedge of dS^2 is stored as its Euler element in sl2, i.e. a
traceless matrix with eigenvalues +-1/2. The standard right wedge
``|x0| < x1`` corresponds to sigma_1.

All geometry here is float64.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.linalg

CONSTRUCT_TOL = 1e-12
EQUAL_TOL = 1e-10

SIGMA0 = 0.5 * np.array([[0.0, -1.0], [1.0, 0.0]])
SIGMA1 = 0.5 * np.array([[0.0, 1.0], [1.0, 0.0]])
SIGMA2 = 0.5 * np.array([[1.0, 0.0], [0.0, -1.0]])

ETA = np.diag([1.0, -1.0, -1.0])

BASE_GENERATORS = {"x1": SIGMA1, "x2": SIGMA2}


class NotUnimodular(ValueError):
    pass


class NonzeroTrace(ValueError):
    pass


class NotOnDeSitter(ValueError):
    pass


class NotEulerMatrix(ValueError):
    pass


def minkowski(u, v) -> float:
    return float(np.asarray(u) @ ETA @ np.asarray(v))


def tilde(x) -> np.ndarray:
    x0, x1, x2 = (float(c) for c in x)
    return 0.5 * np.array([[x1, -x0 - x2], [x0 - x2, -x1]])


def untilde(X) -> np.ndarray:
    X = np.asarray(X, dtype=float)
    if abs(np.trace(X)) > CONSTRUCT_TOL:
        raise NonzeroTrace(f"trace {np.trace(X):.3e} is not zero")
    return np.array([
        -2.0 * np.trace(X @ SIGMA0),
        2.0 * np.trace(X @ SIGMA2),
        -2.0 * np.trace(X @ SIGMA1),
    ])


@dataclass(frozen=True)
class DeSitterPoint:
    coords: tuple[float, float, float]

    def __post_init__(self) -> None:
        x0, x1, x2 = self.coords
        err = x1 * x1 + x2 * x2 - x0 * x0 - 1.0
        if abs(err) > CONSTRUCT_TOL * max(1.0, x0 * x0):
            raise NotOnDeSitter(f"x1^2 + x2^2 - x0^2 - 1 = {err:.3e}")

    @classmethod
    def of(cls, x) -> "DeSitterPoint":
        return cls(tuple(float(c) for c in x))

    @property
    def array(self) -> np.ndarray:
        return np.array(self.coords)

    @property
    def matrix(self) -> np.ndarray:
        return tilde(self.coords)


def _check_sl2(g) -> np.ndarray:
    g = np.asarray(g, dtype=float)
    if g.shape != (2, 2):
        raise ValueError("expected a 2x2 matrix")
    if abs(np.linalg.det(g) - 1.0) > CONSTRUCT_TOL:
        raise NotUnimodular(f"det g = {np.linalg.det(g)!r}")
    return g


def _inv2(g: np.ndarray) -> np.ndarray:
    # Exact inverse for determinant one.
    return np.array([[g[1, 1], -g[0, 1]], [-g[1, 0], g[0, 0]]])


def lambda_cover(g) -> np.ndarray:
    """The Lorentz matrix with (Lambda(g) x)~ = g x~ g^{-1}."""
    g = _check_sl2(g)
    gi = _inv2(g)
    cols = [untilde(g @ tilde(e) @ gi) for e in np.eye(3)]
    return np.column_stack(cols)


def r(theta: float) -> np.ndarray:
    """exp(-sigma_0 theta), the lift of the rotation by theta."""
    c, s = np.cos(theta / 2), np.sin(theta / 2)
    return np.array([[c, s], [-s, c]])


def rotation_matrix(theta: float) -> np.ndarray:
    c, s = np.cos(theta), np.sin(theta)
    return np.array([[1.0, 0.0, 0.0], [0.0, c, -s], [0.0, s, c]])


def boost(i: int, t: float) -> np.ndarray:
    """exp(sigma_i t) for i = 1, 2: the lift of the boost fixing W_{x_i}."""
    return scipy.linalg.expm(BASE_GENERATORS[f"x{i}"] * t)


def forward_cone_contains(v) -> bool:
    v0, v1, v2 = (float(c) for c in v)
    return v0 >= 0 and v0 * v0 - v1 * v1 - v2 * v2 >= 0


# -- de Sitter wedges ---------------------------------------------------------

def _check_euler_matrix(k: np.ndarray) -> np.ndarray:
    k = np.asarray(k, dtype=float)
    if k.shape != (2, 2) or abs(np.trace(k)) > CONSTRUCT_TOL:
        raise NotEulerMatrix("expected a traceless 2x2 matrix")
    if abs(np.linalg.det(k) + 0.25) > CONSTRUCT_TOL:
        raise NotEulerMatrix(f"det k = {np.linalg.det(k)!r}, expected -1/4")
    return k


@dataclass(frozen=True, eq=False)
class DSWedge:
    """A wedge of dS^2, represented by its sl2 Euler element."""
    euler_element: np.ndarray

    def __post_init__(self) -> None:
        object.__setattr__(self, "euler_element", _check_euler_matrix(self.euler_element))

    def __eq__(self, other) -> bool:
        if not isinstance(other, DSWedge):
            return NotImplemented
        return bool(np.allclose(self.euler_element, other.euler_element, atol=EQUAL_TOL, rtol=0))

    __hash__ = None

    def carrier(self) -> np.ndarray:
        """Some g in SL2(R) with g sigma_1 g^{-1} equal to the Euler element."""
        k = self.euler_element
        w, P = np.linalg.eig(k)
        P = np.real(P[:, np.argsort(-np.real(w))])
        if np.linalg.det(P) < 0:
            P[:, 1] = -P[:, 1]
        P = P / np.sqrt(np.linalg.det(P))
        # P diagonalizes k to sigma_2, and r(pi/2) carries sigma_1 to sigma_2.
        return P @ r(np.pi / 2)

    def dual(self) -> "DSWedge":
        return DSWedge(-self.euler_element)

    def contains(self, p) -> bool:
        x = p.array if isinstance(p, DeSitterPoint) else np.asarray(p, dtype=float)
        q = lambda_cover(_inv2(self.carrier())) @ x
        return bool(abs(q[0]) < q[1])

    def transform(self, g) -> "DSWedge":
        g = _check_sl2(g)
        return DSWedge(g @ self.euler_element @ _inv2(g))


def base_wedge(base: str = "x1") -> DSWedge:
    return DSWedge(BASE_GENERATORS[base])


def ds_wedge_of(g, base: str = "x1") -> DSWedge:
    """Ad(g) k for the base Euler element k."""
    return base_wedge(base).transform(g)


def wedge_contains(W: DSWedge, p) -> bool:
    return W.contains(p)


def stabilizer_sample(W: DSWedge, t: float, sign: int = 1) -> np.ndarray:
    """sign * exp(t k), an element of the stabilizer {+-1} exp(R k) of W."""
    return sign * scipy.linalg.expm(t * W.euler_element)


# -- Minkowski wedges ---------------------------------------------------------

@dataclass(frozen=True)
class PoincareElement:
    a: np.ndarray
    g: np.ndarray

    def __post_init__(self) -> None:
        object.__setattr__(self, "a", np.asarray(self.a, dtype=float).reshape(3))
        object.__setattr__(self, "g", _check_sl2(self.g))

    @classmethod
    def translation(cls, a) -> "PoincareElement":
        return cls(a, np.eye(2))

    def __matmul__(self, other: "PoincareElement") -> "PoincareElement":
        return PoincareElement(self.a + lambda_cover(self.g) @ other.a, self.g @ other.g)

    def inverse(self) -> "PoincareElement":
        gi = _inv2(self.g)
        return PoincareElement(-lambda_cover(gi) @ self.a, gi)

    def apply(self, x) -> np.ndarray:
        return self.a + lambda_cover(self.g) @ np.asarray(x, dtype=float)

    def equals(self, other: "PoincareElement", tol: float = EQUAL_TOL) -> bool:
        return bool(np.allclose(self.a, other.a, atol=tol, rtol=0)
                    and np.allclose(self.g, other.g, atol=tol, rtol=0))


@dataclass(frozen=True, eq=False)
class MinkWedge:
    """a + W where W is the Minkowski wedge over a de Sitter wedge."""
    translation: np.ndarray
    ds_part: DSWedge

    def __post_init__(self) -> None:
        object.__setattr__(self, "translation", np.asarray(self.translation, dtype=float).reshape(3))

    def edge_direction(self) -> np.ndarray:
        # The base wedge |x0| < x1 is invariant under translations along e_2.
        g = self.ds_part.carrier()
        return lambda_cover(g) @ np.array([0.0, 0.0, 1.0])

    def normal_form(self) -> np.ndarray:
        """The translation with its component along the wedge edge removed."""
        u = self.edge_direction()
        a = self.translation
        return a - (minkowski(a, u) / minkowski(u, u)) * u

    def __eq__(self, other) -> bool:
        if not isinstance(other, MinkWedge):
            return NotImplemented
        return self.ds_part == other.ds_part and bool(
            np.allclose(self.normal_form(), other.normal_form(), atol=EQUAL_TOL, rtol=0))

    __hash__ = None

    def contains(self, x) -> bool:
        g = self.ds_part.carrier()
        q = lambda_cover(_inv2(g)) @ (np.asarray(x, dtype=float) - self.translation)
        return bool(abs(q[0]) < q[1])

    def project(self) -> DSWedge:
        return self.ds_part

    def act(self, p: PoincareElement) -> "MinkWedge":
        return MinkWedge(p.apply(self.translation), self.ds_part.transform(p.g))


def mink_wedge_of(a, g, base: str = "x1") -> MinkWedge:
    return MinkWedge(np.zeros(3), base_wedge(base)).act(PoincareElement(a, g))


def embed_ds(W: DSWedge) -> MinkWedge:
    return MinkWedge(np.zeros(3), W)


def project(W: MinkWedge) -> DSWedge:
    return W.project()
