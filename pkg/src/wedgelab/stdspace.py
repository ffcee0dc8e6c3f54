"""Standard subspaces of C^n and their modular data.

Conventions:

* An antilinear operator is stored as a matrix M and acts by xi -> M conj(xi).
  Hence (A1 A2) has matrix M1 conj(M2) when both are antilinear, A L has
  matrix M conj(L) and L A has matrix L M for linear L. The adjoint of an
  antilinear operator, defined by <xi, A eta> = <eta, A* xi>, has matrix M^T.
* <xi, eta> is antilinear in the first argument.
* Real subspaces are compared through the realification
  v -> (Re v, Im v) in R^{2n} and the norm of the difference of orthogonal
  projections (the gap).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np
import scipy.linalg

TOL = 1e-10
COMMUTE_TOL = 1e-9
MAX_CONDITION = 1e10
MAX_TENSOR_DIM = 64


class NotStandard(ValueError):
    pass


class NotCyclic(NotStandard):
    pass


class NotSeparating(NotStandard):
    pass


class NotCyclicNotSeparating(NotCyclic, NotSeparating):
    pass


class NotInvolution(ValueError):
    pass


class InvalidModularData(ValueError):
    pass


class DegenerateFixedSpace(ValueError):
    pass


class ConditioningError(ValueError):
    pass


class NotIsometric(ValueError):
    pass


class DimensionOverflow(ValueError):
    pass


class SubspaceNotFixed(ValueError):
    pass


def _c(a) -> np.ndarray:
    return np.asarray(a, dtype=complex)


def realify(vectors: np.ndarray) -> np.ndarray:
    """Columns v -> (Re v, Im v)."""
    v = _c(vectors)
    return np.vstack([v.real, v.imag])


def complexify(real: np.ndarray) -> np.ndarray:
    n = real.shape[0] // 2
    return real[:n] + 1j * real[n:]


def _rank(m: np.ndarray, tol: float = 1e-9) -> int:
    if m.size == 0:
        return 0
    s = np.linalg.svd(m, compute_uv=False)
    return int(np.sum(s > tol * max(1.0, s[0])))


@dataclass(frozen=True)
class AntilinearOp:
    matrix: np.ndarray

    def __post_init__(self) -> None:
        object.__setattr__(self, "matrix", _c(self.matrix))

    @property
    def n(self) -> int:
        return self.matrix.shape[0]

    def __call__(self, xi) -> np.ndarray:
        return self.matrix @ np.conj(_c(xi))

    def compose(self, other):
        """self after other; antilinear after antilinear is linear."""
        if isinstance(other, AntilinearOp):
            return self.matrix @ np.conj(other.matrix)
        return AntilinearOp(self.matrix @ np.conj(_c(other)))

    def after_linear(self, L) -> "AntilinearOp":
        return AntilinearOp(self.matrix @ np.conj(_c(L)))

    def before_linear(self, L) -> "AntilinearOp":
        """L after self."""
        return AntilinearOp(_c(L) @ self.matrix)

    def adjoint(self) -> "AntilinearOp":
        return AntilinearOp(self.matrix.T)

    def square(self) -> np.ndarray:
        return self.compose(self)

    def is_involution(self, tol: float = TOL) -> bool:
        return bool(np.allclose(self.square(), np.eye(self.n), atol=tol, rtol=0))

    def is_antiunitary(self, tol: float = TOL) -> bool:
        M = self.matrix
        return bool(np.allclose(M.conj().T @ M, np.eye(self.n), atol=tol, rtol=0))

    def close_to(self, other: "AntilinearOp", tol: float = TOL) -> bool:
        return bool(np.allclose(self.matrix, other.matrix, atol=tol, rtol=0))


def conj_op(n: int) -> AntilinearOp:
    return AntilinearOp(np.eye(n))


def _hermitian_power(D: np.ndarray, p: float) -> np.ndarray:
    w, V = np.linalg.eigh(D)
    return (V * w ** p) @ V.conj().T


def delta_it(D: np.ndarray, t: float) -> np.ndarray:
    """Delta^{it} as a unitary matrix."""
    w, V = np.linalg.eigh(D)
    return (V * np.exp(1j * t * np.log(w))) @ V.conj().T


@dataclass(frozen=True)
class ModularData:
    J: AntilinearOp
    Delta: np.ndarray

    def __post_init__(self) -> None:
        D = _c(self.Delta)
        object.__setattr__(self, "Delta", D)
        n = D.shape[0]
        if not np.allclose(D, D.conj().T, atol=TOL, rtol=0):
            raise InvalidModularData("Delta is not Hermitian")
        w = np.linalg.eigvalsh(D)
        if w.min() <= 0:
            raise InvalidModularData("Delta is not positive definite")
        if not self.J.is_involution():
            raise InvalidModularData("J^2 != 1")
        if not self.J.is_antiunitary():
            raise InvalidModularData("J is not antiunitary")
        scale = max(1.0, float(w.max()), float(1 / w.min()))
        err = np.abs(self.jdj() - np.linalg.inv(D)).max()
        if err > TOL * scale:
            raise InvalidModularData(f"J Delta J != Delta^-1 (error {err:.3e})")
        assert n == self.J.n

    @property
    def n(self) -> int:
        return self.Delta.shape[0]

    def jdj(self) -> np.ndarray:
        M = self.J.matrix
        return M @ np.conj(self.Delta) @ np.conj(M)

    @property
    def condition(self) -> float:
        w = np.linalg.eigvalsh(self.Delta)
        return float(w.max() / w.min())

    def tomita(self) -> AntilinearOp:
        """S = J Delta^{1/2}."""
        return self.J.after_linear(_hermitian_power(self.Delta, 0.5))

    def close_to(self, other: "ModularData", tol: float = TOL) -> bool:
        return self.J.close_to(other.J, tol) and bool(
            np.allclose(self.Delta, other.Delta, atol=tol * max(1.0, np.abs(self.Delta).max()), rtol=0))


def polar(S: AntilinearOp) -> ModularData:
    """S = J Delta^{1/2} with Delta = S* S."""
    if not S.is_involution():
        raise NotInvolution("S^2 != 1")
    # With M = U s V^H: Delta = M^T conj(M) = conj(V s^2 V^H), and
    # J = M conj(Delta^{-1/2}) = U V^H, which avoids squaring the condition number.
    U, s, Vh = np.linalg.svd(S.matrix)
    D = np.conj((Vh.conj().T * s ** 2) @ Vh)
    D = 0.5 * (D + D.conj().T)
    return ModularData(AntilinearOp(U @ Vh), D)


@dataclass(frozen=True, eq=False)
class StandardSubspace:
    """H = real span of the columns of ``basis`` (an n x n complex matrix)."""
    basis: np.ndarray

    def __post_init__(self) -> None:
        B = _c(self.basis)
        if B.ndim != 2:
            raise ValueError("basis must be a matrix whose columns are the vectors")
        object.__setattr__(self, "basis", B)
        n, k = B.shape
        r_h = _rank(realify(B))
        if r_h != k:
            raise ValueError(f"vectors are real-linearly dependent (real rank {r_h} < {k})")
        r_sum = _rank(realify(np.hstack([B, 1j * B])))
        separating = r_sum == 2 * r_h
        cyclic = r_sum == 2 * n
        msg = f"real rank of H is {r_h}, of H + iH is {r_sum}, ambient 2n = {2 * n}"
        if not separating and not cyclic:
            raise NotCyclicNotSeparating(msg)
        if not separating:
            raise NotSeparating(msg)
        if not cyclic:
            raise NotCyclic(msg)

    @classmethod
    def from_real_basis(cls, vectors) -> "StandardSubspace":
        """``vectors`` is a sequence of vectors in C^n."""
        return cls(np.column_stack([_c(v) for v in vectors]))

    @property
    def n(self) -> int:
        return self.basis.shape[0]

    @cached_property
    def tomita(self) -> AntilinearOp:
        # xi + i eta -> xi - i eta: with v = B c, S v = B conj(c) = B conj(B^{-1}) conj(v).
        B = self.basis
        return AntilinearOp(B @ np.conj(np.linalg.inv(B)))

    @cached_property
    def modular(self) -> ModularData:
        return polar(self.tomita)

    @property
    def J(self) -> AntilinearOp:
        return self.modular.J

    @property
    def Delta(self) -> np.ndarray:
        return self.modular.Delta

    @cached_property
    def projector(self) -> np.ndarray:
        Q = scipy.linalg.orth(realify(self.basis))
        return Q @ Q.T

    def real_dimension(self) -> int:
        return _rank(realify(self.basis))

    def contains(self, v, tol: float = TOL) -> bool:
        r = realify(_c(v).reshape(-1, 1))[:, 0]
        return bool(np.linalg.norm(r - self.projector @ r) <= tol * max(1.0, np.linalg.norm(r)))

    def to_json(self) -> dict:
        B = self.basis
        return {
            "n": self.n,
            "real_basis": [[[float(B[i, j].real), float(B[i, j].imag)] for i in range(self.n)]
                           for j in range(B.shape[1])],
        }

    @classmethod
    def from_json(cls, data: dict) -> "StandardSubspace":
        cols = [np.array([complex(re, im) for re, im in col]) for col in data["real_basis"]]
        return cls(np.column_stack(cols))


def from_real_basis(vectors) -> StandardSubspace:
    return StandardSubspace.from_real_basis(vectors)


def gap(H1: StandardSubspace, H2: StandardSubspace) -> float:
    if H1.n != H2.n:
        return float("inf")
    return float(np.linalg.norm(H1.projector - H2.projector, 2))


def same_subspace(H1: StandardSubspace, H2: StandardSubspace, tol: float = TOL) -> bool:
    return gap(H1, H2) < tol


def antilinear_fixed_space(S: AntilinearOp, tol: float = 1e-9) -> np.ndarray:
    """Real basis (as complex columns) of {xi : S xi = xi}."""
    A, B = S.matrix.real, S.matrix.imag
    I = np.eye(S.n)
    system = np.block([[A - I, B], [B, -A - I]])
    return complexify(scipy.linalg.null_space(system, rcond=tol))


def from_modular_data(md: ModularData) -> StandardSubspace:
    """H = ker(S - 1) for S = J Delta^{1/2}."""
    if md.condition > MAX_CONDITION:
        raise ConditioningError(f"Delta condition number {md.condition:.3e} exceeds {MAX_CONDITION:.0e}")
    F = antilinear_fixed_space(md.tomita())
    if F.shape[1] != md.n:
        raise DegenerateFixedSpace(f"fixed space has real dimension {F.shape[1]}, expected {md.n}")
    return StandardSubspace(F)


def symplectic_complement(H: StandardSubspace) -> StandardSubspace:
    """H' = {xi : Im<xi, eta> = 0 for all eta in H}."""
    # xi = x + iy, eta = u + iv: Im<xi, eta> = x.v - y.u
    B = H.basis
    constraints = np.hstack([B.imag.T, -B.real.T])
    return StandardSubspace(complexify(scipy.linalg.null_space(constraints)))


def _rel(a: np.ndarray, b: np.ndarray) -> float:
    """Entrywise error relative to the size of b (at least 1)."""
    return float(np.abs(a - b).max() / max(1.0, np.abs(b).max()))


def complement_residuals(H: StandardSubspace, Hc: StandardSubspace | None = None) -> dict:
    """Deviations in S_{H'} = S_H*, Delta_{H'} = Delta_H^{-1}, J_{H'} = J_H and J_H H = H'."""
    Hc = symplectic_complement(H) if Hc is None else Hc
    return {
        "tomita": float(np.abs(Hc.tomita.matrix - H.tomita.adjoint().matrix).max()),
        "delta": _rel(Hc.Delta, np.linalg.inv(H.Delta)),
        "J": float(np.abs(Hc.J.matrix - H.J.matrix).max()),
        "JH": gap(transform(H.J, H), Hc),
    }


def _check_isometry(U: np.ndarray) -> None:
    if U.shape[0] != U.shape[1] or not np.allclose(U.conj().T @ U, np.eye(U.shape[0]), atol=TOL, rtol=0):
        raise NotIsometric("operator is not unitary")


def transform(u, H: StandardSubspace) -> StandardSubspace:
    """u H for u unitary (a matrix) or antiunitary (an AntilinearOp)."""
    if isinstance(u, AntilinearOp):
        _check_isometry(u.matrix)
        return StandardSubspace(u.matrix @ np.conj(H.basis))
    U = _c(u)
    _check_isometry(U)
    return StandardSubspace(U @ H.basis)


def predicted_modular_data(u, H: StandardSubspace) -> ModularData:
    """(U Delta U*, U J U*) for unitary or antiunitary U.

    For antiunitary U conjugation reverses the modular group:
    U Delta^{it} U* = Delta_{UH}^{-it}, while U Delta U* = Delta_{UH} itself.
    """
    Mj = H.J.matrix
    if isinstance(u, AntilinearOp):
        Mu = u.matrix
        D = Mu @ np.conj(H.Delta) @ Mu.conj().T
        return ModularData(AntilinearOp(Mu @ np.conj(Mj) @ Mu.T), 0.5 * (D + D.conj().T))
    U = _c(u)
    return ModularData(AntilinearOp(U @ Mj @ U.T), U @ H.Delta @ U.conj().T)


def transform_residuals(u, H: StandardSubspace, t: float = 0.3) -> dict:
    """Deviations in U J U* = J_{UH} and U Delta^{it} U* = Delta_{UH}^{i eps t}."""
    K = transform(u, H)
    P = predicted_modular_data(u, H)
    if isinstance(u, AntilinearOp):
        Mu = u.matrix
        conj_group = Mu @ np.conj(delta_it(H.Delta, t)) @ Mu.conj().T
        eps = -1
    else:
        U = _c(u)
        conj_group = U @ delta_it(H.Delta, t) @ U.conj().T
        eps = 1
    return {
        "J": float(np.abs(K.J.matrix - P.J.matrix).max()),
        "delta": _rel(K.Delta, P.Delta),
        "modular_group": float(np.abs(conj_group - delta_it(K.Delta, eps * t)).max()),
    }


def dsum(H1: StandardSubspace, H2: StandardSubspace) -> StandardSubspace:
    return StandardSubspace(scipy.linalg.block_diag(H1.basis, H2.basis))


def dsum_modular_data(H1: StandardSubspace, H2: StandardSubspace) -> ModularData:
    return ModularData(AntilinearOp(scipy.linalg.block_diag(H1.J.matrix, H2.J.matrix)),
                       scipy.linalg.block_diag(H1.Delta, H2.Delta))


def tensor(H1: StandardSubspace, H2: StandardSubspace) -> StandardSubspace:
    """Real span of the product vectors b (x) c."""
    if H1.n * H2.n > MAX_TENSOR_DIM:
        raise DimensionOverflow(f"tensor dimension {H1.n * H2.n} exceeds {MAX_TENSOR_DIM}")
    cond = H1.modular.condition * H2.modular.condition
    if cond > MAX_CONDITION:
        raise ConditioningError(f"tensor Delta condition number {cond:.3e} exceeds {MAX_CONDITION:.0e}")
    return StandardSubspace(np.kron(H1.basis, H2.basis))


def tensor_modular_data(H1: StandardSubspace, H2: StandardSubspace) -> ModularData:
    return ModularData(AntilinearOp(np.kron(H1.J.matrix, H2.J.matrix)), np.kron(H1.Delta, H2.Delta))


@dataclass(frozen=True)
class CommuteReport:
    gap: float
    j_commutator: float
    delta_commutator: float

    @property
    def commutes(self) -> bool:
        return self.j_commutator < COMMUTE_TOL and self.delta_commutator < COMMUTE_TOL


def fix_and_commute(zeta, H: StandardSubspace) -> CommuteReport:
    """If the unitary zeta fixes H, it commutes with J_H and Delta_H."""
    Z = _c(zeta)
    _check_isometry(Z)
    g = gap(transform(Z, H), H)
    if g >= TOL:
        raise SubspaceNotFixed(f"zeta H differs from H (gap {g:.3e})")
    Mj, D = H.J.matrix, H.Delta
    jc = float(np.abs(Z @ Mj - Mj @ np.conj(Z)).max())
    dc = float(np.abs(Z @ D - D @ Z).max())
    return CommuteReport(g, jc, dc)


# -- random data ----------------------------------------------------------------

def random_unitary(n: int, rng: np.random.Generator) -> np.ndarray:
    z = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
    q, r = np.linalg.qr(z)
    return q * (np.diag(r) / np.abs(np.diag(r)))


def random_modular_data(n: int, rng: np.random.Generator, max_ratio: float = 1e6) -> ModularData:
    """Blocks (swap conj, diag(l, 1/l)) and (conj, 1), conjugated by a random unitary."""
    pairs = int(rng.integers(0, n // 2 + 1))
    Mj = np.zeros((n, n), dtype=complex)
    d = np.ones(n)
    bound = 0.5 * np.log(max_ratio)
    for p in range(pairs):
        i, j = 2 * p, 2 * p + 1
        Mj[i, j] = Mj[j, i] = 1
        lam = np.exp(rng.uniform(-bound, bound))
        d[i], d[j] = lam, 1 / lam
    for i in range(2 * pairs, n):
        Mj[i, i] = 1
    V = random_unitary(n, rng)
    D = V @ np.diag(d) @ V.conj().T
    return ModularData(AntilinearOp(V @ Mj @ V.T), 0.5 * (D + D.conj().T))


def random_standard_subspace(n: int, rng: np.random.Generator, max_ratio: float = 1e6) -> StandardSubspace:
    return from_modular_data(random_modular_data(n, rng, max_ratio))


def roundtrip_error(H: StandardSubspace) -> float:
    """Gap between H and the subspace rebuilt from its own modular data."""
    return gap(from_modular_data(H.modular), H)
