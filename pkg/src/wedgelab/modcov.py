"""Covariance criterion for nets built from a pair of Euler elements.

A setup consists of an ambient algebra g, a subalgebra h (the Lie algebra of
the group acting covariantly), an Euler element h1 of h (the base wedge) and
an Euler element h2 of g (whose modular group the net carries). Modular
covariance forces Ad(H)(h1 - h2) into ker(ad h2); differentiating gives the
exact test [h, h1 - h2] inside ker(ad h2). A violation comes with a witness
y in h and the nonzero obstruction [h2, [y, h1 - h2]].

Group-level samples are float64 and only corroborate the exact verdict.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np
import scipy.linalg

from .euler import EulerElement, NotEuler, check_euler
from .exactla import RatMatrix, independent, rat_kernel, rat_solve, rational_str
from .gl2embed import build_embedding
from .liealg import LieAlgebra, LieAlgebraError, LieElement, bracket, build_algebra, sigma, xi

ZERO_TOL = 1e-9
S_GRID = (Fraction(-1), Fraction(-1, 2), Fraction(1, 2), Fraction(1))
T_GRID = (-1.0, -1.0 / (2 * np.pi), 1.0 / (2 * np.pi), 1.0)

VIOLATED = "Violated"
HOLDS = "necessary-condition-holds"


class InvalidSetup(ValueError):
    pass


class EmbeddingInvalid(ValueError):
    pass


class CertificateNotViolated(ValueError):
    pass


def _span_coords(vectors, target) -> tuple[Fraction, ...] | None:
    M = RatMatrix.from_columns([v.coords for v in vectors])
    return rat_solve(M, target.coords)


def _in_span(vectors, target) -> bool:
    if target.is_zero():
        return True
    return bool(vectors) and _span_coords(vectors, target) is not None


def _fro(m: np.ndarray) -> float:
    return float(np.linalg.norm(m, "fro"))


@dataclass(frozen=True, eq=False)
class NetSetup:
    name: str
    algebra: LieAlgebra
    hsub: tuple[LieElement, ...]
    h1: LieElement
    h2: EulerElement
    hsub_labels: tuple[str, ...] = ()
    h1_in_hsub: EulerElement | None = field(default=None, repr=False)

    @property
    def difference(self) -> LieElement:
        return self.h1 - self.h2.element

    def stabilizer_n2(self) -> list[LieElement]:
        """ker(ad h2), the Lie algebra of the stabilizer of the second subspace."""
        return [self.algebra.element(v) for v in self.h2.g0]

    def stabilizer_w1(self) -> list[LieElement]:
        """Elements of h commuting with h1."""
        M = RatMatrix.from_columns([bracket(y, self.h1).coords for y in self.hsub])
        out = []
        for v in rat_kernel(M):
            y = self.algebra.zero()
            for c, b in zip(v, self.hsub):
                y = y + b.scale(c)
            out.append(y)
        return out

    def labels(self) -> tuple[str, ...]:
        return self.hsub_labels or tuple(f"y{i + 1}" for i in range(len(self.hsub)))


def make_setup(name: str, algebra: LieAlgebra, hsub, h1: LieElement, h2: LieElement,
               hsub_labels=()) -> NetSetup:
    """Validate and assemble a setup.

    h1 must be an Euler element of the subalgebra spanned by ``hsub``, h2 an
    Euler element of the ambient algebra, [h1, h2] = 0, and the stabilizer of
    h1 in h must commute with h2.
    """
    hsub = tuple(hsub)
    try:
        sub = LieAlgebra(f"h<{name}>", [y.matrix for y in hsub], kind="custom")
    except LieAlgebraError as exc:
        # dependent basis, or brackets leaving the span
        raise InvalidSetup(f"h is not a subalgebra with this basis: {exc}") from exc
    if not sub.contains_matrix(h1.matrix):
        raise InvalidSetup("h1 does not lie in h")
    try:
        e1 = check_euler(sub.from_matrix(h1.matrix), verify=False)
        e2 = check_euler(h2, verify=False)
    except NotEuler as exc:
        raise InvalidSetup(f"not an Euler element: {exc}") from exc
    if not bracket(h1, h2).is_zero():
        raise InvalidSetup("[h1, h2] != 0")
    setup = NetSetup(name, algebra, hsub, h1, e2, tuple(hsub_labels), e1)
    for y in setup.stabilizer_w1():
        if not bracket(y, h2).is_zero():
            raise InvalidSetup("the stabilizer of W1 in H does not fix W2")
    return setup


# -- exact criterion ------------------------------------------------------------

def _obstruction(setup: NetSetup, y: LieElement) -> tuple[LieElement, LieElement]:
    b = bracket(y, setup.difference)
    return b, bracket(setup.h2.element, b)


def neccond_exact(setup: NetSetup) -> bool:
    """[h, h1 - h2] contained in ker(ad h2), checked on the basis of h."""
    return all(_obstruction(setup, y)[1].is_zero() for y in setup.hsub)


def _expm(m: RatMatrix, s: float) -> np.ndarray:
    return scipy.linalg.expm(float(s) * m.to_float())


def bracket_samples(setup: NetSetup, y: LieElement) -> list[dict]:
    """||[h2, Ad(exp(s y))(h1 - h2)]|| over the fixed s grid."""
    d = setup.difference.matrix.to_float()
    h2 = setup.h2.element.matrix.to_float()
    out = []
    for s in S_GRID:
        g = _expm(y.matrix, s)
        moved = g @ d @ np.linalg.inv(g)
        out.append({"s": float(s), "norm": _fro(h2 @ moved - moved @ h2)})
    return out


def neccond(setup: NetSetup) -> bool:
    """Exact verdict, cross-checked against float samples along every basis direction."""
    verdict = neccond_exact(setup)
    if verdict:
        for y in setup.hsub:
            worst = max(r["norm"] for r in bracket_samples(setup, y))
            if worst >= ZERO_TOL:
                raise AssertionError(f"float samples disagree with the exact verdict ({worst:.3e})")
    return verdict


def group_stabilizer_test(setup: NetSetup, g, t: float) -> dict:
    """Defect ||Ad(g exp(t(h1 - h2)) g^{-1}) h2 - h2||_F.

    Vanishing is necessary for g exp(t(h1 - h2)) g^{-1} to stabilize the
    second subspace when Ad is faithful.
    """
    d = setup.difference
    if t == 0 or d.is_zero():
        return {"t": float(t), "defect": 0.0}
    g = g.to_float() if isinstance(g, RatMatrix) else np.asarray(g, dtype=float)
    m = g @ _expm(d.matrix, t) @ np.linalg.inv(g)
    h2 = setup.h2.element.matrix.to_float()
    return {"t": float(t), "defect": _fro(m @ h2 @ np.linalg.inv(m) - h2)}


@dataclass(frozen=True)
class CovarianceCertificate:
    setup: str
    status: str
    witness_index: int | None = None
    witness_label: str | None = None
    witness_y: LieElement | None = None
    bracket_value: LieElement | None = None
    obstruction: LieElement | None = None
    bracket_samples: tuple = ()
    group_samples: tuple = ()

    @property
    def violated(self) -> bool:
        return self.status == VIOLATED

    def to_json(self) -> dict:
        def mat(x):
            return None if x is None else x.matrix.to_json()
        return {
            "setup": self.setup,
            "status": self.status,
            "witness": None if self.witness_y is None else {
                "index": self.witness_index,
                "label": self.witness_label,
                "y": mat(self.witness_y),
            },
            "bracket_value": mat(self.bracket_value),
            "obstruction": mat(self.obstruction),
            "bracket_samples": list(self.bracket_samples),
            "group_samples": list(self.group_samples),
            "note": "group samples test Ad(.)h2 = h2, a necessary condition only",
        }


def negcond_certificate(setup: NetSetup) -> CovarianceCertificate:
    """First basis element y of h with [h2, [y, h1 - h2]] != 0, if any."""
    for i, y in enumerate(setup.hsub):
        b, obs = _obstruction(setup, y)
        if obs.is_zero():
            continue
        samples = []
        for s in S_GRID:
            g = _expm(y.matrix, s)
            for t in T_GRID:
                rep = group_stabilizer_test(setup, g, t)
                samples.append({"s": float(s), "t": rep["t"], "defect": rep["defect"]})
        return CovarianceCertificate(
            setup=setup.name, status=VIOLATED, witness_index=i,
            witness_label=setup.labels()[i], witness_y=y, bracket_value=b,
            obstruction=obs, bracket_samples=tuple(bracket_samples(setup, y)),
            group_samples=tuple(samples),
        )
    samples = []
    for y in setup.hsub:
        for s in S_GRID:
            g = _expm(y.matrix, s)
            for t in T_GRID:
                rep = group_stabilizer_test(setup, g, t)
                samples.append({"s": float(s), "t": rep["t"], "defect": rep["defect"]})
    return CovarianceCertificate(setup=setup.name, status=HOLDS, group_samples=tuple(samples))


def reverify(setup: NetSetup, cert: CovarianceCertificate) -> bool:
    """Recompute the violation chain from the raw matrices in rational arithmetic."""
    if not cert.violated:
        raise CertificateNotViolated("nothing to re-verify")
    h1 = setup.h1.matrix
    h2 = setup.h2.element.matrix
    y = cert.witness_y.matrix
    if h1.commutator(h2) != RatMatrix.zeros(*h1.shape):
        return False
    b = y.commutator(h1 - h2)
    obs = h2.commutator(b)
    return b == cert.bracket_value.matrix and obs == cert.obstruction.matrix and not obs.is_zero()


# -- catalog ------------------------------------------------------------------

def gl2_setup_from(h: LieElement, name: str) -> NetSetup:
    """Setup for a non-symmetric Euler element h: h1 = the sl2 Euler element, h2 = h."""
    emb = build_embedding(h)
    return make_setup(name, h.algebra, emb.canonical_hsub_basis(), emb.h1, h,
                      hsub_labels=("k1", "k2", "[k1,k2]"))


def sl_setup(n: int = 3, h: LieElement | None = None) -> NetSetup:
    A = build_algebra(f"sl({n})")
    if h is None:
        if n != 3:
            raise ValueError("a default element is only provided for sl(3)")
        h = A.from_matrix(RatMatrix.diag([Fraction(-1, 3), Fraction(2, 3), Fraction(-1, 3)]))
    return gl2_setup_from(h, f"sl{n}")


def gl2_setup() -> NetSetup:
    A = build_algebra("gl(2)")
    return gl2_setup_from(A.from_matrix(RatMatrix.diag([0, 1])), "gl2")


def sl2xi_setup() -> NetSetup:
    A = build_algebra("sl2xi")
    h1 = A.from_matrix(RatMatrix.diag([Fraction(1, 2), Fraction(-1, 2), 0]))
    return gl2_setup_from(xi(A) - h1, "sl2xi")


def dual_setup() -> NetSetup:
    A = build_algebra("sl(2)")
    h2 = A.from_matrix(sigma(2))
    return make_setup("dual", A, A.basis_elements(), -h2, h2, hsub_labels=A.labels)


def bw_setup() -> NetSetup:
    A = build_algebra("sl(2)")
    h = A.from_matrix(sigma(2))
    return make_setup("bw", A, A.basis_elements(), h, h, hsub_labels=A.labels)


SETUPS = {
    "sl3": sl_setup,
    "gl2": gl2_setup,
    "sl2xi": sl2xi_setup,
    "dual": dual_setup,
    "bw": bw_setup,
}


def catalog_setups() -> list[NetSetup]:
    """The four constructions without modular covariance."""
    return [sl_setup(), gl2_setup(), sl2xi_setup(), dual_setup()]


def get_setup(name: str) -> NetSetup:
    try:
        return SETUPS[name]()
    except KeyError:
        raise KeyError(f"unknown setup {name!r}; choose from {sorted(SETUPS)}") from None


# -- higher-dimensional stabilizer condition -----------------------------------

def sl3_so12_embedding() -> list[RatMatrix]:
    """so(1,2) -> sl(3) in the basis (k1, k2, r12), with k1 sent to diag(1,-1,0)/2."""
    A = build_algebra("sl(3)")

    def block(m: RatMatrix) -> RatMatrix:
        rows = [list(m.row(0)) + [0], list(m.row(1)) + [0], [0, 0, 0]]
        return RatMatrix.from_rows(rows)
    images = [block(sigma(2)), block(sigma(1)), block(-sigma(0))]
    assert all(A.contains_matrix(m) for m in images)
    return images


@dataclass(frozen=True)
class HigherDimReport:
    passed: bool
    stabilizer_annihilates: bool
    bracket_nonzero: bool
    bracket_inside: bool

    def __bool__(self) -> bool:
        return self.passed


def higher_dim_report(images, ambient: LieAlgebra, h) -> HigherDimReport:
    """Check the Lie-algebra conditions for so(1,n) covariance with base wedge W_{x1}.

    ``images`` are the images of the so(1,n) basis (boosts k1..kn, then
    rotations) in the ambient algebra.
    """
    h = h.element if isinstance(h, EulerElement) else h
    images = list(images)
    nb = len(images)
    d = next((d for d in range(1, 12) if d + d * (d - 1) // 2 == nb), None)
    if d is None:
        raise EmbeddingInvalid(f"{nb} images do not match the dimension of any so(1,n)")
    so = build_algebra(f"so(1,{d})")
    for m in images:
        if not ambient.contains_matrix(m):
            raise EmbeddingInvalid("an image lies outside the ambient algebra")
    phi = [ambient.from_matrix(m) for m in images]
    if not independent([m.entries for m in images]):
        raise EmbeddingInvalid("images are linearly dependent")

    def push(coords) -> LieElement:
        out = ambient.zero()
        for c, v in zip(coords, phi):
            out = out + v.scale(c)
        return out

    for i in range(nb):
        for j in range(nb):
            want = push(so.bracket_coords(so.basis_element(i).coords, so.basis_element(j).coords))
            if bracket(phi[i], phi[j]) != want:
                raise EmbeddingInvalid(f"bracket of images {i}, {j} is not the image of the bracket")

    k1 = so.basis_element(0)
    stab = [push(v) for v in rat_kernel(so.ad_coords(k1.coords))]
    annihilates = all(bracket(s, h).is_zero() for s in stab)
    brackets = [bracket(v, h) for v in phi]
    nonzero = any(not b.is_zero() for b in brackets)
    inside = all(_in_span(phi, b) for b in brackets)
    return HigherDimReport(annihilates and nonzero and inside, annihilates, nonzero, inside)


def higher_dim_stabilizer_check(images, ambient: LieAlgebra, h) -> bool:
    return higher_dim_report(images, ambient, h).passed


def certificate_summary(cert: CovarianceCertificate) -> str:
    if not cert.violated:
        return f"{cert.setup}: {cert.status}"
    obs = cert.obstruction.matrix
    nz = [(i, j, rational_str(obs[i, j])) for i in range(obs.rows) for j in range(obs.cols) if obs[i, j]]
    return f"{cert.setup}: {cert.status} (witness {cert.witness_label}, obstruction entries {nz})"
