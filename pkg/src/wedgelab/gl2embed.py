"""gl2-subalgebras through a non-symmetric Euler element.

Given a diagonal Euler element h, pick a root alpha = eps_i - eps_j with
alpha(h) = 1, take root vectors x_alpha = E_ij, y_alpha = E_ji and
h_alpha = [x_alpha, y_alpha]. Then b = Rh + span(x_alpha, y_alpha, h_alpha)
is gl2 when h is not symmetric, with h = h_c - h1 where h1 = -h_alpha/2 is an
Euler element of the sl2 part and h_c is central in b.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .euler import EulerElement, check_euler, is_symmetric
from .exactla import RatMatrix, rat_solve
from .liealg import LieAlgebra, LieElement, bracket


class NoSuchRoot(ValueError):
    pass


class SymmetricInput(ValueError):
    pass


@dataclass(frozen=True)
class Gl2Embedding:
    h: EulerElement
    alpha: tuple[int, int]                  # 0-based (i, j) for eps_i - eps_j
    x_alpha: LieElement
    y_alpha: LieElement
    h_alpha: LieElement
    h_c: LieElement
    h1: LieElement
    e: LieElement
    f: LieElement
    permutation: tuple[int, ...] = field(default=())

    @property
    def algebra(self) -> LieAlgebra:
        return self.h.algebra

    @property
    def sl2_basis(self) -> tuple[LieElement, LieElement, LieElement]:
        return (self.h1, self.e, self.f)

    @property
    def gl2_basis(self) -> tuple[LieElement, ...]:
        return (self.h_c, self.h1, self.e, self.f)

    def k2(self) -> LieElement:
        """The boost generator (e + f)/2 of the sl2 part."""
        return (self.e + self.f).scale(Fraction(1, 2))

    def canonical_hsub_basis(self) -> tuple[LieElement, LieElement, LieElement]:
        """(h1, k2, [h1, k2]) spanning the sl2 part."""
        k2 = self.k2()
        return (self.h1, k2, bracket(self.h1, k2))


def _unit(A: LieAlgebra, i: int, j: int) -> LieElement | None:
    m = RatMatrix.unit(A.matrix_size, i, j)
    return A.from_matrix(m) if A.contains_matrix(m) else None


def find_alpha(h) -> tuple[int, int]:
    """Lexicographically smallest (i, j) with h_i - h_j = 1 and E_ij, E_ji in the algebra."""
    x = h.element if isinstance(h, EulerElement) else h
    m = x.matrix
    if not m.is_diagonal():
        raise ValueError("find_alpha expects a diagonal element; conjugate it to diagonal form first")
    a = m.diagonal()
    A = x.algebra
    for i in range(len(a)):
        for j in range(len(a)):
            if i != j and a[i] - a[j] == 1 and _unit(A, i, j) and _unit(A, j, i):
                return (i, j)
    raise NoSuchRoot("no root alpha with alpha(h) = 1")


def _permutation_to_front(n: int, alpha: tuple[int, int]) -> tuple[int, ...]:
    # Positions: j goes to slot 0 and i to slot 1, so that a_2 - a_1 = 1.
    i, j = alpha
    rest = [k for k in range(n) if k not in (i, j)]
    return tuple([j, i] + rest)


def build_embedding(h) -> Gl2Embedding:
    """Construct b = Rh + b_alpha and the splitting h = h_c - h1."""
    e = h if isinstance(h, EulerElement) else check_euler(h)
    if is_symmetric(e):
        raise SymmetricInput("h is symmetric; the subalgebra through h is sl2, not gl2")
    A = e.algebra
    i, j = find_alpha(e)
    x_alpha = _unit(A, i, j)
    y_alpha = _unit(A, j, i)
    h_alpha = bracket(x_alpha, y_alpha)
    h1 = h_alpha.scale(Fraction(-1, 2))
    h_c = e.element + h1
    if h_c.is_zero():
        raise SymmetricInput("central part vanishes; h lies in the sl2 part")
    return Gl2Embedding(
        h=e, alpha=(i, j), x_alpha=x_alpha, y_alpha=y_alpha, h_alpha=h_alpha,
        h_c=h_c, h1=h1, e=y_alpha, f=x_alpha,
        permutation=_permutation_to_front(A.matrix_size, (i, j)),
    )


@dataclass
class Gl2Report:
    passed: bool
    checks: list[tuple[str, bool]]
    failure: str | None = None

    def to_json(self) -> dict:
        return {"passed": self.passed, "checks": [{"check": c, "ok": ok} for c, ok in self.checks],
                "failure": self.failure}


def _span_coords(vectors, target) -> tuple[Fraction, ...] | None:
    M = RatMatrix.from_columns([v.coords for v in vectors])
    return rat_solve(M, target.coords)


# gl2 in the basis (c, h, e, f): [h, e] = e, [h, f] = -f, [e, f] = 2h, c central.
_GL2_TABLE = {
    (1, 2): (0, 0, 1, 0),
    (1, 3): (0, 0, 0, -1),
    (2, 3): (0, 2, 0, 0),
}


def gl2_bracket_coords(a: int, b: int) -> tuple[int, int, int, int]:
    if (a, b) in _GL2_TABLE:
        return _GL2_TABLE[(a, b)]
    if (b, a) in _GL2_TABLE:
        return tuple(-v for v in _GL2_TABLE[(b, a)])
    return (0, 0, 0, 0)


def verify_gl2(emb: Gl2Embedding) -> Gl2Report:
    """Exact check that span(h_c, h1, e, f) is gl2 and h lies outside b_alpha."""
    checks: list[tuple[str, bool]] = []

    def record(name: str, ok: bool) -> bool:
        checks.append((name, ok))
        return ok

    h = emb.h.element
    prelim = [
        ("[x_alpha, y_alpha] = h_alpha", bracket(emb.x_alpha, emb.y_alpha) == emb.h_alpha),
        ("h_alpha != 0", not emb.h_alpha.is_zero()),
        ("alpha(h) = 1", bracket(h, emb.x_alpha) == emb.x_alpha),
        ("h1 = -h_alpha/2", emb.h1 == emb.h_alpha.scale(Fraction(-1, 2))),
        ("h = h_c - h1", h == emb.h_c - emb.h1),
        ("h_c != 0", not emb.h_c.is_zero()),
    ]
    for name, ok in prelim:
        if not record(name, ok):
            return Gl2Report(False, checks, name)

    basis = emb.gl2_basis
    names = ("h_c", "h1", "e", "f")
    for a in range(4):
        for b in range(4):
            got = _span_coords(basis, bracket(basis[a], basis[b]))
            want = gl2_bracket_coords(a, b)
            name = f"[{names[a]}, {names[b]}]"
            if not record(name, got is not None and tuple(got) == tuple(Fraction(w) for w in want)):
                return Gl2Report(False, checks, f"{name} = {got}, expected {want}")

    outside = _span_coords((emb.x_alpha, emb.y_alpha, emb.h_alpha), h) is None
    if not record("h not in b_alpha", outside):
        return Gl2Report(False, checks, "h lies in b_alpha")
    return Gl2Report(True, checks)


def subalgebra_closed(vectors) -> bool:
    """[u, v] stays in span(vectors) for all pairs."""
    for u in vectors:
        for v in vectors:
            if _span_coords(vectors, bracket(u, v)) is None:
                return False
    return True


def sl2_part(emb: Gl2Embedding) -> LieAlgebra:
    """The sl2 part [b, b] as an algebra of its own, basis (h1, e, f)."""
    return LieAlgebra("[b,b]", [emb.h1.matrix, emb.e.matrix, emb.f.matrix],
                      kind="sl2_sub", labels=("h1", "e", "f"))
