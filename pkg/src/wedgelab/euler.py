"""Euler elements: exact predicate, 3-grading, involution, symmetry, catalog."""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction

from .exactla import EULER_POLY, RatMatrix, charpoly, eigenspace, poly_eval, rat_inverse
from .liealg import LieAlgebra, LieElement, UnsupportedKind, ad, build_algebra


class NotEuler(ValueError):
    """Raised with a witness: a basis index where (ad x)^3 and ad x differ, or None if ad x = 0."""

    def __init__(self, message: str, witness: int | None = None) -> None:
        super().__init__(message)
        self.witness = witness


class UnsupportedAlgebra(ValueError):
    pass


class UnknownRootSystem(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class EulerElement:
    element: LieElement
    g1: tuple[tuple[Fraction, ...], ...]
    g0: tuple[tuple[Fraction, ...], ...]
    gm1: tuple[tuple[Fraction, ...], ...]
    involution: RatMatrix = field(repr=False)

    @property
    def algebra(self) -> LieAlgebra:
        return self.element.algebra

    @property
    def grading_dims(self) -> tuple[int, int, int]:
        return (len(self.g1), len(self.g0), len(self.gm1))

    def grading(self, nu: int) -> tuple[tuple[Fraction, ...], ...]:
        return {1: self.g1, 0: self.g0, -1: self.gm1}[nu]


def is_automorphism(A: LieAlgebra, phi: RatMatrix) -> bool:
    """phi [u, v] = [phi u, phi v] for all basis pairs, tested as phi ad(u) = ad(phi u) phi."""
    for i in range(A.dim):
        u = A.basis_element(i)
        image = A.element(phi.col(i))
        if phi @ ad(u) != ad(image) @ phi:
            return False
    return True


def _grading_involution(A: LieAlgebra, g1, g0, gm1) -> RatMatrix:
    P = RatMatrix.from_columns(list(g1) + list(g0) + list(gm1))
    signs = [-1] * len(g1) + [1] * len(g0) + [-1] * len(gm1)
    return P @ RatMatrix.diag(signs) @ rat_inverse(P)


def check_euler(x: LieElement, verify: bool = True) -> EulerElement:
    """Decide exactly whether x is an Euler element and return its grading.

    The test is (ad x)^3 = ad x with ad x != 0. Since lambda^3 - lambda is
    squarefree this is the same as ad x being diagonalizable with spectrum in
    {-1, 0, 1}.
    """
    M = ad(x)
    if M.is_zero():
        raise NotEuler("ad x = 0", witness=None)
    diff = poly_eval(M, EULER_POLY)
    if not diff.is_zero():
        col = next(j for j in range(diff.cols) if any(diff.col(j)))
        raise NotEuler(
            f"(ad x)^3 != ad x on basis vector {x.algebra.labels[col]}", witness=col
        )
    g1 = tuple(eigenspace(M, 1))
    g0 = tuple(eigenspace(M, 0))
    gm1 = tuple(eigenspace(M, -1))
    assert len(g1) + len(g0) + len(gm1) == x.algebra.dim
    sigma = _grading_involution(x.algebra, g1, g0, gm1)
    if verify and not is_automorphism(x.algebra, sigma):
        raise AssertionError("grading involution is not an automorphism")
    return EulerElement(x, g1, g0, gm1, sigma)


def is_euler(x: LieElement) -> bool:
    try:
        check_euler(x, verify=False)
    except NotEuler:
        return False
    return True


def euler_involution(e: EulerElement) -> RatMatrix:
    return e.involution


# -- symmetry ---------------------------------------------------------------

_SPECTRUM_KINDS = ("sl", "gl", "sl2_plus_center")
# Real forms whose restricted root system is A_1: every Euler element is
# symmetric there.
_A1_KINDS = ("so", "sl2_sub")


def symmetry_method(A: LieAlgebra) -> str:
    if A.kind in _SPECTRUM_KINDS:
        return "spectrum"
    if A.kind in _A1_KINDS:
        return "catalog"
    raise UnsupportedAlgebra(f"no symmetry test for algebras of kind {A.kind!r}")


def _as_element(x) -> LieElement:
    return x.element if isinstance(x, EulerElement) else x


def is_symmetric(x) -> bool:
    """Whether -x lies in the inner-automorphism orbit of the Euler element x.

    For sl/gl-type algebras the defining matrix is real diagonalizable, and
    conjugacy is decided by the characteristic polynomial: x is symmetric iff
    its eigenvalue multiset is closed under negation. so(1,d) and abstract
    sl2 subalgebras have restricted root system A_1 and fall back to the
    catalog, where the single Euler class is symmetric.
    """
    e = x if isinstance(x, EulerElement) else check_euler(x, verify=False)
    A = e.algebra
    method = symmetry_method(A)
    if method == "catalog":
        return True
    # p(-lambda) = (-1)^n p(lambda) iff only powers of the parity of n occur.
    p = charpoly(e.element.matrix)
    n = len(p) - 1
    return all(c == 0 for k, c in enumerate(p) if (n - k) % 2 == 1)


def hj_element(n: int, j: int) -> LieElement:
    """h_j = (1/n) diag((n-j) 1_j, -j 1_{n-j}) in sl(n)."""
    if not 1 <= j <= n - 1:
        raise ValueError(f"index j={j} out of range 1..{n - 1}")
    A = build_algebra(f"sl({n})")
    vals = [Fraction(n - j, n)] * j + [Fraction(-j, n)] * (n - j)
    return A.from_matrix(RatMatrix.diag(vals))


def sl_class_index(x: LieElement) -> int:
    """The j with x conjugate to h_j, for an Euler element x of sl(n)."""
    A = x.algebra
    if A.kind != "sl":
        raise UnsupportedAlgebra("class index only defined for sl(n)")
    n = A.params["n"]
    p = charpoly(x.matrix)
    for j in range(1, n):
        if charpoly(hj_element(n, j).matrix) == p:
            return j
    raise NotEuler("not conjugate to any h_j")


# -- catalog ----------------------------------------------------------------

@dataclass(frozen=True)
class EulerCatalogEntry:
    root_system: str
    euler_indices: tuple[int, ...]
    symmetric_indices: tuple[int, ...]


_SUBSCRIPTS = str.maketrans("₀₁₂₃₄₅₆₇₈₉", "0123456789")
_LABEL_RE = re.compile(r"^(BC|A|B|C|D|E|F|G)_?(\d+)$")
_MIN_RANK = {"A": 1, "B": 2, "C": 2, "D": 4, "BC": 1}


def _parse_label(label: str) -> tuple[str, int]:
    m = _LABEL_RE.match(label.strip().translate(_SUBSCRIPTS).upper())
    if not m:
        raise UnknownRootSystem(f"unknown root system {label!r}")
    t, n = m.group(1), int(m.group(2))
    if t == "E" and n not in (6, 7, 8) or t == "F" and n != 4 or t == "G" and n != 2:
        raise UnknownRootSystem(f"unknown root system {label!r}")
    if n < _MIN_RANK.get(t, 0):
        raise UnknownRootSystem(f"{t}_{n} is not an irreducible root system in this table")
    return t, n


def euler_catalog(root_system: str) -> EulerCatalogEntry:
    """Indices j (Bourbaki numbering) for which h_j is an Euler element, and which are symmetric."""
    t, n = _parse_label(root_system)
    if t == "A":
        euler = tuple(range(1, n + 1))
        sym = ((n + 1) // 2,) if n % 2 == 1 else ()
    elif t == "B":
        euler, sym = (1,), (1,)
    elif t == "C":
        euler, sym = (n,), (n,)
    elif t == "D":
        euler = (1, n - 1, n)
        sym = (1, n - 1, n) if n % 2 == 0 else (1,)
    elif t == "E" and n == 6:
        euler, sym = (1, 6), ()
    elif t == "E" and n == 7:
        euler, sym = (7,), (7,)
    else:
        euler, sym = (), ()
    label = f"{t}{n}"
    return EulerCatalogEntry(label, euler, sym)


def catalog_crosscheck(x) -> dict:
    """Compare the computed symmetry verdict with the table, where the table applies."""
    e = x if isinstance(x, EulerElement) else check_euler(x, verify=False)
    A = e.algebra
    if A.kind != "sl":
        return {"applicable": False, "reason": f"no table entry for {A.name}"}
    n = A.params["n"]
    j = sl_class_index(e.element)
    entry = euler_catalog(f"A{n - 1}")
    table = j in entry.symmetric_indices
    computed = is_symmetric(e)
    return {
        "applicable": True,
        "root_system": entry.root_system,
        "class_index": j,
        "table_symmetric": table,
        "computed_symmetric": computed,
        "agree": table == computed,
    }
