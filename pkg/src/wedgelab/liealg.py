"""Matrix-realized Lie algebras with exact structure constants.

Every algebra carries a faithful matrix realization (its "defining
representation") together with structure constants computed from it, so
brackets can be taken either abstractly or by matrix commutators and the two
can be cross-checked.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

from .exactla import RatMatrix, rat_inverse, rref, to_rational


class LieAlgebraError(ValueError):
    pass


class UnsupportedKind(LieAlgebraError):
    pass


class NotInAlgebra(LieAlgebraError):
    pass


class LieAlgebra:
    """A real Lie algebra given by a basis of matrices.

    ``structure_constants[i][j]`` is a dict ``{k: c_ij^k}`` holding the
    nonzero coefficients of ``[b_i, b_j]`` in the basis.
    """

    def __init__(self, name: str, basis: Sequence[RatMatrix], kind: str = "custom",
                 params: dict | None = None, labels: Sequence[str] | None = None) -> None:
        if not basis:
            raise LieAlgebraError("empty basis")
        size = basis[0].shape
        if any(b.shape != size for b in basis) or size[0] != size[1]:
            raise LieAlgebraError("basis matrices must be square and of equal size")
        self.name = name
        self.kind = kind
        self.params = dict(params or {})
        self.basis = tuple(basis)
        self.dim = len(basis)
        self.matrix_size = size[0]
        self.labels = tuple(labels) if labels else tuple(f"b{i}" for i in range(self.dim))
        self._setup_coordinates()
        self.structure_constants = self._compute_structure_constants()

    def _setup_coordinates(self) -> None:
        # Pick dim matrix positions where the flattened basis is independent;
        # coordinates then come from a dim x dim inverse on those positions.
        flat = RatMatrix.from_rows([b.entries for b in self.basis])
        _, pivots = rref(flat)
        if len(pivots) != self.dim:
            raise LieAlgebraError(f"basis of {self.name} is linearly dependent")
        self._positions = [divmod(p, self.matrix_size) for p in pivots]
        square = RatMatrix.from_columns([[b[pos] for pos in self._positions] for b in self.basis])
        inv = rat_inverse(square)
        self._coord_map = [[(j, x) for j, x in enumerate(inv.row(i)) if x] for i in range(self.dim)]

    def _compute_structure_constants(self) -> list[list[dict[int, Fraction]]]:
        c: list[list[dict[int, Fraction]]] = [[{} for _ in range(self.dim)] for _ in range(self.dim)]
        for i in range(self.dim):
            for j in range(i + 1, self.dim):
                coords = self.coords_of(self.basis[i].commutator(self.basis[j]))
                c[i][j] = {k: v for k, v in enumerate(coords) if v}
                c[j][i] = {k: -v for k, v in c[i][j].items()}
        return c

    def __repr__(self) -> str:
        return f"LieAlgebra({self.name}, dim={self.dim})"

    def coords_of(self, matrix: RatMatrix, check: bool = True) -> tuple[Fraction, ...]:
        """Coordinates of a matrix lying in the algebra."""
        if matrix.shape != (self.matrix_size, self.matrix_size):
            raise NotInAlgebra(f"matrix of shape {matrix.shape} is not in {self.name}")
        vals = [matrix[pos] for pos in self._positions]
        coords = tuple(sum((x * vals[j] for j, x in row), Fraction(0)) for row in self._coord_map)
        if check and self._matrix_from_coords(coords) != matrix:
            raise NotInAlgebra(f"matrix is not an element of {self.name}")
        return coords

    def contains_matrix(self, matrix: RatMatrix) -> bool:
        try:
            self.coords_of(matrix)
        except NotInAlgebra:
            return False
        return True

    def _matrix_from_coords(self, coords: Sequence[Fraction]) -> RatMatrix:
        acc = RatMatrix.zeros(self.matrix_size, self.matrix_size)
        for x, b in zip(coords, self.basis):
            if x:
                acc = acc + b.scale(x)
        return acc

    def element(self, coords: Sequence) -> "LieElement":
        coords = tuple(to_rational(c) for c in coords)
        if len(coords) != self.dim:
            raise LieAlgebraError(f"expected {self.dim} coordinates, got {len(coords)}")
        return LieElement(self, coords)

    def from_matrix(self, matrix) -> "LieElement":
        if not isinstance(matrix, RatMatrix):
            matrix = RatMatrix.from_rows(matrix)
        return LieElement(self, self.coords_of(matrix))

    def basis_element(self, i: int) -> "LieElement":
        return self.element([int(k == i) for k in range(self.dim)])

    def zero(self) -> "LieElement":
        return self.element([0] * self.dim)

    def basis_elements(self) -> list["LieElement"]:
        return [self.basis_element(i) for i in range(self.dim)]

    def bracket_coords(self, x: Sequence[Fraction], y: Sequence[Fraction]) -> tuple[Fraction, ...]:
        out = [Fraction(0)] * self.dim
        xs = [(i, a) for i, a in enumerate(x) if a]
        ys = [(j, b) for j, b in enumerate(y) if b]
        for i, a in xs:
            row = self.structure_constants[i]
            for j, b in ys:
                for k, c in row[j].items():
                    out[k] += a * b * c
        return tuple(out)

    def ad_coords(self, x: Sequence[Fraction]) -> RatMatrix:
        out = [[Fraction(0)] * self.dim for _ in range(self.dim)]
        for i, a in enumerate(x):
            if not a:
                continue
            row = self.structure_constants[i]
            for j in range(self.dim):
                for k, c in row[j].items():
                    out[k][j] += a * c
        return RatMatrix._from_rows(out, self.dim)

    def operator_from_map(self, fn) -> RatMatrix:
        """Matrix (in this basis) of a linear map given on defining matrices."""
        return RatMatrix.from_columns([self.coords_of(fn(b)) for b in self.basis])

    def conjugation_operator(self, g: RatMatrix) -> RatMatrix:
        """Ad(g) on the algebra for an invertible defining-representation matrix g."""
        ginv = rat_inverse(g)
        return self.operator_from_map(lambda b: g @ b @ ginv)

    def center(self) -> list["LieElement"]:
        from .exactla import rat_kernel

        stacked = None
        for b in self.basis_elements():
            m = ad(b)
            stacked = m if stacked is None else stacked.vstack(m)
        return [self.element(v) for v in rat_kernel(stacked)]

    def to_json(self) -> dict:
        return {
            "kind": self.kind,
            **self.params,
            "name": self.name,
            "basis": [b.to_json() for b in self.basis],
        }

    @classmethod
    def from_json(cls, data: dict) -> "LieAlgebra":
        kind = data.get("kind", "custom")
        if kind in ("sl", "gl"):
            return build_algebra(f"{kind}({data['n']})")
        if kind == "so":
            return build_algebra(f"so(1,{data['d']})")
        if kind == "sl2_plus_center":
            return build_algebra("sl2_plus_center")
        basis = [RatMatrix.from_json(b) for b in data["basis"]]
        return cls(data.get("name", "custom"), basis, kind=kind)


@dataclass(frozen=True, eq=False)
class LieElement:
    algebra: LieAlgebra
    coords: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        if len(self.coords) != self.algebra.dim:
            raise LieAlgebraError("coordinate length does not match algebra dimension")

    def __eq__(self, other) -> bool:
        if not isinstance(other, LieElement):
            return NotImplemented
        return self.algebra is other.algebra and self.coords == other.coords

    def __hash__(self) -> int:
        return hash((id(self.algebra), self.coords))

    def _same(self, other: "LieElement") -> None:
        if self.algebra is not other.algebra:
            raise LieAlgebraError(f"algebra mismatch: {self.algebra.name} vs {other.algebra.name}")

    def __add__(self, other: "LieElement") -> "LieElement":
        self._same(other)
        return LieElement(self.algebra, tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __sub__(self, other: "LieElement") -> "LieElement":
        self._same(other)
        return LieElement(self.algebra, tuple(a - b for a, b in zip(self.coords, other.coords)))

    def __neg__(self) -> "LieElement":
        return LieElement(self.algebra, tuple(-a for a in self.coords))

    def scale(self, c) -> "LieElement":
        c = to_rational(c)
        return LieElement(self.algebra, tuple(c * a for a in self.coords))

    __mul__ = scale
    __rmul__ = scale

    def is_zero(self) -> bool:
        return not any(self.coords)

    @property
    def matrix(self) -> RatMatrix:
        return self.algebra._matrix_from_coords(self.coords)

    def __repr__(self) -> str:
        terms = [f"{c}*{lab}" for c, lab in zip(self.coords, self.algebra.labels) if c]
        return f"<{self.algebra.name}: {' + '.join(terms) or '0'}>"


def bracket(x: LieElement, y: LieElement) -> LieElement:
    x._same(y)
    return LieElement(x.algebra, x.algebra.bracket_coords(x.coords, y.coords))


def ad(x: LieElement) -> RatMatrix:
    return x.algebra.ad_coords(x.coords)


def killing(x: LieElement, y: LieElement) -> Fraction:
    x._same(y)
    return (ad(x) @ ad(y)).trace()


# -- constructors -----------------------------------------------------------

def _sl_basis(n: int) -> tuple[list[RatMatrix], list[str]]:
    basis, labels = [], []
    for i in range(n):
        for j in range(n):
            if i != j:
                basis.append(RatMatrix.unit(n, i, j))
                labels.append(f"E{i + 1}{j + 1}")
    for i in range(n - 1):
        basis.append(RatMatrix.unit(n, i, i) - RatMatrix.unit(n, i + 1, i + 1))
        labels.append(f"H{i + 1}")
    return basis, labels


def _gl_basis(n: int) -> tuple[list[RatMatrix], list[str]]:
    basis = [RatMatrix.unit(n, i, j) for i in range(n) for j in range(n)]
    labels = [f"E{i + 1}{j + 1}" for i in range(n) for j in range(n)]
    return basis, labels


def boost_generator(d: int, ell: int) -> RatMatrix:
    """k_ell on R^{1+d}: (x0, ..., x_ell, ...) -> (x_ell, ..., x0, ...)."""
    return RatMatrix.unit(d + 1, 0, ell) + RatMatrix.unit(d + 1, ell, 0)


def _so_basis(d: int) -> tuple[list[RatMatrix], list[str]]:
    basis = [boost_generator(d, ell) for ell in range(1, d + 1)]
    labels = [f"k{ell}" for ell in range(1, d + 1)]
    for i in range(1, d + 1):
        for j in range(i + 1, d + 1):
            basis.append(RatMatrix.unit(d + 1, i, j) - RatMatrix.unit(d + 1, j, i))
            labels.append(f"r{i}{j}")
    return basis, labels


def _block(m2: RatMatrix, c) -> RatMatrix:
    rows = [list(m2.row(0)) + [0], list(m2.row(1)) + [0], [0, 0, c]]
    return RatMatrix.from_rows(rows)


def _sl2_plus_center_basis() -> tuple[list[RatMatrix], list[str]]:
    sl2, labels = _sl_basis(2)
    basis = [_block(b, 0) for b in sl2]
    basis.append(RatMatrix.unit(3, 2, 2))
    return basis, labels + ["xi"]


_KIND_RE = re.compile(r"^\s*(sl|gl)\s*\(?\s*(\d+)\s*\)?\s*$|^\s*so\s*\(?\s*1\s*,?\s*(\d+)\s*\)?\s*$")


def parse_kind(kind: str) -> tuple[str, int | None]:
    k = kind.strip().lower().replace("_", "")
    if k in ("sl2pluscenter", "sl2xi", "sl2+xi", "sl2+center"):
        return "sl2_plus_center", None
    m = _KIND_RE.match(k)
    if not m:
        raise UnsupportedKind(f"unsupported algebra kind {kind!r}")
    if m.group(1):
        return m.group(1), int(m.group(2))
    return "so", int(m.group(3))


@lru_cache(maxsize=None)
def _build(kind: str, n: int | None) -> LieAlgebra:
    if kind == "sl":
        if n < 2:
            raise UnsupportedKind("sl(n) needs n >= 2")
        basis, labels = _sl_basis(n)
        return LieAlgebra(f"sl({n})", basis, kind="sl", params={"n": n}, labels=labels)
    if kind == "gl":
        if n < 1:
            raise UnsupportedKind("gl(n) needs n >= 1")
        basis, labels = _gl_basis(n)
        return LieAlgebra(f"gl({n})", basis, kind="gl", params={"n": n}, labels=labels)
    if kind == "so":
        if n < 1:
            raise UnsupportedKind("so(1,d) needs d >= 1")
        basis, labels = _so_basis(n)
        return LieAlgebra(f"so(1,{n})", basis, kind="so", params={"d": n}, labels=labels)
    if kind == "sl2_plus_center":
        basis, labels = _sl2_plus_center_basis()
        return LieAlgebra("sl2+Rxi", basis, kind="sl2_plus_center", labels=labels)
    raise UnsupportedKind(f"unsupported algebra kind {kind!r}")


def build_algebra(kind: str) -> LieAlgebra:
    """Build (and cache) one of sl(n), gl(n), so(1,d), sl2_plus_center."""
    return _build(*parse_kind(kind))


def xi(algebra: LieAlgebra) -> LieElement:
    """The central generator of sl2_plus_center."""
    if algebra.kind != "sl2_plus_center":
        raise UnsupportedKind("xi only exists in sl2_plus_center")
    return algebra.basis_element(algebra.dim - 1)


# Named sl2 elements in the 2x2 picture: sigma_0 generates rotations,
# sigma_1 and sigma_2 are boost generators.
SIGMA0 = RatMatrix.from_rows([[0, "-1/2"], ["1/2", 0]])
SIGMA1 = RatMatrix.from_rows([[0, "1/2"], ["1/2", 0]])
SIGMA2 = RatMatrix.from_rows([["1/2", 0], [0, "-1/2"]])


def sigma(i: int) -> RatMatrix:
    return (SIGMA0, SIGMA1, SIGMA2)[i]


@dataclass(frozen=True)
class RootDatum:
    algebra: LieAlgebra
    cartan_basis: tuple[LieElement, ...]
    roots: tuple[tuple[int, int], ...]          # (i, j) stands for eps_i - eps_j, 0-based
    root_vectors: dict

    def root_value(self, root: tuple[int, int], a: LieElement) -> Fraction:
        i, j = root
        m = a.matrix
        return m[i, i] - m[j, j]


def root_datum(A: LieAlgebra) -> RootDatum:
    if A.kind != "sl":
        raise UnsupportedKind(f"root_datum needs sl(n), got {A.name}")
    n = A.params["n"]
    cartan = tuple(A.from_matrix(RatMatrix.unit(n, i, i) - RatMatrix.unit(n, i + 1, i + 1))
                   for i in range(n - 1))
    roots = tuple((i, j) for i in range(n) for j in range(n) if i != j)
    vectors = {r: A.from_matrix(RatMatrix.unit(n, *r)) for r in roots}
    return RootDatum(A, cartan, roots, vectors)


def diagonal_element(A: LieAlgebra, values: Sequence) -> LieElement:
    return A.from_matrix(RatMatrix.diag(values))
