"""Even cochains, coboundaries and low-degree cohomology of a module.

Degree conventions:

* 1-cochains are homogeneous linear maps g -> M (degree 0 unless stated);
* the coboundary of a 1-cochain is
      (d f)(x, y) = x·f(y) - (-1)^{|x||y|} y·f(x) - f([x,y]),
  so derivations are exactly the 1-cocycles;
* 2-cocycles are characterized operationally: beta is a cocycle iff the
  bracket ([x,y], x·b - (-1)^{|a||y|} y·a + beta(x,y)) on g ⊕ M satisfies
  the super-Jacobi identity.  This sidesteps any explicit degree-2
  differential and is immune to sign-convention drift; the conditions are
  linear in beta once g and M are valid, which is asserted.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .algebra import (
    GradedLinearMap,
    LieSuperalgebra,
    ModuleAction,
    SuperBasis,
    _sign,
    validate_module,
)
from .errors import MembershipError, ShapeError
from .linalg import (
    Mat,
    QuotientPresentation,
    SubspacePresentation,
    Vec,
    add_vec,
    is_zero_vec,
    kernel_basis,
    quotient_presentation,
    scale_vec,
    sub_vec,
    unit_vec,
    vec,
    zero_vec,
)

Cochain1 = GradedLinearMap


def c1_positions(domain: SuperBasis, codomain: SuperBasis, degree: int = 0) -> list[tuple[int, int]]:
    """Free coordinate slots (row, col) of a homogeneous map matrix."""
    return [
        (n, i)
        for i in range(domain.dim)
        for n in range(codomain.dim)
        if codomain.parity(n) == (domain.parity(i) + degree) % 2
    ]


def map_to_coords(f: GradedLinearMap, positions: list[tuple[int, int]]) -> Vec:
    return tuple(f.matrix.entry(r, c) for r, c in positions)


def map_from_coords(
    domain: SuperBasis,
    codomain: SuperBasis,
    positions: list[tuple[int, int]],
    coords: Sequence[Fraction],
    degree: int = 0,
) -> GradedLinearMap:
    if len(coords) != len(positions):
        raise ShapeError("coordinate vector does not match the position list")
    rows = [[Fraction(0)] * domain.dim for _ in range(codomain.dim)]
    for (r, c), x in zip(positions, coords):
        rows[r][c] = x
    return GradedLinearMap(domain, codomain, Mat(rows, cols=domain.dim), degree)


class Cochain2:
    """Super-antisymmetric bilinear map g x g -> a of homogeneous degree.

    tensor[i][j] holds the coordinates of beta(b_i, b_j); the constructor
    enforces beta(y,x) = -(-1)^{|x||y|} beta(x,y) and homogeneity.
    """

    __slots__ = ("source", "target", "tensor", "degree")

    def __init__(self, source: SuperBasis, target: SuperBasis,
                 tensor: Sequence[Sequence[Sequence]], degree: int = 0):
        n, d = source.dim, target.dim
        if degree not in (0, 1):
            raise ShapeError("degree must be 0 or 1")
        if len(tensor) != n or any(len(row) != n for row in tensor):
            raise ShapeError("tensor does not match the source basis size")
        grid = tuple(tuple(vec(tensor[i][j]) for j in range(n)) for i in range(n))
        for i in range(n):
            for j in range(n):
                if len(grid[i][j]) != d:
                    raise ShapeError("tensor entries have the wrong length")
        for i in range(n):
            for j in range(i, n):
                s = _sign(source.parity(i), source.parity(j))
                if grid[j][i] != scale_vec(-s, grid[i][j]):
                    raise MembershipError(
                        f"tensor breaks super-antisymmetry at "
                        f"({source.names[j]}, {source.names[i]})"
                    )
        for i in range(n):
            for j in range(n):
                want = (source.parity(i) + source.parity(j) + degree) % 2
                for k in range(d):
                    if grid[i][j][k] != 0 and target.parity(k) != want:
                        raise MembershipError(
                            f"tensor entry ({source.names[i]}, {source.names[j]}, "
                            f"{target.names[k]}) breaks homogeneity of degree {degree}"
                        )
        self.source = source
        self.target = target
        self.tensor = grid
        self.degree = degree

    @classmethod
    def zero(cls, source: SuperBasis, target: SuperBasis, degree: int = 0) -> "Cochain2":
        z = zero_vec(target.dim)
        return cls(source, target, [[z] * source.dim for _ in range(source.dim)], degree)

    @classmethod
    def from_upper(cls, source: SuperBasis, target: SuperBasis,
                   entries: dict[tuple[int, int], Sequence[Fraction]], degree: int = 0) -> "Cochain2":
        """Build from entries on pairs i <= j; the rest follows by antisymmetry."""
        n = source.dim
        grid = [[zero_vec(target.dim) for _ in range(n)] for _ in range(n)]
        for (i, j), value in entries.items():
            if i > j:
                raise ShapeError("from_upper expects pairs with i <= j")
            v = vec(value)
            grid[i][j] = v
            s = _sign(source.parity(i), source.parity(j))
            if i != j:
                grid[j][i] = scale_vec(-s, v)
        return cls(source, target, grid, degree)

    def value(self, i: int, j: int) -> Vec:
        return self.tensor[i][j]

    def eval(self, x: Sequence[Fraction], y: Sequence[Fraction]) -> Vec:
        out = list(zero_vec(self.target.dim))
        for i, xi in enumerate(x):
            if xi == 0:
                continue
            for j, yj in enumerate(y):
                c = xi * yj
                if c == 0:
                    continue
                for k, s in enumerate(self.tensor[i][j]):
                    if s != 0:
                        out[k] += c * s
        return tuple(out)

    def __add__(self, other: "Cochain2") -> "Cochain2":
        self._compatible(other)
        n = self.source.dim
        return Cochain2(
            self.source, self.target,
            [[add_vec(self.tensor[i][j], other.tensor[i][j]) for j in range(n)] for i in range(n)],
            self.degree,
        )

    def __sub__(self, other: "Cochain2") -> "Cochain2":
        return self + other.scale(-1)

    def scale(self, c) -> "Cochain2":
        n = self.source.dim
        cc = Fraction(c)
        return Cochain2(
            self.source, self.target,
            [[scale_vec(cc, self.tensor[i][j]) for j in range(n)] for i in range(n)],
            self.degree,
        )

    def precompose(self, psi: GradedLinearMap) -> "Cochain2":
        """beta ∘ (psi x psi) for an even endomorphism psi of the source."""
        if psi.domain != self.source or psi.codomain != self.source or psi.degree != 0:
            raise ShapeError("precompose needs an even endomorphism of the source")
        n = self.source.dim
        return Cochain2(
            self.source, self.target,
            [[self.eval(psi.image_of_basis(i), psi.image_of_basis(j)) for j in range(n)]
             for i in range(n)],
            self.degree,
        )

    def postcompose(self, f: GradedLinearMap) -> "Cochain2":
        """f ∘ beta pointwise, for a homogeneous map f on the target."""
        if f.domain != self.target:
            raise ShapeError("postcompose needs a map defined on the target")
        n = self.source.dim
        return Cochain2(
            self.source, f.codomain,
            [[f.apply(self.tensor[i][j]) for j in range(n)] for i in range(n)],
            (self.degree + f.degree) % 2,
        )

    def is_zero(self) -> bool:
        return all(is_zero_vec(v) for row in self.tensor for v in row)

    def _compatible(self, other: "Cochain2") -> None:
        if (self.source != other.source or self.target != other.target
                or self.degree != other.degree):
            raise ShapeError("cochains are not of the same shape and degree")

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Cochain2)
            and self.source == other.source
            and self.target == other.target
            and self.degree == other.degree
            and self.tensor == other.tensor
        )

    def __hash__(self) -> int:
        return hash((self.source, self.target, self.degree, self.tensor))

    def __repr__(self) -> str:
        return f"Cochain2({self.source!r} -> {self.target!r}, degree={self.degree})"


def c2_positions(source: SuperBasis, target: SuperBasis, degree: int = 0) -> list[tuple[int, int, int]]:
    """Free coordinate slots (i, j, k) of a homogeneous 2-cochain.

    Pairs with i < j, plus the diagonal for odd i (where antisymmetry
    imposes nothing); k runs over target slots of the right parity.
    """
    out = []
    for i in range(source.dim):
        for j in range(i, source.dim):
            if i == j and source.parity(i) == 0:
                continue
            want = (source.parity(i) + source.parity(j) + degree) % 2
            for k in range(target.dim):
                if target.parity(k) == want:
                    out.append((i, j, k))
    return out


def cochain2_to_coords(c: Cochain2, positions: list[tuple[int, int, int]]) -> Vec:
    return tuple(c.tensor[i][j][k] for i, j, k in positions)


def cochain2_from_coords(source: SuperBasis, target: SuperBasis,
                         positions: list[tuple[int, int, int]],
                         coords: Sequence[Fraction], degree: int = 0) -> Cochain2:
    if len(coords) != len(positions):
        raise ShapeError("coordinate vector does not match the position list")
    entries: dict[tuple[int, int], list[Fraction]] = {}
    for (i, j, k), x in zip(positions, coords):
        entries.setdefault((i, j), [Fraction(0)] * target.dim)[k] = x
    return Cochain2.from_upper(source, target, entries, degree)


def coboundary1(lam: Cochain1, g: LieSuperalgebra, m: ModuleAction) -> Cochain2:
    """(d lam)(x,y) = x·lam(y) - (-1)^{|x||y|} y·lam(x) - lam([x,y]).

    Entries are computed on pairs i <= j only; the rest follows by the
    super-antisymmetry of the result (the even diagonal vanishes exactly).
    """
    if m.algebra != g:
        raise ShapeError("module is not over the given algebra")
    if lam.domain != g.basis or lam.codomain != m.space:
        raise ShapeError("cochain bases do not match the algebra and module")
    if lam.degree != 0:
        raise MembershipError("coboundary is defined here for even 1-cochains only")
    n = g.dim
    entries: dict[tuple[int, int], Vec] = {}
    for i in range(n):
        for j in range(i, n):
            if i == j and g.basis.parity(i) == 0:
                continue
            s = _sign(g.basis.parity(i), g.basis.parity(j))
            term = sub_vec(
                m.act_left_basis(i, lam.image_of_basis(j)),
                scale_vec(s, m.act_left_basis(j, lam.image_of_basis(i))),
            )
            entries[(i, j)] = sub_vec(term, lam.apply(g.structure[i][j]))
    return Cochain2.from_upper(g.basis, m.space, entries)


def _twisted_pair_bracket(g: LieSuperalgebra, m: ModuleAction, beta: Cochain2,
                          s: int, t: int) -> tuple[Vec, Vec]:
    """Bracket of combined basis elements of g ⊕ M under the beta twist."""
    ng = g.dim
    if s < ng and t < ng:
        return g.structure[s][t], beta.value(s, t)
    if s < ng and t >= ng:
        return zero_vec(ng), m.action[s][t - ng]
    if s >= ng and t < ng:
        sign = _sign(m.space.parity(s - ng), g.basis.parity(t))
        return zero_vec(ng), scale_vec(-sign, m.action[t][s - ng])
    return zero_vec(ng), zero_vec(m.space.dim)


def _twisted_bracket(g: LieSuperalgebra, m: ModuleAction, beta: Cochain2,
                     x: tuple[Vec, Vec], y: tuple[Vec, Vec]) -> tuple[Vec, Vec]:
    ng, na = g.dim, m.space.dim
    gx = list(x[0]) + list(x[1])
    gy = list(y[0]) + list(y[1])
    out_g = list(zero_vec(ng))
    out_a = list(zero_vec(na))
    for s, xs in enumerate(gx):
        if xs == 0:
            continue
        for t, yt in enumerate(gy):
            c = xs * yt
            if c == 0:
                continue
            bg, ba = _twisted_pair_bracket(g, m, beta, s, t)
            for k, v in enumerate(bg):
                if v != 0:
                    out_g[k] += c * v
            for k, v in enumerate(ba):
                if v != 0:
                    out_a[k] += c * v
    return tuple(out_g), tuple(out_a)


def _twisted_jacobi_residuals(g: LieSuperalgebra, m: ModuleAction, beta: Cochain2) -> list[Fraction]:
    """Flattened super-Jacobi residuals of the beta-twisted sum over all triples."""
    ng, na = g.dim, m.space.dim
    n = ng + na

    def basis_elem(s: int) -> tuple[Vec, Vec]:
        if s < ng:
            return unit_vec(ng, s), zero_vec(na)
        return zero_vec(ng), unit_vec(na, s - ng)

    def parity(s: int) -> int:
        return g.basis.parity(s) if s < ng else m.space.parity(s - ng)

    def br(x, y):
        return _twisted_bracket(g, m, beta, x, y)

    out: list[Fraction] = []
    for s in range(n):
        es = basis_elem(s)
        for t in range(n):
            et = basis_elem(t)
            sg = _sign(parity(s), parity(t))
            for u in range(n):
                eu = basis_elem(u)
                left = br(br(es, et), eu)
                right1 = br(es, br(et, eu))
                right2 = br(et, br(es, eu))
                res_g = sub_vec(sub_vec(left[0], right1[0]), scale_vec(-sg, right2[0]))
                res_a = sub_vec(sub_vec(left[1], right1[1]), scale_vec(-sg, right2[1]))
                out.extend(res_g)
                out.extend(res_a)
    return out


def is_cocycle2(beta: Cochain2, g: LieSuperalgebra, m: ModuleAction) -> bool:
    """Whether the beta-twisted bracket on g ⊕ M satisfies super-Jacobi."""
    if beta.source != g.basis or beta.target != m.space or beta.degree != 0:
        raise ShapeError("cochain bases do not match the algebra and module")
    return all(r == 0 for r in _twisted_jacobi_residuals(g, m, beta))


def is_cocycle1(f: Cochain1, g: LieSuperalgebra, m: ModuleAction) -> bool:
    """Whether f is an even derivation g -> M."""
    if f.domain != g.basis or f.codomain != m.space:
        raise ShapeError("map bases do not match the algebra and module")
    if f.degree != 0:
        return False
    return coboundary1(f, g, m).is_zero()


def _require_valid_module(m: ModuleAction) -> None:
    bad = validate_module(m)
    if bad is not None:
        raise MembershipError(f"invalid module: {bad}")


def cocycle2_space(g: LieSuperalgebra, m: ModuleAction) -> SubspacePresentation:
    """Basis of the even 2-cocycles, in canonical 2-cochain coordinates.

    The defining conditions are the super-Jacobi equations of the twisted
    sum; their linearity in beta is asserted by checking that the residual
    vanishes at beta = 0.
    """
    _require_valid_module(m)
    positions = c2_positions(g.basis, m.space)
    zero_res = _twisted_jacobi_residuals(g, m, Cochain2.zero(g.basis, m.space))
    if any(r != 0 for r in zero_res):
        raise MembershipError("twisted-sum residual is nonzero at beta = 0")
    columns = []
    for p in range(len(positions)):
        unit = cochain2_from_coords(g.basis, m.space, positions, unit_vec(len(positions), p))
        columns.append(tuple(_twisted_jacobi_residuals(g, m, unit)))
    a = Mat.from_columns(columns, rows=len(zero_res))
    return kernel_basis(a)


def coboundary2_space(g: LieSuperalgebra, m: ModuleAction) -> SubspacePresentation:
    """Span of the coboundaries of the even 1-cochains."""
    _require_valid_module(m)
    pos1 = c1_positions(g.basis, m.space)
    pos2 = c2_positions(g.basis, m.space)
    spanning = []
    for p in range(len(pos1)):
        lam = map_from_coords(g.basis, m.space, pos1, unit_vec(len(pos1), p))
        spanning.append(cochain2_to_coords(coboundary1(lam, g, m), pos2))
    return SubspacePresentation.from_spanning(len(pos2), spanning)


def derivation_space(g: LieSuperalgebra, m: ModuleAction) -> SubspacePresentation:
    """Basis of the even derivations g -> M, in 1-cochain coordinates."""
    _require_valid_module(m)
    pos1 = c1_positions(g.basis, m.space)
    pos2 = c2_positions(g.basis, m.space)
    columns = []
    for p in range(len(pos1)):
        lam = map_from_coords(g.basis, m.space, pos1, unit_vec(len(pos1), p))
        columns.append(cochain2_to_coords(coboundary1(lam, g, m), pos2))
    a = Mat.from_columns(columns, rows=len(pos2))
    return kernel_basis(a)


def inner_space(g: LieSuperalgebra, m: ModuleAction) -> SubspacePresentation:
    """Span of the inner derivations x -> x·v over even module elements v."""
    _require_valid_module(m)
    pos1 = c1_positions(g.basis, m.space)
    spanning = []
    for v in range(m.space.dim):
        if m.space.parity(v) != 0:
            continue
        images = [m.act_basis(i, v) for i in range(g.dim)]
        f = GradedLinearMap.from_images(g.basis, m.space, images)
        spanning.append(map_to_coords(f, pos1))
    return SubspacePresentation.from_spanning(len(pos1), spanning)


@dataclass(frozen=True)
class CohomologyPresentation:
    """Cocycles, coboundaries and a chosen complement basis for one degree."""

    source: SuperBasis
    target: SuperBasis
    degree: int
    quotient: QuotientPresentation

    @property
    def dim(self) -> int:
        return self.quotient.dim

    @property
    def cocycle_dim(self) -> int:
        return self.quotient.ambient.dim

    @property
    def coboundary_dim(self) -> int:
        return self.quotient.sub.dim


@dataclass(frozen=True)
class CohomologyClass:
    """A class given by coordinates in the complement basis of a presentation."""

    presentation: CohomologyPresentation
    coords: Vec

    @property
    def is_zero(self) -> bool:
        return is_zero_vec(self.coords)


def h1(g: LieSuperalgebra, m: ModuleAction) -> CohomologyPresentation:
    """Even first cohomology: derivations modulo inner derivations."""
    z = derivation_space(g, m)
    b = inner_space(g, m)
    return CohomologyPresentation(g.basis, m.space, 1, quotient_presentation(z, b))


def h2(g: LieSuperalgebra, m: ModuleAction) -> CohomologyPresentation:
    """Even second cohomology in canonical 2-cochain coordinates."""
    z = cocycle2_space(g, m)
    b = coboundary2_space(g, m)
    return CohomologyPresentation(g.basis, m.space, 2, quotient_presentation(z, b))


def class_of(beta: Cochain2, pres: CohomologyPresentation) -> CohomologyClass:
    """Class of a 2-cocycle in the presentation's complement coordinates."""
    if pres.degree != 2:
        raise ShapeError("presentation is not in degree 2")
    if beta.source != pres.source or beta.target != pres.target or beta.degree != 0:
        raise ShapeError("cochain does not match the presentation")
    positions = c2_positions(pres.source, pres.target)
    try:
        coords = pres.quotient.coordinates_of(cochain2_to_coords(beta, positions))
    except MembershipError:
        raise MembershipError("the 2-cochain is not a cocycle") from None
    return CohomologyClass(pres, coords)


def class_of1(f: Cochain1, pres: CohomologyPresentation) -> CohomologyClass:
    """Class of a derivation in a degree-1 presentation."""
    if pres.degree != 1:
        raise ShapeError("presentation is not in degree 1")
    if f.domain != pres.source or f.codomain != pres.target or f.degree != 0:
        raise ShapeError("cochain does not match the presentation")
    positions = c1_positions(pres.source, pres.target)
    try:
        coords = pres.quotient.coordinates_of(map_to_coords(f, positions))
    except MembershipError:
        raise MembershipError("the 1-cochain is not a cocycle") from None
    return CohomologyClass(pres, coords)


def class_is_zero(cls: CohomologyClass) -> bool:
    return cls.is_zero


def cup(h: Cochain2, f: GradedLinearMap) -> Cochain2:
    """Cup product of a 2-cochain with an endomorphism-valued 0-cochain:

        (h ∪ f)(x, y) = (-1)^{|f|(|x|+|y|)} (-1)^{|f||h(x,y)|} f(h(x,y)).

    For even h the two signs cancel and the result is f ∘ h pointwise.
    """
    if f.domain != h.target or f.codomain != h.target:
        raise ShapeError("cup needs an endomorphism of the cochain's target")
    n = h.source.dim
    tensor = []
    for i in range(n):
        row = []
        for j in range(n):
            pxy = (h.source.parity(i) + h.source.parity(j)) % 2
            ph = (pxy + h.degree) % 2
            sign = Fraction(-1 if (f.degree * pxy + f.degree * ph) % 2 else 1)
            row.append(scale_vec(sign, f.apply(h.tensor[i][j])))
        tensor.append(row)
    return Cochain2(h.source, h.target, tensor, (h.degree + f.degree) % 2)
