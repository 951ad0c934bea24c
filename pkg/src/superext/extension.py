"""Abelian extensions 0 -> a -> e -> g -> 0 and their endomorphism theory.

An extension record is built from an ambient algebra and a set of basis
indices spanning an abelian ideal.  Everything else is derived: the
quotient, the canonical even section (complement basis elements represent
quotient classes), the induced action g·a = [s(g), a], and the 2-cocycle
beta(x, y) = [s x, s y] - s [x, y].

Obstruction conventions:

* extending h in End_g(a): class of -(h ∘ beta);
* extending an automorphism phi: class of beta - phi ∘ beta (the two agree
  under phi = id + h);
* lifting psi in End^a(g): class of beta ∘ (psi x psi) - beta, and a lift
  solves d(lambda) = beta - beta ∘ (psi x psi).

Membership in every endomorphism set is recomputed from the definitions on
each call; callers cannot assert flags.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Optional, Sequence

from .algebra import (
    GradedLinearMap,
    LieSuperalgebra,
    ModuleAction,
    SuperBasis,
    is_homomorphism,
    quotient_by_ideal,
    validate_module,
    validate_superalgebra,
)
from .cohomology import (
    Cochain2,
    CohomologyClass,
    CohomologyPresentation,
    c1_positions,
    c2_positions,
    class_of,
    coboundary1,
    cochain2_to_coords,
    derivation_space,
    h1,
    h2,
    is_cocycle1,
    is_cocycle2,
    map_from_coords,
)
from .errors import MembershipError, NotAnIdealError, ShapeError
from .linalg import (
    Mat,
    SubspacePresentation,
    Vec,
    add_vec,
    inverse,
    is_zero_vec,
    kernel_basis,
    solve,
    sub_vec,
    unit_vec,
    zero_vec,
)


def _require(condition: bool, message: str) -> None:
    if not condition:
        raise MembershipError(message)


class AbelianExtension:
    """An abelian extension with its derived quotient, section, action, cocycle."""

    def __init__(self, e: LieSuperalgebra, ideal_indices: Iterable[int]):
        bad = validate_superalgebra(e)
        if bad is not None:
            raise MembershipError(f"ambient algebra fails validation: {bad}")
        ideal = tuple(sorted(set(int(i) for i in ideal_indices)))
        for i in ideal:
            if not 0 <= i < e.dim:
                raise ShapeError(f"ideal index {i} out of range")
        for i in ideal:
            for j in ideal:
                if not is_zero_vec(e.structure[i][j]):
                    raise NotAnIdealError(
                        f"ideal is not abelian: [{e.basis.names[i]},{e.basis.names[j]}] != 0"
                    )
        g, projection = quotient_by_ideal(e, ideal)

        self.e = e
        self.ideal_indices = ideal
        self.complement_indices = tuple(i for i in range(e.dim) if i not in set(ideal))
        self.g = g
        self.projection = projection
        self.a_basis = SuperBasis([(e.basis.names[i], e.basis.parity(i)) for i in ideal])

        ne = e.dim
        self.inclusion = GradedLinearMap(
            self.a_basis, e.basis,
            Mat.from_columns([unit_vec(ne, i) for i in ideal], rows=ne),
        )
        self.section = GradedLinearMap(
            g.basis, e.basis,
            Mat.from_columns([unit_vec(ne, i) for i in self.complement_indices], rows=ne),
        )

        action = [
            [self.a_coords(e.structure[ci][m]) for m in ideal]
            for ci in self.complement_indices
        ]
        self.action = ModuleAction(g, self.a_basis, action)
        bad = validate_module(self.action)
        if bad is not None:
            raise MembershipError(f"induced action fails the module axioms: {bad}")

        # the complement part of [s x, s y] is exactly s([x, y]); the cocycle
        # is the ideal part that remains
        tensor = [
            [self.a_coords(e.structure[cp][cq], strict=False)
             for cq in self.complement_indices]
            for cp in self.complement_indices
        ]
        self.beta = Cochain2(g.basis, self.a_basis, tensor)
        if not is_cocycle2(self.beta, g, self.action):
            raise MembershipError("extracted 2-cochain is not a cocycle")

    @property
    def dim_e(self) -> int:
        return self.e.dim

    @property
    def dim_a(self) -> int:
        return len(self.ideal_indices)

    @property
    def dim_g(self) -> int:
        return self.g.dim

    def a_coords(self, v: Sequence[Fraction], strict: bool = True) -> Vec:
        """Ideal coordinates of an ambient vector; strict mode requires the
        complement part to vanish."""
        if strict:
            for i in self.complement_indices:
                if v[i] != 0:
                    raise MembershipError("vector does not lie in the ideal")
        return tuple(v[i] for i in self.ideal_indices)

    def is_central(self) -> bool:
        return self.action.is_trivial()

    def is_split_on_section(self) -> bool:
        """Whether the canonical section is already a homomorphism."""
        return self.beta.is_zero()

    # -- cached derived spaces -------------------------------------------

    @cached_property
    def adjoint(self) -> ModuleAction:
        """The ideal as a module over the ambient algebra (adjoint action)."""
        act = [
            [self.a_coords(self.e.structure[i][m]) for m in self.ideal_indices]
            for i in range(self.dim_e)
        ]
        return ModuleAction(self.e, self.a_basis, act)

    @cached_property
    def z1_e(self) -> SubspacePresentation:
        return derivation_space(self.e, self.adjoint)

    @cached_property
    def z1_g(self) -> SubspacePresentation:
        return derivation_space(self.g, self.action)

    @cached_property
    def module_end_space(self) -> SubspacePresentation:
        """End_g(a) as a subspace of the even map coordinates on a."""
        pos = c1_positions(self.a_basis, self.a_basis)
        rows_count = self.dim_g * self.dim_a * self.dim_a
        columns = []
        for p in range(len(pos)):
            phi = map_from_coords(self.a_basis, self.a_basis, pos, unit_vec(len(pos), p))
            residual: list[Fraction] = []
            for i in range(self.dim_g):
                for m in range(self.dim_a):
                    lhs = phi.apply(self.action.act_basis(i, m))
                    rhs = self.action.act(unit_vec(self.dim_g, i), phi.image_of_basis(m))
                    residual.extend(sub_vec(lhs, rhs))
            columns.append(tuple(residual))
        return kernel_basis(Mat.from_columns(columns, rows=rows_count))

    @cached_property
    def h1_g(self) -> CohomologyPresentation:
        return h1(self.g, self.action)

    @cached_property
    def h2_g(self) -> CohomologyPresentation:
        return h2(self.g, self.action)

    @cached_property
    def h2_e(self) -> CohomologyPresentation:
        return h2(self.e, self.adjoint)

    def __repr__(self) -> str:
        names = [self.e.basis.names[i] for i in self.ideal_indices]
        return f"AbelianExtension(ideal=<{', '.join(names)}> in {self.e!r})"


def build_extension(e: LieSuperalgebra, ideal_indices: Iterable[int]) -> AbelianExtension:
    """Derive the full extension record from an algebra and an abelian ideal."""
    return AbelianExtension(e, ideal_indices)


@dataclass(frozen=True)
class EndFlags:
    """Recomputed membership flags of an endomorphism of the ambient algebra."""

    homomorphism: bool
    preserves_ideal: bool
    fixes_ideal_pointwise: bool
    induces_identity: bool

    @property
    def fixes_quotient(self) -> bool:
        """Ideal-preserving homomorphism inducing the identity on the quotient."""
        return self.homomorphism and self.preserves_ideal and self.induces_identity

    @property
    def fixes_ideal(self) -> bool:
        """Homomorphism restricting to the identity on the ideal."""
        return self.homomorphism and self.fixes_ideal_pointwise

    @property
    def fixes_both(self) -> bool:
        return self.fixes_quotient and self.fixes_ideal


def classify_endomorphism(f: GradedLinearMap, ext: AbelianExtension) -> EndFlags:
    """Compute all membership flags of a candidate endomorphism of e."""
    if f.domain != ext.e.basis or f.codomain != ext.e.basis:
        raise ShapeError("map is not an endomorphism of the ambient algebra")
    hom = is_homomorphism(f, ext.e, ext.e)
    preserves = True
    fixes = True
    for m, idx in enumerate(ext.ideal_indices):
        img = f.image_of_basis(idx)
        if any(img[c] != 0 for c in ext.complement_indices):
            preserves = False
        if img != unit_vec(ext.dim_e, idx):
            fixes = False
    induces = True
    for k, idx in enumerate(ext.complement_indices):
        if ext.projection.apply(f.image_of_basis(idx)) != unit_vec(ext.dim_g, k):
            induces = False
            break
    return EndFlags(hom, preserves, fixes and preserves, induces)


def is_ideal_derivation(h: GradedLinearMap, ext: AbelianExtension) -> bool:
    """Whether h is an even derivation of e into the ideal."""
    if h.domain != ext.e.basis or h.codomain != ext.a_basis:
        raise ShapeError("map is not of the shape e -> a")
    return is_cocycle1(h, ext.e, ext.adjoint)


def is_module_endomorphism(phi: GradedLinearMap, ext: AbelianExtension) -> bool:
    """Whether phi is an even endomorphism of the ideal commuting with the action."""
    if phi.domain != ext.a_basis or phi.codomain != ext.a_basis:
        raise ShapeError("map is not an endomorphism of the ideal")
    if phi.degree != 0:
        return False
    for i in range(ext.dim_g):
        for m in range(ext.dim_a):
            lhs = phi.apply(ext.action.act_basis(i, m))
            rhs = ext.action.act(unit_vec(ext.dim_g, i), phi.image_of_basis(m))
            if lhs != rhs:
                return False
    return True


def fixes_action(psi: GradedLinearMap, ext: AbelianExtension) -> bool:
    """Whether psi is an endomorphism of the quotient with psi(x)·a = x·a."""
    if psi.domain != ext.g.basis or psi.codomain != ext.g.basis:
        raise ShapeError("map is not an endomorphism of the quotient")
    if not is_homomorphism(psi, ext.g, ext.g):
        return False
    for i in range(ext.dim_g):
        col = psi.image_of_basis(i)
        for m in range(ext.dim_a):
            if ext.action.act(col, unit_vec(ext.dim_a, m)) != ext.action.act_basis(i, m):
                return False
    return True


# -- the derivation picture of quotient-fixing endomorphisms --------------


def from_derivation(h: GradedLinearMap, ext: AbelianExtension) -> GradedLinearMap:
    """x -> x + h(x), an ideal-preserving endomorphism inducing the identity."""
    _require(is_ideal_derivation(h, ext), "not an even derivation into the ideal")
    f = GradedLinearMap(
        ext.e.basis, ext.e.basis,
        Mat.identity(ext.dim_e) + ext.inclusion.matrix @ h.matrix,
    )
    flags = classify_endomorphism(f, ext)
    assert flags.fixes_quotient
    return f


def to_derivation(f: GradedLinearMap, ext: AbelianExtension) -> GradedLinearMap:
    """Inverse of `from_derivation`: recover h = f - id as a map into the ideal."""
    flags = classify_endomorphism(f, ext)
    _require(
        flags.fixes_quotient,
        "map is not an ideal-preserving homomorphism inducing the identity",
    )
    diff = f.matrix - Mat.identity(ext.dim_e)
    rows = [diff.row(i) for i in ext.ideal_indices]
    h = GradedLinearMap(ext.e.basis, ext.a_basis, Mat(rows, cols=ext.dim_e))
    assert is_ideal_derivation(h, ext)
    return h


def _require_quotient_fixing(maps, ext: AbelianExtension) -> None:
    for m in maps:
        _require(classify_endomorphism(m, ext).fixes_quotient,
                 "ring operations need quotient-fixing endomorphisms")


def _ring_add_matrix(f: GradedLinearMap, g: GradedLinearMap, n: int) -> Mat:
    return f.matrix + g.matrix - Mat.identity(n)


def _ring_mul_matrix(f: GradedLinearMap, g: GradedLinearMap, n: int) -> Mat:
    ident = Mat.identity(n)
    return f.matrix @ g.matrix - f.matrix - g.matrix + ident + ident


def ring_add(f: GradedLinearMap, g: GradedLinearMap, ext: AbelianExtension) -> GradedLinearMap:
    """Transported addition on quotient-fixing endomorphisms: x -> f(x) - x + g(x).

    The identity map is the zero element of this ring.
    """
    _require_quotient_fixing((f, g), ext)
    out = GradedLinearMap(ext.e.basis, ext.e.basis, _ring_add_matrix(f, g, ext.dim_e))
    assert classify_endomorphism(out, ext).fixes_quotient
    return out


def ring_mul(f: GradedLinearMap, g: GradedLinearMap, ext: AbelianExtension) -> GradedLinearMap:
    """Transported multiplication: x -> f(g(x)) - f(x) - g(x) + 2x."""
    _require_quotient_fixing((f, g), ext)
    out = GradedLinearMap(ext.e.basis, ext.e.basis, _ring_mul_matrix(f, g, ext.dim_e))
    assert classify_endomorphism(out, ext).fixes_quotient
    return out


def quasi_mul(f: GradedLinearMap, g: GradedLinearMap, ext: AbelianExtension) -> GradedLinearMap:
    """The ring's circle operation f*g = f + g + f·g, evaluated through the
    transported ring operations; it turns out to equal composition."""
    _require_quotient_fixing((f, g), ext)
    n = ext.dim_e
    fg = GradedLinearMap(ext.e.basis, ext.e.basis, _ring_mul_matrix(f, g, n))
    added = GradedLinearMap(ext.e.basis, ext.e.basis, _ring_add_matrix(f, g, n))
    out = GradedLinearMap(ext.e.basis, ext.e.basis, _ring_add_matrix(added, fg, n))
    assert classify_endomorphism(out, ext).fixes_quotient
    return out


def derivation_compose(h: GradedLinearMap, k: GradedLinearMap, ext: AbelianExtension) -> GradedLinearMap:
    """h ∘ k as maps e -> a, going through the inclusion of the ideal."""
    _require(is_ideal_derivation(h, ext) and is_ideal_derivation(k, ext),
             "composition needs derivations into the ideal")
    out = h.compose(ext.inclusion.compose(k))
    assert is_ideal_derivation(out, ext)
    return out


def shifted_restriction(f: GradedLinearMap, ext: AbelianExtension) -> GradedLinearMap:
    """x -> f(x) - x on the ideal; a module endomorphism of the ideal."""
    h = to_derivation(f, ext)
    out = h.compose(ext.inclusion)
    assert is_module_endomorphism(out, ext)
    return out


def quasiregular_inverse(f: GradedLinearMap, ext: AbelianExtension) -> Optional[GradedLinearMap]:
    """Circle-inverse of f when it exists, i.e. when f is bijective."""
    _require(classify_endomorphism(f, ext).fixes_quotient,
             "quasiregular inverse needs a quotient-fixing endomorphism")
    inv = inverse(f.matrix)
    if inv is None:
        return None
    g = GradedLinearMap(ext.e.basis, ext.e.basis, inv)
    assert classify_endomorphism(g, ext).fixes_quotient
    ident = GradedLinearMap.identity(ext.e.basis)
    assert quasi_mul(f, g, ext) == ident and quasi_mul(g, f, ext) == ident
    return g


# -- obstruction classes and the extend solver -----------------------------


def extend_obstruction(h: GradedLinearMap, ext: AbelianExtension) -> CohomologyClass:
    """Obstruction class -[h ∘ beta] to extending a module endomorphism h."""
    _require(is_module_endomorphism(h, ext), "not a module endomorphism of the ideal")
    return class_of(ext.beta.postcompose(h).scale(-1), ext.h2_g)


def extend_obstruction_aut(phi: GradedLinearMap, ext: AbelianExtension) -> CohomologyClass:
    """Obstruction class [beta - phi ∘ beta] to extending an automorphism phi."""
    _require(is_module_endomorphism(phi, ext), "not a module endomorphism of the ideal")
    _require(inverse(phi.matrix) is not None, "map is not invertible")
    return class_of(ext.beta - ext.beta.postcompose(phi), ext.h2_g)


def extend_endomorphism(phi: GradedLinearMap, ext: AbelianExtension) -> Optional[GradedLinearMap]:
    """Extend a module endomorphism of the ideal to a quotient-fixing
    endomorphism of e, or None when impossible.

    Solves the linear system for an even derivation f: e -> a with
    f restricted to the ideal equal to phi, free variables set to 0, and
    returns x -> x + f(x).  The solver never consults the obstruction class.
    """
    _require(is_module_endomorphism(phi, ext), "not a module endomorphism of the ideal")
    pos1 = c1_positions(ext.e.basis, ext.a_basis)
    pos2 = c2_positions(ext.e.basis, ext.a_basis)
    columns = []
    for p in range(len(pos1)):
        f = map_from_coords(ext.e.basis, ext.a_basis, pos1, unit_vec(len(pos1), p))
        col = list(cochain2_to_coords(coboundary1(f, ext.e, ext.adjoint), pos2))
        for m, idx in enumerate(ext.ideal_indices):
            col.extend(f.image_of_basis(idx))
        columns.append(tuple(col))
    rhs = list(zero_vec(len(pos2)))
    for m in range(ext.dim_a):
        rhs.extend(phi.image_of_basis(m))
    sol = solve(Mat.from_columns(columns, rows=len(rhs)), tuple(rhs))
    if sol is None:
        return None
    f = map_from_coords(ext.e.basis, ext.a_basis, pos1, sol)
    out = from_derivation(f, ext)
    assert shifted_restriction(out, ext) == phi
    return out


# -- the monoid picture: induced quotient maps and the lift solver ---------


def induced_on_quotient(gamma: GradedLinearMap, ext: AbelianExtension) -> GradedLinearMap:
    """The endomorphism p ∘ gamma ∘ s of the quotient, for ideal-fixing gamma."""
    flags = classify_endomorphism(gamma, ext)
    _require(flags.fixes_ideal, "map must be a homomorphism fixing the ideal pointwise")
    psi = ext.projection.compose(gamma).compose(ext.section)
    assert fixes_action(psi, ext)
    return psi


def section_offset(gamma: GradedLinearMap, psi: GradedLinearMap,
                   ext: AbelianExtension) -> GradedLinearMap:
    """The even map lambda with gamma(s(x)) = lambda(x) + s(psi(x))."""
    _require(induced_on_quotient(gamma, ext) == psi,
             "psi is not the quotient map induced by gamma")
    images = []
    for k in range(ext.dim_g):
        w = sub_vec(
            gamma.apply(ext.section.image_of_basis(k)),
            ext.section.apply(psi.image_of_basis(k)),
        )
        images.append(ext.a_coords(w))
    return GradedLinearMap.from_images(ext.g.basis, ext.a_basis, images)


def lift_obstruction(psi: GradedLinearMap, ext: AbelianExtension) -> CohomologyClass:
    """Obstruction class [beta ∘ (psi x psi) - beta] to lifting psi."""
    _require(fixes_action(psi, ext), "map does not preserve the action on the ideal")
    return class_of(ext.beta.precompose(psi) - ext.beta, ext.h2_g)


def lift_endomorphism(psi: GradedLinearMap, ext: AbelianExtension) -> Optional[GradedLinearMap]:
    """Lift an action-preserving endomorphism of the quotient to an
    endomorphism of e fixing the ideal pointwise, or None when impossible.

    Solves d(lambda) = beta - beta ∘ (psi x psi) for an even lambda: g -> a
    (free variables 0) and builds gamma(a + s(x)) = a + lambda(x) + s(psi(x)).
    The solver never consults the obstruction class.
    """
    _require(fixes_action(psi, ext), "map does not preserve the action on the ideal")
    pos1 = c1_positions(ext.g.basis, ext.a_basis)
    pos2 = c2_positions(ext.g.basis, ext.a_basis)
    columns = [
        cochain2_to_coords(
            coboundary1(map_from_coords(ext.g.basis, ext.a_basis, pos1,
                                        unit_vec(len(pos1), p)),
                        ext.g, ext.action),
            pos2,
        )
        for p in range(len(pos1))
    ]
    rhs = cochain2_to_coords(ext.beta - ext.beta.precompose(psi), pos2)
    sol = solve(Mat.from_columns(columns, rows=len(pos2)), rhs)
    if sol is None:
        return None
    lam = map_from_coords(ext.g.basis, ext.a_basis, pos1, sol)
    cols: list[Vec] = []
    slot_of = {idx: m for m, idx in enumerate(ext.ideal_indices)}
    for idx in range(ext.dim_e):
        if idx in slot_of:
            cols.append(unit_vec(ext.dim_e, idx))
        else:
            k = ext.complement_indices.index(idx)
            cols.append(add_vec(
                ext.inclusion.apply(lam.image_of_basis(k)),
                ext.section.apply(psi.image_of_basis(k)),
            ))
    gamma = GradedLinearMap(ext.e.basis, ext.e.basis,
                            Mat.from_columns(cols, rows=ext.dim_e))
    assert classify_endomorphism(gamma, ext).fixes_ideal
    assert induced_on_quotient(gamma, ext) == psi
    return gamma


# -- inflation and restriction ---------------------------------------------


def inflate1(f: GradedLinearMap, ext: AbelianExtension) -> GradedLinearMap:
    """Precompose a derivation g -> a with the projection; lands in Z1(e, a)."""
    if f.domain != ext.g.basis or f.codomain != ext.a_basis:
        raise ShapeError("map is not of the shape g -> a")
    _require(is_cocycle1(f, ext.g, ext.action), "input is not a derivation of the quotient")
    out = f.compose(ext.projection)
    assert is_ideal_derivation(out, ext)
    return out


def inflate2(b: Cochain2, ext: AbelianExtension) -> Cochain2:
    """Precompose a 2-cocycle of the quotient with the projection twice."""
    if b.source != ext.g.basis or b.target != ext.a_basis or b.degree != 0:
        raise ShapeError("cochain is not of the shape g x g -> a")
    _require(is_cocycle2(b, ext.g, ext.action), "input is not a 2-cocycle of the quotient")
    n = ext.dim_e
    tensor = [
        [b.eval(ext.projection.image_of_basis(i), ext.projection.image_of_basis(j))
         for j in range(n)]
        for i in range(n)
    ]
    out = Cochain2(ext.e.basis, ext.a_basis, tensor)
    assert is_cocycle2(out, ext.e, ext.adjoint)
    return out


def restrict1(f: GradedLinearMap, ext: AbelianExtension) -> GradedLinearMap:
    """Restrict a derivation e -> a to the ideal; a module endomorphism."""
    _require(is_ideal_derivation(f, ext), "input is not a derivation into the ideal")
    out = f.compose(ext.inclusion)
    assert is_module_endomorphism(out, ext)
    return out


def beta_with_section(ext: AbelianExtension, mu: GradedLinearMap) -> Cochain2:
    """The cocycle extracted with the shifted section s' = s + mu.

    Shifting the section by an even map mu: g -> a changes the cocycle by
    the coboundary of mu and nothing else.
    """
    if mu.domain != ext.g.basis or mu.codomain != ext.a_basis or mu.degree != 0:
        raise ShapeError("section shift must be an even map g -> a")
    s2 = ext.section.matrix + ext.inclusion.matrix @ mu.matrix
    cols = [s2.column(k) for k in range(ext.dim_g)]
    tensor = []
    for p in range(ext.dim_g):
        row = []
        for q in range(ext.dim_g):
            w = sub_vec(
                ext.e.bracket(cols[p], cols[q]),
                s2.apply(ext.g.structure[p][q]),
            )
            row.append(ext.a_coords(w))
        tensor.append(row)
    out = Cochain2(ext.g.basis, ext.a_basis, tensor)
    assert is_cocycle2(out, ext.g, ext.action)
    return out
