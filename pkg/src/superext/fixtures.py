"""Stock algebras, modules and extensions used by tests and documentation."""

from __future__ import annotations

from .algebra import LieSuperalgebra, ModuleAction, SuperBasis, semidirect_product
from .extension import AbelianExtension, build_extension


def heisenberg3() -> LieSuperalgebra:
    """Three-dimensional Heisenberg algebra: [x, y] = z, everything even."""
    basis = SuperBasis([("x", 0), ("y", 0), ("z", 0)])
    return LieSuperalgebra.from_brackets(basis, {("x", "y"): {"z": 1}})


def heisenberg3_extension() -> AbelianExtension:
    """Central extension 0 -> <z> -> h3 -> Ab(2) -> 0."""
    return build_extension(heisenberg3(), [2])


def odd_heisenberg() -> LieSuperalgebra:
    """Super Heisenberg algebra on {x | y, z}: x even, y and z odd, [x, y] = z."""
    basis = SuperBasis([("x", 0), ("y", 1), ("z", 1)])
    return LieSuperalgebra.from_brackets(basis, {("x", "y"): {"z": 1}})


def odd_heisenberg_extension() -> AbelianExtension:
    """Central extension 0 -> <z> -> {x|y,z} -> Ab(1|1) -> 0."""
    return build_extension(odd_heisenberg(), [2])


def identity_action_module() -> ModuleAction:
    """One even generator t acting as the identity on Q^2."""
    g = LieSuperalgebra.abelian(SuperBasis([("t", 0)]))
    space = SuperBasis([("v1", 0), ("v2", 0)])
    return ModuleAction(g, space, [[[1, 0], [0, 1]]])


def identity_semidirect_extension() -> AbelianExtension:
    """Split extension of <t> by Q^2 with t acting as the identity."""
    m = identity_action_module()
    _, ext = semidirect_product(m.algebra, m)
    return ext


def affine_scaling_algebra() -> LieSuperalgebra:
    """Basis {x, a1, a2}, all even, with [x, a1] = a1 and [x, a2] = a2."""
    basis = SuperBasis([("x", 0), ("a1", 0), ("a2", 0)])
    return LieSuperalgebra.from_brackets(
        basis, {("x", "a1"): {"a1": 1}, ("x", "a2"): {"a2": 1}}
    )


def affine_scaling_extension() -> AbelianExtension:
    """The extension of the scaling algebra by its abelian ideal <a1, a2>."""
    return build_extension(affine_scaling_algebra(), [1, 2])


def odd_line_module() -> ModuleAction:
    """One even generator t acting as the identity on an odd line <w>."""
    g = LieSuperalgebra.abelian(SuperBasis([("t", 0)]))
    space = SuperBasis([("w", 1)])
    return ModuleAction(g, space, [[[1]]])


def odd_semidirect_extension() -> AbelianExtension:
    """Split extension of <t> by the odd line, [t, w] = w."""
    m = odd_line_module()
    _, ext = semidirect_product(m.algebra, m)
    return ext


def central_direct_sum_extension() -> AbelianExtension:
    """Ab(2) ⊕ Q presented as a central split extension of Ab(2)."""
    e = LieSuperalgebra.abelian(SuperBasis([("u1", 0), ("u2", 0), ("c", 0)]))
    return build_extension(e, [2])


def standard_corpus() -> list[tuple[str, AbelianExtension]]:
    return [
        ("heisenberg3", heisenberg3_extension()),
        ("odd_heisenberg", odd_heisenberg_extension()),
        ("identity_semidirect", identity_semidirect_extension()),
        ("affine_scaling", affine_scaling_extension()),
    ]


def all_even_corpus() -> list[tuple[str, AbelianExtension]]:
    return [
        ("heisenberg3", heisenberg3_extension()),
        ("identity_semidirect", identity_semidirect_extension()),
        ("affine_scaling", affine_scaling_extension()),
        ("central_direct_sum", central_direct_sum_extension()),
    ]
