import json
from fractions import Fraction

import pytest

from superext.algebra import GradedLinearMap
from superext.extension import (
    extend_endomorphism,
    extend_obstruction_aut,
    fixes_action,
    is_ideal_derivation,
    lift_endomorphism,
    lift_obstruction,
)
from superext.fixtures import (
    central_direct_sum_extension,
    identity_action_module,
    odd_line_module,
)
from superext.linalg import Mat
from superext.sequences import (
    sample_cocycle,
    verify_automorphism_extension,
    verify_five_term,
    verify_ring_sequence,
    verify_monoid_sequence,
    verify_semidirect_automorphisms,
)


def _diag(basis, *cs):
    return GradedLinearMap(
        basis, basis,
        Mat([[Fraction(c) if i == j else Fraction(0) for j in range(len(cs))]
             for i, c in enumerate(map(Fraction, cs))]),
    )


def test_five_term_passes_on_the_corpus(corpus):
    for name, ext in corpus:
        report = verify_five_term(ext)
        assert report.passed, (name, report.to_dict())


def test_five_term_heisenberg_dimensions(h3_ext):
    report = verify_five_term(h3_ext)
    assert report.dims["z1_g"] == 2
    assert report.dims["z1_e"] == 2
    assert report.dims["img_res"] == 0
    assert report.dims["ker_d"] == 0
    assert report.dims["img_d"] == 1
    assert report.dims["h2_g"] == 1
    assert report.dims["ker_inf2"] == 1


def test_five_term_split_extension_has_trivial_connecting_map(sd_ext):
    report = verify_five_term(sd_ext)
    assert report.passed
    assert report.dims["img_d"] == 0
    assert report.dims["ker_d"] == report.dims["end_g_a"]


def test_ring_sequence_passes_on_the_corpus(corpus):
    for name, ext in corpus:
        report = verify_ring_sequence(ext, seed=1, pairs=25)
        assert report.passed, (name, report.to_dict())


def test_automorphism_extension_passes_on_the_corpus(corpus):
    for name, ext in corpus:
        report = verify_automorphism_extension(ext, seed=2)
        assert report.passed, (name, report.to_dict())


def test_heisenberg_scaling_does_not_extend(h3_ext):
    phi = _diag(h3_ext.a_basis, 2)
    cls = extend_obstruction_aut(phi, h3_ext)
    # d(c id) = (1 - c)[beta]
    assert cls.coords == (Fraction(-1),)
    assert extend_endomorphism(phi - GradedLinearMap.identity(h3_ext.a_basis), h3_ext) is None


def test_identity_of_the_ideal_extends(h3_ext):
    phi = GradedLinearMap.identity(h3_ext.a_basis)
    assert extend_obstruction_aut(phi, h3_ext).is_zero
    witness = extend_endomorphism(phi - phi, h3_ext)
    assert witness == GradedLinearMap.identity(h3_ext.e.basis)


def test_monoid_sequence_passes_on_the_corpus(corpus):
    for name, ext in corpus:
        report = verify_monoid_sequence(ext, seed=3)
        assert report.passed, (name, report.to_dict())


def test_monoid_sequence_supplied_samples(ba1_ext):
    samples = [_diag(ba1_ext.g.basis, 2, Fraction(1, 2)),
               _diag(ba1_ext.g.basis, 2, 3)]
    report = verify_monoid_sequence(ba1_ext, psi_samples=samples, seed=4)
    assert report.passed


def test_monoid_sequence_flags_invertible_non_lifting_maps(ba1_ext):
    samples = [_diag(ba1_ext.g.basis, 2, 3)]
    report = verify_monoid_sequence(ba1_ext, psi_samples=samples, seed=4)
    assert any("not surjective" in note for note in report.notes)


def test_monoid_sequence_rejects_bad_samples(sd_ext):
    bad = _diag(sd_ext.g.basis, 2)
    with pytest.raises(Exception):
        verify_monoid_sequence(sd_ext, psi_samples=[bad], seed=0)


def test_odd_heisenberg_lift_criterion_is_the_unit_determinant():
    from superext.fixtures import odd_heisenberg_extension

    ext = odd_heisenberg_extension()
    for b, c in [(2, Fraction(1, 2)), (1, 1), (-1, -1), (3, Fraction(1, 3))]:
        psi = _diag(ext.g.basis, b, c)
        assert fixes_action(psi, ext)
        assert lift_obstruction(psi, ext).is_zero
        assert lift_endomorphism(psi, ext) is not None
    for b, c in [(2, 3), (1, 2), (-1, 1), (2, 1)]:
        psi = _diag(ext.g.basis, b, c)
        cls = lift_obstruction(psi, ext)
        assert cls.coords == (Fraction(b) * Fraction(c) - 1,)
        assert lift_endomorphism(psi, ext) is None


def test_central_extensions_accept_arbitrary_even_endomorphisms(h3_ext, ba1_ext):
    # trivial action: the action-preservation predicate imposes nothing
    assert fixes_action(_diag(h3_ext.g.basis, 4, 7), h3_ext)
    assert fixes_action(_diag(ba1_ext.g.basis, 5, 9), ba1_ext)


def test_central_split_extension_lifts_everything():
    ext = central_direct_sum_extension()
    for entries in [(1, 1), (2, 3), (0, 5), (7, 0)]:
        psi = _diag(ext.g.basis, *entries)
        assert fixes_action(psi, ext)
        assert lift_endomorphism(psi, ext) is not None
    report = verify_monoid_sequence(ext, seed=5)
    assert report.passed
    assert not report.notes


def test_vanishing_h2_extends_a_whole_basis_of_module_endomorphisms(sd_ext, aff_ext):
    from superext.cohomology import c1_positions, map_from_coords
    from superext.extension import extend_endomorphism

    for ext in (sd_ext, aff_ext):
        assert ext.h2_g.dim == 0
        pos = c1_positions(ext.a_basis, ext.a_basis)
        for v in ext.module_end_space.basis:
            phi = map_from_coords(ext.a_basis, ext.a_basis, pos, v)
            assert extend_endomorphism(phi, ext) is not None


def test_block_lift_of_a_quotient_map_has_zero_section_offset():
    from superext.extension import section_offset

    ext = central_direct_sum_extension()
    psi = _diag(ext.g.basis, 2, 3)
    gamma = lift_endomorphism(psi, ext)
    assert gamma is not None
    assert section_offset(gamma, psi, ext).is_zero()


def test_doubling_the_ideal_gives_a_homomorphic_section(sd_ext):
    from superext.algebra import is_homomorphism
    from superext.extension import classify_endomorphism
    from superext.sequences import _ideal_block_map, _restrict_to_ideal

    phi = GradedLinearMap.identity(sd_ext.a_basis).scale(2)
    eps = _ideal_block_map(phi, sd_ext)
    assert is_homomorphism(eps, sd_ext.e, sd_ext.e)
    assert classify_endomorphism(eps, sd_ext).fixes_quotient
    assert _restrict_to_ideal(eps, sd_ext) == phi


def test_semidirect_automorphisms_identity_module():
    m = identity_action_module()
    report = verify_semidirect_automorphisms(m.algebra, m, seed=6)
    assert report.passed, report.to_dict()


def test_semidirect_automorphisms_odd_module():
    m = odd_line_module()
    report = verify_semidirect_automorphisms(m.algebra, m, seed=7)
    assert report.passed, report.to_dict()


def test_sample_cocycle_is_deterministic(h3_ext):
    assert sample_cocycle(h3_ext, 0) == sample_cocycle(h3_ext, 0)
    assert sample_cocycle(h3_ext, 0) != sample_cocycle(h3_ext, 1)
    assert is_ideal_derivation(sample_cocycle(h3_ext, 0), h3_ext)


def test_sample_cocycle_of_zero_dimensional_space_is_zero():
    from superext.algebra import LieSuperalgebra, SuperBasis
    from superext.extension import build_extension

    e = LieSuperalgebra.abelian(SuperBasis([("u", 0), ("v", 0)]))
    ext = build_extension(e, [])
    assert sample_cocycle(ext, 3).is_zero()


def test_reports_serialize_to_json(h3_ext):
    report = verify_five_term(h3_ext)
    payload = json.dumps(report.to_dict())
    assert "five-term" in payload
