import pytest

from superext import fixtures


@pytest.fixture(scope="session")
def h3_ext():
    return fixtures.heisenberg3_extension()


@pytest.fixture(scope="session")
def ba1_ext():
    return fixtures.odd_heisenberg_extension()


@pytest.fixture(scope="session")
def sd_ext():
    return fixtures.identity_semidirect_extension()


@pytest.fixture(scope="session")
def aff_ext():
    return fixtures.affine_scaling_extension()


@pytest.fixture(scope="session")
def corpus(h3_ext, ba1_ext, sd_ext, aff_ext):
    return [
        ("heisenberg3", h3_ext),
        ("odd_heisenberg", ba1_ext),
        ("identity_semidirect", sd_ext),
        ("affine_scaling", aff_ext),
    ]


@pytest.fixture(scope="session")
def all_even_corpus(h3_ext, sd_ext, aff_ext):
    return [
        ("heisenberg3", h3_ext),
        ("identity_semidirect", sd_ext),
        ("affine_scaling", aff_ext),
        ("central_direct_sum", fixtures.central_direct_sum_extension()),
    ]
