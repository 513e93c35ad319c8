import time

import pytest

from tricert.bimodule import hom_bimodule, toda_rank_functor, truncation_self_functor
from tricert.category import build_toda_category, truncated_proj_category
from tricert.catcoh import CohomologyGroup
from tricert.zmod import ZModMatrix


@pytest.fixture(scope="session")
def toda():
    return build_toda_category()


@pytest.fixture(scope="session")
def toda_phi(toda):
    return toda_rank_functor(toda, ZModMatrix.from_rows(4, [[2]]))


@pytest.fixture(scope="session")
def hom_coeffs(toda_phi):
    return hom_bimodule(toda_phi, coeff=(4,))


@pytest.fixture(scope="session")
def hom2_coeffs(toda_phi):
    return hom_bimodule(toda_phi, coeff=(2,))


@pytest.fixture(scope="session")
def h3_timed(toda, hom_coeffs):
    """Full-complex H^3 with Hom coefficients, plus its wall time."""
    t0 = time.perf_counter()
    h = CohomologyGroup(toda, hom_coeffs, 3)
    return h, time.perf_counter() - t0


@pytest.fixture(scope="session")
def h3(h3_timed):
    return h3_timed[0]


@pytest.fixture(scope="session")
def h3_mod2(toda, hom2_coeffs):
    return CohomologyGroup(toda, hom2_coeffs, 3)


@pytest.fixture(scope="session")
def p22():
    return truncated_proj_category(2, 2)


@pytest.fixture(scope="session")
def p41():
    return truncated_proj_category(4, 1)


@pytest.fixture(scope="session")
def p42():
    return truncated_proj_category(4, 2)


@pytest.fixture(scope="session")
def hom_p41(p41):
    return hom_bimodule(truncation_self_functor(p41, 4), coeff=(4,))


@pytest.fixture(scope="session")
def hom_p22(p22):
    return hom_bimodule(truncation_self_functor(p22, 2), coeff=(2,))


@pytest.fixture(scope="session")
def default_report():
    from tricert.certify import run_certificate
    return run_certificate()
