import os

import hypothesis
import pytest

hypothesis.settings.register_profile("default", max_examples=60, deadline=None)
hypothesis.settings.register_profile("fast", max_examples=10, deadline=None)
hypothesis.settings.register_profile("thorough", max_examples=500, deadline=None)
hypothesis.settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))


@pytest.fixture(scope="session")
def phi10():
    from sklab.jacobi import jacobi_cusp_basis

    return jacobi_cusp_basis(10, 200)


@pytest.fixture(scope="session")
def phi12():
    from sklab.jacobi import jacobi_cusp_basis

    return jacobi_cusp_basis(12, 200)
