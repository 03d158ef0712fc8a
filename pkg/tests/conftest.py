import pytest

from triporo import TriplePorosityParams

# Carbonate-style reference set used throughout: fracture-dominated flow,
# vug-dominated storage, weak interporosity coupling.
REF_KWARGS = dict(omega_f=0.02, omega_v=0.8, kappa_f=0.75, kappa_v=0.02,
                  lambda_mf=1e-3, lambda_mv=1e-8, lambda_fv=1e-5)


@pytest.fixture
def ref_params() -> TriplePorosityParams:
    return TriplePorosityParams(**REF_KWARGS)


@pytest.fixture
def ref_kwargs() -> dict:
    return dict(REF_KWARGS)
