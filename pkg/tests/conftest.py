import numpy as np
import pytest

from parconcord import (
    DataMatrix,
    ar2_precision,
    available_backends,
    center_columns,
    compute_gram,
    sample_mvn,
)


@pytest.fixture(params=available_backends())
def backend(request):
    """Run the test once per built kernel backend."""
    return request.param


def make_gram(p, n, seed):
    """Centered Gaussian data from the banded truth, as a Gram matrix."""
    data = center_columns(sample_mvn(ar2_precision(p), n, seed=seed))
    return compute_gram(data)


def make_data(p, n, seed):
    data = center_columns(sample_mvn(ar2_precision(p), n, seed=seed))
    return data


def random_data(rng, n, p):
    return center_columns(DataMatrix(rng.standard_normal((n, p))))
