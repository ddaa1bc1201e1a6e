import pytest

from eeg_emotion.models import Dataset
from tests.helpers import cluster_dataset


@pytest.fixture
def clusters() -> Dataset:
    """Ten feature vectors per label in four separable clusters."""
    return cluster_dataset(per_label=10)
