"""EEG emotion recognition: ingest, preprocessing, features and multi-kernel SVMs."""

__version__ = "0.1.0"
