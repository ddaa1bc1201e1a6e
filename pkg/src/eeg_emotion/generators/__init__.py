"""Synthetic dataset generation and text templates."""

from eeg_emotion.generators.synth import generate_dataset, generate_trial, pink_noise
from eeg_emotion.generators.templates import render_template

__all__ = ["generate_dataset", "generate_trial", "pink_noise", "render_template"]
