"""Intensity statistics used for surface-change scoring.

Images are plain uint8 numpy arrays: (H, W) grayscale or (H, W, 3) RGB.
Intensity distributions are length-256 float64 arrays summing to 1.
"""

from __future__ import annotations

import numpy as np

from .errors import InvalidImageError

DEFAULT_EPSILON = 1e-10

_LUMA = np.array([0.299, 0.587, 0.114])


def num_channels(img: np.ndarray) -> int:
    if img.ndim == 2:
        return 1
    if img.ndim == 3 and img.shape[2] == 3:
        return 3
    raise InvalidImageError(f"expected (H, W) or (H, W, 3) image, got shape {img.shape}")


def to_grayscale(img: np.ndarray) -> np.ndarray:
    """BT.601 luma conversion, rounded to uint8."""
    if num_channels(img) != 1:
        luma = img.astype(np.float64) @ _LUMA
        return np.clip(np.rint(luma), 0, 255).astype(np.uint8)
    raise InvalidImageError("to_grayscale requires a 3-channel image")


def intensity_counts(img: np.ndarray, channel: int = 0) -> np.ndarray:
    """Raw 256-bin counts for one channel of one image."""
    nch = num_channels(img)
    if not 0 <= channel < nch:
        raise InvalidImageError(f"channel {channel} out of range for {nch}-channel image")
    plane = img if nch == 1 else img[:, :, channel]
    return np.bincount(plane.ravel(), minlength=256).astype(np.float64)


def channel_distribution(images, channel: int) -> np.ndarray:
    """Normalized pooled intensity histogram of one channel across images."""
    images = list(images)
    if not images:
        raise InvalidImageError("cannot build a distribution from zero images")
    counts = np.zeros(256)
    for img in images:
        counts += intensity_counts(img, channel)
    return counts / counts.sum()


def kld_channel(p: np.ndarray, q: np.ndarray, epsilon: float = DEFAULT_EPSILON) -> float:
    """Smoothed Kullback-Leibler divergence between two 256-bin distributions.

    Natural log; ``epsilon`` guards empty bins. Identical inputs score
    exactly 0.
    """
    p = np.asarray(p, dtype=np.float64)
    q = np.asarray(q, dtype=np.float64)
    return float(np.sum(p * np.log((p + epsilon) / (q + epsilon))))


def image_distributions(img: np.ndarray) -> list[np.ndarray]:
    """Per-channel normalized histograms of a single image."""
    return [channel_distribution([img], c) for c in range(num_channels(img))]


def kld_score(img: np.ndarray, baseline, epsilon: float = DEFAULT_EPSILON) -> float:
    """Divergence of one image from baseline per-channel distributions.

    For color input this is the mean of the three per-channel divergences;
    for grayscale it is the single-channel divergence.
    """
    nch = num_channels(img)
    baseline = list(baseline)
    if len(baseline) != nch:
        raise InvalidImageError(
            f"baseline has {len(baseline)} channel(s), image has {nch}")
    scores = [
        kld_channel(channel_distribution([img], c), baseline[c], epsilon)
        for c in range(nch)
    ]
    return float(np.mean(scores))


def joint_intensity_histogram(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """256x256 co-occurrence counts of intensities at identical pixels.

    Entry (i, j) counts pixel locations where ``a`` reads i and ``b`` reads j.
    Both inputs must be grayscale and the same shape.
    """
    if num_channels(a) != 1 or num_channels(b) != 1:
        raise InvalidImageError("joint histogram requires grayscale inputs")
    if a.shape != b.shape:
        raise InvalidImageError(f"image shapes differ: {a.shape} vs {b.shape}")
    joint = a.ravel().astype(np.int64) * 256 + b.ravel()
    return np.bincount(joint, minlength=65536).astype(np.float64).reshape(256, 256)


def jih_symmetry_score(h: np.ndarray) -> float:
    """Symmetry of a square matrix, from 0 (antisymmetric) to 1 (symmetric).

    Splits ``h`` into symmetric and antisymmetric parts and compares their
    Frobenius norms. An all-zero matrix scores 1 (no evidence of asymmetry).
    """
    h = np.asarray(h, dtype=np.float64)
    if h.ndim != 2 or h.shape[0] != h.shape[1]:
        raise InvalidImageError("symmetry score requires a square matrix")
    sym = 0.5 * (h + h.T)
    anti = 0.5 * (h - h.T)
    ns = np.linalg.norm(sym)
    na = np.linalg.norm(anti)
    if ns + na == 0.0:
        return 1.0
    return 0.5 * ((ns - na) / (ns + na) + 1.0)
