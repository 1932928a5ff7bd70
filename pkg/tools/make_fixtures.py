#!/usr/bin/env python3
"""Regenerate the 512x512 grayscale test fixtures under fixtures/.

The generator is fully deterministic (fixed seeds), so the committed PGM
files can be reproduced bit-for-bit. Three scenes:

  smooth_equalized.pgm  smooth blobby scene, histogram-equalized to an
                        exactly flat histogram over tones [57, 184]; its
                        maximum-entropy threshold is 120 for every
                        functional and index, by symmetry of the split.
  bimodal_scene.pgm     dark blobby objects on a bright background; a broad
                        two-mode histogram whose optimal threshold drifts
                        smoothly with the entropic index.
  bright_cells.pgm      bright round cells on a mottled dark background,
                        microscopy style.
"""

import os

import numpy as np

SIZE = 512


def write_pgm(path, pixels):
    header = f"P5\n{pixels.shape[1]} {pixels.shape[0]}\n255\n".encode("ascii")
    with open(path, "wb") as fh:
        fh.write(header)
        fh.write(pixels.astype(np.uint8).tobytes())


def smooth_field(rng, n_blobs=12, ramp=(0.6, 0.4)):
    y, x = np.mgrid[0:SIZE, 0:SIZE] / SIZE
    field = ramp[0] * x + ramp[1] * y
    for _ in range(n_blobs):
        cx, cy = rng.uniform(0, 1, 2)
        s = rng.uniform(0.05, 0.25)
        a = rng.uniform(-1.0, 1.0)
        field += a * np.exp(-((x - cx) ** 2 + (y - cy) ** 2) / (2 * s * s))
    return field


def equalize(field, lo, hi):
    """Rank-transform a field onto [lo, hi] with an exactly flat histogram.

    Requires (hi - lo + 1) to divide the pixel count so every tone gets the
    same number of pixels.
    """
    n_tones = hi - lo + 1
    flat = field.ravel()
    assert flat.size % n_tones == 0
    order = np.argsort(flat, kind="stable")
    ranks = np.empty_like(order)
    ranks[order] = np.arange(flat.size)
    tones = lo + (ranks * n_tones) // flat.size
    return tones.reshape(field.shape).astype(np.uint8)


def make_smooth_equalized():
    rng = np.random.default_rng(20240817)
    # 128 tones divide 512*512 evenly: 2048 pixels per tone.
    return equalize(smooth_field(rng), 57, 184)


def make_bimodal_scene():
    rng = np.random.default_rng(11)
    mask_field = smooth_field(rng, n_blobs=9, ramp=(0.2, 0.1))
    objects = mask_field <= np.quantile(mask_field, 0.36)
    vals = np.where(
        objects,
        rng.normal(62, 18, (SIZE, SIZE)),
        rng.normal(172, 26, (SIZE, SIZE)),
    )
    return np.clip(np.rint(vals), 0, 255).astype(np.uint8)


def make_bright_cells():
    rng = np.random.default_rng(21)
    y, x = np.mgrid[0:SIZE, 0:SIZE].astype(float)
    base = rng.normal(70, 14, (SIZE, SIZE))
    base += 18 * np.sin(x / 97.0) * np.cos(y / 83.0)
    for _ in range(60):
        cx, cy = rng.uniform(20, SIZE - 20, 2)
        r = rng.uniform(8, 26)
        amp = rng.uniform(70, 120)
        d2 = (x - cx) ** 2 + (y - cy) ** 2
        base += amp * np.exp(-d2 / (2 * (r / 1.8) ** 2))
    return np.clip(np.rint(base), 0, 255).astype(np.uint8)


def main():
    out_dir = os.path.join(os.path.dirname(os.path.dirname(os.path.abspath(__file__))), "fixtures")
    os.makedirs(out_dir, exist_ok=True)
    for name, build in (
        ("smooth_equalized.pgm", make_smooth_equalized),
        ("bimodal_scene.pgm", make_bimodal_scene),
        ("bright_cells.pgm", make_bright_cells),
    ):
        path = os.path.join(out_dir, name)
        write_pgm(path, build())
        print(f"wrote {path}")


if __name__ == "__main__":
    main()
