from pathlib import Path

import numpy as np
import pytest

import entrothresh as et

FIXTURE_DIR = Path(__file__).resolve().parent.parent / "fixtures"

FIXTURE_NAMES = ("smooth_equalized.pgm", "bimodal_scene.pgm", "bright_cells.pgm")

# The fixture whose flat mid-tone histogram pins the optimum at 120 for every
# functional and index.
CANONICAL_FIXTURE = FIXTURE_DIR / "smooth_equalized.pgm"


def pgm_bytes(width, height, pixels, maxval=255, header_comment=None):
    comment = f"#{header_comment}\n" if header_comment else ""
    head = f"P5\n{comment}{width} {height}\n{maxval}\n".encode("ascii")
    return head + bytes(pixels)


@pytest.fixture(scope="session")
def fixture_images():
    return {name: et.load_image(FIXTURE_DIR / name) for name in FIXTURE_NAMES}


@pytest.fixture
def two_tone_image():
    # tones 10 and 200 only: every feasible split leaves two degenerate
    # classes, so all functionals tie and the smallest threshold wins
    rng = np.random.default_rng(3)
    pixels = np.where(rng.random((24, 32)) < 0.4, 10, 200).astype(np.uint8)
    return et.GrayImage(32, 24, pixels)
