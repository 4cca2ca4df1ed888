import numpy as np
import pytest

from fsefill.image import (
    KNOWN,
    LOST,
    PgmFormatError,
    load_mask_pgm,
    load_pgm,
    save_pgm,
)


def make_pgm(w, h, raster: bytes, header=b"P5") -> bytes:
    return header + b"\n%d %d\n255\n" % (w, h) + raster


def test_round_trip():
    img = np.arange(12, dtype=np.float64).reshape(3, 4) * 20.0
    again = load_pgm(save_pgm(img))
    assert again.shape == (3, 4)
    assert again.dtype == np.float64
    np.testing.assert_array_equal(again, img)


def test_load_basic():
    img = load_pgm(make_pgm(2, 3, bytes([0, 1, 2, 3, 4, 255])))
    assert img.shape == (3, 2)
    assert img[0, 0] == 0.0 and img[2, 1] == 255.0


def test_header_comments_and_whitespace():
    data = b"P5 # magic\n# a comment line\n  2\t2 # dims\n255\n" + bytes(4)
    img = load_pgm(data)
    assert img.shape == (2, 2)


def test_rejects_wrong_magic():
    with pytest.raises(PgmFormatError, match="P5"):
        load_pgm(b"P2\n2 2\n255\n0 0 0 0")


def test_rejects_wrong_maxval():
    with pytest.raises(PgmFormatError, match="maxval"):
        load_pgm(make_pgm(1, 1, b"\x00", header=b"P5").replace(b"255", b"65535"))


def test_rejects_truncated_raster():
    with pytest.raises(PgmFormatError, match="truncated"):
        load_pgm(make_pgm(4, 4, bytes(15)))


def test_rejects_bad_dimension():
    with pytest.raises(PgmFormatError):
        load_pgm(b"P5\n0 3\n255\n")
    with pytest.raises(PgmFormatError):
        load_pgm(b"P5\nx 3\n255\n" + bytes(3))


def test_save_quantization():
    # round half up after clipping to [0, 255]
    img = np.array([[-3.0, 0.49, 0.5, 254.49, 254.5, 300.0]])
    raw = save_pgm(img)
    raster = raw.split(b"255\n", 1)[1]
    assert list(raster) == [0, 0, 1, 254, 255, 255]


def test_save_header():
    raw = save_pgm(np.zeros((2, 5)))
    assert raw.startswith(b"P5\n5 2\n255\n")
    assert len(raw) == len(b"P5\n5 2\n255\n") + 10


def test_mask_mapping():
    raw = make_pgm(2, 2, bytes([0, 255, 7, 0]))
    mask = load_mask_pgm(raw)
    assert mask.dtype == np.uint8
    np.testing.assert_array_equal(mask, [[LOST, KNOWN], [KNOWN, LOST]])
