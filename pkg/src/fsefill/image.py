"""Grayscale image and loss-mask buffers with binary PGM (P5) I/O.

Images are 2-D float64 arrays (row-major, top-left origin, nominal range
0..255). Arithmetic downstream is real-valued; quantization to 8 bit happens
only when a file is written.

Loss masks are 2-D uint8 arrays over the per-sample states KNOWN, LOST and
RECONSTRUCTED. RECONSTRUCTED never appears in a freshly loaded mask; it is
written by the concealment pipeline only.
"""

import numpy as np

KNOWN = np.uint8(0)
LOST = np.uint8(1)
RECONSTRUCTED = np.uint8(2)

_WHITESPACE = b" \t\n\r\x0b\x0c"


class PgmFormatError(ValueError):
    """Malformed PGM input; the message names the offending header field."""


def _next_token(data: bytes, pos: int) -> tuple[bytes, int]:
    # Skip whitespace and '#' comment lines between header fields.
    n = len(data)
    while pos < n:
        c = data[pos : pos + 1]
        if c in _WHITESPACE:
            pos += 1
        elif c == b"#":
            while pos < n and data[pos : pos + 1] != b"\n":
                pos += 1
        else:
            break
    start = pos
    while pos < n and data[pos : pos + 1] not in _WHITESPACE:
        pos += 1
    if start == pos:
        raise PgmFormatError("unexpected end of header")
    return data[start:pos], pos


def _int_field(data: bytes, pos: int, name: str) -> tuple[int, int]:
    token, pos = _next_token(data, pos)
    try:
        value = int(token)
    except ValueError:
        raise PgmFormatError(f"{name}: not an integer: {token!r}") from None
    return value, pos


def load_pgm(data: bytes) -> np.ndarray:
    """Parse binary PGM (magic P5, maxval 255) into a float64 image."""
    magic, pos = _next_token(data, 0)
    if magic != b"P5":
        raise PgmFormatError(f"magic: expected b'P5', got {magic!r}")
    width, pos = _int_field(data, pos, "width")
    height, pos = _int_field(data, pos, "height")
    if width < 1 or height < 1:
        raise PgmFormatError(f"dimensions: {width}x{height} not positive")
    maxval, pos = _int_field(data, pos, "maxval")
    if maxval != 255:
        raise PgmFormatError(f"maxval: must be 255, got {maxval}")
    # Exactly one whitespace byte separates the header from the raster.
    if pos >= len(data) or data[pos : pos + 1] not in _WHITESPACE:
        raise PgmFormatError("maxval: missing whitespace before raster")
    pos += 1
    payload = data[pos : pos + width * height]
    if len(payload) < width * height:
        raise PgmFormatError(
            f"payload: truncated, need {width * height} bytes, got {len(payload)}"
        )
    raster = np.frombuffer(payload, dtype=np.uint8).reshape(height, width)
    return raster.astype(np.float64)


def save_pgm(img: np.ndarray) -> bytes:
    """Serialize an image as binary PGM, clamping to [0, 255] and rounding
    half away from zero."""
    img = np.asarray(img, dtype=np.float64)
    if img.ndim != 2 or img.size == 0:
        raise ValueError(f"expected nonempty 2-D image, got shape {img.shape}")
    quantized = np.floor(np.clip(img, 0.0, 255.0) + 0.5).astype(np.uint8)
    height, width = quantized.shape
    header = b"P5\n%d %d\n255\n" % (width, height)
    return header + quantized.tobytes()


def load_mask_pgm(data: bytes) -> np.ndarray:
    """Parse a binary PGM into a loss mask: sample 0 -> LOST, nonzero -> KNOWN."""
    raw = load_pgm(data)
    return np.where(raw == 0, LOST, KNOWN).astype(np.uint8)
