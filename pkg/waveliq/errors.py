"""
Exception hierarchy.

Every error raised on bad input derives from WaveliqError. The CLI maps
these to exit code 2; filesystem failures (OSError) map to exit code 1.
"""


class WaveliqError(Exception):
    """Base class for all input and validation failures."""

    exit_code = 2


# --- image and manifest ingestion -------------------------------------------------

class DecodeError(WaveliqError):
    """Corrupt payload or an unsupported container format."""


class UnsupportedChannels(WaveliqError):
    """Colour model that cannot be reduced to 1 or 3 channels (e.g. CMYK)."""


class ParseError(WaveliqError):
    """Malformed manifest row."""

    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class DuplicateId(ParseError):
    """A record_id occurs more than once in a manifest."""

    def __init__(self, record_id, line=None):
        self.record_id = record_id
        super().__init__(f"duplicate record_id {record_id!r}", line=line)


class GeometryMismatch(WaveliqError):
    """Reference and distorted images differ in size or channel count."""

    def __init__(self, ref_shape, dist_shape):
        self.ref_shape = tuple(ref_shape)
        self.dist_shape = tuple(dist_shape)
        super().__init__(
            f"geometry mismatch: reference {_fmt_shape(self.ref_shape)} "
            f"vs distorted {_fmt_shape(self.dist_shape)}"
        )


# --- wavelet and refinement -------------------------------------------------------

class ImageTooSmall(WaveliqError):
    """Input cannot support the requested decomposition depth."""

    def __init__(self, shape, level=1, minimum=(4, 4)):
        self.shape = tuple(shape)
        self.level = level
        super().__init__(
            f"level {level}: input {self.shape[0]}x{self.shape[1]} is smaller than "
            f"{minimum[0]}x{minimum[1]}"
        )


class GridTooSmall(WaveliqError):
    """A coefficient grid has no pair of rows or columns left to split."""

    def __init__(self, shape):
        self.shape = tuple(shape)
        super().__init__(f"grid {self.shape} is too small to split")


class ConfigMismatch(WaveliqError):
    """Refinement settings do not fit the pyramid they are applied to."""


# --- feature-set distances --------------------------------------------------------

class DimMismatch(WaveliqError):
    """Feature sets of different dimension."""


class EmptySet(WaveliqError):
    """Feature set without points."""


class CouplingUnavailable(WaveliqError):
    """Aligned coupling requested for sets of different cardinality."""


class InvalidDistance(WaveliqError):
    """Negative or non-finite distance handed to the similarity map."""


class FormatError(WaveliqError):
    """Feature tensor file is damaged or not a WLFS file."""


# --- histograms -------------------------------------------------------------------

class BadBinCount(WaveliqError):
    """Histogram bin count below 2."""


class ShapeMismatch(WaveliqError):
    """Histograms with different bin or channel counts."""


# --- benchmark statistics ---------------------------------------------------------

class DegenerateInput(WaveliqError):
    """Too few samples or zero variance for a correlation or fit."""


class NonConvergence(WaveliqError):
    """No logistic start converged; ``fit`` holds the best parameters seen."""

    def __init__(self, message, fit=None):
        self.fit = fit
        super().__init__(message)


def _fmt_shape(shape):
    height, width, channels = shape
    return f"{width}x{height}x{channels}"


def describe(exc):
    """One-line ``ClassName: message`` form used in reports and diagnostics."""
    return f"{type(exc).__name__}: {exc}"
