"""Exception types raised by the cyclemap pipeline."""


class CycleMapError(Exception):
    """Base class for all cyclemap errors."""


# --- ingest ---------------------------------------------------------------

class BadMagic(CycleMapError):
    def __init__(self, path, offset, expected, actual):
        self.path, self.offset, self.expected, self.actual = path, offset, expected, actual
        super().__init__(
            f"{path}: bad magic at offset {offset}: expected {expected:#010x}, got {actual:#010x}"
        )


class CountMismatch(CycleMapError):
    def __init__(self, images_path, image_count, labels_path, label_count):
        self.images_path, self.image_count = images_path, image_count
        self.labels_path, self.label_count = labels_path, label_count
        super().__init__(
            f"item counts differ: {images_path} has {image_count} images, "
            f"{labels_path} has {label_count} labels"
        )


class TruncatedFile(CycleMapError):
    def __init__(self, path, offset, needed):
        self.path, self.offset, self.needed = path, offset, needed
        super().__init__(f"{path}: truncated at offset {offset}, needed {needed} more bytes")


class UnparsableName(CycleMapError):
    def __init__(self, name):
        self.name = name
        super().__init__(f"cannot parse label from file name {name!r} (expected <label>_<index>.<ext>)")


class NonGrayscaleImage(CycleMapError):
    def __init__(self, path, mode):
        self.path, self.mode = path, mode
        super().__init__(f"{path}: not an 8-bit grayscale image (mode {mode!r})")


class InsufficientClassMembers(CycleMapError):
    def __init__(self, label, available, requested):
        self.label, self.available, self.requested = label, available, requested
        super().__init__(
            f"class {label} has only {available} items, {requested} requested"
        )


# --- filtration -----------------------------------------------------------

class GridTooSmall(CycleMapError):
    def __init__(self, width, height):
        self.width, self.height = width, height
        super().__init__(f"grid must be at least 2x2, got {width}x{height}")


class DimensionMismatch(CycleMapError):
    def __init__(self, expected, actual):
        self.expected, self.actual = expected, actual
        super().__init__(f"grid dimensions {actual} do not match complex dimensions {expected}")


# --- vectorize ------------------------------------------------------------

class DegenerateScale(CycleMapError):
    def __init__(self, b):
        self.b = b
        super().__init__(f"weight scale must be positive, got {b}")


class ResolutionMismatch(CycleMapError):
    def __init__(self, a, b):
        self.a, self.b = a, b
        super().__init__(f"persistence image resolutions differ: {a} vs {b}")


# --- analysis -------------------------------------------------------------

class EigenFailure(CycleMapError):
    def __init__(self, detail):
        self.detail = detail
        super().__init__(f"eigendecomposition failed: {detail}")


class PerplexityTooLarge(CycleMapError):
    def __init__(self, perplexity, n):
        self.perplexity, self.n = perplexity, n
        super().__init__(
            f"perplexity {perplexity} too large for {n} items (need n > 3*perplexity)"
        )


# --- project --------------------------------------------------------------

class ChecksumMismatch(CycleMapError):
    def __init__(self, path):
        self.path = path
        super().__init__(f"{path}: checksum does not match manifest")


class MissingArtifact(CycleMapError):
    def __init__(self, item_id, kind):
        self.item_id, self.kind = item_id, kind
        super().__init__(f"missing {kind} artifact for item {item_id!r}")


class VersionMismatch(CycleMapError):
    def __init__(self, expected, actual):
        self.expected, self.actual = expected, actual
        super().__init__(f"project version {actual!r} not supported (expected {expected!r})")
