"""Exception types shared across the splatdiff pipeline."""


class SplatDiffError(Exception):
    """Base class for all splatdiff errors."""


class AngleNearPi(SplatDiffError):
    """SE(3) log requested for a rotation too close to pi radians."""


class BehindCamera(SplatDiffError):
    """Point has non-positive depth in the camera frame."""


class NonPositiveDepth(SplatDiffError):
    """Back-projection requested with depth <= 0."""


class EmptyScene(SplatDiffError):
    """Operation requires a scene with at least one Gaussian."""


class LengthMismatch(SplatDiffError):
    """Paired lists (masks / poses) have different lengths."""


class ParseError(SplatDiffError):
    """Scene or config file could not be parsed; message names the record."""


class IoError(SplatDiffError):
    """File could not be read or written."""


class PlacementFailure(SplatDiffError):
    """Rejection sampling failed to place all objects."""


class UnknownObjectId(SplatDiffError):
    """Change script references an object id not present in the labels."""


class DegenerateBox(SplatDiffError):
    """Segmentation prompt box does not usably intersect the image."""


class DegenerateInput(SplatDiffError):
    """Otsu thresholding needs at least two distinct values."""


class DimensionMismatch(SplatDiffError):
    """Images or mask sets have incompatible dimensions."""


class EmptyMask(SplatDiffError):
    """Mask has no set pixels."""


class InvalidDepth(SplatDiffError):
    """Too many in-mask pixels have no usable rendered depth."""


class EmptyCloud(SplatDiffError):
    """Point cloud operation received an empty cloud."""


class NoMasks(SplatDiffError):
    """Voxel fusion requires at least one 2D mask."""


class TooFewPoints(SplatDiffError):
    """PnP needs at least 4 correspondences."""


class NoConsensus(SplatDiffError):
    """RANSAC failed to find a model with enough inlier support."""


class EmptyMaskRegion(SplatDiffError):
    """Photometric loss evaluated over an all-zero mask."""


class DivergedRefinement(SplatDiffError):
    """Refinement loss exceeded 10x its initial value."""


class PipelineStageError(SplatDiffError):
    """Wraps an error from a pipeline stage with the stage name."""

    def __init__(self, stage: str, cause: Exception):
        super().__init__(f"stage '{stage}' failed: {cause}")
        self.stage = stage
        self.cause = cause
