"""Experiment harness exceptions."""


class LabError(Exception):
    """Base class for harness errors."""


class LabConfigError(LabError):
    """Invalid harness configuration or grid."""


class DegenerateFitError(LabError):
    """Threshold fit has no information: success is constant or the fit explains nothing."""


class TrialLogIntegrityError(LabError):
    """Stored success flag disagrees with the stored error."""
