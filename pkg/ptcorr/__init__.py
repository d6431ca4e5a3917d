"""ptcorr: thermal quantum correlations and PT-symmetric dynamics of the two-qubit XY model."""

__version__ = "0.1.0"
