"""polyloop: termination analysis for linear loops with polynomial guards."""

__version__ = "0.1.0"
