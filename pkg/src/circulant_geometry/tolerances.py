"""Tolerance ladder shared by all numerical checks."""

EXACT = 1e-12  # data representable exactly (rational inputs, constant metrics)
LINALG = 1e-10  # pure linear algebra on floats
JET = 1e-9  # anything built from jets of transcendental expressions
CURVATURE = 1e-8  # relations combining two curvature pipelines
