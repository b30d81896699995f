"""Numerical thresholds shared across modules."""

TAU_ZERO = 1e-9  # zero / sign classification of eigenvalues and vector entries
TAU_RES = 1e-8  # eigen-residuals and spectral comparisons
TAU_DET = 1e-7  # smallest Laplacian eigenvalue below this counts as singular
TAU_OPT = 1e-6  # variational (L1-sphere) assertions
TAU_THM = 1e-9  # margin below -TAU_THM is a violation
TAU_TIE = 1e-7  # |margin| below this is flagged as a near tie
