"""Special functions, quadrature, Mellin-Barnes kernels, Poisson checks and the oscillatory transforms."""
