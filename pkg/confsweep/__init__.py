# Enumeration of topological (n_k) configurations by sweeping the projective plane
__version__ = "0.1.0"
