"""Command-line jobs: single runs and the convergence, reversibility and dispersion harnesses."""
