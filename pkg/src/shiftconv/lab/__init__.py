"""Configuration, persistence, sweeps, verification suite and command-line interface."""
