"""Exact topological expansion of the cubic random matrix model.

Subpackage map:

* ``series``, ``numbers``, ``precision`` -- exact arithmetic substrate
* ``equilibrium`` -- endpoint system, spectral density, phi-function checks
* ``hierarchy`` -- string-equation hierarchy for the recurrence coefficients
* ``toda`` -- Toda-flow integration to free-energy series and map counts
* ``critical`` -- critical-point constants, amplitude asymptotics, Painleve I
* ``wick`` -- brute-force pairing census oracle (compiled kernel + fallback)
* ``finite_n`` -- contour moments, orthogonal recurrences, finite-N validation
* ``serialize`` -- tagged, deterministic JSON/CSV encoding
* ``acceptance`` -- the twelve release checks behind ``cubicmaps reproduce``
* ``cli`` -- command-line entry points
"""

from __future__ import annotations
