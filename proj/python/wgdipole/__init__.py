# Copyright 2026 wgdipole contributors
# SPDX-License-Identifier: Apache-2.0
"""Dipole ensembles in a PEC rectangular waveguide.

Thin re-export of the compiled core: dyadic propagators, collective
spectra, deterministic transmission scans and the scaling-law fits used to
tell localized from diffusive transport.
"""

from ._core import *  # noqa: F401,F403
from ._core import __version__  # noqa: F401
