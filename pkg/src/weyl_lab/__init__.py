"""Exact Weyl algebras, their states, GNS spans and the measure-side checks.

Submodules:

``symplectic``  exact rational phase space, the form ``beta`` and the complex structure
``weyl``        finite combinations of Weyl generators with twisted multiplication
``torus``       clock-and-shift matrices for the deformed torus at rational angle
``states``      generating functions, positivity kernels and the Dirac state ``g0``
``gns``         finite GNS spans and a grid Schroedinger representation
``measures``    atomic measures, Fourier duality, Gaussian Monte Carlo
``suites``      named verification suites behind the ``weyl-lab`` command
"""
from .symplectic import *  # noqa: F401,F403
from .weyl import *  # noqa: F401,F403
from .torus import *  # noqa: F401,F403
from .states import *  # noqa: F401,F403
from .gns import *  # noqa: F401,F403
from .measures import *  # noqa: F401,F403
from .io import *  # noqa: F401,F403
from .suites import SuiteConfig, SuiteReport, CheckRecord, ConfigError, run_suite, emit_report, report_schema

__version__ = "0.1.0"
