"""Numerical constructions of special Lagrangian submanifolds of C^n.

Submodules:

* ``curves``        planar curve ODEs, closed-form phases, periods and closedness
* ``legendrian``    Legendrian factor maps into odd spheres
* ``surfaces``      product Lagrangian surfaces in C^2, angle and curvature checks
* ``ambient``       higher-dimensional immersions assembled from surfaces and factors
* ``matrix_orbits`` SU(n)-invariant families in matrix spaces
* ``pde``           potential equation for graph-type surfaces
* ``export``, ``cli`` file formats and the command-line front end
"""

from .curves import CurveKind, CurveParams, CurveSample, integrate_alpha, integrate_gamma
from .errors import SlagkitError

__version__ = "0.1.0"

__all__ = ["CurveKind", "CurveParams", "CurveSample", "SlagkitError", "integrate_alpha", "integrate_gamma"]
