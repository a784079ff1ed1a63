"""Exact calculator for Grothendieck-ring classes over a field of Laurent series.

Submodules:

* ``exactalg`` -- integer gcd/Hermite-normal-form machinery and scaled lattices;
* ``polytope`` -- piecewise-linear sets over Q with the two Euler characteristics;
* ``motring``  -- the localized ring of variety classes with its realizations
  and duality involution;
* ``hk``       -- graded residue (x) polytope classes and the realization
  morphisms that kill the point-with-puncture relation;
* ``milnor``   -- resolution data, nearby-fiber classes, monodromy zeta, and
  the symbolic stratum/tube duality identities;
* ``cli``      -- the ``motcalc`` command-line front end.
"""

__version__ = "0.1.0"
