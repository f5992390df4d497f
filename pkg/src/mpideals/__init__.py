"""mpideals: Moore-Penrose inversion and ideal lifting at desk scale.

A self-contained numerical model of a unital operator algebra built from a
scalar part plus a direct sum of finite matrix blocks, together with a
grid-sampled model of continuous functions.  The package provides
Moore-Penrose inversion with its equivalent characterizations, invertibility
lifting through block representations, projection lifting via spectral
calculus, minimal-projection decompositions, and the classical commutative
counterexamples (including the winding-number obstruction on the disk).
"""

from ._kernel import BACKEND as KERNEL_BACKEND

__version__ = "0.1.0"

__all__ = ["KERNEL_BACKEND", "__version__"]
