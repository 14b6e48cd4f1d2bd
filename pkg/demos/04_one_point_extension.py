"""One-point extensions: adjoin a vertex whose simple is injective with syzygy M.

Extending the ground field by itself gives the path algebra of A_2.  The new
simple module is injective, its syzygy is the old simple, and it fails the
semi-Gorenstein-projective test, matching the fact that the base module is a
projective (hence non-Nunke) module.
"""

from gorenstein_lab import gorenstein as G
from gorenstein_lab.algebra import find_algebra_isomorphism, preset
from gorenstein_lab.complexes import ext_dims
from gorenstein_lab.modrep import simple

k = preset("k")
ext = G.one_point_extension(k, simple(k, 0), bound=4)
a = ext.algebra
print(f"extension has dim {a.dim} and {a.r} simples")
print("isomorphic to the A2 preset:", find_algebra_isomorphism(a, preset("a2")) is not None)
for key, value in ext.checks.items():
    print(f"{key}: {value}")
print("Ext^i(S, A) for the new simple:", ext_dims(simple(a, ext.s_index), 4))
