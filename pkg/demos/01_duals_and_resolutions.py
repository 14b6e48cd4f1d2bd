"""A first look: resolutions, duals and the canonical map into the double dual.

Two local algebras behave very differently.  Over k[x]/(x^3) every module is
Gorenstein-projective; over k<x,y>/(x^2, y^2, xy, yx) the simple module has a
resolution that doubles at every step and its dual is far from reflexive.
"""

from gorenstein_lab.algebra import preset
from gorenstein_lab.complexes import a_dual, ext_dims, phi, syzygy, transpose
from gorenstein_lab.modrep import simple

for name in ("kx3", "rad2"):
    alg = preset(name)
    s = simple(alg, 0)
    print(f"--- {alg.name}")
    print("dim Omega^i S for i = 1..5:", [syzygy(s, i).dim for i in range(1, 6)])
    print("dim Ext^i(S, A) for i = 1..4:", ext_dims(s, 4))
    ph = phi(s)
    print(f"S* has dim {a_dual(s).dim}, Tr S has dim {transpose(s).dim}")
    print(f"phi_S: kernel {ph.kernel_dim}, cokernel {ph.cokernel_dim}, reflexive {ph.is_iso}")
