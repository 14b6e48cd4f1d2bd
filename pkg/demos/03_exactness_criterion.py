"""Compare the two sides of the four-term exactness criterion on real and broken windows.

A window Q_-2 <- Q_-1 <- Q_0 <- Q_1 of projectives is exact at the middle
terms exactly when a certain map between the dualized pieces can be chosen
invertible.  Windows cut from a complete resolution pass both tests; zeroing
the middle differential makes both fail.
"""

from gorenstein_lab import gorenstein as G
from gorenstein_lab.algebra import preset
from gorenstein_lab.modrep import simple

c = G.build_main_complex(simple(preset("kx3"), 0), 3).complex
for at in range(c.lo + 2, c.hi):
    d_m1, d0, d1 = c.differentials[at - 1], c.differentials[at], c.differentials[at + 1]
    good = G.check_exactness_criterion(d_m1, d0, d1)
    bad = G.check_exactness_criterion(d_m1, d0.zeroed(), d1)
    print(f"degree {at:+d}: exact window {good.exact}/{good.zeta_exists}, "
          f"broken window {bad.exact}/{bad.zeta_exists}")
