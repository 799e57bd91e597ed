"""A few closed-form gap measures, the same numbers the CLI prints."""
import math

from orthoprime.measures import basmajian_measure, gap_measure_traces
from orthoprime.surfaces import BoundaryShape

cusp, geo = BoundaryShape.cusp(), BoundaryShape.geodesic(2.0)
for c in (1.5, 3.0, 5.0, 20.0):
    cc = gap_measure_traces(cusp, 1, cusp, 1, c).lam_k
    gg = gap_measure_traces(geo, 2, geo, 2, c).lam_k
    print(f"c={c:5.1f}  cusp-cusp {cc:.9f}  geodesic(2)-geodesic(2) grades 2,2 {gg:.9f}")
print(f"2 log coth(1/2) = {basmajian_measure(1.0):.12f} ({2 * math.log(1 / math.tanh(0.5)):.12f})")
