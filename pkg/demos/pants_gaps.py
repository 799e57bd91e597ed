"""Gap intervals on a pair of pants and a Monte Carlo check of their coverage.

Prints the gap of every prime class on the first cuff and the fraction of
random orthorays that land in a gap and exit through the same class.
"""
from orthoprime import EnumerationCutoff, Grading, enumerate_classes, parse_surface
from orthoprime.raysim import RayTracer, _origin, gap_intervals, locate_gap, sample_rays

s, k = parse_surface("pants:2,2,2"), Grading((2, 2, 2))
primes = enumerate_classes(s, k, EnumerationCutoff(16)).primes()
rep = gap_intervals(s, k, primes)

print(f"cuff length on the core boundary: {rep.lengths[0]:.6f}")
for g in sorted((g for g in rep.intervals if g.boundary == 0), key=lambda g: g.lo)[:12]:
    x = g.cls
    print(f"  [{g.lo:8.5f}, {g.hi:8.5f}]  width {g.width:.6f}  -> cuff {x.end + 1} via {x.word_str}")
print(f"coverage per cuff: {', '.join(f'{v:.4f}' for v in rep.coverage.values())}")

tracer = RayTracer(s, k, origins={i: _origin(s, k, i, primes) for i in range(3)})
rays = sample_rays(tracer, 2000, seed=1)
inside = same = 0
for o in rays:
    g = locate_gap(rep, o.boundary, o.s0)
    if g is not None:
        inside += 1
        same += o.cls == g.cls.key
print(f"{len(rays)} rays: {inside} start in a gap, {same} of those exit through its class")
