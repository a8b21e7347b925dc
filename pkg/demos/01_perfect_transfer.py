"""
Perfect transfer on the Krawtchouk chain, and why the uniform chain fails.

Run with ``python demos/01_perfect_transfer.py``.
"""
import numpy as np

from xxchain import check_pst, evolve, krawtchouk_chain, uniform_chain

# A Krawtchouk chain of 11 sites has an evenly spaced spectrum, so the
# excitation injected at site 0 arrives intact at site 10 after time pi/K.
J = krawtchouk_chain(10, K=1.0)
print(check_pst(J))

for t in np.linspace(0, np.pi, 5):
    rep = evolve(J, t)
    bar = "".join("#" if p > 0.2 else "+" if p > 0.05 else "." for p in rep.site_probabilities)
    print(f"t={t:5.3f}  |A|={abs(rep.amplitude):.6f}  {bar}")

# Uniform chains only manage it for 2 and 3 sites.
for M in (1, 2, 3, 10):
    rep = check_pst(uniform_chain(M))
    print(f"uniform, {M + 1:2d} sites: is_pst={rep.is_pst}  T={rep.minimal_time}")

# The price: the coupling profile is a parabola whose spread grows with N.
for N in (10, 100, 1000):
    c = krawtchouk_chain(N).couplings ** 2
    print(f"N={N:5d}  max J^2 / min J^2 = {c.max() / c.min():.2f}")
