"""
Surgered chains interpolate between the uniform and the Krawtchouk profile.

Writes ``profiles.png`` if matplotlib is installed.
"""
import numpy as np

from xxchain import coupling_ratio, krawtchouk_chain, surgered_chain

N = 100
l = np.arange(1, N + 1)

print(f"{'M':>8}  {'j':>4}  {'J_max^2/J_1^2':>14}")
profiles = {}
for M in (100, 110, 120, 150, 200, 1000):
    J = surgered_chain(N, M)
    profiles[M] = (J.couplings / J.couplings[0]) ** 2
    print(f"{M:8d}  {(M - N) // 2:4d}  {coupling_ratio(J):14.4f}")

K = krawtchouk_chain(N)
parabola = (K.couplings / K.couplings[0]) ** 2
print(f"{'Krawt.':>8}  {'':4}  {coupling_ratio(K):14.4f}")

# As M grows the normalized profile closes in on the parabola.
for M in (200, 1000, 10_000, 100_000):
    J = surgered_chain(N, M)
    gap = np.max(np.abs((J.couplings / J.couplings[0]) ** 2 - parabola))
    print(f"M={M:6d}: max deviation from the Krawtchouk profile {gap:.2e}")

try:
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt
except ImportError:
    plt = None

if plt is not None:
    fig, ax = plt.subplots(figsize=(6, 4))
    ax.plot(l, parabola, "b--", label="Krawtchouk")
    for M, colour in ((100, "k"), (110, "r"), (150, "brown"), (200, "m")):
        ax.plot(l, profiles[M], ".", color=colour, ms=3, label=f"M={M}")
    ax.set_xlabel("l")
    ax.set_ylabel("J_l^2 / J_1^2")
    ax.legend()
    fig.savefig("profiles.png", dpi=120, bbox_inches="tight")
    print("wrote profiles.png")
