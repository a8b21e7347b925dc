"""
How good is the transfer through a surgered chain?

With the spectrum rescaled by M + 2 the middle gaps are close to 2 pi, so
the Krawtchouk limit transfers at T = 1/2 and the search starts there.
"""
from xxchain import (
    coupling_ratio,
    fidelity_deficit,
    krawtchouk_chain,
    optimize_time,
    surgered_chain,
    surgered_spectral_data,
)

print(f"{'N':>5} {'M':>5} {'delta(0.51)':>12} {'T*':>9} {'delta*':>9} {'R_S':>8} {'R_K':>8}")
for N, M in ((100, 100), (100, 110), (100, 120), (100, 150), (500, 550), (1000, 1100)):
    S = surgered_spectral_data(N, M, normalized=True)
    T, d = optimize_time(S, t0=0.5, window=0.05)
    r_s = coupling_ratio(surgered_chain(N, M))
    r_k = coupling_ratio(krawtchouk_chain(N))
    print(f"{N:5d} {M:5d} {fidelity_deficit(S, 0.51):12.4f} {T:9.5f} {d:9.5f} {r_s:8.3f} {r_k:8.2f}")

# The same numbers come out of evolving the chain itself, with couplings
# scaled by M + 2, instead of the closed-form spectral data.
J = surgered_chain(100, 150, K=152.0)
print("full evolution, N=100 M=150, T=0.504:", round(fidelity_deficit(J, 0.504), 5))
