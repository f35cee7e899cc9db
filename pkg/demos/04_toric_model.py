"""
The CP^(n-1) model
==================

For pi/n < y < pi/(n-1) the polytope is a small simplex and the reduced phase
space is CP^(n-1).  The chart (xi, tau) embeds into CP^(n-1), where the
global Lax matrix extends smoothly to the points the chart misses.  The
Hamiltonian differs from that of the standard regime with a matched
symplectic volume.
"""

import numpy as np

from compact_rs import Coupling, TorusElement, compare_hamiltonians, embed_E, global_lax, local_lax, moment_J

n, lam = 3, 1.0
y_old = 0.25 * np.pi
y = (2 * np.pi - n * y_old) / n  # pi - n y' = n y - pi
c = Coupling.rad(n, y)
print(f"y = {y / np.pi:.6f} pi, partner y' = {y_old / np.pi} pi")

xi = np.array([0.35, 0.3, 0.35]) * np.pi
pt = embed_E(xi, TorusElement.from_angles([0.4, -1.1]), lam, c)
print("J(E(xi, tau)) / lambda / pi:", moment_J(pt, lam, c) / lam / np.pi)

# Approach the vertex (y, y, pi - 2y) while the angles spin ever faster.
vert = np.array([y, y, np.pi - 2 * y])
star = np.full(n, np.pi / n)
print("distance    |global - previous|   |local - previous|")
prev_g = prev_l = None
for s in np.geomspace(1e-4, 1e-10, 7):
    x = vert + s * (star - vert)
    t = TorusElement.from_angles(np.array([1.0, 2.0]) / s)
    g = global_lax(embed_E(x, t, lam, c), lam, c)
    loc = local_lax(x, t, c)
    if prev_g is not None:
        print(f"{s:8.0e}    {np.max(np.abs(g - prev_g)):.2e}             {np.max(np.abs(loc - prev_l)):.2e}")
    prev_g, prev_l = g, loc

# Old and new Hamiltonians on the same (primed) Darboux chart.
rng = np.random.default_rng(0)
gaps = []
for _ in range(1000):
    xi_p = y_old + (np.pi - n * y_old) * rng.dirichlet(np.ones(n))
    cmp = compare_hamiltonians(xi_p, rng.uniform(-np.pi, np.pi, n - 1), lam, lam, y, y_old)
    gaps.append(abs(cmp.h_old - cmp.h_new_closed_form))
print(f"max |H_old - H_new| over 1000 samples: {max(gaps):.3f}")
