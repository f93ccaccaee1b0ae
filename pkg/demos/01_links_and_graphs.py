"""Waxman fiber graphs and the photonic links laid on top of them."""

import numpy as np

from qnet_epidemic import GeoParams, PhotonicParams, apply_quantum_weights, degree_stats, generate_waxman, quantum_link_prob

# how link success falls off with distance, for a few photon budgets
d = np.array([0, 50, 100, 200, 400, 800])
for n_p in (1, 100, 1000):
    print(f"n_p={n_p:5d}", np.round(quantum_link_prob(d, PhotonicParams(0.2, n_p)), 4))

geo = GeoParams(n_nodes=1000)
g = generate_waxman(geo, seed=1)
w = apply_quantum_weights(g, PhotonicParams())

fiber = degree_stats(g.to_weighted())
quantum = degree_stats(w)
print("fiber   <k> =", round(fiber.mean_degree, 2), " <k^2> =", round(fiber.second_moment, 1))
print("quantum <k> =", round(quantum.mean_degree, 2), " <k^2> =", round(quantum.second_moment, 1))

# most fiber edges are long enough that a single attempt rarely succeeds
p = w.weights[np.triu(g.adjacency, 1) > 0]
print("edges:", p.size, " share with p_ij < 0.01:", round(float(np.mean(p < 0.01)), 3), " share with p_ij > 0.99:", round(float(np.mean(p > 0.99)), 3))
