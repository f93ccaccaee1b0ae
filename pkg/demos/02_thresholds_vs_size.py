"""Epidemic thresholds of classical and quantum Waxman graphs as N grows."""

import numpy as np

from qnet_epidemic import GeoParams, PhotonicParams, apply_quantum_weights, degree_stats, fit_scaling, generate_waxman, tau_kw, tau_mfa, tau_spectral
from qnet_epidemic.seeding import derive_seed

ph = PhotonicParams()
sizes = [250, 500, 750, 1000]
rows = []
for n in sizes:
    vals = []
    for k in range(10):
        g = generate_waxman(GeoParams(n_nodes=n), derive_seed(7, "demo", n, k))
        c, q = g.to_weighted(), apply_quantum_weights(g, ph)
        sc, sq = degree_stats(c), degree_stats(q)
        vals.append([tau_kw(sc).value, tau_mfa(sc).value, tau_spectral(c).value,
                     tau_kw(sq).value, tau_mfa(sq).value, tau_spectral(q).value])
    rows.append(np.mean(vals, axis=0))
    print(n, np.round(rows[-1] * n, 2))  # tau * N: flat columns mean tau ~ c/N

rows = np.array(rows)
print("classical KW c =", round(fit_scaling(zip(sizes, rows[:, 0])).c, 2))
print("quantum   KW c =", round(fit_scaling(zip(sizes, rows[:, 3])).c, 2))
# the spectral threshold of the weighted graph keeps drifting: tau_pAM * N is not yet constant
print("quantum pAM tau*N:", np.round(rows[:, 5] * sizes, 1))
