"""mNLDS against direct stochastic simulation for curing rates around delta_c."""

from qnet_epidemic import EpidemicParams, GeoParams, PhotonicParams, apply_quantum_weights, critical_delta, generate_waxman, run_direct_sim, run_mnlds

w = apply_quantum_weights(generate_waxman(GeoParams(n_nodes=800), seed=3), PhotonicParams())
beta = 0.05
dc = critical_delta(w, beta)
print("delta_c =", round(dc, 4))

for ratio in (0.1, 0.3, 0.5, 1.0):
    params = EpidemicParams(beta, ratio * dc, 0.5)
    m = run_mnlds(w, params)
    d = run_direct_sim(w, params, t_max=600, n_runs=20, master_seed=1)
    print(f"delta = {ratio:.1f} delta_c   mNLDS {m.eta_final:.4f} ({m.steps} steps)   direct {d.eta_final:.4f}")
