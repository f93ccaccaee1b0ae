"""Three ways to average over a quantum network ensemble before taking 1/lambda_1."""

from qnet_epidemic import GeoParams, PhotonicParams, ensemble_threshold

ph = PhotonicParams()
for n in (100, 200):
    geo = GeoParams(n_nodes=n)
    for method in (1, 2, 3):
        e = ensemble_threshold(geo, ph, method, n_outer=20, n_inner=5, master_seed=11)
        print(n, e.method_name.ljust(16), e.estimator.ljust(4), f"{e.ensemble_mean:.4f} +- {e.ensemble_std:.4f}")

# the eigenvalue of the mean matrix is not the mean eigenvalue, so method 1 sits apart
# lossless links (gamma = 0, one photon) make methods 2 and 3 the same matrix
geo = GeoParams(n_nodes=100)
lossless = PhotonicParams(0.0, 1)
m2 = ensemble_threshold(geo, lossless, 2, 10, master_seed=2).ensemble_mean
m3 = ensemble_threshold(geo, lossless, 3, 10, 3, master_seed=2).ensemble_mean
print(f"lossless: {m2:.12f} {m3:.12f}")
