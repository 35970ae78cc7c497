"""perf-oracle: how predictable are learning algorithms, and can we
predict their accuracy on a dataset without training them?

The package measures hyperparameter-sweep patterns and the monotonicity of
feature-extraction accuracy curves, and completes partially observed
model x dataset accuracy matrices with biased ALS matrix factorization.
"""

__version__ = "0.1.0"
