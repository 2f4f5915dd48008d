"""Finite-sample valid confidence sets and plausibility tests for the risk
minimizer of a machine-learning model.

The confidence set is the set of almost-minimizers of the empirical risk:
all parameters within a tolerance ``eps`` of the empirical minimum.  With
``eps`` calibrated through a uniform convergence bound, that set covers the
population risk minimizer at any prespecified level, at finite sample size.
The distribution of the set is estimated by bootstrapping, which yields
hypothesis tests and confidence assignments for arbitrary parameter regions.
"""

__version__ = "0.1.0"

from .aerm import (AermSet, ConfidenceSetReport, aerm_contains,
                   aerm_intersects, aerm_superset, build_aerm_set,
                   conf_of_region_aerm, confidence_set)
from .errors import (AermError, ComputationError, ConfigurationError,
                     ConvergenceError, DomainError, EmptyRegionError,
                     InfeasibleError, ResourceError,
                     UndefinedPlausibilityError, UnsupportedOperationError)
from .experiments import (ExperimentConfig, run_bernoulli_coverage,
                          run_experiment, run_lasso_plaus_curve,
                          run_quantile_demo)
from .generators import (BernoulliGenerator, LabeledDistributionGenerator,
                         LassoLinearGenerator, NormalLaw, PointMassLaw,
                         UniformLaw, pinball_score_variance, quantile_v_sup,
                         true_risk_minimizer)
from .model import (FiniteSpace, IntervalSpace, L1BallSpace, Loss, ModelSpec,
                    bernoulli_mode_model, constant_quantile_model,
                    l1_linear_model)
from .plausibility import (PlausibilityEstimate, ResampleSet, TestConfig,
                           TestResult, bernstein_min_B, bootstrap_belief,
                           bootstrap_plausibility, conf_of_region_boot,
                           mc_plausibility, optimal_type1_bound,
                           test_level_first, test_tolerance_first)
from .regions import (BoxRegion, ComplementRegion, FiniteRegion, L1BallRegion,
                      UnionRegion)
from .risk import (ErmResult, empirical_risk, erm_solve, project_l1_ball,
                   region_max_empirical_risk, region_min_empirical_risk)
from .sample import LabeledSample, read_sample_csv, write_sample_csv
from .ucf import (BernoulliExactUcf, ChebyshevUcf, LassoExponentialUcf,
                  QuantileVarianceUcf, RademacherUcf, SubexponentialUcf,
                  bernoulli_coverage_at, bernoulli_exact_worst_coverage,
                  coverage_tolerance, required_m, validity_tolerance)

__all__ = [name for name in dir() if not name.startswith("_")]
