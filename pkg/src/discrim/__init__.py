"""Adaptive versus parallel discrimination of quantum and classical channels."""
from .channels import (KrausChannel, apply, apply_extended, choi, phi0, phi1,
                       tensor_channels, validate_channel)
from .classical import (StochasticChannel, adaptive_optimum, adaptive_two_step_optimum,
                        example1, example2, example3, nonadaptive_optimum,
                        one_shot_optimum, perfect_equivalence_check, perfect_one_shot)
from .quantum import (helstrom_success, n_copy_nonadaptive_success,
                      nonadaptive_impossibility_certificate, one_shot_success,
                      paper_alpha, paper_two_step_strategy, simulate_strategy)
from .sdp import DiamondNormResult, diamond_norm_distance

__version__ = "0.1.0"
