"""Generalized four-point inequalities on finite semimetric spaces."""
from .space import (FiniteSemimetricSpace, new_space, is_metric, is_ultrametric, diameter, from_points_lp,
                    gen_tree_metric, gen_random_tree_metric, gen_random_metric, gen_random_ultrametric,
                    gen_random_semimetric, gen_random_points, snowflake, scale, relabel, load_space, save_space)
from .funcdsl import (DyadicFunction, MonadicControl, parse_dyadic, parse_monadic, evaluate, to_text,
                      validate_dyadic, validate_pair, validate_control, dyadic, control)
from .quad import (Tetrad, CheckReport, check_quadruple_pair, check_ptolemaic, check_additive,
                   min_hyperbolicity_delta, check_delta_hyperbolic, check_roundness_at, roundness,
                   check_cat0_quadrilateral, check_reshetnyak, degenerate_suite, classify)
from .mappings import (SpaceMap, identity_map, make_transform_map, compose, cross_ratio, verify_quasisymmetric,
                       qs_envelope, verify_quasimobius, verify_mobius)
from .theorem_lab import (t_grid, check_hyp_qs_general, check_hyp_qs_additive, check_hyp_qm,
                          check_hyp_ptolemy_qs, verify_power_subadditivity, run_preservation_experiment,
                          run_battery, default_battery)

__version__ = "0.1.0"
