"""Proof procedures run as algorithms: T3-factor augmentation, transitive
tournament tilings under blow-ups, and prescribed cycle tilings."""
from .augment import (AugmentTrace, HypothesisViolation, is_t3_factor, seed_factor, t3_augment,
                      t3_count)
from .cycles import (PackingFailure, PartitionStats, QSpec, RecursionFailure, Split, SplitFailure,
                     cycle_tiling_in_rounds, greedy_cycles, random_split, recursive_cycle_partition,
                     round_cycle_tiling, semidegree_in, split_bound_ok)
from .tournaments import (BlowupResult, DeadEnd, blowup_iterate, expand_tiling, blowup_factor,
                          greedy_tr_nested, loop_condition, pair_condition, tiling_extend)
