"""Besicovitch and Weyl pseudodistances on configuration spaces of finitely generated groups,
with cellular automata over them and exact decision procedures over Z."""

from .automaton import (CellularAutomaton, apply, b_surjectivity_probe, eca, goe_check, lipschitz_check,
                        me_check, parse_ca, planted_goe_config, planted_me_pair)
from .config import (Configuration, Constant, HalfLine, Pattern, PeriodicZd, PrefixIndicator, Procedural,
                     SeededRandom, involute, overlay, parse_config, restrict, translate)
from .decide1d import (de_bruijn, eca_sweep, goe_word, is_injective_z, is_preinjective_z, is_surjective_z,
                       preimage_count)
from .errors import BesicaError, CapacityError, DomainError, SpecSyntaxError, UnsupportedInputError
from .group import Element, Group, free_abelian, free_group, parse_group
from .metrics import (DistanceProfile, besicovitch_exact_periodic, besicovitch_profile, density_profile,
                      hamming, weyl_profile)
from .nets import Net, greedy_net, net_density_bounds_check, refine_net, verify_net
from .sequences import (Disks, Explicit, ExhaustiveSequence, IntervalAsym, amenability_report, boundary_size,
                        folner_ratio, inverse_seq, parse_sequence)

__version__ = "0.1.0"
