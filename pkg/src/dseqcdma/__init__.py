"""Binary decimal sequences (d-sequences) as CDMA spreading codes."""

from .numtheory import is_prime, is_primitive_root, lcm_many, mod_pow, mult_order
from .sequences import (BinarySequence, ChipSequence, LfsrSpec, Mapping, generate_dseq,
                        gold_code, lfsr_msequence, preferred_pair, to_bipolar)
from .correlation import (CorrelationProfile, autocorrelation, cross_correlation_full,
                          cross_correlation_partial, profile_stats)
from .primesets import PrimeSet, lcm_pminus1, search_sets, verify_published_table
from .cdmasim import (SimConfig, SimResult, UserConfig, despread, run_simulation, spread,
                      transmit)

__version__ = "0.1.0"
