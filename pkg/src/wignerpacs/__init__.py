"""Phase-space simulation of photon-added coherent states in thermal channels.

Wigner functions of coherent, single- and two-photon-added coherent states,
their evolution through a lossy finite-temperature channel, the volume of
their negative part with the threshold decay time at which it vanishes, and
beam-splitter overlaps for the vacuum / SPACS qubit encoding.
"""
from ._backend import backend_name, compiled_available, use_backend
from .channel import (KernelParams, evolve_points, evolve_wigner, fokker_planck_residual,
                      scaled_coordinates, scaled_time, scaling_identity_residual)
from .errors import (InvalidChannelError, NonFiniteFieldError, NotNonclassicalError,
                     SeriesConvergenceError, TruncationError, UndefinedPhaseError,
                     UnsupportedOrderError, WignerPacsError)
from .gate import (FockVector, GateConfig, block_unitary, cz_phase, logical_state,
                   overlap_analytic, overlap_approx, overlap_numeric, regime_ok)
from .negativity import (ThresholdResult, asymptotic_thresholds, pnw_curve,
                         threshold_analytic, threshold_map, threshold_numeric)
from .phase_space import (GridSpec, NegativityResult, WignerField, integrate, interpolator,
                          min_location, negative_volume, read_field_csv, sample,
                          write_field_csv)
from .states import (ChannelParams, PacsSpec, PacsWigner, ThermalWigner, laguerre, pacs_norm,
                     spacs_evolved, wigner_pacs_initial, wigner_spacs_evolved, wigner_thermal)

__version__ = "0.1.0"
