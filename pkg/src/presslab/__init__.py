"""Pressure of subshifts of finite type: separated sets, covers, stable-set preimages and oracles."""
from .oracle import (
    MarkovMeasure,
    OracleError,
    bernoulli_measure,
    block_recode,
    equilibrium_markov,
    markov_from_json,
    markov_measure,
    measure_pressure,
    random_markov_measure,
    stationary_distribution,
    transfer_pressure,
)
from .potential import (
    Potential,
    birkhoff_sum,
    birkhoff_sum_on_cylinder,
    compose_with_shift,
    constant_potential,
    lift_potential,
    make_potential,
    oscillation,
    potential_from_json,
    symbol_potential,
)
from .pressure import (
    EMPTY,
    PressureEstimate,
    bowen_pressure,
    cover_entropy,
    cover_pressure,
    cover_pressure_estimate,
    cover_pressure_exact,
    extrapolate,
    lower_cover_pressure,
    pressure_of_full_space,
    separated_count,
    separated_pressure,
    spanning_count,
)
from .stable import (
    dispersal_rate,
    epsilon_stable_set,
    preimage_pressure,
    scan_points,
    pressure_point_scan,
    stable_cylinder_pressure_backward,
)
from .symbolic import (
    Cover,
    CylinderSet,
    PointRepr,
    ShiftSpace,
    apply_map_to_cover,
    build_sft,
    cylinder_partition,
    cylinder_set,
    full_set,
    full_shift,
    golden_mean_shift,
    image_set,
    inverse_limit,
    join_iterates,
    metric,
    one_sided_point,
    orbit_metric,
    periodic_points,
    preimage_set,
    singleton,
    two_sided_point,
    word_cylinder,
    words_of_length,
)

__version__ = "0.1.0"
