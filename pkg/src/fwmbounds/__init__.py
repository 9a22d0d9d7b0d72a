"""Achievable-rate bounds for a three-wavelength four-wave-mixing WDM channel.

The toolkit derives the two-parameter discrete-time channel (epsilon,
p_ase) from physical link parameters, estimates mutual information by
Monte Carlo for discrete scenarios, evaluates closed-form and quadrature
bounds, and sweeps them over power grids under three interferer
behavioral models.
"""

__version__ = "0.1.0"

from .bounds import (
    QuadratureSettings,
    lower_bound_telatar,
    upper_bound_awgn,
    upper_bound_gaussian_interferers,
)
from .channel import (
    ChannelSample,
    fwm_term,
    log_density_y1_given_all,
    log_mixture_density,
    propagate,
)
from .errors import (
    ConfigError,
    MixtureTooLargeError,
    ParameterError,
    QuadratureError,
    ScenarioError,
)
from .link import (
    REFERENCE_LINK,
    ROUNDED_CHANNEL,
    ChannelParams,
    LinkParams,
    derive_channel_params,
    effective_length,
    load_link_config,
    parse_link_config,
)
from .mi import (
    DEFAULT_MAX_TERMS,
    MCSettings,
    MIEstimate,
    mi_discrete,
    mi_gaussian_primary,
)
from .signals import (
    Constellation,
    InputSpec,
    Shape,
    fourth_moment,
    gaussian_spec,
    load_constellation_points,
    make_psk,
    psk_spec,
    sample,
    sample_zcg,
)
from .sweep import (
    AdaptiveDistribution,
    AdaptivePower,
    BoundCurve,
    BoundPoint,
    FixedInterferers,
    psk_envelope,
    resolve,
    sweep,
    write_curve_csv,
    write_per_m_csv,
)

__all__ = [
    "__version__",
    "QuadratureSettings",
    "lower_bound_telatar",
    "upper_bound_awgn",
    "upper_bound_gaussian_interferers",
    "ChannelSample",
    "fwm_term",
    "log_density_y1_given_all",
    "log_mixture_density",
    "propagate",
    "ConfigError",
    "MixtureTooLargeError",
    "ParameterError",
    "QuadratureError",
    "ScenarioError",
    "REFERENCE_LINK",
    "ROUNDED_CHANNEL",
    "ChannelParams",
    "LinkParams",
    "derive_channel_params",
    "effective_length",
    "load_link_config",
    "parse_link_config",
    "DEFAULT_MAX_TERMS",
    "MCSettings",
    "MIEstimate",
    "mi_discrete",
    "mi_gaussian_primary",
    "Constellation",
    "InputSpec",
    "Shape",
    "fourth_moment",
    "gaussian_spec",
    "load_constellation_points",
    "make_psk",
    "psk_spec",
    "sample",
    "sample_zcg",
    "AdaptiveDistribution",
    "AdaptivePower",
    "BoundCurve",
    "BoundPoint",
    "FixedInterferers",
    "psk_envelope",
    "resolve",
    "sweep",
    "write_curve_csv",
    "write_per_m_csv",
]
