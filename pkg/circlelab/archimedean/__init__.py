"""The oscillatory integral J, the singular integral and the real density."""
from .enum import OuterMethod
from .density import DensityEstimate, real_density, clopper_pearson
from .integral import JValue, IntegralReport, JDecayProfile, eval_J, j_values, j_batch, singular_integral, \
    j_decay_profile
