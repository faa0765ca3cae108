from ._core import (
    Profile,
    WeakwaveError,
    build_profile,
    bump_eval,
    classify,
    classify_ch,
    glue_candidates,
    load_profile,
    speed_regime,
    sweep,
)

__all__ = [
    "Profile",
    "WeakwaveError",
    "build_profile",
    "bump_eval",
    "classify",
    "classify_ch",
    "glue_candidates",
    "load_profile",
    "speed_regime",
    "sweep",
]
