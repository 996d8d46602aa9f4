"""Surfboard dynamics simulator with a 6-DoF motion-cueing pipeline."""

from ._core import (
    FRAME_RECORD_SIZE,
    ConfigError,
    FormatError,
    GimbalError,
    IntegrationError,
    PlatformFrame,
    SimConfig,
    SimulationError,
    SimulationLog,
    compare_cueing,
    compose_frame,
    decode_frame,
    ema_step,
    encode_frame,
    read_frame_file,
    read_log_csv,
    run_trial,
    session_order,
    simulate_paddling,
    simulate_passive,
    trial_metrics,
    wave_height,
)

__version__ = "0.1.0"

__all__ = [
    "FRAME_RECORD_SIZE",
    "ConfigError",
    "FormatError",
    "GimbalError",
    "IntegrationError",
    "PlatformFrame",
    "SimConfig",
    "SimulationError",
    "SimulationLog",
    "compare_cueing",
    "compose_frame",
    "decode_frame",
    "ema_step",
    "encode_frame",
    "read_frame_file",
    "read_log_csv",
    "run_trial",
    "session_order",
    "simulate_paddling",
    "simulate_passive",
    "trial_metrics",
    "wave_height",
]
