"""
Access to the ``LSPECTRUM`` settings dictionary as validated pydantic models.

Library code never reads ``django.conf.settings`` directly; it calls
``get_config()`` so that the modules also work in a process where Django
settings were never configured (the defaults below are used then).
"""
from django.conf import settings
from pydantic import BaseModel, ConfigDict, Field


class SolverConfig(BaseModel):
    model_config = ConfigDict(frozen=True)

    tol: float = Field(default=1e-8, gt=0)
    verify_tol: float = Field(default=1e-7, gt=0)
    strict_tol: float = Field(default=1e-10, ge=0)
    dedup_tol: float = Field(default=1e-8, gt=0)
    degenerate_interval: float = Field(default=1e-10, ge=0)
    root_imag_gate: float = Field(default=1e-4, gt=0)
    newton_steps: int = Field(default=2, ge=0)
    theta_steps: int = Field(default=100000, ge=1)
    residual_tol: float = Field(default=1e-9, gt=0)
    cluster_gap: float = Field(default=1e-6, gt=0)
    eigvec_cutoff: float = Field(default=1e-7, gt=0)
    bisection_steps: int = Field(default=40, ge=1)
    battery_count: int = Field(default=60, ge=30)
    show_progress: bool = False


def get_config() -> SolverConfig:
    raw = {}
    if settings.configured:
        raw = getattr(settings, "LSPECTRUM", {}) or {}
    return SolverConfig(**{key.lower(): value for key, value in raw.items()})
