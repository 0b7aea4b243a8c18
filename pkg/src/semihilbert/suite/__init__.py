"""Executable inequality registry, instance generators and campaigns."""

from .campaign import CampaignConfig, Report, campaign
from .checks import REGISTRY, CheckResult, run_check
from .generators import CLASSES, InstanceSpec, generate
from .sharpness import sharpness_scenarios

__all__ = [
    "CLASSES",
    "REGISTRY",
    "CampaignConfig",
    "CheckResult",
    "InstanceSpec",
    "Report",
    "campaign",
    "generate",
    "run_check",
    "sharpness_scenarios",
]
