from .config import CrowdConfig, Noise, Wall
from .contacts import ContactConstraint, contact_constraints, pair_distances, project_two_disks
from .simulation import CrowdRecord, CrowdStepHandler, CrowdTrajectory, crowd_step, simulate
from .velocity import VelocityField

__all__ = [
    "ContactConstraint",
    "CrowdConfig",
    "CrowdRecord",
    "CrowdStepHandler",
    "CrowdTrajectory",
    "Noise",
    "VelocityField",
    "Wall",
    "contact_constraints",
    "crowd_step",
    "pair_distances",
    "project_two_disks",
    "simulate",
]
