"""Frobenius and sign actions on the labels, and the orbit schedule of tilts."""
from .orbits import (
    OrbitSchedule, Step, build_partition, frobenius, plan, refine, schedule, sign, signed_orbit,
    frobenius_orbit,
)
