"""Rotation-gate synthesis toolkit."""

try:
    from . import _qrot as _core  # installed package layout
except ImportError:  # in-tree builds put _qrot on PYTHONPATH directly
    import _qrot as _core

SpecParseError = _core.SpecParseError
DiagramError = _core.DiagramError
CircuitError = _core.CircuitError
SimulationError = _core.SimulationError
FamilyError = _core.FamilyError

angle_add = _core.angle_add
angle_negate = _core.angle_negate
angle_half_difference = _core.angle_half_difference
synth = _core.synth
verify = _core.verify
family = _core.family
predict = _core.predict
stats = _core.stats
circuit_depth = _core.circuit_depth
merge_rotations = _core.merge_rotations
inverse = _core.inverse

__all__ = [
    "angle_add",
    "angle_half_difference",
    "angle_negate",
    "circuit_depth",
    "family",
    "inverse",
    "merge_rotations",
    "predict",
    "stats",
    "synth",
    "verify",
]
