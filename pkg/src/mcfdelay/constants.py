"""Physical constants and package-wide defaults (SI units)."""

SPEED_OF_LIGHT = 299792458.0  # m/s, exact SI value

# Typical effective indices for silica cores near 1550 nm, used when a
# scenario document does not specify them.
DEFAULT_PHASE_INDEX = 1.45
DEFAULT_GROUP_INDEX = 1.468

# A bent segment is only accepted when bend_radius >= ratio * core offset,
# keeping the linearized tilted-index model well inside its domain.  The
# ratio is configurable per call; this is the default.
BEND_VALIDITY_RATIO = 1000.0
