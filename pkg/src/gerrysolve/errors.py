"""Exceptions and enumeration guards shared by every solver."""

import os

DEFAULT_GUARD = 20_000_000
GUARD_ENV = "GERRYSOLVE_GUARD"


class InstanceError(ValueError):
    """A problem instance (or document) violates a model invariant."""


class PlanError(ValueError):
    """A move plan is malformed with respect to its instance."""


class GuardExceeded(RuntimeError):
    """An exhaustive search would exceed its configured size guard."""

    def __init__(self, what, size, guard):
        super().__init__(f"{what}: search size {size} exceeds guard {guard}")
        self.what = what
        self.size = size
        self.guard = guard


def default_guard():
    """Guard from ``GERRYSOLVE_GUARD`` if set, else :data:`DEFAULT_GUARD`."""
    raw = os.environ.get(GUARD_ENV)
    if raw is None or raw.strip() == "":
        return DEFAULT_GUARD
    value = int(raw)
    if value <= 0:
        raise ValueError(f"{GUARD_ENV} must be positive, got {raw!r}")
    return value


def check_guard(what, size, guard=None):
    if guard is None:
        guard = default_guard()
    if size > guard:
        raise GuardExceeded(what, size, guard)
