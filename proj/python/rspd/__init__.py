"""Construction, verification and simulation of precoded distributed STBCs."""

import json

from ._rspd import (
    DesignError,
    UsageError,
    VerificationError,
    __version__,
    achieves_bound,
    interleave,
    min_slots,
    rate_upper_bound,
    table_csv,
)
from . import _rspd


def construct(n, k):
    """Design dict for the rate-improved code with n symbols and k relays."""
    return json.loads(_rspd.construct_json(n, k))


def baseline(n, k):
    """Design dict for the orthogonal comparison code."""
    return json.loads(_rspd.baseline_json(n, k))


def verify(design, draws=20, seed=20240601):
    """Verification report for a design dict."""
    return json.loads(_rspd.verify_json(json.dumps(design), draws, seed))


def simulate(config):
    """SER curves for a simulation config dict."""
    return json.loads(_rspd.simulate_json(json.dumps(config)))


def fig3_preset():
    return json.loads(_rspd.fig3_preset_json())


__all__ = [
    "DesignError",
    "UsageError",
    "VerificationError",
    "__version__",
    "achieves_bound",
    "baseline",
    "construct",
    "fig3_preset",
    "interleave",
    "min_slots",
    "rate_upper_bound",
    "simulate",
    "table_csv",
    "verify",
]
