"""Built-in data profiles and the smooth time windows.

Profiles are small closures f(x) used for initial/boundary data and forcing
factors; the CLI grammar is e.g. ``gaussian(amp=0.1, width=1.0)`` or
``file:samples.csv`` (one value per line, resampled linearly).

`eta` is the standard C-infinity cutoff: 1 on [-1,1], 0 outside (-2,2),
glued with exp(-1/z) mollifiers; `eta_scaled(t, T)` is eta(t/T).
"""

from __future__ import annotations

import re

import numpy as np

__all__ = ["eta", "eta_scaled", "make_profile", "PROFILE_NAMES"]


def _mollify(z):
    """exp(-1/z) for z > 0, 0 otherwise (vectorized, overflow-safe)."""
    z = np.asarray(z, dtype=float)
    out = np.zeros_like(z)
    pos = z > 1e-12
    out[pos] = np.exp(-1.0 / z[pos])
    return out


def eta(t):
    """Smooth bump: 1 on [-1,1], 0 outside (-2,2)."""
    t = np.abs(np.asarray(t, dtype=float))
    up = _mollify(2.0 - t)
    down = _mollify(t - 1.0)
    with np.errstate(invalid="ignore"):
        val = up / np.where(up + down > 0, up + down, 1.0)
    return np.where(t <= 1.0, 1.0, np.where(t >= 2.0, 0.0, val))


def eta_scaled(t, T):
    """eta(t/T) for a window size 0 < T <= 1."""
    return eta(np.asarray(t, dtype=float) / float(T))


def _gaussian(amp=1.0, width=1.0, center=0.0):
    return lambda x: amp * np.exp(-((np.asarray(x, float) - center) / width) ** 2)


def _sech2(amp=1.0, width=1.0, center=0.0):
    return lambda x: amp / np.cosh((np.asarray(x, float) - center) / width) ** 2


def _exp_decay(amp=1.0, rate=1.0):
    return lambda x: amp * np.exp(-rate * np.asarray(x, float))


def _sine_decay(amp=1.0, freq=1.0, rate=1.0):
    return lambda x: amp * np.sin(freq * np.asarray(x, float)) * np.exp(
        -rate * np.asarray(x, float))


def _zero():
    return lambda x: np.zeros_like(np.asarray(x, float))


PROFILE_NAMES = {
    "zero": _zero,
    "gaussian": _gaussian,
    "sech2": _sech2,
    "exp_decay": _exp_decay,
    "sine_decay": _sine_decay,
}

_CALL_RE = re.compile(r"^(\w+)\s*(?:\((.*)\))?$")


def make_profile(text):
    """Parse a profile string into a callable f(x).

    Grammar: name | name(k=v, ...) | file:<path>.  Unknown names or
    parameters raise ValueError listing what is available.
    """
    text = text.strip()
    if text.startswith("file:"):
        path = text[5:].strip()
        vals = np.loadtxt(path, ndmin=1, delimiter=",")
        if vals.ndim == 2:  # two columns: grid, value
            grid, y = vals[:, 0], vals[:, 1]
        else:
            y = vals
            grid = np.arange(y.size, dtype=float)
        return lambda x: np.interp(np.asarray(x, float), grid, y,
                                   left=0.0, right=0.0)
    m = _CALL_RE.match(text)
    if not m:
        raise ValueError(f"cannot parse profile {text!r}")
    name, args = m.group(1), m.group(2)
    if name not in PROFILE_NAMES:
        raise ValueError(f"unknown profile {name!r}; choose from "
                         f"{sorted(PROFILE_NAMES)} or file:<path>")
    kwargs = {}
    if args:
        for part in args.split(","):
            if not part.strip():
                continue
            if "=" not in part:
                raise ValueError(f"profile arguments must be key=value, got {part!r}")
            k, v = part.split("=", 1)
            kwargs[k.strip()] = float(v)
    try:
        return PROFILE_NAMES[name](**kwargs)
    except TypeError as exc:
        raise ValueError(f"bad arguments for profile {name!r}: {exc}") from None
