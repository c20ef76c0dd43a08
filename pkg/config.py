# config.py
"""
Centralized configuration for PicardCalc.
Automatically resolves the settings file based on where the app is installed.
"""

import os
import sys
from dataclasses import dataclass, replace
from pathlib import Path

from errors import ConfigError

APP_NAME       = "PicardCalc"
APP_VERSION    = "1.0.0"
SCHEMA_VERSION = "1"

# ── Resolve install/working directory ─────────────────────────────────────────
# Works whether running from source or a PyInstaller bundle.
if getattr(sys, "frozen", False):
    _BASE = Path(sys.executable).parent
else:
    _BASE = Path(__file__).parent

SETTINGS_FILE = str(_BASE / "picardcalc.cfg")
CONFIG_ENV    = "PICARDCALC_CONFIG"
WORKERS_ENV   = "PICARDCALC_WORKERS"

# ── Search defaults ───────────────────────────────────────────────────────────
DEFAULT_N_MAX_FLOOR = 8          # pattern cap is max(N*, this) unless overridden
DEFAULT_SEARCH_CAP  = 10_000     # per-exponent cap for ideal enumeration
SIEVE_LIMIT         = 50_000     # small primes used to pre-filter (h²+1)/2
SEGMENT_SIZE        = 1 << 18    # odd heights per sieve segment
MAX_SCAN_N          = 4096       # hard stop for termination-index searches


@dataclass(frozen=True)
class Settings:
    n_max: int | None = None
    search_cap: int = DEFAULT_SEARCH_CAP
    workers: int = 1
    sieve_limit: int = SIEVE_LIMIT
    segment_size: int = SEGMENT_SIZE


_KEYS = {"n_max", "search_cap", "workers", "sieve_limit", "segment_size"}


def parse_settings(text: str, base: Settings | None = None) -> Settings:
    """Parses key=value lines; '#' starts a comment."""
    values: dict[str, int] = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"line {lineno}: expected key=value", line=raw)
        key, value = (part.strip() for part in line.split("=", 1))
        if key not in _KEYS:
            raise ConfigError(f"line {lineno}: unknown key '{key}'", key=key)
        try:
            number = int(value)
        except ValueError:
            raise ConfigError(f"line {lineno}: '{key}' must be an integer", value=value) from None
        if number < 1:
            raise ConfigError(f"line {lineno}: '{key}' must be positive", value=value)
        values[key] = number
    return replace(base or Settings(), **values)


def load_settings(path: str | None = None) -> Settings:
    """
    Settings precedence: explicit path > $PICARDCALC_CONFIG > file next to the app.
    Worker count falls back to $PICARDCALC_WORKERS when the file does not set it.
    """
    base = Settings(workers=_env_workers())
    target = path or os.environ.get(CONFIG_ENV) or SETTINGS_FILE
    if not os.path.exists(target):
        if path:
            raise ConfigError(f"settings file not found: {path}", path=path)
        return base
    with open(target, "r", encoding="utf-8") as f:
        return parse_settings(f.read(), base)


def _env_workers() -> int:
    raw = os.environ.get(WORKERS_ENV, "").strip()
    if not raw:
        return 1
    try:
        return max(1, int(raw))
    except ValueError:
        raise ConfigError(f"{WORKERS_ENV} must be an integer", value=raw) from None
