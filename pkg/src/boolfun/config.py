"""Key-value config file support.

Format: one `key = value` per line, '#' comments, blank lines ignored.
Recognized keys: workers, node_budget, seed, samples, out. Precedence:
CLI flag > BOOLFUN_WORKERS env (workers only) > config file > default.
"""

from pathlib import Path

DEFAULTS = {
    "workers": None,
    "node_budget": None,
    "seed": 0,
    "samples": 1_000_000,
    "out": None,
}

_INT_KEYS = {"workers", "node_budget", "seed", "samples"}


def load_config(path) -> dict:
    cfg = dict(DEFAULTS)
    if path is None:
        return cfg
    text = Path(path).read_text()
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ValueError(f"{path}:{lineno}: expected 'key = value'")
        key, _, value = line.partition("=")
        key = key.strip()
        value = value.strip()
        if key not in DEFAULTS:
            raise ValueError(f"{path}:{lineno}: unknown key {key!r}")
        cfg[key] = int(value) if key in _INT_KEYS else value
    return cfg
