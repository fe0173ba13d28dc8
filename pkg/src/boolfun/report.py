"""Persisted, seed-stamped outcome records.

Reports append to a JSONL file, one object per run. The metrics map is
serialized with sorted keys so identical runs are byte-identical up to the
wall-time field, which determinism checks must exclude.
"""

import json
import time
from dataclasses import asdict, dataclass, field
from importlib.metadata import PackageNotFoundError, version
from pathlib import Path

SCHEMA_VERSION = 1

VERDICT_HOLDS = "holds-at-scale"
VERDICT_COUNTEREXAMPLE = "counterexample"
VERDICT_REPORT_ONLY = "report-only"


def _code_version() -> str:
    try:
        return version("boolfun")
    except PackageNotFoundError:
        return "unknown"


@dataclass
class Report:
    conjecture_id: str
    parameters: dict
    verdict: str
    metrics: dict
    witness: dict | None = None
    seed: int = 0
    wall_time_s: float = 0.0
    code_version: str = field(default_factory=_code_version)
    schema_version: int = SCHEMA_VERSION

    def metrics_json(self) -> str:
        """Canonical metrics serialization used by determinism checks."""
        return json.dumps(self.metrics, sort_keys=True)

    def to_json(self) -> str:
        return json.dumps(asdict(self), sort_keys=True)

    @classmethod
    def from_json(cls, line: str) -> "Report":
        d = json.loads(line)
        d.pop("schema_version", None)
        return cls(**d, schema_version=SCHEMA_VERSION)

    def append_to(self, path) -> None:
        path = Path(path)
        path.parent.mkdir(parents=True, exist_ok=True)
        with open(path, "a") as fh:
            fh.write(self.to_json() + "\n")


def load_reports(path):
    with open(path) as fh:
        return [Report.from_json(line) for line in fh if line.strip()]


def render_csv(reports) -> str:
    lines = ["conjecture_id,verdict,seed,wall_time_s,metrics"]
    for r in reports:
        metrics = r.metrics_json().replace('"', '""')
        lines.append(f'{r.conjecture_id},{r.verdict},{r.seed},{r.wall_time_s},"{metrics}"')
    return "\n".join(lines) + "\n"


def render_markdown(reports) -> str:
    lines = ["| conjecture | verdict | seed | key metrics |", "|---|---|---|---|"]
    for r in reports:
        keys = sorted(r.metrics)[:4]
        brief = ", ".join(f"{k}={r.metrics[k]}" for k in keys)
        lines.append(f"| {r.conjecture_id} | {r.verdict} | {r.seed} | {brief} |")
    return "\n".join(lines) + "\n"


class Timer:
    def __enter__(self):
        self.start = time.perf_counter()
        return self

    def __exit__(self, *exc):
        self.elapsed = time.perf_counter() - self.start
        return False
