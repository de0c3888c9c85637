"""Suite configuration, check records and deterministic report rendering."""

import json
from dataclasses import asdict, dataclass, field
from importlib import resources

SCHEMA_VERSION = "1.0"
TOOL_VERSION = "0.1.0"


class IOFailure(OSError):
    pass


@dataclass(frozen=True)
class SuiteConfig:
    suite: str
    alpha: str = "symbolic"
    h: str = "symbolic"
    mu: str = "0"
    range: int = 3
    cutoff: int = -12
    seed: int = 0
    format: str = "text"
    timing: bool = False

    def __post_init__(self):
        if self.range < 1:
            raise ValueError("range must be at least 1")
        if self.cutoff > -4:
            raise ValueError("cutoff must be at most -4")

    def echo(self):
        out = asdict(self)
        out.pop("format")
        out.pop("timing")
        return out


@dataclass
class Check:
    id: str
    passed: bool
    residual: str = ""
    timing: float = None

    @property
    def status(self):
        return "pass" if self.passed else "fail"


@dataclass
class Report:
    suite: str
    config: dict
    checks: list = field(default_factory=list)
    notes: list = field(default_factory=list)
    version: str = TOOL_VERSION

    @property
    def passed(self):
        return all(c.passed for c in self.checks)

    @property
    def exit_code(self):
        return 0 if self.passed else 1

    def failures(self):
        return [c for c in self.checks if not c.passed]

    def to_dict(self):
        n_fail = len(self.failures())
        return {
            "schema_version": SCHEMA_VERSION,
            "tool": "supersymbols",
            "version": self.version,
            "suite": self.suite,
            "config": self.config,
            "verdict": "pass" if self.passed else "fail",
            "summary": {"total": len(self.checks), "passed": len(self.checks) - n_fail, "failed": n_fail},
            "checks": [
                {"id": c.id, "status": c.status, "residual": c.residual or None, "timing": c.timing}
                for c in self.checks
            ],
            "notes": list(self.notes),
        }

    @classmethod
    def from_dict(cls, data):
        checks = [Check(c["id"], c["status"] == "pass", c["residual"] or "", c["timing"]) for c in data["checks"]]
        return cls(data["suite"], data["config"], checks, list(data["notes"]), data["version"])

    @classmethod
    def from_json(cls, text):
        return cls.from_dict(json.loads(text))


def load_schema():
    text = resources.files("supersymbols").joinpath("report_schema.json").read_text()
    return json.loads(text)


def render_json(report):
    return json.dumps(report.to_dict(), indent=2, sort_keys=False) + "\n"


def render_text(report, limit=120):
    rows = []
    for c in report.checks:
        res = c.residual.replace("\n", " ")
        if len(res) > limit:
            res = res[: limit - 3] + "..."
        row = [c.id, c.status, res]
        if c.timing is not None:
            row.append(f"{c.timing:.3f}s")
        rows.append(row)
    head = ["check", "status", "residual"] + (["time"] if any(c.timing is not None for c in report.checks) else [])
    widths = [max(len(r[i]) for r in rows + [head]) for i in range(len(head))]

    def line(r):
        return "  ".join(x.ljust(w) for x, w in zip(r, widths)).rstrip()

    out = [f"suite    {report.suite}", f"version  {report.version}"]
    out += [f"config   {k}={v}" for k, v in report.config.items()]
    out.append("")
    out.append(line(head))
    out.append(line(["-" * w for w in widths]))
    out += [line(r) for r in rows]
    out.append("")
    for note in report.notes:
        out.append(f"note: {note}")
    n_fail = len(report.failures())
    out.append(f"{len(report.checks)} checks, {n_fail} failed: {'PASS' if report.passed else 'FAIL'}")
    return "\n".join(out) + "\n"


def emit_report(report, fmt="text", out=None):
    """Render the report; write it to ``out`` (a path) when given, and return the bytes."""
    text = render_json(report) if fmt == "json" else render_text(report)
    data = text.encode()
    if out is not None:
        try:
            with open(out, "wb") as fh:
                fh.write(data)
        except OSError as exc:
            raise IOFailure(str(exc)) from exc
    return data
