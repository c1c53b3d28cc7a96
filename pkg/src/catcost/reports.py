"""Machine-readable scenario reports with text, CSV, and key-value rendering."""
from __future__ import annotations

import json
from dataclasses import dataclass, field


@dataclass(frozen=True)
class ResultRow:
    """A numeric result together with the tolerance its check used."""

    value: float
    tol: float | None = None


@dataclass
class ScenarioReport:
    scenario: str
    version: str
    parameters: dict = field(default_factory=dict)
    results: dict = field(default_factory=dict)
    checks: dict = field(default_factory=dict)

    def add_result(self, name: str, value: float, tol: float | None = None) -> None:
        self.results[name] = ResultRow(float(value), tol)

    def add_check(self, name: str, passed: bool) -> None:
        self.checks[name] = bool(passed)

    @property
    def passed(self) -> bool:
        return all(self.checks.values())

    def to_text(self) -> str:
        lines = [f"scenario: {self.scenario}", f"version: {self.version}"]
        for name, value in self.parameters.items():
            lines.append(f"param {name} = {value!r}")
        for name, row in self.results.items():
            tol = "" if row.tol is None else f"  [tol={row.tol!r}]"
            lines.append(f"result {name} = {row.value!r}{tol}")
        for name, ok in self.checks.items():
            lines.append(f"check {name}: {'PASS' if ok else 'FAIL'}")
        lines.append(f"overall: {'PASS' if self.passed else 'FAIL'}")
        return "\n".join(lines) + "\n"

    def to_csv(self) -> str:
        lines = ["section,name,value,tol"]
        lines.append(f"scenario,{self.scenario},,")
        lines.append(f"version,{self.version},,")
        for name, value in self.parameters.items():
            lines.append(f"param,{name},{value!r},")
        for name, row in self.results.items():
            tol = "" if row.tol is None else repr(row.tol)
            lines.append(f"result,{name},{row.value!r},{tol}")
        for name, ok in self.checks.items():
            lines.append(f"check,{name},{'PASS' if ok else 'FAIL'},")
        lines.append(f"overall,,{'PASS' if self.passed else 'FAIL'},")
        return "\n".join(lines) + "\n"

    def to_keyvalue(self) -> str:
        doc = {
            "scenario": self.scenario,
            "version": self.version,
            "parameters": dict(self.parameters),
            "results": {
                name: {"value": row.value, "tol": row.tol}
                for name, row in self.results.items()
            },
            "checks": dict(self.checks),
            "overall": self.passed,
        }
        return json.dumps(doc, indent=2, sort_keys=True) + "\n"

    def render(self, fmt: str) -> str:
        if fmt == "text":
            return self.to_text()
        if fmt == "csv":
            return self.to_csv()
        if fmt == "json-like-keyvalue":
            return self.to_keyvalue()
        raise ValueError(f"unknown format {fmt!r}")
