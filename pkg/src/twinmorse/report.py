"""
Suite reports and their canonical JSON form.

Reports carry integers, booleans, strings and rationals written as
``"p/q"``; floats are rejected so that equal runs give equal bytes.

Copyright (c) 2025 Max Qian <astro_air@126.com>
Available under the terms of MIT license
"""

from __future__ import annotations

import json
from fractions import Fraction
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence

from .constants import EXPECTED_FAILURE, FAIL, PASS, REPORT_VERSION, STATUSES, WARN
from .logging_utils import debug, warning
from .utils import fraction_str

SCHEMA_PATH = Path(__file__).with_name("report.schema.json")

# violations kept per case; the count is always complete
MAX_EXAMPLES = 10


def _plain(value: Any) -> Any:
    if isinstance(value, bool) or value is None:
        return value
    if isinstance(value, float):
        raise TypeError("floats are not allowed in reports: %r" % value)
    if isinstance(value, Fraction):
        return fraction_str(value)
    if isinstance(value, (int, str)):
        return value
    if isinstance(value, dict):
        return {str(k): _plain(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_plain(v) for v in value]
    if hasattr(value, "to_json"):
        return _plain(value.to_json())
    return str(value)


class SuiteReport(object):
    """Case records of one suite run with pass/fail/warn tallies.

    Example:
        >>> r = SuiteReport("zonotopes", {"seed": 42})
        >>> r.check("recomposition", [], checked=3)
        >>> r.counts[PASS], r.ok
        (1, True)
    """

    def __init__(self, suite: str, config: Dict[str, Any]) -> None:
        self.suite = suite
        self.config = _plain(config)
        self.cases: List[Dict[str, Any]] = []
        self.wall_ms: Optional[int] = None

    def add(self, name: str, status: str, **detail: Any) -> None:
        """Append one case.

        Args:
            name (str): Case name, unique within the suite.
            status (str): One of ``pass``, ``fail``, ``warn`` and
                ``expected-failure``.
            **detail: JSON-ready values; rationals become ``"p/q"``.

        Raises:
            ValueError: For an unknown status.
            TypeError: If a detail value is a float.
        """
        if status not in STATUSES:
            raise ValueError("unknown case status %r" % status)
        self.cases.append({"name": name, "status": status, "detail": _plain(detail)})
        if status == FAIL:
            warning("%s: %s failed" % (self.suite, name))
        else:
            debug("%s: %s %s" % (self.suite, name, status))

    def check(
        self,
        name: str,
        violations: Sequence[str],
        checked: int,
        warnings: Sequence[str] = (),
        **detail: Any,
    ) -> None:
        """Record a batch of checks as one case."""
        if violations:
            status = FAIL
        elif warnings:
            status = WARN
        else:
            status = PASS
        detail["checked"] = checked
        detail["violations"] = len(violations)
        if violations:
            detail["examples"] = list(violations[:MAX_EXAMPLES])
        if warnings:
            detail["warnings"] = list(warnings[:MAX_EXAMPLES])
            detail["warning_count"] = len(warnings)
        self.add(name, status, **detail)

    @property
    def counts(self) -> Dict[str, int]:
        out = {status: 0 for status in STATUSES}
        for case in self.cases:
            out[case["status"]] += 1
        return out

    @property
    def failures(self) -> List[Dict[str, Any]]:
        return [c for c in self.cases if c["status"] == FAIL]

    @property
    def ok(self) -> bool:
        return not self.failures

    def summary(self) -> str:
        """One line with the case count per status, for the log."""
        counts = self.counts
        return "%s: %d cases, %d passed, %d failed, %d warnings, %d expected failures" % (
            self.suite,
            len(self.cases),
            counts[PASS],
            counts[FAIL],
            counts[WARN],
            counts[EXPECTED_FAILURE],
        )

    def to_json(self, timing: bool = False) -> Dict[str, Any]:
        """Report object; ``wall_ms`` only with ``timing`` so that equal
        runs compare byte for byte."""
        data: Dict[str, Any] = {
            "version": REPORT_VERSION,
            "suite": self.suite,
            "config": self.config,
            "cases": self.cases,
            "counts": self.counts,
            "ok": self.ok,
        }
        if timing and self.wall_ms is not None:
            data["wall_ms"] = self.wall_ms
        return data


def canonical_json(data: Any) -> str:
    """Sorted keys, two-space indent, ASCII only, trailing newline."""
    return json.dumps(_plain(data), sort_keys=True, indent=2, ensure_ascii=True) + "\n"


def emit_report(report: SuiteReport, path: str, timing: bool = False) -> None:
    """Write ``report`` to ``path``.

    Raises:
        OSError: If the file cannot be written.
    """
    text = canonical_json(report.to_json(timing))
    with open(path, "w", encoding="ascii", newline="\n") as fp:
        fp.write(text)
    debug("report written to %s" % path)


def load_schema() -> Dict[str, Any]:
    """The JSON schema every report validates against.

    Example:
        >>> import jsonschema
        >>> jsonschema.validate(SuiteReport("morse", {}).to_json(), load_schema())
    """
    with open(SCHEMA_PATH, encoding="utf-8") as fp:
        return json.load(fp)
