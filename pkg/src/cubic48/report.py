"""Verification reports: an ordered ledger of checked claims."""
from __future__ import annotations

import csv
import io
import json
import time
from contextlib import contextmanager
from dataclasses import dataclass, field
from datetime import datetime, timezone
from fractions import Fraction
from typing import Any, Iterator, Optional

from . import __version__


def jsonable(value: Any) -> Any:
    """Lossless JSON form; integers outside the signed 53-bit range become strings."""
    if isinstance(value, bool) or value is None or isinstance(value, str):
        return value
    if isinstance(value, int):
        return value if abs(value) < 2**53 else str(value)
    if isinstance(value, Fraction):
        return {"num": str(value.numerator), "den": str(value.denominator)}
    if isinstance(value, float):
        return value
    if isinstance(value, dict):
        return {str(k): jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [jsonable(v) for v in value]
    if hasattr(value, "as_tuple"):
        return [str(v) for v in value.as_tuple()]
    raise TypeError(f"cannot serialize {type(value).__name__}")


@dataclass
class Claim:
    id: str
    anchor: str
    status: str
    witness: Any = None
    elapsed_ms: Optional[float] = None

    @property
    def passed(self) -> bool:
        return self.status == "pass"

    def to_dict(self) -> dict:
        return {"id": self.id, "anchor": self.anchor, "status": self.status,
                "witness": self.witness, "elapsed_ms": self.elapsed_ms}


@dataclass
class Report:
    parameters: dict = field(default_factory=dict)
    claims: list[Claim] = field(default_factory=list)
    version: str = __version__
    timestamp: Optional[str] = None
    timing: bool = True

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.claims)

    @property
    def summary(self) -> str:
        return "pass" if self.passed else "fail"

    @property
    def exit_code(self) -> int:
        return 0 if self.passed else 1

    def add(self, id: str, anchor: str, ok: bool, witness: Any = None,
            elapsed_ms: Optional[float] = None) -> Claim:
        if any(c.id == id for c in self.claims):
            raise ValueError(f"duplicate claim id {id!r}")
        claim = Claim(id, anchor, "pass" if ok else "fail", jsonable(witness),
                      round(elapsed_ms, 3) if self.timing and elapsed_ms is not None else None)
        self.claims.append(claim)
        return claim

    @contextmanager
    def timed(self) -> Iterator[dict]:
        """Collects ``elapsed_ms`` for the block into the yielded dict."""
        box: dict = {}
        start = time.perf_counter()
        try:
            yield box
        finally:
            box["elapsed_ms"] = (time.perf_counter() - start) * 1000

    def extend(self, other: "Report") -> None:
        for c in other.claims:
            self.add(c.id, c.anchor, c.passed, c.witness, c.elapsed_ms)

    def stamp(self) -> None:
        if self.timing:
            self.timestamp = datetime.now(timezone.utc).isoformat(timespec="seconds")

    # serialization

    def to_dict(self) -> dict:
        d = {"version": self.version, "parameters": jsonable(self.parameters),
             "claims": [c.to_dict() for c in self.claims], "summary": self.summary}
        if self.timestamp is not None:
            d["timestamp"] = self.timestamp
        return d

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2) + "\n"

    @classmethod
    def from_dict(cls, d: dict) -> "Report":
        claims = [Claim(c["id"], c["anchor"], c["status"], c["witness"], c["elapsed_ms"])
                  for c in d["claims"]]
        report = cls(d["parameters"], claims, d["version"], d.get("timestamp"))
        if report.summary != d["summary"]:
            raise ValueError("summary disagrees with claim statuses")
        return report

    @classmethod
    def from_json(cls, text: str) -> "Report":
        return cls.from_dict(json.loads(text))

    def to_text(self) -> str:
        lines = []
        for c in self.claims:
            t = f" ({c.elapsed_ms:.0f} ms)" if c.elapsed_ms is not None else ""
            lines.append(f"[{c.status.upper()}] {c.id}: {c.anchor}{t}")
            if c.status != "pass" or c.id.startswith(("case(", "witness")):
                lines.append(f"        {json.dumps(c.witness)}")
        lines.append(f"summary: {self.summary} ({sum(c.passed for c in self.claims)}/{len(self.claims)} claims)")
        return "\n".join(lines) + "\n"

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["id", "anchor", "status", "elapsed_ms", "witness"])
        for c in self.claims:
            w.writerow([c.id, c.anchor, c.status, "" if c.elapsed_ms is None else c.elapsed_ms,
                        json.dumps(c.witness)])
        return buf.getvalue()

    def render(self, fmt: str) -> str:
        return {"json": self.to_json, "text": self.to_text, "csv": self.to_csv}[fmt]()
