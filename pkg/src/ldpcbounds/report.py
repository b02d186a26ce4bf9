"""Pass/fail reports shared by the verification suites."""

from __future__ import annotations

from dataclasses import dataclass, field


@dataclass(frozen=True)
class Violation:
    """One counterexample: enough to replay the failing instance."""

    fingerprint: str
    code_text: str
    detail: dict


@dataclass
class VerificationReport:
    suite: str
    instances: int = 0
    violations: list[Violation] = field(default_factory=list)
    skipped: list[dict] = field(default_factory=list)
    wall_time: float = 0.0

    @property
    def passed(self) -> bool:
        return not self.violations

    def to_json_dict(self) -> dict:
        return {
            "suite": self.suite,
            "instances": self.instances,
            "passed": self.passed,
            "violations": [
                {"fingerprint": v.fingerprint, "code": v.code_text, "detail": v.detail}
                for v in self.violations
            ],
            "skipped": list(self.skipped),
            "wall_time_s": round(self.wall_time, 3),
        }

    def summary(self) -> str:
        state = "PASS" if self.passed else f"FAIL ({len(self.violations)} violations)"
        return f"{self.suite}: {state} over {self.instances} instances in {self.wall_time:.2f}s"
