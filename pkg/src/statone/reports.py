from __future__ import annotations

from dataclasses import dataclass, field


@dataclass
class LawReport:
    """Outcome of sweeping a family of identities over a finite carrier.

    ``results`` maps each law to ``None`` when it holds everywhere, or to a
    description of the first counterexample found.  ``derived`` holds
    consequences that are reported but do not decide ``passed``.
    """

    title: str
    results: dict[str, str | None] = field(default_factory=dict)
    derived: dict[str, str | None] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(v is None for v in self.results.values())

    @property
    def derived_passed(self) -> bool:
        return all(v is None for v in self.derived.values())

    def failures(self) -> dict[str, str]:
        return {k: v for k, v in self.results.items() if v is not None}

    def lines(self) -> list[str]:
        out = [self.title]
        for group, table in (("", self.results), ("derived ", self.derived)):
            for law, bad in table.items():
                if bad is None:
                    out.append(f"  PASS {group}{law}")
                else:
                    out.append(f"  FAIL {group}{law}: {bad}")
        return out

    def __str__(self) -> str:
        return "\n".join(self.lines())
