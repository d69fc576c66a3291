"""Round-trip certificates.

A certificate stores the object it speaks about, the explicit witness maps of
the isomorphism, and the number of instances of each identity that were
swept.  :func:`replay` re-checks the identities from the stored data alone,
so a reader never has to rerun the functors.
"""
from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field


@dataclass
class DualityCertificate:
    kind: str
    subject: dict
    witness: dict
    checks: dict[str, int] = field(default_factory=dict)
    failures: list[str] = field(default_factory=list)
    completeness: str | None = None

    @property
    def passed(self) -> bool:
        return not self.failures

    def record(self, name: str, ok: bool, detail=None) -> bool:
        """Count one instance of ``name``; ``detail`` may be a callable, formatted only on failure."""
        self.checks[name] = self.checks.get(name, 0) + 1
        if not ok:
            if callable(detail):
                detail = detail()
            self.failures.append(f"{name}: {detail}" if detail else name)
        return ok

    def to_dict(self) -> dict:
        """The document form: ``kind`` is ``"certificate"`` and the duality side goes under ``side``."""
        d = asdict(self)
        side = d.pop("kind")
        return {"kind": "certificate", "side": side, **d, "passed": self.passed}

    @classmethod
    def from_dict(cls, d: dict) -> "DualityCertificate":
        return cls(
            kind=d["side"],
            subject=d["subject"],
            witness=d["witness"],
            checks=dict(d.get("checks", {})),
            failures=list(d.get("failures", [])),
            completeness=d.get("completeness"),
        )

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=1, ensure_ascii=False)


def replay(cert: DualityCertificate) -> list[str]:
    """Re-verify a certificate from its stored witnesses; returns the failures."""
    from . import bauer, stone

    replayers = {
        stone.ALGEBRA_SIDE: stone.replay_algebra_certificate,
        stone.SPACE_SIDE: stone.replay_space_certificate,
        bauer.ALGEBRA_SIDE: bauer.replay_algebra_certificate,
        bauer.SPACE_SIDE: bauer.replay_space_certificate,
    }
    try:
        fn = replayers[cert.kind]
    except KeyError:
        return [f"unknown certificate kind {cert.kind!r}"]
    try:
        return fn(cert)
    except (KeyError, IndexError, TypeError, ValueError) as exc:
        return [f"malformed witness: {exc!r}"]
