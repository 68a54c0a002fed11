"""Verification reports: per-law pass/fail with counterexample witnesses.

Every verifier in the package returns an :class:`AxiomReport`.  A report is a
list of :class:`LawCheck` entries, one per checked law family.  Witnesses are
collected in canonical element order (the carrier enumeration order) and
capped, 10 per law by default.
"""

from __future__ import annotations

from dataclasses import dataclass, field

DEFAULT_WITNESS_CAP = 10


def render_element(e) -> str:
    """Canonical text form of a carrier element (coordinate tuples, nested)."""
    if isinstance(e, tuple):
        return "(" + ",".join(render_element(c) for c in e) + ")"
    if e is None:
        return "undefined"
    r = getattr(e, "render", None)
    if callable(r):
        return r()
    return str(e)


@dataclass(frozen=True)
class Witness:
    law: str
    inputs: tuple
    expected: object = None
    actual: object = None

    def as_dict(self) -> dict:
        return {
            "law": self.law,
            "inputs": [render_element(x) for x in self.inputs],
            "expected": render_element(self.expected) if self.expected is not None else None,
            "actual": render_element(self.actual) if self.actual is not None else None,
        }


@dataclass
class LawCheck:
    law: str
    examined: int = 0
    witnesses: list[Witness] = field(default_factory=list)
    note: str = ""

    @property
    def passed(self) -> bool:
        return not self.witnesses


@dataclass
class AxiomReport:
    laws: list[LawCheck] = field(default_factory=list)
    note: str = ""

    @property
    def passed(self) -> bool:
        return all(lc.passed for lc in self.laws)

    @property
    def examined(self) -> int:
        return sum(lc.examined for lc in self.laws)

    def law(self, law_id: str) -> LawCheck:
        for lc in self.laws:
            if lc.law == law_id:
                return lc
        raise KeyError(law_id)

    def law_ids(self) -> list[str]:
        return [lc.law for lc in self.laws]

    def failed_laws(self) -> list[LawCheck]:
        return [lc for lc in self.laws if not lc.passed]

    def all_witnesses(self) -> list[Witness]:
        return [w for lc in self.laws for w in lc.witnesses]

    def extend(self, other: "AxiomReport") -> "AxiomReport":
        self.laws.extend(other.laws)
        return self

    def summary(self) -> str:
        lines = []
        for lc in self.laws:
            status = "PASS" if lc.passed else "FAIL"
            lines.append(f"{status} {lc.law} examined={lc.examined}")
            for w in lc.witnesses:
                parts = ", ".join(render_element(x) for x in w.inputs)
                lines.append(
                    f"     witness ({parts}) expected={render_element(w.expected)}"
                    f" actual={render_element(w.actual)}"
                )
        return "\n".join(lines)


class LawCollector:
    """Accumulates witnesses for one law, respecting the cap."""

    def __init__(self, law: str, cap: int = DEFAULT_WITNESS_CAP, note: str = ""):
        self.check = LawCheck(law, note=note)
        self.cap = cap

    def count(self, n: int = 1):
        self.check.examined += n

    def add(self, inputs: tuple, expected=None, actual=None):
        if len(self.check.witnesses) < self.cap:
            self.check.witnesses.append(
                Witness(self.check.law, inputs, expected, actual)
            )

    @property
    def full(self) -> bool:
        return len(self.check.witnesses) >= self.cap
