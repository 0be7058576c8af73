"""Pass/fail ledgers returned by the verification routines."""

from dataclasses import dataclass, field


@dataclass
class Check:
    name: str
    passed: bool
    detail: str = ""

    def line(self):
        return "%-4s %s%s" % ("ok" if self.passed else "FAIL", self.name,
                              (" -- " + self.detail) if self.detail else "")


@dataclass
class Report:
    title: str
    checks: list = field(default_factory=list)

    def add(self, name, passed, detail=""):
        self.checks.append(Check(name, bool(passed), detail))
        return passed

    def extend(self, other, prefix=""):
        for c in other.checks:
            self.checks.append(Check(prefix + c.name, c.passed, c.detail))

    @property
    def passed(self):
        return all(c.passed for c in self.checks)

    def failures(self):
        return [c for c in self.checks if not c.passed]

    def __bool__(self):
        return self.passed

    def __str__(self):
        head = "%s: %s (%d checks)" % (self.title, "PASS" if self.passed else "FAIL", len(self.checks))
        return "\n".join([head] + ["  " + c.line() for c in self.checks])

    def to_dict(self):
        return {"title": self.title, "passed": self.passed,
                "checks": [{"name": c.name, "passed": c.passed, "detail": c.detail}
                           for c in self.checks]}
