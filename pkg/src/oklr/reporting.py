"""Structured pass/fail reports shared by the verification suites."""

__all__ = ["Report"]


class Report:
    """An ordered list of check records, each a small dict.

    Records with status 'pass'/'fail' count toward the verdict; 'note'
    records carry side information (framing fallbacks, conventions used).
    """

    def __init__(self, title=""):
        self.title = title
        self.records = []

    def add(self, check, status="pass", **info):
        rec = {"check": check, "status": status}
        rec.update(info)
        self.records.append(rec)
        return rec

    def note(self, check, **info):
        return self.add(check, status="note", **info)

    def check(self, name, ok, **info):
        return self.add(name, status="pass" if ok else "fail", **info)

    def extend(self, other):
        self.records.extend(other.records)
        return self

    @property
    def ok(self):
        return all(r["status"] != "fail" for r in self.records)

    def failures(self):
        return [r for r in self.records if r["status"] == "fail"]

    def counts(self):
        n_pass = sum(1 for r in self.records if r["status"] == "pass")
        n_fail = sum(1 for r in self.records if r["status"] == "fail")
        return n_pass, n_fail

    def lines(self):
        out = []
        for r in self.records:
            bits = ["check=%s" % r["check"], "status=%s" % r["status"]]
            bits += ["%s=%s" % (k, v) for k, v in r.items()
                     if k not in ("check", "status")]
            out.append(" ".join(bits))
        return out

    def summary(self):
        n_pass, n_fail = self.counts()
        head = self.title or "report"
        verdict = "ALL PASS" if n_fail == 0 else "%d FAILED" % n_fail
        return "%s: %d checks, %d passed, %d failed -- %s" % (
            head, n_pass + n_fail, n_pass, n_fail, verdict)

    def __repr__(self):
        return "<Report %s: %d records>" % (self.title, len(self.records))
