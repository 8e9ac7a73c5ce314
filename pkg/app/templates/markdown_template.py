"""
Markdown report renderer
Dimension table, one law table per suite and pretty-printed witnesses
"""

from typing import List

from app.core.template_manager import BaseTemplate, register_template


def status_word(suite) -> str:
    if suite.expect == "fail":
        return "PASS (failed as expected)" if suite.passed else "FAIL (control held unexpectedly)"
    return "PASS" if suite.passed else "FAIL"


def law_status(suite, law) -> str:
    if suite.expect == "fail":
        return "fails as expected" if law.failure_count else "UNEXPECTED PASS"
    return "pass" if law.passed else "FAIL"


def config_lines(report) -> List[str]:
    cfg = report.config
    return [
        f"Group: {cfg.group}",
        f"Subgroup: {cfg.subgroup}",
        f"Window: [{cfg.window[0]},{cfg.window[1]}]",
        f"Mode: {cfg.mode} (samples {cfg.samples}, seed {cfg.seed})",
        f"Suites: {', '.join(cfg.suites)}",
    ]


@register_template
class MarkdownTemplate(BaseTemplate):
    """Human-readable report."""

    template_id = "markdown"
    template_name = "Markdown Report"
    template_description = "Dimension table, per-suite law tables and witnesses"
    file_extension = ".md"

    def render(self, report) -> bytes:
        lines = [f"# Quantum Double Verifier report (v{report.version})", ""]
        lines += [f"- {line}" for line in config_lines(report)]
        lines += ["", f"**Overall: {'PASS' if report.overall else 'FAIL'}**", ""]

        dims = report.dimensions
        if dims:
            lines += ["## Dimensions", "", "| quantity | value |", "| --- | --- |"]
            lines += [f"| {key} | {dims[key]} |" for key in sorted(dims)]
            lines.append("")

        for suite in report.suites:
            lines += [f"## {suite.suite}: {status_word(suite)}", ""]
            if suite.seconds is not None:
                lines += [f"Time: {suite.seconds:.3f} s", ""]
            lines += ["| law | checked | mode | result |", "| --- | --- | --- | --- |"]
            for law in suite.laws:
                lines.append(f"| `{law.law}` | {law.checked} | {law.mode} | "
                             f"{law_status(suite, law)} |")
            lines.append("")
            for law in suite.laws:
                if law.failures:
                    lines.append(f"Witnesses for `{law.law}` ({law.failure_count} failing):")
                    lines += [f"    {' ; '.join(w)}" for w in law.failures]
                    lines.append("")
            for note in suite.notes:
                lines += [f"> {note}", ""]
        return ("\n".join(lines).rstrip("\n") + "\n").encode("utf-8")
