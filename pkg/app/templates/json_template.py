"""
JSON report renderer.

Output is byte-stable for a fixed configuration: sorted keys, two-space
indentation, LF line endings and a trailing newline. Timings only appear
when the run asked for them.
"""

import json

from app.core.template_manager import BaseTemplate, register_template


@register_template
class JsonTemplate(BaseTemplate):
    """Machine-readable report."""

    template_id = "json"
    template_name = "JSON Report"
    template_description = "Versioned machine-readable report with every law and witness"
    file_extension = ".json"

    def to_dict(self, report) -> dict:
        return report.model_dump(mode="json", exclude_none=True)

    def render(self, report) -> bytes:
        text = json.dumps(self.to_dict(report), sort_keys=True, indent=2, ensure_ascii=False)
        return (text + "\n").encode("utf-8")
