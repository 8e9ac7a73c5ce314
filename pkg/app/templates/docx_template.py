"""
Word report renderer
Same content as the markdown report with a coloured header bar
"""

import io

from docx import Document
from docx.oxml import OxmlElement
from docx.oxml.ns import qn
from docx.shared import Inches, Pt

from app.core.template_manager import BaseTemplate, register_template
from app.templates.markdown_template import config_lines, law_status, status_word


@register_template
class DocxTemplate(BaseTemplate):
    """Printable report for sharing results."""

    template_id = "docx"
    template_name = "Word Report"
    template_description = "Word document with a dimension table and one law table per suite"
    file_extension = ".docx"

    def add_colored_rectangle(self, doc, fill: str):
        """Add a full-width shaded bar."""
        bar = doc.add_paragraph()
        bar_format = bar.paragraph_format
        bar_format.space_before = Pt(0)
        bar_format.space_after = Pt(6)
        bar_format.line_spacing = Pt(12)
        bar_format.left_indent = Inches(-0.5)
        bar_format.right_indent = Inches(-0.5)

        shading_elm = OxmlElement('w:shd')
        shading_elm.set(qn('w:fill'), fill)
        bar._element.get_or_add_pPr().append(shading_elm)
        return bar

    def add_table(self, doc, header, rows):
        table = doc.add_table(rows=1, cols=len(header))
        table.style = 'Table Grid'
        for cell, text in zip(table.rows[0].cells, header):
            cell.text = text
            cell.paragraphs[0].runs[0].bold = True
        for row in rows:
            cells = table.add_row().cells
            for cell, text in zip(cells, row):
                cell.text = str(text)
        return table

    def render(self, report) -> bytes:
        doc = Document()
        for section in doc.sections:
            section.top_margin = Inches(0.3)
            section.left_margin = Inches(0.7)
            section.right_margin = Inches(0.7)

        self.add_colored_rectangle(doc, '156082' if report.overall else 'A4262C')
        doc.add_heading(f'Quantum Double Verifier report (v{report.version})', level=1)
        for line in config_lines(report):
            doc.add_paragraph(line)
        verdict = doc.add_paragraph().add_run(f"Overall: {'PASS' if report.overall else 'FAIL'}")
        verdict.bold = True

        dims = report.dimensions
        if dims:
            doc.add_heading('Dimensions', level=2)
            self.add_table(doc, ('quantity', 'value'), [(k, dims[k]) for k in sorted(dims)])

        for suite in report.suites:
            doc.add_heading(f'{suite.suite}: {status_word(suite)}', level=2)
            self.add_table(doc, ('law', 'checked', 'mode', 'result'),
                           [(law.law, law.checked, law.mode, law_status(suite, law))
                            for law in suite.laws])
            for law in suite.laws:
                for witness in law.failures:
                    p = doc.add_paragraph(f"{law.law}: {' ; '.join(witness)}")
                    p.runs[0].font.name = 'Courier New'
                    p.runs[0].font.size = Pt(9)
            for note in suite.notes:
                doc.add_paragraph(note).runs[0].italic = True

        buffer = io.BytesIO()
        doc.save(buffer)
        return buffer.getvalue()
