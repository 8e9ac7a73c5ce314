"""Report renderers for Quantum Double Verifier"""

# Import templates to trigger registration
from . import json_template
from . import markdown_template
from . import docx_template

__all__ = ['json_template', 'markdown_template', 'docx_template']
