"""Core verification engine for Quantum Double Verifier"""

from .errors import VerifierError
from .template_manager import get_template_manager, BaseTemplate, emit_report

__all__ = ['VerifierError', 'get_template_manager', 'BaseTemplate', 'emit_report']
