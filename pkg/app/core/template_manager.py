"""
Report Template Manager for Quantum Double Verifier
Keeps the registry of report renderers and writes reports through them
"""

import logging
from abc import ABC, abstractmethod
from pathlib import Path
from typing import Dict, List, Optional, Type

from app.core.errors import ReportWriteError

logger = logging.getLogger(__name__)


class BaseTemplate(ABC):
    """Abstract base class for report renderers."""

    # registry metadata
    template_id: str = ""
    template_name: str = ""
    template_description: str = ""
    file_extension: str = ""

    @abstractmethod
    def render(self, report) -> bytes:
        """
        Render a suite report.

        Args:
            report: SuiteReport to render

        Returns:
            bytes: The finished document
        """
        pass

    def write(self, report, path) -> Path:
        """
        Render and write a report.

        Args:
            report: SuiteReport to render
            path: Destination file

        Returns:
            Path: The written file

        Raises:
            ReportWriteError: If the destination cannot be written
        """
        path = Path(path)
        data = self.render(report)
        try:
            if path.parent and not path.parent.exists():
                path.parent.mkdir(parents=True, exist_ok=True)
            path.write_bytes(data)
        except OSError as e:
            raise ReportWriteError(f"Cannot write report to {path}: {e}") from e
        logger.info("Wrote %s report to %s (%d bytes)", self.template_id, path, len(data))
        return path


class TemplateManager:
    """Registry of report renderers keyed by format id."""

    def __init__(self):
        self._renderers: Dict[str, BaseTemplate] = {}

    def register_template(self, template_class: Type[BaseTemplate]):
        renderer = template_class()
        if not renderer.template_id:
            raise ValueError(f"Renderer {template_class.__name__} has no template_id")
        if renderer.template_id in self._renderers:
            logger.debug("Replacing renderer '%s'", renderer.template_id)
        self._renderers[renderer.template_id] = renderer

    def get_template(self, template_id: str) -> BaseTemplate:
        """
        Look up a renderer.

        Raises:
            KeyError: For an unregistered format
        """
        try:
            return self._renderers[template_id]
        except KeyError:
            raise KeyError(f"No renderer for format '{template_id}'") from None

    def get_template_list(self) -> List[Dict[str, str]]:
        """Registered renderers, sorted by id, as plain dicts."""
        return [
            {
                'id': renderer.template_id,
                'name': renderer.template_name,
                'description': renderer.template_description,
                'extension': renderer.file_extension,
            }
            for _, renderer in sorted(self._renderers.items())
        ]

    def generate_with_template(self, template_id: str, report, path: Optional[str] = None):
        """
        Render a report with the given renderer.

        Args:
            template_id: Format id of the renderer
            report: SuiteReport to render
            path: Destination; when omitted the rendered bytes are returned

        Returns:
            Path of the written file, or the rendered bytes
        """
        renderer = self.get_template(template_id)
        if path is None:
            return renderer.render(report)
        return renderer.write(report, path)


_manager: Optional[TemplateManager] = None


def get_template_manager() -> TemplateManager:
    """Process-wide registry, filled with the shipped renderers on first use."""
    global _manager
    if _manager is None:
        _manager = TemplateManager()
        import app.templates  # noqa: F401
    return _manager


def register_template(template_class: Type[BaseTemplate]):
    """Class decorator form of TemplateManager.register_template."""
    get_template_manager().register_template(template_class)
    return template_class


def emit_report(report, fmt: str = "json", path: Optional[str] = None):
    """
    Render a report in the given format, writing it when a path is given.

    Raises:
        KeyError: For an unknown format
        ReportWriteError: If the destination cannot be written
    """
    return get_template_manager().generate_with_template(fmt, report, path)
