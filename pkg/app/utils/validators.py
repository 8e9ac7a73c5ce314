import re

from app.core.groups import SPEC_PATTERNS

_WINDOW = re.compile(r'^\s*(-?\d+)\s*,\s*(-?\d+)\s*$')
_MODE = re.compile(r'^(auto|exhaustive|sampled(:\d+)?)$')


def validate_group_spec(spec):
    """
    Validate a group spec string.

    Args:
        spec: Group spec such as 'S3', 'D4', 'cyclic:4' or 'file:table.txt'

    Returns:
        tuple: (is_valid, error_message)
    """
    if not spec or not str(spec).strip():
        return False, "Group spec cannot be empty"

    spec = str(spec).strip()
    if spec.lower().startswith("file:"):
        if not spec[5:].strip():
            return False, "Group file path is missing after 'file:'"
        return True, ""

    if not any(pattern.match(spec.lower()) for pattern, _ in SPEC_PATTERNS):
        return False, f"Unknown group spec '{spec}' (try Z4, D4, S3, Q8 or file:<path>)"

    return True, ""


def validate_window(text):
    """
    Validate an observable window written as 'n,m'.

    Returns:
        tuple: (is_valid, error_message)
    """
    match = _WINDOW.match(text or "")
    if not match:
        return False, f"Window must look like 'n,m', got '{text}'"

    lo, hi = int(match.group(1)), int(match.group(2))
    if lo > hi:
        return False, f"Window start {lo} is after window end {hi}"

    return True, ""


def validate_suites(suites, known):
    """
    Validate a list of suite names.

    Args:
        suites: Requested suite names
        known: Every valid suite name

    Returns:
        tuple: (is_valid, error_message)
    """
    if not suites:
        return False, "At least one suite must be selected"

    unknown = [s for s in suites if s not in known]
    if unknown:
        return False, f"Unknown suite(s): {', '.join(unknown)} (valid: {', '.join(known)})"

    return True, ""


def validate_mode(mode):
    """
    Validate a verification mode.

    Returns:
        tuple: (is_valid, error_message)
    """
    if not _MODE.match((mode or "").strip().lower()):
        return False, f"Mode must be auto, exhaustive or sampled:<seed>, got '{mode}'"
    return True, ""


def validate_format(fmt):
    """Validate a report format name."""
    if fmt not in ("json", "markdown", "docx"):
        return False, f"Unknown report format '{fmt}' (json, markdown or docx)"
    return True, ""


def validate_cap(value, name):
    """
    Validate a positive resource cap.

    Returns:
        tuple: (is_valid, error_message)
    """
    try:
        num = int(value)
        if num < 1:
            return False, f"{name} must be positive"
        return True, ""
    except (ValueError, TypeError):
        return False, f"{name} must be a whole number"
