from pathlib import Path
import os


def get_app_data_dir():
    """
    Get the base application data directory.

    QDV_CONFIG_DIR, when set, replaces the per-user location.

    Returns:
        Path: Path to the app data directory
    """
    override = os.getenv('QDV_CONFIG_DIR')
    if override:
        return Path(override)
    if os.name == 'nt':  # Windows
        return Path(os.getenv('APPDATA', '')) / 'QuantumDoubleVerifier'
    else:  # macOS/Linux
        return Path.home() / '.config' / 'QuantumDoubleVerifier'


def default_report_name(group, subgroup, window, extension):
    """File name for a report of one instance, e.g. S3_-123-_0-1.json for S3, (123), [0,1]."""
    def safe(text):
        return "".join(ch if ch.isalnum() else "-" for ch in str(text))
    return f"{safe(group)}_{safe(subgroup)}_{window[0]}-{window[1]}{extension}"
