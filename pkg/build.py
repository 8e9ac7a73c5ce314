"""
Build a single-file console executable of qdv with PyInstaller.

Usage:
    python build.py            # clean, check packages, build
    python build.py --keep     # reuse build/ from the last run
"""

import argparse
import os
import shutil
import sys
from pathlib import Path

EXE_NAME = 'qdv'
ENTRY_POINT = 'app/main.py'

# import name -> distribution name
RUNTIME_PACKAGES = {
    'sympy': 'sympy',
    'pydantic': 'pydantic',
    'docx': 'python-docx',
    'tqdm': 'tqdm',
}

# renderers register on import and sympy loads its domains lazily
HIDDEN_IMPORTS = [
    'app.templates.json_template',
    'app.templates.markdown_template',
    'app.templates.docx_template',
    'sympy.polys.domains',
    'sympy.polys.matrices',
    'docx',
    'lxml.etree',
]

EXCLUDED_MODULES = ['numpy', 'pytest', 'tkinter', 'PySide6']


def remove_artifacts():
    """Delete build/, dist/ and the generated .spec file."""
    print("\n🧹 Removing old artifacts...")
    for path in (Path('build'), Path('dist'), Path('__pycache__'), Path(f'{EXE_NAME}.spec')):
        if path.is_dir():
            shutil.rmtree(path)
        elif path.exists():
            path.unlink()
        else:
            continue
        print(f"   ✓ {path}")


def missing_packages():
    """Return the distribution names of runtime packages that fail to import."""
    print("\n📦 Runtime packages:")
    missing = []
    for import_name, dist_name in {**RUNTIME_PACKAGES, 'PyInstaller': 'pyinstaller'}.items():
        try:
            __import__(import_name)
        except ImportError:
            missing.append(dist_name)
            print(f"   ✗ {dist_name}")
        else:
            print(f"   ✓ {dist_name}")
    return missing


def pyinstaller_args(clean=True):
    """Command line handed to PyInstaller."""
    args = [ENTRY_POINT, f'--name={EXE_NAME}', '--console', '--onefile', '--noconfirm']
    if clean:
        args.append('--clean')
    args += [f'--hidden-import={name}' for name in HIDDEN_IMPORTS]
    args += [f'--exclude-module={name}' for name in EXCLUDED_MODULES]
    return args


def build(clean=True):
    print("=" * 60)
    print("  Quantum Double Verifier - executable build")
    print("=" * 60)

    if clean:
        remove_artifacts()

    missing = missing_packages()
    if missing:
        print(f"\n❌ Install first:  pip install {' '.join(missing)}")
        return 1

    print("\n🔨 Running PyInstaller...")
    import PyInstaller.__main__
    try:
        PyInstaller.__main__.run(pyinstaller_args(clean))
    except SystemExit as e:
        if e.code:
            print(f"\n❌ PyInstaller exited with {e.code}")
            return 1

    exe_path = Path('dist') / (EXE_NAME + ('.exe' if os.name == 'nt' else ''))
    if not exe_path.exists():
        print(f"\n⚠️  {exe_path} was not produced; see the PyInstaller output above.")
        return 1

    size_mb = exe_path.stat().st_size / (1024 * 1024)
    print(f"\n✅ {exe_path.absolute()} ({size_mb:.1f} MB)")
    print(f"   try: {exe_path} verify --group S3 --subgroup '(123)' --suites group,double")
    return 0


if __name__ == '__main__':
    parser = argparse.ArgumentParser(description="Build the qdv executable")
    parser.add_argument('--keep', action='store_true', help="skip removing old artifacts")
    options = parser.parse_args()
    try:
        sys.exit(build(clean=not options.keep))
    except KeyboardInterrupt:
        print("\n\n⚠️  Build cancelled.")
        sys.exit(1)
