# app/__init__.py
"""Quantum Double Verifier"""

__version__ = "1.0.0"
__app_name__ = "Quantum Double Verifier"
__description__ = "Exact verification of quantum doubles, field algebras and twisted tensor products"
