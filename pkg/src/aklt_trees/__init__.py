"""Transfer-operator toolkit for AKLT ground states on trees and tree-like graphs."""

__version__ = "0.1.0"
