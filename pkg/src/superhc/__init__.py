"""Exact algebra of highest weight Harish-Chandra supermodules and the orthosymplectic Siegel superspace."""

from __future__ import annotations

from .rootdata import Root, RootSystem, Weight, build_root_system, enumerate_admissible, is_admissible
from .scalars import CycloScalar, GrassmannElement, GrassmannMatrix, SuperMatrix, berezinian, supertranspose

__version__ = "0.1.0"

__all__ = ["CycloScalar", "GrassmannElement", "GrassmannMatrix", "SuperMatrix", "berezinian",
           "supertranspose", "Root", "RootSystem", "Weight", "build_root_system",
           "enumerate_admissible", "is_admissible"]
