"""Build script: compiles the optional Cython kernel.

The package is fully functional without the extension; `pencilforms._core`
falls back to the pure-Python kernel when the compiled module is missing.
Set PENCILFORMS_SKIP_EXT=1 to skip the extension build entirely.
"""

import os

from setuptools import setup

ext_modules = []
if not os.environ.get("PENCILFORMS_SKIP_EXT"):
    try:
        from Cython.Build import cythonize

        ext_modules = cythonize(
            ["src/pencilforms/_core_cy.pyx"], language_level=3
        )
    except ImportError:
        ext_modules = []

setup(ext_modules=ext_modules)
