"""Build hook for the optional compiled term kernel.

The package is fully functional without the extension (the pure-Python
kernel is selected at import time); set CHERNCERT_NO_EXT=1 to skip
compilation entirely.
"""

import os

from setuptools import setup

ext_modules = []
if not os.environ.get("CHERNCERT_NO_EXT"):
    try:
        from Cython.Build import cythonize

        ext_modules = cythonize(
            ["src/cherncert/_kernel_cy.pyx"],
            compiler_directives={"language_level": 3},
        )
    except ImportError:
        ext_modules = []

setup(ext_modules=ext_modules)
