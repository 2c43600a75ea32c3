"""Build script: compiles the optional Cython kernel.

The package is fully functional without the extension (a pure-Python
engine is selected at import time), so any build failure here downgrades
to a source-only install instead of aborting.
"""

import os

from setuptools import setup

ext_modules = []
if not os.environ.get("TEAMBALANCE_SKIP_EXT"):
    try:
        from Cython.Build import cythonize

        ext_modules = cythonize(
            ["src/teambalance/_kernels.pyx"],
            language_level=3,
        )
    except ImportError:
        pass

setup(ext_modules=ext_modules)
