"""Build script: compiles the enumeration kernels when Cython is available.

The package works without the extension (a pure-Python fallback is selected
at import time), so a failed extension build degrades gracefully.
"""

from setuptools import setup

try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        ["src/hdxwalk/_kernels.pyx"],
        compiler_directives={"language_level": "3", "boundscheck": False, "wraparound": False},
    )
except ImportError:
    ext_modules = []

setup(ext_modules=ext_modules)
