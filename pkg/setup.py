"""Build script.

The compiled kernel extension is optional: if Cython (or a C compiler) is
unavailable the package installs anyway and falls back to the pure-Python
kernels at import time.
"""

from setuptools import setup, Extension

ext_modules = []
try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [Extension("sdimlab._exactcore_cy", ["src/sdimlab/_exactcore_cy.pyx"])],
        language_level=3,
    )
except ImportError:
    pass

setup(ext_modules=ext_modules)
