"""Build script.

The compiled kernel extension is optional: when Cython (or a C compiler)
is unavailable the package installs anyway and `stripsurf.kernels` falls
back to the pure-Python implementation at import time.
"""

from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:
    cythonize = None

if cythonize is not None:
    ext = Extension(
        "stripsurf._kernels",
        ["src/stripsurf/_kernels.pyx"],
        optional=True,
    )
    ext_modules = cythonize([ext], language_level="3")
else:
    ext_modules = []

setup(ext_modules=ext_modules)
