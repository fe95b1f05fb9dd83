"""Build script: compiles the optional Cython fast path for the complex
error-function core.  If Cython or a C compiler is unavailable the package
installs anyway and falls back to the pure-Python implementation of the
same algorithm (selected at import time in plemelj.special_functions).
"""
from setuptools import setup

try:
    from Cython.Build import cythonize
    ext_modules = cythonize(
        ["src/plemelj/_erfcx_ext.pyx"],
        compiler_directives={"language_level": 3},
    )
except ImportError:
    ext_modules = []

setup(ext_modules=ext_modules)
