"""Build script for the optional compiled gain kernel.

The extension is a plain C speedup; when Cython (or a C compiler) is not
available the package installs pure and skybeam.kernels falls back to the
numpy implementation at import time.
"""
from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:
    ext_modules = []
else:
    ext_modules = cythonize(
        [Extension("skybeam.kernels._core", ["src/skybeam/kernels/_core.pyx"])],
        language_level=3,
    )

setup(ext_modules=ext_modules)
