import os

from setuptools import Extension, setup

ext_modules = []
if os.environ.get("ANNING_NO_EXT") != "1":
    try:
        from Cython.Build import cythonize

        ext_modules = cythonize(
            [
                Extension(
                    "anning._kernels._speedups",
                    ["src/anning/_kernels/_speedups.pyx"],
                )
            ],
            language_level=3,
        )
    except ImportError:
        # No Cython available: install pure-Python only; the package falls
        # back to the reference kernels at import time.
        ext_modules = []

setup(ext_modules=ext_modules)
