"""Build script: compiles the optional C extension for the hot kernels.

The package works without the extension (a pure-Python twin is selected at
import time), so compilation failures must not break installation.
"""

import sys

from setuptools import setup

ext_modules = []
try:
    from Cython.Build import cythonize
    from setuptools import Extension

    ext_modules = cythonize(
        [
            Extension(
                "hypershard._core._kernels",
                sources=["src/hypershard/_core/_kernels.pyx"],
                extra_compile_args=["-O3"],
            )
        ],
        compiler_directives={
            "language_level": 3,
            "boundscheck": False,
            "wraparound": False,
            "cdivision": True,
        },
    )
except Exception as exc:  # pragma: no cover - build-env dependent
    sys.stderr.write(f"warning: building without compiled kernels ({exc})\n")
    ext_modules = []

setup(ext_modules=ext_modules)
