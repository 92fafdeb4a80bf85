"""Build script: compiles the optional fast kernel extension.

The extension is a performance optimization only.  If Cython or a C
compiler is unavailable the build falls through and the package installs
with the pure-Python kernels (same results, slower).
"""

import sys

from setuptools import Extension, setup

ext_modules = []
try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [
            Extension(
                "seqderiv._kernels._cweier",
                ["src/seqderiv/_kernels/_cweier.pyx"],
            )
        ],
        language_level=3,
    )
except Exception as exc:  # pragma: no cover - build-environment dependent
    sys.stderr.write(f"seqderiv: skipping compiled kernels ({exc})\n")

setup(ext_modules=ext_modules)
