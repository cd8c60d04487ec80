"""Build script: compiles the optional search/DP kernel extension.

The package works without the extension (a numpy fallback is selected at
import time), so a failed compile downgrades to a warning instead of
aborting the install.  Set EARLYWORK_PURE_PYTHON=1 to skip the extension
entirely.
"""

import os
import sys

from setuptools import Extension, setup
from setuptools.command.build_ext import build_ext


class optional_build_ext(build_ext):
    """Try to build the kernel extension; warn and continue on failure."""

    def run(self):
        try:
            super().run()
        except Exception as exc:  # compiler missing, broken toolchain, ...
            self._warn(exc)

    def build_extension(self, ext):
        try:
            super().build_extension(ext)
        except Exception as exc:
            self._warn(exc)

    @staticmethod
    def _warn(exc):
        print(
            f"WARNING: building the earlywork._kernels extension failed ({exc}); "
            "falling back to the pure numpy kernels",
            file=sys.stderr,
        )


ext_modules = []
cmdclass = {}
if os.environ.get("EARLYWORK_PURE_PYTHON") != "1":
    try:
        from Cython.Build import cythonize

        ext_modules = cythonize(
            [Extension("earlywork._kernels", ["src/earlywork/_kernels.pyx"])],
            compiler_directives={
                "language_level": "3",
                "boundscheck": False,
                "wraparound": False,
                "cdivision": True,
            },
        )
        cmdclass = {"build_ext": optional_build_ext}
    except ImportError:
        print(
            "WARNING: Cython not available; installing with the pure numpy kernels",
            file=sys.stderr,
        )

setup(ext_modules=ext_modules, cmdclass=cmdclass)
