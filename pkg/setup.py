"""Build script: compiles the optional accelerator extension.

The package works without the extension (a pure-NumPy fallback is selected at
import time), so any compilation failure downgrades to a plain build instead
of aborting the install.  Set TSRE_SKIP_EXT=1 to skip the extension outright.
"""

import os
import sys

from setuptools import Extension, setup
from setuptools.command.build_ext import build_ext


class optional_build_ext(build_ext):
    """build_ext that tolerates a missing or broken C toolchain."""

    def run(self):
        try:
            super().run()
        except Exception as exc:  # noqa: BLE001 - any failure means "no extension"
            self._warn(exc)

    def build_extension(self, ext):
        try:
            super().build_extension(ext)
        except Exception as exc:  # noqa: BLE001
            self._warn(exc)

    @staticmethod
    def _warn(exc):
        print(
            "warning: building the accelerator extension failed (%s); "
            "falling back to the pure-NumPy kernels" % exc,
            file=sys.stderr,
        )


def extensions():
    if os.environ.get("TSRE_SKIP_EXT"):
        return []
    try:
        from Cython.Build import cythonize
    except ImportError:
        print("warning: Cython not available; skipping accelerator extension", file=sys.stderr)
        return []
    ext = Extension(
        "tsre.kernels._core",
        sources=["src/tsre/kernels/_core.pyx"],
        extra_compile_args=["-O3"],
    )
    return cythonize([ext], language_level=3)


setup(
    ext_modules=extensions(),
    cmdclass={"build_ext": optional_build_ext},
)
