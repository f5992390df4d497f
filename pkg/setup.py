"""Build script.

Compiles the fast diagonalization/matmul kernel when Cython and a C compiler
are available.  If either is missing, or the compile fails, the install
degrades to the pure-Python kernel (mpideals._kernel.kernel_py) which
implements the same arithmetic step for step.
"""

import os

from setuptools import Extension, setup

ext_modules = []
cmdclass = {}

if not os.environ.get("MPIDEALS_PURE_BUILD"):
    try:
        from Cython.Build import cythonize
    except ImportError:
        cythonize = None

    if cythonize is not None:
        ext_modules = cythonize(
            [
                Extension(
                    "mpideals._kernel._kernel_c",
                    ["src/mpideals/_kernel/_kernel_c.pyx"],
                    # -ffp-contract=off keeps the C arithmetic identical to the
                    # pure-Python twin (no fused multiply-add contraction).
                    extra_compile_args=["-O2", "-ffp-contract=off"],
                )
            ],
            language_level=3,
        )

        from setuptools.command.build_ext import build_ext

        class optional_build_ext(build_ext):
            """Fall back to the pure-Python kernel when compilation fails."""

            def run(self):
                try:
                    super().run()
                except Exception as exc:  # compiler missing or broken
                    print(f"warning: kernel build skipped ({exc}); pure-Python kernel will be used")

            def build_extension(self, ext):
                try:
                    super().build_extension(ext)
                except Exception as exc:
                    print(f"warning: building {ext.name} failed ({exc}); pure-Python kernel will be used")

        cmdclass["build_ext"] = optional_build_ext

setup(ext_modules=ext_modules, cmdclass=cmdclass)
