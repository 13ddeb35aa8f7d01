"""Builds the optional compiled series kernel.

The package works without it: ``besselframe._backend`` falls back to the
pure-Python kernel when the extension is missing.
"""

import os

from setuptools import Extension, setup

ext_modules = []
if os.environ.get("BESSELFRAME_NO_EXT") != "1":
    try:
        from Cython.Build import cythonize
    except ImportError:
        cythonize = None
    if cythonize is not None:
        ext_modules = cythonize(
            [
                Extension(
                    "besselframe._hypsum",
                    ["src/besselframe/_hypsum.pyx"],
                    # error-free transformations break under FMA contraction
                    extra_compile_args=["-O2", "-ffp-contract=off", "-fno-fast-math"],
                )
            ],
            compiler_directives={"language_level": "3"},
        )

setup(ext_modules=ext_modules)
