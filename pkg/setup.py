"""Build the optional Cython kernels; the package works without them."""

import os

from setuptools import Extension, setup

ext_modules = []
if not os.environ.get("KODAIRA_BUNDLES_NO_EXT"):
    try:
        from Cython.Build import cythonize
    except ImportError:
        cythonize = None
    if cythonize is not None:
        ext_modules = cythonize(
            [
                Extension(
                    "kodaira_bundles._kernels_c",
                    ["src/kodaira_bundles/_kernels_c.pyx"],
                    extra_compile_args=["-O3"],
                )
            ],
            compiler_directives={"language_level": "3"},
        )

setup(ext_modules=ext_modules)
