"""Build script. Compiles the Cython solver kernels when a toolchain is
available; falls back to a pure-Python install otherwise (the package
selects the numpy backend at import time in that case)."""

import numpy as np
from setuptools import Extension, setup

try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [
            Extension(
                "qpuzzle._kernels._cykernels",
                ["src/qpuzzle/_kernels/_cykernels.pyx"],
                include_dirs=[np.get_include()],
            )
        ],
        compiler_directives={"language_level": "3", "boundscheck": False, "wraparound": False},
    )
except ImportError:
    ext_modules = []

setup(
    ext_modules=ext_modules,
    include_dirs=[np.get_include()],
)
