"""Builds the optional compiled CSR kernels.

When Cython (or a C compiler) is unavailable the package installs without the
extension and the vectorized NumPy fallback in specfilt._kernels is used.
"""

from setuptools import setup
from setuptools.extension import Extension

try:
    import numpy as np
    from Cython.Build import cythonize
except ImportError:
    cythonize = None

extensions = []
if cythonize is not None:
    extensions = cythonize(
        [
            Extension(
                "specfilt._kernels._csr_cy",
                ["src/specfilt/_kernels/_csr_cy.pyx"],
                include_dirs=[np.get_include()],
                define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")],
            )
        ],
        language_level="3",
    )

setup(ext_modules=extensions)
