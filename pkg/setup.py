"""Build script: compiles the Cython kernel core when possible.

The extension is optional -- if Cython or a C compiler is missing the
package installs anyway and hmatx falls back to the NumPy kernel core
at import time.
"""

from setuptools import Extension, setup

try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [
            Extension(
                "hmatx._kernelcore_cy",
                ["src/hmatx/_kernelcore_cy.pyx"],
                extra_compile_args=["-O3"],
            )
        ],
        language_level=3,
    )
except ImportError:
    ext_modules = []

setup(ext_modules=ext_modules)
