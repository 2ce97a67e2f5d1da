"""Build script.

The package is pure Python except for an optional compiled twin of the
Smith-normal-form elimination kernel.  If Cython is unavailable (or the
compile fails) the install proceeds without it and the package falls back
to the pure-Python kernel at import time.
"""

from setuptools import Extension, setup

ext_modules = []
try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [
            Extension(
                "barloop.exactlin._snfcore",
                ["src/barloop/exactlin/_snfcore.pyx"],
            )
        ],
        compiler_directives={"language_level": "3"},
    )
except Exception:
    ext_modules = []

setup(ext_modules=ext_modules)
