"""Build script for the optional compiled matching-census kernel.

The package works without the extension (a pure-Python engine with identical
semantics is selected at import time), so a failed compile must not abort the
install.
"""

from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:
    ext_modules = []
else:
    ext_modules = cythonize(
        [
            Extension(
                "cubicmaps._wickcore",
                ["src/cubicmaps/_wickcore.pyx"],
                extra_compile_args=["-O3"],
            )
        ],
        compiler_directives={"language_level": "3"},
    )

setup(ext_modules=ext_modules)
