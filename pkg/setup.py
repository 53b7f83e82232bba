"""Build script for the optional compiled word kernel.

The package is fully functional without the extension (see
raagout/_kernel_py.py); building it just makes the hot word operations fast.
"""

from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
    extensions = cythonize(
        [
            Extension(
                "raagout._kernel",
                ["src/raagout/_kernel.pyx"],
                extra_compile_args=["-O3"],
            )
        ],
        language_level=3,
    )
except ImportError:
    # No Cython available: ship pure python only.
    extensions = []

setup(ext_modules=extensions)
