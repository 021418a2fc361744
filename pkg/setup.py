import os

from setuptools import setup

ext_modules = []
if os.environ.get("SSMKIT_NO_EXTENSION") != "1":
    try:
        import numpy
        from Cython.Build import cythonize
        from setuptools import Extension

        ext_modules = cythonize(
            [
                Extension(
                    "ssmkit._poly_speedups",
                    ["src/ssmkit/_poly_speedups.pyx"],
                    include_dirs=[numpy.get_include()],
                )
            ],
            language_level="3",
        )
    except ImportError:
        # No Cython / numpy at build time: the package runs on the pure-Python
        # kernel selected at import.
        ext_modules = []

setup(ext_modules=ext_modules)
