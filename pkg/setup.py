import os

from setuptools import Extension, setup

ext_modules = []
if os.environ.get("GEOKNAP_PURE") != "1":
    try:
        import numpy
        from Cython.Build import cythonize

        ext_modules = cythonize(
            [
                Extension(
                    "geoknap._kernels",
                    ["src/geoknap/_kernels.pyx"],
                    include_dirs=[numpy.get_include()],
                    extra_compile_args=["-O3"],
                )
            ],
            compiler_directives={
                "language_level": 3,
                "boundscheck": False,
                "wraparound": False,
                "cdivision": True,
            },
        )
    except ImportError:
        # no Cython at build time: the pure-Python kernels are used instead
        ext_modules = []

setup(ext_modules=ext_modules)
