"""Build hook for the optional compiled eigensolver core.

The package is pure Python except for coexnull._eigcore, a Cython kernel
for the shifted power iteration that dominates Monte Carlo runtime.  The
extension is marked optional: if Cython, numpy headers, or a C compiler
are unavailable the install still succeeds and the package falls back to
the numpy implementation of the same kernel at import time.
"""

from setuptools import Extension, setup

ext_modules = []
try:
    import numpy
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [
            Extension(
                "coexnull._eigcore",
                ["src/coexnull/_eigcore.pyx"],
                include_dirs=[numpy.get_include()],
                define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")],
                extra_compile_args=["-O3"],
                optional=True,
            )
        ],
        compiler_directives={"language_level": "3"},
    )
except ImportError:
    pass

setup(ext_modules=ext_modules)
