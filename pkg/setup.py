from setuptools import Extension, setup

# The compiled counting core is optional: without Cython (or a C compiler)
# the package falls back to the pure-Python kernel selected at import time.
try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [Extension("f1lab._countcore", ["src/f1lab/_countcore.pyx"])],
        compiler_directives={"language_level": "3"},
    )
except ImportError:
    ext_modules = []

setup(ext_modules=ext_modules)
