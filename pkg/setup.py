from setuptools import Extension, setup
from Cython.Build import cythonize

# The compiled core is optional: sigtak._kernel falls back to the pure-Python
# implementation when the extension failed to build or import.
ext = Extension("sigtak._core", ["src/sigtak/_core.pyx"], extra_compile_args=["-O3"])
ext.optional = True

setup(ext_modules=cythonize([ext], language_level="3"))
