"""Build script: compiles the optional Cython kernel extension.

The extension is marked optional; without Cython or a C compiler the
package installs with the pure-Python kernels selected at import.
"""

from setuptools import Extension, setup

ext_modules = []
try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [Extension("kohnsym._kernels", ["src/kohnsym/_kernels.pyx"], optional=True)],
        language_level="3",
    )
except ImportError:
    pass

setup(ext_modules=ext_modules)
