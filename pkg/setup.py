import os

from setuptools import Extension, setup

# The compiled kernels are optional: the package falls back to pure-numpy
# kernels when the extension is absent.  Set PARCONCORD_NO_EXT=1 to force a
# pure-python install.
ext_modules = []
if not os.environ.get("PARCONCORD_NO_EXT"):
    try:
        from Cython.Build import cythonize
    except ImportError:
        cythonize = None
    if cythonize is not None:
        ext = Extension(
            "parconcord._ckernels",
            ["src/parconcord/_ckernels.pyx"],
            extra_compile_args=["-O3", "-fopenmp"],
            extra_link_args=["-fopenmp"],
        )
        ext_modules = cythonize([ext], language_level=3)

setup(ext_modules=ext_modules)
