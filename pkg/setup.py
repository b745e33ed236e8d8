from setuptools import Extension, setup

import numpy
from Cython.Build import cythonize

extensions = [
    Extension(
        "patchlab._f2core",
        ["src/patchlab/_f2core.pyx"],
        include_dirs=[numpy.get_include()],
        define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")],
    )
]

setup(ext_modules=cythonize(extensions, language_level="3"))
