import os

import numpy as np
from setuptools import Extension, setup

ext_modules = []
if not os.environ.get("PERVERSE_SL2_NO_EXT"):
    try:
        from Cython.Build import cythonize
    except ImportError:
        cythonize = None
    if cythonize is not None:
        ext_modules = cythonize(
            [Extension(
                "perverse_sl2.exactla._rref",
                [os.path.join("src", "perverse_sl2", "exactla", "_rref.pyx")],
                include_dirs=[np.get_include()],
            )],
            language_level=3,
        )

setup(ext_modules=ext_modules)
