"""Build the compiled elimination kernels; everything else is in pyproject.toml."""
import os

from setuptools import Extension, setup

extensions = []
if os.environ.get("LEIBNIZ_COH_NO_EXT", "") != "1":
    try:
        from Cython.Build import cythonize
    except ImportError:
        pass
    else:
        extensions = cythonize(
            [
                Extension(
                    "leibniz_cohomology.exact_linalg._ckernels",
                    ["src/leibniz_cohomology/exact_linalg/_ckernels.pyx"],
                    language="c++",
                    extra_compile_args=["-O3", "-std=c++17"],
                )
            ],
            compiler_directives={"language_level": 3},
        )

setup(ext_modules=extensions)
