from Cython.Build import cythonize
from setuptools import Extension, setup

extensions = [
    Extension(
        "mubcorr.kernels._fast",
        sources=["src/mubcorr/kernels/_fast.pyx"],
        extra_compile_args=["-O3"],
    )
]

setup(
    ext_modules=cythonize(
        extensions,
        compiler_directives={"language_level": "3"},
    )
)
