from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:  # pure-Python install; kernels fall back at import
    cythonize = None

extensions = [
    Extension(
        "ndortho._ckernels",
        ["src/ndortho/_ckernels.pyx"],
        extra_compile_args=["-O3", "-ffp-contract=off"],
        optional=True,
    )
]

setup(
    ext_modules=(
        cythonize(extensions, compiler_directives={"language_level": "3"})
        if cythonize is not None
        else []
    )
)
