from setuptools import Extension, setup

# The compiled kernel is optional: qtk.kernels falls back to the pure-Python
# implementation when the extension is absent (see src/qtk/kernels.py).
try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [Extension("qtk._bareiss", ["src/qtk/_bareiss.pyx"])],
        compiler_directives={"language_level": "3"},
    )
except ImportError:
    ext_modules = []

setup(ext_modules=ext_modules)
