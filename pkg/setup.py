from setuptools import setup, Extension

ext_modules = []
try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [Extension("quasimap._fastpoly", ["src/quasimap/_fastpoly.pyx"])],
        language_level=3,
    )
except Exception:
    # The compiled kernel is optional; the pure-Python fallback is used
    # when it cannot be built.
    ext_modules = []

setup(ext_modules=ext_modules)
