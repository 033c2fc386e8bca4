import os

from setuptools import setup

ext_modules = []
if os.environ.get("ANNULUS_PURE") != "1":
    try:
        from Cython.Build import cythonize

        ext_modules = cythonize(
            ["src/annulus/_kernel_cy.pyx"],
            compiler_directives={"language_level": "3"},
        )
    except Exception:
        # No Cython / no compiler: the package falls back to the pure kernel.
        ext_modules = []

setup(ext_modules=ext_modules)
