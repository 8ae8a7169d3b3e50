"""Optional compiled monomial kernel.

The pure-Python kernel in ``torfan.exact_algebra._mono_py`` is always
available; if Cython and a C compiler are present we additionally build
``torfan.exact_algebra._mono_cy`` with the same interface.  The build
degrades gracefully: any failure here just means the package runs on the
pure-Python kernel.
"""

from setuptools import setup

ext_modules = []
try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        ["src/torfan/exact_algebra/_mono_cy.pyx"],
        language_level=3,
    )
except Exception:
    pass

setup(ext_modules=ext_modules)
