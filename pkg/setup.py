"""Build script: compiles the optional window-scan extension.

The package is fully functional without the extension (a NumPy fallback is
selected at import time), so any failure to cythonize or compile downgrades
to a pure-Python install instead of aborting.
"""

from setuptools import setup, Extension

ext_modules = []
try:
    import numpy
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [
            Extension(
                "lprlab._scan._scans_cy",
                ["src/lprlab/_scan/_scans_cy.pyx"],
                include_dirs=[numpy.get_include()],
                define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")],
            )
        ],
        language_level=3,
    )
except Exception as exc:  # pragma: no cover - build-environment dependent
    print(f"lprlab: skipping compiled scan kernels ({exc}); using NumPy fallback")

setup(ext_modules=ext_modules)
