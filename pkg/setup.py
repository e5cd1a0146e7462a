"""Build the optional compiled kernel.

Without Cython (or a C compiler) the package installs pure Python and
``hardunknots.kernel`` falls back to ``_pykernel``.
"""
import os

from setuptools import setup

ext_modules = []
if os.environ.get("HARDUNKNOTS_PURE_PYTHON", "") not in ("1", "true", "yes"):
    try:
        from Cython.Build import cythonize
        from setuptools import Extension
    except ImportError:
        pass
    else:
        ext_modules = cythonize(
            [Extension("hardunknots._kernel", ["src/hardunknots/_kernel.pyx"],
                       extra_compile_args=["-O2"])],
            compiler_directives={"language_level": "3"},
        )

setup(ext_modules=ext_modules)
