"""Build script for the compiled statevector kernel.

The extension is optional: if Cython or a C compiler is missing, the install
falls back to the pure-numpy kernel in fastqconv._kernel_py and everything
still works (slower).
"""
import warnings

from setuptools import setup
from setuptools.command.build_ext import build_ext


class OptionalBuildExt(build_ext):
    def run(self):
        try:
            super().run()
        except Exception as exc:
            warnings.warn(f"building the compiled kernel failed ({exc}); "
                          "fastqconv will use the pure-Python fallback")

    def build_extension(self, ext):
        try:
            super().build_extension(ext)
        except Exception as exc:
            warnings.warn(f"building {ext.name} failed ({exc}); "
                          "fastqconv will use the pure-Python fallback")


def extensions():
    try:
        from Cython.Build import cythonize
        from setuptools import Extension
    except ImportError:
        return []
    return cythonize(
        [Extension("fastqconv._kernel", ["src/fastqconv/_kernel.pyx"],
                   extra_compile_args=["-O3"])],
        language_level=3,
    )


setup(ext_modules=extensions(), cmdclass={"build_ext": OptionalBuildExt})
