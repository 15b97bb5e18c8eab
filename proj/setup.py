from glob import glob

from pybind11.setup_helpers import Pybind11Extension, build_ext
from setuptools import setup

ext_modules = [
    Pybind11Extension(
        "telesim._core",
        sorted(glob("src/*.cpp")) + ["python/bindings.cpp"],
        include_dirs=["include", "vendor"],
        cxx_std=20,
    ),
]

setup(
    packages=["telesim"],
    package_dir={"telesim": "python/telesim"},
    ext_modules=ext_modules,
    cmdclass={"build_ext": build_ext},
    zip_safe=False,
)
