from pybind11.setup_helpers import Pybind11Extension, build_ext
from setuptools import setup

ext_modules = [
    Pybind11Extension(
        "swarmmatch._core",
        [
            "python/bindings.cpp",
            "src/pso.cpp",
            "src/txline.cpp",
            "src/matchdesign.cpp",
            "src/csv.cpp",
            "src/cli.cpp",
        ],
        include_dirs=["include"],
        cxx_std=20,
    )
]

setup(ext_modules=ext_modules, cmdclass={"build_ext": build_ext})
