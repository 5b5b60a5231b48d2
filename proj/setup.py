from pybind11.setup_helpers import Pybind11Extension, build_ext
from setuptools import setup

ext = Pybind11Extension(
    "pdxprop._core",
    sources=[
        "src/big_count.cpp",
        "src/combinat.cpp",
        "src/lattice.cpp",
        "src/faddeeva.cpp",
        "src/quadrature.cpp",
        "src/continuum.cpp",
        "src/pdx.cpp",
        "src/cli.cpp",
        "python/bindings.cpp",
    ],
    include_dirs=["include", "vendor"],
    cxx_std=20,
)

setup(ext_modules=[ext], cmdclass={"build_ext": build_ext})
