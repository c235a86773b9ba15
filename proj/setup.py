import glob

from pybind11.setup_helpers import Pybind11Extension, build_ext
from setuptools import setup

core_sources = [
    s
    for s in sorted(glob.glob("src/*.cpp"))
    if not s.endswith(("config.cpp", "io.cpp", "run_experiment.cpp"))
]

ext = Pybind11Extension(
    "floqsim._core",
    core_sources + ["python/bindings.cpp"],
    include_dirs=["include", "/usr/include/eigen3"],
    cxx_std=20,
    extra_compile_args=["-O2"],
)

setup(ext_modules=[ext], cmdclass={"build_ext": build_ext})
