# Copyright 2026 The qhelim Authors.
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

import os
from glob import glob

from pybind11.setup_helpers import ParallelCompile, Pybind11Extension, build_ext
from setuptools import setup


def eigen_include():
    candidates = [
        os.environ.get("EIGEN3_INCLUDE_DIR"),
        "/usr/include/eigen3",
        "/usr/local/include/eigen3",
        "/opt/homebrew/include/eigen3",
    ]
    for path in candidates:
        if path and os.path.isdir(path):
            return path
    raise RuntimeError("Eigen headers not found; set EIGEN3_INCLUDE_DIR")


ParallelCompile("NPY_NUM_BUILD_JOBS").install()

ext_modules = [
    Pybind11Extension(
        "qhelim._core",
        sorted(glob("src/*.cpp")) + ["bindings/py_module.cpp"],
        include_dirs=["include", "vendor", eigen_include()],
        cxx_std=20,
    )
]

setup(ext_modules=ext_modules, cmdclass={"build_ext": build_ext})
