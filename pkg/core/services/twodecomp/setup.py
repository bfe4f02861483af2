import os
import pathlib

import setuptools

# Force current path to be used as reference for Python
os.chdir(os.path.abspath(os.path.dirname(__file__)))

with open(pathlib.Path(__file__).parent.joinpath("README.md"), "r", encoding="utf-8") as readme:
    long_description = readme.read()

setuptools.setup(
    name="twodecomp",
    version="0.1.0",
    description="Separating cycles, class H structure and 2-decompositions of subcubic graphs.",
    long_description=long_description,
    long_description_content_type="text/markdown",
    license="MIT",
    packages=setuptools.find_packages(exclude=["*.test_*"]),
    py_modules=["main", "settings"],
    python_requires=">=3.9",
    install_requires=[
        "appdirs == 1.4.4",
        "loguru == 0.5.3",
        "networkx >= 2.6",
        "pydantic >= 1.8, < 2",
        "tqdm >= 4.60",
        "commonwealth == 0.2.0",
    ],
    entry_points={"console_scripts": ["twodecomp = main:main"]},
)
