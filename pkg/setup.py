import os

from setuptools import setup

README_PATH = os.path.join(os.path.dirname(__file__), "README.md")

setup(
    name="partial-theories",
    use_scm_version=True,
    description="Partial equational theories: string-diagram terms, canonical cospans and "
                "finite models in sets and partial functions",
    license="GPL",
    keywords="partial algebra string diagrams restriction categories model enumeration",
    packages=["partial_theories"],
    long_description=open(README_PATH).read(),
    long_description_content_type="text/markdown",
    python_requires=">=3.7",
    install_requires=[
        "click",
        "importlib-metadata",
        "lark>=1.0",
        "networkx",
    ],
    tests_require=[
        "pytest"
    ],
    setup_requires=[
        "setuptools_scm"
    ],
    entry_points={
        "console_scripts": [
            "pft=partial_theories.cli:main",
        ],
    },
    classifiers=[
        "Development Status :: 3 - Alpha",
        "License :: OSI Approved :: GNU General Public License (GPL)",
        "Programming Language :: Python :: 3.7",
        "Programming Language :: Python :: 3.8",
        "Programming Language :: Python :: 3.9",
        "Topic :: Scientific/Engineering :: Mathematics",
    ],
)
