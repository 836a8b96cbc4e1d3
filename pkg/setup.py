import ast

import setuptools

with open("shape_dot_grouping/__manifest__.py", "r") as f:
    manifest = ast.literal_eval(f.read())

with open("README.md", "r") as f:
    long_description = f.read()

setuptools.setup(
    name="shape-dot-grouping",
    description=manifest["summary"],
    long_description=long_description,
    long_description_content_type="text/markdown",
    version=manifest["version"],
    author=manifest["author"],
    license="AGPL-3.0-or-later",
    packages=setuptools.find_packages(include=["shape_dot_grouping*"]),
    python_requires=">=3.8",
    install_requires=manifest["external_dependencies"]["python"],
    extras_require={"test": manifest["test_dependencies"]},
    entry_points={
        "console_scripts": ["shape-dot-grouping=shape_dot_grouping.cli:run"],
    },
    classifiers=[
        "Programming Language :: Python",
        "Programming Language :: Python :: 3",
        "License :: OSI Approved :: GNU Affero General Public License v3 or later (AGPLv3+)",
        "Topic :: Scientific/Engineering :: Image Recognition",
    ],
)
