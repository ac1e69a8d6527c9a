import setuptools


with open("README.md", "r", encoding="utf-8") as fh:
    long_description = fh.read()

setuptools.setup(
    name="cherrytree",
    version="0.1.0",
    author="Cherrytree contributors",
    description="Even-colored 3-uniform hypergraphs, strong 3-query LDCs and their GF(2) certificates.",
    long_description=long_description,
    long_description_content_type="text/markdown",
    classifiers=[
        "Programming Language :: Python :: 3",
        "License :: OSI Approved :: GNU Affero General Public License v3 or later (AGPLv3+)",
        "Operating System :: OS Independent",
    ],
    package_dir={"": "src"},
    packages=setuptools.find_packages(where="src"),
    install_requires=["deepdiff", "networkx", "numpy"],
    entry_points={"console_scripts": ["cherrytree=cherrytree.cli:main"]},
    python_requires=">=3.8",
)
