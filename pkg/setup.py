#!/usr/bin/env python
import os

import setuptools

here = os.path.abspath(os.path.dirname(__file__))

__version__ = None
exec(open(f"{here}/lpc_ad/version.py").read())

with open(f"{here}/README.md", "r") as fh:
    long_description = fh.read()

test_dependencies = [
    "pytest>=6,<9",
    "pytest-cov>=2,<6",
    "scikit-learn>=1,<2",  # reference AUROC in tests
    "black>=22,<25",
]

setuptools.setup(
    name="lpc_ad",
    version=__version__,
    license="MIT",
    description="Latent-predictive anomaly detection for multivariate time series",
    long_description=long_description,
    long_description_content_type="text/markdown",
    packages=setuptools.find_packages(exclude=["examples", "tests", "tests.*"]),
    include_package_data=True,
    install_requires=[
        "numpy>=1.17,<3",
        "scipy>=1.4,<2",
        "pandas>=1,<3",
        "click>=7,<9",
        "matplotlib>=3,<4",
    ],
    setup_requires=["pytest-runner==5.2"],
    tests_require=test_dependencies,
    test_suite="tests",
    extras_require={
        # pip install -e ".[testing]"
        "testing": test_dependencies,
    },
    entry_points={"console_scripts": ["lpc-ad = lpc_ad.cli:main"]},
    classifiers=[
        "Programming Language :: Python :: 3.7",
        "Programming Language :: Python :: 3.8",
        "Programming Language :: Python :: 3.9",
        "Programming Language :: Python :: 3.10",
        "Programming Language :: Python :: Implementation :: CPython",
        "License :: OSI Approved :: MIT License",
        "Operating System :: OS Independent",
    ],
    python_requires=">=3.7",
)
