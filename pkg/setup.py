from setuptools import find_packages, setup


setup(
    name="truth-belief",
    version="0.1.0",
    description="q-deformed complexity, entropy and divergence of truth/belief pairs",
    author="",
    packages=find_packages(exclude=("tests",)),
    install_requires=[
        "numpy>=1.22",
        "scipy>=1.8",
    ],
    extras_require={
        "test": [
            "pytest>=7",
            "hypothesis>=6",
            "mpmath>=1.2",
        ],
    },
    entry_points={
        "console_scripts": [
            "truth-belief = truth_belief.cli:main",
        ],
    },
    python_requires=">=3.9",
)
