from setuptools import setup, find_packages

setup(
    name="knit-products",
    version="0.1.0",
    packages=find_packages(exclude=["tests", "tests.*"]),
    install_requires=[
        "pydantic",
        "python-dotenv",
        "numpy",
        "tqdm",
        "sympy",
        "networkx",
    ],
    extras_require={
        "test": ["pytest", "hypothesis"],
    },
    entry_points={
        "console_scripts": [
            "zs=src.cli:main",
        ],
    },
    python_requires=">=3.9",
)
