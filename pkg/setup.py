from setuptools import setup, find_packages

with open("README.md", "r", encoding="utf-8") as fh:
    long_description = fh.read()

setup(
    name="circle-rep",
    version="0.1.0",
    author="circle-rep developers",
    description="Integral representations of functions on the circle by signed and non-negative measures",
    long_description=long_description,
    long_description_content_type="text/markdown",
    packages=find_packages(exclude=["tests", "tests.*", "examples", "examples.*"]),
    py_modules=["main"],
    classifiers=[
        "Programming Language :: Python :: 3",
        "License :: OSI Approved :: MIT License",
        "Operating System :: OS Independent",
        "Development Status :: 3 - Alpha",
        "Intended Audience :: Science/Research",
        "Topic :: Scientific/Engineering :: Mathematics",
    ],
    python_requires=">=3.9",
    install_requires=[
        "pydantic>=2.6,<3",
        "python-dotenv>=1.0.0",
        "pyyaml>=6.0.2,<7.0.0",
        "numpy>=1.26.2",
        "scipy>=1.11",
    ],
    extras_require={
        "test": [
            "pytest>=7.4.3",
            "pytest-cov>=4.1.0",
            "hypothesis>=6.90",
        ],
    },
    entry_points={
        "console_scripts": [
            "circle-rep=src.cli:main",
        ],
    },
)
