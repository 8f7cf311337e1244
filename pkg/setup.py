"""Setup script for faberhurwitz."""

from setuptools import setup, find_packages

setup(
    name="faberhurwitz",
    version="0.1.0",
    description="Exact Faber–Hurwitz numbers, Faber symbols and the generating series that compare them",
    author="faberhurwitz Contributors",
    packages=find_packages(exclude=["tests", "tests.*"]),
    python_requires=">=3.9",
    install_requires=[
        'networkx>=3.0',
        'sympy>=1.12',
    ],
    extras_require={
        'dev': [
            'pytest>=7.0.0',
        ],
    },
    entry_points={
        'console_scripts': [
            'faberhurwitz=faberhurwitz.cli.main:main',
        ],
    },
)
