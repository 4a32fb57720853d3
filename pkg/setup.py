"""
Fuzzy Cluster Analyzer - Setup Script
"""

from setuptools import setup, find_packages
from pathlib import Path

# Read README for long description
readme_file = Path(__file__).parent / "README.md"
long_description = readme_file.read_text(encoding="utf-8") if readme_file.exists() else ""

# Read requirements
requirements_file = Path(__file__).parent / "requirements.txt"
if requirements_file.exists():
    requirements = [
        line.strip()
        for line in requirements_file.read_text(encoding="utf-8").splitlines()
        if line.strip() and not line.startswith("#")
    ]
else:
    requirements = [
        "pandas>=2.0.0",
        "numpy>=1.24.0",
        "rich>=13.0.0",
        "openpyxl>=3.1.0",
        "matplotlib>=3.6.0",
    ]

extras_require = {
    "dev": [
        "pytest>=7.4.0",
        "hypothesis>=6.80.0",
        "black>=23.0.0",
        "flake8>=6.0.0",
        "mypy>=1.0.0",
    ],
}

setup(
    name="fuzzy-cluster-analyzer",
    version="1.0.0",
    description="K-Means clustering of score tables with triangular fuzzy membership and difficulty recommendations",
    long_description=long_description,
    long_description_content_type="text/markdown",

    license="GPL-3.0",

    classifiers=[
        "Development Status :: 4 - Beta",
        "Intended Audience :: Education",
        "Intended Audience :: Science/Research",
        "License :: OSI Approved :: GNU General Public License v3 (GPLv3)",
        "Programming Language :: Python :: 3",
        "Programming Language :: Python :: 3.8",
        "Programming Language :: Python :: 3.9",
        "Programming Language :: Python :: 3.10",
        "Programming Language :: Python :: 3.11",
        "Programming Language :: Python :: 3.12",
        "Topic :: Scientific/Engineering :: Information Analysis",
        "Operating System :: OS Independent",
    ],

    packages=find_packages(exclude=["tests", "tests.*", "examples", "examples.*"]),
    python_requires=">=3.8",

    install_requires=requirements,
    extras_require=extras_require,

    # Bundled sample table
    package_data={
        "cluster_analyzer": ["data/*.csv"],
    },

    entry_points={
        "console_scripts": [
            "cluster-analyzer=cluster_analyzer.main:main",
            "fca=cluster_analyzer.main:main",  # Short alias
        ],
    },

    keywords=[
        "clustering",
        "k-means",
        "fuzzy",
        "membership",
        "education",
        "student-performance",
    ],

    zip_safe=False,
)
