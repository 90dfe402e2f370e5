#!/usr/bin/env python
from setuptools import find_packages, setup


setup(
    name="cascade-protect",
    version="0.1",
    description="Cascading failure and evolving protection on random networks",
    packages=find_packages(),
    install_requires=["numpy>=1.17", "scipy>=1.4"],
    extras_require={"test": ["pytest", "hypothesis"]},
    include_package_data=True,
    entry_points={
        "console_scripts": ["cascade-protect=cascade_protect.cli:main"],
    },
)
