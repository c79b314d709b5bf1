from setuptools import setup

# This file exists for backwards compatibility with tools that don't yet support pyproject.toml
# All configuration is in pyproject.toml
setup()
