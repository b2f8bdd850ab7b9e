"""Package configuration."""

from setuptools import setup

setup()
