#!/usr/bin/env python
# -*- coding: UTF-8 -*-
"""
Sphere-glyph pictures of phase-space (Wigner) functions of model atoms
"""
from setuptools import setup, find_packages


setup(name="atomic-wigner",
      author="Kevin Broadwater, Nicholas Willhite",
      author_email="willnx84@gmail.com",
      version='2026.10.17',
      packages=find_packages(exclude=['tests']),
      include_package_data=True,
      classifiers=[
        'Development Status :: 3 - Alpha',
        'Intended Audience :: Science/Research',
        'License :: OSI Approved :: Apache Software License',
        'Natural Language :: English',
        'Operating System :: POSIX :: Linux',
        'Programming Language :: Python :: 3.6',
        'Topic :: Scientific/Engineering :: Physics',
        'Topic :: Scientific/Engineering :: Visualization',
      ],
      description="Wigner functions of spin and spatial degrees of freedom of model atoms, drawn as sphere glyphs",
      long_description=open('README.rst').read(),
      install_requires=['numpy', 'scipy', 'ujson>=5', 'jsonschema', 'pypng'],
      entry_points={
        'console_scripts': ['atomic-wigner = atomic_wigner.cli:main'],
      },
      )
