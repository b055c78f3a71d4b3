#!/usr/bin/env python

import os
from setuptools import setup, find_packages

version_file = os.path.join(
    os.path.dirname(__file__), 'arbocert', 'VERSION.txt')
with open(version_file) as fh:
    VERSION = fh.read().strip()

description_file = os.path.join(os.path.dirname(__file__), 'README.rst')
with open(description_file) as fh:
    DESCRIPTION = fh.read()


if __name__ == '__main__':
    setup(name='arbocert',
          version=VERSION,
          description=("Certified surjectivity of arboreal Galois "
                       "representations."),
          long_description=DESCRIPTION,
          license='BSD',
          classifiers=[
              'Development Status :: 2 - Pre-Alpha',
              'Environment :: Console',
              'Intended Audience :: Science/Research',
              'License :: OSI Approved :: BSD License',
              'Operating System :: OS Independent',
              'Programming Language :: Python :: 3.9',
              'Programming Language :: Python :: 3.10',
              'Programming Language :: Python :: 3.11',
              'Topic :: Scientific/Engineering :: Mathematics',
          ],
          platforms='any',
          python_requires='>=3.9',
          packages=find_packages(),
          package_data={'arbocert': ['VERSION.txt']},
          install_requires=['scikit-learn>=0.24', 'numpy', 'sympy>=1.9',
                            'joblib', 'pandas'],
          entry_points={
              'console_scripts': ['arbocert = arbocert.cli:main'],
          },
          )
