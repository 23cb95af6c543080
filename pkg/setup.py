import os
from setuptools import setup, find_packages

exec (open('shuttleswarm/version.py').read())

setup(name='shuttleswarm',
      version=__version__,
      description='Agent-based simulation of self-organizing autonomous shuttle fleets for dynamic ride-sharing',
      url='https://github.com/shuttleswarm/shuttleswarm',
      author='shuttleswarm developers',
      license='BSD 3-Clause License',
      packages=find_packages(exclude=["tests", "tests.*"]),

      classifiers=[
          'Development Status :: 3 - Alpha',
          'Intended Audience :: Science/Research',
          'Topic :: Scientific/Engineering',
          'License :: OSI Approved :: BSD License',

          'Programming Language :: Python :: 3.8',
          'Programming Language :: Python :: 3.9',
          'Programming Language :: Python :: 3.10',
          'Programming Language :: Python :: 3.11',
      ],

      python_requires=">=3.8",

      install_requires=[
          'numpy',
          'scipy',
          "networkx>=2.5",
          "shapely>=1.7",
          "sortedcontainers",
      ],
      extras_require={
          'test': [
              "pytest",
          ],
      },

      entry_points={
          'console_scripts': [
              'shuttleswarm = shuttleswarm.bin.shuttleswarm_cli:main'
          ]
      }
      )
