#!/usr/bin/env python
# -*- coding: utf-8 -*-

from setuptools import setup

with open('README.rst') as readme_file:
    readme = readme_file.read()

with open('HISTORY.rst') as history_file:
    history = history_file.read()

requirements = [
    'Click>=6.0',
    'numpy',
    'pandas',
    'PyYAML',
]

test_requirements = [
    'pytest',
    'mock',
    'hypothesis',
]

setup(
    name='csskit',
    version='0.1.0',
    description="Pure-radiation solutions on conformally Stackel space-times, with numerical "
                "checks of every solution.",
    long_description=readme + '\n\n' + history,
    author="DSaPP Researchers",
    author_email='datascifellows@gmail.com',
    packages=[
        'csskit',
    ],
    package_dir={'csskit':
                 'csskit'},
    entry_points={
        'console_scripts': [
            'csskit=csskit.cli:main'
        ]
    },
    include_package_data=True,
    install_requires=requirements,
    license="MIT license",
    zip_safe=False,
    keywords='csskit general-relativity stackel pure-radiation',
    classifiers=[
        'Development Status :: 2 - Pre-Alpha',
        'Intended Audience :: Science/Research',
        'License :: OSI Approved :: MIT License',
        'Natural Language :: English',
        'Programming Language :: Python :: 3',
        'Programming Language :: Python :: 3.6',
        'Topic :: Scientific/Engineering :: Physics',
    ],
    test_suite='tests',
    tests_require=test_requirements
)
