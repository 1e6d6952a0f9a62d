#   Copyright (c) 2026  tsrisk Authors. All Rights Reserved.
#
# Licensed under the Apache License, Version 2.0 (the "License"
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
"""Setup for pip package."""

from setuptools import setup
from tsrisk.version import tsrisk_version

with open('./requirements.txt') as f:
    setup_requires = f.read().splitlines()

packages = [
    'tsrisk',
    'tsrisk.core',
    'tsrisk.common',
    'tsrisk.process',
    'tsrisk.bounds',
    'tsrisk.concentration',
    'tsrisk.hypothesis',
    'tsrisk.rademacher',
    'tsrisk.certificate',
]

setup(
    name='tsrisk',
    version=tsrisk_version,
    description=('Concentration inequalities and risk bounds for time series '
                 'prediction, with Monte Carlo verification.'),
    long_description='',
    author='tsrisk Authors',
    install_requires=setup_requires,
    packages=packages,
    python_requires='>=3.8',
    entry_points={'console_scripts': ['tsrisk=tsrisk.cli:main']},
    # PyPI package information.
    classifiers=[
        'Development Status :: 4 - Beta',
        'Intended Audience :: Education',
        'Intended Audience :: Science/Research',
        'License :: OSI Approved :: Apache Software License',
        'Programming Language :: Python :: 3',
        'Topic :: Scientific/Engineering',
        'Topic :: Scientific/Engineering :: Mathematics',
        'Topic :: Software Development :: Libraries :: Python Modules',
    ],
    license='Apache 2.0',
    keywords=('time-series concentration rademacher risk-bound monte-carlo'), )
