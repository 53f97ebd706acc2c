import os
from setuptools import setup, find_packages
from ionsqueeze import __version__

with open(os.path.join(os.path.dirname(__file__), 'README.rst')) as readme:
    README = readme.read()

# allow setup.py to be run from any path
os.chdir(os.path.normpath(os.path.join(os.path.abspath(__file__), os.pardir)))

# Essential dependencies
requires = [
    'Django>=2.2,<4.0',
    'django-cogwheels==0.3',
    'numpy>=1.17',
    'scipy>=1.4',
]

testing_extras = [
    'coverage>=4.5',
]

development_extras = [
    'ipdb',
]

documentation_extras = [
    'pyenchant>=2.0',
    'Sphinx>=1.7.4',
    'sphinxcontrib-spelling>=1.4',
    'sphinx_rtd_theme>=0.3',
]

setup(
    name="ionsqueeze",
    version=__version__,
    description=("Simulate the preparation of two-mode squeezed motional "
                 "states of two trapped ions, and check every stage against "
                 "its closed form."),
    long_description=README,
    packages=find_packages(exclude=['examples', 'examples.*']),
    license="MIT",
    keywords="trapped ions two-mode squeezing quantum optics simulation",
    include_package_data=True,
    zip_safe=False,
    classifiers=[
        "Environment :: Console",
        "Intended Audience :: Science/Research",
        "Operating System :: OS Independent",
        'Programming Language :: Python',
        'Programming Language :: Python :: 3',
        'Programming Language :: Python :: 3.7',
        'Programming Language :: Python :: 3.8',
        'Programming Language :: Python :: 3.9',
        'Programming Language :: Python :: 3.10',
        'Topic :: Scientific/Engineering :: Physics',
    ],
    install_requires=requires,
    python_requires='>=3.7',
    entry_points={
        'console_scripts': [
            'ionsqueeze = ionsqueeze.management:main',
        ],
    },
    extras_require={
        'testing': testing_extras,
        'docs': documentation_extras,
        'development': development_extras + testing_extras,
    },
)
