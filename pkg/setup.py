from setuptools import setup, find_packages

setup(
    name='leggett',
    version='0.1.0b',
    description='Exact GHZ predictions and hidden-variable audits for Leggett-type inequalities',

    packages=find_packages(exclude=['build*', 'tests*']),
    include_package_data=True,

    install_requires=[
        'numpy',
        'scipy',
    ],
    extras_require={
        'yaml': ['PyYAML'],
    },

    entry_points={
        'console_scripts': [
            'leggett = leggett.cli:main',
        ],
    },

    license='BSD-3',

    classifiers=[
        'Intended Audience :: Science/Research',
        'License :: OSI Approved :: BSD License',
        'Natural Language :: English',
        'Operating System :: OS Independent',
        'Programming Language :: Python :: 3',
        'Topic :: Scientific/Engineering :: Physics',
    ],

)
