from setuptools import setup, find_packages
setup(
    name="circlelab",
    version="0.1",
    description="circle-lab checks the circle method asymptotic for systems of forms over number fields",
    packages=find_packages(exclude=['tests', 'tests.*']),
    include_package_data=True,
    license="MIT",
    classifiers=[
        'Development Status :: 3 - Alpha',
        'License :: OSI Approved :: MIT License',
        'Programming Language :: Python :: 3.8',
        'Topic :: Scientific/Engineering :: Mathematics',
    ],
    keywords='circle method, number fields, exponential sums',
    install_requires=[
        'blinker>=1.4',
        'flask>=2.0',
        'marshmallow>=3.13,<4',
        'marshmallow-enum>=1.5.1',
        'mpmath>=1.1',
        'numpy>=1.20',
        'scipy>=1.6',
        'sympy>=1.8',
    ],
    python_requires='>=3.8',
    tests_require=[
        'mock>=4.0',
        'mypy>=0.900',
        'pytest>=6.0',
        'pytest-runner>=5.0',
    ],
    setup_requires=['pytest-runner'],
    entry_points={
        'console_scripts': [
            'circle-lab=circlelab.cli:main',
        ]
    },
    zip_safe=False
)
