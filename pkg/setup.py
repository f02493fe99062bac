from setuptools import setup, find_packages
setup(
    name="wormchain",
    version="0.3.0",
    py_modules=['wormchain'],
    packages=find_packages(exclude=['tests', 'examples', 'examples.*']),
    python_requires='>=3.8',
    install_requires=[
        # Command Args
        'click',
        # SciPy
        'numpy',
        'scipy',
        'pandas',
        'sympy',
        # Graphs
        'networkx',
        # Compiled sampling loop
        'numba'
        ],
    extras_require={
        'test': ['pytest']
    },
    entry_points='''
        [console_scripts]
        wormchain=wormchain:cli
    ''',
)
