# setup.py
from setuptools import setup, find_packages
from pathlib import Path

# Define the base directory
base_dir = Path(__file__).resolve().parent

# Read the version from heisencut/version.py
version = {}
version_path = base_dir / 'heisencut' / 'version.py'
with open(version_path) as f:
    exec(f.read(), version)

# Read the long description from README.md
long_description = (base_dir / 'README.md').read_text()

# Generate the install_requires list from requirements.txt
install_requires = (base_dir / 'requirements.txt').read_text().splitlines()

setup(
    name='heisencut',
    version=version['__version__'],
    packages=find_packages(exclude=['tests', 'tests.*']),
    include_package_data=True,
    install_requires=install_requires,
    extras_require={
        'test': ['pytest'],
    },
    entry_points={
        'console_scripts': [
            'heisencut=heisencut.cli:cli',
        ],
    },
    description='Interface Lie algebras, control synthesis and indirect measurement for controller/system couplings',
    long_description=long_description,
    long_description_content_type='text/markdown',
    classifiers=[
        'Programming Language :: Python :: 3',
        'License :: OSI Approved :: MIT License',
        'Operating System :: OS Independent',
        'Topic :: Scientific/Engineering :: Physics',
    ],
    python_requires='>=3.8',
)
