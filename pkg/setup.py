import os.path
from setuptools import setup, find_packages


def read(fname):
    with open(os.path.join(os.path.dirname(__file__), fname)) as fp:
        return fp.read()


long_description = read('README.rst')

install_requires = [
    'coloredlogs>=10.0',
    'dateparser>=1.1.8',
    'humanfriendly>=10.0',
    'matplotlib>=3.7.0',
    'numpy>=1.24.0',
    'python-dateutil>=2.7.0',
    'requests>=2.30.0'
]

tests_require = [
    'pytest>=3.6.2'
]

setup_requires = [
    'setuptools-scm',
    'pytest-runner'
]


setup(
    name='Concentrometer',
    use_scm_version={'write_to': 'concentrometer/version.py'},
    description=("Measures the concentration of control over Ethereum "
                 "with inequality indices over daily data snapshots."),
    long_description=long_description,
    license="Apache License 2.0",
    packages=find_packages(exclude=['tests']),
    include_package_data=True,
    package_data={'concentrometer': ['default.cfg']},
    setup_requires=setup_requires,
    tests_require=tests_require,
    install_requires=install_requires,
    entry_points={'console_scripts': [
        'concentrometer = concentrometer.main:main'
    ]}
)
