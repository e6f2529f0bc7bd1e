from babel.messages import frontend as babel
from setuptools import find_packages, setup

setup(
    cmdclass={
        "compile_catalog": babel.compile_catalog,
        "extract_messages": babel.extract_messages,
        "init_catalog": babel.init_catalog,
        "update_catalog": babel.update_catalog,
    },
    packages=find_packages(exclude=["examples", "examples.*"]),
    py_modules=["main"],
    message_extractors={
        "octabilliard": [
            ("**.py", "python", None),
        ],
    },
)
