"""Shared exception base for the package."""


class BairelabError(Exception):
    """Base class for every domain error raised by this package.

    The command line front end maps any subclass to exit code 1; usage
    mistakes (bad flags, missing arguments) exit with 2 instead.
    """
