from importlib.metadata import PackageNotFoundError
from importlib.metadata import version as __version__

try:
    __version__ = __version__("ttp-landscape")
except PackageNotFoundError:
    __version__ = "0.0.0+local"
