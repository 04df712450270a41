from .commands import EXIT_DATA_ERROR, EXIT_OK, EXIT_USAGE_ERROR, build_parser, main

__all__ = [
    "EXIT_OK",
    "EXIT_DATA_ERROR",
    "EXIT_USAGE_ERROR",
    "build_parser",
    "main",
]
