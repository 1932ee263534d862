try:
    from ._modalk import *  # noqa: F401,F403
except ImportError:  # running against a plain CMake build dir
    from _modalk import *  # noqa: F401,F403
