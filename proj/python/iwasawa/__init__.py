try:
    from ._iwasawa import *  # noqa: F401,F403  installed layout
except ImportError:  # in-tree build: extension directory on sys.path
    from _iwasawa import *  # noqa: F401,F403
