from . import handlers, models  # noqa: F401
