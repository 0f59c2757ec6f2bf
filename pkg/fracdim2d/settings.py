import os

from .defaults import *  # noqa

from django.conf import settings

"""
Default dynamic settings for the fracdim2d app
All settings variables can be overridden in your django project settings.py

See fracdim2d/defaults.py for static settings.
"""

# Cap on worker threads, 0 = one per cpu
FRACDIM2D_THREADS = int(os.environ.get("FRACDIM2D_THREADS", "0") or 0)


def get_var(name):
    """
    Returns the value of a settings variable.
    The full name is FRACDIM2D_ + name.
    First look into django settings.
    If not found there, use the value defined in this file.
    """
    full_name = "FRACDIM2D_" + name
    ret = globals().get(full_name, None)
    ret = getattr(settings, full_name, ret)
    return ret


def get_threads(override=None):
    """Returns the number of worker threads to use (always >= 1)."""
    ret = get_var("THREADS") if override is None else override
    ret = int(ret or 0)
    if ret <= 0:
        ret = os.cpu_count() or 1
    return ret
