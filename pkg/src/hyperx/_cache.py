"""Lock-free per-instance memoisation for immutable objects."""

from __future__ import annotations


class memoized:
    """Like :func:`functools.cached_property` but without the per-access lock (py3.10)."""

    def __init__(self, func):
        self.func = func
        self.name = func.__name__
        self.__doc__ = func.__doc__

    def __set_name__(self, owner, name):
        self.name = name

    def __get__(self, obj, objtype=None):
        if obj is None:
            return self
        value = self.func(obj)
        obj.__dict__[self.name] = value
        return value
