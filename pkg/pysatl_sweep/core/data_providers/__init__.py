from .abstract import DataProvider, T
from .simple_data_provider import SimpleDataProvider

__all__ = ["DataProvider", "SimpleDataProvider", "T"]
