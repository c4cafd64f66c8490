from .inductive_handler import InductiveHandler
from .mapping_handler import MappingHandler

__all__ = ["InductiveHandler", "MappingHandler"]
