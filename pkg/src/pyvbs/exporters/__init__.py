"""
Exporters module for pyvbs - text export and the matching reader
"""
from .text import TextExporter
from .reader import ModelReader, Section

__all__ = ['TextExporter', 'ModelReader', 'Section']
