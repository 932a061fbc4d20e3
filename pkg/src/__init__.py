# S-graph Workbench

__version__ = "1.0.0"
