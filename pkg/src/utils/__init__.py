# S-graph Workbench - Utilities Module
