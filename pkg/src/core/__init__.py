# S-graph Workbench - Core Module
