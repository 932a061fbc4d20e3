# S-graph Workbench - Operations Module
