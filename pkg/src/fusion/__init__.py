# S-graph Workbench - Fusion Package
