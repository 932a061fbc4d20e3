# S-graph Workbench - Tableau Package
