# S-graph Workbench - Polytope Package
