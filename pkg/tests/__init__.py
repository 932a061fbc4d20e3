# S-graph Workbench - Tests
