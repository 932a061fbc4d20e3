# S-graph Workbench - Command Line Module
