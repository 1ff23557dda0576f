# Settings, logging, graph files and report output
