# Services and report models
