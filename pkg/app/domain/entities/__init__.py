# Immutable value types
