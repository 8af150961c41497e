# Infrastructure package
# Snapshot serialization and report writers.
