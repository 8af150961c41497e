from bochner_lab.infrastructure.serialization.snapshot import (
    dump_snapshot,
    load_snapshot,
    read_snapshot,
    write_snapshot,
)

__all__ = ["dump_snapshot", "load_snapshot", "read_snapshot", "write_snapshot"]
