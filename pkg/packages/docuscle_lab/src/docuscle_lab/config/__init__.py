from .loader import (
    build_instance,
    build_property,
    build_state,
    dump_config,
    load_config,
    parse_config,
    to_instance_spec,
)

__all__ = [
    "parse_config",
    "load_config",
    "dump_config",
    "build_state",
    "build_property",
    "build_instance",
    "to_instance_spec",
]
