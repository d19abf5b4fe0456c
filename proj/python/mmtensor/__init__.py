"""Exact arithmetic for matrix multiplication tensors."""

from ._core import (
    DimensionError,
    IndexError,
    InvalidValueError,
    MmtError,
    ParseError,
    SingularError,
    Tensor,
    builtin,
    builtin_names,
    contract12,
    correction,
    decomposition_length,
    emit_code,
    laderman_variant,
    merge,
    multiply,
    op_count,
    orbit_sum,
    parse,
    project,
    read_json,
    recursive_multiply,
    same_form,
    tensor_type,
    to_text,
    verify,
    write_json,
)

__all__ = [name for name in dir() if not name.startswith("_")]
