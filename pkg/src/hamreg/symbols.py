"""Symbol tables for the differential coefficient ring.

A table declares which identifiers are constants (z-derivative zero) and
which are unknown functions of z (carrying formal derivatives of every
order).  The independent variable ``z`` is reserved and belongs to neither
set.
"""

from __future__ import annotations

from dataclasses import dataclass, field


_RESERVED = "z"


def _check_name(name: str) -> None:
    if not name or not name.isascii() or not name.isidentifier():
        raise ValueError(f"invalid symbol name {name!r}: need a nonempty ASCII identifier")
    if name == _RESERVED:
        raise ValueError("'z' is reserved for the independent variable")


@dataclass(frozen=True)
class SymbolTable:
    """Ordered, disjoint sets of constant and function symbol names."""

    constants: tuple[str, ...] = ()
    functions: tuple[str, ...] = ()

    def __post_init__(self):
        for name in self.constants + self.functions:
            _check_name(name)
        if set(self.constants) & set(self.functions):
            overlap = sorted(set(self.constants) & set(self.functions))
            raise ValueError(f"symbols declared both constant and function: {overlap}")
        if len(set(self.constants)) != len(self.constants) or len(set(self.functions)) != len(self.functions):
            raise ValueError("duplicate symbol declaration")

    def is_constant(self, name: str) -> bool:
        return name in self.constants

    def is_function(self, name: str) -> bool:
        return name in self.functions

    def __contains__(self, name: str) -> bool:
        return name in self.constants or name in self.functions

    def with_constants(self, *names: str) -> "SymbolTable":
        new = tuple(n for n in names if n not in self.constants)
        return SymbolTable(self.constants + new, self.functions)

    def with_functions(self, *names: str) -> "SymbolTable":
        new = tuple(n for n in names if n not in self.functions)
        return SymbolTable(self.constants, self.functions + new)

    def promote_to_constant(self, name: str) -> "SymbolTable":
        """Move a function symbol into the constant set (same name)."""
        if name not in self.functions:
            raise KeyError(f"{name!r} is not a declared function")
        funcs = tuple(n for n in self.functions if n != name)
        return SymbolTable(self.constants + (name,), funcs)

    def remove_function(self, name: str) -> "SymbolTable":
        if name not in self.functions:
            raise KeyError(f"{name!r} is not a declared function")
        return SymbolTable(self.constants, tuple(n for n in self.functions if n != name))

    def fresh_name(self, stem: str) -> str:
        """A name based on ``stem`` that does not collide with the table."""
        if stem not in self:
            return stem
        k = 2
        while f"{stem}_{k}" in self:
            k += 1
        return f"{stem}_{k}"
