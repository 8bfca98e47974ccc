"""Ordered symbol tables.

Every polynomial, linear form and rational function in one computation
refers to the same table.  Symbols carry a role: gauge variables are the
ones iterated residues eliminate (their table order is the default residue
order, last one innermost), equivariant and framing symbols are the
parameters the final answers live in, and auxiliary symbols exist for
one-variable demonstrations.
"""

from __future__ import annotations

from .errors import StructureError

ROLE_GAUGE = "gauge"
ROLE_EQUIVARIANT = "equivariant"
ROLE_FRAMING = "framing"
ROLE_AUX = "aux"

_ROLES = (ROLE_GAUGE, ROLE_EQUIVARIANT, ROLE_FRAMING, ROLE_AUX)


class SymbolTable:
    __slots__ = ("names", "roles", "_index")

    def __init__(self, entries):
        names = []
        roles = []
        for name, role in entries:
            if role not in _ROLES:
                raise StructureError(f"unknown symbol role {role!r} for {name!r}")
            if not isinstance(name, str) or not name:
                raise StructureError(f"bad symbol name {name!r}")
            names.append(name)
            roles.append(role)
        if len(set(names)) != len(names):
            raise StructureError("duplicate symbol names in table")
        self.names = tuple(names)
        self.roles = tuple(roles)
        self._index = {n: i for i, n in enumerate(self.names)}

    def __len__(self):
        return len(self.names)

    def __iter__(self):
        return iter(self.names)

    def __contains__(self, name):
        return name in self._index

    def __eq__(self, other):
        return (
            isinstance(other, SymbolTable)
            and self.names == other.names
            and self.roles == other.roles
        )

    def __hash__(self):
        return hash((self.names, self.roles))

    def __repr__(self):
        return "SymbolTable(%s)" % ", ".join(
            f"{n}:{r}" for n, r in zip(self.names, self.roles)
        )

    def index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise StructureError(f"symbol {name!r} not in table") from None

    def role(self, name: str) -> str:
        return self.roles[self.index(name)]

    def gauge(self) -> tuple[str, ...]:
        """Gauge symbols in table order; this is the default residue order."""
        return tuple(
            n for n, r in zip(self.names, self.roles) if r == ROLE_GAUGE
        )

    def entries(self):
        return tuple(zip(self.names, self.roles))

    def __getstate__(self):
        return self.entries()

    def __setstate__(self, state):
        self.__init__(state)


def check_same_table(a, b):
    if a.table != b.table:
        raise StructureError("operands use different symbol tables")
