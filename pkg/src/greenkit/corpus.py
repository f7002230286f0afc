"""Named small groups used by tests, the acceptance suite and the CLI."""
from __future__ import annotations

from pathlib import Path

from .errors import InputError
from .groups import Group, parse_cycles, parse_group_text


def cyclic(n: int) -> Group:
    gens = [tuple((i + 1) % n for i in range(n))] if n > 1 else []
    return Group(n, gens, name=f"C{n}")


def symmetric(n: int) -> Group:
    gens = []
    if n > 1:
        gens.append(parse_cycles("(0 1)", n))
    if n > 2:
        gens.append(tuple((i + 1) % n for i in range(n)))
    return Group(n, gens, name=f"S{n}")


def dihedral(n: int) -> Group:
    """Symmetries of an n-gon, order 2n."""
    rot = tuple((i + 1) % n for i in range(n))
    refl = tuple((-i) % n for i in range(n))
    return Group(n, [rot, refl], name=f"D{n}")


def klein() -> Group:
    return Group(4, [parse_cycles("(0 1)", 4), parse_cycles("(2 3)", 4)], name="C2xC2")


def alternating4() -> Group:
    return Group(4, [parse_cycles("(0 1 2)", 4), parse_cycles("(0 1)(2 3)", 4)], name="A4")


def quaternion() -> Group:
    """Q8 acting on itself by left multiplication (degree 8)."""
    # unit quaternions as (sign, axis) with axis 0=1, 1=i, 2=j, 3=k
    units = [(s, a) for a in range(4) for s in (1, -1)]
    table = {  # axis products a*b -> (sign, axis)
        (0, 0): (1, 0), (0, 1): (1, 1), (0, 2): (1, 2), (0, 3): (1, 3),
        (1, 0): (1, 1), (1, 1): (-1, 0), (1, 2): (1, 3), (1, 3): (-1, 2),
        (2, 0): (1, 2), (2, 1): (-1, 3), (2, 2): (-1, 0), (2, 3): (1, 1),
        (3, 0): (1, 3), (3, 1): (1, 2), (3, 2): (-1, 1), (3, 3): (-1, 0),
    }

    def mult(x, y):
        s, a = table[(x[1], y[1])]
        return (x[0] * y[0] * s, a)

    pos = {u: k for k, u in enumerate(units)}
    gens = [tuple(pos[mult((1, a), u)] for u in units) for a in (1, 2)]
    return Group(8, gens, name="Q8")


CORPUS = {
    "C1": lambda: cyclic(1),
    "C2": lambda: cyclic(2),
    "C3": lambda: cyclic(3),
    "C4": lambda: cyclic(4),
    "C5": lambda: cyclic(5),
    "C6": lambda: cyclic(6),
    "C2xC2": klein,
    "S3": lambda: symmetric(3),
    "D4": lambda: dihedral(4),
    "Q8": quaternion,
    "A4": alternating4,
    "D6": lambda: dihedral(6),
}


def by_name(name: str) -> Group:
    key = {k.lower(): k for k in CORPUS}.get(name.lower().removesuffix(".grp"))
    if key is None:
        raise InputError(f"unknown group {name!r}; known: {', '.join(CORPUS)}")
    return CORPUS[key]()


def load_group(spec: str, max_order: int | None = None) -> Group:
    """A group from a ``.grp`` file path, or a corpus name such as ``S3``."""
    path = Path(spec)
    if path.is_file():
        return parse_group_text(path.read_text(), name=path.stem, max_order=max_order)
    return by_name(path.name)
