"""Named relations and relation-set presets used by the CLI, generator and tests."""

from __future__ import annotations

from lexsat.core import Relation, RelationSet

IMPL = Relation.from_bitstrings("IMPL", 2, ["00", "01", "11"])
UNIT0 = Relation.from_bitstrings("UNIT0", 1, ["0"])
UNIT1 = Relation.from_bitstrings("UNIT1", 1, ["1"])
XOR = Relation.from_bitstrings("XOR", 2, ["01", "10"])
EQ = Relation.from_bitstrings("EQ", 2, ["00", "11"])
NAND = Relation.from_bitstrings("NAND", 2, ["00", "01", "10"])
OR2 = Relation.from_bitstrings("OR2", 2, ["01", "10", "11"])
# exactly one of three
R13 = Relation.from_bitstrings("R13", 3, ["100", "010", "001"])
# hierarchical SAT clause: 1-valid only
R_HS = Relation.from_bitstrings("R_HS", 3, ["100", "010", "111"])
OR3 = Relation.from_bitstrings("OR3", 3, ["001", "010", "011", "100", "101", "110", "111"])
# not-all-equal
NAE3 = Relation.from_bitstrings("NAE3", 3, ["001", "010", "011", "100", "101", "110"])
AND3 = Relation.from_bitstrings("AND3", 3, ["111"])
# (not x or not y or z)
HORN3 = Relation.from_bitstrings("HORN3", 3, ["000", "001", "010", "011", "100", "101", "111"])
# (x or y or not z)
AHORN3 = Relation.from_bitstrings("AHORN3", 3, ["000", "010", "011", "100", "101", "110", "111"])
# x xor y xor z = 1
XOR3 = Relation.from_bitstrings("XOR3", 3, ["001", "010", "100", "111"])

PRESETS: dict[str, RelationSet] = {
    "impl": RelationSet.of(IMPL, UNIT0, UNIT1),
    "horn": RelationSet.of(IMPL, UNIT0, UNIT1, HORN3),
    "anti_horn": RelationSet.of(IMPL, UNIT0, UNIT1, AHORN3),
    "two_cnf": RelationSet.of(OR2, NAND, IMPL),
    "xor": RelationSet.of(XOR, EQ),
    "affine": RelationSet.of(XOR, EQ, XOR3),
    "r13": RelationSet.of(R13),
    "r_hs": RelationSet.of(R_HS),
    "nae": RelationSet.of(NAE3),
    "cnf3": RelationSet.of(OR3, HORN3, AHORN3, NAND),
}


def preset(name: str) -> RelationSet:
    try:
        return PRESETS[name]
    except KeyError:
        raise KeyError(f"unknown preset {name!r}; choose from {sorted(PRESETS)}") from None
