"""Names every script can use without binding them."""
import re

FUNCTIONS = {
    # field constructors (only valid in `field` declarations)
    "Qp", "Fpu", "Series",
    # residue-level values
    "ball", "indicator", "canonical", "pullback", "section", "partial", "unitcell",
    # elements and matrices
    "abs", "nu", "residue", "inv", "det", "detabs", "eval",
    # functions on F^n and on matrix groups
    "lift", "scale", "liftM", "liftGL",
}

FIELD_CONSTRUCTORS = {"Qp", "Fpu", "Series"}

_CONSTANT = re.compile(r"^(t|X)([1-9][0-9]*)?$|^(i|u|pi)$")


def is_constant(name: str) -> bool:
    return bool(_CONSTANT.match(name))
