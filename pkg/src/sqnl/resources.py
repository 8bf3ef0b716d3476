"""NAND-equivalent gate-count model and bills of materials for activation implementations.

Per-block costs are closed formulas; Booth multipliers are stored constants.
BOM totals are indicative only, not fitter results.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path

from .errors import SqnlError, UnsupportedWidth

KINDS = (
    "register",
    "full_adder",
    "adder",
    "twos_complement",
    "mux2",
    "lut_one_sided",
    "lut_two_sided",
    "booth",
)

# radix-4 Booth multiplier totals; only these widths were costed
BOOTH_GATES = {8: 754, 12: 1124}


@dataclass(frozen=True)
class Block:
    kind: str
    width: int = 1

    def __post_init__(self):
        if self.kind not in KINDS:
            raise SqnlError(f"unknown block kind {self.kind!r}; expected one of {KINDS}")
        if self.width < 1:
            raise SqnlError("block width must be >= 1")


def gate_cost(block: Block) -> int:
    r = block.width
    match block.kind:
        case "register":
            return 4 * r
        case "full_adder":
            return 9
        case "adder":
            return 9 * r
        case "twos_complement":
            return 10 * r
        case "mux2":
            return 3 * r
        case "lut_one_sided":
            return 3 * ((1 << (r - 1)) - 1) * (r - 1)
        case "lut_two_sided":
            return 3 * ((1 << r) - 1) * r
        case "booth":
            try:
                return BOOTH_GATES[r]
            except KeyError:
                raise UnsupportedWidth(f"Booth multiplier cost is only known for widths {sorted(BOOTH_GATES)}") from None
    raise AssertionError(block.kind)


@dataclass
class BillOfMaterials:
    label: str
    items: list[tuple[Block, int]] = field(default_factory=list)

    def __post_init__(self):
        for _, count in self.items:
            if count < 1:
                raise SqnlError("BOM counts must be >= 1")

    def add(self, kind: str, width: int = 1, count: int = 1) -> "BillOfMaterials":
        self.items.append((Block(kind, width), count))
        return self

    def __or__(self, other: "BillOfMaterials") -> "BillOfMaterials":
        return BillOfMaterials(f"{self.label}+{other.label}", self.items + other.items)

    def to_dict(self) -> dict:
        return {
            "label": self.label,
            "items": [{"kind": b.kind, "width": b.width, "count": c} for b, c in self.items],
        }

    @classmethod
    def from_dict(cls, d: dict) -> "BillOfMaterials":
        try:
            items = [(Block(it["kind"], int(it.get("width", 1))), int(it.get("count", 1))) for it in d.get("items", [])]
            return cls(str(d.get("label", "")), items)
        except (KeyError, TypeError, AttributeError) as exc:
            raise SqnlError(f"malformed BOM document: {exc}") from None


def load_bom(path: str | Path) -> BillOfMaterials:
    return BillOfMaterials.from_dict(json.loads(Path(path).read_text(encoding="utf-8")))


def dump_bom(bom: BillOfMaterials) -> str:
    return json.dumps(bom.to_dict(), indent=2)


def estimate(bom: BillOfMaterials) -> int:
    return sum(count * gate_cost(block) for block, count in bom.items)


def method_boms(R: int, N: int) -> list[BillOfMaterials]:
    """Counter, multiplier and LUT realisations of the symmetric activation at width R."""
    if N < 2 or N & (N - 1):
        raise SqnlError("N must be a power of two >= 2")
    gate_cost(Block("booth", R))  # the multiplier method is only costed at Booth widths
    log_n = N.bit_length() - 1
    acc = R + log_n

    counter = BillOfMaterials("counter")
    counter.add("adder", R, 2)           # saturating add and subtract
    counter.add("mux2", R, 2)            # their saturation selects
    counter.add("register", log_n)       # offset counter state
    counter.add("adder", log_n)          # counter increment
    counter.add("adder", acc)            # accumulator; the 1/N is a free shift
    counter.add("register", acc)

    mult = BillOfMaterials("multiplier")
    mult.add("booth", R)                 # n*n
    mult.add("adder", R + 1)             # n -/+ n^2/2M
    mult.add("twos_complement", R)       # sign of the square term per branch
    mult.add("mux2", R)                  # saturation plateaus

    lut = BillOfMaterials("lut").add("lut_two_sided", R)
    return [counter, mult, lut]
