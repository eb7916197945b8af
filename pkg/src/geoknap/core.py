"""Domain model, packing validation, JSON I/O and item classification."""
from __future__ import annotations

import json
import math
from contextlib import contextmanager
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Iterator, Mapping, Sequence


class GeoknapError(Exception):
    exit_code = 1


class ParameterError(GeoknapError, ValueError):
    pass


class InputError(GeoknapError, ValueError):
    pass


class StructuralError(InputError):
    """A packing refers to something the instance does not contain."""


class ParseError(GeoknapError):
    exit_code = 4


class ResourceError(GeoknapError):
    exit_code = 3

    def __init__(self, msg: str, required: int | None = None, cap: int | None = None):
        super().__init__(msg)
        self.required = required
        self.cap = cap


class ConditionError(GeoknapError):
    def __init__(self, msg: str, slack=None):
        super().__init__(msg)
        self.slack = slack


class ValidationFailure(GeoknapError):
    exit_code = 2

    def __init__(self, report: "ValidationReport"):
        super().__init__("; ".join(str(v) for v in report.violations[:5]))
        self.report = report


@dataclass(frozen=True)
class Item:
    id: int
    w: int
    h: int
    p: int = 1

    @property
    def area(self) -> int:
        return self.w * self.h

    def rotated(self) -> "Item":
        return Item(self.id, self.h, self.w, self.p)


@dataclass(frozen=True)
class Instance:
    N: int
    items: tuple
    rotations: bool = False

    def __post_init__(self):
        object.__setattr__(self, "items", tuple(self.items))
        if not isinstance(self.N, int) or self.N < 1:
            raise InputError(f"N must be a positive integer, got {self.N!r}")
        seen = set()
        for it in self.items:
            if it.id in seen:
                raise InputError(f"duplicate item id {it.id}")
            seen.add(it.id)
            if it.w < 1 or it.h < 1:
                raise InputError(f"item {it.id}: sides must be >= 1")
            if it.p < 0:
                raise InputError(f"item {it.id}: negative profit")
            if it.w > self.N or it.h > self.N:
                raise InputError(f"item {it.id} ({it.w}x{it.h}) does not fit N={self.N}")

    @property
    def by_id(self) -> dict:
        return {it.id: it for it in self.items}

    @property
    def total_profit(self) -> int:
        return sum(it.p for it in self.items)

    def subset(self, ids: Iterable[int]) -> "Instance":
        keep = set(ids)
        return Instance(self.N, [it for it in self.items if it.id in keep], self.rotations)


@dataclass(frozen=True)
class Rect:
    x: int
    y: int
    w: int
    h: int

    @property
    def x2(self):
        return self.x + self.w

    @property
    def y2(self):
        return self.y + self.h

    @property
    def area(self):
        return self.w * self.h

    def contains(self, other: "Rect") -> bool:
        return (other.x >= self.x and other.y >= self.y
                and other.x2 <= self.x2 and other.y2 <= self.y2)

    def overlaps(self, other: "Rect") -> bool:
        # open rectangles: touching edges do not count
        return (self.x < other.x2 and other.x < self.x2
                and self.y < other.y2 and other.y < self.y2)


@dataclass(frozen=True)
class Placement:
    item_id: int
    x: int
    y: int
    rotated: bool = False

    def rect(self, item: Item) -> Rect:
        if self.rotated:
            return Rect(self.x, self.y, item.h, item.w)
        return Rect(self.x, self.y, item.w, item.h)


@dataclass(frozen=True)
class Packing:
    region: Rect
    placements: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "placements", tuple(self.placements))

    @classmethod
    def empty(cls, w: int, h: int | None = None) -> "Packing":
        return cls(Rect(0, 0, w, w if h is None else h), ())

    @property
    def ids(self) -> list:
        return [pl.item_id for pl in self.placements]

    def canonical(self) -> "Packing":
        return Packing(self.region, sorted(self.placements, key=lambda pl: pl.item_id))

    def profit(self, items) -> int:
        m = _item_map(items)
        return sum(m[pl.item_id].p for pl in self.placements)

    def rects(self, items) -> dict:
        m = _item_map(items)
        return {pl.item_id: pl.rect(m[pl.item_id]) for pl in self.placements}

    def translated(self, dx: int, dy: int, region: Rect | None = None) -> "Packing":
        pls = [Placement(pl.item_id, pl.x + dx, pl.y + dy, pl.rotated) for pl in self.placements]
        return Packing(region or self.region, pls)

    def with_region(self, region: Rect) -> "Packing":
        return Packing(region, self.placements)

    def merged(self, other: "Packing", region: Rect | None = None) -> "Packing":
        return Packing(region or self.region, self.placements + other.placements)

    def sort_key(self):
        c = self.canonical()
        return tuple((pl.item_id, pl.x, pl.y, pl.rotated) for pl in c.placements)


def _item_map(items) -> Mapping[int, Item]:
    if isinstance(items, Instance):
        return items.by_id
    if isinstance(items, Mapping):
        return items
    return {it.id: it for it in items}


def better(a_profit, a_pack: Packing | None, b_profit, b_pack: Packing | None) -> bool:
    """True when (b_profit, b_pack) should replace (a_profit, a_pack).

    Ties go to the canonically smaller packing so results never depend on
    evaluation order.
    """
    if a_pack is None:
        return True
    if b_pack is None:
        return False
    if b_profit != a_profit:
        return b_profit > a_profit
    return b_pack.sort_key() < a_pack.sort_key()


# --- validation -------------------------------------------------------------

@dataclass(frozen=True)
class Violation:
    kind: str  # containment | overlap | duplicate | rotation
    ids: tuple
    detail: str = ""

    def __str__(self):
        return f"{self.kind} {list(self.ids)} {self.detail}".strip()


@dataclass
class ValidationReport:
    violations: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def __bool__(self):
        return self.ok


def validate_packing(instance, packing: Packing, rotations: bool | None = None) -> ValidationReport:
    """Check containment, pairwise interior-disjointness and id uniqueness.

    `instance` may be an Instance or any collection of Items; in the latter
    case rotations are allowed unless `rotations=False` is passed.
    """
    items = _item_map(instance)
    if rotations is None:
        rotations = instance.rotations if isinstance(instance, Instance) else True
    rep = ValidationReport()
    region = packing.region
    seen = set()
    placed = []
    for pl in packing.placements:
        if pl.item_id not in items:
            raise StructuralError(f"unknown item id {pl.item_id}")
        if pl.item_id in seen:
            rep.violations.append(Violation("duplicate", (pl.item_id,)))
            continue
        seen.add(pl.item_id)
        if pl.rotated and not rotations:
            rep.violations.append(Violation("rotation", (pl.item_id,), "rotations are disabled"))
        r = pl.rect(items[pl.item_id])
        if not region.contains(r):
            rep.violations.append(Violation(
                "containment", (pl.item_id,),
                f"{r.w}x{r.h} at ({r.x},{r.y}) outside {region.w}x{region.h} at ({region.x},{region.y})"))
        placed.append((r, pl.item_id))
    placed.sort(key=lambda t: (t[0].x, t[1]))
    for a in range(len(placed)):
        ra, ia = placed[a]
        for b in range(a + 1, len(placed)):
            rb, ib = placed[b]
            if rb.x >= ra.x2:
                break
            if ra.overlaps(rb):
                rep.violations.append(Violation("overlap", tuple(sorted((ia, ib)))))
    return rep


_AUDIT: list | None = None


@contextmanager
def audit_packings() -> Iterator[list]:
    """Collect (packing, report) for every packing passed through `checked`."""
    global _AUDIT
    prev, _AUDIT = _AUDIT, []
    try:
        yield _AUDIT
    finally:
        _AUDIT = prev


def checked(items, packing: Packing, rotations: bool | None = None) -> Packing:
    """Validate a packing about to leave a public operation; raise on failure."""
    rep = validate_packing(items, packing, rotations)
    if _AUDIT is not None:
        _AUDIT.append(rep.ok)
    if not rep.ok:
        raise ValidationFailure(rep)
    return packing


# --- JSON I/O ---------------------------------------------------------------

def _need_int(obj, key, where, minimum=None):
    if key not in obj:
        raise ParseError(f"{where}: missing field '{key}'")
    v = obj[key]
    if isinstance(v, bool) or not isinstance(v, int):
        raise ParseError(f"{where}.{key}: expected integer, got {v!r}")
    if minimum is not None and v < minimum:
        raise ParseError(f"{where}.{key}: must be >= {minimum}")
    return v


def _read_json(path):
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except json.JSONDecodeError as e:
        raise ParseError(f"{path}: line {e.lineno} column {e.colno}: {e.msg}") from None
    except OSError as e:
        raise ParseError(f"{path}: {e.strerror}") from None


def instance_from_dict(d) -> Instance:
    if not isinstance(d, dict):
        raise ParseError("instance: expected a JSON object")
    n = _need_int(d, "n", "instance", 1)
    rot = d.get("rotations", False)
    if not isinstance(rot, bool):
        raise ParseError("instance.rotations: expected boolean")
    raw = d.get("items")
    if not isinstance(raw, list):
        raise ParseError("instance.items: expected a list")
    items, seen = [], set()
    for k, it in enumerate(raw):
        where = f"items[{k}]"
        if not isinstance(it, dict):
            raise ParseError(f"{where}: expected an object")
        iid = _need_int(it, "id", where)
        if iid in seen:
            raise ParseError(f"{where}.id: duplicate id {iid}")
        seen.add(iid)
        items.append(Item(iid, _need_int(it, "w", where, 1), _need_int(it, "h", where, 1),
                          _need_int(it, "p", where, 0)))
    try:
        return Instance(n, items, rot)
    except InputError as e:
        raise ParseError(f"instance: {e}") from None


def instance_to_dict(inst: Instance) -> dict:
    return {"n": inst.N, "rotations": inst.rotations,
            "items": [{"id": it.id, "w": it.w, "h": it.h, "p": it.p}
                      for it in sorted(inst.items, key=lambda it: it.id)]}


def packing_to_dict(pk: Packing) -> dict:
    r = pk.region
    return {"region": {"x": r.x, "y": r.y, "w": r.w, "h": r.h},
            "placements": [{"id": pl.item_id, "x": pl.x, "y": pl.y, "rot": pl.rotated}
                           for pl in pk.canonical().placements]}


def packing_from_dict(d) -> Packing:
    if not isinstance(d, dict) or not isinstance(d.get("region"), dict):
        raise ParseError("packing: expected an object with 'region'")
    r = d["region"]
    region = Rect(_need_int(r, "x", "region"), _need_int(r, "y", "region"),
                  _need_int(r, "w", "region", 0), _need_int(r, "h", "region", 0))
    pls = []
    raw = d.get("placements")
    if not isinstance(raw, list):
        raise ParseError("packing.placements: expected a list")
    for k, p in enumerate(raw):
        where = f"placements[{k}]"
        if not isinstance(p, dict):
            raise ParseError(f"{where}: expected an object")
        rot = p.get("rot", False)
        if not isinstance(rot, bool):
            raise ParseError(f"{where}.rot: expected boolean")
        pls.append(Placement(_need_int(p, "id", where), _need_int(p, "x", where),
                             _need_int(p, "y", where), rot))
    return Packing(region, pls)


def dumps(obj: dict) -> str:
    return json.dumps(obj, indent=1, sort_keys=False) + "\n"


def load_instance(path) -> Instance:
    return instance_from_dict(_read_json(path))


def save_instance(path, inst: Instance) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dumps(instance_to_dict(inst)))


def load_packing(path) -> Packing:
    return packing_from_dict(_read_json(path))


def save_packing(path, packing: Packing) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dumps(packing_to_dict(packing)))


def read_json(path):
    return _read_json(path)


# --- classification ---------------------------------------------------------

CLASS_NAMES = ("small", "large", "horizontal", "vertical", "intermediate")


@dataclass(frozen=True)
class ItemClasses:
    eps_large: Fraction
    eps_small: Fraction
    classes: dict
    intermediate_profit: int = 0
    candidates: tuple = ()  # ((eps_large, eps_small, intermediate profit), ...)

    def of(self, kind: str) -> list:
        return [i for i, c in self.classes.items() if c == kind]


def classify_one(w: int, h: int, N: int, eps_large, eps_small) -> str:
    lo, hi = eps_small * N, eps_large * N
    if w <= lo and h <= lo:
        return "small"
    if w > hi and h > hi:
        return "large"
    if w > hi and h <= lo:
        return "horizontal"
    if h > hi and w <= lo:
        return "vertical"
    return "intermediate"


def _has_side_in(it: Item, lo, hi) -> bool:
    return lo < it.w <= hi or lo < it.h <= hi


def classify_items(instance: Instance, eps, f: Callable | None = None) -> ItemClasses:
    """Pick (eps_large, eps_small) from the chain eps_1 = f(eps), eps_{i+1} = f(eps_i).

    There are ceil(2/eps) consecutive pairs; the one whose band
    (eps_small*N, eps_large*N] meets the least profit is returned. Every item
    has two sides, so some band carries at most eps of the total profit.
    `f` must map into (0, x) so the chain decreases; default f(x) = eps*x^3.
    """
    eps = Fraction(eps)
    if not 0 < eps < 1:
        raise ParameterError(f"eps must lie in (0,1), got {eps}")
    if f is None:
        f = lambda x: eps * x ** 3  # noqa: E731
    N = instance.N
    k = math.ceil(2 / eps)
    cur = Fraction(f(eps))
    best = None
    cands = []
    for _ in range(k):
        nxt = Fraction(f(cur))
        if not 0 < nxt < cur:
            raise ParameterError("f must map the chain strictly downwards and stay positive")
        prof = sum(it.p for it in instance.items if _has_side_in(it, nxt * N, cur * N))
        cands.append((cur, nxt, prof))
        if best is None or prof < best[2]:
            best = (cur, nxt, prof)
        if prof == 0 or cur * N < 1:
            # later pairs cannot beat zero, and once eps*N < 1 every later
            # band is empty on the integer grid
            break
        cur = nxt
    el, es, prof = best
    classes = {it.id: classify_one(it.w, it.h, N, el, es) for it in instance.items}
    return ItemClasses(el, es, classes, prof, tuple(cands))
