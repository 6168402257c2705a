"""Finite geometry of Z^d: windows, patterns, configurations and their text formats.

Cells are integer tuples of length ``dim`` even when ``dim == 1``; the helpers
:meth:`Window.interval` and :meth:`Pattern.word` hide that for 1D work.

Metric convention: two configurations are at distance ``2**-j`` where ``j`` is
the smallest sup-norm of a cell on which they differ, so every metric
tolerance turns into agreement on a centred box.
"""

from __future__ import annotations

import itertools
import math
import re
from typing import Iterable, Iterator, Mapping, Sequence

from eden.errors import InvalidInput

Vector = tuple


def _vec(v, dim=None) -> tuple:
    if isinstance(v, int):
        v = (v,)
    v = tuple(int(c) for c in v)
    if dim is not None and len(v) != dim:
        raise InvalidInput(f"vector {v} has dimension {len(v)}, expected {dim}")
    return v


def _add(a, b):
    return tuple(x + y for x, y in zip(a, b))


class Window:
    """A finite set of cells of Z^d in canonical (lexicographically sorted) order.

    Boxes keep their corners and only enumerate cells when asked to.
    """

    __slots__ = ("dim", "_cells", "_lower", "_upper", "_set")

    def __init__(self, dim: int, cells: Iterable = ()):
        if dim < 1:
            raise InvalidInput("dimension must be positive")
        self.dim = dim
        self._cells = tuple(sorted({_vec(c, dim) for c in cells}))
        self._lower = self._upper = None
        self._set = None

    @classmethod
    def box(cls, lower, upper) -> "Window":
        lower, upper = _vec(lower), _vec(upper)
        if len(lower) != len(upper):
            raise InvalidInput("box corners differ in dimension")
        w = cls.__new__(cls)
        w.dim = len(lower)
        w._lower, w._upper = lower, upper
        w._cells = None
        w._set = None
        return w

    @classmethod
    def interval(cls, a: int, b: int) -> "Window":
        """The 1D box {a, ..., b}."""
        return cls.box((a,), (b,))

    @property
    def cells(self) -> tuple:
        if self._cells is None:
            ranges = [range(lo, hi + 1) for lo, hi in zip(self._lower, self._upper)]
            self._cells = tuple(itertools.product(*ranges))
        return self._cells

    @property
    def is_box(self) -> bool:
        if self._lower is not None:
            return True
        if not self._cells:
            return False
        lo, hi = self.bounds()
        return len(self) == math.prod(h - l + 1 for l, h in zip(lo, hi))

    def bounds(self) -> tuple:
        """Lower and upper corners of the bounding box."""
        if self._lower is not None:
            return self._lower, self._upper
        if not self._cells:
            raise InvalidInput("empty window has no bounds")
        lo = tuple(min(c[i] for c in self._cells) for i in range(self.dim))
        hi = tuple(max(c[i] for c in self._cells) for i in range(self.dim))
        return lo, hi

    def hull(self) -> "Window":
        lo, hi = self.bounds()
        return Window.box(lo, hi)

    def __len__(self):
        if self._cells is None:
            return math.prod(max(0, h - l + 1) for l, h in zip(self._lower, self._upper))
        return len(self._cells)

    def __iter__(self) -> Iterator[tuple]:
        return iter(self.cells)

    def __contains__(self, cell) -> bool:
        cell = _vec(cell)
        if self._cells is None:
            return all(l <= c <= h for c, l, h in zip(cell, self._lower, self._upper))
        if self._set is None:
            self._set = frozenset(self._cells)
        return cell in self._set

    def __eq__(self, other):
        if not isinstance(other, Window):
            return NotImplemented
        if self.dim != other.dim or len(self) != len(other):
            return False
        if self._cells is None and other._cells is None:
            return (self._lower, self._upper) == (other._lower, other._upper) or len(self) == 0
        return self.cells == other.cells

    def __hash__(self):
        return hash((self.dim, self.cells))

    def __repr__(self):
        if self._cells is None:
            return f"Window.box({self._lower}, {self._upper})"
        if self.dim == 1:
            return f"Window(1, {[c[0] for c in self._cells]})"
        return f"Window({self.dim}, {list(self._cells)})"

    def translate(self, v) -> "Window":
        v = _vec(v, self.dim)
        if self._cells is None:
            return Window.box(_add(self._lower, v), _add(self._upper, v))
        return Window(self.dim, (_add(c, v) for c in self._cells))

    def minkowski(self, other: "Window") -> "Window":
        """The sum set {a + b}; boxes stay boxes."""
        if self.dim != other.dim:
            raise InvalidInput("dimension mismatch")
        if self._cells is None and other._cells is None:
            return Window.box(_add(self._lower, other._lower), _add(self._upper, other._upper))
        return Window(self.dim, (_add(a, b) for a in self for b in other))

    def erode(self, neighborhood: "Window") -> "Window":
        """Cells v with v + neighborhood contained in this window."""
        if len(self) == 0 or len(neighborhood) == 0:
            return Window(self.dim)
        if self.is_box and neighborhood.is_box:
            (lo, hi), (nlo, nhi) = self.bounds(), neighborhood.bounds()
            return Window.box(tuple(a - b for a, b in zip(lo, nlo)), tuple(a - b for a, b in zip(hi, nhi)))
        first = neighborhood.cells[0]
        candidates = (tuple(c - f for c, f in zip(cell, first)) for cell in self)
        return Window(self.dim, (v for v in candidates if all(_add(v, n) in self for n in neighborhood)))


def folner_box(n: int, d: int = 1) -> Window:
    """The box [-n, n]^d."""
    if n < 0 or d < 1:
        raise InvalidInput("folner_box needs n >= 0 and d >= 1")
    return Window.box((-n,) * d, (n,) * d)


def _check_eps(eps: float):
    if not (0 < eps <= 1):
        raise InvalidInput(f"eps must lie in (0, 1], got {eps}")


def metric_radius(eps: float) -> int:
    """ceil(log2(1/eps)): agreement on the box of this radius forces distance <= eps."""
    _check_eps(eps)
    return max(0, math.ceil(math.log2(1.0 / eps) - 1e-12))


def separation_radius(eps: float) -> int:
    """floor(log2(1/eps)): distance >= eps iff the configurations differ inside this box."""
    _check_eps(eps)
    return max(0, math.floor(math.log2(1.0 / eps) + 1e-12))


def metric_window(eps: float, d: int = 1) -> Window:
    return folner_box(metric_radius(eps), d)


def distance(x: "Configuration", y: "Configuration", horizon: int = 64) -> float:
    """2**-j for the first sup-norm radius j < horizon where x and y differ, else 0.0."""
    if x.dim != y.dim:
        raise InvalidInput("dimension mismatch")
    for j in range(horizon):
        shell = (c for c in folner_box(j, x.dim) if max(abs(t) for t in c) == j)
        if any(x.at(c) != y.at(c) for c in shell):
            return 2.0 ** -j
    return 0.0


class Pattern:
    """A symbol assignment on a window; symbols follow the window's canonical order."""

    __slots__ = ("window", "symbols", "_map")

    def __init__(self, window: Window, symbols: Sequence[int] | Mapping):
        if isinstance(symbols, Mapping):
            cells = {_vec(c, window.dim): int(s) for c, s in symbols.items()}
            if set(cells) != set(window.cells):
                raise InvalidInput("symbol map does not cover the window exactly")
            symbols = tuple(cells[c] for c in window.cells)
        symbols = tuple(int(s) for s in symbols)
        if len(symbols) != len(window):
            raise InvalidInput(f"{len(symbols)} symbols for a window of {len(window)} cells")
        self.window = window
        self.symbols = symbols
        self._map = None

    @classmethod
    def from_cells(cls, dim: int, assignment: Mapping) -> "Pattern":
        return cls(Window(dim, assignment.keys()), assignment)

    @classmethod
    def word(cls, symbols: Sequence[int] | str, start: int = 0) -> "Pattern":
        """1D pattern on {start, ..., start+len-1}; strings are read digit by digit."""
        if isinstance(symbols, str):
            symbols = [int(ch) for ch in symbols]
        symbols = list(symbols)
        if not symbols:
            return cls(Window(1), ())
        return cls(Window.interval(start, start + len(symbols) - 1), symbols)

    @property
    def dim(self) -> int:
        return self.window.dim

    def as_dict(self) -> dict:
        if self._map is None:
            self._map = dict(zip(self.window.cells, self.symbols))
        return self._map

    def at(self, cell) -> int:
        return self.as_dict()[_vec(cell)]

    def translate(self, v) -> "Pattern":
        return Pattern(self.window.translate(v), self.symbols)

    def restrict(self, window: Window) -> "Pattern":
        d = self.as_dict()
        return Pattern(window, [d[c] for c in window.cells])

    def merge(self, other: "Pattern") -> "Pattern | None":
        """Union of two patterns, or None when they disagree on a shared cell."""
        if other.dim != self.dim:
            raise InvalidInput("dimension mismatch")
        merged = dict(self.as_dict())
        for c, s in other.as_dict().items():
            if merged.setdefault(c, s) != s:
                return None
        return Pattern.from_cells(self.dim, merged)

    @property
    def text(self) -> str:
        """Symbols as a digit string (1D words, alphabets up to 10)."""
        return "".join(str(s) for s in self.symbols)

    def __eq__(self, other):
        if not isinstance(other, Pattern):
            return NotImplemented
        return self.window == other.window and self.symbols == other.symbols

    def __hash__(self):
        return hash((self.window, self.symbols))

    def __len__(self):
        return len(self.symbols)

    def __repr__(self):
        return f"Pattern({format_pattern(self)!r})"


def translate(p: Pattern, v) -> Pattern:
    if len(_vec(v)) != p.dim:
        raise InvalidInput(f"cannot translate a {p.dim}-dimensional pattern by {v}")
    return p.translate(v)


class Configuration:
    """A point of A^(Z^d) that is either periodic or constant outside a finite set.

    Periodic: ``period`` is a vector of positive periods and ``symbols`` covers the
    fundamental box [0, period). Finite support: ``background`` everywhere except
    the cells of ``exceptional``, whose symbols all differ from the background.
    """

    __slots__ = ("dim", "period", "background", "exceptional", "_fund")

    def __init__(self, dim, period=None, background=None, exceptional=None, fund=None):
        self.dim = dim
        self.period = period
        self.background = background
        self.exceptional = exceptional
        self._fund = fund

    @classmethod
    def periodic(cls, period, symbols: Sequence[int] | Mapping | str) -> "Configuration":
        period = _vec(period)
        if any(p < 1 for p in period):
            raise InvalidInput("period components must be >= 1")
        box = Window.box((0,) * len(period), tuple(p - 1 for p in period))
        if isinstance(symbols, str):
            symbols = [int(ch) for ch in symbols]
        fund = Pattern(box, symbols)
        return cls(len(period), period=period, fund=fund)

    @classmethod
    def constant(cls, symbol: int, dim: int = 1) -> "Configuration":
        return cls.periodic((1,) * dim, [symbol])

    @classmethod
    def finite_support(cls, background: int, exceptional: Pattern | None = None, dim: int | None = None) -> "Configuration":
        if exceptional is None:
            exceptional = Pattern(Window(dim or 1), ())
        dim = exceptional.dim
        kept = {c: s for c, s in exceptional.as_dict().items() if s != background}
        return cls(dim, background=int(background), exceptional=Pattern.from_cells(dim, kept))

    @property
    def is_periodic(self) -> bool:
        return self.period is not None

    @property
    def fundamental(self) -> Pattern:
        return self._fund

    def at(self, cell) -> int:
        cell = _vec(cell, self.dim)
        if self.period is not None:
            return self._fund.at(tuple(c % p for c, p in zip(cell, self.period)))
        return self.exceptional.as_dict().get(cell, self.background)

    def restrict(self, window: Window) -> Pattern:
        return Pattern(window, [self.at(c) for c in window.cells])

    def translate(self, v) -> "Configuration":
        """The shifted configuration y with y_(c+v) = x_c."""
        v = _vec(v, self.dim)
        if self.period is not None:
            box = self._fund.window
            symbols = [self.at(tuple(c - t for c, t in zip(cell, v))) for cell in box.cells]
            return Configuration(self.dim, period=self.period, fund=Pattern(box, symbols))
        return Configuration(self.dim, background=self.background, exceptional=self.exceptional.translate(v))

    def symbols_used(self) -> set:
        if self.period is not None:
            return set(self._fund.symbols)
        return set(self.exceptional.symbols) | {self.background}

    def __eq__(self, other):
        if not isinstance(other, Configuration) or other.dim != self.dim:
            return NotImplemented
        if self.period is None and other.period is None:
            return self.background == other.background and self.exceptional == other.exceptional
        if self.period is not None and other.period is not None:
            lcm = tuple(math.lcm(a, b) for a, b in zip(self.period, other.period))
            box = Window.box((0,) * self.dim, tuple(p - 1 for p in lcm))
            return all(self.at(c) == other.at(c) for c in box)
        per, fin = (self, other) if self.period is not None else (other, self)
        if len(set(per._fund.symbols)) != 1 or per._fund.symbols[0] != fin.background:
            return False
        return len(fin.exceptional) == 0

    def __hash__(self):
        # periodic and finite-support encodings of the same point compare equal
        return hash(self.dim)

    def __repr__(self):
        return f"Configuration({format_configuration(self)!r})"


# -- text formats ---------------------------------------------------------------
#
# pattern:        dim=<d>; cells=(<c1>,...,<cd>):<sym>,(...):<sym>,...
# configuration:  dim=<d>; background=<sym>; cells=...      (finite support)
#                 dim=<d>; period=(<p1>,...,<pd>); cells=...  (cells cover [0, period))

_CELL_RE = re.compile(r"\(\s*(-?\d+(?:\s*,\s*-?\d+)*)\s*\)\s*:\s*(\d+)")


def _format_cells(p: Pattern) -> str:
    return ",".join("(" + ",".join(str(x) for x in c) + f"):{s}" for c, s in zip(p.window.cells, p.symbols))


def format_pattern(p: Pattern) -> str:
    return f"dim={p.dim}; cells={_format_cells(p)}"


def _header(text: str) -> dict:
    fields = {}
    for part in text.split(";"):
        part = part.strip()
        if not part:
            continue
        if "=" not in part:
            raise InvalidInput(f"malformed field {part!r}")
        key, value = part.split("=", 1)
        fields[key.strip()] = value.strip()
    return fields


def _parse_cells(text: str, dim: int) -> dict:
    cells = {}
    consumed = _CELL_RE.sub("", text).replace(",", "").strip()
    if consumed:
        raise InvalidInput(f"unparsable cell list {text!r}")
    for m in _CELL_RE.finditer(text):
        cell = _vec([int(t) for t in m.group(1).split(",")], dim)
        if cell in cells:
            raise InvalidInput(f"cell {cell} assigned twice")
        cells[cell] = int(m.group(2))
    return cells


def parse_pattern(text: str) -> Pattern:
    fields = _header(text)
    try:
        dim = int(fields["dim"])
    except (KeyError, ValueError):
        raise InvalidInput(f"pattern needs an integer dim field: {text!r}") from None
    return Pattern.from_cells(dim, _parse_cells(fields.get("cells", ""), dim))


def format_configuration(x: Configuration) -> str:
    if x.period is not None:
        period = "(" + ",".join(str(p) for p in x.period) + ")"
        return f"dim={x.dim}; period={period}; cells={_format_cells(x.fundamental)}"
    return f"dim={x.dim}; background={x.background}; cells={_format_cells(x.exceptional)}"


def parse_configuration(text: str) -> Configuration:
    fields = _header(text)
    dim = int(fields.get("dim", "1"))
    cells = _parse_cells(fields.get("cells", ""), dim)
    if "period" in fields:
        try:
            period = _vec([int(t) for t in fields["period"].strip("() ").split(",") if t.strip()], dim)
        except ValueError:
            raise InvalidInput(f"bad period {fields['period']!r}") from None
        box = Window.box((0,) * dim, tuple(p - 1 for p in period))
        if set(cells) != set(box.cells):
            raise InvalidInput("periodic configuration must assign every cell of [0, period)")
        return Configuration.periodic(period, cells)
    if "background" in fields:
        return Configuration.finite_support(int(fields["background"]), Pattern.from_cells(dim, cells))
    raise InvalidInput("configuration needs a period or background field")
